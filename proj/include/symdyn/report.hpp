#pragma once

#include <symdyn/certify.hpp>
#include <symdyn/embed.hpp>

#include <json.hpp>

#include <string>

namespace symdyn {

using json = nlohmann::json;

// Machine-readable report envelope. results are a pure function of the
// inputs; only the timestamp varies between identical runs. Every numeric
// results field is labeled in exactness as "exact" or "empirical".
struct Report {
    std::string command;
    std::string spec_digest;
    json parameters = json::object();
    json results = json::object();
    json exactness = json::object();
    std::string timestamp;
};

std::string iso_utc_now();
std::string digest_hex(const std::string& text);

json report_json(const Report& r);
std::string report_csv(const Report& r);

// module-result serializers (stable key names)
json pieces_json(const std::vector<ShiftedCylinder>& pieces);
json decomposition_json(const Decomposition& d, const PartitionReport* verified);
json special_words_json(const SpecialWords& sw);
json span_certificate_json(const SpanCertificate& c);
json span_membership_json(Language& lang, const std::vector<CylinderFunction>& family,
                          const SpanMembership& m);
json sturmian_certificate_json(const SturmianCertificate& c);
json tm_evidence_json(const TmEvidence& ev);
json multiplicity_bound_json(const MultiplicityBound& mb);
json keylem_json(const KeylemTable& t);
json finite_mult_json(const FiniteMult& fm, const PermutationSystem& sys);
json embedding_plan_json(const PermutationSystem& sys, const EmbeddingPlan& plan, bool full);
json injectivity_json(const InjectivityCertificate& c);

} // namespace symdyn
