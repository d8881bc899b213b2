#include <symdyn/report.hpp>

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

namespace symdyn {

std::string iso_utc_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

std::string digest_hex(const std::string& text) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << text_digest(text);
    return out.str();
}

json report_json(const Report& r) {
    return json{{"command", r.command},
                {"spec_digest", r.spec_digest},
                {"parameters", r.parameters},
                {"results", r.results},
                {"exactness", r.exactness},
                {"timestamp", r.timestamp}};
}

namespace {

std::string csv_cell(const json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void flatten(const std::string& prefix, const json& v, std::ostringstream& out) {
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it)
            flatten(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value(), out);
    } else if (v.is_array()) {
        out << csv_cell(prefix) << "," << csv_cell(json(v.dump())) << "\n";
    } else {
        out << csv_cell(prefix) << "," << csv_cell(v) << "\n";
    }
}

} // namespace

std::string report_csv(const Report& r) {
    std::ostringstream out;
    if (r.results.contains("rows") && r.results["rows"].is_array()) {
        const json& rows = r.results["rows"];
        std::vector<std::string> cols;
        for (const auto& row : rows)
            for (auto it = row.begin(); it != row.end(); ++it)
                if (std::find(cols.begin(), cols.end(), it.key()) == cols.end())
                    cols.push_back(it.key());
        std::sort(cols.begin(), cols.end());
        for (std::size_t i = 0; i < cols.size(); ++i)
            out << (i ? "," : "") << csv_cell(cols[i]);
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < cols.size(); ++i) {
                if (i)
                    out << ",";
                if (row.contains(cols[i]))
                    out << csv_cell(row.at(cols[i]));
            }
            out << "\n";
        }
        return out.str();
    }
    out << "field,value\n";
    flatten("", r.results, out);
    return out.str();
}

json pieces_json(const std::vector<ShiftedCylinder>& pieces) {
    json arr = json::array();
    for (const auto& p : pieces)
        arr.push_back(json{{"t", p.t}, {"q", p.q}});
    return arr;
}

json decomposition_json(const Decomposition& d, const PartitionReport* verified) {
    json out{{"target", d.target},
             {"level", d.level},
             {"k", d.growth_k},
             {"pieces", pieces_json(d.pieces)}};
    if (verified) {
        out["verified_window"] = json::array({verified->window_lo, verified->window_hi});
        json checks{{"covered", verified->covered},
                    {"disjoint", verified->disjoint},
                    {"offset_bound", verified->offset_bound},
                    {"dense3", verified->dense3}};
        if (verified->cover_witness)
            checks["cover_witness"] = *verified->cover_witness;
        if (verified->disjoint_witness)
            checks["disjoint_witness"] = *verified->disjoint_witness;
        out["checks"] = checks;
        out["words_checked"] = verified->words_checked;
    }
    return out;
}

json special_words_json(const SpecialWords& sw) {
    return json{{"level", sw.level},
                {"q", sw.q},
                {"q_prime", sw.q_prime},
                {"q_count", sw.q.size()},
                {"q_prime_count", sw.q_prime.size()}};
}

json span_certificate_json(const SpanCertificate& c) {
    return json{{"window", json::array({c.window.lo, c.window.hi})},
                {"shift_range", json::array({c.shift_lo, c.shift_hi})},
                {"family_size", c.family_size},
                {"rank", c.rank},
                {"ambient_dimension", c.ambient}};
}

json span_membership_json(Language&, const std::vector<CylinderFunction>&,
                          const SpanMembership& m) {
    json out{{"member", m.member},
             {"window", json::array({m.window.lo, m.window.hi})}};
    if (m.member) {
        json coeffs = json::array();
        for (const auto& c : m.coefficients)
            coeffs.push_back(json{{"family_index", c.family_index},
                                  {"shift", c.shift},
                                  {"coefficient", fraction_string(c.value)}});
        out["coefficients"] = coeffs;
    } else {
        json sep = json::array();
        for (const auto& [w, v] : m.separating)
            sep.push_back(json{{"word", w}, {"mass", fraction_string(v)}});
        out["separating_measure"] = sep;
    }
    return out;
}

json sturmian_certificate_json(const SturmianCertificate& c) {
    json rows = json::array();
    for (const auto& lvl : c.levels)
        rows.push_back(json{{"n", lvl.n}, {"rank", lvl.rank}, {"expected", lvl.expected}});
    json out{{"rows", rows}, {"ok", c.ok}, {"n_max", c.n_max}};
    if (!c.ok)
        out["failing_level"] = c.failing_level;
    return out;
}

json tm_evidence_json(const TmEvidence& ev) {
    json rows = json::array();
    for (const auto& row : ev.rows)
        rows.push_back(json{{"p", row.p}, {"deviation", fraction_string(row.deviation)}});
    return json{{"n", ev.n},
                {"p_max", ev.p_max},
                {"block", ev.block},
                {"rows", rows},
                {"dyadic_nonincreasing", ev.dyadic_nonincreasing},
                {"note", "finite-scale evidence, not a proof"}};
}

json multiplicity_bound_json(const MultiplicityBound& mb) {
    json targets = json::array();
    for (const auto& t : mb.targets)
        targets.push_back(json{{"w", t.w},
                               {"pieces", pieces_json(t.pieces)},
                               {"verified", t.verified}});
    return json{{"n", mb.n},
                {"k", mb.k},
                {"witness_family", mb.witness_family},
                {"bound", mb.bound},
                {"bound_ok", mb.bound_ok},
                {"targets", targets},
                {"ok", mb.ok},
                {"verdict", mb.verdict}};
}

json keylem_json(const KeylemTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row{{"n", r.n}, {"has_word", r.has_word}};
        if (r.has_word) {
            row["w"] = r.w;
            row["ell"] = r.ell;
            row["mu_hat"] = fraction_string(r.mu_hat);
            row["ell_times_mu_hat"] = fraction_string(r.product);
            json pf = json::object(), rf = json::object();
            for (const auto& [c, v] : r.periodization_letter_freqs)
                pf[std::string(1, c)] = fraction_string(v);
            for (const auto& [c, v] : r.prefix_letter_freqs)
                rf[std::string(1, c)] = fraction_string(v);
            row["periodization_letter_freqs"] = pf;
            row["prefix_letter_freqs"] = rf;
        }
        rows.push_back(row);
    }
    return json{{"rows", rows},
                {"ell_strictly_increasing", t.ell_strictly_increasing},
                {"notes", t.notes}};
}

json finite_mult_json(const FiniteMult& fm, const PermutationSystem& sys) {
    json cycles = json::array();
    for (std::size_t i = 0; i < sys.cycles.size(); ++i)
        cycles.push_back(json{{"length", sys.cycle_lengths[i]},
                              {"base_point", sys.base_points[i]},
                              {"points", sys.cycles[i]}});
    json witness = json::array();
    for (const auto& row : fm.witness_matrix) {
        json jr = json::array();
        for (const auto& v : row)
            jr.push_back(fraction_string(v));
        witness.push_back(jr);
    }
    return json{{"size", sys.size},
                {"cycles", cycles},
                {"multiplicity", fm.k},
                {"coboundary_image_dim", fm.coboundary_image_dim},
                {"quotient_dim", fm.quotient_dim},
                {"witness_matrix", witness},
                {"witness_invertible", fm.witness_invertible},
                {"constants_plus_coboundaries_span", fm.constants_plus_coboundaries_span}};
}

json embedding_plan_json(const PermutationSystem& sys, const EmbeddingPlan& plan, bool full) {
    json out{{"dimension", plan.dimension},
             {"case", plan.tag == EmbedCase::common_factor ? "common-factor" : "coprime"},
             {"cycle_lengths", sys.cycle_lengths}};
    if (plan.tag == EmbedCase::coprime) {
        out["special_cycle"] = plan.special_cycle;
        out["special_dropped"] = plan.special_dropped;
    }
    if (full) {
        json points = json::array();
        for (int x = 0; x < sys.size; ++x) {
            json coords = json::array();
            for (const auto& seq : plan.point_plans[static_cast<std::size_t>(x)])
                coords.push_back(json{{"phase", seq.phase},
                                      {"period", seq.period},
                                      {"pattern", seq.pattern}});
            points.push_back(json{{"point", x}, {"coordinates", coords}});
        }
        out["point_plans"] = points;
    }
    return out;
}

json injectivity_json(const InjectivityCertificate& c) {
    json out{{"injective", c.injective}, {"period_window", c.period_window}};
    if (!c.injective) {
        json kv = json::array();
        for (const auto& v : c.kernel_witness)
            kv.push_back(fraction_string(v));
        out["kernel_witness"] = kv;
        if (c.witness_measures) {
            json a = json::array(), b = json::array();
            for (const auto& v : c.witness_measures->first.weights)
                a.push_back(fraction_string(v));
            for (const auto& v : c.witness_measures->second.weights)
                b.push_back(fraction_string(v));
            out["witness_measures"] = json::array({a, b});
        }
    }
    return out;
}

} // namespace symdyn
