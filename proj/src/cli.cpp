#include <symdyn/cli.hpp>
#include <symdyn/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace symdyn::cli {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_certificate_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_resource_cap = 3;

struct Output {
    bool csv = false;
    std::ostream* out = nullptr;

    void emit(Report& r) const {
        r.timestamp = iso_utc_now();
        if (csv)
            *out << report_csv(r);
        else
            *out << report_json(r).dump(2) << "\n";
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<int> parse_levels(const std::string& text) {
    std::vector<int> levels;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ','))
        levels.push_back(std::stoi(tok));
    if (levels.empty())
        throw std::invalid_argument("empty level list");
    return levels;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact combinatorial and linear-algebra certificates for subshift "
                 "multiplicity bounds and finite-permutation simplex embeddings"};
    app.require_subcommand(1);

    bool csv = false;
    bool full = false;
    std::size_t max_words = 2'000'000;
    std::size_t max_ambient = 4096;
    app.add_flag("--csv", csv, "emit CSV instead of JSON");
    app.add_flag("--json", [](std::int64_t) {}, "emit JSON (default)");
    app.add_flag("--full", full, "include verbose payloads (plans, matrices)");
    app.add_option("--max-words", max_words, "cap on enumerated words per language level");
    app.add_option("--max-ambient", max_ambient, "cap on span-certificate ambient dimension");

    std::string spec_path, word, perm_text, levels_text;
    int n = 0, k = 0, max_n = 0, p = 0, pmax = 0;
    bool verify = false, certify_flag = false, force_coprime = false;
    std::optional<int> perm_size;

    auto* c_complexity = app.add_subcommand("complexity", "word complexity p(n) per level");
    c_complexity->add_option("spec", spec_path)->required();
    c_complexity->add_option("--max-n", max_n)->required();

    auto* c_special = app.add_subcommand("special", "right-special words and extensions");
    c_special->add_option("spec", spec_path)->required();
    c_special->add_option("--n", n)->required();

    auto* c_scales = app.add_subcommand("good-scales", "linear-growth scales below a bound");
    c_scales->add_option("spec", spec_path)->required();
    c_scales->add_option("--k", k)->required();
    c_scales->add_option("--max-n", max_n)->required();

    auto* c_decompose = app.add_subcommand("decompose",
                                           "cylinder decomposition over right-special words");
    c_decompose->add_option("spec", spec_path)->required();
    c_decompose->add_option("--word", word)->required();
    c_decompose->add_option("--n", n)->required();
    c_decompose->add_option("--k", k)->required();
    c_decompose->add_flag("--verify", verify, "exhaustive window verification");

    auto* c_mult = app.add_subcommand("mult-bound", "finite-scale multiplicity bound");
    c_mult->add_option("spec", spec_path)->required();
    c_mult->add_option("--k", k)->required();
    c_mult->add_option("--n", n)->required();

    auto* c_sturm = app.add_subcommand("sturmian-cert", "sturmian rank certificates per level");
    c_sturm->add_option("spec", spec_path)->required();
    c_sturm->add_option("--max-n", max_n)->required();

    auto* c_tm = app.add_subcommand("tm-evidence",
                                    "block-aligned averaging decay on the Thue-Morse subshift");
    c_tm->add_option("--n", n)->required();
    c_tm->add_option("--pmax", pmax)->required();

    auto* c_pmult = app.add_subcommand("perm-mult", "cycle count as exact multiplicity");
    c_pmult->add_option("perm", perm_text)->required();
    c_pmult->add_option("--size", perm_size, "extend with trailing fixed points");

    auto* c_pembed = app.add_subcommand("perm-embed", "affine simplex embedding plan");
    c_pembed->add_option("perm", perm_text)->required();
    c_pembed->add_option("--size", perm_size, "extend with trailing fixed points");
    c_pembed->add_flag("--certify", certify_flag, "run the injectivity certificate");
    c_pembed->add_flag("--force-coprime-style", force_coprime,
                       "build the k-1 dimensional plan regardless of the gcd rule");

    auto* c_fix = app.add_subcommand("fix-dim", "dimension of the T^p-fixed measure simplex");
    c_fix->add_option("perm", perm_text)->required();
    c_fix->add_option("--p", p)->required();
    c_fix->add_option("--size", perm_size, "extend with trailing fixed points");

    auto* c_keylem = app.add_subcommand("keylem", "minimal-period growth and decay table");
    c_keylem->add_option("spec", spec_path)->required();
    c_keylem->add_option("--levels", levels_text)->required();

    for (CLI::App* sub : {c_complexity, c_special, c_scales, c_decompose, c_mult, c_sturm,
                          c_tm, c_pmult, c_pembed, c_fix, c_keylem})
        sub->fallthrough();

    std::vector<const char*> argv;
    std::string prog = "symdyn";
    argv.push_back(prog.c_str());
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    Output output{csv, &out};
    try {
        auto make_language = [&](const std::string& path) {
            Limits limits;
            limits.max_words = max_words;
            return Language(parse_spec(read_file(path)), limits);
        };

        if (*c_complexity) {
            Language lang = make_language(spec_path);
            Report r;
            r.command = "complexity";
            r.spec_digest = digest_hex(lang.spec().source_text);
            r.parameters = json{{"max_n", max_n}};
            json rows = json::array();
            for (int i = 1; i <= max_n; ++i)
                rows.push_back(json{{"n", i}, {"p", lang.complexity(i)}});
            r.results = json{{"rows", rows}};
            r.exactness = json{{"rows.p", "exact"}};
            output.emit(r);
            return exit_ok;
        }

        if (*c_special) {
            Language lang = make_language(spec_path);
            SpecialWords sw = right_special(lang, n);
            Report r;
            r.command = "special";
            r.spec_digest = digest_hex(lang.spec().source_text);
            r.parameters = json{{"n", n}};
            r.results = special_words_json(sw);
            r.results["identity_ok"] = true; // asserted inside right_special
            r.exactness = json{{"q_count", "exact"}, {"q_prime_count", "exact"}};
            output.emit(r);
            return exit_ok;
        }

        if (*c_scales) {
            Language lang = make_language(spec_path);
            GoodScales gs = good_scales(lang, k, max_n);
            Report r;
            r.command = "good-scales";
            r.spec_digest = digest_hex(lang.spec().source_text);
            r.parameters = json{{"k", k}, {"max_n", max_n}};
            json rows = json::array();
            for (int m : gs.members)
                rows.push_back(json{{"n", m},
                                    {"p_n1", lang.complexity(m + 1)},
                                    {"increment", lang.complexity(m + 1) - lang.complexity(m)}});
            r.results = json{{"rows", rows}, {"count", gs.members.size()}};
            r.exactness = json{{"rows.p_n1", "exact"}, {"rows.increment", "exact"}};
            output.emit(r);
            return exit_ok;
        }

        if (*c_decompose) {
            Language lang = make_language(spec_path);
            Report r;
            r.command = "decompose";
            r.spec_digest = digest_hex(lang.spec().source_text);
            r.parameters = json{{"word", word}, {"n", n}, {"k", k}, {"verify", verify}};
            r.exactness = json{{"pieces", "exact"}};
            try {
                Decomposition d = decompose_cylinder(lang, word, n, k);
                if (verify) {
                    PartitionReport pr = verify_partition(lang, d);
                    r.results = decomposition_json(d, &pr);
                    output.emit(r);
                    return pr.all_ok() ? exit_ok : exit_certificate_failed;
                }
                r.results = decomposition_json(d, nullptr);
                output.emit(r);
                return exit_ok;
            } catch (const DecomposeError& e) {
                r.results = json{{"error", e.what()}};
                output.emit(r);
                return exit_certificate_failed;
            }
        }

        if (*c_mult) {
            Language lang = make_language(spec_path);
            Report r;
            r.command = "mult-bound";
            r.spec_digest = digest_hex(lang.spec().source_text);
            r.parameters = json{{"k", k}, {"n", n}};
            AperiodicityReport ap = is_aperiodic_up_to(lang, n, 2 * n + 2);
            if (!ap.aperiodic) {
                r.results = json{{"error", "subshift has a periodic point at this scale"},
                                 {"periodic_witness", ap.witness}};
                output.emit(r);
                return exit_certificate_failed;
            }
            try {
                MultiplicityBound mb = multiplicity_upper_bound(lang, k, n);
                r.results = multiplicity_bound_json(mb);
                r.results["aperiodic_up_to"] = json::array({ap.max_period, ap.window});
                r.exactness = json{{"bound", "exact"}, {"targets", "exact"}};
                output.emit(r);
                return mb.ok ? exit_ok : exit_certificate_failed;
            } catch (const DecomposeError& e) {
                r.results = json{{"error", e.what()}};
                output.emit(r);
                return exit_certificate_failed;
            }
        }

        if (*c_sturm) {
            Language lang = make_language(spec_path);
            Report r;
            r.command = "sturmian-cert";
            r.spec_digest = digest_hex(lang.spec().source_text);
            r.parameters = json{{"max_n", max_n}};
            SturmianCertificate sc = sturmian_simplicity_certificate(lang, max_n, max_ambient);
            r.results = sturmian_certificate_json(sc);
            if (full) {
                // the certified matrices: rows 1, parity, parity o sigma^k
                json matrices = json::array();
                CylinderFunction one = constant_fn(lang, Rational(1));
                CylinderFunction parity = letter_parity(lang);
                for (int lvl = 1; lvl <= max_n; ++lvl) {
                    json rows = json::array();
                    Window w{0, lvl - 1};
                    auto dump_row = [&](const CylinderFunction& g) {
                        json row = json::array();
                        for (const auto& v : refine(lang, g, w).values)
                            row.push_back(fraction_string(v));
                        rows.push_back(row);
                    };
                    dump_row(one);
                    for (int j = 0; j < lvl; ++j)
                        dump_row(shift_fn(parity, j));
                    matrices.push_back(json{{"n", lvl},
                                            {"columns", lang.factors(lvl)},
                                            {"rows", rows}});
                }
                r.results["matrices"] = matrices;
            }
            r.exactness = json{{"rows.rank", "exact"}};
            output.emit(r);
            return sc.ok ? exit_ok : exit_certificate_failed;
        }

        if (*c_tm) {
            Language lang(make_thue_morse_spec());
            Report r;
            r.command = "tm-evidence";
            r.spec_digest = digest_hex(lang.spec().source_text);
            r.parameters = json{{"n", n}, {"pmax", pmax}};
            TmEvidence ev = thue_morse_cyclicity_evidence(lang, n, pmax);
            r.results = tm_evidence_json(ev);
            r.exactness = json{{"rows.deviation", "exact"}};
            output.emit(r);
            return exit_ok;
        }

        if (*c_pmult) {
            PermutationSystem sys = cycle_decomposition(parse_permutation(perm_text, perm_size));
            FiniteMult fm = finite_mult(sys);
            Report r;
            r.command = "perm-mult";
            r.spec_digest = digest_hex(perm_text);
            r.parameters = json{{"perm", perm_text}};
            r.results = finite_mult_json(fm, sys);
            r.exactness = json{{"multiplicity", "exact"}, {"coboundary_image_dim", "exact"}};
            output.emit(r);
            return fm.witness_invertible ? exit_ok : exit_certificate_failed;
        }

        if (*c_pembed) {
            PermutationSystem sys = cycle_decomposition(parse_permutation(perm_text, perm_size));
            EmbeddingPlan plan = force_coprime ? coprime_style_plan(sys) : build_embedding(sys);
            Report r;
            r.command = "perm-embed";
            r.spec_digest = digest_hex(perm_text);
            r.parameters = json{{"perm", perm_text},
                                {"certify", certify_flag},
                                {"force_coprime_style", force_coprime}};
            r.results = embedding_plan_json(sys, plan, full);
            r.exactness = json{{"dimension", "exact"}};
            if (!certify_flag) {
                output.emit(r);
                return exit_ok;
            }
            InjectivityCertificate cert = injectivity_certificate(sys, plan);
            r.results["certificate"] = injectivity_json(cert);
            output.emit(r);
            return cert.injective ? exit_ok : exit_certificate_failed;
        }

        if (*c_fix) {
            PermutationSystem sys = cycle_decomposition(parse_permutation(perm_text, perm_size));
            Report r;
            r.command = "fix-dim";
            r.spec_digest = digest_hex(perm_text);
            r.parameters = json{{"perm", perm_text}, {"p", p}};
            r.results = json{{"fix_dimension", fix_dimension(sys, p)},
                             {"cycle_count", sys.cycle_count()},
                             {"cycle_lengths", sys.cycle_lengths}};
            r.exactness = json{{"fix_dimension", "exact"}};
            output.emit(r);
            return exit_ok;
        }

        if (*c_keylem) {
            Language lang = make_language(spec_path);
            Report r;
            r.command = "keylem";
            r.spec_digest = digest_hex(lang.spec().source_text);
            r.parameters = json{{"levels", levels_text}};
            KeylemTable t = keylem_decay(lang, parse_levels(levels_text));
            r.results = keylem_json(t);
            r.exactness = json{{"rows.ell", "exact"},
                               {"rows.mu_hat", "empirical"},
                               {"rows.ell_times_mu_hat", "empirical"},
                               {"rows.prefix_letter_freqs", "empirical"},
                               {"rows.periodization_letter_freqs", "exact"}};
            output.emit(r);
            return exit_ok;
        }

        err << "no subcommand selected\n";
        return exit_usage;
    } catch (const SpecParseError& e) {
        err << "spec error: " << e.what() << "\n";
        return exit_usage;
    } catch (const SturmianDepthError& e) {
        err << "spec error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ResourceCapError& e) {
        err << "resource cap: " << e.what() << "\n";
        return exit_resource_cap;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "certificate machinery failed: " << e.what() << "\n";
        return exit_certificate_failed;
    }
}

} // namespace symdyn::cli
