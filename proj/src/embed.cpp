#include <symdyn/embed.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace symdyn {

PermutationSystem cycle_decomposition(const std::vector<int>& perm) {
    PermutationSystem sys;
    sys.size = static_cast<int>(perm.size());
    if (sys.size == 0)
        throw std::invalid_argument("cycle_decomposition: empty permutation");
    std::vector<char> hit(perm.size(), 0);
    for (int x : perm) {
        if (x < 0 || x >= sys.size || hit[static_cast<std::size_t>(x)])
            throw std::invalid_argument("cycle_decomposition: input is not a bijection");
        hit[static_cast<std::size_t>(x)] = 1;
    }
    sys.perm = perm;
    sys.cycle_of.assign(perm.size(), -1);
    sys.phase_of.assign(perm.size(), 0);
    for (int start = 0; start < sys.size; ++start) {
        if (sys.cycle_of[static_cast<std::size_t>(start)] >= 0)
            continue;
        std::vector<int> cycle;
        int x = start;
        do {
            sys.cycle_of[static_cast<std::size_t>(x)] = static_cast<int>(sys.cycles.size());
            sys.phase_of[static_cast<std::size_t>(x)] = static_cast<int>(cycle.size());
            cycle.push_back(x);
            x = perm[static_cast<std::size_t>(x)];
        } while (x != start);
        sys.cycle_lengths.push_back(static_cast<int>(cycle.size()));
        sys.base_points.push_back(cycle.front());
        sys.cycles.push_back(std::move(cycle));
    }
    return sys;
}

std::vector<int> parse_permutation(const std::string& text, std::optional<int> size_hint) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("cannot parse permutation '" + text + "': " + why);
    };
    std::vector<std::vector<long>> cycles;
    std::vector<long> images;
    bool cycle_form = text.find('(') != std::string::npos;
    if (cycle_form) {
        std::size_t i = 0;
        while (i < text.size()) {
            char c = text[i];
            if (c == ' ' || c == '\t') {
                ++i;
                continue;
            }
            if (c != '(')
                fail("expected '('");
            std::size_t close = text.find(')', i);
            if (close == std::string::npos)
                fail("unbalanced parenthesis");
            std::istringstream body(text.substr(i + 1, close - i - 1));
            std::vector<long> cyc;
            std::string tok;
            while (body >> tok) {
                if (!tok.empty() && tok.back() == ',')
                    tok.pop_back();
                try {
                    cyc.push_back(std::stol(tok));
                } catch (const std::exception&) {
                    fail("bad label '" + tok + "'");
                }
            }
            if (!cyc.empty())
                cycles.push_back(std::move(cyc));
            i = close + 1;
        }
    } else {
        std::istringstream in(text);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            try {
                images.push_back(std::stol(tok));
            } catch (const std::exception&) {
                fail("bad image '" + tok + "'");
            }
        }
        if (images.empty())
            fail("no entries");
    }

    long min_label = std::numeric_limits<long>::max();
    long max_label = std::numeric_limits<long>::min();
    auto see = [&](long v) {
        min_label = std::min(min_label, v);
        max_label = std::max(max_label, v);
    };
    for (const auto& c : cycles)
        for (long v : c)
            see(v);
    for (long v : images)
        see(v);
    if (cycle_form && cycles.empty()) {
        if (!size_hint)
            fail("empty cycle list needs an explicit size");
        min_label = 0;
        max_label = -1;
    }
    if (min_label < 0)
        fail("negative label");
    const long base = (min_label == 0) ? 0 : 1; // 1-based unless a 0 appears

    long size = cycle_form ? (max_label - base + 1) : static_cast<long>(images.size());
    if (size_hint)
        size = std::max(size, static_cast<long>(*size_hint));
    if (size <= 0)
        fail("empty permutation");

    std::vector<int> perm(static_cast<std::size_t>(size));
    std::iota(perm.begin(), perm.end(), 0);
    if (cycle_form) {
        std::vector<char> used(static_cast<std::size_t>(size), 0);
        for (const auto& c : cycles) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                long from = c[i] - base;
                long to = c[(i + 1) % c.size()] - base;
                if (from >= size || used[static_cast<std::size_t>(from)])
                    fail("label repeated or out of range");
                used[static_cast<std::size_t>(from)] = 1;
                perm[static_cast<std::size_t>(from)] = static_cast<int>(to);
            }
        }
    } else {
        std::vector<char> used(static_cast<std::size_t>(size), 0);
        for (std::size_t i = 0; i < images.size(); ++i) {
            long v = images[i] - base;
            if (v < 0 || v >= size)
                fail("image out of range");
            if (used[static_cast<std::size_t>(v)])
                fail("image repeated, not a bijection");
            used[static_cast<std::size_t>(v)] = 1;
            perm[i] = static_cast<int>(v);
        }
    }
    return perm;
}

FiniteMult finite_mult(const PermutationSystem& sys) {
    FiniteMult fm;
    fm.k = sys.cycle_count();

    const std::size_t n = static_cast<std::size_t>(sys.size);
    QMatrix u_minus_id(n, n);
    for (std::size_t x = 0; x < n; ++x) {
        u_minus_id.at(x, static_cast<std::size_t>(sys.perm[x])) += Rational(1);
        u_minus_id.at(x, x) -= Rational(1);
    }
    fm.coboundary_image_dim = static_cast<int>(bareiss_rank(u_minus_id));
    fm.quotient_dim = sys.size - fm.coboundary_image_dim;

    // cycle indicators against the cycle measures: exactly the identity
    fm.witness_matrix.assign(static_cast<std::size_t>(fm.k),
                             std::vector<Rational>(static_cast<std::size_t>(fm.k), Rational(0)));
    for (int i = 0; i < fm.k; ++i)
        for (int j = 0; j < fm.k; ++j) {
            Rational integral(0);
            for (int x : sys.cycles[static_cast<std::size_t>(i)])
                if (sys.cycle_of[static_cast<std::size_t>(x)] == j)
                    integral += Rational(BigInt(1),
                                         BigInt(sys.cycle_lengths[static_cast<std::size_t>(i)]));
            fm.witness_matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                integral;
        }
    QMatrix wm(static_cast<std::size_t>(fm.k), static_cast<std::size_t>(fm.k));
    for (int i = 0; i < fm.k; ++i)
        for (int j = 0; j < fm.k; ++j)
            wm.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                fm.witness_matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    fm.witness_invertible = bareiss_rank(wm) == static_cast<std::size_t>(fm.k);

    QMatrix with_constants(n + 1, n);
    for (std::size_t x = 0; x < n; ++x) {
        with_constants.at(x, static_cast<std::size_t>(sys.perm[x])) += Rational(1);
        with_constants.at(x, x) -= Rational(1);
        with_constants.at(n, x) = Rational(1);
    }
    fm.constants_plus_coboundaries_span = bareiss_rank(with_constants) == n;
    return fm;
}

std::pair<int, EmbedCase> embedding_dimension(const PermutationSystem& sys) {
    int g = 0;
    for (int r : sys.cycle_lengths)
        g = std::gcd(g, r);
    if (g > 1)
        return {sys.cycle_count(), EmbedCase::common_factor};
    return {sys.cycle_count() - 1, EmbedCase::coprime};
}

namespace {

PeriodicSeq zero_seq() { return PeriodicSeq{0, 1, "0"}; }

PeriodicSeq cycle_pattern(int phase, int r) {
    return PeriodicSeq{phase, r, "1" + std::string(static_cast<std::size_t>(r - 1), '0')};
}

EmbeddingPlan coprime_style(const PermutationSystem& sys, int special) {
    EmbeddingPlan plan;
    plan.tag = EmbedCase::coprime;
    plan.dimension = sys.cycle_count() - 1;
    plan.special_cycle = special;

    std::vector<int> coord_of_cycle(sys.cycles.size(), -1);
    int coord = 0;
    for (int c = 0; c < sys.cycle_count(); ++c)
        if (c != special)
            coord_of_cycle[static_cast<std::size_t>(c)] = coord++;

    plan.point_plans.assign(static_cast<std::size_t>(sys.size),
                            std::vector<PeriodicSeq>(static_cast<std::size_t>(plan.dimension),
                                                     zero_seq()));
    for (int x = 0; x < sys.size; ++x) {
        int c = sys.cycle_of[static_cast<std::size_t>(x)];
        int l = sys.phase_of[static_cast<std::size_t>(x)];
        int r = sys.cycle_lengths[static_cast<std::size_t>(c)];
        auto& row = plan.point_plans[static_cast<std::size_t>(x)];
        if (c == special) {
            for (int j = 0; j < plan.dimension; ++j)
                row[static_cast<std::size_t>(j)] = cycle_pattern(l, r);
        } else {
            row[static_cast<std::size_t>(coord_of_cycle[static_cast<std::size_t>(c)])] =
                cycle_pattern(l, r);
        }
    }
    return plan;
}

} // namespace

EmbeddingPlan build_embedding(const PermutationSystem& sys) {
    auto [d, tag] = embedding_dimension(sys);
    if (tag == EmbedCase::common_factor) {
        EmbeddingPlan plan;
        plan.tag = tag;
        plan.dimension = d; // = k, one coordinate per cycle
        plan.point_plans.assign(static_cast<std::size_t>(sys.size),
                                std::vector<PeriodicSeq>(static_cast<std::size_t>(d),
                                                         zero_seq()));
        for (int x = 0; x < sys.size; ++x) {
            int c = sys.cycle_of[static_cast<std::size_t>(x)];
            int l = sys.phase_of[static_cast<std::size_t>(x)];
            int r = sys.cycle_lengths[static_cast<std::size_t>(c)];
            plan.point_plans[static_cast<std::size_t>(x)][static_cast<std::size_t>(c)] =
                cycle_pattern(l, r);
        }
        return plan;
    }

    // Coprime case. A special cycle with 2 r_s = size leaves the kernel
    // direction (uniform on the special cycle minus uniform elsewhere), so
    // prefer the last cycle without that defect.
    int special = -1;
    for (int c = sys.cycle_count() - 1; c >= 0; --c)
        if (2 * sys.cycle_lengths[static_cast<std::size_t>(c)] != sys.size) {
            special = c;
            break;
        }
    if (special >= 0)
        return coprime_style(sys, special);

    // Only the two-fixed-points system lands here: send the special cycle to
    // the zero sequence instead.
    EmbeddingPlan plan = coprime_style(sys, sys.cycle_count() - 1);
    plan.special_dropped = true;
    for (int x : sys.cycles.back())
        for (auto& seq : plan.point_plans[static_cast<std::size_t>(x)])
            seq = zero_seq();
    return plan;
}

EmbeddingPlan coprime_style_plan(const PermutationSystem& sys) {
    return coprime_style(sys, sys.cycle_count() - 1);
}

FiniteMeasure uniform_measure(const PermutationSystem& sys) {
    FiniteMeasure mu;
    mu.weights.assign(static_cast<std::size_t>(sys.size),
                      Rational(BigInt(1), BigInt(sys.size)));
    return mu;
}

FiniteMeasure dirac(const PermutationSystem& sys, int point) {
    if (point < 0 || point >= sys.size)
        throw std::invalid_argument("dirac: point out of range");
    FiniteMeasure mu;
    mu.weights.assign(static_cast<std::size_t>(sys.size), Rational(0));
    mu.weights[static_cast<std::size_t>(point)] = Rational(1);
    return mu;
}

FiniteMeasure push_forward(const PermutationSystem& sys, const FiniteMeasure& mu) {
    FiniteMeasure out;
    out.weights.assign(mu.weights.size(), Rational(0));
    for (int x = 0; x < sys.size; ++x)
        out.weights[static_cast<std::size_t>(sys.perm[static_cast<std::size_t>(x)])] =
            mu.weights[static_cast<std::size_t>(x)];
    return out;
}

std::vector<std::vector<Rational>> psi_eval(const PermutationSystem& sys,
                                            const EmbeddingPlan& plan, const FiniteMeasure& mu,
                                            long lo, long hi) {
    if (mu.weights.size() != static_cast<std::size_t>(sys.size))
        throw std::invalid_argument("psi_eval: measure size mismatch");
    if (hi < lo)
        throw std::invalid_argument("psi_eval: empty index range");
    // image is periodic with the cycle-length lcm: every plan period divides it
    long lcm_period = 1;
    for (int r : sys.cycle_lengths)
        lcm_period = std::lcm(lcm_period, static_cast<long>(r));
    for (const auto& row : plan.point_plans)
        for (const auto& seq : row)
            if (lcm_period % seq.period != 0)
                throw std::logic_error("psi_eval: plan period does not divide the cycle lcm");
    std::vector<std::vector<Rational>> out(
        static_cast<std::size_t>(plan.dimension),
        std::vector<Rational>(static_cast<std::size_t>(hi - lo + 1), Rational(0)));
    for (int i = 0; i < plan.dimension; ++i)
        for (long m = lo; m <= hi; ++m) {
            Rational v(0);
            for (int x = 0; x < sys.size; ++x)
                if (plan.point_plans[static_cast<std::size_t>(x)][static_cast<std::size_t>(i)]
                        .at(m))
                    v += mu.weights[static_cast<std::size_t>(x)];
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(m - lo)] = v;
        }
    return out;
}

InjectivityCertificate injectivity_certificate(const PermutationSystem& sys,
                                               const EmbeddingPlan& plan) {
    InjectivityCertificate cert;
    long period = 1;
    for (const auto& row : plan.point_plans)
        for (const auto& seq : row)
            period = std::lcm(period, static_cast<long>(seq.period));
    cert.period_window = static_cast<int>(period);

    // linear map measure -> one full period of Psi, stacked with the mass
    // row; the rows are periodic in the index, so only the distinct ones
    // matter (at most size + 1 of them)
    std::set<std::string> distinct;
    for (int i = 0; i < plan.dimension; ++i)
        for (long t = 0; t < period; ++t) {
            std::string row(static_cast<std::size_t>(sys.size), '0');
            for (int x = 0; x < sys.size; ++x)
                if (plan.point_plans[static_cast<std::size_t>(x)][static_cast<std::size_t>(i)]
                        .at(t))
                    row[static_cast<std::size_t>(x)] = '1';
            distinct.insert(std::move(row));
        }
    distinct.insert(std::string(static_cast<std::size_t>(sys.size), '1')); // mass row
    QMatrix m(distinct.size(), static_cast<std::size_t>(sys.size));
    std::size_t r = 0;
    for (const auto& row : distinct) {
        for (int x = 0; x < sys.size; ++x)
            if (row[static_cast<std::size_t>(x)] == '1')
                m.at(r, static_cast<std::size_t>(x)) = Rational(1);
        ++r;
    }

    auto kernel = kernel_basis(m);
    if (kernel.empty()) {
        cert.injective = true;
        return cert;
    }
    cert.injective = false;
    cert.kernel_witness = kernel.front();

    // two distinct measures with the same image: uniform +- a small multiple
    Rational max_abs(0);
    for (const auto& t : cert.kernel_witness)
        max_abs = std::max(max_abs, t >= Rational(0) ? t : -t);
    Rational scale = Rational(BigInt(1), BigInt(2L * sys.size)) / max_abs;
    FiniteMeasure plus = uniform_measure(sys), minus = uniform_measure(sys);
    for (int x = 0; x < sys.size; ++x) {
        plus.weights[static_cast<std::size_t>(x)] +=
            scale * cert.kernel_witness[static_cast<std::size_t>(x)];
        minus.weights[static_cast<std::size_t>(x)] -=
            scale * cert.kernel_witness[static_cast<std::size_t>(x)];
    }
    cert.witness_measures = std::make_pair(std::move(plus), std::move(minus));
    return cert;
}

int fix_dimension(const PermutationSystem& sys, int p) {
    if (p < 1)
        throw std::invalid_argument("fix_dimension: power must be >= 1");
    std::vector<int> power(static_cast<std::size_t>(sys.size));
    std::iota(power.begin(), power.end(), 0);
    std::vector<int> base = sys.perm;
    int e = p;
    while (e > 0) {
        if (e & 1) {
            std::vector<int> next(power.size());
            for (std::size_t x = 0; x < power.size(); ++x)
                next[x] = base[static_cast<std::size_t>(power[x])];
            power = std::move(next);
        }
        e >>= 1;
        if (e) {
            std::vector<int> next(base.size());
            for (std::size_t x = 0; x < base.size(); ++x)
                next[x] = base[static_cast<std::size_t>(base[x])];
            base = std::move(next);
        }
    }
    return cycle_decomposition(power).cycle_count() - 1;
}

} // namespace symdyn
