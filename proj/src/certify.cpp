#include <symdyn/certify.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace symdyn {

namespace {

std::size_t word_index(Language& lang, int n, const Word& w) {
    const auto& lvl = lang.factors(n);
    const auto& alphabet = lang.alphabet();
    auto it = std::lower_bound(lvl.begin(), lvl.end(), w,
                               [&](const Word& a, const Word& b) {
                                   return alphabet.word_less(a, b);
                               });
    if (it == lvl.end() || *it != w)
        throw std::logic_error("word_index: '" + w + "' is not admissible at level " +
                               std::to_string(n));
    return static_cast<std::size_t>(it - lvl.begin());
}

void check_sized(Language& lang, const CylinderFunction& f) {
    if (f.values.size() != lang.factors(f.window.length()).size())
        throw std::invalid_argument("cylinder function is not total on its window level");
}

} // namespace

CylinderFunction indicator(Language& lang, const Word& q, int t) {
    if (q.empty())
        throw std::invalid_argument("indicator: word must be nonempty");
    CylinderFunction f;
    f.window = Window{-t, -t + static_cast<int>(q.size()) - 1};
    const auto& lvl = lang.factors(static_cast<int>(q.size()));
    f.values.assign(lvl.size(), Rational(0));
    for (std::size_t i = 0; i < lvl.size(); ++i)
        if (lvl[i] == q)
            f.values[i] = Rational(1);
    return f;
}

CylinderFunction constant_fn(Language& lang, const Rational& c) {
    CylinderFunction f;
    f.window = Window{0, 0};
    f.values.assign(lang.factors(1).size(), c);
    return f;
}

CylinderFunction letter_parity(Language& lang) {
    CylinderFunction f;
    f.window = Window{0, 0};
    const auto& lvl = lang.factors(1);
    f.values.reserve(lvl.size());
    for (const Word& u : lvl)
        f.values.push_back(lang.alphabet().rank(u[0]) % 2 == 0 ? Rational(1) : Rational(-1));
    return f;
}

CylinderFunction refine(Language& lang, const CylinderFunction& f, Window target) {
    check_sized(lang, f);
    if (!target.contains(f.window))
        throw std::invalid_argument("refine: target window does not contain the source window");
    if (target.lo == f.window.lo && target.hi == f.window.hi)
        return f;
    CylinderFunction out;
    out.window = target;
    const auto& lvl = lang.factors(target.length());
    const std::size_t offset = static_cast<std::size_t>(f.window.lo - target.lo);
    const std::size_t sub_len = static_cast<std::size_t>(f.window.length());
    out.values.reserve(lvl.size());
    for (const Word& u : lvl) {
        std::size_t idx = word_index(lang, f.window.length(), u.substr(offset, sub_len));
        out.values.push_back(f.values[idx]);
    }
    return out;
}

CylinderFunction shift_fn(const CylinderFunction& f, int j) {
    CylinderFunction out = f;
    out.window.lo += j;
    out.window.hi += j;
    return out;
}

bool equal_as_functions(Language& lang, const CylinderFunction& f, const CylinderFunction& g) {
    Window common{std::min(f.window.lo, g.window.lo), std::max(f.window.hi, g.window.hi)};
    return refine(lang, f, common).values == refine(lang, g, common).values;
}

namespace {

QMatrix shifted_family_matrix(Language& lang, const std::vector<CylinderFunction>& family,
                              int shift_lo, int shift_hi, Window window, std::size_t max_ambient,
                              std::vector<std::pair<std::size_t, int>>* row_labels) {
    if (shift_lo > shift_hi)
        throw std::invalid_argument("span: empty shift range");
    const std::size_t ambient = lang.factors(window.length()).size();
    if (ambient > max_ambient)
        throw ResourceCapError("span: ambient dimension exceeds the configured cap");
    QMatrix m(0, 0);
    for (std::size_t fi = 0; fi < family.size(); ++fi) {
        for (int j = shift_lo; j <= shift_hi; ++j) {
            CylinderFunction s = shift_fn(family[fi], j);
            if (!window.contains(s.window)) {
                std::ostringstream msg;
                msg << "span: shifted member (index " << fi << ", shift " << j
                    << ") does not fit in the window";
                throw std::invalid_argument(msg.str());
            }
            m.append_row(refine(lang, s, window).values);
            if (row_labels)
                row_labels->emplace_back(fi, j);
        }
    }
    return m;
}

} // namespace

SpanCertificate span_rank(Language& lang, const std::vector<CylinderFunction>& family,
                          int shift_lo, int shift_hi, Window window, std::size_t max_ambient) {
    SpanCertificate cert;
    cert.window = window;
    cert.shift_lo = shift_lo;
    cert.shift_hi = shift_hi;
    cert.family_size = family.size();
    QMatrix m = shifted_family_matrix(lang, family, shift_lo, shift_hi, window, max_ambient,
                                      nullptr);
    cert.ambient = lang.factors(window.length()).size();
    cert.rank = bareiss_rank(m);
    return cert;
}

SpanMembership span_contains(Language& lang, const std::vector<CylinderFunction>& family,
                             int shift_lo, int shift_hi, const CylinderFunction& target,
                             Window window, std::size_t max_ambient) {
    SpanMembership res;
    res.window = window;
    if (!window.contains(target.window))
        throw std::invalid_argument("span_contains: target does not fit in the window");
    std::vector<std::pair<std::size_t, int>> labels;
    QMatrix m = shifted_family_matrix(lang, family, shift_lo, shift_hi, window, max_ambient,
                                      &labels);
    std::vector<Rational> t = refine(lang, target, window).values;
    CombinationResult cr = express_in_rows(m, t);
    if (cr.consistent) {
        res.member = true;
        for (std::size_t i = 0; i < cr.coefficients.size(); ++i)
            if (cr.coefficients[i] != Rational(0))
                res.coefficients.push_back({labels[i].first, labels[i].second,
                                            cr.coefficients[i]});
    } else {
        res.member = false;
        const auto& lvl = lang.factors(window.length());
        for (std::size_t j = 0; j < lvl.size(); ++j)
            if (cr.separating[j] != Rational(0))
                res.separating.emplace_back(lvl[j], cr.separating[j]);
    }
    return res;
}

SturmianCertificate sturmian_simplicity_certificate(Language& lang, int n_max,
                                                    std::size_t max_ambient) {
    if (lang.spec().kind != SubshiftKind::sturmian)
        throw std::invalid_argument("sturmian_simplicity_certificate: spec is not sturmian");
    if (n_max < 1)
        throw std::invalid_argument("sturmian_simplicity_certificate: n_max must be >= 1");
    SturmianCertificate cert;
    cert.n_max = n_max;
    cert.ok = true;
    CylinderFunction one = constant_fn(lang, Rational(1));
    CylinderFunction f = letter_parity(lang);
    for (int n = 1; n <= n_max; ++n) {
        std::vector<CylinderFunction> family;
        family.push_back(one);
        for (int j = 0; j < n; ++j)
            family.push_back(shift_fn(f, j));
        SpanCertificate sc = span_rank(lang, family, 0, 0, Window{0, n - 1}, max_ambient);
        cert.levels.push_back({n, sc.rank, static_cast<std::size_t>(n) + 1});
        if (sc.rank != static_cast<std::size_t>(n) + 1 && cert.ok) {
            cert.ok = false;
            cert.failing_level = n;
        }
    }
    return cert;
}

BirkhoffResult birkhoff_average(Language& lang, const CylinderFunction& f, int step, int count,
                                Window window, const std::vector<Word>* restrict_to) {
    if (count < 1)
        throw std::invalid_argument("birkhoff_average: count must be >= 1");
    BirkhoffResult out;
    Window hull = f.window;
    hull.lo = std::min(f.window.lo, f.window.lo + (count - 1) * step);
    hull.hi = std::max(f.window.hi, f.window.hi + (count - 1) * step);
    if (!window.contains(hull))
        throw std::invalid_argument("birkhoff_average: shifted copies overflow the window");

    const auto& lvl = lang.factors(window.length());
    std::vector<Rational> acc(lvl.size(), Rational(0));
    for (int k = 0; k < count; ++k) {
        CylinderFunction g = refine(lang, shift_fn(f, k * step), window);
        for (std::size_t i = 0; i < acc.size(); ++i)
            acc[i] += g.values[i];
    }
    const Rational inv_count(BigInt(1), BigInt(count));
    for (auto& x : acc)
        x *= inv_count;
    out.average.window = window;
    out.average.values = std::move(acc);

    auto spread = [](const std::vector<Rational>& xs) {
        Rational mn = xs.front(), mx = xs.front();
        for (const auto& x : xs) {
            mn = std::min(mn, x);
            mx = std::max(mx, x);
        }
        return mx - mn;
    };
    if (out.average.values.empty())
        throw std::logic_error("birkhoff_average: empty language level");
    out.deviation = spread(out.average.values);

    if (restrict_to) {
        std::vector<Rational> restricted;
        restricted.reserve(restrict_to->size());
        for (const Word& w : *restrict_to)
            restricted.push_back(out.average.values[word_index(lang, window.length(), w)]);
        if (restricted.empty())
            throw std::invalid_argument("birkhoff_average: empty restriction set");
        out.restricted_deviation = spread(restricted);
    }
    return out;
}

TmEvidence thue_morse_cyclicity_evidence(Language& lang, int n, int p_max) {
    const SubshiftSpec& spec = lang.spec();
    if (spec.kind != SubshiftKind::substitution)
        throw std::invalid_argument("cyclicity evidence needs a substitution subshift");
    if (n < 0 || p_max < 1)
        throw std::invalid_argument("cyclicity evidence: need n >= 0 and p_max >= 1");
    std::size_t image_len = spec.rules.begin()->second.size();
    for (const auto& [c, img] : spec.rules)
        if (img.size() != image_len)
            throw std::invalid_argument("cyclicity evidence needs a constant-length substitution");

    // n-fold image of each letter
    std::map<char, Word> power;
    for (char c : spec.alphabet.symbols())
        power[c] = Word(1, c);
    for (int i = 0; i < n; ++i)
        for (auto& [c, w] : power) {
            Word next;
            for (char x : w)
                next += spec.rules.at(x);
            w = std::move(next);
        }

    TmEvidence ev;
    ev.n = n;
    ev.p_max = p_max;
    ev.block = power.at(spec.alphabet.symbol(0));
    const std::size_t step = ev.block.size();

    for (int p = 1; p <= p_max; ++p) {
        // Block-aligned points restricted to [0, p*step) spell the n-fold
        // image of an admissible p-word, so the average of the block
        // indicator along block shifts is the block frequency in that word.
        Rational mn(0), mx(0);
        bool first = true;
        for (const Word& w : lang.factors(p)) {
            long hits = 0;
            Word image;
            for (char c : w)
                image += power.at(c);
            for (int k = 0; k < p; ++k)
                if (image.compare(static_cast<std::size_t>(k) * step, step, ev.block) == 0)
                    ++hits;
            Rational val = Rational(BigInt(hits), BigInt(p));
            if (first) {
                mn = mx = val;
                first = false;
            } else {
                mn = std::min(mn, val);
                mx = std::max(mx, val);
            }
        }
        ev.rows.push_back({p, mx - mn});
    }

    ev.dyadic_nonincreasing = true;
    for (int p = 4; 2 * p <= p_max; p *= 2) {
        const Rational& d1 = ev.rows[static_cast<std::size_t>(p - 1)].deviation;
        const Rational& d2 = ev.rows[static_cast<std::size_t>(2 * p - 1)].deviation;
        if (d2 > d1)
            ev.dyadic_nonincreasing = false;
    }
    return ev;
}

MultiplicityBound multiplicity_upper_bound(Language& lang, int k, int n) {
    MultiplicityBound mb;
    mb.n = n;
    mb.k = k;

    GoodScales gs = good_scales(lang, k, n + 2);
    if (std::find(gs.members.begin(), gs.members.end(), n) == gs.members.end())
        throw std::invalid_argument("multiplicity_upper_bound: level is not a linear-growth "
                                    "scale for this k");

    SpecialWords sw = right_special(lang, n);
    mb.witness_family = sw.q_prime;
    mb.bound = sw.q_prime.size();
    mb.bound_ok = mb.bound <= 2 * static_cast<std::size_t>(k);

    mb.ok = mb.bound_ok;
    for (int l = 1; l < n; ++l) {
        for (const Word& w : lang.factors(l)) {
            Decomposition d = decompose_cylinder(lang, w, n, k);
            PartitionReport pr = verify_partition(lang, d);
            mb.targets.push_back({w, d.pieces, pr.all_ok()});
            if (!pr.all_ok())
                mb.ok = false;
        }
    }
    std::ostringstream v;
    v << "multiplicity <= " << mb.bound << " <= " << 2 * k << " at scale " << n
      << " (finite-scale certificate; every cylinder of length < " << n
      << " is an exact disjoint union over the witness family)";
    mb.verdict = v.str();
    return mb;
}

KeylemTable keylem_decay(Language& lang, const std::vector<int>& levels,
                         std::size_t prefix_length) {
    KeylemTable table;
    const Word& prefix = lang.reference_prefix(prefix_length);
    if (prefix.empty())
        throw std::invalid_argument("keylem_decay: no admissible reference prefix");

    std::vector<std::pair<char, Rational>> prefix_freqs;
    for (char c : lang.alphabet().symbols()) {
        long count = 0;
        for (char x : prefix)
            if (x == c)
                ++count;
        prefix_freqs.emplace_back(c, Rational(BigInt(count),
                                              BigInt(static_cast<long>(prefix.size()))));
    }

    bool increasing = true;
    int prev_ell = 0;
    for (int n : levels) {
        KeylemRow row;
        row.n = n;
        SpecialWords sw = right_special(lang, n);
        if (sw.q.empty()) {
            row.has_word = false;
            table.rows.push_back(std::move(row));
            increasing = false;
            continue;
        }
        row.has_word = true;
        row.w = sw.q.front();
        PeriodData pd = minimal_period(row.w);
        row.ell = pd.ell;
        long hits = occurrences(row.w, prefix);
        row.mu_hat = Rational(BigInt(hits), BigInt(static_cast<long>(prefix.size())));
        row.product = Rational(BigInt(pd.ell), BigInt(1)) * row.mu_hat;
        for (char c : lang.alphabet().symbols())
            row.periodization_letter_freqs.emplace_back(
                c, periodization_measure(pd.v, Word(1, c)));
        row.prefix_letter_freqs = prefix_freqs;
        if (row.ell <= prev_ell)
            increasing = false;
        prev_ell = row.ell;
        table.rows.push_back(std::move(row));
    }
    table.ell_strictly_increasing = increasing && !table.rows.empty();

    if (lang.spec().kind == SubshiftKind::periodic_seed)
        table.notes.push_back("periodic system: minimal periods are bounded by the generator, "
                              "so the growth hypothesis fails by construction");
    for (const auto& row : table.rows)
        if (!row.has_word) {
            table.notes.push_back("some levels have no right-special word; the aperiodicity "
                                  "hypothesis is violated there");
            break;
        }
    if (lang.spec().kind == SubshiftKind::substitution && lang.spec().primitive)
        table.notes.push_back("primitive substitution: unique invariant measure, so the decay "
                              "comparison against a second ergodic measure is vacuous");
    if (!table.ell_strictly_increasing)
        table.notes.push_back("minimal periods did not strictly increase along the listed "
                              "levels");
    return table;
}

} // namespace symdyn
