#include <symdyn/complexity.hpp>

#include <algorithm>
#include <sstream>

namespace symdyn {

long complexity(Language& lang, int n) {
    return lang.complexity(n);
}

SpecialWords right_special(Language& lang, int n) {
    if (n < 1)
        throw std::invalid_argument("right_special: level must be >= 1");
    SpecialWords sw;
    sw.level = n;
    const auto& ext = lang.factors(n + 1);
    const long p_n = lang.complexity(n);
    const long p_n1 = static_cast<long>(ext.size());

    // L(n+1) is sorted, so words sharing an n-prefix are consecutive.
    std::size_t i = 0;
    while (i < ext.size()) {
        std::size_t j = i + 1;
        while (j < ext.size() &&
               ext[j].compare(0, static_cast<std::size_t>(n), ext[i], 0,
                              static_cast<std::size_t>(n)) == 0)
            ++j;
        if (j - i >= 2) {
            sw.q.push_back(ext[i].substr(0, static_cast<std::size_t>(n)));
            for (std::size_t t = i; t < j; ++t)
                sw.q_prime.push_back(ext[t]);
        }
        i = j;
    }

    const long expected = static_cast<long>(sw.q.size()) + p_n1 - p_n;
    if (static_cast<long>(sw.q_prime.size()) != expected) {
        std::ostringstream msg;
        msg << "extension-count identity violated at level " << n << ": #Q'=" << sw.q_prime.size()
            << " but #Q + p(n+1) - p(n) = " << expected << "; language enumeration is inconsistent";
        throw std::logic_error(msg.str());
    }
    return sw;
}

GoodScales good_scales(Language& lang, int k, int bound) {
    if (k < 1)
        throw std::invalid_argument("good_scales: k must be >= 1");
    if (bound < 2)
        throw std::invalid_argument("good_scales: bound must be >= 2");
    GoodScales gs;
    gs.k = k;
    for (int n = 1; n < bound; ++n) {
        long p1 = lang.complexity(n + 1);
        long p0 = lang.complexity(n);
        if (p1 < static_cast<long>(k + 1) * (n + 1) && p1 - p0 <= k)
            gs.members.push_back(n);
    }
    return gs;
}

HittingReport check_hitting(Language& lang, int n, int k) {
    HittingReport rep;
    rep.level = n;
    rep.k = k;
    rep.word_length = (k + 2) * (n + 1);

    SpecialWords sw = right_special(lang, n);
    if (sw.q.empty()) {
        rep.ok = false;
        rep.hypothesis_violated = true;
        return rep;
    }
    const auto& big = lang.factors(rep.word_length);
    const auto& alphabet = lang.alphabet();
    auto in_q = [&](const Word& w, std::size_t pos) {
        Word block = w.substr(pos, static_cast<std::size_t>(n));
        return std::binary_search(sw.q.begin(), sw.q.end(), block,
                                  [&](const Word& a, const Word& b) {
                                      return alphabet.word_less(a, b);
                                  });
    };
    for (const Word& w : big) {
        ++rep.words_checked;
        bool hit = false;
        for (std::size_t pos = 0; pos + static_cast<std::size_t>(n) <= w.size(); ++pos)
            if (in_q(w, pos)) {
                hit = true;
                break;
            }
        if (!hit) {
            rep.ok = false;
            rep.counterexample = w;
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

BoshernitzanEvidence boshernitzan_bound(Language& lang, int horizon) {
    if (horizon < 4)
        throw std::invalid_argument("boshernitzan_bound: horizon must be >= 4");
    BoshernitzanEvidence ev;
    ev.horizon = horizon;
    int best_any = 0, witness_any = 0;
    int best_tail = 0, witness_tail = 0;
    const int tail_start = horizon / 2;
    for (int n = 1; n < horizon; ++n) {
        long p = lang.complexity(n);
        int ratio = static_cast<int>((p + n - 1) / n); // ceil(p/n)
        if (best_any == 0 || ratio < best_any) {
            best_any = ratio;
            witness_any = n;
        }
        if (n >= tail_start && (best_tail == 0 || ratio < best_tail)) {
            best_tail = ratio;
            witness_tail = n;
        }
    }
    ev.k = best_tail;
    ev.witness = witness_tail;
    ev.k_any_scale = best_any;
    ev.witness_any_scale = witness_any;
    std::ostringstream st;
    st << "at most " << ev.k << " ergodic measures (finite-scale evidence: p(" << ev.witness
       << ") <= " << ev.k << "*" << ev.witness << "; liminf not certified)";
    ev.statement = st.str();
    return ev;
}

} // namespace symdyn
