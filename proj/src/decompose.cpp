#include <symdyn/decompose.hpp>
#include <symdyn/words.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace symdyn {

namespace {

// extension table at level n: n-word -> admissible next letters
std::map<Word, std::string> extension_table(Language& lang, int n) {
    std::map<Word, std::string> ext;
    for (const Word& u : lang.factors(n + 1))
        ext[u.substr(0, static_cast<std::size_t>(n))] += u.back();
    return ext;
}

} // namespace

Decomposition decompose_cylinder(Language& lang, const Word& w, int n, int k) {
    const int l = static_cast<int>(w.size());
    if (l < 1 || l >= n)
        throw std::invalid_argument("decompose_cylinder: need 1 <= |w| < n");
    if (k < 1)
        throw std::invalid_argument("decompose_cylinder: k must be >= 1");
    if (!lang.contains(l, w))
        throw std::invalid_argument("decompose_cylinder: target word is not admissible");

    SpecialWords sw = right_special(lang, n);
    if (sw.q.empty())
        throw DecomposeError(DecomposeError::Kind::no_right_special,
                             "no right-special words at this level; the subshift is periodic "
                             "or the scale is not a linear-growth scale");

    const auto& alphabet = lang.alphabet();
    auto is_special = [&](const Word& block) {
        return std::binary_search(sw.q.begin(), sw.q.end(), block,
                                  [&](const Word& a, const Word& b) {
                                      return alphabet.word_less(a, b);
                                  });
    };

    // Window [-E, n-1]: every point is anchored at the last right-special
    // n-block ending at a position <= n-2; the stretch [-E, n-2] is long
    // enough to guarantee such a block exists. The anchor is independent of
    // |w|: anchoring at the last block before the target end instead breaks
    // the disjointness of shifted special cylinders between the target end
    // and n-1, and with it the offset-by-period bound.
    const int E = (k + 2) * (n + 1);
    const int total = E + n;
    const std::size_t w_at = static_cast<std::size_t>(E); // index of position 0

    std::set<std::pair<int, Word>> seen;
    for (const Word& big : lang.factors(total)) {
        if (big.compare(w_at, static_cast<std::size_t>(l), w) != 0)
            continue;
        // largest j <= n-2 whose n-block x_{j-n+1..j} is right-special
        int found = total; // sentinel
        for (int j = n - 2; j - n + 1 >= -E; --j) {
            std::size_t start = static_cast<std::size_t>(j - n + 1 + E);
            if (is_special(big.substr(start, static_cast<std::size_t>(n)))) {
                found = j;
                break;
            }
        }
        if (found == total)
            throw DecomposeError(DecomposeError::Kind::no_hit_within_horizon,
                                 "no right-special block within the guaranteed horizon; the "
                                 "subshift is periodic at this scale or the scale is invalid");
        const int j = found;
        Word q = big.substr(static_cast<std::size_t>(j - n + 1 + E),
                            static_cast<std::size_t>(n + 1));
        seen.emplace(n - 1 - j, std::move(q));
    }
    if (seen.empty())
        throw std::logic_error("decompose_cylinder: admissible target without extensions");

    Decomposition d;
    d.target = w;
    d.level = n;
    d.growth_k = k;

    // Consistency: each piece must force the continuation through position
    // n-1 deterministically (and through the rest of w in particular); a
    // second right-special block past the anchor is an indexing bug.
    auto ext = extension_table(lang, n);
    for (const auto& [t, q] : seen) {
        const int K = n - 1 - t; // the block q ends at K+1, its special prefix at K
        Word context = q;        // letters at positions K-n+1 .. K+1
        for (int i = K + 2; i <= n - 1; ++i) {
            Word block = context.substr(context.size() - static_cast<std::size_t>(n));
            if (is_special(block)) {
                std::ostringstream msg;
                msg << "piece determinism violated: block '" << block
                    << "' is right-special before the target ends (t=" << t << ", q=" << q << ")";
                throw std::logic_error(msg.str());
            }
            auto it = ext.find(block);
            if (it == ext.end() || it->second.size() != 1)
                throw std::logic_error("piece determinism violated: missing unique extension");
            char forced = it->second[0];
            if (i >= 0 && i < l && forced != w[static_cast<std::size_t>(i)]) {
                std::ostringstream msg;
                msg << "piece determinism violated: forced letter '" << forced
                    << "' disagrees with target at position " << i;
                throw std::logic_error(msg.str());
            }
            context += forced;
        }
        d.pieces.push_back(ShiftedCylinder{t, q});
    }

    std::sort(d.pieces.begin(), d.pieces.end(), [&](const ShiftedCylinder& a,
                                                    const ShiftedCylinder& b) {
        if (a.t != b.t)
            return a.t < b.t;
        return alphabet.word_less(a.q, b.q);
    });
    return d;
}

PartitionReport verify_partition(Language& lang, const Decomposition& d,
                                 std::optional<std::pair<int, int>> window) {
    PartitionReport rep;
    const int l = static_cast<int>(d.target.size());

    int lo = 0, hi = l - 1;
    for (const auto& p : d.pieces) {
        lo = std::min(lo, -p.t);
        hi = std::max(hi, -p.t + static_cast<int>(p.q.size()) - 1);
    }
    if (window) {
        if (window->first > lo || window->second < hi)
            throw std::invalid_argument("verify_partition: window does not cover all fixed "
                                        "coordinates");
        lo = window->first;
        hi = window->second;
    }
    rep.window_lo = lo;
    rep.window_hi = hi;

    const int len = hi - lo + 1;
    rep.covered = true;
    rep.disjoint = true;
    for (const Word& u : lang.factors(len)) {
        ++rep.words_checked;
        bool in_target = u.compare(static_cast<std::size_t>(-lo), static_cast<std::size_t>(l),
                                   d.target) == 0;
        int hits = 0;
        for (const auto& p : d.pieces)
            if (u.compare(static_cast<std::size_t>(-p.t - lo), p.q.size(), p.q) == 0)
                ++hits;
        if (hits > 1 && rep.disjoint) {
            rep.disjoint = false;
            rep.disjoint_witness = u;
        }
        if ((in_target ? hits < 1 : hits > 0) && rep.covered) {
            rep.covered = false;
            rep.cover_witness = u;
        }
    }

    rep.offset_bound = true;
    const int bound = (d.growth_k + 2) * (d.level + 1);
    for (const auto& p : d.pieces)
        if (p.t < 0 || p.t > bound)
            rep.offset_bound = false;

    rep.dense3 = true;
    for (const auto& p : d.pieces) {
        int ell = subshift_min_period(lang, p.q);
        if (ell < static_cast<int>(p.q.size()) && p.t > ell)
            rep.dense3 = false;
    }
    return rep;
}

int subshift_min_period(Language& lang, const Word& q) {
    const int n = static_cast<int>(q.size());
    if (n == 0)
        throw std::invalid_argument("subshift_min_period: word must be nonempty");
    for (int ell = 1; ell < n; ++ell) {
        bool overlaps = true;
        for (int i = 0; i + ell < n; ++i)
            if (q[static_cast<std::size_t>(i)] != q[static_cast<std::size_t>(i + ell)]) {
                overlaps = false;
                break;
            }
        if (!overlaps)
            continue;
        Word merged = q.substr(0, static_cast<std::size_t>(ell)) + q;
        if (lang.contains(static_cast<int>(merged.size()), merged))
            return ell;
    }
    return n;
}

} // namespace symdyn
