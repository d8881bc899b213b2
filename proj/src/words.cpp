#include <symdyn/words.hpp>

namespace symdyn {

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty())
        throw std::invalid_argument("alphabet must have at least one symbol");
    rank_.fill(-1);
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(symbols_[i]);
        if (rank_[c] >= 0)
            throw std::invalid_argument("alphabet symbols must be distinct");
        rank_[c] = static_cast<int>(i);
    }
}

int Alphabet::rank(char c) const {
    int r = rank_[static_cast<unsigned char>(c)];
    if (r < 0)
        throw std::invalid_argument(std::string("letter '") + c + "' not in alphabet");
    return r;
}

bool Alphabet::word_less(const Word& a, const Word& b) const {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int ra = rank(a[i]);
        int rb = rank(b[i]);
        if (ra != rb)
            return ra < rb;
    }
    return a.size() < b.size();
}

void Alphabet::require_word(const Word& w) const {
    for (char c : w)
        (void)rank(c);
}

long occurrences(const Word& u, const Word& v) {
    if (u.empty())
        throw std::invalid_argument("occurrences: pattern must be nonempty");
    if (u.size() > v.size())
        return 0;
    long count = 0;
    for (std::size_t i = 0; i + u.size() <= v.size(); ++i)
        if (v.compare(i, u.size(), u) == 0)
            ++count;
    return count;
}

namespace {

bool self_overlaps_at(const Word& w, std::size_t shift) {
    for (std::size_t i = 0; i + shift < w.size(); ++i)
        if (w[i] != w[i + shift])
            return false;
    return true;
}

} // namespace

PeriodData minimal_period(const Word& w) {
    if (w.empty())
        throw std::invalid_argument("minimal_period: word must be nonempty");
    const int n = static_cast<int>(w.size());
    PeriodData pd;
    pd.ell = n; // min(empty) = |w|
    pd.L = 1;
    for (int shift = 1; shift < n; ++shift) {
        if (self_overlaps_at(w, static_cast<std::size_t>(shift))) {
            if (pd.ell == n)
                pd.ell = shift;
            ++pd.L;
        }
    }
    pd.v = w.substr(0, static_cast<std::size_t>(pd.ell));
    pd.K = n / pd.ell;
    pd.v_hat = w.substr(static_cast<std::size_t>(pd.K * pd.ell));
    return pd;
}

Rational periodization_measure(const Word& w, const Word& u) {
    if (w.empty())
        throw std::invalid_argument("periodization_measure: word must be nonempty");
    if (u.empty())
        throw std::invalid_argument("periodization_measure: cylinder word must be nonempty");
    Word ext = w;
    while (ext.size() < w.size() + u.size() - 1)
        ext += w;
    ext.resize(w.size() + u.size() - 1);
    long hits = 0;
    for (std::size_t k = 0; k < w.size(); ++k)
        if (ext.compare(k, u.size(), u) == 0)
            ++hits;
    return Rational(BigInt(hits), BigInt(static_cast<long>(w.size())));
}

} // namespace symdyn
