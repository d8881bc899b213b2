#include <symdyn/linalg.hpp>

#include <boost/integer/common_factor_rt.hpp>

namespace symdyn {

void QMatrix::append_row(const std::vector<Rational>& row) {
    if (rows_ == 0 && cols_ == 0)
        cols_ = row.size();
    if (row.size() != cols_)
        throw std::invalid_argument("append_row: column count mismatch");
    a_.insert(a_.end(), row.begin(), row.end());
    ++rows_;
}

std::size_t bareiss_rank(const QMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    if (R == 0 || C == 0)
        return 0;
    std::vector<std::vector<BigInt>> w(R, std::vector<BigInt>(C));
    for (std::size_t i = 0; i < R; ++i) {
        BigInt scale = 1;
        for (std::size_t j = 0; j < C; ++j)
            scale = boost::integer::lcm(scale, m.at(i, j).denominator());
        for (std::size_t j = 0; j < C; ++j)
            w[i][j] = m.at(i, j).numerator() * (scale / m.at(i, j).denominator());
    }

    BigInt prev = 1;
    std::size_t rank = 0;
    std::size_t r = 0;
    std::vector<std::size_t> col(C);
    for (std::size_t j = 0; j < C; ++j)
        col[j] = j;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        // pivot search over the untouched block
        std::size_t pi = R, pj = C;
        for (std::size_t i = r; i < R && pi == R; ++i)
            for (std::size_t j = c; j < C; ++j)
                if (w[i][col[j]] != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == R)
            break;
        std::swap(w[r], w[pi]);
        std::swap(col[c], col[pj]);
        const BigInt pivot = w[r][col[c]];
        for (std::size_t i = r + 1; i < R; ++i) {
            for (std::size_t j = c + 1; j < C; ++j)
                w[i][col[j]] = (w[i][col[j]] * pivot - w[i][col[c]] * w[r][col[j]]) / prev;
            w[i][col[c]] = 0;
        }
        prev = pivot;
        ++rank;
        ++r;
    }
    return rank;
}

namespace {

struct Rref {
    QMatrix m;
    std::vector<std::size_t> pivot_col; // per pivot row
};

Rref rref(QMatrix m) {
    Rref out;
    const std::size_t R = m.rows(), C = m.cols();
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = R;
        for (std::size_t i = r; i < R; ++i)
            if (m.at(i, c) != Rational(0)) {
                p = i;
                break;
            }
        if (p == R)
            continue;
        if (p != r)
            for (std::size_t j = 0; j < C; ++j)
                std::swap(m.at(p, j), m.at(r, j));
        const Rational inv = m.at(r, c);
        for (std::size_t j = c; j < C; ++j)
            m.at(r, j) /= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || m.at(i, c) == Rational(0))
                continue;
            const Rational f = m.at(i, c);
            for (std::size_t j = c; j < C; ++j)
                m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    out.m = std::move(m);
    out.pivot_col = std::move(pivots);
    return out;
}

} // namespace

std::vector<std::vector<Rational>> kernel_basis(const QMatrix& m) {
    const std::size_t C = m.cols();
    Rref rr = rref(m);
    std::vector<char> is_pivot(C, 0);
    for (std::size_t c : rr.pivot_col)
        is_pivot[c] = 1;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < C; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Rational> v(C, Rational(0));
        v[free] = Rational(1);
        for (std::size_t pr = 0; pr < rr.pivot_col.size(); ++pr)
            v[rr.pivot_col[pr]] = -rr.m.at(pr, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

CombinationResult express_in_rows(const QMatrix& m, const std::vector<Rational>& target) {
    if (target.size() != m.cols())
        throw std::invalid_argument("express_in_rows: target length mismatch");
    CombinationResult res;
    const std::size_t R = m.rows(), C = m.cols();

    // solve m^T c = target, augmented column elimination
    QMatrix aug(C, R + 1);
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j)
            aug.at(j, i) = m.at(i, j);
    for (std::size_t j = 0; j < C; ++j)
        aug.at(j, R) = target[j];

    Rref rr = rref(std::move(aug));
    bool solvable = true;
    for (std::size_t c : rr.pivot_col)
        if (c == R) {
            solvable = false;
            break;
        }
    if (solvable) {
        res.consistent = true;
        res.coefficients.assign(R, Rational(0));
        for (std::size_t pr = 0; pr < rr.pivot_col.size(); ++pr)
            res.coefficients[rr.pivot_col[pr]] = rr.m.at(pr, R);
        return res;
    }

    // separating functional: a kernel vector of m not orthogonal to target,
    // normalized so that <target, y> = 1
    res.consistent = false;
    for (auto& v : kernel_basis(m)) {
        Rational dot(0);
        for (std::size_t j = 0; j < C; ++j)
            dot += target[j] * v[j];
        if (dot != Rational(0)) {
            for (auto& x : v)
                x /= dot;
            res.separating = std::move(v);
            return res;
        }
    }
    throw std::logic_error("express_in_rows: inconsistent system without separating vector");
}

} // namespace symdyn
