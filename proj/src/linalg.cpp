#include "gptlab/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace gptlab {

QVec qvec_zero(Eigen::Index n) {
    QVec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = 0;
    return v;
}

QVec qvec_from(std::initializer_list<long> entries) {
    QVec v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (long e : entries) v(i++) = e;
    return v;
}

QVec qvec_from_rats(const std::vector<Rat>& entries) {
    QVec v(static_cast<Eigen::Index>(entries.size()));
    for (size_t i = 0; i < entries.size(); ++i) v(static_cast<Eigen::Index>(i)) = entries[i];
    return v;
}

namespace {

// Clears denominators row by row, so Bareiss runs on integer entries.
void clear_row_denominators(QMat& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Int scale = 1;
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            scale = boost::multiprecision::lcm(scale, rat_den(m(i, j)));
        if (scale != 1)
            for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) *= Rat(scale);
    }
}

}  // namespace

int exact_rank(QMat m) {
    const Eigen::Index rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;
    clear_row_denominators(m);
    Rat prev_pivot(1);
    Eigen::Index rank = 0;
    for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index i = rank; i < rows; ++i)
            if (m(i, col) != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != rank) m.row(pivot).swap(m.row(rank));
        for (Eigen::Index i = rank + 1; i < rows; ++i) {
            for (Eigen::Index j = col + 1; j < cols; ++j)
                m(i, j) = (m(i, j) * m(rank, col) - m(i, col) * m(rank, j)) / prev_pivot;
            m(i, col) = 0;
        }
        prev_pivot = m(rank, col);
        ++rank;
    }
    return static_cast<int>(rank);
}

namespace {

// Reduced row echelon form over Q. Returns pivot column indices.
std::vector<Eigen::Index> rref(QMat& m) {
    std::vector<Eigen::Index> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index p = -1;
        for (Eigen::Index i = row; i < m.rows(); ++i)
            if (m(i, col) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != row) m.row(p).swap(m.row(row));
        Rat inv = Rat(1) / m(row, col);
        for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Rat f = m(i, col);
            for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

QMat kernel_basis(const QMat& m) {
    QMat r = m;
    std::vector<Eigen::Index> pivots = rref(r);
    const Eigen::Index n = m.cols();
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (Eigen::Index p : pivots) is_pivot[static_cast<size_t>(p)] = true;
    const Eigen::Index nullity = n - static_cast<Eigen::Index>(pivots.size());
    QMat basis(n, nullity);
    basis.setConstant(Rat(0));
    Eigen::Index k = 0;
    for (Eigen::Index free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[static_cast<size_t>(free_col)]) continue;
        basis(free_col, k) = 1;
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            basis(pivots[pi], k) = -r(static_cast<Eigen::Index>(pi), free_col);
        ++k;
    }
    return basis;
}

std::optional<QVec> solve_linear(QMat m, QVec rhs) {
    const Eigen::Index n = m.cols();
    QMat aug(m.rows(), n + 1);
    aug.block(0, 0, m.rows(), n) = m;
    aug.col(n) = rhs;
    std::vector<Eigen::Index> pivots = rref(aug);
    // Inconsistent iff a pivot lands in the rhs column.
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;
    QVec x = qvec_zero(n);
    for (size_t pi = 0; pi < pivots.size(); ++pi)
        x(pivots[pi]) = aug(static_cast<Eigen::Index>(pi), n);
    return x;
}

std::vector<int> independent_columns(const QMat& m) {
    std::vector<int> chosen;
    QMat acc(m.rows(), 0);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        QMat trial(m.rows(), acc.cols() + 1);
        if (acc.cols() > 0) trial.block(0, 0, m.rows(), acc.cols()) = acc;
        trial.col(acc.cols()) = m.col(j);
        if (exact_rank(trial) == trial.cols()) {
            acc = trial;
            chosen.push_back(static_cast<int>(j));
        }
    }
    return chosen;
}

QMat left_pseudo_inverse(const QMat& u) {
    QMat gram = u.transpose() * u;
    QMat inv(gram.rows(), gram.cols());
    for (Eigen::Index j = 0; j < gram.cols(); ++j) {
        QVec e = qvec_zero(gram.rows());
        e(j) = 1;
        auto col = solve_linear(gram, e);
        if (!col) throw std::invalid_argument("left_pseudo_inverse: matrix lacks full column rank");
        inv.col(j) = *col;
    }
    return inv * u.transpose();
}

QVec primitive(const QVec& v) {
    Int den_lcm = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        den_lcm = boost::multiprecision::lcm(den_lcm, rat_den(v(i)));
    Int num_gcd = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        num_gcd = boost::multiprecision::gcd(num_gcd, Int(rat_num(v(i)) * (den_lcm / rat_den(v(i)))));
    if (num_gcd == 0) return v;  // zero vector
    Rat scale = Rat(den_lcm) / Rat(num_gcd);
    QVec out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i) * scale;
    return out;
}

QVec primitive_signed(const QVec& v) {
    QVec p = primitive(v);
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p(i) == 0) continue;
        if (p(i) < 0)
            for (Eigen::Index j = i; j < p.size(); ++j) p(j) = -p(j);
        break;
    }
    return p;
}

bool lex_less(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) < b(i)) return true;
        if (a(i) > b(i)) return false;
    }
    return false;
}

bool is_affinely_independent(const std::vector<QVec>& points) {
    if (points.empty()) throw std::invalid_argument("is_affinely_independent: empty point list");
    if (points.size() == 1) return true;
    QMat diffs(points[0].size(), static_cast<Eigen::Index>(points.size() - 1));
    for (size_t i = 1; i < points.size(); ++i) diffs.col(static_cast<Eigen::Index>(i - 1)) = points[i] - points[0];
    return exact_rank(diffs) == static_cast<int>(points.size()) - 1;
}

}  // namespace gptlab
