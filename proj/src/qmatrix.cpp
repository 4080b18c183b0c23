#include "nilgeo/qmatrix.hpp"

#include "nilgeo/error.hpp"

namespace nilgeo {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVec>& rows, std::size_t cols) {
    QMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVec>& cols, std::size_t rows) {
    QMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
    return m;
}

QVec QMatrix::row(std::size_t r) const {
    return QVec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

QVec QMatrix::column(std::size_t c) const {
    QVec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

void QMatrix::set_column(std::size_t c, const QVec& v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
}

bool QMatrix::is_zero() const {
    for (const auto& x : data_) {
        if (x != 0) return false;
    }
    return true;
}

bool QMatrix::is_diagonal() const {
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (r != c && (*this)(r, c) != 0) return false;
        }
    }
    return true;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    QMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (b(k, j) != 0) out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

QVec operator*(const QMatrix& a, const QVec& v) {
    QVec out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        Rational acc = 0;
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a(i, k) != 0 && v[k] != 0) acc += a(i, k) * v[k];
        }
        out[i] = acc;
    }
    return out;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    QMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    QMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
}

QMatrix operator*(const Rational& s, const QMatrix& a) {
    QMatrix out = a;
    for (auto& x : out.data_) x *= s;
    return out;
}

QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

RowEchelon rref(QMatrix m) {
    RowEchelon out;
    std::size_t lead_row = 0;
    for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
        std::size_t pivot = lead_row;
        while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != lead_row) {
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pivot, k), m(lead_row, k));
        }
        Rational inv = 1 / m(lead_row, c);
        for (std::size_t k = c; k < m.cols(); ++k) m(lead_row, k) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead_row || m(r, c) == 0) continue;
            Rational f = m(r, c);
            for (std::size_t k = c; k < m.cols(); ++k) {
                if (m(lead_row, k) != 0) m(r, k) -= f * m(lead_row, k);
            }
        }
        out.pivots.push_back(c);
        ++lead_row;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

std::vector<QVec> nullspace(const QMatrix& m) {
    auto ech = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : ech.pivots) is_pivot[p] = true;
    std::vector<QVec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        QVec v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

QMatrix inverse(const QMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::PreconditionViolated, "inverse of a non-square matrix");
    const std::size_t n = m.rows();
    QMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    auto ech = rref(std::move(aug));
    if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1) {
        throw Error(ErrorCode::PreconditionViolated, "singular matrix");
    }
    QMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = ech.reduced(r, n + c);
    }
    return inv;
}

bool solve(const QMatrix& m, const QVec& b, QVec& x) {
    QMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    auto ech = rref(std::move(aug));
    if (!ech.pivots.empty() && ech.pivots.back() == m.cols()) return false;
    x.assign(m.cols(), Rational(0));
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) x[ech.pivots[r]] = ech.reduced(r, m.cols());
    return true;
}

void EchelonBasis::reduce(QVec& v, QVec& combo) const {
    for (std::size_t k = 0; k < echelon_.size(); ++k) {
        const Rational f = v[pivot_[k]];
        if (f == 0) continue;
        const QVec& row = echelon_[k];
        for (std::size_t i = 0; i < ambient_; ++i) {
            if (row[i] != 0) v[i] -= f * row[i];
        }
        const QVec& c = combos_[k];
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (c[j] != 0) combo[j] -= f * c[j];
        }
    }
}

bool EchelonBasis::insert(const QVec& v) {
    QVec w = v;
    QVec combo(vectors_.size() + 1);
    combo[vectors_.size()] = 1;
    reduce(w, combo);
    std::size_t p = 0;
    while (p < ambient_ && w[p] == 0) ++p;
    if (p == ambient_) return false;
    Rational inv = 1 / w[p];
    for (auto& x : w) x *= inv;
    for (auto& x : combo) x *= inv;
    // keep earlier rows reduced in the new pivot column
    for (std::size_t k = 0; k < echelon_.size(); ++k) {
        const Rational f = echelon_[k][p];
        if (f == 0) continue;
        for (std::size_t i = 0; i < ambient_; ++i) {
            if (w[i] != 0) echelon_[k][i] -= f * w[i];
        }
        combos_[k].resize(combo.size());
        for (std::size_t j = 0; j < combo.size(); ++j) {
            if (combo[j] != 0) combos_[k][j] -= f * combo[j];
        }
    }
    for (auto& c : combos_) c.resize(combo.size());
    vectors_.push_back(v);
    echelon_.push_back(std::move(w));
    combos_.push_back(std::move(combo));
    pivot_.push_back(p);
    return true;
}

bool EchelonBasis::coordinates(const QVec& v, QVec& coords) const {
    QVec w = v;
    QVec combo(vectors_.size());
    reduce(w, combo);
    if (!nilgeo::is_zero(w)) return false;
    // v - sum combo... reduce tracked -f * combos; v = -combo as a combination
    coords.resize(vectors_.size());
    for (std::size_t j = 0; j < vectors_.size(); ++j) coords[j] = -combo[j];
    return true;
}

}  // namespace nilgeo
