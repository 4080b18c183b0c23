#pragma once

#include "nilgeo/rational.hpp"

#include <cstddef>
#include <vector>

namespace nilgeo {

// Dense row-major matrix over the rationals.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static QMatrix identity(std::size_t n);
    static QMatrix from_rows(const std::vector<QVec>& rows, std::size_t cols);
    static QMatrix from_columns(const std::vector<QVec>& cols, std::size_t rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    QVec row(std::size_t r) const;
    QVec column(std::size_t c) const;
    void set_column(std::size_t c, const QVec& v);

    QMatrix transpose() const;
    bool is_zero() const;
    bool is_diagonal() const;

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QVec operator*(const QMatrix& a, const QVec& v);
    friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator*(const Rational& s, const QMatrix& a);
    friend bool operator==(const QMatrix& a, const QMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

QMatrix commutator(const QMatrix& a, const QMatrix& b);

struct RowEchelon {
    QMatrix reduced;                  // reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

RowEchelon rref(QMatrix m);
std::size_t rank(const QMatrix& m);
// Basis of {x : m x = 0}.
std::vector<QVec> nullspace(const QMatrix& m);
// Throws PreconditionViolated when singular.
QMatrix inverse(const QMatrix& m);
// Some solution of m x = b, or nothing when inconsistent.
bool solve(const QMatrix& m, const QVec& b, QVec& x);

// Incremental independence test with coordinates of accepted vectors.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t ambient) : ambient_(ambient) {}
    // Adds v if it is independent of the accepted vectors; returns whether it was added.
    bool insert(const QVec& v);
    // Coordinates of v in the accepted vectors; false if v is outside their span.
    bool coordinates(const QVec& v, QVec& coords) const;
    std::size_t size() const noexcept { return vectors_.size(); }
    const std::vector<QVec>& vectors() const noexcept { return vectors_; }

private:
    // Reduces v against the echelon rows, tracking the combination of originals.
    void reduce(QVec& v, QVec& combo) const;

    std::size_t ambient_;
    std::vector<QVec> vectors_;
    std::vector<QVec> echelon_;      // echelonized rows
    std::vector<QVec> combos_;       // echelon_[k] = sum combos_[k][j] * vectors_[j]
    std::vector<std::size_t> pivot_;
};

}  // namespace nilgeo
