#include "vsvm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vsvm/error.hpp"
#include "vsvm/simd.hpp"

namespace vsvm {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ContractViolation("Matrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

bool Matrix::is_symmetric() const noexcept {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

void Matrix::mirror_upper() noexcept {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j) (*this)(j, i) = (*this)(i, j);
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::max_abs() const noexcept { return vsvm::max_abs(data_); }

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw ContractViolation("multiply: inner dimensions differ (" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + ")");
    const Matrix bt = b.transposed();
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = simd::dot(a.row(i), bt.row(j));
    return c;
}

Vector multiply(const Matrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) throw ContractViolation("multiply: matrix/vector dimension mismatch");
    Vector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] = simd::dot(a.row(i), x);
    return y;
}

Vector multiply_transposed(const Matrix& a, std::span<const double> x) {
    if (a.rows() != x.size()) throw ContractViolation("multiply_transposed: dimension mismatch");
    Vector y(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) simd::axpy(x[i], a.row(i), y);
    return y;
}

Matrix add(const Matrix& a, const Matrix& b, double scale_b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ContractViolation("add: shape mismatch");
    Matrix c = a;
    simd::axpy(scale_b, b.data(), c.data());
    return c;
}

Matrix sandwich(const Matrix& k, const Matrix& v) {
    if (!k.is_symmetric()) throw ContractViolation("sandwich: K must be symmetric");
    if (v.rows() != k.rows() || v.cols() != k.cols()) throw ContractViolation("sandwich: shape mismatch");
    const Matrix kv = multiply(k, v);
    const std::size_t n = k.rows();
    Matrix out(n, n);
    // (K V K)_ij = row_i(KV) . col_j(K) = row_i(KV) . row_j(K)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) out(i, j) = simd::dot(kv.row(i), k.row(j));
    out.mirror_upper();
    return out;
}

Matrix weighted_gram(const Matrix& a, std::span<const double> weights) {
    if (a.rows() != weights.size()) throw ContractViolation("weighted_gram: weight length mismatch");
    const Matrix at = a.transposed();
    const std::size_t n = a.cols();
    Matrix out(n, n);
    Vector scaled(a.rows());
    for (std::size_t i = 0; i < n; ++i) {
        simd::multiply(at.row(i), weights, scaled);
        for (std::size_t j = i; j < n; ++j) out(i, j) = simd::dot(scaled, at.row(j));
    }
    out.mirror_upper();
    return out;
}

double max_abs(std::span<const double> v) noexcept {
    double m = 0.0;
    for (double x : v) {
        if (std::isnan(x)) return x;
        m = std::max(m, std::abs(x));
    }
    return m;
}

double sum(std::span<const double> v) noexcept {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

}  // namespace vsvm
