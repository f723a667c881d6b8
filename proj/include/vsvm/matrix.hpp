#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace vsvm {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    // Exact comparison |M[i][j] - M[j][i]| == 0.
    bool is_symmetric() const noexcept;

    // Copies the upper triangle onto the lower one.
    void mirror_upper() noexcept;

    Matrix transposed() const;

    double max_abs() const noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, std::span<const double> x);
// a^T x
Vector multiply_transposed(const Matrix& a, std::span<const double> x);
Matrix add(const Matrix& a, const Matrix& b, double scale_b = 1.0);

// K V K for symmetric K; the upper triangle is computed and mirrored.
Matrix sandwich(const Matrix& k, const Matrix& v);

// A^T diag(w) A, symmetric by construction.
Matrix weighted_gram(const Matrix& a, std::span<const double> weights);

double max_abs(std::span<const double> v) noexcept;
double sum(std::span<const double> v) noexcept;

}  // namespace vsvm
