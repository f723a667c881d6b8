#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "vsvm/error.hpp"
#include "vsvm/linalg.hpp"

using namespace vsvm;

namespace {

Matrix reconstruct(const EigenDecomposition& e) {
    const std::size_t n = e.values.size();
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += e.vectors(i, k) * e.values[k] * e.vectors(j, k);
            out(i, j) = s;
        }
    return out;
}

double orthonormality_error(const Matrix& q) {
    const Matrix qtq = multiply(q.transposed(), q);
    return add(qtq, Matrix::identity(q.rows()), -1.0).max_abs();
}

}  // namespace

TEST_CASE("sym_eigen on small fixed matrices") {
    SUBCASE("identity") {
        const auto e = sym_eigen(Matrix::identity(3));
        CHECK(e.values == Vector{1, 1, 1});
        CHECK(orthonormality_error(e.vectors) <= 1e-15);
    }
    SUBCASE("diagonal") {
        const Vector d{1, 4};
        const auto e = sym_eigen(Matrix::diagonal(d));
        CHECK(e.values == Vector{4, 1});
        CHECK(std::abs(e.vectors(1, 0)) == 1.0);
        CHECK(std::abs(e.vectors(0, 1)) == 1.0);
    }
    SUBCASE("ink-spline gram of the xor points") {
        const auto e = sym_eigen(oracle::k_spline());
        REQUIRE(e.values.size() == 4);
        CHECK(e.values[0] == doctest::Approx(3.0).epsilon(1e-14));
        CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(e.values[2]) <= 1e-14);
        CHECK(std::abs(e.values[3]) <= 1e-14);
        // leading eigenvector is (0, 2, 1, 1) / sqrt(6)
        const double s = std::sqrt(6.0);
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(std::abs(e.vectors(i, 0)) == doctest::Approx(Vector{0, 2, 1, 1}[i] / s).epsilon(1e-12));
    }
}

TEST_CASE("sym_eigen rejects bad input") {
    CHECK_THROWS_AS(sym_eigen(Matrix(2, 3)), ContractViolation);
    CHECK_THROWS_AS(sym_eigen(Matrix{{1, 2}, {2.0000001, 1}}), ContractViolation);
    CHECK_THROWS_AS(sym_eigen(Matrix()), ContractViolation);
}

TEST_CASE("property: eigen reconstruction and orthonormality") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 12);
        const double scale = std::pow(10.0, (trial % 7) - 3);
        const Matrix m = oracle::random_symmetric(rng, n, scale);
        const auto e = sym_eigen(m);
        CAPTURE(n);
        CHECK(add(reconstruct(e), m, -1.0).max_abs() <= 1e-8 * m.max_abs());
        CHECK(orthonormality_error(e.vectors) <= 1e-10);
        for (std::size_t k = 1; k < n; ++k) CHECK(e.values[k - 1] >= e.values[k]);
    }
}

TEST_CASE("property: spectral rank matches exact integer rank") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 9);
        const std::size_t k = static_cast<std::size_t>(trial % 5);
        // B B^T with integer B: symmetric, integer, rank <= k
        std::vector<std::vector<long long>> b(n, std::vector<long long>(k));
        for (auto& row : b)
            for (auto& v : row) v = d(rng);
        std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
        Matrix real(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                long long s = 0;
                for (std::size_t c = 0; c < k; ++c) s += b[i][c] * b[j][c];
                m[i][j] = s;
                real(i, j) = static_cast<double>(s);
            }
        CAPTURE(n);
        CAPTURE(k);
        CHECK(spectral_report(real).rank == oracle::integer_rank(m));
    }
    CHECK(oracle::integer_rank({{0, 0, 0, 0}, {0, 2, 1, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}}) == 2);
}

TEST_CASE("spectral_report examples") {
    SUBCASE("identity") {
        const auto r = spectral_report(Matrix::identity(5));
        CHECK(r.rank == 5);
        CHECK(r.condition_number == 1.0);
        CHECK(r.psd);
        CHECK(r.full_rank());
    }
    SUBCASE("ink-spline gram") {
        const auto r = spectral_report(oracle::k_spline());
        CHECK(r.rank == 2);
        CHECK(r.psd);
        CHECK(std::isinf(r.condition_number));
        CHECK(r.restricted_condition == doctest::Approx(3.0).epsilon(1e-12));
    }
    SUBCASE("xor rbf gram") {
        const double a = std::exp(-0.5), b = std::exp(-1.0);
        const Matrix k{{1, b, a, a}, {b, 1, a, a}, {a, a, 1, b}, {a, a, b, 1}};
        const auto r = spectral_report(k);
        CHECK(r.rank == 4);
        CHECK(r.psd);
        CHECK(r.min_eigenvalue == doctest::Approx(0.15481812).epsilon(1e-7));
        CHECK(r.eigenvalues[0] == doctest::Approx(2.58094076).epsilon(1e-7));
        CHECK(r.condition_number == doctest::Approx(2.58094076 / 0.15481812).epsilon(1e-6));
    }
    SUBCASE("indefinite") {
        const auto r = spectral_report(Matrix{{0, 1}, {1, 0}});
        CHECK_FALSE(r.psd);
        CHECK(r.min_eigenvalue == doctest::Approx(-1.0));
        CHECK(r.rank == 2);
    }
    SUBCASE("zero matrix") {
        const auto r = spectral_report(Matrix(3, 3));
        CHECK(r.rank == 0);
        CHECK(std::isinf(r.condition_number));
        CHECK(std::isinf(r.restricted_condition));
    }
}

TEST_CASE("solve_linear examples") {
    const Vector b{1, -2, 3};
    CHECK(solve_linear(Matrix::identity(3), b) == b);
    const Vector x = solve_linear(Matrix{{2, 0}, {0, 4}}, Vector{2, 8});
    CHECK(x == Vector{1, 2});
    CHECK_THROWS_AS(solve_linear(oracle::k_spline(), Vector{0, 1, 1, 1}), SingularMatrix);
    CHECK_THROWS_AS(solve_linear(Matrix(2, 3), Vector{1, 1}), ContractViolation);
    try {
        solve_linear(oracle::k_spline(), Vector{0, 1, 1, 1});
    } catch (const SingularMatrix& e) {
        CHECK(e.pivot_value() <= e.threshold());
    }
}

TEST_CASE("property: solve_linear agrees with the eigen-route inverse") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 10);
        Matrix m = oracle::random_psd(rng, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) += 0.5;
        Vector rhs(n);
        for (double& v : rhs) v = u(rng);
        const Vector x = solve_linear(m, rhs);
        const auto e = sym_eigen(m);
        Vector ref(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            double c = 0.0;
            for (std::size_t i = 0; i < n; ++i) c += e.vectors(i, k) * rhs[i];
            c /= e.values[k];
            for (std::size_t i = 0; i < n; ++i) ref[i] += c * e.vectors(i, k);
        }
        const Vector r = multiply(m, x);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(x[i] - ref[i]) <= 1e-8 * (1.0 + max_abs(ref)));
            CHECK(std::abs(r[i] - rhs[i]) <= 1e-8 * (1.0 + max_abs(rhs)));
        }
    }
}

TEST_CASE("least_squares_range examples") {
    const Vector t{0.3, -1, 2};
    const Vector x = least_squares_range(Matrix::identity(3), t, 1e-10);
    for (std::size_t i = 0; i < 3; ++i) CHECK(x[i] == doctest::Approx(t[i]).epsilon(1e-15));

    const Vector y = least_squares_range(Matrix{{2, 0}, {0, 0}}, Vector{4, 0}, 1e-10);
    CHECK(y[0] == doctest::Approx(2.0));
    CHECK(y[1] == 0.0);

    const Matrix k = oracle::k_spline();
    const Vector target{0, 1, 0.5, 0.5};
    const Vector a = least_squares_range(k, target, 1e-10);
    const Vector ka = multiply(k, a);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(ka[i] - target[i]) <= 1e-8);
    // minimum norm: no component along the null space (e1 and (0,1,-1,-1))
    CHECK(std::abs(a[0]) <= 1e-12);
    CHECK(std::abs(a[1] - a[2] - a[3]) <= 1e-12);
}
