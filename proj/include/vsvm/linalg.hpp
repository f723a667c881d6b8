#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "vsvm/matrix.hpp"

namespace vsvm {

struct EigenDecomposition {
    Vector values;   // descending
    Matrix vectors;  // column k pairs with values[k]
};

// Cyclic Jacobi rotations. Throws ContractViolation for non-square or
// asymmetric input.
EigenDecomposition sym_eigen(const Matrix& m);

struct SpectralReport {
    Vector eigenvalues;  // descending
    std::size_t rank = 0;
    // +inf unless full rank, in which case it equals restricted_condition
    double condition_number = 0.0;
    // max|lambda| / smallest |lambda| counted in the rank; +inf when rank == 0
    double restricted_condition = 0.0;
    double min_eigenvalue = 0.0;
    bool psd = true;
    bool full_rank() const noexcept { return rank == eigenvalues.size(); }
};

struct SpectralTolerances {
    // relative; nullopt means 1e-10 * dimension
    std::optional<double> rank;
    // absolute floor on min eigenvalue; nullopt means 1e-9 * max(lambda_1, 1)
    std::optional<double> psd;
};

SpectralReport spectral_report(const Matrix& m, SpectralTolerances tol = {});
SpectralReport spectral_report(const EigenDecomposition& eig, SpectralTolerances tol = {});

// Absolute cutoff below which |lambda| is treated as zero when counting rank.
double rank_cutoff(std::span<const double> eigenvalues, std::optional<double> rank_tolerance = {});

// LU with partial pivoting. Factorization fails with SingularMatrix when a
// pivot magnitude drops below pivot_tolerance (default 1e-12 * ||M||_max).
class LuFactorization {
public:
    explicit LuFactorization(const Matrix& m, std::optional<double> pivot_tolerance = {});

    Vector solve(std::span<const double> rhs) const;
    std::size_t size() const noexcept { return lu_.rows(); }

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
};

Vector solve_linear(const Matrix& m, std::span<const double> rhs,
                    std::optional<double> pivot_tolerance = {});

// Minimum-norm least squares solution via the eigendecomposition
// pseudo-inverse, dropping eigenvalues with |lambda| <= tolerance * max(|lambda_1|, 1).
Vector least_squares_range(const Matrix& m, std::span<const double> target, double tolerance);
Vector least_squares_range(const EigenDecomposition& eig, std::span<const double> target,
                           double tolerance);

}  // namespace vsvm
