#include "vsvm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "vsvm/error.hpp"

namespace vsvm {
namespace {

constexpr std::size_t kMaxSweeps = 80;

void require_symmetric(const Matrix& m, const char* what) {
    if (!m.square())
        throw ContractViolation(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", expected square");
    if (!m.is_symmetric()) throw ContractViolation(std::string(what) + ": matrix is not symmetric");
}

// Rotate (p, q) to zero a(p, q); updates the full symmetric matrix and the
// accumulated eigenvector columns.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
    const std::size_t n = a.rows();
    const double apq = a(p, q);
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const double akp = a(k, p);
        const double akq = a(k, q);
        const double np = c * akp - s * akq;
        const double nq = s * akp + c * akq;
        a(k, p) = np;
        a(p, k) = np;
        a(k, q) = nq;
        a(q, k) = nq;
    }
    a(p, p) -= t * apq;
    a(q, q) += t * apq;
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        const double vkp = v(k, p);
        const double vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

}  // namespace

EigenDecomposition sym_eigen(const Matrix& m) {
    require_symmetric(m, "sym_eigen");
    const std::size_t n = m.rows();
    if (n == 0) throw ContractViolation("sym_eigen: empty matrix");

    Matrix a = m;
    Matrix v = Matrix::identity(n);
    constexpr double eps = std::numeric_limits<double>::epsilon();

    // Rotations stop once every off-diagonal entry is negligible relative to
    // its two diagonal entries; this keeps small eigenvalues accurate for
    // graded positive definite matrices.
    for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double scale = std::sqrt(std::abs(a(p, p)) * std::abs(a(q, q)));
                if (std::abs(apq) <= eps * scale) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                rotate(a, v, p, q);
                rotated = true;
            }
        }
        if (!rotated) break;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition out{Vector(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.values[k] = a(src, src);
        // Sign convention: the largest-magnitude component of each vector is positive.
        std::size_t big = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(v(i, src)) > std::abs(v(big, src))) big = i;
        const double sign = v(big, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = sign * v(i, src);
    }
    return out;
}

double rank_cutoff(std::span<const double> eigenvalues, std::optional<double> rank_tolerance) {
    const double tol = rank_tolerance.value_or(1e-10 * static_cast<double>(eigenvalues.size()));
    return tol * std::max(max_abs(eigenvalues), 1.0);
}

SpectralReport spectral_report(const EigenDecomposition& eig, SpectralTolerances tol) {
    SpectralReport r;
    r.eigenvalues = eig.values;
    const std::size_t n = eig.values.size();
    const double cutoff = rank_cutoff(eig.values, tol.rank);

    double largest = 0.0;
    double smallest_counted = std::numeric_limits<double>::infinity();
    for (double lambda : eig.values) {
        const double mag = std::abs(lambda);
        largest = std::max(largest, mag);
        if (mag > cutoff) {
            ++r.rank;
            smallest_counted = std::min(smallest_counted, mag);
        }
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    r.restricted_condition = r.rank > 0 ? largest / smallest_counted : inf;
    r.condition_number = r.rank == n ? r.restricted_condition : inf;
    r.min_eigenvalue = n > 0 ? eig.values.back() : 0.0;
    const double lambda1 = n > 0 ? eig.values.front() : 0.0;
    const double psd_tol = tol.psd.value_or(1e-9 * std::max(lambda1, 1.0));
    r.psd = r.min_eigenvalue >= -psd_tol;
    return r;
}

SpectralReport spectral_report(const Matrix& m, SpectralTolerances tol) {
    return spectral_report(sym_eigen(m), tol);
}

LuFactorization::LuFactorization(const Matrix& m, std::optional<double> pivot_tolerance)
    : lu_(m), perm_(m.rows()) {
    if (!m.square()) throw ContractViolation("LuFactorization: matrix must be square");
    const std::size_t n = m.rows();
    const double threshold = pivot_tolerance.value_or(1e-12 * m.max_abs());
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double cand = std::abs(lu_(i, k));
            if (cand > best) {
                best = cand;
                piv = i;
            }
        }
        if (!(best >= threshold) || best == 0.0) throw SingularMatrix(k, best, threshold);
        if (piv != k) {
            std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(piv).begin());
            std::swap(perm_[k], perm_[piv]);
        }
        const double pivot = lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = lu_(i, k) / pivot;
            lu_(i, k) = factor;
            if (factor == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
        }
    }
}

Vector LuFactorization::solve(std::span<const double> rhs) const {
    const std::size_t n = lu_.rows();
    if (rhs.size() != n) throw ContractViolation("LuFactorization::solve: rhs length mismatch");
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = rhs[perm_[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
        x[i] = s / lu_(i, i);
    }
    return x;
}

Vector solve_linear(const Matrix& m, std::span<const double> rhs, std::optional<double> pivot_tolerance) {
    return LuFactorization(m, pivot_tolerance).solve(rhs);
}

Vector least_squares_range(const EigenDecomposition& eig, std::span<const double> target, double tolerance) {
    const std::size_t n = eig.values.size();
    if (target.size() != n) throw ContractViolation("least_squares_range: target length mismatch");
    const double cutoff = tolerance * std::max(max_abs(eig.values), 1.0);
    Vector x(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = eig.values[k];
        if (!(std::abs(lambda) > cutoff)) continue;
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += eig.vectors(i, k) * target[i];
        const double coeff = proj / lambda;
        for (std::size_t i = 0; i < n; ++i) x[i] += coeff * eig.vectors(i, k);
    }
    return x;
}

Vector least_squares_range(const Matrix& m, std::span<const double> target, double tolerance) {
    return least_squares_range(sym_eigen(m), target, tolerance);
}

}  // namespace vsvm
