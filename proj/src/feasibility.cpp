#include "vsvm/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vsvm/error.hpp"
#include "vsvm/simd.hpp"

namespace vsvm {

std::string_view verdict_name(Verdict v) noexcept {
    return v == Verdict::feasible ? "Feasible" : "Infeasible";
}

ReducedSystem reduce_constraints(const GramMatrix& gram, double b_eq) {
    const auto& eig = gram.eigen();
    const std::size_t n = gram.size();
    const double cutoff = rank_cutoff(eig.values);
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < n; ++k)
        if (std::abs(eig.values[k]) > cutoff) keep.push_back(k);

    ReducedSystem red;
    red.b_eq = b_eq;
    red.basis = Matrix(n, keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c)
        for (std::size_t i = 0; i < n; ++i) red.basis(i, c) = eig.vectors(i, keep[c]);
    red.budget_row = multiply_transposed(red.basis, Vector(n, 1.0));
    return red;
}

namespace {

constexpr double kProximal = 1e-10;
constexpr double kVertexTolerance = 1e-9;
constexpr std::size_t kMaxVertexCandidates = 200000;

double binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return r;
}

// Box hinge violation of z = U w plus the budget violation.
double total_violation(const ReducedSystem& red, std::span<const double> w) {
    const Vector z = multiply(red.basis, w);
    double v = std::abs(sum(z) - red.b_eq);
    for (double zi : z) v += std::max(0.0, -zi) + std::max(0.0, zi - 1.0);
    return v;
}

// Max of direction * budget_row . w over the vertices of {0 <= U w <= 1};
// nullopt when enumeration is too large.
std::optional<double> vertex_maximum(const ReducedSystem& red, double direction) {
    const std::size_t r = red.rank();
    const std::size_t l = red.size();
    if (r == 0) return 0.0;
    if (r > 3 || binomial(2 * l, r) > static_cast<double>(kMaxVertexCandidates)) return std::nullopt;

    // Plane j < l: u_j . w = 0; plane l + j: u_j . w = 1.
    auto plane = [&](std::size_t idx, Vector& row) {
        const std::size_t j = idx % l;
        for (std::size_t c = 0; c < r; ++c) row[c] = red.basis(j, c);
        return idx < l ? 0.0 : 1.0;
    };

    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> pick(r);
    for (std::size_t c = 0; c < r; ++c) pick[c] = c;
    Matrix a(r, r);
    Vector rhs(r), row(r);
    while (true) {
        for (std::size_t c = 0; c < r; ++c) {
            rhs[c] = plane(pick[c], row);
            for (std::size_t k = 0; k < r; ++k) a(c, k) = row[k];
        }
        try {
            const Vector w = solve_linear(a, rhs, 1e-10);
            const Vector z = multiply(red.basis, w);
            const bool inside = std::all_of(z.begin(), z.end(), [](double zi) {
                return zi >= -kVertexTolerance && zi <= 1.0 + kVertexTolerance;
            });
            if (inside) best = std::max(best, direction * simd::dot(red.budget_row, w));
        } catch (const SingularMatrix&) {
        }
        // next r-combination of 2l planes
        std::size_t c = r;
        while (c > 0 && pick[c - 1] == 2 * l - r + (c - 1)) --c;
        if (c == 0) break;
        ++pick[c - 1];
        for (std::size_t k = c; k < r; ++k) pick[k] = pick[k - 1] + 1;
    }
    return best;
}

InfeasibilityCertificate certificate_from_duals(const ReducedSystem& red, const Duals& duals) {
    const std::size_t l = red.size();
    InfeasibilityCertificate cert;
    const double nu = duals.eq;
    cert.direction = nu > 0.0 ? -1.0 : 1.0;
    const double scale = std::abs(nu) > 0.0 ? 1.0 / std::abs(nu) : 0.0;
    cert.y_lower.resize(l);
    cert.y_upper.resize(l);
    Vector c(l);
    for (std::size_t i = 0; i < l; ++i) {
        cert.y_lower[i] = scale * duals.ineq[i];
        cert.y_upper[i] = scale * duals.ineq[l + i];
        c[i] = cert.direction - cert.y_upper[i] + cert.y_lower[i];
    }
    const Vector proj = multiply_transposed(red.basis, c);
    cert.orthogonality_residual = std::sqrt(simd::dot(proj, proj));
    cert.bound = sum(cert.y_upper) + cert.orthogonality_residual * std::sqrt(static_cast<double>(l));
    cert.separates = scale > 0.0 && cert.direction * red.b_eq > cert.bound;

    cert.vertex_maximum = vertex_maximum(red, cert.direction);
    if (cert.vertex_maximum)
        cert.verified = cert.separates && *cert.vertex_maximum <= cert.bound + kVertexTolerance;
    return cert;
}

InfeasibilityCertificate rank_zero_certificate(double b_eq) {
    InfeasibilityCertificate cert;
    cert.direction = b_eq > 0.0 ? 1.0 : -1.0;
    cert.bound = 0.0;
    cert.separates = cert.direction * b_eq > 0.0;
    cert.vertex_maximum = 0.0;
    cert.verified = cert.separates;
    return cert;
}

}  // namespace

FeasibilityReport analyze(const GramMatrix& gram, double b_eq, double tolerance) {
    const ReducedSystem red = reduce_constraints(gram, b_eq);
    const std::size_t l = red.size();
    const std::size_t r = red.rank();

    FeasibilityReport rep;
    rep.gram_rank = gram.report().rank;
    rep.reduced_dimension = r;

    // z = 0 is always in the box and in range(K).
    if (std::abs(b_eq) <= tolerance) {
        rep.verdict = Verdict::feasible;
        rep.witness_z.assign(l, 0.0);
        rep.witness_w.assign(r, 0.0);
        rep.witness_alpha = Vector(l, 0.0);
        rep.min_violation = std::abs(b_eq);
        rep.phase1_iterations = 0;
        return rep;
    }
    if (r == 0) {
        rep.verdict = Verdict::infeasible;
        rep.min_violation = std::abs(b_eq);
        rep.certificate = rank_zero_certificate(b_eq);
        return rep;
    }

    // Variables (w, e+, e-): minimize e+ + e- + 1e-10 ||.||^2 subject to
    // -U w <= 0, U w <= 1, -e+ <= 0, -e- <= 0, U^T 1 . w + e+ - e- = b_eq.
    const std::size_t n = r + 2;
    QpProblem phase1;
    phase1.p = Matrix::identity(n);
    for (double& v : phase1.p.data()) v *= kProximal;
    phase1.q.assign(n, 0.0);
    phase1.q[r] = 0.5;
    phase1.q[r + 1] = 0.5;
    phase1.g = Matrix(2 * l + 2, n);
    phase1.h.assign(2 * l + 2, 0.0);
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t c = 0; c < r; ++c) {
            phase1.g(i, c) = -red.basis(i, c);
            phase1.g(l + i, c) = red.basis(i, c);
        }
        phase1.h[l + i] = 1.0;
    }
    phase1.g(2 * l, r) = -1.0;
    phase1.g(2 * l + 1, r + 1) = -1.0;
    phase1.a_eq.assign(red.budget_row.begin(), red.budget_row.end());
    phase1.a_eq.push_back(1.0);
    phase1.a_eq.push_back(-1.0);
    phase1.b_eq = b_eq;

    SolverConfig cfg;
    cfg.max_iterations = 200;
    // Degenerate LP optima make the Newton system badly scaled without making
    // it singular; only exact breakdown should stop phase-1.
    cfg.pivot_tolerance = 0.0;
    const QpSolution sol = solve(phase1, cfg);
    rep.phase1_status = sol.status;
    rep.phase1_iterations = sol.iterations;

    Vector w(sol.alpha.begin(), sol.alpha.begin() + static_cast<std::ptrdiff_t>(r));
    rep.min_violation = total_violation(red, w);

    if (rep.min_violation <= kPhase1Threshold) {
        rep.verdict = Verdict::feasible;
        Vector z = multiply(red.basis, w);
        // Rescale onto the budget hyperplane; z >= 0 and range membership are preserved.
        const double budget = sum(z);
        if (budget > 0.0) {
            const double factor = b_eq / budget;
            for (double& v : z) v *= factor;
            for (double& v : w) v *= factor;
        }
        rep.witness_z = std::move(z);
        rep.witness_w = std::move(w);
        try {
            rep.witness_alpha = recover_alpha(gram, rep.witness_z, tolerance);
        } catch (const RangeViolation&) {
            rep.witness_alpha.reset();
        }
    } else {
        rep.verdict = Verdict::infeasible;
        Duals duals = sol.duals;
        rep.certificate = certificate_from_duals(red, duals);
    }
    return rep;
}

OracleResult brute_force_oracle(const GramMatrix& gram, double b_eq, std::size_t grid_steps) {
    const ReducedSystem red = reduce_constraints(gram, b_eq);
    const std::size_t r = red.rank();
    const std::size_t l = red.size();
    if (r > 3) throw ContractViolation("brute_force_oracle: Gram rank must be <= 3");
    if (r == 0) {
        if (b_eq == 0.0) return OracleWitness{Vector{}, Vector(l, 0.0)};
        return NotFoundAtResolution{};
    }
    if (grid_steps < 2) throw ContractViolation("brute_force_oracle: grid_steps must be >= 2");

    const double m = std::sqrt(static_cast<double>(l));
    const double h = 2.0 * m / static_cast<double>(grid_steps - 1);
    const double half_cell = 0.5 * h * std::sqrt(static_cast<double>(r));
    const double box_tol = half_cell;
    const double budget_tol = half_cell * std::sqrt(simd::dot(red.budget_row, red.budget_row));

    std::vector<std::size_t> idx(r, 0);
    Vector w(r);
    while (true) {
        for (std::size_t c = 0; c < r; ++c) w[c] = -m + h * static_cast<double>(idx[c]);
        if (std::abs(simd::dot(red.budget_row, w) - b_eq) <= budget_tol) {
            Vector z = multiply(red.basis, w);
            const bool inside = std::all_of(z.begin(), z.end(), [&](double zi) {
                return zi >= -box_tol && zi <= 1.0 + box_tol;
            });
            if (inside) return OracleWitness{w, std::move(z)};
        }
        // last coordinate fastest: lexicographic order on idx
        std::size_t c = r;
        while (c > 0 && ++idx[c - 1] == grid_steps) idx[--c] = 0;
        if (c == 0) break;
    }
    return NotFoundAtResolution{};
}

Vector recover_alpha(const GramMatrix& gram, std::span<const double> z, double tolerance) {
    if (z.size() != gram.size()) throw ContractViolation("recover_alpha: z length mismatch");
    const double rank_tol = 1e-10 * static_cast<double>(gram.size());
    Vector alpha = least_squares_range(gram.eigen(), z, rank_tol);
    const Vector kz = multiply(gram.k(), alpha);
    double residual = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) residual = std::max(residual, std::abs(kz[i] - z[i]));
    if (!(residual <= tolerance)) throw RangeViolation(residual, tolerance);
    return alpha;
}

}  // namespace vsvm
