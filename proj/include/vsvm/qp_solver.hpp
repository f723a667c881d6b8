#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsvm/linalg.hpp"
#include "vsvm/qp_assembly.hpp"

namespace vsvm {

struct SolverConfig {
    std::size_t max_iterations = 100;
    double kkt_tolerance = 1e-8;
    double step_fraction = 0.99;
    // Adds floor * I to P. Zero keeps the problem as assembled.
    double regularization_floor = 0.0;
    // Relative to ||KKT||_max, applied to the first Newton system; a pivot
    // below it ends the solve as SingularKkt. Later systems fail on exactly
    // zero pivots only. Zero disables the check.
    double pivot_tolerance = 1e-12;

    void validate() const;
};

enum class QpStatus { optimal, singular_kkt, max_iterations, numerical_breakdown };

std::string_view status_name(QpStatus status) noexcept;

struct Duals {
    Vector ineq;     // one per row of G, >= 0
    double eq = 0.0; // ignored when the problem has no equality
};

// Max-norm residuals, all in the convention of the objective a^T P a + 2 q^T a:
// stationarity is 2 P a + 2 q + G^T lambda + a_eq nu = 0.
struct KktResiduals {
    double primal_ineq = 0.0;
    double primal_eq = 0.0;
    double dual = 0.0;
    double complementarity = 0.0;

    double max() const noexcept;
};

KktResiduals kkt_residuals(const QpProblem& problem, std::span<const double> alpha,
                           const Duals& duals);

struct IterationRecord {
    std::size_t iteration = 0;
    double gap = 0.0;  // s^T lambda / m
    double step = 0.0;
    double sigma = 0.0;
    KktResiduals residuals;
};

enum class Deficiency { none, gram_rank, kkt_pivot };

struct SolverDiagnostics {
    std::optional<SpectralReport> gram_report;
    Deficiency deficiency = Deficiency::none;
    std::size_t failed_iteration = 0;
    std::size_t pivot_index = 0;
    double pivot_value = 0.0;
    double pivot_threshold = 0.0;
    std::string message;
};

std::string_view deficiency_name(Deficiency d) noexcept;

struct QpSolution {
    QpStatus status = QpStatus::numerical_breakdown;
    Vector alpha;  // last iterate; meaningful as a solution only when optimal
    Duals duals;
    KktResiduals kkt;
    std::size_t iterations = 0;
    std::vector<IterationRecord> trace;
    SolverDiagnostics diagnostics;

    bool optimal() const noexcept { return status == QpStatus::optimal; }
};

// Primal-dual path-following interior point method with Mehrotra
// predictor-corrector steps. Start: alpha = 0, slacks max(h, 1),
// inequality multipliers 1, equality multiplier 0.
QpSolution solve(const QpProblem& problem, const SolverConfig& config = {});

struct OracleComparison {
    double solver_objective = 0.0;
    double oracle_objective = 0.0;
    // oracle - solver; >= 0 up to rounding when the solver found the minimum
    double gap = 0.0;
    std::size_t grid_points = 0;
    std::size_t feasible_points = 0;
    std::size_t resolution = 0;
    Vector oracle_argmin;
};

// Exhaustive grid search over the feasible set. Problems carrying a Gram are
// gridded in z = K a over the [0, 1] box (K must be nonsingular); problems
// whose G is a pure box [I; -I] are gridded in a directly. An equality row is
// honoured by eliminating one coordinate. Requires at most 6 variables.
OracleComparison verify_against_oracle(const QpProblem& problem, const QpSolution& solution,
                                       std::size_t oracle_resolution);

}  // namespace vsvm
