#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>

#include "vsvm/kernels.hpp"
#include "vsvm/qp_solver.hpp"

namespace vsvm {

// The constraints 0 <= K a <= 1, 1^T K a = b_eq depend on a only through
// z = K a, so feasibility is a question about range(K). With U an
// orthonormal basis of range(K), z = U w and the system becomes
//   0 <= U w <= 1,  (U^T 1) . w = b_eq.
struct ReducedSystem {
    Matrix basis;          // l x r
    Vector budget_row;     // U^T 1, length r
    double b_eq = 0.0;
    std::size_t rank() const noexcept { return basis.cols(); }
    std::size_t size() const noexcept { return basis.rows(); }
};

ReducedSystem reduce_constraints(const GramMatrix& gram, double b_eq);

enum class Verdict { feasible, infeasible };

std::string_view verdict_name(Verdict v) noexcept;

// Farkas-type certificate for an infeasible budget. With
// c = direction * 1 - y_upper + y_lower orthogonal to range(K) (up to
// orthogonality_residual), every z in box /\ range(K) satisfies
//   direction * 1^T z <= bound,
// while direction * b_eq > bound.
struct InfeasibilityCertificate {
    double direction = 1.0;
    Vector y_lower;
    Vector y_upper;
    double bound = 0.0;
    double orthogonality_residual = 0.0;
    // direction * b_eq > bound
    bool separates = false;
    // Max of direction * 1^T z over the vertices of the reduced polytope;
    // only computed for rank <= 3.
    std::optional<double> vertex_maximum;
    std::optional<bool> verified;
};

struct FeasibilityReport {
    Verdict verdict = Verdict::infeasible;
    Vector witness_z;
    Vector witness_w;
    std::optional<Vector> witness_alpha;  // absent when K a = z cannot be met to tolerance
    std::optional<InfeasibilityCertificate> certificate;
    std::size_t gram_rank = 0;
    std::size_t reduced_dimension = 0;
    double min_violation = 0.0;  // phase-1 optimum
    QpStatus phase1_status = QpStatus::optimal;
    std::size_t phase1_iterations = 0;

    bool feasible() const noexcept { return verdict == Verdict::feasible; }
};

inline constexpr double kFeasibilityTolerance = 1e-8;
inline constexpr double kPhase1Threshold = 1e-7;

// Phase-1: minimize the elastic budget violation e+ + e- over the reduced box,
// solved by the interior point method with a 1e-10 proximal term.
FeasibilityReport analyze(const GramMatrix& gram, double b_eq,
                          double tolerance = kFeasibilityTolerance);

struct OracleWitness {
    Vector w;
    Vector z;
};
struct NotFoundAtResolution {};

using OracleResult = std::variant<OracleWitness, NotFoundAtResolution>;

// Grid over [-m, m]^r with m = sqrt(l) (a box-feasible z has ||z|| <= sqrt(l)
// and ||w|| = ||z||). A grid point is accepted when every constraint holds
// within the change a half-cell move can cause. Lexicographically smallest
// accepted index wins. Requires rank <= 3.
OracleResult brute_force_oracle(const GramMatrix& gram, double b_eq, std::size_t grid_steps);

// Minimum-norm alpha with K alpha = z. Throws RangeViolation when
// ||K alpha - z||_max > tolerance.
Vector recover_alpha(const GramMatrix& gram, std::span<const double> z,
                     double tolerance = kFeasibilityTolerance);

}  // namespace vsvm
