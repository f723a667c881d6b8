#pragma once

#include <memory>
#include <span>

#include "vsvm/kernels.hpp"
#include "vsvm/matrix.hpp"

namespace vsvm {

// Symmetric PSD weighting of the residual Y - KA. Checked on construction.
class VMatrix {
public:
    explicit VMatrix(Matrix v);
    static VMatrix identity(std::size_t n);

    const Matrix& matrix() const noexcept { return v_; }
    std::size_t size() const noexcept { return v_.rows(); }

private:
    Matrix v_;
};

// minimize    a^T P a + 2 q^T a
// subject to  G a <= h
//             a_eq^T a = b_eq        (only when a_eq is non-empty)
struct QpProblem {
    Matrix p;
    Vector q;
    Matrix g;
    Vector h;
    Vector a_eq;
    double b_eq = 0.0;
    double gamma = 0.0;
    std::shared_ptr<const GramMatrix> source_gram;

    std::size_t variables() const noexcept { return q.size(); }
    std::size_t inequalities() const noexcept { return h.size(); }
    bool has_equality() const noexcept { return !a_eq.empty(); }

    // Throws ContractViolation on inconsistent shapes.
    void validate() const;
};

// P = K V K + gamma K, q = -(K V) y, G = [K; -K], h = (1, 0),
// a_eq = K 1, b_eq = sum(y).
QpProblem assemble(std::shared_ptr<const GramMatrix> gram, const VMatrix& v,
                   std::span<const int> labels, double gamma);

double objective_value(const QpProblem& problem, std::span<const double> a);

struct ConstraintResiduals {
    double ineq_violation = 0.0;  // max_i (G a - h)_i^+
    double eq_violation = 0.0;    // |a_eq . a - b_eq|
};

ConstraintResiduals constraint_residuals(const QpProblem& problem, std::span<const double> a);

}  // namespace vsvm
