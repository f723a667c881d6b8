#include "vsvm/qp_assembly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vsvm/error.hpp"
#include "vsvm/simd.hpp"

namespace vsvm {

VMatrix::VMatrix(Matrix v) : v_(std::move(v)) {
    if (!v_.square() || v_.rows() == 0) throw ContractViolation("VMatrix: must be a non-empty square matrix");
    if (!v_.is_symmetric()) throw ContractViolation("VMatrix: must be symmetric");
    const auto eig = sym_eigen(v_);
    if (eig.values.back() < -1e-9)
        throw ContractViolation("VMatrix: must be positive semidefinite (min eigenvalue " +
                                std::to_string(eig.values.back()) + ")");
}

VMatrix VMatrix::identity(std::size_t n) { return VMatrix(Matrix::identity(n)); }

void QpProblem::validate() const {
    const std::size_t n = q.size();
    if (p.rows() != n || p.cols() != n) throw ContractViolation("QpProblem: P must be n x n with n = len(q)");
    if (g.rows() != h.size()) throw ContractViolation("QpProblem: G rows must match len(h)");
    if (g.rows() > 0 && g.cols() != n) throw ContractViolation("QpProblem: G must have n columns");
    if (!a_eq.empty() && a_eq.size() != n) throw ContractViolation("QpProblem: a_eq must have length n");
    if (n == 0) throw ContractViolation("QpProblem: no variables");
}

QpProblem assemble(std::shared_ptr<const GramMatrix> gram, const VMatrix& v, std::span<const int> labels,
                   double gamma) {
    if (!gram) throw ContractViolation("assemble: missing Gram matrix");
    const Matrix& k = gram->k();
    const std::size_t n = k.rows();
    if (v.size() != n)
        throw ContractViolation("assemble: V is " + std::to_string(v.size()) + "x" + std::to_string(v.size()) +
                                " but K is " + std::to_string(n) + "x" + std::to_string(n));
    if (labels.size() != n) throw ContractViolation("assemble: label count does not match K");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ContractViolation("assemble: gamma must be >= 0");

    QpProblem qp;
    qp.gamma = gamma;
    qp.p = add(sandwich(k, v.matrix()), k, gamma);

    const Vector y(labels.begin(), labels.end());
    const Matrix kv = multiply(k, v.matrix());
    qp.q.resize(n);
    for (std::size_t i = 0; i < n; ++i) qp.q[i] = -simd::dot(kv.row(i), y);

    qp.g = Matrix(2 * n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            qp.g(i, j) = k(i, j);
            qp.g(n + i, j) = -k(i, j);
        }
    qp.h.assign(2 * n, 0.0);
    std::fill(qp.h.begin(), qp.h.begin() + static_cast<std::ptrdiff_t>(n), 1.0);

    const Vector ones(n, 1.0);
    qp.a_eq = multiply(k, ones);
    qp.b_eq = sum(y);
    qp.source_gram = std::move(gram);
    return qp;
}

double objective_value(const QpProblem& problem, std::span<const double> a) {
    if (a.size() != problem.variables()) throw ContractViolation("objective_value: dimension mismatch");
    const Vector pa = multiply(problem.p, a);
    return simd::dot(a, pa) + 2.0 * simd::dot(problem.q, a);
}

ConstraintResiduals constraint_residuals(const QpProblem& problem, std::span<const double> a) {
    if (a.size() != problem.variables()) throw ContractViolation("constraint_residuals: dimension mismatch");
    ConstraintResiduals r;
    if (problem.inequalities() > 0) {
        const Vector ga = multiply(problem.g, a);
        for (std::size_t i = 0; i < ga.size(); ++i) r.ineq_violation = std::max(r.ineq_violation, ga[i] - problem.h[i]);
    }
    if (problem.has_equality()) r.eq_violation = std::abs(simd::dot(problem.a_eq, a) - problem.b_eq);
    return r;
}

}  // namespace vsvm
