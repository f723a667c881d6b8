#include "vsvm/qp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vsvm/error.hpp"
#include "vsvm/simd.hpp"

namespace vsvm {

void SolverConfig::validate() const {
    if (!(kkt_tolerance > 0.0)) throw ContractViolation("SolverConfig: kkt_tolerance must be positive");
    if (!(step_fraction > 0.0 && step_fraction < 1.0))
        throw ContractViolation("SolverConfig: step_fraction must lie in (0, 1)");
    if (!(regularization_floor >= 0.0) || !std::isfinite(regularization_floor))
        throw ContractViolation("SolverConfig: regularization_floor must be >= 0");
    if (!(pivot_tolerance >= 0.0)) throw ContractViolation("SolverConfig: pivot_tolerance must be >= 0");
    if (max_iterations == 0) throw ContractViolation("SolverConfig: max_iterations must be >= 1");
}

std::string_view status_name(QpStatus status) noexcept {
    switch (status) {
    case QpStatus::optimal: return "Optimal";
    case QpStatus::singular_kkt: return "SingularKkt";
    case QpStatus::max_iterations: return "MaxIterations";
    case QpStatus::numerical_breakdown: return "NumericalBreakdown";
    }
    return "Unknown";
}

std::string_view deficiency_name(Deficiency d) noexcept {
    switch (d) {
    case Deficiency::none: return "none";
    case Deficiency::gram_rank: return "gram_rank";
    case Deficiency::kkt_pivot: return "kkt_pivot";
    }
    return "unknown";
}

double KktResiduals::max() const noexcept {
    double m = std::max(std::max(primal_ineq, primal_eq), std::max(dual, complementarity));
    if (std::isnan(primal_ineq) || std::isnan(primal_eq) || std::isnan(dual) || std::isnan(complementarity))
        return std::numeric_limits<double>::quiet_NaN();
    return m;
}

KktResiduals kkt_residuals(const QpProblem& problem, std::span<const double> alpha, const Duals& duals) {
    problem.validate();
    const std::size_t n = problem.variables();
    const std::size_t m = problem.inequalities();
    if (alpha.size() != n) throw ContractViolation("kkt_residuals: alpha length mismatch");
    if (duals.ineq.size() != m) throw ContractViolation("kkt_residuals: multiplier count mismatch");
    for (double l : duals.ineq)
        if (l < 0.0) throw ContractViolation("kkt_residuals: inequality multipliers must be nonnegative");

    KktResiduals r;
    Vector stationarity = multiply(problem.p, alpha);
    for (std::size_t i = 0; i < n; ++i) stationarity[i] = 2.0 * stationarity[i] + 2.0 * problem.q[i];
    if (m > 0) {
        const Vector ga = multiply(problem.g, alpha);
        for (std::size_t i = 0; i < m; ++i) {
            const double slack = problem.h[i] - ga[i];
            r.primal_ineq = std::max(r.primal_ineq, -slack);
            r.complementarity = std::max(r.complementarity, std::abs(duals.ineq[i] * slack));
        }
        const Vector gtl = multiply_transposed(problem.g, duals.ineq);
        simd::axpy(1.0, gtl, stationarity);
    }
    if (problem.has_equality()) {
        r.primal_eq = std::abs(simd::dot(problem.a_eq, alpha) - problem.b_eq);
        simd::axpy(duals.eq, problem.a_eq, stationarity);
    }
    r.dual = max_abs(stationarity);
    return r;
}

namespace {

constexpr double kMinStep = 1e-12;
constexpr int kMaxBacktracks = 40;

double max_step(std::span<const double> v, std::span<const double> dv) {
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (dv[i] < 0.0) alpha = std::min(alpha, -v[i] / dv[i]);
    return alpha;
}

double gap_after(std::span<const double> s, std::span<const double> ds, std::span<const double> l,
                 std::span<const double> dl, double alpha) {
    double g = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) g += (s[i] + alpha * ds[i]) * (l[i] + alpha * dl[i]);
    return g;
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

struct Direction {
    Vector dx, ds, dl;
    double dnu = 0.0;
};

// Interior point state and the Newton system reduced to (dx, dnu):
//   [2P + G^T W G   a_eq] [dx ]   [-r_d - G^T ((r_c + lambda r_p) / s)]
//   [a_eq^T          0  ] [dnu] = [-r_e                               ]
// with W = lambda / s, then ds = -r_p - G dx and dl = (r_c - lambda ds) / s.
class InteriorPoint {
public:
    InteriorPoint(const QpProblem& qp, const SolverConfig& cfg) : qp_(qp), cfg_(cfg) {
        n_ = qp.variables();
        m_ = qp.inequalities();
        p_ = qp.has_equality() ? 1 : 0;
        x_.assign(n_, 0.0);
        s_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) s_[i] = std::max(qp.h[i], 1.0);
        l_.assign(m_, 1.0);
        nu_ = 0.0;
    }

    QpSolution run() {
        QpSolution sol;
        double last_step = 0.0;
        double last_sigma = 0.0;
        for (std::size_t iter = 0;; ++iter) {
            compute_residuals();
            const KktResiduals kkt = kkt_residuals(qp_, x_, Duals{l_, nu_});
            sol.trace.push_back({iter, gap(), last_step, last_sigma, kkt});
            sol.iterations = iter;
            sol.kkt = kkt;
            if (!all_finite(x_) || !all_finite(s_) || !all_finite(l_) || !std::isfinite(kkt.max())) {
                sol.status = QpStatus::numerical_breakdown;
                sol.diagnostics.message = "non-finite iterate";
                break;
            }
            if (kkt.max() <= cfg_.kkt_tolerance) {
                sol.status = QpStatus::optimal;
                break;
            }
            if (iter >= cfg_.max_iterations) {
                sol.status = QpStatus::max_iterations;
                break;
            }

            try {
                factorize(iter == 0);
            } catch (const SingularMatrix& e) {
                sol.status = QpStatus::singular_kkt;
                sol.diagnostics.failed_iteration = iter;
                sol.diagnostics.pivot_index = e.pivot_index();
                sol.diagnostics.pivot_value = e.pivot_value();
                sol.diagnostics.pivot_threshold = e.threshold();
                sol.diagnostics.message = e.what();
                break;
            }

            if (!step(last_step, last_sigma)) {
                sol.status = QpStatus::numerical_breakdown;
                sol.diagnostics.failed_iteration = iter;
                sol.diagnostics.message = "step length collapsed below 1e-12";
                break;
            }
        }
        sol.alpha = x_;
        sol.duals = Duals{l_, nu_};
        return sol;
    }

private:
    double gap() const {
        if (m_ == 0) return 0.0;
        return simd::dot(s_, l_) / static_cast<double>(m_);
    }

    void compute_residuals() {
        rd_ = multiply(qp_.p, x_);
        for (std::size_t i = 0; i < n_; ++i) rd_[i] = 2.0 * rd_[i] + 2.0 * qp_.q[i];
        if (m_ > 0) {
            simd::axpy(1.0, multiply_transposed(qp_.g, l_), rd_);
            rp_ = multiply(qp_.g, x_);
            for (std::size_t i = 0; i < m_; ++i) rp_[i] += s_[i] - qp_.h[i];
        }
        if (p_ > 0) {
            simd::axpy(nu_, qp_.a_eq, rd_);
            re_ = simd::dot(qp_.a_eq, x_) - qp_.b_eq;
        }
    }

    void factorize(bool structural) {
        Vector w(m_);
        for (std::size_t i = 0; i < m_; ++i) w[i] = l_[i] / s_[i];
        Matrix h = m_ > 0 ? weighted_gram(qp_.g, w) : Matrix(n_, n_);
        simd::axpy(2.0, qp_.p.data(), h.data());

        Matrix kkt(n_ + p_, n_ + p_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) kkt(i, j) = h(i, j);
        if (p_ > 0)
            for (std::size_t i = 0; i < n_; ++i) {
                kkt(i, n_) = qp_.a_eq[i];
                kkt(n_, i) = qp_.a_eq[i];
            }
        // Later iterations are ill-conditioned by design as slacks vanish, so
        // only exactly zero pivots end them.
        lu_.emplace(kkt, structural ? cfg_.pivot_tolerance * kkt.max_abs() : 0.0);
    }

    Direction direction(std::span<const double> rc) const {
        Direction d;
        Vector rhs(n_ + p_);
        for (std::size_t i = 0; i < n_; ++i) rhs[i] = -rd_[i];
        if (m_ > 0) {
            Vector t(m_);
            for (std::size_t i = 0; i < m_; ++i) t[i] = (rc[i] + l_[i] * rp_[i]) / s_[i];
            simd::axpy(-1.0, multiply_transposed(qp_.g, t), std::span<double>(rhs.data(), n_));
        }
        if (p_ > 0) rhs[n_] = -re_;

        const Vector sol = lu_->solve(rhs);
        d.dx.assign(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(n_));
        if (p_ > 0) d.dnu = sol[n_];
        d.ds.resize(m_);
        d.dl.resize(m_);
        if (m_ > 0) {
            const Vector gdx = multiply(qp_.g, d.dx);
            for (std::size_t i = 0; i < m_; ++i) {
                d.ds[i] = -rp_[i] - gdx[i];
                d.dl[i] = (rc[i] - l_[i] * d.ds[i]) / s_[i];
            }
        }
        return d;
    }

    double boundary_step(const Direction& d) const {
        const double a = std::min(max_step(s_, d.ds), max_step(l_, d.dl));
        return std::min(1.0, cfg_.step_fraction * a);
    }

    // Largest step not exceeding `alpha` (halving) that does not increase
    // the complementarity gap; 0 if none is found.
    double monotone_step(const Direction& d, double alpha) const {
        const double current = simd::dot(s_, l_);
        for (int k = 0; k < kMaxBacktracks && alpha >= kMinStep; ++k, alpha *= 0.5)
            if (gap_after(s_, d.ds, l_, d.dl, alpha) <= current) return alpha;
        return 0.0;
    }

    bool step(double& taken, double& sigma_out) {
        const double mu = gap();
        Vector rc(m_);
        for (std::size_t i = 0; i < m_; ++i) rc[i] = -s_[i] * l_[i];
        const Direction affine = direction(rc);

        double sigma = 0.0;
        Direction chosen = affine;
        if (m_ > 0) {
            const double a_aff = boundary_step(affine) / cfg_.step_fraction;
            const double mu_aff =
                gap_after(s_, affine.ds, l_, affine.dl, std::min(1.0, a_aff)) / static_cast<double>(m_);
            sigma = mu > 0.0 ? std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3) : 0.0;
            for (std::size_t i = 0; i < m_; ++i) rc[i] += sigma * mu - affine.ds[i] * affine.dl[i];
            chosen = direction(rc);
        }
        if (!all_finite(chosen.dx) || !all_finite(chosen.ds) || !all_finite(chosen.dl) ||
            !std::isfinite(chosen.dnu))
            return false;

        double alpha = m_ > 0 ? boundary_step(chosen) : 1.0;
        if (m_ > 0) {
            double accepted = monotone_step(chosen, alpha);
            if (accepted == 0.0) {
                chosen = affine;
                sigma = 0.0;
                accepted = monotone_step(chosen, boundary_step(chosen));
            }
            alpha = accepted;
        }
        if (!(alpha >= kMinStep)) return false;

        simd::axpy(alpha, chosen.dx, x_);
        simd::axpy(alpha, chosen.ds, s_);
        simd::axpy(alpha, chosen.dl, l_);
        nu_ += alpha * chosen.dnu;
        taken = alpha;
        sigma_out = sigma;
        return true;
    }

    const QpProblem& qp_;
    const SolverConfig& cfg_;
    std::size_t n_ = 0, m_ = 0, p_ = 0;
    Vector x_, s_, l_;
    double nu_ = 0.0;
    Vector rd_, rp_;
    double re_ = 0.0;
    std::optional<LuFactorization> lu_;
};

}  // namespace

QpSolution solve(const QpProblem& problem, const SolverConfig& config) {
    problem.validate();
    config.validate();

    QpProblem effective = problem;
    if (config.regularization_floor > 0.0)
        for (std::size_t i = 0; i < effective.variables(); ++i) effective.p(i, i) += config.regularization_floor;

    QpSolution sol = InteriorPoint(effective, config).run();

    if (problem.source_gram) sol.diagnostics.gram_report = problem.source_gram->report();
    if (sol.status == QpStatus::singular_kkt) {
        const bool gram_deficient = problem.source_gram && !problem.source_gram->report().full_rank();
        sol.diagnostics.deficiency = gram_deficient ? Deficiency::gram_rank : Deficiency::kkt_pivot;
    }
    return sol;
}

namespace {

struct Bounds {
    Vector lo, hi;
};

// Recognizes G as rows of +-e_i; returns per-variable bounds or nullopt.
std::optional<Bounds> box_bounds(const QpProblem& qp) {
    const std::size_t n = qp.variables();
    constexpr double inf = std::numeric_limits<double>::infinity();
    Bounds b{Vector(n, -inf), Vector(n, inf)};
    for (std::size_t r = 0; r < qp.inequalities(); ++r) {
        std::size_t nonzeros = 0, col = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (qp.g(r, j) != 0.0) {
                ++nonzeros;
                col = j;
            }
        if (nonzeros != 1) return std::nullopt;
        const double coef = qp.g(r, col);
        if (coef > 0.0) b.hi[col] = std::min(b.hi[col], qp.h[r] / coef);
        else b.lo[col] = std::max(b.lo[col], qp.h[r] / coef);
    }
    for (std::size_t j = 0; j < n; ++j)
        if (!std::isfinite(b.lo[j]) || !std::isfinite(b.hi[j]) || b.lo[j] > b.hi[j]) return std::nullopt;
    return b;
}

}  // namespace

OracleComparison verify_against_oracle(const QpProblem& problem, const QpSolution& solution,
                                       std::size_t oracle_resolution) {
    problem.validate();
    if (!solution.optimal()) throw ContractViolation("verify_against_oracle: solution is not optimal");
    if (oracle_resolution < 2) throw ContractViolation("verify_against_oracle: resolution must be >= 2");
    const std::size_t n = problem.variables();
    if (n > 6) throw ContractViolation("verify_against_oracle: at most 6 variables");

    // Grid coordinates c map to a = transform * c (identity for box problems).
    Bounds bounds;
    std::optional<Matrix> transform;
    Vector eq_row = problem.a_eq;
    if (problem.source_gram) {
        const GramMatrix& gm = *problem.source_gram;
        if (!gm.report().full_rank())
            throw ContractViolation("verify_against_oracle: Gram matrix must be nonsingular");
        Matrix kinv(n, n);
        const LuFactorization lu(gm.k());
        for (std::size_t j = 0; j < n; ++j) {
            Vector e(n, 0.0);
            e[j] = 1.0;
            const Vector col = lu.solve(e);
            for (std::size_t i = 0; i < n; ++i) kinv(i, j) = col[i];
        }
        transform = std::move(kinv);
        bounds = Bounds{Vector(n, 0.0), Vector(n, 1.0)};
        if (problem.has_equality()) eq_row.assign(n, 1.0);  // a_eq . a = 1^T K a = 1^T z
    } else {
        auto b = box_bounds(problem);
        if (!b) throw ContractViolation("verify_against_oracle: G must describe a bounded box");
        bounds = std::move(*b);
    }

    // With an equality row one coordinate is solved for instead of gridded.
    std::size_t eliminated = n;
    if (problem.has_equality()) {
        eliminated = 0;
        for (std::size_t j = 1; j < n; ++j)
            if (std::abs(eq_row[j]) > std::abs(eq_row[eliminated])) eliminated = j;
        if (eq_row[eliminated] == 0.0) throw ContractViolation("verify_against_oracle: zero equality row");
    }

    std::vector<std::size_t> axes;
    for (std::size_t j = 0; j < n; ++j)
        if (j != eliminated) axes.push_back(j);

    OracleComparison out;
    out.resolution = oracle_resolution;
    out.solver_objective = objective_value(problem, solution.alpha);
    out.oracle_objective = std::numeric_limits<double>::infinity();

    std::vector<std::size_t> idx(axes.size(), 0);
    Vector c(n, 0.0);
    const double steps = static_cast<double>(oracle_resolution - 1);
    const double slack = 1e-12;
    while (true) {
        for (std::size_t k = 0; k < axes.size(); ++k) {
            const std::size_t j = axes[k];
            c[j] = bounds.lo[j] + (bounds.hi[j] - bounds.lo[j]) * static_cast<double>(idx[k]) / steps;
        }
        bool ok = true;
        if (eliminated < n) {
            double rest = problem.b_eq;
            for (std::size_t j : axes) rest -= eq_row[j] * c[j];
            c[eliminated] = rest / eq_row[eliminated];
            const double width = bounds.hi[eliminated] - bounds.lo[eliminated];
            ok = c[eliminated] >= bounds.lo[eliminated] - slack * (1.0 + width) &&
                 c[eliminated] <= bounds.hi[eliminated] + slack * (1.0 + width);
        }
        ++out.grid_points;
        if (ok) {
            ++out.feasible_points;
            const Vector a = transform ? multiply(*transform, c) : c;
            const double f = objective_value(problem, a);
            if (f < out.oracle_objective) {
                out.oracle_objective = f;
                out.oracle_argmin = a;
            }
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == oracle_resolution) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    out.gap = out.oracle_objective - out.solver_objective;
    return out;
}

}  // namespace vsvm
