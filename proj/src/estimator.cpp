#include "vsvm/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "vsvm/error.hpp"
#include "vsvm/simd.hpp"

namespace vsvm {

namespace {
constexpr double kTrainingTolerance = 1e-6;
}

Model::Model(Vector alpha, Dataset training, KernelSpec spec, double gamma, FitDiagnostics diagnostics)
    : alpha_(std::move(alpha)),
      training_(std::move(training)),
      spec_(spec),
      gamma_(gamma),
      diagnostics_(std::move(diagnostics)) {
    if (alpha_.size() != training_.size()) throw ContractViolation("Model: alpha length must equal training size");
}

double Model::raw(std::span<const double> x) const {
    return simd::dot(alpha_, kernel_row(training_, spec_, x));
}

double Model::predict(std::span<const double> x) const { return std::clamp(raw(x), 0.0, 1.0); }

FitResult fit(const Dataset& data, const FitOptions& options) {
    if (data.size() < 2) throw ContractViolation("fit: at least two points are required");
    const std::size_t pos = data.positives();
    if (pos == 0 || pos == data.size()) throw ContractViolation("fit: both classes must be present");
    if (!(options.gamma >= 0.0) || !std::isfinite(options.gamma)) throw ContractViolation("fit: gamma must be >= 0");
    options.kernel.validate();
    options.solver.validate();

    auto gm = std::make_shared<const GramMatrix>(gram(data, options.kernel));
    const VMatrix v = options.v ? VMatrix(*options.v) : VMatrix::identity(data.size());
    const QpProblem qp = assemble(gm, v, data.labels(), options.gamma);

    FitDiagnostics diag;
    diag.gram_report = gm->report();
    diag.feasibility = analyze(*gm, qp.b_eq);

    QpSolution sol = solve(qp, options.solver);
    diag.status = sol.status;
    diag.iterations = sol.iterations;
    diag.kkt = sol.kkt;
    diag.solver = sol.diagnostics;

    if (sol.optimal()) {
        Model model(std::move(sol.alpha), data, options.kernel, options.gamma, std::move(diag));
        const Metrics train = evaluate(model, data);
        double total = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i) total += model.raw(data.point(i));
        if (train.max_constraint_violation > kTrainingTolerance ||
            std::abs(total / static_cast<double>(data.size()) - data.p1()) > kTrainingTolerance)
            throw std::logic_error("fit: optimal solve produced a model violating its training constraints");
        return model;
    }
    return FitFailure{std::move(diag), std::move(sol.alpha)};
}

Metrics evaluate(const Model& model, const Dataset& data) {
    if (data.dimension() != model.training().dimension()) throw ContractViolation("evaluate: dimension mismatch");
    Metrics m;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double f = model.raw(data.point(i));
        const double prob = std::clamp(f, 0.0, 1.0);
        m.mean_abs_error += std::abs(prob - static_cast<double>(data.labels()[i]));
        m.max_constraint_violation = std::max({m.max_constraint_violation, -f, f - 1.0});
        m.mean_probability += prob;
    }
    const double n = static_cast<double>(data.size());
    m.mean_abs_error /= n;
    m.mean_probability /= n;
    return m;
}

}  // namespace vsvm
