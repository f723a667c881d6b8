#pragma once

#include <optional>
#include <span>
#include <variant>

#include "vsvm/dataset.hpp"
#include "vsvm/feasibility.hpp"
#include "vsvm/kernels.hpp"
#include "vsvm/qp_assembly.hpp"
#include "vsvm/qp_solver.hpp"

namespace vsvm {

struct FitDiagnostics {
    SpectralReport gram_report;
    FeasibilityReport feasibility;
    QpStatus status = QpStatus::optimal;
    std::size_t iterations = 0;
    KktResiduals kkt;
    SolverDiagnostics solver;
};

// f(x) = sum_i alpha_i K(x_i, x), clipped to [0, 1] on output.
class Model {
public:
    Model(Vector alpha, Dataset training, KernelSpec spec, double gamma, FitDiagnostics diagnostics = {});

    const Vector& alpha() const noexcept { return alpha_; }
    const Dataset& training() const noexcept { return training_; }
    const KernelSpec& spec() const noexcept { return spec_; }
    double gamma() const noexcept { return gamma_; }
    const FitDiagnostics& diagnostics() const noexcept { return diagnostics_; }

    double raw(std::span<const double> x) const;
    double predict(std::span<const double> x) const;

private:
    Vector alpha_;
    Dataset training_;
    KernelSpec spec_;
    double gamma_;
    FitDiagnostics diagnostics_;
};

struct FitFailure {
    FitDiagnostics diagnostics;
    Vector last_iterate;
};

using FitResult = std::variant<Model, FitFailure>;

struct FitOptions {
    KernelSpec kernel;
    std::optional<Matrix> v;  // identity when absent
    double gamma = 1.0;
    SolverConfig solver;
};

// Throws ContractViolation on single-class data or bad options. A failed
// solve is returned as FitFailure, never thrown.
FitResult fit(const Dataset& data, const FitOptions& options);

struct Metrics {
    double mean_abs_error = 0.0;        // mean |f(x_i) - y_i|
    double max_constraint_violation = 0.0;  // of the raw f against [0, 1]
    double mean_probability = 0.0;
};

Metrics evaluate(const Model& model, const Dataset& data);

}  // namespace vsvm
