#include "vsvm/kernels.hpp"

#include <cmath>
#include <string>

#include "vsvm/dataset.hpp"
#include "vsvm/error.hpp"
#include "vsvm/simd.hpp"

namespace vsvm {
namespace {

void require_same_dimension(std::span<const double> x1, std::span<const double> x2, const char* what) {
    if (x1.size() != x2.size())
        throw ContractViolation(std::string(what) + ": dimension mismatch (" + std::to_string(x1.size()) +
                                " vs " + std::to_string(x2.size()) + ")");
}

}  // namespace

KernelSpec KernelSpec::rbf(double param) {
    KernelSpec s{KernelKind::rbf, param};
    s.validate();
    return s;
}

KernelSpec KernelSpec::ink_spline0() { return {KernelKind::ink_spline0, 1.0}; }

void KernelSpec::validate() const {
    if (kind == KernelKind::rbf && !(param > 0.0 && std::isfinite(param)))
        throw ContractViolation("RBF kernel parameter must be positive and finite");
}

double KernelSpec::operator()(std::span<const double> x1, std::span<const double> x2) const {
    switch (kind) {
    case KernelKind::rbf: return vsvm::rbf(x1, x2, param);
    case KernelKind::ink_spline0: return vsvm::ink_spline0(x1, x2);
    }
    throw ContractViolation("unknown kernel kind");
}

std::string_view kernel_name(KernelKind kind) noexcept {
    switch (kind) {
    case KernelKind::rbf: return "rbf";
    case KernelKind::ink_spline0: return "ink0";
    }
    return "unknown";
}

double rbf(std::span<const double> x1, std::span<const double> x2, double param) {
    require_same_dimension(x1, x2, "rbf");
    if (!(param > 0.0)) throw ContractViolation("rbf: param must be positive");
    return std::exp(-simd::squared_distance(x1, x2) * param * 0.5);
}

double ink_spline0(std::span<const double> x1, std::span<const double> x2) {
    require_same_dimension(x1, x2, "ink_spline0");
    return simd::min_sum(x1, x2);
}

GramMatrix::GramMatrix(Matrix k, KernelSpec spec, SpectralTolerances tol)
    : k_(std::move(k)), spec_(spec), eigen_(sym_eigen(k_)), report_(spectral_report(eigen_, tol)) {}

Matrix kernel_matrix(const Dataset& data, const KernelSpec& spec) {
    spec.validate();
    const std::size_t n = data.size();
    Matrix k(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) k(i, j) = spec(data.point(i), data.point(j));
    k.mirror_upper();
    return k;
}

GramMatrix gram(const Dataset& data, const KernelSpec& spec) {
    return GramMatrix(kernel_matrix(data, spec), spec);
}

Vector kernel_row(const Dataset& data, const KernelSpec& spec, std::span<const double> x) {
    if (x.size() != data.dimension()) throw ContractViolation("kernel_row: dimension mismatch");
    Vector row(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) row[i] = spec(data.point(i), x);
    return row;
}

}  // namespace vsvm
