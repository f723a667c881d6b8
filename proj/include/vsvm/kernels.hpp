#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "vsvm/linalg.hpp"
#include "vsvm/matrix.hpp"

namespace vsvm {

class Dataset;

enum class KernelKind { rbf, ink_spline0 };

struct KernelSpec {
    KernelKind kind = KernelKind::rbf;
    double param = 1.0;  // RBF width; ignored for INK-spline

    static KernelSpec rbf(double param = 1.0);
    static KernelSpec ink_spline0();

    void validate() const;
    double operator()(std::span<const double> x1, std::span<const double> x2) const;

    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

std::string_view kernel_name(KernelKind kind) noexcept;

// exp(-||x1 - x2||^2 * param * 0.5)
double rbf(std::span<const double> x1, std::span<const double> x2, double param);

// sum_k min(x1[k], x2[k])
double ink_spline0(std::span<const double> x1, std::span<const double> x2);

// Kernel matrix over a dataset, with its eigendecomposition and spectral
// report. Entries are evaluated on the upper triangle and mirrored, so the
// matrix is exactly symmetric.
class GramMatrix {
public:
    GramMatrix(Matrix k, KernelSpec spec, SpectralTolerances tol = {});

    const Matrix& k() const noexcept { return k_; }
    const KernelSpec& spec() const noexcept { return spec_; }
    const SpectralReport& report() const noexcept { return report_; }
    const EigenDecomposition& eigen() const noexcept { return eigen_; }
    std::size_t size() const noexcept { return k_.rows(); }

private:
    Matrix k_;
    KernelSpec spec_;
    EigenDecomposition eigen_;
    SpectralReport report_;
};

Matrix kernel_matrix(const Dataset& data, const KernelSpec& spec);
GramMatrix gram(const Dataset& data, const KernelSpec& spec);

// Row of kernel evaluations K(x_i, x) against every point of the dataset.
Vector kernel_row(const Dataset& data, const KernelSpec& spec, std::span<const double> x);

}  // namespace vsvm
