#pragma once

// Data-parallel inner loops used by the dense linear algebra and the Gram
// construction. Every kernel exists as a scalar reference and, on x86-64, an
// AVX2 variant; the active variant is chosen once at runtime from the CPU
// features (override with VSVM_SIMD=scalar|avx2).
//
// Reductions accumulate in four interleaved lanes, combined as
// (l0 + l1) + (l2 + l3), followed by a sequential tail. The scalar reference
// reproduces that order exactly, so all variants are bit-identical.

#include <cstddef>
#include <span>
#include <string_view>

namespace vsvm::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*squared_distance)(const double* a, const double* b, std::size_t n);
    double (*min_sum)(const double* a, const double* b, std::size_t n);
    // y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // out = a .* b
    void (*multiply)(const double* a, const double* b, double* out, std::size_t n);
};

bool isa_available(Isa isa) noexcept;

// Throws ContractViolation when the variant is not compiled in or the CPU
// lacks the instructions.
const KernelTable& kernels(Isa isa);

Isa active_isa() noexcept;
const KernelTable& active() noexcept;

std::string_view isa_name(Isa isa) noexcept;

double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);
double min_sum(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);

namespace detail {
extern const KernelTable scalar_table;
#if defined(VSVM_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace vsvm::simd
