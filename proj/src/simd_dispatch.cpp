#include "vsvm/simd.hpp"

#include <cstdlib>
#include <string>

#include "vsvm/error.hpp"

namespace vsvm::simd {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(VSVM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa select_isa() {
    if (const char* env = std::getenv("VSVM_SIMD")) {
        const std::string want{env};
        if (want == "scalar") return Isa::scalar;
        if (want == "avx2" && cpu_has_avx2()) return Isa::avx2;
    }
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b)
        throw ContractViolation(std::string(what) + ": length mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
}

}  // namespace

bool isa_available(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_has_avx2();
    }
    return false;
}

const KernelTable& kernels(Isa isa) {
    if (!isa_available(isa))
        throw ContractViolation("kernel variant " + std::string(isa_name(isa)) + " is not available");
#if defined(VSVM_HAVE_AVX2)
    if (isa == Isa::avx2) return detail::avx2_table;
#endif
    return detail::scalar_table;
}

Isa active_isa() noexcept {
    static const Isa isa = select_isa();
    return isa;
}

const KernelTable& active() noexcept {
    static const KernelTable& table = kernels(active_isa());
    return table;
}

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    }
    return "unknown";
}

double dot(std::span<const double> a, std::span<const double> b) {
    require_same_size(a.size(), b.size(), "dot");
    return active().dot(a.data(), b.data(), a.size());
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    require_same_size(a.size(), b.size(), "squared_distance");
    return active().squared_distance(a.data(), b.data(), a.size());
}

double min_sum(std::span<const double> a, std::span<const double> b) {
    require_same_size(a.size(), b.size(), "min_sum");
    return active().min_sum(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    require_same_size(x.size(), y.size(), "axpy");
    active().axpy(alpha, x.data(), y.data(), x.size());
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    require_same_size(a.size(), b.size(), "multiply");
    require_same_size(a.size(), out.size(), "multiply");
    active().multiply(a.data(), b.data(), out.data(), a.size());
}

}  // namespace vsvm::simd
