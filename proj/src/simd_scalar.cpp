#include "vsvm/simd.hpp"

#include <algorithm>

namespace vsvm::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        l0 += a[i] * b[i];
        l1 += a[i + 1] * b[i + 1];
        l2 += a[i + 2] * b[i + 2];
        l3 += a[i + 3] * b[i + 3];
    }
    double s = (l0 + l1) + (l2 + l3);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
    double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const double d0 = a[i] - b[i];
        const double d1 = a[i + 1] - b[i + 1];
        const double d2 = a[i + 2] - b[i + 2];
        const double d3 = a[i + 3] - b[i + 3];
        l0 += d0 * d0;
        l1 += d1 * d1;
        l2 += d2 * d2;
        l3 += d3 * d3;
    }
    double s = (l0 + l1) + (l2 + l3);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double min_sum_scalar(const double* a, const double* b, std::size_t n) {
    double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
    std::size_t i = 0;
    // Same selection rule as _mm256_min_pd(a, b), signed zeros and NaN included.
    auto mn = [](double x, double y) { return x < y ? x : y; };
    for (; i + 4 <= n; i += 4) {
        l0 += mn(a[i], b[i]);
        l1 += mn(a[i + 1], b[i + 1]);
        l2 += mn(a[i + 2], b[i + 2]);
        l3 += mn(a[i + 3], b[i + 3]);
    }
    double s = (l0 + l1) + (l2 + l3);
    for (; i < n; ++i) s += mn(a[i], b[i]);
    return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void multiply_scalar(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

}  // namespace

namespace detail {
const KernelTable scalar_table{dot_scalar, squared_distance_scalar, min_sum_scalar, axpy_scalar,
                               multiply_scalar};
}

}  // namespace vsvm::simd
