#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "vsvm/matrix.hpp"

namespace vsvm {

// l labelled points in R^n, y in {0, 1}. Points are stored as rows of an
// l x n matrix.
class Dataset {
public:
    Dataset(Matrix points, std::vector<int> labels);

    std::size_t size() const noexcept { return points_.rows(); }
    std::size_t dimension() const noexcept { return points_.cols(); }

    const Matrix& points() const noexcept { return points_; }
    std::span<const double> point(std::size_t i) const noexcept { return points_.row(i); }
    const std::vector<int>& labels() const noexcept { return labels_; }

    Vector label_vector() const;
    std::size_t positives() const noexcept;
    // frequency of class y = 1
    double p1() const noexcept;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    Matrix points_;
    std::vector<int> labels_;
};

Dataset xor_dataset();

struct MixtureConfig {
    std::size_t n1 = 100;
    std::size_t n2 = 100;
    double mu1 = 1.0;
    double mu2 = 10.0;
    double sigma1 = 2.0;
    double sigma2 = 3.0;
    std::uint64_t seed = 42;

    void validate() const;
};

// One-dimensional two-class mixture: n1 draws of N(mu1, sigma1^2) labelled 0
// followed by n2 draws of N(mu2, sigma2^2) labelled 1.
Dataset gaussian_mixture(const MixtureConfig& config);

// xoshiro256** seeded through splitmix64; normals via Box-Muller.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next() noexcept;
    // uniform on [0, 1)
    double uniform() noexcept;
    double normal() noexcept;

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// CSV with header "x1,...,xn,y"; reals in shortest round-trip form.
void save_csv(const Dataset& data, const std::filesystem::path& path);
Dataset load_csv(const std::filesystem::path& path);

std::string format_real(double value);

// Plain numeric grid, no header. Used for V-matrices.
Matrix load_matrix_csv(const std::filesystem::path& path);

}  // namespace vsvm
