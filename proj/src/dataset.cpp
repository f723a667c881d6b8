#include "vsvm/dataset.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>

#include "vsvm/error.hpp"

namespace vsvm {

Dataset::Dataset(Matrix points, std::vector<int> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
    if (points_.rows() == 0) throw ContractViolation("Dataset: at least one point is required");
    if (points_.cols() == 0) throw ContractViolation("Dataset: points must have dimension >= 1");
    if (labels_.size() != points_.rows())
        throw ContractViolation("Dataset: " + std::to_string(labels_.size()) + " labels for " +
                                std::to_string(points_.rows()) + " points");
    for (int y : labels_)
        if (y != 0 && y != 1) throw ContractViolation("Dataset: label must be 0 or 1");
}

Vector Dataset::label_vector() const { return Vector(labels_.begin(), labels_.end()); }

std::size_t Dataset::positives() const noexcept {
    std::size_t n = 0;
    for (int y : labels_) n += static_cast<std::size_t>(y);
    return n;
}

double Dataset::p1() const noexcept {
    return static_cast<double>(positives()) / static_cast<double>(size());
}

Dataset xor_dataset() {
    return Dataset(Matrix{{0, 0}, {1, 1}, {0, 1}, {1, 0}}, {0, 0, 1, 1});
}

void MixtureConfig::validate() const {
    if (n1 == 0 || n2 == 0) throw ContractViolation("MixtureConfig: class sizes must be >= 1");
    if (!(sigma1 > 0.0) || !(sigma2 > 0.0))
        throw ContractViolation("MixtureConfig: standard deviations must be positive");
    if (!std::isfinite(mu1) || !std::isfinite(mu2) || !std::isfinite(sigma1) || !std::isfinite(sigma2))
        throw ContractViolation("MixtureConfig: parameters must be finite");
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
}

std::uint64_t Rng::next() noexcept {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double Rng::uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

Dataset gaussian_mixture(const MixtureConfig& config) {
    config.validate();
    Rng rng(config.seed);
    const std::size_t n = config.n1 + config.n2;
    Matrix points(n, 1);
    std::vector<int> labels(n, 0);
    for (std::size_t i = 0; i < config.n1; ++i) points(i, 0) = config.mu1 + config.sigma1 * rng.normal();
    for (std::size_t i = config.n1; i < n; ++i) {
        points(i, 0) = config.mu2 + config.sigma2 * rng.normal();
        labels[i] = 1;
    }
    return Dataset(std::move(points), std::move(labels));
}

std::string format_real(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view field, std::size_t line) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw ParseError(line, "invalid number '" + std::string(field) + "'");
    if (!std::isfinite(value)) throw ParseError(line, "non-finite number '" + std::string(field) + "'");
    return value;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
    }
    if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    return lines;
}

}  // namespace

void save_csv(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    for (std::size_t k = 0; k < data.dimension(); ++k) out << 'x' << (k + 1) << ',';
    out << "y\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (double v : data.point(i)) out << format_real(v) << ',';
        out << data.labels()[i] << '\n';
    }
    if (!out) throw IoError("error while writing '" + path.string() + "'");
}

Dataset load_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw ParseError(1, "empty file, expected header x1,...,xn,y");

    const auto header = split_fields(lines[0]);
    if (header.size() < 2) throw ParseError(1, "header must have at least one feature column and y");
    for (std::size_t k = 0; k + 1 < header.size(); ++k)
        if (trim(header[k]) != "x" + std::to_string(k + 1))
            throw ParseError(1, "expected header column 'x" + std::to_string(k + 1) + "'");
    if (trim(header.back()) != "y") throw ParseError(1, "last header column must be 'y'");

    const std::size_t dim = header.size() - 1;
    if (lines.size() < 2) throw ParseError(2, "no data rows");
    Matrix points(lines.size() - 1, dim);
    std::vector<int> labels;
    labels.reserve(lines.size() - 1);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const std::size_t lineno = r + 1;
        const auto fields = split_fields(lines[r]);
        if (fields.size() != dim + 1)
            throw ParseError(lineno, "expected " + std::to_string(dim + 1) + " fields, found " +
                                         std::to_string(fields.size()));
        for (std::size_t k = 0; k < dim; ++k) points(r - 1, k) = parse_real(fields[k], lineno);
        const auto label = trim(fields[dim]);
        if (label == "0") labels.push_back(0);
        else if (label == "1") labels.push_back(1);
        else throw ParseError(lineno, "label must be 0 or 1");
    }
    return Dataset(std::move(points), std::move(labels));
}

Matrix load_matrix_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw ParseError(1, "empty matrix file");
    const std::size_t cols = split_fields(lines[0]).size();
    Matrix m(lines.size(), cols);
    for (std::size_t r = 0; r < lines.size(); ++r) {
        const auto fields = split_fields(lines[r]);
        if (fields.size() != cols)
            throw ParseError(r + 1, "expected " + std::to_string(cols) + " fields, found " +
                                        std::to_string(fields.size()));
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_real(fields[c], r + 1);
    }
    return m;
}

}  // namespace vsvm
