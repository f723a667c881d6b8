#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vsvm/estimator.hpp"
#include "vsvm/report.hpp"

namespace vsvm {

struct ExperimentConfig {
    std::string dataset = "xor";  // xor | gauss | csv:<path>
    std::string kernel = "rbf";   // rbf | ink0
    double rbf_param = 1.0;
    double gamma = 1.0;
    std::uint64_t seed = 42;      // gauss only
    std::string v_matrix = "identity";  // identity | csv:<path>
    std::optional<std::filesystem::path> report_path;
    std::optional<double> regularization;

    // Throws ContractViolation with a user-facing message.
    void validate() const;
    Json to_json() const;
};

struct ExperimentReport {
    Json document;  // wall_time_ms is the last field
    std::string summary;

    // The document without wall_time_ms; reproducible bit for bit.
    Json deterministic() const;
};

Dataset load_experiment_dataset(const ExperimentConfig& config);
KernelSpec experiment_kernel(const ExperimentConfig& config);

// dataset -> gram -> assemble -> feasibility -> solve -> metrics. Writes the
// report when report_path is set. A failed solve is a successful run.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct CompareRow {
    std::string dataset;
    std::string kernel;
    std::size_t size = 0;
    std::size_t rank = 0;
    double condition_number = 0.0;
    std::string status;
    std::string feasibility;
    std::string error;  // non-empty when the row could not be run
};

std::vector<CompareRow> compare(const std::vector<ExperimentConfig>& configs);
std::string format_table(const std::vector<CompareRow>& rows);
Json table_to_json(const std::vector<CompareRow>& rows);

// {xor, gauss} x {rbf, ink0} with the given seed and gamma.
std::vector<ExperimentConfig> standard_cells(std::uint64_t seed = 42, double gamma = 1.0);

}  // namespace vsvm
