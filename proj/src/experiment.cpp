#include "vsvm/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "vsvm/error.hpp"

namespace vsvm {

namespace {

bool starts_with(const std::string& s, std::string_view prefix) { return s.rfind(prefix, 0) == 0; }

Json vector_json(std::span<const double> v) {
    Json arr = Json::array();
    for (double x : v) arr.push_back(real_to_json(x));
    return arr;
}

Json spectral_json(const SpectralReport& r) {
    Json j;
    j["size"] = r.eigenvalues.size();
    j["rank"] = r.rank;
    j["condition_number"] = real_to_json(r.condition_number);
    j["restricted_condition"] = real_to_json(r.restricted_condition);
    j["min_eigenvalue"] = real_to_json(r.min_eigenvalue);
    j["psd"] = r.psd;
    j["eigenvalues"] = vector_json(r.eigenvalues);
    return j;
}

Json kkt_json(const KktResiduals& k) {
    Json j;
    j["primal_ineq"] = real_to_json(k.primal_ineq);
    j["primal_eq"] = real_to_json(k.primal_eq);
    j["dual"] = real_to_json(k.dual);
    j["complementarity"] = real_to_json(k.complementarity);
    return j;
}

Json solver_json(const FitDiagnostics& d) {
    Json j;
    j["status"] = status_name(d.status);
    j["iterations"] = d.iterations;
    j["kkt"] = kkt_json(d.kkt);
    j["deficiency"] = deficiency_name(d.solver.deficiency);
    if (d.status == QpStatus::singular_kkt) {
        j["failed_iteration"] = d.solver.failed_iteration;
        j["pivot_index"] = d.solver.pivot_index;
        j["pivot_value"] = real_to_json(d.solver.pivot_value);
        j["pivot_threshold"] = real_to_json(d.solver.pivot_threshold);
    }
    j["message"] = d.solver.message;
    return j;
}

Json feasibility_json(const FeasibilityReport& f) {
    Json j;
    j["verdict"] = verdict_name(f.verdict);
    j["gram_rank"] = f.gram_rank;
    j["reduced_dimension"] = f.reduced_dimension;
    j["min_violation"] = real_to_json(f.min_violation);
    j["phase1_status"] = status_name(f.phase1_status);
    j["phase1_iterations"] = f.phase1_iterations;
    if (f.feasible()) {
        Json w;
        w["z"] = vector_json(f.witness_z);
        w["alpha_recovered"] = f.witness_alpha.has_value();
        if (f.witness_alpha) w["alpha"] = vector_json(*f.witness_alpha);
        j["witness"] = std::move(w);
    } else if (f.certificate) {
        const auto& c = *f.certificate;
        Json cj;
        cj["direction"] = real_to_json(c.direction);
        cj["bound"] = real_to_json(c.bound);
        cj["orthogonality_residual"] = real_to_json(c.orthogonality_residual);
        cj["separates"] = c.separates;
        cj["vertex_maximum"] = c.vertex_maximum ? real_to_json(*c.vertex_maximum) : Json(nullptr);
        cj["verified"] = c.verified ? Json(*c.verified) : Json("unverified");
        j["certificate"] = std::move(cj);
    }
    return j;
}

std::string format_short(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (dataset != "xor" && dataset != "gauss" && !(starts_with(dataset, "csv:") && dataset.size() > 4))
        throw ContractViolation("--dataset must be xor, gauss or csv:<path>");
    if (kernel != "rbf" && kernel != "ink0") throw ContractViolation("--kernel must be rbf or ink0");
    if (!(rbf_param > 0.0) || !std::isfinite(rbf_param)) throw ContractViolation("--rbf-param must be positive");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ContractViolation("--gamma must be >= 0");
    if (v_matrix != "identity" && !(starts_with(v_matrix, "csv:") && v_matrix.size() > 4))
        throw ContractViolation("--v-matrix must be identity or csv:<path>");
    if (regularization && (!(*regularization >= 0.0) || !std::isfinite(*regularization)))
        throw ContractViolation("--regularization must be >= 0");
}

Json ExperimentConfig::to_json() const {
    Json j;
    j["dataset"] = dataset;
    j["kernel"] = kernel;
    j["rbf_param"] = rbf_param;
    j["gamma"] = gamma;
    j["seed"] = seed;
    j["v_matrix"] = v_matrix;
    j["regularization"] = regularization ? Json(*regularization) : Json(nullptr);
    return j;
}

Json ExperimentReport::deterministic() const {
    Json d = document;
    d.erase("wall_time_ms");
    return d;
}

Dataset load_experiment_dataset(const ExperimentConfig& config) {
    if (config.dataset == "xor") return xor_dataset();
    if (config.dataset == "gauss") {
        MixtureConfig mc;
        mc.seed = config.seed;
        return gaussian_mixture(mc);
    }
    return load_csv(config.dataset.substr(4));
}

KernelSpec experiment_kernel(const ExperimentConfig& config) {
    return config.kernel == "rbf" ? KernelSpec::rbf(config.rbf_param) : KernelSpec::ink_spline0();
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    config.validate();

    const Dataset data = load_experiment_dataset(config);
    FitOptions options;
    options.kernel = experiment_kernel(config);
    options.gamma = config.gamma;
    if (config.v_matrix != "identity") {
        Matrix v = load_matrix_csv(config.v_matrix.substr(4));
        if (v.rows() != data.size() || v.cols() != data.size())
            throw ContractViolation("V-matrix must be " + std::to_string(data.size()) + "x" +
                                    std::to_string(data.size()));
        options.v = std::move(v);
    }
    if (config.regularization) options.solver.regularization_floor = *config.regularization;

    const FitResult result = fit(data, options);
    const FitDiagnostics& diag =
        std::holds_alternative<Model>(result) ? std::get<Model>(result).diagnostics()
                                              : std::get<FitFailure>(result).diagnostics;

    ExperimentReport rep;
    Json& doc = rep.document;
    doc["config"] = config.to_json();
    Json ds;
    ds["size"] = data.size();
    ds["dimension"] = data.dimension();
    ds["positives"] = data.positives();
    ds["p1"] = data.p1();
    doc["dataset"] = std::move(ds);
    doc["gram"] = spectral_json(diag.gram_report);
    doc["solver"] = solver_json(diag);
    doc["feasibility"] = feasibility_json(diag.feasibility);
    if (const Model* model = std::get_if<Model>(&result)) {
        const Metrics m = evaluate(*model, data);
        Json mj;
        mj["alpha"] = vector_json(model->alpha());
        mj["mean_abs_error"] = real_to_json(m.mean_abs_error);
        mj["max_constraint_violation"] = real_to_json(m.max_constraint_violation);
        mj["mean_probability"] = real_to_json(m.mean_probability);
        doc["model"] = std::move(mj);
    } else {
        doc["model"] = nullptr;
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;
    doc["wall_time_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();

    std::ostringstream os;
    os << "dataset      " << config.dataset << " (l=" << data.size() << ", n=" << data.dimension()
       << ", p1=" << format_short(data.p1()) << ")\n"
       << "kernel       " << config.kernel;
    if (config.kernel == "rbf") os << " (param " << format_short(config.rbf_param) << ")";
    os << ", gamma " << format_short(config.gamma) << "\n"
       << "gram         rank " << diag.gram_report.rank << "/" << data.size() << ", condition "
       << format_short(diag.gram_report.condition_number) << " (restricted "
       << format_short(diag.gram_report.restricted_condition) << "), min eigenvalue "
       << format_short(diag.gram_report.min_eigenvalue) << (diag.gram_report.psd ? ", psd" : ", indefinite")
       << "\n"
       << "solver       " << status_name(diag.status) << " after " << diag.iterations << " iterations, max KKT "
       << format_short(diag.kkt.max()) << "\n";
    if (diag.status == QpStatus::singular_kkt)
        os << "             " << deficiency_name(diag.solver.deficiency) << ": " << diag.solver.message << "\n";
    os << "feasibility  " << verdict_name(diag.feasibility.verdict) << " (min violation "
       << format_short(diag.feasibility.min_violation) << ")\n";
    if (const Model* model = std::get_if<Model>(&result)) {
        const Metrics m = evaluate(*model, data);
        os << "model        mean |f - y| " << format_short(m.mean_abs_error) << ", mean f "
           << format_short(m.mean_probability) << "\n";
    }
    rep.summary = os.str();

    if (config.report_path) {
        std::ofstream out(*config.report_path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + config.report_path->string() + "' for writing");
        out << dump_report(doc);
        if (!out) throw IoError("error while writing '" + config.report_path->string() + "'");
    }
    return rep;
}

std::vector<CompareRow> compare(const std::vector<ExperimentConfig>& configs) {
    std::vector<CompareRow> rows;
    rows.reserve(configs.size());
    for (ExperimentConfig cfg : configs) {
        CompareRow row;
        row.dataset = cfg.dataset;
        row.kernel = cfg.kernel;
        cfg.report_path.reset();
        try {
            const ExperimentReport rep = run_experiment(cfg);
            const Json& d = rep.document;
            row.size = d["gram"]["size"].get<std::size_t>();
            row.rank = d["gram"]["rank"].get<std::size_t>();
            const Json& cond = d["gram"]["condition_number"];
            row.condition_number = cond.is_string() ? std::numeric_limits<double>::infinity() : cond.get<double>();
            row.status = d["solver"]["status"].get<std::string>();
            row.feasibility = d["feasibility"]["verdict"].get<std::string>();
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_table(const std::vector<CompareRow>& rows) {
    std::ostringstream os;
    char line[512];
    std::snprintf(line, sizeof line, "%-24s %-6s %-9s %-12s %-20s %s\n", "dataset", "kernel", "rank/l", "condition",
                  "status", "feasibility");
    os << line;
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            std::snprintf(line, sizeof line, "%-24s %-6s error: %s\n", r.dataset.c_str(), r.kernel.c_str(),
                          r.error.c_str());
        } else {
            const std::string rank = std::to_string(r.rank) + "/" + std::to_string(r.size);
            std::snprintf(line, sizeof line, "%-24s %-6s %-9s %-12s %-20s %s\n", r.dataset.c_str(), r.kernel.c_str(),
                          rank.c_str(), format_short(r.condition_number).c_str(), r.status.c_str(),
                          r.feasibility.c_str());
        }
        os << line;
    }
    return os.str();
}

Json table_to_json(const std::vector<CompareRow>& rows) {
    Json arr = Json::array();
    for (const auto& r : rows) {
        Json j;
        j["dataset"] = r.dataset;
        j["kernel"] = r.kernel;
        if (!r.error.empty()) {
            j["error"] = r.error;
        } else {
            j["size"] = r.size;
            j["rank"] = r.rank;
            j["condition_number"] = real_to_json(r.condition_number);
            j["status"] = r.status;
            j["feasibility"] = r.feasibility;
        }
        arr.push_back(std::move(j));
    }
    return arr;
}

std::vector<ExperimentConfig> standard_cells(std::uint64_t seed, double gamma) {
    std::vector<ExperimentConfig> cells;
    for (const char* ds : {"xor", "gauss"})
        for (const char* k : {"rbf", "ink0"}) {
            ExperimentConfig c;
            c.dataset = ds;
            c.kernel = k;
            c.seed = seed;
            c.gamma = gamma;
            cells.push_back(std::move(c));
        }
    return cells;
}

}  // namespace vsvm
