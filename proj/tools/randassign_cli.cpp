// Command-line front end: theoretical predictions, Monte Carlo simulation,
// per-distribution tables, minimum-side checks, and exact solves of CSV
// matrices. Emits CSV or JSON-lines for plotting.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "randassign/asymptotics.hpp"
#include "randassign/distributions.hpp"
#include "randassign/montecarlo.hpp"
#include "randassign/output.hpp"
#include "randassign/solver.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace randassign;

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

int default_workers() {
    if (const char* env = std::getenv("RANDASSIGN_WORKERS")) {
        char* end = nullptr;
        long value = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || value < 1) {
            throw std::invalid_argument(std::string("RANDASSIGN_WORKERS must be a positive "
                                                    "integer, got '") + env + "'");
        }
        return static_cast<int>(value);
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

OutputFormat parse_format(const std::string& format) {
    return format == "jsonl" ? OutputFormat::Jsonl : OutputFormat::Csv;
}

int write_output(const std::string& out_path, const std::vector<OutputRecord>& records,
                 OutputFormat format) {
    if (out_path == "-") {
        write_records(std::cout, records, format);
        std::cout.flush();
        return std::cout ? 0 : kExitIo;
    }
    std::ofstream file(out_path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!file) {
        std::cerr << "cannot open output file: " << out_path << "\n";
        return kExitIo;
    }
    write_records(file, records, format);
    file.flush();
    if (!file) {
        std::cerr << "write failed: " << out_path << "\n";
        return kExitIo;
    }
    return 0;
}

OutputRecord prediction_record(const std::string& dist, const PredictionRecord& prediction) {
    OutputRecord record;
    record.add_text("dist", dist);
    record.add_int("n", prediction.n);
    record.add_real("g_of_inv_n", prediction.g_of_inv_n);
    record.add_real("em_n_predicted", prediction.em_n_predicted);
    record.add_real("em_assignment_predicted", prediction.em_assignment_predicted);
    record.add_optional_real("exact_em_n", prediction.exact_em_n);
    record.add_text("notes", prediction.notes);
    return record;
}

int cmd_predict(const std::string& dist, int n, const std::string& out_path,
                const std::string& format) {
    const DistributionSpec spec = parse_distribution(dist);
    const PredictionRecord prediction = predict(spec, n);
    return write_output(out_path, {prediction_record(dist, prediction)}, parse_format(format));
}

int cmd_simulate(const std::string& dist, int n, int reps, const std::string& stat,
                 std::uint64_t seed, int workers, const std::string& out_path,
                 const std::string& format) {
    ExperimentConfig config;
    config.spec = parse_distribution(dist);
    config.n = n;
    config.reps = reps;
    const auto statistic = parse_statistic(stat);
    if (!statistic) {
        throw std::invalid_argument("unknown statistic '" + stat +
                                    "' (expected exact-max, exact-min, greedy-total, "
                                    "row-max-sum, iid-max)");
    }
    config.statistic = *statistic;
    config.seed = seed;
    config.workers = workers;

    const McEstimate estimate = run(config);
    OutputRecord record;
    record.add_int("n", config.n);
    record.add_text("stat", std::string(statistic_name(config.statistic)));
    record.add_real("mean", estimate.mean);
    record.add_real("stddev", estimate.sample_stddev);
    record.add_real("stderr", estimate.std_error);
    record.add_real("ci95_low", estimate.ci95_low);
    record.add_real("ci95_high", estimate.ci95_high);
    record.add_int("reps", estimate.reps);
    record.add_uint("seed", seed);
    return write_output(out_path, {record}, parse_format(format));
}

int cmd_table(const std::vector<int>& ns, int reps, std::uint64_t seed, double poisson_lambda,
              int workers, const std::string& out_path, const std::string& format) {
    if (ns.empty()) throw std::invalid_argument("table needs at least one n");
    const std::vector<DistributionSpec> specs = {
        DistributionSpec::standard_normal(),   DistributionSpec::exponential(1.0),
        DistributionSpec::gumbel(0.0, 1.0),    DistributionSpec::laplace(0.0, 1.0),
        DistributionSpec::poisson(poisson_lambda),
    };

    std::vector<OutputRecord> records;
    for (std::size_t d = 0; d < specs.size(); ++d) {
        const DistributionSpec& spec = specs[d];
        for (int n : ns) {
            const PredictionRecord prediction = predict(spec, n);

            ExperimentConfig config;
            config.spec = spec;
            config.n = n;
            config.reps = reps;
            config.statistic = Statistic::ExactMax;
            config.seed = derive_seed(derive_seed(seed, d), static_cast<std::uint64_t>(n));
            config.workers = workers;
            const McEstimate estimate = run(config);

            OutputRecord record;
            record.add_text("dist", spec.name());
            record.add_int("n", n);
            record.add_real("g_of_inv_n", prediction.g_of_inv_n);
            record.add_real("predicted", prediction.em_assignment_predicted);
            record.add_real("mc_mean", estimate.mean);
            record.add_real("mc_stderr", estimate.std_error);
            record.add_real("ratio", estimate.mean / prediction.em_assignment_predicted);
            record.add_int("reps", estimate.reps);
            record.add_uint("seed", seed);
            record.add_text("notes", prediction.notes);
            records.push_back(std::move(record));
        }
    }
    return write_output(out_path, records, parse_format(format));
}

int cmd_parisi(int n_max, int reps, std::uint64_t seed, int workers,
               const std::string& out_path, const std::string& format) {
    if (n_max < 1 || n_max > 64) {
        throw std::invalid_argument("parisi needs 1 <= n-max <= 64");
    }

    std::vector<OutputRecord> records;
    auto emit = [&](const DistributionSpec& spec, int n, double target, const std::string& notes) {
        ExperimentConfig config;
        config.spec = spec;
        config.n = n;
        config.reps = reps;
        config.statistic = Statistic::ExactMin;
        config.seed = derive_seed(seed, static_cast<std::uint64_t>(n) +
                                            (spec.kind == DistKind::Uniform01 ? 1000 : 0));
        config.workers = workers;
        const McEstimate estimate = run(config);

        OutputRecord record;
        record.add_text("dist", spec.name());
        record.add_int("n", n);
        record.add_int("reps", estimate.reps);
        record.add_real("mc_mean", estimate.mean);
        record.add_real("mc_stderr", estimate.std_error);
        record.add_real("target", target);
        record.add_real("diff_stderr_units", (estimate.mean - target) / estimate.std_error);
        record.add_uint("seed", seed);
        record.add_text("notes", notes);
        records.push_back(std::move(record));
    };

    const DistributionSpec exp1 = DistributionSpec::exponential(1.0);
    for (int n = 1; n <= n_max; ++n) emit(exp1, n, parisi_sum(n), "");
    emit(DistributionSpec::uniform01(), n_max, mezard_parisi_expansion(n_max),
         n_max < 10 ? "pre-asymptotic" : "");
    return write_output(out_path, records, parse_format(format));
}

int cmd_solve(const std::string& matrix_path, const std::string& sense_name,
              const std::string& out_path, const std::string& format) {
    const Sense sense = sense_name == "min" ? Sense::Minimize : Sense::Maximize;
    const CostMatrix matrix = load_matrix_csv_file(matrix_path);
    const AssignmentResult result = solve(matrix, sense);

    std::string permutation;
    for (std::size_t i = 0; i < result.permutation.mapping.size(); ++i) {
        if (i) permutation += ' ';
        permutation += std::to_string(result.permutation.mapping[i] + 1);  // 1-based outside
    }
    OutputRecord record;
    record.add_int("n", matrix.size());
    record.add_text("sense", sense_name);
    record.add_real("value", result.value);
    record.add_text("permutation", permutation);
    return write_output(out_path, {record}, parse_format(format));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random assignment process: exact solver, greedy bound, tail-quantile "
                 "predictions and Monte Carlo verification"};
    app.require_subcommand(1);

    std::string dist = "normal", stat = "exact-max", out_path = "-", format = "csv";
    std::string matrix_path, sense_name = "max";
    int n = 2, reps = 1000, n_max = 8, workers = 0;
    double poisson_lambda = 4.0;
    std::uint64_t seed = 1;
    std::vector<int> ns;

    auto add_output_flags = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output path, '-' for stdout")->capture_default_str();
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "jsonl"}))
            ->capture_default_str();
    };
    auto add_workers_flag = [&](CLI::App* cmd) {
        cmd->add_option("--workers", workers,
                        "worker threads (default: RANDASSIGN_WORKERS or all cores)");
    };

    CLI::App* predict_cmd = app.add_subcommand("predict", "theoretical g(1/n) and n*g(1/n)");
    predict_cmd->add_option("--dist", dist, "distribution spec")->required();
    predict_cmd->add_option("--n", n, "matrix size")->required();
    add_output_flags(predict_cmd);

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo estimate of one statistic");
    simulate_cmd->add_option("--dist", dist, "distribution spec")->required();
    simulate_cmd->add_option("--n", n, "matrix size")->required();
    simulate_cmd->add_option("--reps", reps, "replications")->required();
    simulate_cmd->add_option("--stat", stat, "statistic")->required();
    simulate_cmd->add_option("--seed", seed, "base seed")->capture_default_str();
    add_workers_flag(simulate_cmd);
    add_output_flags(simulate_cmd);

    CLI::App* table_cmd = app.add_subcommand(
        "table", "predicted vs simulated assignment maxima across the standard laws");
    table_cmd->add_option("--ns", ns, "matrix sizes (comma separated)")
        ->required()
        ->delimiter(',');
    table_cmd->add_option("--reps", reps, "replications per cell")->required();
    table_cmd->add_option("--seed", seed, "base seed")->capture_default_str();
    table_cmd->add_option("--poisson-lambda", poisson_lambda, "lambda for the poisson row")
        ->capture_default_str();
    add_workers_flag(table_cmd);
    add_output_flags(table_cmd);

    CLI::App* parisi_cmd = app.add_subcommand(
        "parisi", "minimum-side checks: sum 1/k^2 under exp(1), large-n expansion under uniform");
    parisi_cmd->add_option("--n-max", n_max, "largest matrix size (<= 64)")->required();
    parisi_cmd->add_option("--reps", reps, "replications per n")->required();
    parisi_cmd->add_option("--seed", seed, "base seed")->capture_default_str();
    add_workers_flag(parisi_cmd);
    add_output_flags(parisi_cmd);

    CLI::App* solve_cmd = app.add_subcommand("solve", "exact assignment on a CSV matrix");
    solve_cmd->add_option("--matrix", matrix_path, "CSV file: n rows of n decimals")->required();
    solve_cmd->add_option("--sense", sense_name, "max or min")
        ->check(CLI::IsMember({"max", "min"}))
        ->capture_default_str();
    add_output_flags(solve_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }

    try {
        if (workers == 0) workers = default_workers();
        if (workers < 1) throw std::invalid_argument("workers must be >= 1");

        if (predict_cmd->parsed()) return cmd_predict(dist, n, out_path, format);
        if (simulate_cmd->parsed())
            return cmd_simulate(dist, n, reps, stat, seed, workers, out_path, format);
        if (table_cmd->parsed())
            return cmd_table(ns, reps, seed, poisson_lambda, workers, out_path, format);
        if (parisi_cmd->parsed())
            return cmd_parisi(n_max, reps, seed, workers, out_path, format);
        if (solve_cmd->parsed()) return cmd_solve(matrix_path, sense_name, out_path, format);
        return kExitValidation;
    } catch (const std::ios_base::failure& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }
}
