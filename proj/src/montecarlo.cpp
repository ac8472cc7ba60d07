#include "randassign/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

#include "randassign/greedy.hpp"
#include "randassign/solver.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace randassign {

std::string_view statistic_name(Statistic s) {
    switch (s) {
        case Statistic::ExactMax: return "exact-max";
        case Statistic::ExactMin: return "exact-min";
        case Statistic::GreedyTotal: return "greedy-total";
        case Statistic::RowMaxSum: return "row-max-sum";
        case Statistic::IidMax: return "iid-max";
    }
    return "?";
}

std::optional<Statistic> parse_statistic(std::string_view name) {
    if (name == "exact-max") return Statistic::ExactMax;
    if (name == "exact-min") return Statistic::ExactMin;
    if (name == "greedy-total") return Statistic::GreedyTotal;
    if (name == "row-max-sum") return Statistic::RowMaxSum;
    if (name == "iid-max") return Statistic::IidMax;
    return std::nullopt;
}

namespace {

constexpr int kExactSizeGuard = 4096;  // O(n^3) per replicate beyond this is not desk-scale

void validate(const ExperimentConfig& config) {
    if (config.n < 1) throw std::invalid_argument("experiment n must be >= 1");
    if (config.reps < 2) throw std::invalid_argument("experiment reps must be >= 2");
    if (config.workers < 1) throw std::invalid_argument("experiment workers must be >= 1");
    if ((config.statistic == Statistic::ExactMax || config.statistic == Statistic::ExactMin) &&
        config.n > kExactSizeGuard) {
        throw std::length_error("exact statistics are guarded to n <= " +
                                std::to_string(kExactSizeGuard));
    }
}

void fill_matrix(const DistributionSpec& spec, RandomStream& stream, CostMatrix& matrix) {
    const int n = matrix.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) matrix(i, j) = sample(spec, stream);
    }
}

double evaluate_statistic(const ExperimentConfig& config, std::uint64_t replicate) {
    RandomStream stream(config.seed, replicate);
    if (config.statistic == Statistic::IidMax) {
        double best = sample(config.spec, stream);
        for (int i = 1; i < config.n; ++i) best = std::max(best, sample(config.spec, stream));
        return best;
    }
    CostMatrix matrix(config.n);
    fill_matrix(config.spec, stream, matrix);
    switch (config.statistic) {
        case Statistic::ExactMax: return solve(matrix, Sense::Maximize).value;
        case Statistic::ExactMin: return solve(matrix, Sense::Minimize).value;
        case Statistic::GreedyTotal: return greedy_assign(matrix).total;
        case Statistic::RowMaxSum: return row_max_sum(matrix);
        default: break;
    }
    throw std::logic_error("unreachable");
}

// Reduction over per-replicate values, accumulated in replicate-index order.
McEstimate reduce(const std::vector<double>& values) {
    const int reps = static_cast<int>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / reps;
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    const double variance = sq / (reps - 1);
    McEstimate estimate;
    estimate.mean = mean;
    estimate.sample_stddev = std::sqrt(variance);
    estimate.std_error = estimate.sample_stddev / std::sqrt(static_cast<double>(reps));
    estimate.ci95_low = mean - 1.96 * estimate.std_error;
    estimate.ci95_high = mean + 1.96 * estimate.std_error;
    estimate.reps = reps;
    return estimate;
}

struct PairedCell {
    bool exact_max = false, exact_min = false, greedy = false, row_max = false, iid_max = false;
};

PairedCell paired_wants(const std::vector<Statistic>& statistics) {
    PairedCell w;
    for (Statistic s : statistics) {
        switch (s) {
            case Statistic::ExactMax: w.exact_max = true; break;
            case Statistic::ExactMin: w.exact_min = true; break;
            case Statistic::GreedyTotal: w.greedy = true; break;
            case Statistic::RowMaxSum: w.row_max = true; break;
            case Statistic::IidMax: w.iid_max = true; break;
        }
    }
    return w;
}

// Raw slot pointers into the per-statistic value vectors, resolved before
// any parallel region so replicate bodies never touch the map itself.
struct PairedBuffers {
    double* exact_max = nullptr;
    double* exact_min = nullptr;
    double* greedy = nullptr;
    double* row_max = nullptr;
    double* iid_max = nullptr;
};

PairedBuffers resolve_buffers(std::map<Statistic, std::vector<double>>& values) {
    PairedBuffers buffers;
    for (auto& [stat, vals] : values) {
        switch (stat) {
            case Statistic::ExactMax: buffers.exact_max = vals.data(); break;
            case Statistic::ExactMin: buffers.exact_min = vals.data(); break;
            case Statistic::GreedyTotal: buffers.greedy = vals.data(); break;
            case Statistic::RowMaxSum: buffers.row_max = vals.data(); break;
            case Statistic::IidMax: buffers.iid_max = vals.data(); break;
        }
    }
    return buffers;
}

// Evaluates the requested statistics on one shared matrix; returns false if
// the greedy <= exact-max <= row-max-sum sandwich is violated.
bool paired_replicate(const ExperimentConfig& config, const PairedCell& wants,
                      std::uint64_t replicate, const PairedBuffers& out) {
    RandomStream stream(config.seed, replicate);
    CostMatrix matrix(config.n);
    fill_matrix(config.spec, stream, matrix);

    double greedy_total = 0.0, exact_max = 0.0, row_max = 0.0;
    if (wants.greedy) {
        greedy_total = greedy_assign(matrix).total;
        out.greedy[replicate] = greedy_total;
    }
    if (wants.exact_max) {
        exact_max = solve(matrix, Sense::Maximize).value;
        out.exact_max[replicate] = exact_max;
    }
    if (wants.row_max) {
        row_max = row_max_sum(matrix);
        out.row_max[replicate] = row_max;
    }
    if (wants.exact_min) {
        out.exact_min[replicate] = solve(matrix, Sense::Minimize).value;
    }
    if (wants.iid_max) {
        double best = matrix(0, 0);
        for (int j = 1; j < config.n; ++j) best = std::max(best, matrix(0, j));
        out.iid_max[replicate] = best;
    }

    if (wants.greedy && wants.exact_max && greedy_total > exact_max) return false;
    if (wants.exact_max && wants.row_max && exact_max > row_max) return false;
    if (wants.greedy && wants.row_max && greedy_total > row_max) return false;
    return true;
}

std::map<Statistic, McEstimate> reduce_paired(
    const std::map<Statistic, std::vector<double>>& values) {
    std::map<Statistic, McEstimate> estimates;
    for (const auto& [stat, vals] : values) estimates[stat] = reduce(vals);
    return estimates;
}

void validate_paired(const ExperimentConfig& config, const std::vector<Statistic>& statistics) {
    validate(config);
    const PairedCell wants = paired_wants(statistics);
    if ((wants.exact_max || wants.exact_min) && config.n > kExactSizeGuard) {
        throw std::length_error("exact statistics are guarded to n <= " +
                                std::to_string(kExactSizeGuard));
    }
    if (statistics.empty()) throw std::invalid_argument("run_paired needs at least one statistic");
}

}  // namespace

McEstimate run_serial(const ExperimentConfig& config) {
    validate(config);
    std::vector<double> values(config.reps);
    for (int r = 0; r < config.reps; ++r) {
        values[r] = evaluate_statistic(config, static_cast<std::uint64_t>(r));
    }
    return reduce(values);
}

McEstimate run(const ExperimentConfig& config) {
    validate(config);
    std::vector<double> values(config.reps);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(config.workers)
#endif
    for (int r = 0; r < config.reps; ++r) {
        values[r] = evaluate_statistic(config, static_cast<std::uint64_t>(r));
    }
    return reduce(values);
}

std::map<Statistic, McEstimate> run_paired_serial(const ExperimentConfig& config,
                                                  const std::vector<Statistic>& statistics) {
    validate_paired(config, statistics);
    const PairedCell wants = paired_wants(statistics);
    std::map<Statistic, std::vector<double>> values;
    for (Statistic s : statistics) values[s].assign(config.reps, 0.0);
    const PairedBuffers buffers = resolve_buffers(values);
    for (int r = 0; r < config.reps; ++r) {
        if (!paired_replicate(config, wants, static_cast<std::uint64_t>(r), buffers)) {
            throw std::logic_error("sandwich violated at replicate " + std::to_string(r));
        }
    }
    return reduce_paired(values);
}

std::map<Statistic, McEstimate> run_paired(const ExperimentConfig& config,
                                           const std::vector<Statistic>& statistics) {
    validate_paired(config, statistics);
    const PairedCell wants = paired_wants(statistics);
    std::map<Statistic, std::vector<double>> values;
    for (Statistic s : statistics) values[s].assign(config.reps, 0.0);
    const PairedBuffers buffers = resolve_buffers(values);
    std::atomic<int> violation{-1};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(config.workers)
#endif
    for (int r = 0; r < config.reps; ++r) {
        if (!paired_replicate(config, wants, static_cast<std::uint64_t>(r), buffers)) {
            int expected = -1;
            violation.compare_exchange_strong(expected, r);
        }
    }
    if (violation.load() >= 0) {
        throw std::logic_error("sandwich violated at replicate " + std::to_string(violation.load()));
    }
    return reduce_paired(values);
}

std::vector<ConvergenceRow> convergence_scan(const DistributionSpec& spec,
                                             const std::vector<ScanPoint>& points,
                                             std::uint64_t seed, int workers) {
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].n < points[i - 1].n) {
            throw std::invalid_argument("convergence_scan sizes must be sorted ascending");
        }
    }
    std::vector<ConvergenceRow> rows;
    rows.reserve(points.size());
    for (const ScanPoint& point : points) {
        ExperimentConfig config;
        config.spec = spec;
        config.n = point.n;
        config.reps = point.reps;
        config.statistic = Statistic::ExactMax;
        config.seed = derive_seed(seed, static_cast<std::uint64_t>(point.n));
        config.workers = workers;

        ConvergenceRow row;
        row.n = point.n;
        row.estimate = run(config);
        row.prediction = predict(spec, point.n);
        row.ratio = row.estimate.mean / row.prediction.em_assignment_predicted;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ConvergenceRow> convergence_scan(const DistributionSpec& spec,
                                             const std::vector<int>& ns, int reps_per_n,
                                             std::uint64_t seed, int workers) {
    std::vector<ScanPoint> points;
    points.reserve(ns.size());
    for (int n : ns) points.push_back({n, reps_per_n});
    return convergence_scan(spec, points, seed, workers);
}

}  // namespace randassign
