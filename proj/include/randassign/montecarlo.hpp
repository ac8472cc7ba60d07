#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "randassign/asymptotics.hpp"
#include "randassign/distributions.hpp"

namespace randassign {

/// Per-replicate statistic evaluated on an n x n matrix of i.i.d. entries
/// (IidMax draws just n variates).
enum class Statistic { ExactMax, ExactMin, GreedyTotal, RowMaxSum, IidMax };

std::string_view statistic_name(Statistic s);
std::optional<Statistic> parse_statistic(std::string_view name);

struct ExperimentConfig {
    DistributionSpec spec;
    int n = 1;
    int reps = 2;
    Statistic statistic = Statistic::ExactMax;
    std::uint64_t seed = 0;
    int workers = 1;  // advisory thread count; results do not depend on it
};

/// Monte Carlo summary. ci95 bounds are mean -/+ 1.96 * standard error.
struct McEstimate {
    double mean = 0.0;
    double sample_stddev = 0.0;
    double std_error = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    int reps = 0;
};

/// Runs the experiment. Replicate r draws its matrix from the stream keyed
/// by (seed, r) and the per-replicate values are reduced in replicate order,
/// so the estimate is bit-identical for any worker count. Replicates execute
/// in parallel (OpenMP) when workers > 1.
McEstimate run(const ExperimentConfig& config);

/// Serial reference implementation of run(): same streams, same reduction,
/// no parallel machinery. Kept for testing; must match run() bit for bit.
McEstimate run_serial(const ExperimentConfig& config);

/// Evaluates several statistics on the same matrix per replicate (common
/// random numbers). Whenever the greedy total, exact maximum and row-max sum
/// are jointly available for a replicate, the sandwich
///   greedy <= exact max <= row-max sum
/// is asserted exactly; a violation throws std::logic_error. In paired mode
/// IidMax is the maximum of the first matrix row.
std::map<Statistic, McEstimate> run_paired(const ExperimentConfig& config,
                                           const std::vector<Statistic>& statistics);

/// Serial reference for run_paired(); bit-identical by the same contract.
std::map<Statistic, McEstimate> run_paired_serial(const ExperimentConfig& config,
                                                  const std::vector<Statistic>& statistics);

struct ScanPoint {
    int n = 0;
    int reps = 0;
};

struct ConvergenceRow {
    int n = 0;
    McEstimate estimate;           // ExactMax
    PredictionRecord prediction;   // predict(spec, n)
    double ratio = 0.0;            // estimate.mean / (n * g(1/n))
};

/// One ExactMax estimate per point, against predict(). Deterministic per
/// (seed, n): each point runs under derive_seed(seed, n). Points must be
/// sorted ascending in n; an empty list yields an empty result.
std::vector<ConvergenceRow> convergence_scan(const DistributionSpec& spec,
                                             const std::vector<ScanPoint>& points,
                                             std::uint64_t seed, int workers = 1);

/// Same, with a uniform replicate count per n.
std::vector<ConvergenceRow> convergence_scan(const DistributionSpec& spec,
                                             const std::vector<int>& ns, int reps_per_n,
                                             std::uint64_t seed, int workers = 1);

}  // namespace randassign
