#ifndef NSUM_SIMULATE_HPP_
#define NSUM_SIMULATE_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nsum/bounds.hpp"
#include "nsum/types.hpp"

namespace nsum {

struct TopologySpec {
    enum class Kind { er, scale_free, explicit_pmf, ingested };
    Kind kind = Kind::er;
    double p = 0.0;                        // er
    double gamma = 0.0;                    // scale_free
    std::map<std::size_t, double> pmf;     // explicit_pmf
    std::shared_ptr<const Instance> instance;  // ingested: fixed network
};

enum class BoundFamily {
    mor_generic,      // F(beta, m*rho)
    ros_generic,      // corollary, same expression
    ros_empirical,    // sum over empirical R_S pmf
    er_ros,           // Chernoff split with mu = m*p*(n-1), minimized delta
    sf_ros,           // scale-free variant
};

std::string bound_family_name(BoundFamily f);

struct ExperimentConfig {
    TopologySpec topology;
    std::size_t n = 0;
    double rho = 0.0;
    std::vector<std::size_t> sample_sizes;
    std::vector<double> epsilons;
    std::size_t instances_per_point = 100;  // the 100 x 200 protocol defaults
    std::size_t samples_per_instance = 200;
    std::uint64_t master_seed = 0;
    std::size_t rs_pmf_trials = 10'000;  // realizations behind ros_empirical
    std::size_t threads = 0;             // 0 = hardware concurrency
    std::vector<BoundFamily> bound_families;
};

struct TrialRow {
    std::size_t grid_index = 0;
    std::size_t instance_index = 0;
    std::size_t sample_index = 0;
    std::size_t sample_size = 0;
    double est_mor = 0.0;
    double est_ros = 0.0;
    double err_mor = 0.0;
    double err_ros = 0.0;
};

struct TrialResults {
    ExperimentConfig config;
    double realized_rho = 0.0;
    std::vector<TrialRow> rows;  // sorted by (grid, instance, sample)
    // One empirical R_S pmf per grid point, pooled across that point's
    // instances (rs_pmf_trials realizations total).
    std::vector<std::map<std::uint64_t, double>> rs_pmfs;
};

// Generates instances per grid point (fresh seed streams derived from the
// master seed), draws samples, and records estimates and errors. Parallel
// over instances; byte-identical output regardless of thread count.
TrialResults run_experiment(const ExperimentConfig& config);

struct TailPoint {
    std::size_t sample_size = 0;
    double beta = 0.0;
    double p_emp = 0.0;
    double se = 0.0;  // sqrt(p(1-p)/N)
    std::size_t trials = 0;
};

std::vector<TailPoint> tail_probability(const TrialResults& results,
                                        double beta, Method which);

// Bound value at one grid point for the configured topology.
BoundResult evaluate_bound(const TrialResults& results, BoundFamily family,
                           std::size_t grid_index, double beta);

struct FiveNumber {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

// Type-7 quantiles (linear interpolation).
FiveNumber five_number_summary(std::span<const double> values);

struct BoxplotPoint {
    std::size_t sample_size = 0;
    FiveNumber mor;
    FiveNumber ros;
};

std::vector<BoxplotPoint> boxplot_stats(const TrialResults& results);

enum class TailSource { empirical, bound };

struct MinSampleResult {
    bool found = false;
    std::size_t sample_size = 0;   // smallest size meeting the target
    std::size_t largest_tried = 0; // reported when not found
    bool noisy = false;            // empirical tails were not monotone
};

// Smallest sample size whose tail probability is <= target. Empirical source
// scans the grid; bound sources refine between grid points by bisection
// (the bounds are monotone in m).
MinSampleResult min_sample_for_target(const TrialResults& results, double beta,
                                      double target_prob, TailSource source,
                                      Method which = Method::MoR,
                                      std::optional<BoundFamily> family = {});

// CSV emission, canonical ordering, deterministic bytes.
std::string trials_csv(const TrialResults& results);
std::string tails_csv(const TrialResults& results);
std::string boxplot_csv(const TrialResults& results);
std::string minsize_csv(const TrialResults& results, double target_prob);

// Flat key/value config file with [section] headers; unknown keys rejected.
ExperimentConfig parse_config_file(const std::string& path);

std::uint64_t config_hash(const ExperimentConfig& config);

}  // namespace nsum

#endif  // NSUM_SIMULATE_HPP_
