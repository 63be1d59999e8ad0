#ifndef NSUM_ESTIMATORS_HPP_
#define NSUM_ESTIMATORS_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "nsum/types.hpp"

namespace nsum {

struct Sample {
    const Instance* instance = nullptr;
    std::vector<NodeId> ids;  // distinct
    std::size_t size() const { return ids.size(); }
};

// Uniform m-subset of the node set, deterministic in the seed.
Sample draw_sample(const Instance& instance, std::size_t m, std::uint64_t seed);

// ARD answers for the sampled nodes: R_v = in-degree, C_v = hidden
// in-neighbors. No self-contribution is possible (the graph has no self-loops).
ArdSet extract_ard(const Instance& instance, const Sample& sample);

// Zero-degree respondents violate the R_v >= 1 assumption; `reject` throws,
// `drop` excludes them from the MoR mean and both RoS sums.
enum class ZeroDegreePolicy { reject, drop };

// (1/m) * sum C_v / R_v
PrevalenceEstimate estimate_mor(const ArdSet& ard,
                                ZeroDegreePolicy policy = ZeroDegreePolicy::reject);

// (sum C_v) / (sum R_v); sums accumulate in integers.
PrevalenceEstimate estimate_ros(const ArdSet& ard,
                                ZeroDegreePolicy policy = ZeroDegreePolicy::reject);

// Full-sampling estimator C / (n * sqrt(Delta * delta)) with Delta/delta the
// max/min out-degree, supplied by the caller for general digraphs.
PrevalenceEstimate estimate_fs(const ArdSet& ard_full, std::size_t n,
                               std::uint64_t delta_min, std::uint64_t delta_max);

// Bidirectional networks only: out-degrees equal in-degrees, so Delta and
// delta are read off the ARD itself.
PrevalenceEstimate estimate_fs_bidirectional(const ArdSet& ard_full,
                                             std::size_t n);

// Normalized histogram of R_S = sum of sampled in-degrees over `trials`
// independent samples of size m. Deterministic in the seed.
std::map<std::uint64_t, double> empirical_rs_pmf(const Instance& instance,
                                                 std::size_t m,
                                                 std::size_t trials,
                                                 std::uint64_t seed);

// Per-node (R_v, C_v) for the whole instance, computed once. Lets Monte-Carlo
// loops turn a sample into sums without walking adjacency lists.
struct ArdTable {
    std::vector<std::uint64_t> reach;
    std::vector<std::uint64_t> cases;
};

ArdTable precompute_ard(const Instance& instance);

}  // namespace nsum

#endif  // NSUM_ESTIMATORS_HPP_
