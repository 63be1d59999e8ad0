#ifndef NSUM_TYPES_HPP_
#define NSUM_TYPES_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nsum/rng.hpp"

namespace nsum {

using NodeId = std::uint32_t;

// A directed graph together with a hidden node set. Immutable after
// construction; all invariants (no self loops, no duplicate in-neighbors,
// hidden ids in range) are checked by the constructor.
class Instance {
  public:
    Instance(std::size_t n, std::vector<std::vector<NodeId>> in_neighbors,
             std::vector<NodeId> hidden);

    std::size_t size() const { return n_; }
    std::size_t hidden_count() const { return h_; }
    double prevalence() const {
        return static_cast<double>(h_) / static_cast<double>(n_);
    }
    bool is_hidden(NodeId v) const { return hidden_mask_[v] != 0; }
    const std::vector<NodeId>& in_neighbors(NodeId v) const { return adj_[v]; }
    std::size_t in_degree(NodeId v) const { return adj_[v].size(); }
    // True iff (u,v) in E <=> (v,u) in E for every edge.
    bool bidirectional() const { return bidirectional_; }
    std::size_t edge_count() const { return edges_; }
    std::vector<NodeId> hidden_ids() const;

  private:
    std::size_t n_;
    std::vector<std::vector<NodeId>> adj_;  // sorted in-neighbor lists
    std::vector<std::uint8_t> hidden_mask_;
    std::size_t h_;
    std::size_t edges_;
    bool bidirectional_;
};

// Degree pmf over {1..n-1}. Zero in-degree is excluded by construction
// (Assumption: every node has at least one in-neighbor).
class DegreeDistribution {
  public:
    enum class Kind { explicit_pmf, er_truncated, scale_free };

    // Normalized copy of an arbitrary pmf with support in {1..n-1}.
    static DegreeDistribution explicit_pmf(
        std::size_t n, const std::map<std::size_t, double>& pmf);
    // Binomial(n-1, p) conditioned on k >= 1, the zero mass redistributed
    // proportionally.
    static DegreeDistribution er_truncated(std::size_t n, double p);
    // pmf(k) = nu * k^-gamma, nu = 1 / sum_{k=1}^{n-1} k^-gamma.
    static DegreeDistribution scale_free(std::size_t n, double gamma);

    std::size_t n() const { return n_; }
    Kind kind() const { return kind_; }
    double param() const { return param_; }  // p or gamma; NaN for explicit
    double pmf(std::size_t k) const;
    double mean() const;
    const std::vector<std::size_t>& support() const { return support_; }
    const std::vector<double>& probabilities() const { return prob_; }

    // Inverse-CDF draw; deterministic in the RNG stream.
    std::size_t sample(Rng& rng) const;

    // Empty distribution; usable only as a placeholder before assignment.
    DegreeDistribution() = default;

  private:
    void finalize();

    std::size_t n_ = 0;
    Kind kind_ = Kind::explicit_pmf;
    double param_ = 0.0;
    std::vector<std::size_t> support_;  // ascending
    std::vector<double> prob_;
    std::vector<double> cdf_;
};

// One respondent's answers: in-degree and hidden in-neighbor count.
struct ArdRecord {
    NodeId node;
    std::uint64_t reach;  // R_v
    std::uint64_t cases;  // C_v, 0 <= C_v <= R_v
};

struct ArdSet {
    std::vector<ArdRecord> records;
    std::size_t sample_size() const { return records.size(); }
};

std::string ard_to_csv(const ArdSet& ard);
ArdSet ard_from_csv(const std::string& csv);

enum class Method { MoR, RoS, FS };

const char* method_name(Method m);

struct PrevalenceEstimate {
    double value;
    Method method;
};

// Multiplicative error factors, all >= 1. +infinity only when exactly one of
// estimate / rho is zero.
struct ErrorReport {
    double upper;     // E+ = max(1, estimate / rho)
    double lower;     // E- = max(1, rho / estimate)
    double combined;  // max(upper, lower)
};

// 0/0 returns (1,1,1): truth and estimate agree that nobody is hidden.
// Division by zero saturates to +infinity. Negative inputs throw.
ErrorReport compute_errors(double estimate, double rho);

}  // namespace nsum

#endif  // NSUM_TYPES_HPP_
