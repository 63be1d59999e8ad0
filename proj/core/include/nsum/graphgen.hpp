#ifndef NSUM_GRAPHGEN_HPP_
#define NSUM_GRAPHGEN_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsum/types.hpp"

namespace nsum {

enum class HiddenPlacement {
    first_ids,       // {0..h-1}; distribution-equivalent to any fixed placement
    uniform_random,  // h ids chosen uniformly (dataset parity)
    explicit_set,
};

struct GeneratorConfig {
    std::size_t n = 0;
    DegreeDistribution degrees;
    HiddenPlacement placement = HiddenPlacement::first_ids;
    std::size_t hidden_count = 0;             // for first_ids / uniform_random
    std::vector<NodeId> hidden_ids;           // for explicit_set
    std::uint64_t seed = 0;
};

// Two-step random-network construction: each node independently draws an
// in-degree from the distribution, then picks that many distinct in-neighbors
// uniformly from the other nodes. Pure function of the config (seed included).
Instance generate(const GeneratorConfig& config);

// The indistinguishable pair: a k-clique, one pendant per clique node, and a
// hub adjacent to the whole clique. I1 hides the hub, I2 hides the pendants;
// both produce the same ARD multiset, so no estimator can tell them apart.
std::pair<Instance, Instance> build_adversarial_pair(std::size_t k);

enum class StarVariant { hub_hidden, leaves_hidden };

// Bidirectional (n-1)-star. hub_hidden: H = {center}; leaves_hidden:
// H = everything else.
Instance build_star_instance(std::size_t n, StarVariant variant);

// n/2-clique with one pendant per clique node and H = pendants (rho = 1/2).
// Unlike the adversarial pair there is no hub, so the clique degree is n/2.
Instance build_clique_pendant(std::size_t n);

// Adds the reverse of every edge, making the instance bidirectional.
Instance symmetrized(const Instance& instance);

// Edge-list text ("u v" per directed edge) plus a JSON sidecar
// {n, hidden, bidirectional} at path + ".json".
void write_edge_list(const Instance& instance, const std::string& path);
Instance read_edge_list(const std::string& path);

}  // namespace nsum

#endif  // NSUM_GRAPHGEN_HPP_
