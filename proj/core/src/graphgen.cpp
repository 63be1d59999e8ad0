#include "nsum/graphgen.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "nsum/rng.hpp"

namespace nsum {

namespace {

// Draws k distinct ids from {0..n-1} \ {self}. Rejection with an epoch-stamped
// scratch array for small k, partial Fisher-Yates otherwise.
class NeighborSampler {
  public:
    explicit NeighborSampler(std::size_t n)
        : n_(n), stamp_(n, 0), epoch_(0), pool_(n) {
        std::iota(pool_.begin(), pool_.end(), NodeId{0});
    }

    void draw(NodeId self, std::size_t k, Rng& rng, std::vector<NodeId>& out) {
        out.clear();
        if (k > n_ - 1)
            throw std::invalid_argument("generate: degree exceeds n-1");
        if (k * 4 <= n_) {
            ++epoch_;
            stamp_[self] = epoch_;
            while (out.size() < k) {
                NodeId cand = static_cast<NodeId>(rng.uniform_below(n_));
                if (stamp_[cand] == epoch_) continue;
                stamp_[cand] = epoch_;
                out.push_back(cand);
            }
        } else {
            // Partial Fisher-Yates over the pool with self swapped to the end.
            std::swap(pool_[self], pool_[n_ - 1]);
            const std::size_t avail = n_ - 1;
            for (std::size_t i = 0; i < k; ++i) {
                std::size_t j = i + rng.uniform_below(avail - i);
                std::swap(pool_[i], pool_[j]);
                out.push_back(pool_[i]);
            }
            std::iota(pool_.begin(), pool_.end(), NodeId{0});
        }
    }

  private:
    std::size_t n_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t epoch_;
    std::vector<NodeId> pool_;
};

std::vector<NodeId> pick_hidden(const GeneratorConfig& config, Rng& rng) {
    switch (config.placement) {
        case HiddenPlacement::explicit_set:
            return config.hidden_ids;
        case HiddenPlacement::first_ids: {
            std::vector<NodeId> ids(config.hidden_count);
            std::iota(ids.begin(), ids.end(), NodeId{0});
            return ids;
        }
        case HiddenPlacement::uniform_random: {
            // Floyd's algorithm: uniform h-subset of {0..n-1}.
            std::vector<NodeId> ids;
            std::vector<std::uint8_t> taken(config.n, 0);
            for (std::size_t i = config.n - config.hidden_count; i < config.n;
                 ++i) {
                std::size_t t = rng.uniform_below(i + 1);
                if (taken[t]) t = i;
                taken[t] = 1;
                ids.push_back(static_cast<NodeId>(t));
            }
            return ids;
        }
    }
    throw std::invalid_argument("generate: unknown hidden placement");
}

}  // namespace

Instance generate(const GeneratorConfig& config) {
    const std::size_t n = config.n;
    if (n < 2) throw std::invalid_argument("generate: n must be >= 2");
    if (config.degrees.n() != n)
        throw std::invalid_argument("generate: degree distribution n mismatch");
    if (config.placement != HiddenPlacement::explicit_set &&
        config.hidden_count > n)
        throw std::invalid_argument("generate: h > n");

    Rng rng(derive_seed(config.seed, 0xabcdULL));
    std::vector<NodeId> hidden = pick_hidden(config, rng);

    std::vector<std::vector<NodeId>> adj(n);
    NeighborSampler sampler(n);
    for (NodeId v = 0; v < n; ++v) {
        std::size_t k = config.degrees.sample(rng);
        sampler.draw(v, k, rng, adj[v]);
    }
    return Instance(n, std::move(adj), std::move(hidden));
}

std::pair<Instance, Instance> build_adversarial_pair(std::size_t k) {
    if (k < 1) throw std::invalid_argument("build_adversarial_pair: k >= 1");
    const std::size_t n = 2 * k + 1;
    // Layout: clique nodes 0..k-1, pendants k..2k-1 (pendant k+i attached to
    // clique node i), hub s = 2k.
    std::vector<std::vector<NodeId>> adj(n);
    const NodeId hub = static_cast<NodeId>(2 * k);
    for (std::size_t i = 0; i < k; ++i) {
        auto& nb = adj[i];
        for (std::size_t j = 0; j < k; ++j)
            if (j != i) nb.push_back(static_cast<NodeId>(j));
        nb.push_back(static_cast<NodeId>(k + i));
        nb.push_back(hub);
        adj[k + i].push_back(static_cast<NodeId>(i));
        adj[hub].push_back(static_cast<NodeId>(i));
    }
    std::vector<NodeId> h1 = {hub};
    std::vector<NodeId> h2;
    for (std::size_t i = 0; i < k; ++i) h2.push_back(static_cast<NodeId>(k + i));
    auto adj2 = adj;
    return {Instance(n, std::move(adj), std::move(h1)),
            Instance(n, std::move(adj2), std::move(h2))};
}

Instance build_star_instance(std::size_t n, StarVariant variant) {
    if (n < 2) throw std::invalid_argument("build_star_instance: n >= 2");
    // Center is node 0.
    std::vector<std::vector<NodeId>> adj(n);
    for (NodeId v = 1; v < n; ++v) {
        adj[0].push_back(v);
        adj[v].push_back(0);
    }
    std::vector<NodeId> hidden;
    if (variant == StarVariant::hub_hidden) {
        hidden.push_back(0);
    } else {
        for (NodeId v = 1; v < n; ++v) hidden.push_back(v);
    }
    return Instance(n, std::move(adj), std::move(hidden));
}

Instance build_clique_pendant(std::size_t n) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("build_clique_pendant: n must be even, >= 4");
    const std::size_t half = n / 2;
    // Clique nodes 0..half-1, pendant half+i attached to clique node i.
    std::vector<std::vector<NodeId>> adj(n);
    for (std::size_t i = 0; i < half; ++i) {
        auto& nb = adj[i];
        for (std::size_t j = 0; j < half; ++j)
            if (j != i) nb.push_back(static_cast<NodeId>(j));
        nb.push_back(static_cast<NodeId>(half + i));
        adj[half + i].push_back(static_cast<NodeId>(i));
    }
    std::vector<NodeId> hidden;
    for (std::size_t i = 0; i < half; ++i)
        hidden.push_back(static_cast<NodeId>(half + i));
    return Instance(n, std::move(adj), std::move(hidden));
}

Instance symmetrized(const Instance& instance) {
    const std::size_t n = instance.size();
    std::vector<std::vector<NodeId>> adj(n);
    for (NodeId v = 0; v < n; ++v)
        adj[v].assign(instance.in_neighbors(v).begin(),
                      instance.in_neighbors(v).end());
    for (NodeId v = 0; v < n; ++v) {
        for (NodeId u : instance.in_neighbors(v)) {
            // (u,v) present; ensure (v,u) too.
            auto& back = adj[u];
            if (!std::binary_search(instance.in_neighbors(u).begin(),
                                    instance.in_neighbors(u).end(), v))
                back.push_back(v);
        }
    }
    for (auto& nb : adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return Instance(n, std::move(adj), instance.hidden_ids());
}

void write_edge_list(const Instance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_edge_list: cannot open " + path);
    for (NodeId v = 0; v < instance.size(); ++v)
        for (NodeId u : instance.in_neighbors(v)) out << u << ' ' << v << '\n';
    out.close();

    nlohmann::json sidecar;
    sidecar["n"] = instance.size();
    sidecar["hidden"] = instance.hidden_ids();
    sidecar["bidirectional"] = instance.bidirectional();
    std::ofstream meta(path + ".json");
    if (!meta)
        throw std::runtime_error("write_edge_list: cannot open " + path + ".json");
    meta << sidecar.dump(2) << '\n';
}

Instance read_edge_list(const std::string& path) {
    std::ifstream meta(path + ".json");
    if (!meta)
        throw std::runtime_error("read_edge_list: missing sidecar " + path + ".json");
    nlohmann::json sidecar = nlohmann::json::parse(meta);
    const std::size_t n = sidecar.at("n").get<std::size_t>();
    std::vector<NodeId> hidden =
        sidecar.at("hidden").get<std::vector<NodeId>>();

    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_edge_list: cannot open " + path);
    std::vector<std::vector<NodeId>> adj(n);
    std::uint64_t u = 0, v = 0;
    while (in >> u >> v) {
        if (u >= n || v >= n)
            throw std::runtime_error("read_edge_list: node id out of range");
        adj[v].push_back(static_cast<NodeId>(u));
    }
    return Instance(n, std::move(adj), std::move(hidden));
}

}  // namespace nsum
