#include "nsum/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nsum {

namespace {

double binom(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (std::size_t i = 0; i < k; ++i)
        r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return r;
}

// One realizable choice of a node: in-degree, hidden in-neighbor count, and
// its exact probability pmf(k) / C(n-1, k).
struct NodeOutcome {
    std::uint32_t reach;
    std::uint32_t cases;
    double weight;
};

// Exhaustive per-node outcome list. The n-1 candidate in-neighbors are walked
// as bitmasks, so nothing about the hypergeometric law is assumed.
std::vector<NodeOutcome> node_outcomes(const TinyModel& model, NodeId v) {
    const std::size_t n = model.n;
    std::vector<NodeId> others;
    for (NodeId u = 0; u < n; ++u)
        if (u != v) others.push_back(u);
    std::vector<NodeOutcome> out;
    const std::size_t nm1 = n - 1;
    for (auto [k, pk] : model.pmf) {
        if (pk <= 0.0) continue;
        if (k < 1 || k > nm1)
            throw std::invalid_argument("TinyModel: degree outside {1..n-1}");
        const double w = pk / binom(nm1, k);
        for (std::uint32_t mask = 0; mask < (1u << nm1); ++mask) {
            if (std::popcount(mask) != static_cast<int>(k)) continue;
            std::uint32_t c = 0;
            for (std::size_t i = 0; i < nm1; ++i)
                if ((mask >> i) & 1u)
                    if (others[i] < model.h) ++c;
            out.push_back({static_cast<std::uint32_t>(k), c, w});
        }
    }
    return out;
}

void joint_recurse(const std::vector<std::vector<NodeOutcome>>& per_node,
                   std::size_t depth, double weight,
                   std::vector<ArdRecord>& records,
                   const OutcomeVisitor& visit) {
    if (depth == per_node.size()) {
        visit(records, weight);
        return;
    }
    for (const auto& o : per_node[depth]) {
        records[depth].reach = o.reach;
        records[depth].cases = o.cases;
        joint_recurse(per_node, depth + 1, weight * o.weight, records, visit);
    }
}

// E[prod_{j=1..b} X_vj | R_v = r, C_v = c] over a uniform ordering of the
// chosen in-neighbors: falling-factorial ratio c(c-1)...(c-b+1) / r(r-1)...
double ordered_hidden_prob(std::uint32_t r, std::uint32_t c, std::uint32_t b) {
    double p = 1.0;
    for (std::uint32_t j = 0; j < b; ++j) {
        if (c < j + 1) return 0.0;
        p *= static_cast<double>(c - j) / static_cast<double>(r - j);
    }
    return p;
}

void subsets_of_size(std::size_t n, std::size_t s,
                     const std::function<void(const std::vector<NodeId>&)>& fn) {
    std::vector<NodeId> idx(s);
    std::function<void(std::size_t, NodeId)> rec = [&](std::size_t d, NodeId start) {
        if (d == s) {
            fn(idx);
            return;
        }
        for (NodeId v = start; v < n; ++v) {
            idx[d] = v;
            rec(d + 1, v + 1);
        }
    };
    rec(0, 0);
}

}  // namespace

std::string TinyModel::label() const {
    std::ostringstream s;
    s << "n=" << n << " h=" << h << " pmf{";
    bool first = true;
    for (auto [k, p] : pmf) {
        if (!first) s << ",";
        s << k << ":" << p;
        first = false;
    }
    s << "}";
    return s.str();
}

double enumeration_state_estimate(const TinyModel& model) {
    double total = 1.0;
    for (std::size_t v = 0; v < model.n; ++v) {
        double per_node = 0.0;
        for (auto [k, p] : model.pmf) per_node += p * binom(model.n - 1, k);
        total *= per_node;
    }
    return total;
}

void enumerate_exact(const TinyModel& model, const OutcomeVisitor& visit,
                     double state_cap) {
    if (model.n < 2 || model.n > 8)
        throw std::invalid_argument("enumerate_exact: n must be in {2..8}");
    if (model.h > model.n)
        throw std::invalid_argument("enumerate_exact: h > n");
    if (enumeration_state_estimate(model) > state_cap)
        throw std::invalid_argument("enumerate_exact: state cap exceeded");

    std::vector<std::vector<NodeOutcome>> per_node;
    per_node.reserve(model.n);
    for (NodeId v = 0; v < model.n; ++v)
        per_node.push_back(node_outcomes(model, v));
    std::vector<ArdRecord> records(model.n);
    for (NodeId v = 0; v < model.n; ++v) records[v].node = v;
    joint_recurse(per_node, 0, 1.0, records, visit);
}

double enumerate_total_mass(const TinyModel& model, double state_cap) {
    // Kahan-compensated: millions of tiny weights otherwise drift past 1e-12.
    double mass = 0.0, comp = 0.0;
    enumerate_exact(
        model,
        [&](const std::vector<ArdRecord>&, double p) {
            const double y = p - comp;
            const double t = mass + y;
            comp = (t - mass) - y;
            mass = t;
        },
        state_cap);
    return mass;
}

ExpectationReport check_expectation_y(const TinyModel& model,
                                      double tolerance) {
    const double n = static_cast<double>(model.n);
    const double h = static_cast<double>(model.h);
    ExpectationReport rep;

    double sum_y = 0.0;
    double e_x_in = 0.0, e_x_out = 0.0;
    for (NodeId v = 0; v < model.n; ++v) {
        double ey = 0.0, ex = 0.0;
        for (const auto& o : node_outcomes(model, v)) {
            ey += o.weight * static_cast<double>(o.cases) /
                  static_cast<double>(o.reach);
            ex += o.weight * ordered_hidden_prob(o.reach, o.cases, 1);
        }
        sum_y += ey;
        if (v < model.h)
            e_x_in += ex / std::max(h, 1.0);
        else
            e_x_out += ex / std::max(n - h, 1.0);
    }
    rep.e_y = sum_y / n;
    rep.dev_y = std::abs(rep.e_y - h / n);
    rep.pass = rep.dev_y <= tolerance;

    if (model.h >= 1) {
        rep.e_x_in = e_x_in;
        rep.dev_x_in = std::abs(e_x_in - (h - 1.0) / (n - 1.0));
        rep.pass = rep.pass && rep.dev_x_in <= tolerance;
    }
    if (model.h < model.n) {
        rep.e_x_out = e_x_out;
        rep.dev_x_out = std::abs(e_x_out - h / (n - 1.0));
        rep.pass = rep.pass && rep.dev_x_out <= tolerance;
    }
    return rep;
}

CorrelationReport check_negative_correlation(const TinyModel& model,
                                             std::size_t max_subset_size,
                                             double tolerance) {
    const double rho = static_cast<double>(model.h) / static_cast<double>(model.n);
    CorrelationReport rep;
    rep.worst_y = rep.worst_y_complement = rep.worst_x = rep.worst_x_complement =
        -std::numeric_limits<double>::infinity();

    std::vector<std::vector<NodeOutcome>> per_node;
    for (NodeId v = 0; v < model.n; ++v)
        per_node.push_back(node_outcomes(model, v));

    for (std::size_t s = 1; s <= std::min(max_subset_size, model.n); ++s) {
        // The surveyed set is enumerated exactly: E over a uniform size-s
        // sample is the plain average over all concrete subsets.
        double avg_prod_y = 0.0, avg_prod_y_comp = 0.0;
        double avg_prod_x = 0.0, avg_prod_x_comp = 0.0;
        std::size_t count = 0;
        std::size_t min_degree = model.pmf.front().first;
        for (auto [k, p] : model.pmf) min_degree = std::min(min_degree, k);

        subsets_of_size(model.n, s, [&](const std::vector<NodeId>& subset) {
            ++count;
            // Joint enumeration over the product space of the subset's nodes.
            double py = 0.0, pyc = 0.0, px = 0.0, pxc = 0.0;
            std::function<void(std::size_t, double, double, double, double, double)>
                rec = [&](std::size_t d, double w, double prod_y, double prod_yc,
                          double prod_x, double prod_xc) {
                    if (d == subset.size()) {
                        py += w * prod_y;
                        pyc += w * prod_yc;
                        px += w * prod_x;
                        pxc += w * prod_xc;
                        return;
                    }
                    for (const auto& o : per_node[subset[d]]) {
                        const double y = static_cast<double>(o.cases) /
                                         static_cast<double>(o.reach);
                        // X products use B_v = {1..min support degree} so the
                        // index set is valid in every realization.
                        const std::uint32_t b =
                            static_cast<std::uint32_t>(min_degree);
                        rec(d + 1, w * o.weight, prod_y * y, prod_yc * (1.0 - y),
                            prod_x * ordered_hidden_prob(o.reach, o.cases, b),
                            prod_xc * ordered_hidden_prob(
                                          o.reach, o.reach - o.cases, b));
                    }
                };
            rec(0, 1.0, 1.0, 1.0, 1.0, 1.0);
            avg_prod_y += py;
            avg_prod_y_comp += pyc;
            avg_prod_x += px;
            avg_prod_x_comp += pxc;
        });
        rep.subsets_checked += count;
        const double cnt = static_cast<double>(count);
        avg_prod_y /= cnt;
        avg_prod_y_comp /= cnt;
        avg_prod_x /= cnt;
        avg_prod_x_comp /= cnt;

        const double sd = static_cast<double>(s);
        const double bx = static_cast<double>(min_degree);
        rep.worst_y = std::max(rep.worst_y, avg_prod_y - std::pow(rho, sd));
        rep.worst_y_complement = std::max(
            rep.worst_y_complement, avg_prod_y_comp - std::pow(1.0 - rho, sd));
        rep.worst_x =
            std::max(rep.worst_x, avg_prod_x - std::pow(rho, sd * bx));
        rep.worst_x_complement = std::max(
            rep.worst_x_complement,
            avg_prod_x_comp - std::pow(1.0 - rho, sd * bx));
    }
    rep.pass = rep.worst_y <= tolerance && rep.worst_y_complement <= tolerance &&
               rep.worst_x <= tolerance && rep.worst_x_complement <= tolerance;
    return rep;
}

DependenceReport check_dependence_example(std::size_t n, std::size_t h) {
    DependenceReport rep;
    if (h != 1) return rep;  // the remark requires a single hidden node
    rep.applicable = true;

    TinyModel model{n, {{1, 1.0}}, 1};
    std::vector<std::vector<NodeOutcome>> per_node;
    for (NodeId v = 0; v < n; ++v)
        per_node.push_back(node_outcomes(model, v));

    // Uniform ordered pair of distinct respondents.
    double p_both = 0.0, p_first = 0.0, p_second = 0.0;
    std::size_t pairs = 0;
    for (NodeId v1 = 0; v1 < n; ++v1) {
        for (NodeId v2 = 0; v2 < n; ++v2) {
            if (v1 == v2) continue;
            ++pairs;
            for (const auto& o1 : per_node[v1]) {
                const bool pos1 = o1.cases > 0;
                for (const auto& o2 : per_node[v2]) {
                    const bool pos2 = o2.cases > 0;
                    const double w = o1.weight * o2.weight;
                    if (pos1 && pos2) p_both += w;
                    if (pos1) p_first += w;
                    if (pos2) p_second += w;
                }
            }
        }
    }
    p_both /= static_cast<double>(pairs);
    p_first /= static_cast<double>(pairs);
    p_second /= static_cast<double>(pairs);
    rep.conditional = p_both / p_first;
    rep.unconditional = p_second;
    rep.strict = rep.conditional < rep.unconditional - 1e-15;
    return rep;
}

std::vector<TinyModel> default_corpus() {
    std::vector<TinyModel> corpus;
    for (std::size_t n = 2; n <= 6; ++n) {
        for (std::size_t h = 0; h <= n; ++h) {
            corpus.push_back({n, {{1, 1.0}}, h});
            if (n >= 3) {
                corpus.push_back({n, {{2, 1.0}}, h});
                corpus.push_back({n, {{1, 0.5}, {2, 0.5}}, h});
            }
        }
    }
    return corpus;
}

}  // namespace nsum
