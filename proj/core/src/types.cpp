#include "nsum/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nsum {

Instance::Instance(std::size_t n, std::vector<std::vector<NodeId>> in_neighbors,
                   std::vector<NodeId> hidden)
    : n_(n), adj_(std::move(in_neighbors)), hidden_mask_(n, 0) {
    if (n == 0) throw std::invalid_argument("Instance: n must be positive");
    if (adj_.size() != n)
        throw std::invalid_argument("Instance: adjacency size != n");

    edges_ = 0;
    for (NodeId v = 0; v < n_; ++v) {
        auto& nb = adj_[v];
        std::sort(nb.begin(), nb.end());
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] >= n_)
                throw std::invalid_argument("Instance: in-neighbor id out of range");
            if (nb[i] == v)
                throw std::invalid_argument("Instance: self-loop");
            if (i > 0 && nb[i] == nb[i - 1])
                throw std::invalid_argument("Instance: duplicate in-neighbor");
        }
        edges_ += nb.size();
    }

    h_ = 0;
    for (NodeId v : hidden) {
        if (v >= n_)
            throw std::invalid_argument("Instance: hidden id out of range");
        if (!hidden_mask_[v]) {
            hidden_mask_[v] = 1;
            ++h_;
        }
    }

    // (u,v) in E means u appears in v's in-neighbor list.
    bidirectional_ = true;
    for (NodeId v = 0; v < n_ && bidirectional_; ++v) {
        for (NodeId u : adj_[v]) {
            const auto& back = adj_[u];
            if (!std::binary_search(back.begin(), back.end(), v)) {
                bidirectional_ = false;
                break;
            }
        }
    }
}

std::vector<NodeId> Instance::hidden_ids() const {
    std::vector<NodeId> ids;
    ids.reserve(h_);
    for (NodeId v = 0; v < n_; ++v)
        if (hidden_mask_[v]) ids.push_back(v);
    return ids;
}

void DegreeDistribution::finalize() {
    double total = 0.0;
    for (double p : prob_) {
        if (p < 0.0)
            throw std::invalid_argument("DegreeDistribution: negative probability");
        total += p;
    }
    if (total <= 0.0)
        throw std::invalid_argument("DegreeDistribution: empty pmf");
    cdf_.resize(prob_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < prob_.size(); ++i) {
        prob_[i] /= total;
        acc += prob_[i];
        cdf_[i] = acc;
    }
    cdf_.back() = 1.0;
}

DegreeDistribution DegreeDistribution::explicit_pmf(
    std::size_t n, const std::map<std::size_t, double>& pmf) {
    if (n < 2) throw std::invalid_argument("explicit_pmf: n must be >= 2");
    if (pmf.empty()) throw std::invalid_argument("explicit_pmf: empty pmf");
    double total = 0.0;
    for (auto [k, p] : pmf) {
        if (k < 1 || k > n - 1)
            throw std::invalid_argument("explicit_pmf: support outside {1..n-1}");
        if (p < 0.0) throw std::invalid_argument("explicit_pmf: negative mass");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("explicit_pmf: pmf does not sum to 1");
    DegreeDistribution d;
    d.n_ = n;
    d.kind_ = Kind::explicit_pmf;
    d.param_ = std::numeric_limits<double>::quiet_NaN();
    for (auto [k, p] : pmf) {
        if (p == 0.0) continue;
        d.support_.push_back(k);
        d.prob_.push_back(p);
    }
    if (d.support_.empty())
        throw std::invalid_argument("explicit_pmf: all-zero pmf");
    d.finalize();
    return d;
}

DegreeDistribution DegreeDistribution::er_truncated(std::size_t n, double p) {
    if (n < 2) throw std::invalid_argument("er_truncated: n must be >= 2");
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("er_truncated: p must be in (0,1)");
    DegreeDistribution d;
    d.n_ = n;
    d.kind_ = Kind::er_truncated;
    d.param_ = p;
    const std::size_t nm1 = n - 1;
    const double logp = std::log(p);
    const double log1mp = std::log1p(-p);
    const double lgn = std::lgamma(static_cast<double>(nm1) + 1.0);
    d.support_.reserve(nm1);
    d.prob_.reserve(nm1);
    for (std::size_t k = 1; k <= nm1; ++k) {
        const double kk = static_cast<double>(k);
        const double logpmf = lgn - std::lgamma(kk + 1.0) -
                              std::lgamma(static_cast<double>(nm1 - k) + 1.0) +
                              kk * logp + static_cast<double>(nm1 - k) * log1mp;
        d.support_.push_back(k);
        d.prob_.push_back(std::exp(logpmf));
    }
    d.finalize();  // normalization divides out 1 - (1-p)^(n-1)
    return d;
}

DegreeDistribution DegreeDistribution::scale_free(std::size_t n, double gamma) {
    if (n < 2) throw std::invalid_argument("scale_free: n must be >= 2");
    if (!(gamma > 0.0))
        throw std::invalid_argument("scale_free: gamma must be positive");
    DegreeDistribution d;
    d.n_ = n;
    d.kind_ = Kind::scale_free;
    d.param_ = gamma;
    d.support_.reserve(n - 1);
    d.prob_.reserve(n - 1);
    for (std::size_t k = 1; k <= n - 1; ++k) {
        d.support_.push_back(k);
        d.prob_.push_back(std::pow(static_cast<double>(k), -gamma));
    }
    d.finalize();
    return d;
}

double DegreeDistribution::pmf(std::size_t k) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), k);
    if (it == support_.end() || *it != k) return 0.0;
    return prob_[static_cast<std::size_t>(it - support_.begin())];
}

double DegreeDistribution::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i)
        m += static_cast<double>(support_[i]) * prob_[i];
    return m;
}

std::size_t DegreeDistribution::sample(Rng& rng) const {
    const double u = rng.uniform01();
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return support_[static_cast<std::size_t>(it - cdf_.begin())];
}

std::string ard_to_csv(const ArdSet& ard) {
    std::ostringstream out;
    out << "node,R,C\n";
    for (const auto& r : ard.records)
        out << r.node << ',' << r.reach << ',' << r.cases << '\n';
    return out.str();
}

ArdSet ard_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    ArdSet ard;
    bool first = true;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (first && line.rfind("node,", 0) == 0) {
            first = false;
            continue;
        }
        first = false;
        ArdRecord rec;
        char c1 = 0, c2 = 0;
        std::istringstream ls(line);
        if (!(ls >> rec.node >> c1 >> rec.reach >> c2 >> rec.cases) ||
            c1 != ',' || c2 != ',')
            throw std::invalid_argument("ard_from_csv: malformed line " +
                                        std::to_string(lineno));
        if (rec.cases > rec.reach)
            throw std::invalid_argument("ard_from_csv: C > R at line " +
                                        std::to_string(lineno));
        ard.records.push_back(rec);
    }
    return ard;
}

const char* method_name(Method m) {
    switch (m) {
        case Method::MoR: return "MoR";
        case Method::RoS: return "RoS";
        case Method::FS: return "FS";
    }
    return "?";
}

ErrorReport compute_errors(double estimate, double rho) {
    if (estimate < 0.0)
        throw std::invalid_argument("compute_errors: negative estimate");
    if (rho < 0.0 || rho > 1.0)
        throw std::invalid_argument("compute_errors: rho outside [0,1]");
    const double inf = std::numeric_limits<double>::infinity();
    ErrorReport e;
    if (estimate == 0.0 && rho == 0.0) {
        e.upper = e.lower = e.combined = 1.0;
        return e;
    }
    e.upper = (rho == 0.0) ? inf : std::max(1.0, estimate / rho);
    e.lower = (estimate == 0.0) ? inf : std::max(1.0, rho / estimate);
    e.combined = std::max(e.upper, e.lower);
    return e;
}

}  // namespace nsum
