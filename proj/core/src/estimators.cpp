#include "nsum/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "nsum/rng.hpp"

namespace nsum {

Sample draw_sample(const Instance& instance, std::size_t m,
                   std::uint64_t seed) {
    const std::size_t n = instance.size();
    if (m < 1 || m > n)
        throw std::invalid_argument("draw_sample: m must be in [1, n]");
    Rng rng(derive_seed(seed, 0x5a3cULL));
    Sample s;
    s.instance = &instance;
    s.ids.reserve(m);
    if (m * 8 <= n) {
        // Floyd's algorithm: uniform over m-subsets without touching O(n) memory.
        std::unordered_set<NodeId> chosen;
        chosen.reserve(m * 2);
        for (std::size_t i = n - m; i < n; ++i) {
            NodeId t = static_cast<NodeId>(rng.uniform_below(i + 1));
            if (!chosen.insert(t).second) {
                t = static_cast<NodeId>(i);
                chosen.insert(t);
            }
            s.ids.push_back(t);
        }
    } else {
        std::vector<NodeId> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<NodeId>(i);
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t j = i + rng.uniform_below(n - i);
            std::swap(pool[i], pool[j]);
            s.ids.push_back(pool[i]);
        }
    }
    return s;
}

ArdSet extract_ard(const Instance& instance, const Sample& sample) {
    if (sample.instance != &instance)
        throw std::invalid_argument("extract_ard: sample from a different instance");
    ArdSet ard;
    ard.records.reserve(sample.ids.size());
    for (NodeId v : sample.ids) {
        ArdRecord rec;
        rec.node = v;
        rec.reach = instance.in_degree(v);
        std::uint64_t c = 0;
        for (NodeId u : instance.in_neighbors(v))
            if (instance.is_hidden(u)) ++c;
        rec.cases = c;
        ard.records.push_back(rec);
    }
    return ard;
}

namespace {

void check_record(const ArdRecord& r) {
    if (r.cases > r.reach)
        throw std::invalid_argument("estimator: record with C > R");
}

}  // namespace

PrevalenceEstimate estimate_mor(const ArdSet& ard, ZeroDegreePolicy policy) {
    if (ard.records.empty())
        throw std::invalid_argument("estimate_mor: empty ARD");
    double sum = 0.0;
    std::size_t used = 0;
    for (const auto& r : ard.records) {
        check_record(r);
        if (r.reach == 0) {
            if (policy == ZeroDegreePolicy::reject)
                throw std::invalid_argument("estimate_mor: zero-degree respondent");
            continue;
        }
        sum += static_cast<double>(r.cases) / static_cast<double>(r.reach);
        ++used;
    }
    if (used == 0)
        throw std::invalid_argument("estimate_mor: no usable respondents");
    return {sum / static_cast<double>(used), Method::MoR};
}

PrevalenceEstimate estimate_ros(const ArdSet& ard, ZeroDegreePolicy policy) {
    if (ard.records.empty())
        throw std::invalid_argument("estimate_ros: empty ARD");
    std::uint64_t sum_c = 0, sum_r = 0;
    for (const auto& r : ard.records) {
        check_record(r);
        if (r.reach == 0 && policy == ZeroDegreePolicy::reject)
            throw std::invalid_argument("estimate_ros: zero-degree respondent");
        sum_c += r.cases;
        sum_r += r.reach;
    }
    if (sum_r == 0)
        throw std::invalid_argument("estimate_ros: degenerate sample (sum R = 0)");
    return {static_cast<double>(sum_c) / static_cast<double>(sum_r),
            Method::RoS};
}

PrevalenceEstimate estimate_fs(const ArdSet& ard_full, std::size_t n,
                               std::uint64_t delta_min,
                               std::uint64_t delta_max) {
    if (ard_full.records.size() != n)
        throw std::invalid_argument("estimate_fs: ARD must cover all n nodes");
    if (delta_min == 0)
        throw std::invalid_argument("estimate_fs: isolated node (delta = 0)");
    if (delta_max < delta_min)
        throw std::invalid_argument("estimate_fs: delta_max < delta_min");
    std::uint64_t sum_c = 0;
    for (const auto& r : ard_full.records) {
        check_record(r);
        sum_c += r.cases;
    }
    const double denom =
        static_cast<double>(n) *
        std::sqrt(static_cast<double>(delta_max) * static_cast<double>(delta_min));
    return {static_cast<double>(sum_c) / denom, Method::FS};
}

PrevalenceEstimate estimate_fs_bidirectional(const ArdSet& ard_full,
                                             std::size_t n) {
    if (ard_full.records.empty())
        throw std::invalid_argument("estimate_fs_bidirectional: empty ARD");
    std::uint64_t dmin = UINT64_MAX, dmax = 0;
    for (const auto& r : ard_full.records) {
        dmin = std::min(dmin, r.reach);
        dmax = std::max(dmax, r.reach);
    }
    return estimate_fs(ard_full, n, dmin, dmax);
}

std::map<std::uint64_t, double> empirical_rs_pmf(const Instance& instance,
                                                 std::size_t m,
                                                 std::size_t trials,
                                                 std::uint64_t seed) {
    if (trials < 1)
        throw std::invalid_argument("empirical_rs_pmf: trials >= 1");
    ArdTable table = precompute_ard(instance);
    std::map<std::uint64_t, std::size_t> hist;
    for (std::size_t t = 0; t < trials; ++t) {
        Sample s = draw_sample(instance, m, derive_seed(seed, 0x9d5eULL, t));
        std::uint64_t rs = 0;
        for (NodeId v : s.ids) rs += table.reach[v];
        ++hist[rs];
    }
    std::map<std::uint64_t, double> pmf;
    for (auto [rs, count] : hist)
        pmf[rs] = static_cast<double>(count) / static_cast<double>(trials);
    return pmf;
}

ArdTable precompute_ard(const Instance& instance) {
    const std::size_t n = instance.size();
    ArdTable table;
    table.reach.resize(n);
    table.cases.resize(n);
    for (NodeId v = 0; v < n; ++v) {
        table.reach[v] = instance.in_degree(v);
        std::uint64_t c = 0;
        for (NodeId u : instance.in_neighbors(v))
            if (instance.is_hidden(u)) ++c;
        table.cases[v] = c;
    }
    return table;
}

}  // namespace nsum
