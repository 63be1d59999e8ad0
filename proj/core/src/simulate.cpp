#include "nsum/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nsum/estimators.hpp"
#include "nsum/graphgen.hpp"
#include "nsum/rng.hpp"

namespace nsum {

namespace {

constexpr std::uint64_t kInstanceStream = 0x01;
constexpr std::uint64_t kSampleStream = 0x02;
constexpr std::uint64_t kRsPmfStream = 0x03;

DegreeDistribution make_degrees(const ExperimentConfig& cfg) {
    switch (cfg.topology.kind) {
        case TopologySpec::Kind::er:
            return DegreeDistribution::er_truncated(cfg.n, cfg.topology.p);
        case TopologySpec::Kind::scale_free:
            return DegreeDistribution::scale_free(cfg.n, cfg.topology.gamma);
        case TopologySpec::Kind::explicit_pmf:
            return DegreeDistribution::explicit_pmf(cfg.n, cfg.topology.pmf);
        case TopologySpec::Kind::ingested:
            throw std::logic_error("make_degrees: ingested topology has none");
    }
    throw std::invalid_argument("make_degrees: unknown topology");
}

struct SampleSums {
    double mor = 0.0;
    std::uint64_t sum_c = 0, sum_r = 0;
    std::size_t used = 0;
};

// Zero-degree respondents (possible only in ingested datasets) are dropped
// from the MoR mean and both RoS sums.
SampleSums accumulate(const ArdTable& table, const std::vector<NodeId>& ids) {
    SampleSums s;
    for (NodeId v : ids) {
        const std::uint64_t r = table.reach[v];
        if (r == 0) continue;
        s.mor += static_cast<double>(table.cases[v]) / static_cast<double>(r);
        s.sum_c += table.cases[v];
        s.sum_r += r;
        ++s.used;
    }
    return s;
}

void run_one_instance(const ExperimentConfig& cfg, const Instance& instance,
                      std::size_t grid, std::size_t inst, double rho,
                      std::span<TrialRow> out,
                      std::map<std::uint64_t, std::size_t>& rs_hist,
                      std::size_t rs_trials) {
    const std::size_t m = cfg.sample_sizes[grid];
    ArdTable table = precompute_ard(instance);
    for (std::size_t j = 0; j < cfg.samples_per_instance; ++j) {
        Sample s = draw_sample(
            instance, m,
            derive_seed(cfg.master_seed, kSampleStream, grid * 1'000'003 + inst,
                        j));
        SampleSums sums = accumulate(table, s.ids);
        TrialRow& row = out[j];
        row.grid_index = grid;
        row.instance_index = inst;
        row.sample_index = j;
        row.sample_size = m;
        row.est_mor = sums.used ? sums.mor / static_cast<double>(sums.used) : 0.0;
        row.est_ros = sums.sum_r ? static_cast<double>(sums.sum_c) /
                                       static_cast<double>(sums.sum_r)
                                 : 0.0;
        row.err_mor = compute_errors(row.est_mor, rho).combined;
        row.err_ros = compute_errors(row.est_ros, rho).combined;
    }
    for (std::size_t t = 0; t < rs_trials; ++t) {
        Sample s = draw_sample(
            instance, m,
            derive_seed(cfg.master_seed, kRsPmfStream, grid * 1'000'003 + inst,
                        t));
        std::uint64_t rs = 0;
        for (NodeId v : s.ids) rs += table.reach[v];
        ++rs_hist[rs];
    }
}

}  // namespace

std::string bound_family_name(BoundFamily f) {
    switch (f) {
        case BoundFamily::mor_generic: return "mor_generic";
        case BoundFamily::ros_generic: return "ros_generic";
        case BoundFamily::ros_empirical: return "ros_empirical";
        case BoundFamily::er_ros: return "er_ros";
        case BoundFamily::sf_ros: return "sf_ros";
    }
    return "?";
}

TrialResults run_experiment(const ExperimentConfig& cfg) {
    if (cfg.sample_sizes.empty())
        throw std::invalid_argument("run_experiment: empty sample-size grid");
    if (cfg.instances_per_point < 1 || cfg.samples_per_instance < 1)
        throw std::invalid_argument("run_experiment: counts must be >= 1");

    const bool ingested = cfg.topology.kind == TopologySpec::Kind::ingested;
    if (ingested && !cfg.topology.instance)
        throw std::invalid_argument("run_experiment: missing ingested instance");
    if (!ingested && cfg.n < 2)
        throw std::invalid_argument("run_experiment: n must be >= 2");

    const std::size_t n_instances =
        ingested ? 1 : cfg.instances_per_point;
    std::optional<DegreeDistribution> degrees;
    std::size_t hidden_count = 0;
    if (!ingested) {
        degrees = make_degrees(cfg);
        hidden_count = static_cast<std::size_t>(
            std::llround(cfg.rho * static_cast<double>(cfg.n)));
    }

    const bool want_rs_pmf =
        std::find(cfg.bound_families.begin(), cfg.bound_families.end(),
                  BoundFamily::ros_empirical) != cfg.bound_families.end();

    TrialResults results;
    results.config = cfg;
    const std::size_t grid_points = cfg.sample_sizes.size();
    results.rows.resize(grid_points * n_instances * cfg.samples_per_instance);
    results.rs_pmfs.resize(grid_points);

    double realized_rho = 0.0;
    std::size_t threads = cfg.threads ? cfg.threads
                                      : std::max(1u, std::thread::hardware_concurrency());

    for (std::size_t g = 0; g < grid_points; ++g) {
        if (cfg.sample_sizes[g] < 1)
            throw std::invalid_argument("run_experiment: sample size must be >= 1");
        std::vector<std::map<std::uint64_t, std::size_t>> hists(n_instances);
        std::vector<std::exception_ptr> errors(threads);

        auto worker = [&](std::size_t tid) {
            try {
                for (std::size_t i = tid; i < n_instances; i += threads) {
                    std::size_t rs_trials = 0;
                    if (want_rs_pmf) {
                        rs_trials = cfg.rs_pmf_trials / n_instances;
                        if (i < cfg.rs_pmf_trials % n_instances) ++rs_trials;
                    }
                    std::span<TrialRow> slot(
                        results.rows.data() +
                            (g * n_instances + i) * cfg.samples_per_instance,
                        cfg.samples_per_instance);
                    if (ingested) {
                        const Instance& inst = *cfg.topology.instance;
                        run_one_instance(cfg, inst, g, i, inst.prevalence(),
                                         slot, hists[i], rs_trials);
                    } else {
                        GeneratorConfig gen;
                        gen.n = cfg.n;
                        gen.degrees = *degrees;
                        gen.placement = HiddenPlacement::first_ids;
                        gen.hidden_count = hidden_count;
                        gen.seed = derive_seed(cfg.master_seed, kInstanceStream,
                                               g, i);
                        Instance inst = generate(gen);
                        run_one_instance(cfg, inst, g, i, inst.prevalence(),
                                         slot, hists[i], rs_trials);
                    }
                }
            } catch (...) {
                errors[tid] = std::current_exception();
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);

        if (want_rs_pmf) {
            std::map<std::uint64_t, std::size_t> merged;
            std::size_t total = 0;
            for (const auto& h : hists)
                for (auto [rs, c] : h) {
                    merged[rs] += c;
                    total += c;
                }
            for (auto [rs, c] : merged)
                results.rs_pmfs[g][rs] =
                    static_cast<double>(c) / static_cast<double>(total);
        }
    }

    if (ingested) {
        realized_rho = cfg.topology.instance->prevalence();
    } else {
        realized_rho =
            static_cast<double>(hidden_count) / static_cast<double>(cfg.n);
    }
    results.realized_rho = realized_rho;
    return results;
}

std::vector<TailPoint> tail_probability(const TrialResults& results,
                                        double beta, Method which) {
    if (results.rows.empty())
        throw std::invalid_argument("tail_probability: empty results");
    const auto& sizes = results.config.sample_sizes;
    std::vector<TailPoint> points(sizes.size());
    std::vector<std::size_t> exceed(sizes.size(), 0), total(sizes.size(), 0);
    for (const auto& row : results.rows) {
        const double err = (which == Method::MoR) ? row.err_mor : row.err_ros;
        ++total[row.grid_index];
        if (err > beta) ++exceed[row.grid_index];
    }
    for (std::size_t g = 0; g < sizes.size(); ++g) {
        TailPoint& pt = points[g];
        pt.sample_size = sizes[g];
        pt.beta = beta;
        pt.trials = total[g];
        if (total[g] == 0) {
            pt.p_emp = std::numeric_limits<double>::quiet_NaN();
            pt.se = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        pt.p_emp = static_cast<double>(exceed[g]) / static_cast<double>(total[g]);
        pt.se = std::sqrt(pt.p_emp * (1.0 - pt.p_emp) /
                          static_cast<double>(total[g]));
    }
    return points;
}

BoundResult evaluate_bound(const TrialResults& results, BoundFamily family,
                           std::size_t grid_index, double beta) {
    const ExperimentConfig& cfg = results.config;
    const std::size_t m = cfg.sample_sizes.at(grid_index);
    const double rho = results.realized_rho;
    switch (family) {
        case BoundFamily::mor_generic:
            return mor_bound(beta, m, rho);
        case BoundFamily::ros_generic:
            return ros_bound_simple(beta, m, rho);
        case BoundFamily::ros_empirical: {
            const auto& pmf = results.rs_pmfs.at(grid_index);
            if (pmf.empty())
                throw std::invalid_argument(
                    "evaluate_bound: no empirical R_S pmf recorded");
            return ros_bound_pmf(beta, rho, pmf);
        }
        case BoundFamily::er_ros:
            return er_ros_bound(beta, rho, m, cfg.n, cfg.topology.p,
                                DeltaPolicy::minimize());
        case BoundFamily::sf_ros:
            return sf_ros_bound(beta, rho, m, cfg.n, cfg.topology.gamma,
                                DeltaPolicy::minimize());
    }
    throw std::invalid_argument("evaluate_bound: unknown family");
}

FiveNumber five_number_summary(std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("five_number_summary: empty input");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    auto quantile = [&](double p) {
        const double h = p * static_cast<double>(v.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(std::floor(h));
        if (lo + 1 >= v.size()) return v.back();
        return v[lo] + (h - std::floor(h)) * (v[lo + 1] - v[lo]);
    };
    return {v.front(), quantile(0.25), quantile(0.5), quantile(0.75), v.back()};
}

std::vector<BoxplotPoint> boxplot_stats(const TrialResults& results) {
    const auto& sizes = results.config.sample_sizes;
    std::vector<std::vector<double>> mor(sizes.size()), ros(sizes.size());
    for (const auto& row : results.rows) {
        mor[row.grid_index].push_back(row.err_mor);
        ros[row.grid_index].push_back(row.err_ros);
    }
    std::vector<BoxplotPoint> out(sizes.size());
    for (std::size_t g = 0; g < sizes.size(); ++g) {
        out[g].sample_size = sizes[g];
        out[g].mor = five_number_summary(mor[g]);
        out[g].ros = five_number_summary(ros[g]);
    }
    return out;
}

MinSampleResult min_sample_for_target(const TrialResults& results, double beta,
                                      double target_prob, TailSource source,
                                      Method which,
                                      std::optional<BoundFamily> family) {
    if (!(target_prob > 0.0 && target_prob < 1.0))
        throw std::invalid_argument("min_sample_for_target: target in (0,1)");
    const auto& sizes = results.config.sample_sizes;
    MinSampleResult res;
    res.largest_tried = sizes.back();

    if (source == TailSource::empirical) {
        auto tails = tail_probability(results, beta, which);
        std::optional<std::size_t> crossing;
        for (std::size_t g = 0; g < tails.size(); ++g) {
            if (!crossing && tails[g].p_emp <= target_prob) crossing = g;
            if (crossing && tails[g].p_emp > target_prob) res.noisy = true;
        }
        if (crossing) {
            res.found = true;
            res.sample_size = sizes[*crossing];
        }
        return res;
    }

    if (!family)
        throw std::invalid_argument("min_sample_for_target: bound family required");
    if (*family == BoundFamily::ros_empirical)
        throw std::invalid_argument(
            "min_sample_for_target: empirical pmf bound is tied to the grid");
    TrialResults probe;  // topology parameters only, no trial rows
    probe.config = results.config;
    probe.realized_rho = results.realized_rho;
    auto bound_at = [&](std::size_t m) {
        probe.config.sample_sizes = {m};
        return evaluate_bound(probe, *family, 0, beta).clamped;
    };
    std::optional<std::size_t> cross_idx;
    for (std::size_t g = 0; g < sizes.size(); ++g) {
        if (bound_at(sizes[g]) <= target_prob) {
            cross_idx = g;
            break;
        }
    }
    if (!cross_idx) return res;
    // Bisection between the previous grid point and the crossing one; the
    // bounds are monotone nonincreasing in m.
    std::size_t lo = (*cross_idx == 0) ? 1 : sizes[*cross_idx - 1];
    std::size_t hi = sizes[*cross_idx];
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (bound_at(mid) <= target_prob)
            hi = mid;
        else
            lo = mid + 1;
    }
    res.found = true;
    res.sample_size = hi;
    return res;
}

namespace {

std::string format_double(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

}  // namespace

std::string trials_csv(const TrialResults& results) {
    const std::uint64_t hash = config_hash(results.config);
    std::ostringstream out;
    out << "config_hash,instance,sample,S,estimator,estimate,error\n";
    for (const auto& r : results.rows) {
        out << hash << ',' << r.instance_index << ',' << r.sample_index << ','
            << r.sample_size << ",MoR," << format_double(r.est_mor) << ','
            << format_double(r.err_mor) << '\n';
        out << hash << ',' << r.instance_index << ',' << r.sample_index << ','
            << r.sample_size << ",RoS," << format_double(r.est_ros) << ','
            << format_double(r.err_ros) << '\n';
    }
    return out.str();
}

std::string tails_csv(const TrialResults& results) {
    std::ostringstream out;
    out << "S,beta,estimator,p_emp,se,bound_family,bound_clamped\n";
    for (double eps : results.config.epsilons) {
        const double beta = 1.0 + eps;
        for (Method which : {Method::MoR, Method::RoS}) {
            // A family only bounds the estimator it was derived for.
            std::vector<BoundFamily> families;
            for (BoundFamily f : results.config.bound_families) {
                const Method target = f == BoundFamily::mor_generic
                                          ? Method::MoR
                                          : Method::RoS;
                if (target == which) families.push_back(f);
            }
            auto tails = tail_probability(results, beta, which);
            for (std::size_t g = 0; g < tails.size(); ++g) {
                if (families.empty()) {
                    out << tails[g].sample_size << ',' << format_double(beta)
                        << ',' << method_name(which) << ','
                        << format_double(tails[g].p_emp) << ','
                        << format_double(tails[g].se) << ",none,\n";
                    continue;
                }
                for (BoundFamily f : families) {
                    BoundResult b = evaluate_bound(results, f, g, beta);
                    out << tails[g].sample_size << ',' << format_double(beta)
                        << ',' << method_name(which) << ','
                        << format_double(tails[g].p_emp) << ','
                        << format_double(tails[g].se) << ','
                        << bound_family_name(f) << ','
                        << format_double(b.clamped) << '\n';
                }
            }
        }
    }
    return out.str();
}

std::string boxplot_csv(const TrialResults& results) {
    std::ostringstream out;
    out << "S,estimator,min,q1,median,q3,max\n";
    for (const auto& pt : boxplot_stats(results)) {
        out << pt.sample_size << ",MoR," << format_double(pt.mor.min) << ','
            << format_double(pt.mor.q1) << ',' << format_double(pt.mor.median)
            << ',' << format_double(pt.mor.q3) << ','
            << format_double(pt.mor.max) << '\n';
        out << pt.sample_size << ",RoS," << format_double(pt.ros.min) << ','
            << format_double(pt.ros.q1) << ',' << format_double(pt.ros.median)
            << ',' << format_double(pt.ros.q3) << ','
            << format_double(pt.ros.max) << '\n';
    }
    return out.str();
}

std::string minsize_csv(const TrialResults& results, double target_prob) {
    std::ostringstream out;
    out << "beta,source,estimator,sample_size,found,noisy\n";
    for (double eps : results.config.epsilons) {
        const double beta = 1.0 + eps;
        for (Method which : {Method::MoR, Method::RoS}) {
            auto r = min_sample_for_target(results, beta, target_prob,
                                           TailSource::empirical, which);
            out << format_double(beta) << ",empirical," << method_name(which)
                << ',' << (r.found ? r.sample_size : r.largest_tried) << ','
                << (r.found ? 1 : 0) << ',' << (r.noisy ? 1 : 0) << '\n';
        }
        for (BoundFamily f : results.config.bound_families) {
            if (f == BoundFamily::ros_empirical) continue;  // not closed-form in m
            auto r = min_sample_for_target(results, beta, target_prob,
                                           TailSource::bound, Method::MoR, f);
            out << format_double(beta) << ',' << bound_family_name(f) << ",-,"
                << (r.found ? r.sample_size : r.largest_tried) << ','
                << (r.found ? 1 : 0) << ",0\n";
        }
    }
    return out.str();
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

}  // namespace

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("parse_config_file: cannot open " + path);
    ExperimentConfig cfg;
    cfg.instances_per_point = 100;
    cfg.samples_per_instance = 200;
    std::string section, line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("parse_config_file: expected key=value at line " +
                                     std::to_string(lineno));
        const std::string key = section + "." + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto parse_list = [&](auto push) {
            std::istringstream ls(value);
            std::string item;
            while (std::getline(ls, item, ',')) push(trim(item));
        };
        if (key == "topology.kind") {
            if (value == "er") cfg.topology.kind = TopologySpec::Kind::er;
            else if (value == "scale_free")
                cfg.topology.kind = TopologySpec::Kind::scale_free;
            else if (value == "explicit")
                cfg.topology.kind = TopologySpec::Kind::explicit_pmf;
            else
                throw std::runtime_error("parse_config_file: unknown topology kind");
        } else if (key == "topology.p") {
            cfg.topology.p = std::stod(value);
        } else if (key == "topology.gamma") {
            cfg.topology.gamma = std::stod(value);
        } else if (key == "topology.pmf") {
            parse_list([&](const std::string& item) {
                auto colon = item.find(':');
                if (colon == std::string::npos)
                    throw std::runtime_error("parse_config_file: pmf entries are k:p");
                cfg.topology.pmf[std::stoull(item.substr(0, colon))] =
                    std::stod(item.substr(colon + 1));
            });
        } else if (key == "experiment.n") {
            cfg.n = std::stoull(value);
        } else if (key == "experiment.rho") {
            cfg.rho = std::stod(value);
        } else if (key == "experiment.sample_sizes") {
            parse_list([&](const std::string& item) {
                cfg.sample_sizes.push_back(std::stoull(item));
            });
        } else if (key == "experiment.epsilons") {
            parse_list([&](const std::string& item) {
                cfg.epsilons.push_back(std::stod(item));
            });
        } else if (key == "experiment.instances_per_point") {
            cfg.instances_per_point = std::stoull(value);
        } else if (key == "experiment.samples_per_instance") {
            cfg.samples_per_instance = std::stoull(value);
        } else if (key == "experiment.master_seed") {
            cfg.master_seed = std::stoull(value);
        } else if (key == "experiment.rs_pmf_trials") {
            cfg.rs_pmf_trials = std::stoull(value);
        } else if (key == "experiment.threads") {
            cfg.threads = std::stoull(value);
        } else if (key == "experiment.bounds") {
            parse_list([&](const std::string& item) {
                if (item == "mor") cfg.bound_families.push_back(BoundFamily::mor_generic);
                else if (item == "ros") cfg.bound_families.push_back(BoundFamily::ros_generic);
                else if (item == "ros_empirical")
                    cfg.bound_families.push_back(BoundFamily::ros_empirical);
                else if (item == "er_ros") cfg.bound_families.push_back(BoundFamily::er_ros);
                else if (item == "sf_ros") cfg.bound_families.push_back(BoundFamily::sf_ros);
                else
                    throw std::runtime_error("parse_config_file: unknown bound family " + item);
            });
        } else {
            throw std::runtime_error("parse_config_file: unknown key " + key);
        }
    }
    return cfg;
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    std::ostringstream s;
    s << static_cast<int>(cfg.topology.kind) << '|' << cfg.topology.p << '|'
      << cfg.topology.gamma << '|';
    for (auto [k, p] : cfg.topology.pmf) s << k << ':' << p << ',';
    s << '|' << cfg.n << '|' << cfg.rho << '|';
    for (auto m : cfg.sample_sizes) s << m << ',';
    s << '|';
    for (auto e : cfg.epsilons) s << e << ',';
    s << '|' << cfg.instances_per_point << '|' << cfg.samples_per_instance
      << '|' << cfg.master_seed << '|' << cfg.rs_pmf_trials;
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s.str()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace nsum
