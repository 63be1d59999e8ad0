// Command-line front end: generation, estimation, bounds, Monte-Carlo sweeps,
// dataset ingestion, the enumeration oracle, and the adversarial construction.
// Exit codes: 0 success, 1 usage error, 2 data/validation error.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsum/bounds.hpp"
#include "nsum/estimators.hpp"
#include "nsum/graphgen.hpp"
#include "nsum/ingest.hpp"
#include "nsum/oracle.hpp"
#include "nsum/simulate.hpp"

using nlohmann::json;

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    out << text;
}

void emit(const json& doc, const std::string& out_path) {
    emit(doc.dump(2), out_path);
}

std::map<std::size_t, double> parse_pmf_spec(const std::string& spec) {
    std::map<std::size_t, double> pmf;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("pmf entries are k:p, got \"" + item + "\"");
        pmf[std::stoull(item.substr(0, colon))] =
            std::stod(item.substr(colon + 1));
    }
    if (pmf.empty()) throw std::runtime_error("empty pmf spec");
    return pmf;
}

json bound_json(const nsum::BoundResult& b) {
    json j{{"raw", b.raw}, {"clamped", b.clamped}, {"beta", b.beta}, {"y", b.y}};
    if (b.delta) j["delta"] = *b.delta;
    return j;
}

nsum::DegreeDistribution make_distribution(const std::string& topology,
                                           std::size_t n, double p,
                                           double gamma,
                                           const std::string& pmf_spec) {
    if (topology == "er") return nsum::DegreeDistribution::er_truncated(n, p);
    if (topology == "sf") return nsum::DegreeDistribution::scale_free(n, gamma);
    if (topology == "pmf")
        return nsum::DegreeDistribution::explicit_pmf(n, parse_pmf_spec(pmf_spec));
    throw std::runtime_error("unknown topology " + topology);
}

json estimates_json(const nsum::ArdSet& ard, std::size_t n, bool full_sample,
                    bool bidirectional, bool drop_zeros, double rho) {
    const auto policy = drop_zeros ? nsum::ZeroDegreePolicy::drop
                                   : nsum::ZeroDegreePolicy::reject;
    json j;
    j["sample_size"] = ard.sample_size();
    auto put = [&](const nsum::PrevalenceEstimate& e) {
        json row{{"estimate", e.value}};
        if (rho >= 0.0) {
            auto err = nsum::compute_errors(e.value, rho);
            row["error_upper"] = err.upper;
            row["error_lower"] = err.lower;
            row["error"] = err.combined;
        }
        j["estimators"][nsum::method_name(e.method)] = row;
    };
    put(nsum::estimate_mor(ard, policy));
    put(nsum::estimate_ros(ard, policy));
    if (full_sample && bidirectional)
        put(nsum::estimate_fs_bidirectional(ard, n));
    if (rho >= 0.0) j["rho"] = rho;
    return j;
}

int run_gen(const std::string& shape, std::size_t n, const std::string& topology,
            double p, double gamma, const std::string& pmf_spec, double rho,
            std::int64_t hidden_count, const std::string& placement,
            std::uint64_t seed, const std::string& out) {
    nsum::Instance instance = [&] {
        if (shape == "star-hub")
            return nsum::build_star_instance(n, nsum::StarVariant::hub_hidden);
        if (shape == "star-leaves")
            return nsum::build_star_instance(n, nsum::StarVariant::leaves_hidden);
        if (shape == "clique-pendant") return nsum::build_clique_pendant(n);
        if (shape != "random") throw std::runtime_error("unknown shape " + shape);
        nsum::GeneratorConfig cfg;
        cfg.n = n;
        cfg.degrees = make_distribution(topology, n, p, gamma, pmf_spec);
        cfg.placement = placement == "uniform"
                            ? nsum::HiddenPlacement::uniform_random
                            : nsum::HiddenPlacement::first_ids;
        cfg.hidden_count =
            hidden_count >= 0
                ? static_cast<std::size_t>(hidden_count)
                : static_cast<std::size_t>(
                      std::llround(rho * static_cast<double>(n)));
        cfg.seed = seed;
        return nsum::generate(cfg);
    }();
    nsum::write_edge_list(instance, out);
    json j{{"n", instance.size()},
           {"edges", instance.edge_count()},
           {"hidden", instance.hidden_count()},
           {"rho", instance.prevalence()},
           {"bidirectional", instance.bidirectional()},
           {"path", out}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

int run_estimate(const std::string& graph, std::size_t m, std::uint64_t seed,
                 bool drop_zeros, const std::string& out) {
    nsum::Instance instance = nsum::read_edge_list(graph);
    const bool full = m == 0 || m >= instance.size();
    nsum::ArdSet ard;
    if (full) {
        nsum::Sample all{&instance, {}};
        all.ids.resize(instance.size());
        for (nsum::NodeId v = 0; v < instance.size(); ++v) all.ids[v] = v;
        ard = nsum::extract_ard(instance, all);
    } else {
        ard = nsum::extract_ard(instance,
                                nsum::draw_sample(instance, m, seed));
    }
    emit(estimates_json(ard, instance.size(), full, instance.bidirectional(),
                        drop_zeros, instance.prevalence()),
         out);
    return 0;
}

int run_sweep(const std::string& config_path, std::size_t threads,
              std::uint64_t seed, bool seed_given, const std::string& out_dir,
              double target) {
    nsum::ExperimentConfig cfg = nsum::parse_config_file(config_path);
    if (threads) cfg.threads = threads;
    if (seed_given) cfg.master_seed = seed;
    std::filesystem::create_directories(out_dir);
    nsum::TrialResults results = nsum::run_experiment(cfg);
    auto write = [&](const char* name, const std::string& text) {
        const std::string path = out_dir + "/" + name;
        std::ofstream f(path);
        if (!f) throw std::runtime_error("cannot open " + path);
        f << text;
        std::cerr << "wrote " << path << '\n';
    };
    write("trials.csv", nsum::trials_csv(results));
    write("tails.csv", nsum::tails_csv(results));
    write("boxplot.csv", nsum::boxplot_csv(results));
    write("minsize.csv", nsum::minsize_csv(results, target));
    return 0;
}

int run_ingest(const std::string& edges_path, const std::string& genres_path,
               const std::string& aliases_path, const std::string& hidden_genre,
               const std::string& instance_out, const std::string& out) {
    nsum::UndirectedGraph graph = nsum::load_edges(edges_path);
    json j{{"nodes", graph.n},
           {"edges", graph.edge_count()},
           {"average_degree", graph.average_degree()}};

    std::map<std::string, std::string> aliases;
    if (!aliases_path.empty()) aliases = nsum::load_genre_aliases(aliases_path);
    auto resolve = [&](const std::string& name) {
        auto it = aliases.find(name);
        return it == aliases.end() ? name : it->second;
    };

    if (!genres_path.empty()) {
        auto genres = nsum::load_genres(genres_path, graph.n);
        for (const auto& [name, ids] : genres) {
            j["genres"][name] = {
                {"count", ids.size()},
                {"rho", static_cast<double>(ids.size()) /
                            static_cast<double>(graph.n)}};
        }
        if (!hidden_genre.empty()) {
            auto it = genres.find(resolve(hidden_genre));
            if (it == genres.end())
                throw std::runtime_error("genre not in dataset: " + hidden_genre);
            nsum::Instance instance = nsum::build_instance(graph, it->second);
            j["instance"] = {{"hidden_genre", hidden_genre},
                             {"hidden", instance.hidden_count()},
                             {"rho", instance.prevalence()}};
            if (!instance_out.empty()) {
                nsum::write_edge_list(instance, instance_out);
                j["instance"]["path"] = instance_out;
            }
        }
    }
    emit(j, out);
    return 0;
}

int run_oracle(std::size_t max_subset) {
    bool all_pass = true;
    for (const auto& model : nsum::default_corpus()) {
        const double mass = nsum::enumerate_total_mass(model) ;
        const bool mass_ok = std::abs(mass - 1.0) <= 1e-12;
        auto exp_rep = nsum::check_expectation_y(model);
        auto corr_rep = nsum::check_negative_correlation(model, max_subset);
        const bool ok = mass_ok && exp_rep.pass && corr_rep.pass;
        all_pass = all_pass && ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << model.label()
                  << "  mass_dev=" << std::abs(mass - 1.0)
                  << " dev_y=" << exp_rep.dev_y
                  << " worst_corr="
                  << std::max({corr_rep.worst_y, corr_rep.worst_y_complement,
                               corr_rep.worst_x, corr_rep.worst_x_complement})
                  << '\n';
    }
    for (std::size_t n = 3; n <= 6; ++n) {
        auto dep = nsum::check_dependence_example(n, 1);
        const bool ok = dep.applicable && dep.strict;
        all_pass = all_pass && ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  dependence n=" << n
                  << " cond=" << dep.conditional
                  << " uncond=" << dep.unconditional << '\n';
    }
    std::cout << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << '\n';
    return all_pass ? 0 : 2;
}

int run_adversarial(std::size_t k, const std::string& out) {
    auto [i1, i2] = nsum::build_adversarial_pair(k);
    auto full_ard = [](const nsum::Instance& inst) {
        nsum::Sample all{&inst, {}};
        all.ids.resize(inst.size());
        for (nsum::NodeId v = 0; v < inst.size(); ++v) all.ids[v] = v;
        return nsum::extract_ard(inst, all);
    };
    auto multiset = [](const nsum::ArdSet& ard) {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
        for (const auto& r : ard.records) pairs.emplace_back(r.reach, r.cases);
        std::sort(pairs.begin(), pairs.end());
        return pairs;
    };
    nsum::ArdSet a1 = full_ard(i1), a2 = full_ard(i2);
    const bool identical = multiset(a1) == multiset(a2);

    json j{{"k", k},
           {"n", i1.size()},
           {"ard_multisets_identical", identical},
           {"lower_bound", nsum::adversarial_lower_bound(i1.size())}};
    json ms = json::array();
    for (auto [r, c] : multiset(a1)) ms.push_back({{"reach", r}, {"cases", c}});
    j["ard_multiset"] = ms;
    auto report = [&](const char* key, const nsum::Instance& inst,
                      const nsum::ArdSet& ard) {
        j[key] = estimates_json(ard, inst.size(), true, inst.bidirectional(),
                                false, inst.prevalence());
    };
    report("hub_hidden", i1, a1);
    report("pendants_hidden", i2, a2);
    emit(j, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"network scale-up estimation toolkit"};
    app.require_subcommand(1);

    std::uint64_t default_seed = 0;
    if (const char* env = std::getenv("NSUM_SEED")) default_seed = std::stoull(env);

    std::string out;

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "generate a network instance");
    std::string g_shape = "random", g_topology = "er", g_pmf, g_placement = "first";
    std::size_t g_n = 0;
    double g_p = 0.0, g_gamma = 0.0, g_rho = 0.0;
    std::int64_t g_hidden = -1;
    std::uint64_t g_seed = default_seed;
    std::string g_out;
    gen->add_option("--n", g_n, "number of nodes")->required();
    gen->add_option("--shape", g_shape, "random|star-hub|star-leaves|clique-pendant");
    gen->add_option("--topology", g_topology, "er|sf|pmf (shape=random)");
    gen->add_option("--p", g_p, "edge probability (er)");
    gen->add_option("--gamma", g_gamma, "power-law exponent (sf)");
    gen->add_option("--pmf", g_pmf, "degree pmf k:p,k:p (pmf)");
    gen->add_option("--rho", g_rho, "hidden prevalence");
    gen->add_option("--hidden-count", g_hidden, "hidden count (overrides --rho)");
    gen->add_option("--placement", g_placement, "first|uniform");
    gen->add_option("--seed", g_seed, "master seed")->envname("NSUM_SEED");
    gen->add_option("--out", g_out, "edge-list output path")->required();

    // --- estimate ---
    auto* est = app.add_subcommand("estimate", "run the estimators on a saved instance");
    std::string e_graph;
    std::size_t e_m = 0;
    std::uint64_t e_seed = default_seed;
    bool e_drop = false;
    est->add_option("--graph", e_graph, "edge-list path (from gen/ingest)")->required();
    est->add_option("--m", e_m, "sample size; 0 = survey every node");
    est->add_option("--seed", e_seed, "sampling seed")->envname("NSUM_SEED");
    est->add_flag("--drop-zeros", e_drop, "drop zero-degree respondents");
    est->add_option("--out", out, "write JSON here instead of stdout");

    // --- bound ---
    auto* bound = app.add_subcommand("bound", "evaluate a tail bound");
    bound->require_subcommand(1);
    double b_beta = 0.0, b_rho = 0.0, b_p = 0.0, b_gamma = 0.0, b_mu = 0.0,
           b_alpha = 0.5, b_delta = 0.0;
    std::size_t b_m = 0, b_n = 0;
    std::string b_pmf, b_pmf_file, b_graph, b_method = "mor", b_mu_mode = "approx";
    bool b_delta_given = false;

    auto* b_mor = bound->add_subcommand("mor", "mean-of-ratios tail bound");
    b_mor->add_option("--beta", b_beta)->required();
    b_mor->add_option("--m", b_m)->required();
    b_mor->add_option("--rho", b_rho)->required();
    b_mor->add_option("--n", b_n, "echoed only; the bound needs m and rho");
    b_mor->add_option("--out", out);

    auto* b_ros = bound->add_subcommand("ros", "ratio-of-sums corollary bound");
    b_ros->add_option("--beta", b_beta)->required();
    b_ros->add_option("--m", b_m)->required();
    b_ros->add_option("--rho", b_rho)->required();
    b_ros->add_option("--out", out);

    auto* b_rospmf = bound->add_subcommand(
        "ros-pmf", "ratio-of-sums bound averaged over a reach-sum pmf");
    b_rospmf->add_option("--beta", b_beta)->required();
    b_rospmf->add_option("--rho", b_rho)->required();
    b_rospmf->add_option("--pmf-file", b_pmf_file, "CSV lines R,prob");
    b_rospmf->add_option("--degrees", b_pmf, "degree pmf k:p to convolve");
    b_rospmf->add_option("--m", b_m, "sample size (with --degrees)");
    b_rospmf->add_option("--n", b_n, "node count (with --degrees)");
    b_rospmf->add_option("--out", out);

    auto* b_er = bound->add_subcommand("er-ros", "Erdos-Renyi split bound");
    b_er->add_option("--beta", b_beta)->required();
    b_er->add_option("--rho", b_rho)->required();
    b_er->add_option("--m", b_m)->required();
    b_er->add_option("--n", b_n)->required();
    b_er->add_option("--p", b_p)->required();
    b_er->add_option("--delta", b_delta, "fixed slack; omitted = minimized")
        ->each([&](const std::string&) { b_delta_given = true; });
    b_er->add_option("--out", out);

    auto* b_sf = bound->add_subcommand("sf-ros", "scale-free split bound");
    b_sf->add_option("--beta", b_beta)->required();
    b_sf->add_option("--rho", b_rho)->required();
    b_sf->add_option("--m", b_m)->required();
    b_sf->add_option("--n", b_n)->required();
    b_sf->add_option("--gamma", b_gamma)->required();
    b_sf->add_option("--delta", b_delta, "fixed slack; omitted = minimized")
        ->each([&](const std::string&) { b_delta_given = true; });
    b_sf->add_option("--mu-mode", b_mu_mode, "approx|exact");
    b_sf->add_option("--out", out);

    auto* b_ch = bound->add_subcommand("chernoff", "concentration inequality");
    b_ch->add_option("--mu", b_mu)->required();
    b_ch->add_option("--beta", b_beta, "two-sided factor (> 1)");
    b_ch->add_option("--delta", b_delta, "lower-tail slack in (0,1)")
        ->each([&](const std::string&) { b_delta_given = true; });
    b_ch->add_option("--out", out);

    auto* b_ss = bound->add_subcommand("sample-size", "sufficient sample size");
    b_ss->add_option("--n", b_n)->required();
    b_ss->add_option("--rho", b_rho)->required();
    b_ss->add_option("--beta", b_beta)->required();
    b_ss->add_option("--alpha", b_alpha, "confidence exponent (default 0.5)");
    b_ss->add_option("--out", out);

    auto* b_wc = bound->add_subcommand("worstcase",
                                       "full-sampling worst-case factors");
    b_wc->add_option("--graph", b_graph)->required();
    b_wc->add_option("--method", b_method, "mor|ros");
    b_wc->add_option("--out", out);

    auto* b_alb = bound->add_subcommand("adversarial-lb",
                                        "estimator-independent lower bound");
    b_alb->add_option("--n", b_n)->required();
    b_alb->add_option("--out", out);

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo experiment to CSV");
    std::string s_config, s_out_dir = ".";
    std::size_t s_threads = 0;
    std::uint64_t s_seed = 0;
    double s_target = 0.05;
    sweep->add_option("--config", s_config, "experiment config file")->required();
    sweep->add_option("--threads", s_threads, "0 = hardware concurrency");
    auto* s_seed_opt =
        sweep->add_option("--seed", s_seed, "override the config's master seed")
            ->envname("NSUM_SEED");
    sweep->add_option("--out-dir", s_out_dir, "directory for the CSV files");
    sweep->add_option("--target", s_target, "tail target for minsize.csv");

    // --- ingest ---
    auto* ing = app.add_subcommand("ingest", "load a friendship dataset");
    std::string i_edges, i_genres, i_aliases, i_genre, i_instance_out;
    ing->add_option("--edges", i_edges, "edge CSV")->required();
    ing->add_option("--genres", i_genres, "genre JSON");
    ing->add_option("--aliases", i_aliases, "display-label alias file");
    ing->add_option("--genre", i_genre, "hidden population genre");
    ing->add_option("--instance-out", i_instance_out, "save the built instance");
    ing->add_option("--out", out, "write JSON here instead of stdout");

    // --- oracle ---
    auto* orc = app.add_subcommand("oracle", "exhaustive lemma checks");
    std::string o_corpus = "default";
    std::size_t o_subset = 3;
    orc->add_option("--corpus", o_corpus, "default");
    orc->add_option("--max-subset", o_subset, "largest product subset checked");

    // --- adversarial ---
    auto* adv = app.add_subcommand("adversarial", "indistinguishable pair report");
    std::size_t a_k = 0;
    bool a_full = true;
    adv->add_option("--k", a_k, "clique size")->required();
    adv->add_flag("--full-sample", a_full, "survey every node (always on)");
    adv->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*gen)
            return run_gen(g_shape, g_n, g_topology, g_p, g_gamma, g_pmf, g_rho,
                           g_hidden, g_placement, g_seed, g_out);
        if (*est) return run_estimate(e_graph, e_m, e_seed, e_drop, out);
        if (*bound) {
            if (*b_mor || *b_ros) {
                emit(bound_json(nsum::mor_bound(b_beta, b_m, b_rho)), out);
            } else if (*b_rospmf) {
                std::map<std::uint64_t, double> pmf;
                if (!b_pmf_file.empty()) {
                    std::ifstream f(b_pmf_file);
                    if (!f) throw std::runtime_error("cannot open " + b_pmf_file);
                    std::string line;
                    while (std::getline(f, line)) {
                        if (line.empty()) continue;
                        auto comma = line.find(',');
                        if (comma == std::string::npos)
                            throw std::runtime_error("pmf lines are R,prob");
                        pmf[std::stoull(line.substr(0, comma))] =
                            std::stod(line.substr(comma + 1));
                    }
                } else if (!b_pmf.empty()) {
                    if (b_n < 2 || b_m < 1)
                        throw std::runtime_error("--degrees needs --n and --m");
                    pmf = nsum::convolve_rs_pmf(
                        nsum::DegreeDistribution::explicit_pmf(
                            b_n, parse_pmf_spec(b_pmf)),
                        b_m);
                } else {
                    throw std::runtime_error("need --pmf-file or --degrees");
                }
                emit(bound_json(nsum::ros_bound_pmf(b_beta, b_rho, pmf)), out);
            } else if (*b_er) {
                auto policy = b_delta_given ? nsum::DeltaPolicy::at(b_delta)
                                            : nsum::DeltaPolicy::minimize();
                emit(bound_json(
                         nsum::er_ros_bound(b_beta, b_rho, b_m, b_n, b_p, policy)),
                     out);
            } else if (*b_sf) {
                auto policy = b_delta_given ? nsum::DeltaPolicy::at(b_delta)
                                            : nsum::DeltaPolicy::minimize();
                auto mode = b_mu_mode == "exact" ? nsum::SfMuMode::exact_pmf_mean
                                                 : nsum::SfMuMode::closed_form_approx;
                emit(bound_json(nsum::sf_ros_bound(b_beta, b_rho, b_m, b_n,
                                                   b_gamma, policy, mode)),
                     out);
            } else if (*b_ch) {
                if (b_delta_given)
                    emit(bound_json(nsum::chernoff_lower(b_delta, b_mu)), out);
                else if (b_beta > 0.0)
                    emit(bound_json(nsum::chernoff_two_sided(b_beta, b_mu)), out);
                else
                    throw std::runtime_error("need --beta or --delta");
            } else if (*b_ss) {
                const std::size_t m =
                    nsum::sample_size(b_n, b_rho, b_beta, b_alpha);
                emit(json{{"sample_size", m},
                          {"n", b_n},
                          {"rho", b_rho},
                          {"beta", b_beta},
                          {"alpha", b_alpha}},
                     out);
            } else if (*b_wc) {
                nsum::Instance inst = nsum::read_edge_list(b_graph);
                nsum::DegreeSummary d{};
                std::vector<std::size_t> outdeg(inst.size(), 0);
                std::uint64_t in_min = UINT64_MAX, in_max = 0, in_sum = 0;
                for (nsum::NodeId v = 0; v < inst.size(); ++v) {
                    const std::uint64_t r = inst.in_degree(v);
                    in_min = std::min(in_min, r);
                    in_max = std::max(in_max, r);
                    in_sum += r;
                    for (nsum::NodeId u : inst.in_neighbors(v)) ++outdeg[u];
                }
                d.in_min = in_min;
                d.in_max = in_max;
                d.in_mean = static_cast<double>(in_sum) /
                            static_cast<double>(inst.size());
                d.out_max = *std::max_element(outdeg.begin(), outdeg.end());
                d.out_min = *std::min_element(outdeg.begin(), outdeg.end());
                auto which = b_method == "ros" ? nsum::Method::RoS
                                               : nsum::Method::MoR;
                auto [up, down] = nsum::fullsampling_worstcase(which, d);
                emit(json{{"method", b_method},
                          {"error_upper_cap", up},
                          {"error_lower_cap", down}},
                     out);
            } else if (*b_alb) {
                emit(json{{"n", b_n},
                          {"lower_bound", nsum::adversarial_lower_bound(b_n)}},
                     out);
            }
            return 0;
        }
        if (*sweep)
            return run_sweep(s_config, s_threads, s_seed,
                             s_seed_opt->count() > 0 ||
                                 std::getenv("NSUM_SEED") != nullptr,
                             s_out_dir, s_target);
        if (*ing)
            return run_ingest(i_edges, i_genres, i_aliases, i_genre,
                              i_instance_out, out);
        if (*orc) {
            if (o_corpus != "default")
                throw std::runtime_error("unknown corpus " + o_corpus);
            return run_oracle(o_subset);
        }
        if (*adv) return run_adversarial(a_k, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
