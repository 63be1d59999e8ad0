#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cstdio>
#include <filesystem>

#include "nsum/estimators.hpp"
#include "nsum/graphgen.hpp"

using namespace nsum;

namespace {

std::vector<std::pair<std::uint64_t, std::uint64_t>> ard_multiset(
    const Instance& inst) {
    Sample all{&inst, {}};
    all.ids.resize(inst.size());
    for (NodeId v = 0; v < inst.size(); ++v) all.ids[v] = v;
    auto ard = extract_ard(inst, all);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (const auto& r : ard.records) pairs.emplace_back(r.reach, r.cases);
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace

TEST_CASE("generate with forced complete in-neighborhoods") {
    GeneratorConfig cfg;
    cfg.n = 3;
    cfg.degrees = DegreeDistribution::explicit_pmf(3, {{2, 1.0}});
    cfg.hidden_count = 1;
    cfg.seed = 7;
    Instance inst = generate(cfg);
    for (NodeId v = 0; v < 3; ++v) {
        REQUIRE(inst.in_degree(v) == 2);
        for (NodeId u : inst.in_neighbors(v)) CHECK(u != v);
    }
    CHECK(inst.hidden_count() == 1);
    CHECK(inst.is_hidden(0));
}

TEST_CASE("generate is deterministic in the seed") {
    GeneratorConfig cfg;
    cfg.n = 200;
    cfg.degrees = DegreeDistribution::er_truncated(200, 0.05);
    cfg.hidden_count = 10;
    cfg.seed = 12345;
    Instance a = generate(cfg);
    Instance b = generate(cfg);
    for (NodeId v = 0; v < 200; ++v)
        CHECK(a.in_neighbors(v) == b.in_neighbors(v));

    cfg.seed = 12346;
    Instance c = generate(cfg);
    bool any_diff = false;
    for (NodeId v = 0; v < 200 && !any_diff; ++v)
        any_diff = a.in_neighbors(v) != c.in_neighbors(v);
    CHECK(any_diff);
}

TEST_CASE("generated degrees follow the configured distribution") {
    const std::size_t n = 10'000;
    GeneratorConfig cfg;
    cfg.n = n;
    cfg.degrees =
        DegreeDistribution::er_truncated(n, 30.0 / static_cast<double>(n - 1));
    cfg.hidden_count = 500;
    cfg.seed = 99;
    Instance inst = generate(cfg);
    double mean = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        CHECK(inst.in_degree(v) >= 1);
        mean += static_cast<double>(inst.in_degree(v));
    }
    mean /= static_cast<double>(n);
    CHECK(mean == doctest::Approx(cfg.degrees.mean()).epsilon(0.01));
}

TEST_CASE("generate rejects h > n and uniform placement works") {
    GeneratorConfig cfg;
    cfg.n = 10;
    cfg.degrees = DegreeDistribution::explicit_pmf(10, {{1, 1.0}});
    cfg.hidden_count = 11;
    CHECK_THROWS_AS(generate(cfg), std::invalid_argument);

    cfg.hidden_count = 4;
    cfg.placement = HiddenPlacement::uniform_random;
    cfg.seed = 5;
    Instance inst = generate(cfg);
    CHECK(inst.hidden_count() == 4);

    cfg.placement = HiddenPlacement::explicit_set;
    cfg.hidden_ids = {2, 7};
    Instance ex = generate(cfg);
    CHECK(ex.is_hidden(2));
    CHECK(ex.is_hidden(7));
    CHECK(ex.hidden_count() == 2);
}

TEST_CASE("adversarial pair is indistinguishable") {
    for (std::size_t k : {1ul, 2ul, 5ul, 16ul, 64ul}) {
        auto [i1, i2] = build_adversarial_pair(k);
        CHECK(i1.size() == 2 * k + 1);
        CHECK(i1.bidirectional());
        CHECK(i2.bidirectional());
        CHECK(i1.hidden_count() == 1);
        CHECK(i2.hidden_count() == k);
        CHECK(ard_multiset(i1) == ard_multiset(i2));
    }
    CHECK_THROWS_AS(build_adversarial_pair(0), std::invalid_argument);
}

TEST_CASE("adversarial pair k=4 matches the hand count") {
    auto [i1, i2] = build_adversarial_pair(4);
    CHECK(i1.prevalence() == doctest::Approx(1.0 / 9.0));
    CHECK(i2.prevalence() == doctest::Approx(4.0 / 9.0));
    std::vector<std::pair<std::uint64_t, std::uint64_t>> expected = {
        {1, 0}, {1, 0}, {1, 0}, {1, 0}, {4, 0}, {5, 1}, {5, 1}, {5, 1}, {5, 1}};
    CHECK(ard_multiset(i1) == expected);
    CHECK(ard_multiset(i2) == expected);
}

TEST_CASE("adversarial pair k=1 is the 3-path") {
    auto [i1, i2] = build_adversarial_pair(1);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> expected = {
        {1, 0}, {1, 0}, {2, 1}};
    CHECK(ard_multiset(i1) == expected);
    CHECK(ard_multiset(i2) == expected);
}

TEST_CASE("star instances") {
    Instance hub = build_star_instance(10, StarVariant::hub_hidden);
    CHECK(hub.bidirectional());
    CHECK(hub.prevalence() == doctest::Approx(0.1));
    auto ms = ard_multiset(hub);
    // nine leaves (1,1), center (9,0)
    CHECK(std::count(ms.begin(), ms.end(), std::pair<std::uint64_t, std::uint64_t>{1, 1}) == 9);
    CHECK(ms.back() == std::pair<std::uint64_t, std::uint64_t>{9, 0});

    Instance leaves = build_star_instance(10, StarVariant::leaves_hidden);
    auto ms2 = ard_multiset(leaves);
    CHECK(std::count(ms2.begin(), ms2.end(), std::pair<std::uint64_t, std::uint64_t>{1, 0}) == 9);
    CHECK(ms2.back() == std::pair<std::uint64_t, std::uint64_t>{9, 9});

    Instance tiny = build_star_instance(2, StarVariant::hub_hidden);
    CHECK(tiny.edge_count() == 2);
    CHECK_THROWS_AS(build_star_instance(1, StarVariant::hub_hidden),
                    std::invalid_argument);
}

TEST_CASE("clique-pendant instances") {
    Instance c8 = build_clique_pendant(8);
    CHECK(c8.prevalence() == doctest::Approx(0.5));
    auto ms = ard_multiset(c8);
    CHECK(std::count(ms.begin(), ms.end(), std::pair<std::uint64_t, std::uint64_t>{1, 0}) == 4);
    CHECK(std::count(ms.begin(), ms.end(), std::pair<std::uint64_t, std::uint64_t>{4, 1}) == 4);

    Instance c4 = build_clique_pendant(4);
    auto ms4 = ard_multiset(c4);
    CHECK(std::count(ms4.begin(), ms4.end(), std::pair<std::uint64_t, std::uint64_t>{2, 1}) == 2);

    CHECK_THROWS_AS(build_clique_pendant(7), std::invalid_argument);
    CHECK_THROWS_AS(build_clique_pendant(2), std::invalid_argument);
}

TEST_CASE("symmetrized adds reverse edges") {
    Instance one_way(3, {{1}, {2}, {}}, {0});
    CHECK_FALSE(one_way.bidirectional());
    Instance sym = symmetrized(one_way);
    CHECK(sym.bidirectional());
    CHECK(sym.hidden_count() == 1);
    CHECK(sym.in_degree(2) >= 1);
}

TEST_CASE("edge list round trip") {
    GeneratorConfig cfg;
    cfg.n = 50;
    cfg.degrees = DegreeDistribution::explicit_pmf(50, {{2, 0.5}, {3, 0.5}});
    cfg.hidden_count = 5;
    cfg.seed = 31;
    Instance inst = generate(cfg);

    const std::string path =
        (std::filesystem::temp_directory_path() / "nsum_roundtrip.edges").string();
    write_edge_list(inst, path);
    Instance back = read_edge_list(path);
    CHECK(back.size() == inst.size());
    CHECK(back.hidden_ids() == inst.hidden_ids());
    for (NodeId v = 0; v < inst.size(); ++v)
        CHECK(back.in_neighbors(v) == inst.in_neighbors(v));
    std::remove(path.c_str());
    std::remove((path + ".json").c_str());
}
