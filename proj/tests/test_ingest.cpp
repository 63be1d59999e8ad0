#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "nsum/estimators.hpp"
#include "nsum/ingest.hpp"

using namespace nsum;

namespace {

std::string temp_file(const std::string& name, const std::string& content) {
    const std::string path =
        (std::filesystem::temp_directory_path() / name).string();
    std::ofstream f(path);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("edge csv loading") {
    const std::string path =
        temp_file("nsum_edges.csv", "node_1,node_2\n0,1\n1,2\n");
    UndirectedGraph g = load_edges(path);
    CHECK(g.n == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.average_degree() == doctest::Approx(4.0 / 3.0));
    CHECK(g.degrees() == std::vector<std::size_t>{1, 2, 1});
    std::remove(path.c_str());
}

TEST_CASE("edge csv rejects bad rows with line numbers") {
    const std::string self_loop = temp_file("nsum_self.csv", "0,1\n2,2\n");
    CHECK_THROWS_WITH_AS(load_edges(self_loop),
                         doctest::Contains(":2: self-loop"), std::runtime_error);
    std::remove(self_loop.c_str());

    const std::string dup = temp_file("nsum_dup.csv", "0,1\n1,0\n");
    CHECK_THROWS_WITH_AS(load_edges(dup), doctest::Contains(":2: duplicate"),
                         std::runtime_error);
    std::remove(dup.c_str());

    const std::string bad = temp_file("nsum_bad.csv", "0,1\nhello\n");
    CHECK_THROWS_AS(load_edges(bad), std::runtime_error);
    std::remove(bad.c_str());
}

TEST_CASE("genre json inversion") {
    const std::string path = temp_file(
        "nsum_genres.json", R"({"0":["Dance"],"1":["Dance","Pop"]})");
    auto genres = load_genres(path, 3);
    REQUIRE(genres.size() == 2);
    CHECK(genres.at("Dance") == std::vector<NodeId>{0, 1});
    CHECK(genres.at("Pop") == std::vector<NodeId>{1});

    // Id outside the node universe.
    CHECK_THROWS_AS(load_genres(path, 1), std::runtime_error);
    std::remove(path.c_str());

    const std::string bad = temp_file("nsum_genres_bad.json", "{not json");
    CHECK_THROWS_AS(load_genres(bad, 0), std::runtime_error);
    std::remove(bad.c_str());
}

TEST_CASE("genre alias file") {
    const std::string path = temp_file(
        "nsum_aliases.txt", "# display = dataset\nFilm-Games = Film & Games\n");
    auto aliases = load_genre_aliases(path);
    REQUIRE(aliases.size() == 1);
    CHECK(aliases.at("Film-Games") == "Film & Games");
    std::remove(path.c_str());
}

TEST_CASE("building instances from undirected graphs") {
    UndirectedGraph path_graph;
    path_graph.n = 3;
    path_graph.edges = {{0, 1}, {1, 2}};
    Instance inst = build_instance(path_graph, {1});
    CHECK(inst.bidirectional());

    Sample all{&inst, {0, 1, 2}};
    auto ard = extract_ard(inst, all);
    CHECK(ard.records[0].reach == 1);
    CHECK(ard.records[0].cases == 1);
    CHECK(ard.records[1].reach == 2);
    CHECK(ard.records[1].cases == 0);
    CHECK(ard.records[2].reach == 1);
    CHECK(ard.records[2].cases == 1);

    UndirectedGraph triangle;
    triangle.n = 3;
    triangle.edges = {{0, 1}, {0, 2}, {1, 2}};
    Instance tri = build_instance(triangle, {});
    for (NodeId v = 0; v < 3; ++v) CHECK(tri.in_degree(v) == 2);

    // Handshake: directed edge count is twice the undirected one.
    CHECK(tri.edge_count() == 2 * triangle.edge_count());
}
