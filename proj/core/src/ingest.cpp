#include "nsum/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace nsum {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line,
                       const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::uint64_t parse_id(const std::string& path, std::size_t lineno,
                       const char* begin, const char* end) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
        fail(path, lineno, "expected an integer node id");
    return v;
}

}  // namespace

double UndirectedGraph::average_degree() const {
    if (n == 0) return 0.0;
    return 2.0 * static_cast<double>(edges.size()) / static_cast<double>(n);
}

std::vector<std::size_t> UndirectedGraph::degrees() const {
    std::vector<std::size_t> d(n, 0);
    for (auto [u, v] : edges) {
        ++d[u];
        ++d[v];
    }
    return d;
}

UndirectedGraph load_edges(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_edges: cannot open " + path);

    UndirectedGraph g;
    std::unordered_set<std::uint64_t> seen;
    std::uint64_t max_id = 0;
    bool any = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line == "node_1,node_2") continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            fail(path, lineno, "expected two comma-separated columns");
        const std::uint64_t a =
            parse_id(path, lineno, line.data(), line.data() + comma);
        const std::uint64_t b = parse_id(path, lineno, line.data() + comma + 1,
                                         line.data() + line.size());
        if (a == b) fail(path, lineno, "self-loop");
        const std::uint64_t lo = std::min(a, b), hi = std::max(a, b);
        if (hi > std::numeric_limits<NodeId>::max())
            fail(path, lineno, "node id out of range");
        if (!seen.insert((lo << 32) | hi).second)
            fail(path, lineno, "duplicate edge");
        g.edges.emplace_back(static_cast<NodeId>(lo), static_cast<NodeId>(hi));
        max_id = std::max(max_id, hi);
        any = true;
    }
    g.n = any ? static_cast<std::size_t>(max_id) + 1 : 0;
    return g;
}

std::map<std::string, std::vector<NodeId>> load_genres(const std::string& path,
                                                       std::size_t node_count) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_genres: cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("load_genres: " + path + ": " + e.what());
    }
    if (!doc.is_object())
        throw std::runtime_error("load_genres: " + path +
                                 ": top level must be an object");

    std::map<std::string, std::vector<NodeId>> index;
    for (const auto& [key, genres] : doc.items()) {
        std::uint64_t id = 0;
        auto [ptr, ec] =
            std::from_chars(key.data(), key.data() + key.size(), id);
        if (ec != std::errc{} || ptr != key.data() + key.size())
            throw std::runtime_error("load_genres: non-integer node id \"" +
                                     key + "\"");
        if (node_count && id >= node_count)
            throw std::runtime_error("load_genres: node id " + key +
                                     " outside 0.." +
                                     std::to_string(node_count - 1));
        if (!genres.is_array())
            throw std::runtime_error("load_genres: value for node " + key +
                                     " must be an array");
        for (const auto& genre : genres)
            index[genre.get<std::string>()].push_back(
                static_cast<NodeId>(id));
    }
    for (auto& [genre, ids] : index) std::sort(ids.begin(), ids.end());
    return index;
}

std::map<std::string, std::string> load_genre_aliases(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_genre_aliases: cannot open " + path);
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    std::map<std::string, std::string> aliases;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(path, lineno, "expected `display label = dataset label`");
        aliases[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return aliases;
}

Instance build_instance(const UndirectedGraph& graph,
                        const std::vector<NodeId>& hidden) {
    std::vector<std::vector<NodeId>> in_neighbors(graph.n);
    for (auto [u, v] : graph.edges) {
        in_neighbors[u].push_back(v);
        in_neighbors[v].push_back(u);
    }
    return Instance(graph.n, std::move(in_neighbors), hidden);
}

}  // namespace nsum
