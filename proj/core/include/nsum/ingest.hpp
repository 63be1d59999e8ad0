#ifndef NSUM_INGEST_HPP_
#define NSUM_INGEST_HPP_

#include <map>
#include <string>
#include <vector>

#include "nsum/types.hpp"

namespace nsum {

// Mutual-friendship network as published: dense ids 0..n-1, each undirected
// edge stored once with u < v.
struct UndirectedGraph {
    std::size_t n = 0;
    std::vector<std::pair<NodeId, NodeId>> edges;

    std::size_t edge_count() const { return edges.size(); }
    double average_degree() const;
    std::vector<std::size_t> degrees() const;
};

// CSV with two integer columns; a `node_1,node_2` header is skipped.
// Duplicate edges and self-loops are rejected with their line number.
UndirectedGraph load_edges(const std::string& path);

// JSON object node-id string -> array of genre labels, inverted into
// genre -> sorted node set. Ids >= node_count are rejected (0 disables the
// check, for callers that read genres before the edge file).
std::map<std::string, std::vector<NodeId>> load_genres(const std::string& path,
                                                       std::size_t node_count = 0);

// `display label = dataset label` lines; blank lines and # comments ignored.
std::map<std::string, std::string> load_genre_aliases(const std::string& path);

// Each undirected edge becomes two directed ones, so R_v equals the
// undirected degree and the instance is bidirectional.
Instance build_instance(const UndirectedGraph& graph,
                        const std::vector<NodeId>& hidden);

}  // namespace nsum

#endif  // NSUM_INGEST_HPP_
