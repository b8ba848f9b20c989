#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace propa {

// Shortest-path lengths between all vertex pairs; -1 across components.
struct DistanceMatrix {
    static constexpr int infinite = -1;

    int n = 0;
    std::vector<int> d; // row-major n*n

    int at(int i, int j) const { return d[static_cast<size_t>(i) * n + j]; }
    static bool finite(int dist) { return dist >= 0; }
};

// Finite undirected simple graph in canonical form: every edge is stored as
// (u, v) with u < v and the edge list is sorted lexicographically. The pair
// (u, v) doubles as the directed edge u -> v wherever an orientation is
// needed (flows use signs for the opposite direction). Immutable after
// construction.
class Graph {
  public:
    Graph() = default;
    Graph(int vertex_count, std::vector<std::pair<int, int>> edge_list, std::string name = "");

    int n() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::string& name() const { return name_; }

    const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
    const std::vector<int>& incident_edges(int v) const { return incident_[v]; }
    int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
    std::optional<int> edge_id(int u, int v) const;
    bool has_edge(int u, int v) const { return edge_id(u, v).has_value(); }

  private:
    int vertex_count_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::string name_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<std::vector<int>> incident_; // edge ids per vertex
};

DistanceMatrix all_pairs_distances(const Graph& g);

// Length of a shortest cycle; nullopt for forests.
std::optional<int> girth(const Graph& g);

int diameter_or_max_finite(const Graph& g); // max finite pairwise distance

// True iff the path metric of h agrees with g restricted to the embedded
// vertices, for every pair finite in g. The embedding must be injective and
// edge-preserving.
bool is_convex_subgraph(const Graph& h, const Graph& g, const std::vector<int>& embedding);

// Generators. Vertex labelling is documented per generator; all outputs are
// in canonical form.
Graph hypercube(int n);              // vertices are n-bit numbers, edges flip one bit
Graph grid(int rows, int cols);      // row-major labels
Graph circular_ladder(int k);        // ring i and ring k+i, rung (i, k+i); k >= 3
Graph heawood();
Graph petersen();
Graph cycle(int k); // k >= 3
Graph path(int k);  // k vertices, k-1 edges
Graph disjoint_union(const std::vector<Graph>& parts);
Graph with_isolated_vertex(const Graph& g);

// Edge ids with exactly one endpoint in the sorted vertex set.
std::vector<int> boundary_edges(const Graph& g, const std::vector<int>& subset);

// Text format: "c" comments, "p <n>", "e <u> <v>" (0-based, u < v, sorted).
Graph read_graph_text(std::istream& in);
void write_graph_text(std::ostream& out, const Graph& g);

} // namespace propa
