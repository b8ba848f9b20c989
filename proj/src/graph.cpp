#include "propa/graph.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "propa/errors.hpp"

namespace propa {

Graph::Graph(int vertex_count, std::vector<std::pair<int, int>> edge_list, std::string name)
    : vertex_count_(vertex_count), name_(std::move(name)) {
    if (vertex_count < 0) throw Error("Graph: negative vertex count");
    edges_.reserve(edge_list.size());
    for (auto [u, v] : edge_list) {
        if (u == v) throw Error("Graph: self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= vertex_count)
            throw Error("Graph: edge endpoint out of range: (" + std::to_string(u) + ", " +
                        std::to_string(v) + ")");
        edges_.emplace_back(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw Error("Graph: duplicate edge");

    adjacency_.assign(vertex_count_, {});
    incident_.assign(vertex_count_, {});
    for (int e = 0; e < edge_count(); ++e) {
        auto [u, v] = edges_[e];
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
        incident_[u].push_back(e);
        incident_[v].push_back(e);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

std::optional<int> Graph::edge_id(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
    if (it != edges_.end() && *it == std::make_pair(u, v))
        return static_cast<int>(it - edges_.begin());
    return std::nullopt;
}

DistanceMatrix all_pairs_distances(const Graph& g) {
    DistanceMatrix dm;
    dm.n = g.n();
    dm.d.assign(static_cast<size_t>(g.n()) * g.n(), DistanceMatrix::infinite);
    std::vector<int> dist(g.n());
    std::deque<int> queue;
    for (int s = 0; s < g.n(); ++s) {
        std::fill(dist.begin(), dist.end(), DistanceMatrix::infinite);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int w : g.neighbors(u)) {
                if (dist[w] == DistanceMatrix::infinite) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        for (int j = 0; j < g.n(); ++j) dm.d[static_cast<size_t>(s) * g.n() + j] = dist[j];
    }
    return dm;
}

std::optional<int> girth(const Graph& g) {
    // BFS from every root; a non-tree edge (u, w) closes a cycle of length
    // dist[u] + dist[w] + 1 through the root. The minimum over roots is exact.
    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(g.n()), parent(g.n());
    std::deque<int> queue;
    for (int s = 0; s < g.n(); ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int w : g.neighbors(u)) {
                if (dist[w] == -1) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if (w != parent[u]) {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

int diameter_or_max_finite(const Graph& g) {
    auto dm = all_pairs_distances(g);
    int best = 0;
    for (int x : dm.d)
        if (DistanceMatrix::finite(x)) best = std::max(best, x);
    return best;
}

bool is_convex_subgraph(const Graph& h, const Graph& g, const std::vector<int>& embedding) {
    if (static_cast<int>(embedding.size()) != h.n())
        throw Error("is_convex_subgraph: embedding size mismatch");
    std::vector<char> used(g.n(), 0);
    for (int x : embedding) {
        if (x < 0 || x >= g.n()) throw Error("is_convex_subgraph: embedding out of range");
        if (used[x]) throw Error("is_convex_subgraph: embedding not injective");
        used[x] = 1;
    }
    for (auto [a, b] : h.edges())
        if (!g.has_edge(embedding[a], embedding[b]))
            throw Error("is_convex_subgraph: embedding does not preserve edges");

    auto dh = all_pairs_distances(h);
    auto dg = all_pairs_distances(g);
    for (int a = 0; a < h.n(); ++a) {
        for (int b = a + 1; b < h.n(); ++b) {
            int in_g = dg.at(embedding[a], embedding[b]);
            if (DistanceMatrix::finite(in_g) && dh.at(a, b) != in_g) return false;
        }
    }
    return true;
}

Graph hypercube(int n) {
    if (n < 1) throw Error("hypercube: n must be >= 1");
    if (n > 25) throw Error("hypercube: n too large");
    int count = 1 << n;
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < count; ++v)
        for (int b = 0; b < n; ++b)
            if (!(v & (1 << b))) edges.emplace_back(v, v | (1 << b));
    return Graph(count, std::move(edges), "hypercube:" + std::to_string(n));
}

Graph grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw Error("grid: dimensions must be >= 1");
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    }
    return Graph(rows * cols, std::move(edges),
                 "grid:" + std::to_string(rows) + "x" + std::to_string(cols));
}

Graph circular_ladder(int k) {
    if (k < 3) throw Error("circular_ladder: k must be >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i) {
        edges.emplace_back(i, (i + 1) % k);
        edges.emplace_back(k + i, k + (i + 1) % k);
        edges.emplace_back(i, k + i);
    }
    return Graph(2 * k, std::move(edges), "ladder:" + std::to_string(k));
}

Graph heawood() {
    // LCF notation [5, -5]^7 on a 14-cycle.
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 14; ++i) edges.emplace_back(i, (i + 1) % 14);
    for (int i = 0; i < 14; i += 2) edges.emplace_back(i, (i + 5) % 14);
    return Graph(14, std::move(edges), "heawood");
}

Graph petersen() {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);         // outer cycle
        edges.emplace_back(5 + i, 5 + (i + 2) % 5); // inner pentagram
        edges.emplace_back(i, 5 + i);               // spokes
    }
    return Graph(10, std::move(edges), "petersen");
}

Graph cycle(int k) {
    if (k < 3) throw Error("cycle: k must be >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i) edges.emplace_back(i, (i + 1) % k);
    return Graph(k, std::move(edges), "cycle:" + std::to_string(k));
}

Graph path(int k) {
    if (k < 1) throw Error("path: k must be >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
    return Graph(k, std::move(edges), "path:" + std::to_string(k));
}

Graph disjoint_union(const std::vector<Graph>& parts) {
    int total = 0;
    std::vector<std::pair<int, int>> edges;
    std::string name = "union:";
    for (size_t p = 0; p < parts.size(); ++p) {
        for (auto [u, v] : parts[p].edges()) edges.emplace_back(total + u, total + v);
        total += parts[p].n();
        if (p > 0) name += "+";
        name += parts[p].name().empty() ? "?" : parts[p].name();
    }
    return Graph(total, std::move(edges), name);
}

Graph with_isolated_vertex(const Graph& g) {
    return Graph(g.n() + 1, g.edges(), g.name().empty() ? "isolated+" : g.name() + "+isolated");
}

std::vector<int> boundary_edges(const Graph& g, const std::vector<int>& subset) {
    std::vector<char> in(g.n(), 0);
    for (int v : subset) in[v] = 1;
    std::vector<int> out;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        if (in[u] != in[v]) out.push_back(e);
    }
    return out;
}

Graph read_graph_text(std::istream& in) {
    std::string line;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "c") continue;
        if (tag == "p") {
            if (n != -1) throw ParseError("graph text: repeated p line");
            if (!(ls >> n) || n < 0) throw ParseError("graph text: bad p line");
        } else if (tag == "e") {
            int u, v;
            if (n == -1) throw ParseError("graph text: e before p");
            if (!(ls >> u >> v)) throw ParseError("graph text: bad e line " + std::to_string(lineno));
            edges.emplace_back(u, v);
        } else {
            throw ParseError("graph text: unknown line tag '" + tag + "'");
        }
    }
    if (n == -1) throw ParseError("graph text: missing p line");
    return Graph(n, std::move(edges));
}

void write_graph_text(std::ostream& out, const Graph& g) {
    if (!g.name().empty()) out << "c " << g.name() << "\n";
    out << "p " << g.n() << "\n";
    for (auto [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
}

} // namespace propa
