#include "graphcohom/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace gcoh {

std::vector<std::size_t> EdgeSubset::indices() const
{
    std::vector<std::size_t> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1)
        out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
}

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(std::size_t element_count, std::vector<std::vector<int>> blocks)
    : block_of_(element_count, -1)
{
    for (auto& b : blocks) {
        if (b.empty())
            throw std::invalid_argument("partition block must be nonempty");
        std::sort(b.begin(), b.end());
    }
    std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (int v : blocks[i]) {
            if (v < 0 || static_cast<std::size_t>(v) >= element_count)
                throw std::invalid_argument("partition element " + std::to_string(v) + " out of range");
            if (block_of_[static_cast<std::size_t>(v)] != -1)
                throw std::invalid_argument("partition blocks are not disjoint at element " + std::to_string(v));
            block_of_[static_cast<std::size_t>(v)] = static_cast<int>(i);
        }
    }
    for (std::size_t v = 0; v < element_count; ++v)
        if (block_of_[v] == -1)
            throw std::invalid_argument("partition does not cover element " + std::to_string(v));
    blocks_ = std::move(blocks);
}

Partition Partition::singletons(std::size_t n)
{
    std::vector<std::vector<int>> blocks;
    for (std::size_t v = 0; v < n; ++v)
        blocks.push_back({static_cast<int>(v)});
    return Partition(n, std::move(blocks));
}

Partition Partition::whole(std::size_t n)
{
    if (n == 0)
        return Partition(0, {});
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return Partition(n, {all});
}

bool refines(const Partition& q, const Partition& p)
{
    if (q.element_count() != p.element_count())
        throw std::invalid_argument("refines: partitions of different sets");
    for (const auto& b : q.blocks()) {
        int target = p.block_of(b.front());
        for (int v : b)
            if (p.block_of(v) != target)
                return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Graph

namespace {

void canonicalize(std::vector<Edge>& edges)
{
    for (auto& [a, b] : edges)
        if (a > b)
            std::swap(a, b);
    std::stable_sort(edges.begin(), edges.end());
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (a > b)
            std::swap(a, b);
        parent[static_cast<std::size_t>(b)] = a;
        return true;
    }
};

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges))
{
    if (edges_.size() > max_edges)
        throw std::invalid_argument("graph has " + std::to_string(edges_.size()) + " edges; at most "
                                    + std::to_string(max_edges) + " are supported");
    for (const auto& [a, b] : edges_)
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n)
            throw std::invalid_argument("edge (" + std::to_string(a) + "," + std::to_string(b)
                                        + ") has an endpoint outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
    canonicalize(edges_);
}

Graph Graph::multigraph(std::size_t n, std::vector<Edge> edges)
{
    return Graph(n, std::move(edges));
}

Graph Graph::simple(std::size_t n, std::vector<Edge> edges)
{
    Graph g(n, std::move(edges));
    if (!g.is_simple())
        throw std::invalid_argument("simple graph may not contain loops or repeated edges");
    return g;
}

Graph Graph::complete(std::size_t n)
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            e.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return simple(n, std::move(e));
}

Graph Graph::cycle(std::size_t n)
{
    if (n < 3)
        throw std::invalid_argument("cycle graph needs at least 3 vertices");
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        e.emplace_back(static_cast<int>(i), static_cast<int>((i + 1) % n));
    return simple(n, std::move(e));
}

Graph Graph::path(std::size_t n)
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i)
        e.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
    return simple(n, std::move(e));
}

Graph Graph::edgeless(std::size_t n)
{
    return simple(n, {});
}

bool Graph::is_simple() const
{
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (is_loop(e))
            return false;
        if (e > 0 && edges_[e] == edges_[e - 1])
            return false;
    }
    return true;
}

bool Graph::is_connected() const
{
    return component_count(*this, all_edges()) <= 1;
}

std::string Graph::encode() const
{
    std::ostringstream os;
    os << n_ << ':';
    for (const auto& [a, b] : edges_)
        os << a << '-' << b << ',';
    return os.str();
}

Graph Graph::relabel(const std::vector<int>& perm) const
{
    if (perm.size() != n_)
        throw std::invalid_argument("relabel: permutation size mismatch");
    std::vector<int> seen(n_, 0);
    for (int v : perm) {
        if (v < 0 || static_cast<std::size_t>(v) >= n_ || seen[static_cast<std::size_t>(v)]++)
            throw std::invalid_argument("relabel: not a permutation");
    }
    std::vector<Edge> e;
    for (const auto& [a, b] : edges_)
        e.emplace_back(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
    return Graph(n_, std::move(e));
}

Graph Graph::parse(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    long n = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first))
            continue;
        if (first == "vertices") {
            if (n >= 0)
                throw ParseError(lineno, "duplicate 'vertices' line");
            if (!(ls >> n) || n < 0)
                throw ParseError(lineno, "expected 'vertices N' with N >= 0");
            std::string extra;
            if (ls >> extra)
                throw ParseError(lineno, "trailing text '" + extra + "'");
            continue;
        }
        if (n < 0)
            throw ParseError(lineno, "edge before 'vertices N' line");
        long a = 0, b = 0;
        std::istringstream es(line);
        std::string extra;
        if (!(es >> a >> b) || (es >> extra))
            throw ParseError(lineno, "expected an edge 'i j', got '" + line + "'");
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw ParseError(lineno, "edge endpoint out of range 0.." + std::to_string(n - 1));
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
        if (edges.size() > max_edges)
            throw ParseError(lineno, "too many edges (max " + std::to_string(max_edges) + ")");
    }
    if (n < 0)
        throw ParseError(lineno + 1, "missing 'vertices N' line");
    return Graph(static_cast<std::size_t>(n), std::move(edges));
}

Graph Graph::parse_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open graph file '" + path + "'");
    return parse(in);
}

// ---------------------------------------------------------------------------
// Subgraph operations

Partition components(const Graph& g, EdgeSubset s)
{
    const std::size_t n = g.vertex_count();
    UnionFind uf(n);
    for (std::size_t e : s.indices()) {
        const auto& [a, b] = g.edge(e);
        uf.unite(a, b);
    }
    std::vector<std::vector<int>> blocks;
    std::vector<int> slot(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
        int r = uf.find(static_cast<int>(v));
        if (slot[static_cast<std::size_t>(r)] == -1) {
            slot[static_cast<std::size_t>(r)] = static_cast<int>(blocks.size());
            blocks.emplace_back();
        }
        blocks[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(static_cast<int>(v));
    }
    return Partition(n, std::move(blocks));
}

std::size_t component_count(const Graph& g, EdgeSubset s)
{
    UnionFind uf(g.vertex_count());
    std::size_t count = g.vertex_count();
    for (std::size_t e : s.indices()) {
        const auto& [a, b] = g.edge(e);
        if (uf.unite(a, b))
            --count;
    }
    return count;
}

bool is_forest(const Graph& g, EdgeSubset s)
{
    return s.size() + component_count(g, s) == g.vertex_count();
}

EdgeClassification classify_edges(const Graph& g, EdgeSubset s)
{
    EdgeClassification out;
    const std::size_t l = component_count(g, s);
    for (std::size_t e : s.indices()) {
        if (component_count(g, s.without(e)) == l)
            out.internal = out.internal.with(e);
        else
            out.external = out.external.with(e);
    }
    return out;
}

Graph delete_edge(const Graph& g, std::size_t e)
{
    if (e >= g.edge_count())
        throw std::invalid_argument("delete_edge: edge index out of range");
    std::vector<Edge> edges = g.edges();
    edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(e));
    return Graph::multigraph(g.vertex_count(), std::move(edges));
}

std::vector<int> contraction_vertex_map(const Graph& g, std::size_t e)
{
    if (e >= g.edge_count())
        throw std::invalid_argument("contract_edge: edge index out of range");
    if (g.is_loop(e))
        throw std::invalid_argument("contract_edge: cannot contract a loop");
    const auto [lo, hi] = g.edge(e);
    std::vector<int> map(g.vertex_count());
    for (std::size_t v = 0; v < map.size(); ++v) {
        int iv = static_cast<int>(v);
        map[v] = iv < hi ? iv : (iv == hi ? lo : iv - 1);
    }
    return map;
}

Graph contract_edge(const Graph& g, std::size_t e)
{
    const std::vector<int> map = contraction_vertex_map(g, e);
    std::vector<Edge> edges;
    for (std::size_t f = 0; f < g.edge_count(); ++f) {
        if (f == e)
            continue;
        const auto& [a, b] = g.edge(f);
        edges.emplace_back(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]);
    }
    return Graph::multigraph(g.vertex_count() - 1, std::move(edges));
}

int find_edge(const Graph& g, int u, int v)
{
    if (u > v)
        std::swap(u, v);
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (g.edge(e) == Edge{u, v})
            return static_cast<int>(e);
    return -1;
}

EdgeSubset cycle_edges(const Graph& g, const std::vector<int>& cycle)
{
    EdgeSubset s;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        int e = find_edge(g, cycle[i], cycle[(i + 1) % cycle.size()]);
        if (e < 0)
            throw std::invalid_argument("cycle uses a non-edge");
        s = s.with(static_cast<std::size_t>(e));
    }
    return s;
}

std::vector<std::vector<int>> enumerate_cycles(const Graph& g)
{
    if (!g.is_simple())
        throw std::invalid_argument("enumerate_cycles requires a simple graph");
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<int>> adj(n);
    for (const auto& [a, b] : g.edges()) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& nb : adj)
        std::sort(nb.begin(), nb.end());

    std::vector<std::vector<int>> cycles;
    std::vector<int> path;
    std::vector<char> on_path(n, 0);
    // Paths start at their minimal vertex and only visit larger vertices.
    auto extend = [&](auto&& self, int start, int v) -> void {
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (w == start && path.size() >= 3 && path[1] < path.back()) {
                cycles.push_back(path);
                continue;
            }
            if (w <= start || on_path[static_cast<std::size_t>(w)])
                continue;
            on_path[static_cast<std::size_t>(w)] = 1;
            path.push_back(w);
            self(self, start, w);
            path.pop_back();
            on_path[static_cast<std::size_t>(w)] = 0;
        }
    };
    for (std::size_t s = 0; s < n; ++s) {
        path = {static_cast<int>(s)};
        on_path[s] = 1;
        extend(extend, static_cast<int>(s), static_cast<int>(s));
        on_path[s] = 0;
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

}  // namespace gcoh
