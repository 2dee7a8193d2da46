#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gcoh {

/// Raised by the text parsers; carries the 1-based offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

using Edge = std::pair<int, int>;

/// Bitmask over edge indices of a fixed graph. Bit i is edge i in canonical order.
class EdgeSubset {
public:
    constexpr EdgeSubset() = default;
    constexpr explicit EdgeSubset(std::uint64_t bits) : bits_(bits) {}

    static constexpr EdgeSubset single(std::size_t e) { return EdgeSubset(std::uint64_t{1} << e); }
    static constexpr EdgeSubset first(std::size_t count)
    {
        return EdgeSubset(count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1);
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool contains(std::size_t e) const { return (bits_ >> e) & 1u; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr bool empty() const { return bits_ == 0; }

    constexpr EdgeSubset with(std::size_t e) const { return EdgeSubset(bits_ | (std::uint64_t{1} << e)); }
    constexpr EdgeSubset without(std::size_t e) const { return EdgeSubset(bits_ & ~(std::uint64_t{1} << e)); }
    constexpr bool is_subset_of(EdgeSubset o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool intersects(EdgeSubset o) const { return (bits_ & o.bits_) != 0; }

    /// Edge indices in ascending order.
    std::vector<std::size_t> indices() const;

    friend constexpr EdgeSubset operator|(EdgeSubset a, EdgeSubset b) { return EdgeSubset(a.bits_ | b.bits_); }
    friend constexpr EdgeSubset operator&(EdgeSubset a, EdgeSubset b) { return EdgeSubset(a.bits_ & b.bits_); }
    friend constexpr bool operator==(EdgeSubset a, EdgeSubset b) = default;
    friend constexpr auto operator<=>(EdgeSubset a, EdgeSubset b) = default;

private:
    std::uint64_t bits_ = 0;
};

/// Set partition of {0..n-1}. Blocks are sorted ascending and ordered by their minimum,
/// so two equal partitions compare equal structurally.
class Partition {
public:
    Partition() = default;
    /// Validates disjointness and coverage of {0..element_count-1}; canonicalizes order.
    Partition(std::size_t element_count, std::vector<std::vector<int>> blocks);

    static Partition singletons(std::size_t n);
    static Partition whole(std::size_t n);

    std::size_t element_count() const { return block_of_.size(); }
    std::size_t size() const { return blocks_.size(); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    const std::vector<int>& block(std::size_t i) const { return blocks_[i]; }
    int block_of(int element) const { return block_of_[static_cast<std::size_t>(element)]; }

    friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

private:
    std::vector<std::vector<int>> blocks_;
    std::vector<int> block_of_;
};

/// True iff every block of q lies inside a block of p.
bool refines(const Partition& q, const Partition& p);

/// Finite graph on vertices 0..n-1 with edges kept in canonical (lexicographic, stable) order.
/// Loops and parallel edges are representable; builders that need a simple graph check is_simple().
class Graph {
public:
    static constexpr std::size_t max_edges = 63;

    Graph() = default;

    /// Rejects loops and duplicate pairs.
    static Graph simple(std::size_t n, std::vector<Edge> edges);
    static Graph multigraph(std::size_t n, std::vector<Edge> edges);

    static Graph complete(std::size_t n);
    static Graph cycle(std::size_t n);
    static Graph path(std::size_t n);
    static Graph edgeless(std::size_t n);

    /// Text format: "vertices N" then one "i j" per line; '#' starts a comment.
    static Graph parse(std::istream& in);
    static Graph parse_file(const std::string& path);

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t e) const { return edges_[e]; }
    EdgeSubset all_edges() const { return EdgeSubset::first(edges_.size()); }

    bool is_loop(std::size_t e) const { return edges_[e].first == edges_[e].second; }
    bool is_simple() const;
    bool is_connected() const;

    /// Stable key usable for memoization and equality of labelled graphs.
    std::string encode() const;

    /// Image of this graph under the vertex relabelling v -> perm[v].
    Graph relabel(const std::vector<int>& perm) const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    Graph(std::size_t n, std::vector<Edge> edges);

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
};

/// Connected components of the spanning subgraph [g:s]; l(S) is the block count.
Partition components(const Graph& g, EdgeSubset s);
inline Partition phi(const Graph& g, EdgeSubset s) { return components(g, s); }
std::size_t component_count(const Graph& g, EdgeSubset s);

bool is_forest(const Graph& g, EdgeSubset s);

struct EdgeClassification {
    EdgeSubset internal;
    EdgeSubset external;
};
EdgeClassification classify_edges(const Graph& g, EdgeSubset s);

Graph delete_edge(const Graph& g, std::size_t e);
/// Merges the endpoints of e: the lower index survives, higher vertices shift down by one.
Graph contract_edge(const Graph& g, std::size_t e);

/// Vertex map used by contract_edge (old vertex -> new vertex).
std::vector<int> contraction_vertex_map(const Graph& g, std::size_t e);

/// Simple cycles of length >= 3, each once: starts at its minimal vertex and the
/// second vertex is smaller than the last.
std::vector<std::vector<int>> enumerate_cycles(const Graph& g);

/// Edge set of a vertex cycle (consecutive vertices plus the closing pair).
EdgeSubset cycle_edges(const Graph& g, const std::vector<int>& cycle);

/// Index of the edge {u,v} (first occurrence), or -1.
int find_edge(const Graph& g, int u, int v);

}  // namespace gcoh
