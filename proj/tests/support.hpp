#pragma once

#include <sstream>
#include <vector>

#include "graphcohom/frobenius.hpp"
#include "graphcohom/graph.hpp"

namespace gcoh::testing {

/// Every labelled simple graph on n vertices (2^{n(n−1)/2} of them).
inline std::vector<Graph> all_simple_graphs(std::size_t n)
{
    std::vector<Edge> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    std::vector<Graph> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        std::vector<Edge> edges;
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if (mask >> k & 1)
                edges.push_back(pairs[k]);
        out.push_back(Graph::simple(n, edges));
    }
    return out;
}

/// Number of proper colourings with k colours, by exhaustive assignment.
inline long count_colourings(const Graph& g, long k)
{
    const std::size_t n = g.vertex_count();
    if (n == 0)
        return 1;
    if (k <= 0)
        return 0;
    std::vector<long> colour(n, 0);
    long count = 0;
    while (true) {
        bool proper = true;
        for (const auto& [u, v] : g.edges())
            if (colour[static_cast<std::size_t>(u)] == colour[static_cast<std::size_t>(v)]) {
                proper = false;
                break;
            }
        count += proper;
        std::size_t i = 0;
        while (i < n && ++colour[i] == k)
            colour[i++] = 0;
        if (i == n)
            return count;
    }
}

/// Algebras with an odd pairing degree: H*(S¹), H*(S³) and H*(S¹×S²).
inline std::vector<FrobeniusAlgebra> odd_algebras(const Field& f = Field())
{
    const char* texts[] = {
        "pairing_degree 1\nbasis 1:0 t:1\nunit 1\npair 1 t = 1\n",
        "pairing_degree 3\nbasis 1:0 y:3\nunit 1\npair 1 y = 1\n",
        "pairing_degree 3\nbasis 1:0 a:1 x:2 ax:3\nunit 1\nmul a x = ax\npair 1 ax = 1\npair a x = 1\n",
    };
    const char* names[] = {"s1", "s3", "s1xs2"};
    std::vector<FrobeniusAlgebra> out;
    for (int i = 0; i < 3; ++i) {
        std::istringstream in(texts[i]);
        out.push_back(FrobeniusAlgebra::parse(in, names[i], f));
    }
    return out;
}

}  // namespace gcoh::testing
