#include "graphcohom/chromatic.hpp"

#include <stdexcept>
#include <unordered_map>

namespace gcoh {

IntPolynomial chromatic_subset(const Graph& g)
{
    if (g.edge_count() > 30)
        throw std::invalid_argument("chromatic_subset: too many edges to enumerate subsets");
    // Count subsets by (parity, component count), then assemble.
    std::vector<mpz_class> coeff(g.vertex_count() + 1, 0);
    const std::uint64_t subsets = std::uint64_t{1} << g.edge_count();
    for (std::uint64_t s = 0; s < subsets; ++s) {
        const EdgeSubset S(s);
        const std::size_t l = component_count(g, S);
        if (S.size() % 2 == 0)
            ++coeff[l];
        else
            --coeff[l];
    }
    return IntPolynomial(std::move(coeff));
}

namespace {

IntPolynomial delcon(const Graph& g, std::unordered_map<std::string, IntPolynomial>& memo)
{
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (g.is_loop(e))
            return {};
    if (g.edge_count() == 0)
        return IntPolynomial::monomial(1, g.vertex_count());
    const std::string key = g.encode();
    if (auto it = memo.find(key); it != memo.end())
        return it->second;
    const std::size_t e = g.edge_count() - 1;
    IntPolynomial p = delcon(delete_edge(g, e), memo) - delcon(contract_edge(g, e), memo);
    memo.emplace(key, p);
    return p;
}

}  // namespace

IntPolynomial chromatic_delcon(const Graph& g)
{
    std::unordered_map<std::string, IntPolynomial> memo;
    return delcon(g, memo);
}

IntPolynomial quantum_dimension(const FrobeniusAlgebra& A)
{
    IntPolynomial q;
    for (int d : A.degrees())
        q = q + IntPolynomial::monomial(1, static_cast<std::size_t>(d));
    return q;
}

}  // namespace gcoh
