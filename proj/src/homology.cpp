#include "graphcohom/homology.hpp"

#include <set>
#include <stdexcept>

namespace gcoh {

std::size_t BettiTable::at(int degree) const
{
    auto it = values.find(degree);
    return it == values.end() ? 0 : it->second;
}

std::map<int, std::size_t> BettiTable::nonzero() const
{
    std::map<int, std::size_t> out;
    for (const auto& [d, b] : values)
        if (b != 0)
            out.emplace(d, b);
    return out;
}

BettiTable betti(const ChainComplex& c)
{
    BettiTable t;
    t.grading = c.grading();
    std::map<int, std::size_t> ranks;
    for (int d : c.degrees())
        ranks[d] = rank(c.differential(d), c.field());
    for (int d : c.degrees()) {
        const std::size_t out = ranks[d];
        auto in = ranks.find(d - c.step());
        const std::size_t incoming = in == ranks.end() ? 0 : in->second;
        const std::size_t dim = c.dimension(d);
        if (out + incoming > dim)
            throw std::logic_error("betti: ranks exceed dimension; d∘d != 0?");
        t.values[d] = dim - out - incoming;
    }
    return t;
}

long euler_characteristic(const ChainComplex& c)
{
    long chi = 0;
    for (int d : c.degrees())
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(c.dimension(d));
    return chi;
}

long euler_characteristic(const BettiTable& b)
{
    long chi = 0;
    for (const auto& [d, v] : b.values)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(v);
    return chi;
}

IntPolynomial graded_euler(const ChainComplex& cbs)
{
    if (cbs.kind() != ComplexKind::Cbs)
        throw std::invalid_argument("graded_euler: expects a C_BS complex");
    std::vector<mpz_class> coeff;
    for (int d : cbs.degrees()) {
        for (const auto& lab : cbs.basis(d)) {
            const std::size_t q = static_cast<std::size_t>(lab.internal_degree);
            if (coeff.size() <= q)
                coeff.resize(q + 1, 0);
            coeff[q] += lab.edges.size() % 2 == 0 ? 1 : -1;
        }
    }
    return IntPolynomial(std::move(coeff));
}

QuasiIsoReport quasi_iso_check(const ChainComplex& a, const ChainComplex& b)
{
    if (a.grading() != b.grading())
        throw std::invalid_argument("quasi_iso_check: grading mismatch (" + to_string(a.grading()) + " vs "
                                    + to_string(b.grading()) + ")");
    const BettiTable ba = betti(a), bb = betti(b);
    std::set<int> degs;
    for (int d : a.degrees())
        degs.insert(d);
    for (int d : b.degrees())
        degs.insert(d);
    QuasiIsoReport r;
    for (int d : degs) {
        QuasiIsoRow row{d, a.dimension(d), b.dimension(d), ba.at(d), bb.at(d), false};
        row.match = row.betti_a == row.betti_b;
        r.all_match = r.all_match && row.match;
        r.rows.push_back(row);
    }
    return r;
}

}  // namespace gcoh
