#include "graphcohom/exterior.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace gcoh {

std::optional<SignedTerm> wedge(ExteriorMonomial m1, ExteriorMonomial m2)
{
    if (m1.intersects(m2))
        return std::nullopt;
    // Each generator of m1 has to pass the generators of m2 that are smaller than it.
    std::size_t inversions = 0;
    for (std::size_t e : m1.indices())
        inversions += (m2 & EdgeSubset::first(e)).size();
    return SignedTerm{inversions % 2 == 0 ? 1 : -1, m1 | m2};
}

int removal_sign(ExteriorMonomial s, std::size_t e)
{
    if (!s.contains(e))
        throw std::invalid_argument("removal_sign: edge " + std::to_string(e) + " not in monomial");
    return (s & EdgeSubset::first(e)).size() % 2 == 0 ? 1 : -1;
}

int koszul_move_sign(std::span<const int> degrees, std::size_t from, std::size_t to)
{
    if (from >= degrees.size() || to >= degrees.size())
        throw std::out_of_range("koszul_move_sign: index out of range");
    const std::size_t lo = from < to ? from + 1 : to;
    const std::size_t hi = from < to ? to + 1 : from;
    long passed = 0;
    for (std::size_t i = lo; i < hi; ++i)
        passed += degrees[i];
    return (static_cast<long>(degrees[from]) * passed) % 2 == 0 ? 1 : -1;
}

int koszul_sort_sign(std::span<const int> keys, std::span<const int> degrees)
{
    if (keys.size() != degrees.size())
        throw std::invalid_argument("koszul_sort_sign: size mismatch");
    std::vector<int> k(keys.begin(), keys.end());
    std::vector<int> d(degrees.begin(), degrees.end());
    int sign = 1;
    // Insertion sort: each item moves left past strictly larger keys.
    for (std::size_t i = 1; i < k.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && k[j - 1] > k[i])
            --j;
        if (j != i) {
            sign *= koszul_move_sign(d, i, j);
            std::rotate(k.begin() + static_cast<std::ptrdiff_t>(j), k.begin() + static_cast<std::ptrdiff_t>(i),
                        k.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            std::rotate(d.begin() + static_cast<std::ptrdiff_t>(j), d.begin() + static_cast<std::ptrdiff_t>(i),
                        d.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        }
    }
    return sign;
}

}  // namespace gcoh
