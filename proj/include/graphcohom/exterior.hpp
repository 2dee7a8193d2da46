#pragma once

#include <optional>
#include <span>

#include "graphcohom/graph.hpp"

namespace gcoh {

/// Product of edge generators taken in ascending edge order (e_S or G_S).
using ExteriorMonomial = EdgeSubset;

struct SignedTerm {
    int sign = 1;  // +1 or -1
    ExteriorMonomial monomial;
    friend bool operator==(const SignedTerm&, const SignedTerm&) = default;
};

/// m1 ∧ m2, or nothing when the monomials share a generator.
std::optional<SignedTerm> wedge(ExteriorMonomial m1, ExteriorMonomial m2);

/// (-1)^ν where ν counts the generators of s strictly before e. Throws if e is not in s.
int removal_sign(ExteriorMonomial s, std::size_t e);

/// Sign of moving the item at `from` so that it ends at index `to` (std::rotate
/// semantics), passing every item in between: (-1)^{deg(moved) * Σ deg(passed)}.
int koszul_move_sign(std::span<const int> degrees, std::size_t from, std::size_t to);

/// Koszul sign of the permutation that stably sorts `keys` while carrying graded items.
int koszul_sort_sign(std::span<const int> keys, std::span<const int> degrees);

}  // namespace gcoh
