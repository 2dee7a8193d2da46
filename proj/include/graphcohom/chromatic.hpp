#pragma once

#include "graphcohom/frobenius.hpp"
#include "graphcohom/graph.hpp"
#include "graphcohom/polynomial.hpp"

namespace gcoh {

/// Σ_{S⊆E} (−1)^{|S|} λ^{l(S)}.
IntPolynomial chromatic_subset(const Graph& g);

/// P(Γ) = P(Γ∖e) − P(Γ/e), edgeless → λ^n, any loop → 0. Memoized per call.
IntPolynomial chromatic_delcon(const Graph& g);

/// Σ_basis q^{deg}.
IntPolynomial quantum_dimension(const FrobeniusAlgebra& A);

}  // namespace gcoh
