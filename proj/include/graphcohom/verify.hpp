#pragma once

#include <string>
#include <vector>

#include "graphcohom/complexes.hpp"
#include "graphcohom/frobenius.hpp"
#include "graphcohom/graph.hpp"

namespace gcoh {

enum class CheckStatus { Pass, Fail, Info };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
};

std::string to_string(CheckStatus s);

/// (a⊗b)Δ = μ*(ab) for all basis a, b. Returns the first failing pair, if any.
std::string check_lemma_delta(const FrobeniusAlgebra& A);
/// <a⊗b, Δ>_2 = <ab, 1> and (1⊗a)Δ = (a⊗1)Δ.
std::string check_delta_symmetry(const FrobeniusAlgebra& A);
/// <x⊗y, (a⊗1)μ*(b)(1⊗c)>_2 = (−1)^{m|c|}<xy, abc> over all basis tuples.
std::string check_bimodule(const FrobeniusAlgebra& A);

/// Every invariant suite on one (graph, algebra) input, in a fixed order.
std::vector<CheckResult> run_verify_suite(const Graph& g, const FrobeniusAlgebra& A, GeneratorMode mode);

}  // namespace gcoh
