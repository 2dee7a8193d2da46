#pragma once

#include <map>
#include <string>
#include <vector>

#include "graphcohom/complexes.hpp"
#include "graphcohom/polynomial.hpp"

namespace gcoh {

struct BettiTable {
    GradingKind grading = GradingKind::EdgeCount;
    /// Every degree of the complex's support, zeros included.
    std::map<int, std::size_t> values;

    std::size_t at(int degree) const;
    /// Degrees with nonzero homology.
    std::map<int, std::size_t> nonzero() const;
    /// Same grading and the same nonzero entries.
    friend bool operator==(const BettiTable& a, const BettiTable& b)
    {
        return a.grading == b.grading && a.nonzero() == b.nonzero();
    }
};

/// dim H_i = dim C_i − rank(d out of i) − rank(d into i).
BettiTable betti(const ChainComplex& c);

/// Σ (−1)^i dim C_i.
long euler_characteristic(const ChainComplex& c);
/// Σ (−1)^i b_i.
long euler_characteristic(const BettiTable& b);

/// Σ_S (−1)^{|S|} q^{Σ deg a_i} over the basis of C_BS.
IntPolynomial graded_euler(const ChainComplex& cbs);

struct QuasiIsoRow {
    int degree = 0;
    std::size_t dim_a = 0, dim_b = 0;
    std::size_t betti_a = 0, betti_b = 0;
    bool match = false;
};

struct QuasiIsoReport {
    std::vector<QuasiIsoRow> rows;
    bool all_match = true;
};

/// Degreewise Betti comparison; both complexes must use the same grading.
QuasiIsoReport quasi_iso_check(const ChainComplex& a, const ChainComplex& b);

}  // namespace gcoh
