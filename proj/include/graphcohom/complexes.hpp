#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "graphcohom/field.hpp"
#include "graphcohom/frobenius.hpp"
#include "graphcohom/graph.hpp"
#include "graphcohom/matrix.hpp"

namespace gcoh {

enum class GradingKind { EdgeCount, TotalDegree };
enum class Direction { Raises, Lowers };
enum class ComplexKind { Cbs, Dual, Rn, Conn, Stratum };

std::string to_string(GradingKind g);
std::string to_string(ComplexKind k);

/// Basis element e_S ⊗ a_1⊗...⊗a_l (or G_S ⊗ ...). Factors follow the canonical block
/// order of phi(S); C_conn cells carry no factors.
struct CellLabel {
    EdgeSubset edges;
    std::vector<int> factors;
    int blocks = 0;
    int internal_degree = 0;  // Σ deg a_i

    friend bool operator==(const CellLabel&, const CellLabel&) = default;
};

struct ComplexData {
    ComplexKind kind = ComplexKind::Cbs;
    GradingKind grading = GradingKind::EdgeCount;
    Direction direction = Direction::Raises;
    Field field;
    std::map<int, std::vector<CellLabel>> cells;
    /// Keyed by source degree; maps degree d to d ± 1 according to direction.
    std::map<int, ExactMatrix> differentials;
    /// Identifies the (graph, algebra, field) the complex was built from.
    std::string source_key;
    /// Only for Rn: ambient dual coordinates -> quotient coordinates, per degree.
    std::map<int, ExactMatrix> projections;
};

/// Finite chain complex over a field. Construction checks matrix shapes and d∘d = 0.
class ChainComplex {
public:
    explicit ChainComplex(ComplexData data);

    ComplexKind kind() const { return d_.kind; }
    GradingKind grading() const { return d_.grading; }
    Direction direction() const { return d_.direction; }
    int step() const { return d_.direction == Direction::Raises ? 1 : -1; }
    const Field& field() const { return d_.field; }
    const std::string& source_key() const { return d_.source_key; }

    /// Degrees with a nonempty basis, ascending.
    std::vector<int> degrees() const;
    const std::vector<CellLabel>& basis(int degree) const;
    std::size_t dimension(int degree) const { return basis(degree).size(); }
    std::size_t total_dimension() const;

    /// Differential out of `degree` (an empty matrix of the right shape if none).
    const ExactMatrix& differential(int degree) const;
    const std::map<int, ExactMatrix>& differentials() const { return d_.differentials; }
    const std::map<int, ExactMatrix>& projections() const { return d_.projections; }

    /// (degree, index) of a label; throws if absent.
    std::pair<int, std::size_t> locate(const CellLabel& label) const;
    bool contains(const CellLabel& label) const;

private:
    ComplexData d_;
    std::map<std::pair<std::uint64_t, std::vector<int>>, std::pair<int, std::size_t>> index_;
    ExactMatrix empty_;
};

/// Total degree of G_S ⊗ a in the dual complex: m·n − |S| + Σ|a_i| − m·l(S) where
/// m is the pairing degree. Equals (m−1)(n−l) − (|S|−n+l) + Σ|a_i|.
int dual_total_degree(const Graph& g, const FrobeniusAlgebra& A, const CellLabel& label);

/// C_BS(Γ, A): degree |S|, differential adds one edge.
ChainComplex build_cbs(const Graph& g, const FrobeniusAlgebra& A);

/// Dual complex: total degree, differential removes one edge (δ = δ_int + δ_ext).
ChainComplex build_cbs_dual(const Graph& g, const FrobeniusAlgebra& A);

enum class GeneratorMode { AllCycles, TrianglesOnly };

/// I inside the dual complex: per total degree a spanning set in dual coordinates.
struct IdealSubspace {
    GeneratorMode mode = GeneratorMode::AllCycles;
    std::map<int, std::vector<SparseVector>> spans;
    /// Dimension of the exterior part by edge count (before tensoring with A).
    std::map<int, std::size_t> exterior_dimensions;

    std::size_t dimension(int degree) const;
};

/// Exterior relation δ(s(v)) = Σ_α removal_sign(v, α) G_{v∖α} for a vertex cycle v.
std::vector<std::pair<int, EdgeSubset>> cycle_relation(const Graph& g, const std::vector<int>& cycle);

IdealSubspace ideal_subspace(const Graph& g, const FrobeniusAlgebra& A, GeneratorMode mode);

/// True iff δ maps every span vector of `ideal` back into the ideal.
bool ideal_is_closed(const ChainComplex& dual, const IdealSubspace& ideal);

/// R_n(A, Γ) as the quotient of the dual complex by ideal_subspace(all-cycles).
ChainComplex build_rn(const Graph& g, const FrobeniusAlgebra& A);
/// Same, reusing an already built dual complex.
ChainComplex build_rn(const Graph& g, const FrobeniusAlgebra& A, const ChainComplex& dual);

struct DifferentialSplit {
    std::map<int, ExactMatrix> internal;  // l(S) preserved
    std::map<int, ExactMatrix> external;  // one block splits
};
DifferentialSplit differential_split(const ChainComplex& dual);

/// Per-degree matrices of a chain map between two complexes of the same direction.
struct ChainMap {
    int degree_shift = 0;  // target degree = source degree + shift
    std::map<int, ExactMatrix> components;
};

/// Quotient map F: dual -> rn.
ChainMap map_F(const ChainComplex& dual, const ChainComplex& rn);

/// f∘d_src = d_dst∘f in every degree.
bool is_chain_map(const ChainMap& f, const ChainComplex& src, const ChainComplex& dst);

/// C_conn(Γ): spanning connected edge subsets, differential removes one edge.
/// Throws on a disconnected graph.
ChainComplex build_conn(const Graph& g, const Field& f = Field());

/// The graph with vertices renamed so that edge e becomes the last edge, and e's new index.
/// Throws when both endpoints of e carry loops (no renaming can then put e last).
std::pair<Graph, std::size_t> relabel_edge_last(const Graph& g, std::size_t e);

struct DelConSequence {
    ChainComplex deleted;     // C_conn(Γ∖e), empty if Γ∖e is disconnected
    ChainComplex whole;       // C_conn(Γ)
    ChainComplex contracted;  // C_conn(Γ/e)
    ChainMap alpha;           // inclusion, degree 0
    ChainMap beta;            // contraction, degree −1
};

/// Requires e to be the last edge and not a loop.
DelConSequence delcon_sequence(const Graph& g, std::size_t e);

struct ExactnessRow {
    int degree = 0;
    std::size_t dim_deleted = 0, dim_whole = 0, dim_contracted = 0;
    std::size_t rank_alpha = 0, rank_beta = 0;
    bool alpha_injective = false, beta_surjective = false, middle_exact = false;
};
std::vector<ExactnessRow> delcon_exactness(const DelConSequence& s);

/// Subquotient F_{k−1}/F_k of a dual or rn complex: labels with l(S) = k−1 and the
/// l-preserving part of the differential.
ChainComplex filtration_quotient(const ChainComplex& c, int k);

}  // namespace gcoh
