#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphcohom/field.hpp"
#include "graphcohom/graph.hpp"

namespace gcoh {

class FrobeniusAlgebra;

/// Linear combination of pure tensors a_{i1} ⊗ ... ⊗ a_{in} over a fixed slot count.
class TensorElement {
public:
    using Index = std::vector<int>;

    TensorElement() = default;
    explicit TensorElement(std::size_t slots) : slots_(slots) {}

    static TensorElement pure(Index idx, const Scalar& coefficient, const Field& f);

    std::size_t slots() const { return slots_; }
    const std::map<Index, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coefficient(const Index& idx) const;

    /// Accumulates c·idx; drops the term if it cancels.
    void add_term(const Index& idx, const Scalar& c, const Field& f);
    void add(const TensorElement& other, const Scalar& c, const Field& f);

    friend bool operator==(const TensorElement& a, const TensorElement& b)
    {
        return a.slots_ == b.slots_ && a.terms_ == b.terms_;
    }

private:
    std::size_t slots_ = 0;
    std::map<Index, Scalar> terms_;
};

/// Graded commutative Frobenius algebra given by structure constants over a field.
/// All axioms are checked on construction.
class FrobeniusAlgebra {
public:
    struct Term {
        int basis;
        Scalar coefficient;
    };

    /// mult[i][j] lists a_i·a_j; pairing[i][j] = <a_i, a_j>.
    FrobeniusAlgebra(std::string name, Field field, std::vector<std::string> labels, std::vector<int> degrees,
                     int unit, std::vector<std::vector<std::vector<Term>>> mult,
                     std::vector<std::vector<Scalar>> pairing, int pairing_degree);

    static FrobeniusAlgebra ground(const Field& f);
    /// H*(S^d) = k[x]/x^2 with deg x = d.
    static FrobeniusAlgebra sphere(int d, const Field& f);
    static FrobeniusAlgebra cp2(const Field& f);
    static FrobeniusAlgebra torus(const Field& f);
    /// "ground", "s2", "s4", "cp2", "t2"; nullopt for anything else.
    static std::optional<FrobeniusAlgebra> builtin(const std::string& name, const Field& f);
    static std::vector<std::string> builtin_names();

    /// Text format (see README). A field in the text wins unless `field` is given and
    /// disagrees, which is an error.
    static FrobeniusAlgebra parse(std::istream& in, const std::string& name,
                                  const std::optional<Field>& field = std::nullopt);
    static FrobeniusAlgebra parse_file(const std::string& path, const std::optional<Field>& field = std::nullopt);

    const std::string& name() const { return name_; }
    const Field& field() const { return field_; }
    std::size_t dimension() const { return labels_.size(); }
    const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& labels() const { return labels_; }
    int degree(int i) const { return degrees_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& degrees() const { return degrees_; }
    int unit() const { return unit_; }
    int pairing_degree() const { return pairing_degree_; }

    const std::vector<Term>& product(int i, int j) const
    {
        return mult_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    const Scalar& pairing(int i, int j) const
    {
        return pairing_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    /// Δ ∈ A⊗A, computed once at construction.
    const TensorElement& diagonal() const { return diagonal_; }

    /// Human-readable form of a tensor, e.g. "1⊗x + x⊗1".
    std::string format(const TensorElement& t) const;

private:
    void validate() const;

    std::string name_;
    Field field_;
    std::vector<std::string> labels_;
    std::vector<int> degrees_;
    int unit_ = 0;
    std::vector<std::vector<std::vector<Term>>> mult_;
    std::vector<std::vector<Scalar>> pairing_;
    int pairing_degree_ = 0;
    TensorElement diagonal_;
};

/// Slotwise product with Koszul sign (-1)^{Σ_{p<q} |y_p||x_q|}.
TensorElement multiply(const FrobeniusAlgebra& A, const TensorElement& x, const TensorElement& y);

/// n-fold pairing built from <a⊗b, c⊗d>_2 = (-1)^{|b||c|}<a,c><b,d>.
Scalar pairing_n(const FrobeniusAlgebra& A, const TensorElement& x, const TensorElement& y);

TensorElement unit_tensor(const FrobeniusAlgebra& A, std::size_t slots);

/// Δ solved from <a⊗b, Δ>_2 = <ab, 1>.
TensorElement compute_diagonal(const FrobeniusAlgebra& A);
inline const TensorElement& diagonal(const FrobeniusAlgebra& A) { return A.diagonal(); }

/// μ*(a) = (a⊗1)Δ for a one-slot element.
TensorElement comultiply(const FrobeniusAlgebra& A, const TensorElement& a);
TensorElement comultiply(const FrobeniusAlgebra& A, int basis);

/// x placed in slot `slot` of an n-slot tensor, units elsewhere.
TensorElement pullback_slot(const FrobeniusAlgebra& A, const TensorElement& x, std::size_t slot, std::size_t n);
/// The two legs of Δ placed in slots a and b.
TensorElement pullback_pair_diagonal(const FrobeniusAlgebra& A, std::size_t a, std::size_t b, std::size_t n);

/// Multiplies tensor factors within the blocks of p: A^{⊗n} -> A^{⊗|p|}.
TensorElement block_product(const FrobeniusAlgebra& A, const TensorElement& x, const Partition& p);

/// Places the factor of block k of p in the slot of the minimal element of that block.
TensorElement block_lift(const FrobeniusAlgebra& A, const TensorElement& y, const Partition& p);

/// Δ_P ∈ A^{⊗n}: pairing-dual image of the unit of A^{⊗|P|} under block_product.
TensorElement diagonal_partition(const FrobeniusAlgebra& A, const Partition& p, std::size_t n);

/// Δ_{Q,P} ∈ A^{⊗|Q|}: Δ_{P'} with P' the partition of Q's blocks induced by p.
TensorElement relative_diagonal(const FrobeniusAlgebra& A, const Partition& q, const Partition& p);

/// The partition of q's blocks induced by p (requires refines(q, p)).
Partition induced_block_partition(const Partition& q, const Partition& p);

}  // namespace gcoh
