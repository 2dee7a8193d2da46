#pragma once

#include <cstddef>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graphcohom/field.hpp"

namespace gcoh {

/// Sorted by index, no stored zeros.
using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

/// Accumulates entries of a sparse vector; zeros are dropped on finish().
class VectorBuilder {
public:
    explicit VectorBuilder(const Field& f) : field_(f) {}
    void add(std::size_t index, const Scalar& value);
    SparseVector finish();
    bool empty() const { return entries_.empty(); }

private:
    Field field_;
    std::map<std::size_t, Scalar> entries_;
};

/// Sparse matrix stored column-major: one sparse column per source basis element.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    static ExactMatrix identity(std::size_t n, const Field& f);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }
    std::size_t nonzeros() const;
    bool is_zero() const { return nonzeros() == 0; }

    const SparseVector& column(std::size_t c) const { return columns_[c]; }
    void set_column(std::size_t c, SparseVector v);
    Scalar at(std::size_t r, std::size_t c) const;

    ExactMatrix transpose() const;
    /// Re-encodes rational entries into F_p; throws on a vanishing denominator.
    ExactMatrix to_field(const Field& target) const;

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b)
    {
        return a.rows_ == b.rows_ && a.columns_ == b.columns_;
    }

private:
    std::size_t rows_ = 0;
    std::vector<SparseVector> columns_;
};

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b, const Field& f);
ExactMatrix add(const ExactMatrix& a, const ExactMatrix& b, const Field& f);
ExactMatrix scale(const ExactMatrix& a, const Scalar& s, const Field& f);
SparseVector apply(const ExactMatrix& a, const SparseVector& v, const Field& f);

std::size_t rank(const ExactMatrix& m, const Field& f);

/// Basis of the null space, one sparse vector per free column.
std::vector<SparseVector> kernel_basis(const ExactMatrix& m, const Field& f);

/// Solves a·x = b for square invertible dense a; throws if singular.
std::vector<Scalar> solve_dense(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b, const Field& f);

/// Incrementally built echelon basis of a subspace. Each stored vector has leading
/// (smallest-index) coefficient 1 and distinct leading indices.
class SubspaceEchelon {
public:
    explicit SubspaceEchelon(const Field& f) : field_(f) {}

    /// Adds v to the span; returns false if it was already inside.
    bool insert(SparseVector v);
    /// Residue of v after eliminating every leading index; zero iff v lies in the span.
    SparseVector reduce(SparseVector v) const;
    bool contains(const SparseVector& v) const { return reduce(v).empty(); }

    std::size_t dimension() const { return basis_.size(); }
    bool is_pivot(std::size_t index) const { return by_pivot_.count(index) != 0; }
    const std::vector<SparseVector>& basis() const { return basis_; }

private:
    Field field_;
    std::vector<SparseVector> basis_;
    std::unordered_map<std::size_t, std::size_t> by_pivot_;
};

}  // namespace gcoh
