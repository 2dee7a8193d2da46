#include "graphcohom/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace gcoh {

void VectorBuilder::add(std::size_t index, const Scalar& value)
{
    if (Field::is_zero(value))
        return;
    auto [it, inserted] = entries_.try_emplace(index, value);
    if (!inserted)
        it->second = field_.add(it->second, value);
}

SparseVector VectorBuilder::finish()
{
    SparseVector out;
    out.reserve(entries_.size());
    for (auto& [i, v] : entries_)
        if (!Field::is_zero(v))
            out.emplace_back(i, std::move(v));
    entries_.clear();
    return out;
}

// ---------------------------------------------------------------------------
// ExactMatrix

ExactMatrix ExactMatrix::identity(std::size_t n, const Field& f)
{
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.columns_[i] = {{i, f.from_int(1)}};
    return m;
}

std::size_t ExactMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& c : columns_)
        n += c.size();
    return n;
}

void ExactMatrix::set_column(std::size_t c, SparseVector v)
{
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k].first >= rows_)
            throw std::out_of_range("ExactMatrix::set_column: row index out of range");
        if (k > 0 && v[k].first <= v[k - 1].first)
            throw std::invalid_argument("ExactMatrix::set_column: entries must be strictly increasing");
        if (Field::is_zero(v[k].second))
            throw std::invalid_argument("ExactMatrix::set_column: stored zero");
    }
    columns_.at(c) = std::move(v);
}

Scalar ExactMatrix::at(std::size_t r, std::size_t c) const
{
    const auto& col = columns_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, std::size_t row) { return e.first < row; });
    if (it != col.end() && it->first == r)
        return it->second;
    return Scalar(0);
}

ExactMatrix ExactMatrix::transpose() const
{
    ExactMatrix t(cols(), rows_);
    for (std::size_t c = 0; c < cols(); ++c)
        for (const auto& [r, v] : columns_[c])
            t.columns_[r].emplace_back(c, v);
    return t;
}

ExactMatrix ExactMatrix::to_field(const Field& target) const
{
    ExactMatrix out(rows_, cols());
    for (std::size_t c = 0; c < cols(); ++c) {
        SparseVector col;
        for (const auto& [r, v] : columns_[c]) {
            Scalar x = target.normalize(v);
            if (!Field::is_zero(x))
                col.emplace_back(r, std::move(x));
        }
        out.columns_[c] = std::move(col);
    }
    return out;
}

SparseVector apply(const ExactMatrix& a, const SparseVector& v, const Field& f)
{
    VectorBuilder acc(f);
    for (const auto& [k, x] : v) {
        if (k >= a.cols())
            throw std::out_of_range("apply: vector index out of range");
        for (const auto& [r, y] : a.column(k))
            acc.add(r, f.mul(x, y));
    }
    return acc.finish();
}

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b, const Field& f)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("multiply: shape mismatch " + std::to_string(a.rows()) + "x"
                                    + std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x"
                                    + std::to_string(b.cols()));
    ExactMatrix out(a.rows(), b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c)
        out.set_column(c, apply(a, b.column(c), f));
    return out;
}

ExactMatrix add(const ExactMatrix& a, const ExactMatrix& b, const Field& f)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("add: shape mismatch");
    ExactMatrix out(a.rows(), a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        VectorBuilder acc(f);
        for (const auto& [r, v] : a.column(c))
            acc.add(r, v);
        for (const auto& [r, v] : b.column(c))
            acc.add(r, v);
        out.set_column(c, acc.finish());
    }
    return out;
}

ExactMatrix scale(const ExactMatrix& a, const Scalar& s, const Field& f)
{
    ExactMatrix out(a.rows(), a.cols());
    if (Field::is_zero(s))
        return out;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        SparseVector col;
        for (const auto& [r, v] : a.column(c))
            col.emplace_back(r, f.mul(v, s));
        out.set_column(c, std::move(col));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Column reduction engines

namespace {

struct RationalArith {
    using T = mpq_class;
    static bool zero(const T& x) { return sgn(x) == 0; }
    T sub_mul(const T& a, const T& c, const T& b) const { return a - c * b; }
    T mul(const T& a, const T& b) const { return a * b; }
    T inv(const T& a) const { return 1 / a; }
    T neg(const T& a) const { return -a; }
};

struct ModArith {
    using T = std::uint64_t;
    std::uint64_t p;
    static bool zero(T x) { return x == 0; }
    T sub_mul(T a, T c, T b) const { return (a + p - (c * b) % p) % p; }
    T mul(T a, T b) const { return (a * b) % p; }
    T inv(T a) const
    {
        // Fermat: a^(p-2).
        T result = 1, base = a % p;
        for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
            if (e & 1)
                result = (result * base) % p;
            base = (base * base) % p;
        }
        return result;
    }
    T neg(T a) const { return a == 0 ? 0 : p - a; }
};

template <class Arith>
using Column = std::vector<std::pair<std::size_t, typename Arith::T>>;

/// a -= c * b, both sorted.
template <class Arith>
Column<Arith> axpy(const Arith& ar, const Column<Arith>& a, const typename Arith::T& c, const Column<Arith>& b)
{
    Column<Arith> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, ar.sub_mul(typename Arith::T(0), c, b[j].second));
            ++j;
        } else {
            auto v = ar.sub_mul(a[i].second, c, b[j].second);
            if (!Arith::zero(v))
                out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

/// Reduces columns left to right with pivot = first nonzero row. When `track` is set,
/// records the column combinations and returns the ones that reduced to zero.
template <class Arith>
std::size_t reduce_columns(const Arith& ar, std::vector<Column<Arith>> cols, std::vector<Column<Arith>>* kernel)
{
    std::unordered_map<std::size_t, std::size_t> pivot_of_row;
    std::vector<Column<Arith>> reduced;
    std::vector<Column<Arith>> combos;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        Column<Arith> v = std::move(cols[c]);
        Column<Arith> combo;
        if (kernel)
            combo.emplace_back(c, typename Arith::T(1));
        while (!v.empty()) {
            auto it = pivot_of_row.find(v.front().first);
            if (it == pivot_of_row.end())
                break;
            auto coef = v.front().second;
            v = axpy(ar, v, coef, reduced[it->second]);
            if (kernel)
                combo = axpy(ar, combo, coef, combos[it->second]);
        }
        if (v.empty()) {
            if (kernel)
                kernel->push_back(std::move(combo));
            continue;
        }
        auto lead_inv = ar.inv(v.front().second);
        for (auto& [row, x] : v)
            x = ar.mul(x, lead_inv);
        if (kernel)
            for (auto& [row, x] : combo)
                x = ar.mul(x, lead_inv);
        pivot_of_row.emplace(v.front().first, reduced.size());
        reduced.push_back(std::move(v));
        if (kernel)
            combos.push_back(std::move(combo));
        ++r;
    }
    return r;
}

std::vector<Column<ModArith>> mod_columns(const ExactMatrix& m)
{
    std::vector<Column<ModArith>> cols(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c))
            cols[c].emplace_back(r, v.get_num().get_ui());
    return cols;
}

std::vector<Column<RationalArith>> rational_columns(const ExactMatrix& m)
{
    std::vector<Column<RationalArith>> cols(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        cols[c].assign(m.column(c).begin(), m.column(c).end());
    return cols;
}

}  // namespace

std::size_t rank(const ExactMatrix& m, const Field& f)
{
    if (f.is_prime())
        return reduce_columns(ModArith{f.characteristic()}, mod_columns(m), nullptr);
    return reduce_columns(RationalArith{}, rational_columns(m), nullptr);
}

std::vector<SparseVector> kernel_basis(const ExactMatrix& m, const Field& f)
{
    std::vector<SparseVector> out;
    if (f.is_prime()) {
        std::vector<Column<ModArith>> k;
        reduce_columns(ModArith{f.characteristic()}, mod_columns(m), &k);
        for (auto& col : k) {
            SparseVector v;
            for (auto& [i, x] : col)
                v.emplace_back(i, mpq_class(mpz_class(static_cast<unsigned long>(x))));
            out.push_back(std::move(v));
        }
    } else {
        std::vector<Column<RationalArith>> k;
        reduce_columns(RationalArith{}, rational_columns(m), &k);
        for (auto& col : k)
            out.emplace_back(col.begin(), col.end());
    }
    return out;
}

std::vector<Scalar> solve_dense(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b, const Field& f)
{
    const std::size_t n = a.size();
    if (b.size() != n)
        throw std::invalid_argument("solve_dense: shape mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && Field::is_zero(a[piv][col]))
            ++piv;
        if (piv == n)
            throw std::domain_error("solve_dense: singular system");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        Scalar inv = f.inv(a[col][col]);
        for (std::size_t k = col; k < n; ++k)
            a[col][k] = f.mul(a[col][k], inv);
        b[col] = f.mul(b[col], inv);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || Field::is_zero(a[r][col]))
                continue;
            Scalar factor = a[r][col];
            for (std::size_t k = col; k < n; ++k)
                a[r][k] = f.sub(a[r][k], f.mul(factor, a[col][k]));
            b[r] = f.sub(b[r], f.mul(factor, b[col]));
        }
    }
    return b;
}

// ---------------------------------------------------------------------------
// SubspaceEchelon

SparseVector SubspaceEchelon::reduce(SparseVector v) const
{
    std::map<std::size_t, Scalar> acc(v.begin(), v.end());
    auto it = acc.begin();
    while (it != acc.end()) {
        auto piv = by_pivot_.find(it->first);
        if (piv == by_pivot_.end() || Field::is_zero(it->second)) {
            ++it;
            continue;
        }
        const Scalar coef = it->second;
        const std::size_t key = it->first;
        for (const auto& [i, x] : basis_[piv->second]) {
            auto [slot, inserted] = acc.try_emplace(i, field_.neg(field_.mul(coef, x)));
            if (!inserted)
                slot->second = field_.sub(slot->second, field_.mul(coef, x));
        }
        it = acc.upper_bound(key);
    }
    SparseVector out;
    for (auto& [i, x] : acc)
        if (!Field::is_zero(x))
            out.emplace_back(i, std::move(x));
    return out;
}

bool SubspaceEchelon::insert(SparseVector v)
{
    SparseVector r = reduce(std::move(v));
    if (r.empty())
        return false;
    Scalar lead_inv = field_.inv(r.front().second);
    for (auto& [i, x] : r)
        x = field_.mul(x, lead_inv);
    by_pivot_.emplace(r.front().first, basis_.size());
    basis_.push_back(std::move(r));
    return true;
}

}  // namespace gcoh
