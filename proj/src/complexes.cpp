#include "graphcohom/complexes.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "graphcohom/exterior.hpp"

namespace gcoh {

std::string to_string(GradingKind g)
{
    return g == GradingKind::EdgeCount ? "edge-count" : "total-degree";
}

std::string to_string(ComplexKind k)
{
    switch (k) {
    case ComplexKind::Cbs: return "cbs";
    case ComplexKind::Dual: return "dual";
    case ComplexKind::Rn: return "rn";
    case ComplexKind::Conn: return "conn";
    case ComplexKind::Stratum: return "stratum";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// ChainComplex

ChainComplex::ChainComplex(ComplexData data) : d_(std::move(data))
{
    std::erase_if(d_.cells, [](const auto& kv) { return kv.second.empty(); });
    for (const auto& [deg, m] : d_.differentials)
        if (!d_.cells.count(deg) && m.cols() != 0)
            throw std::logic_error("differential out of degree " + std::to_string(deg) + " has no source basis");
    std::erase_if(d_.differentials, [&](const auto& kv) { return !d_.cells.count(kv.first); });

    for (const auto& [deg, labels] : d_.cells) {
        auto it = d_.differentials.find(deg);
        const std::size_t rows = dimension(deg + step());
        if (it == d_.differentials.end()) {
            d_.differentials.emplace(deg, ExactMatrix(rows, labels.size()));
            continue;
        }
        if (it->second.cols() != labels.size() || it->second.rows() != rows)
            throw std::logic_error("differential out of degree " + std::to_string(deg) + " has shape "
                                   + std::to_string(it->second.rows()) + "x" + std::to_string(it->second.cols())
                                   + ", expected " + std::to_string(rows) + "x" + std::to_string(labels.size()));
    }
    for (const auto& [deg, m] : d_.differentials) {
        auto next = d_.differentials.find(deg + step());
        if (next == d_.differentials.end())
            continue;
        if (!multiply(next->second, m, d_.field).is_zero())
            throw std::logic_error(to_string(d_.kind) + " complex: d∘d != 0 out of degree " + std::to_string(deg));
    }
    for (const auto& [deg, labels] : d_.cells)
        for (std::size_t i = 0; i < labels.size(); ++i)
            index_.emplace(std::make_pair(labels[i].edges.bits(), labels[i].factors), std::make_pair(deg, i));
}

std::vector<int> ChainComplex::degrees() const
{
    std::vector<int> out;
    for (const auto& kv : d_.cells)
        out.push_back(kv.first);
    return out;
}

const std::vector<CellLabel>& ChainComplex::basis(int degree) const
{
    static const std::vector<CellLabel> none;
    auto it = d_.cells.find(degree);
    return it == d_.cells.end() ? none : it->second;
}

std::size_t ChainComplex::total_dimension() const
{
    std::size_t t = 0;
    for (const auto& kv : d_.cells)
        t += kv.second.size();
    return t;
}

const ExactMatrix& ChainComplex::differential(int degree) const
{
    auto it = d_.differentials.find(degree);
    return it == d_.differentials.end() ? empty_ : it->second;
}

std::pair<int, std::size_t> ChainComplex::locate(const CellLabel& label) const
{
    auto it = index_.find(std::make_pair(label.edges.bits(), label.factors));
    if (it == index_.end())
        throw std::out_of_range("label not in complex");
    return it->second;
}

bool ChainComplex::contains(const CellLabel& label) const
{
    return index_.count(std::make_pair(label.edges.bits(), label.factors)) != 0;
}

// ---------------------------------------------------------------------------
// helpers

namespace {

void require_simple(const Graph& g, const char* who)
{
    if (!g.is_simple())
        throw std::invalid_argument(std::string(who) + ": graph must be simple (no loops or multiple edges)");
    if (g.edge_count() > 24)
        throw std::invalid_argument(std::string(who) + ": too many edges to enumerate subsets");
}

std::string source_key(const Graph& g, const FrobeniusAlgebra& A)
{
    return g.encode() + "|" + A.name() + "|" + A.field().name();
}

/// All tuples in {0..dim-1}^len, lexicographic.
std::vector<std::vector<int>> factor_tuples(std::size_t dim, std::size_t len)
{
    std::vector<std::vector<int>> out{{}};
    for (std::size_t pos = 0; pos < len; ++pos) {
        std::vector<std::vector<int>> next;
        next.reserve(out.size() * dim);
        for (const auto& t : out) {
            for (std::size_t a = 0; a < dim; ++a) {
                next.push_back(t);
                next.back().push_back(static_cast<int>(a));
            }
        }
        out = std::move(next);
    }
    return out;
}

int factor_degree(const FrobeniusAlgebra& A, const std::vector<int>& f)
{
    int d = 0;
    for (int i : f)
        d += A.degree(i);
    return d;
}

/// phi(S) for every subset S of the edges.
std::vector<Partition> all_partitions(const Graph& g)
{
    const std::uint64_t count = std::uint64_t{1} << g.edge_count();
    std::vector<Partition> out;
    out.reserve(count);
    for (std::uint64_t s = 0; s < count; ++s)
        out.push_back(components(g, EdgeSubset(s)));
    return out;
}

using LabelKey = std::pair<std::uint64_t, std::vector<int>>;

struct Enumerated {
    std::map<int, std::vector<CellLabel>> cells;
    std::map<LabelKey, std::pair<int, std::size_t>> where;
};

/// Every e_S ⊗ (factor tuple), grouped by `degree_of`, ordered by bitmask then tuple.
template <class DegreeFn>
Enumerated enumerate_cells(const Graph& g, const FrobeniusAlgebra& A, const std::vector<Partition>& parts,
                           DegreeFn degree_of)
{
    Enumerated e;
    std::map<std::size_t, std::vector<std::vector<int>>> tuples;
    for (std::uint64_t s = 0; s < parts.size(); ++s) {
        const std::size_t l = parts[s].size();
        auto [it, fresh] = tuples.try_emplace(l);
        if (fresh)
            it->second = factor_tuples(A.dimension(), l);
        for (const auto& t : it->second) {
            CellLabel lab{EdgeSubset(s), t, static_cast<int>(l), factor_degree(A, t)};
            const int deg = degree_of(lab);
            auto& list = e.cells[deg];
            e.where.emplace(LabelKey{s, t}, std::make_pair(deg, list.size()));
            list.push_back(std::move(lab));
        }
    }
    (void)g;
    return e;
}

std::map<int, ExactMatrix> empty_differentials(const Enumerated& e, int step)
{
    std::map<int, ExactMatrix> out;
    for (const auto& [deg, labels] : e.cells) {
        auto t = e.cells.find(deg + step);
        out.emplace(deg, ExactMatrix(t == e.cells.end() ? 0 : t->second.size(), labels.size()));
    }
    return out;
}

void add_tensor_terms(VectorBuilder& col, const Enumerated& e, EdgeSubset target, const TensorElement& t,
                      int sign, const Field& f, int expected_degree)
{
    for (const auto& [idx, c] : t.terms()) {
        auto it = e.where.find(LabelKey{target.bits(), idx});
        if (it == e.where.end())
            throw std::logic_error("differential produced an unknown basis label");
        if (it->second.first != expected_degree)
            throw std::logic_error("differential is not homogeneous");
        col.add(it->second.second, sign < 0 ? f.neg(c) : c);
    }
}

}  // namespace

int dual_total_degree(const Graph& g, const FrobeniusAlgebra& A, const CellLabel& label)
{
    const int m = A.pairing_degree();
    const int n = static_cast<int>(g.vertex_count());
    return m * n - static_cast<int>(label.edges.size()) + label.internal_degree - m * label.blocks;
}

// ---------------------------------------------------------------------------
// C_BS and its dual

ChainComplex build_cbs(const Graph& g, const FrobeniusAlgebra& A)
{
    require_simple(g, "build_cbs");
    const Field& f = A.field();
    const auto parts = all_partitions(g);
    Enumerated e = enumerate_cells(g, A, parts, [](const CellLabel& l) { return static_cast<int>(l.edges.size()); });
    auto diffs = empty_differentials(e, 1);

    for (const auto& [deg, labels] : e.cells) {
        ExactMatrix& m = diffs.at(deg);
        for (std::size_t j = 0; j < labels.size(); ++j) {
            const CellLabel& src = labels[j];
            const Partition& ps = parts[src.edges.bits()];
            VectorBuilder col(f);
            for (std::size_t a = 0; a < g.edge_count(); ++a) {
                if (src.edges.contains(a))
                    continue;
                const EdgeSubset t = src.edges.with(a);
                const int sign = removal_sign(t, a);
                const Partition& pt = parts[t.bits()];
                TensorElement x = TensorElement::pure(src.factors, f.from_int(1), f);
                if (pt.size() != ps.size())
                    x = block_product(A, x, induced_block_partition(ps, pt));
                add_tensor_terms(col, e, t, x, sign, f, deg + 1);
            }
            m.set_column(j, col.finish());
        }
    }
    ComplexData d;
    d.kind = ComplexKind::Cbs;
    d.grading = GradingKind::EdgeCount;
    d.direction = Direction::Raises;
    d.field = f;
    d.cells = std::move(e.cells);
    d.differentials = std::move(diffs);
    d.source_key = source_key(g, A);
    return ChainComplex(std::move(d));
}

ChainComplex build_cbs_dual(const Graph& g, const FrobeniusAlgebra& A)
{
    require_simple(g, "build_cbs_dual");
    const Field& f = A.field();
    const auto parts = all_partitions(g);
    Enumerated e =
        enumerate_cells(g, A, parts, [&](const CellLabel& l) { return dual_total_degree(g, A, l); });
    auto diffs = empty_differentials(e, 1);

    // Δ_{S∖α, S} per (S, α) with α external, shared by all factor tuples.
    std::map<std::pair<std::uint64_t, std::size_t>, TensorElement> rel_diag;
    for (const auto& [deg, labels] : e.cells) {
        ExactMatrix& m = diffs.at(deg);
        for (std::size_t j = 0; j < labels.size(); ++j) {
            const CellLabel& src = labels[j];
            const Partition& ps = parts[src.edges.bits()];
            VectorBuilder col(f);
            for (std::size_t a : src.edges.indices()) {
                const EdgeSubset t = src.edges.without(a);
                const int sign = removal_sign(src.edges, a);
                const Partition& pt = parts[t.bits()];
                TensorElement x = TensorElement::pure(src.factors, f.from_int(1), f);
                if (pt.size() != ps.size()) {
                    auto key = std::make_pair(src.edges.bits(), a);
                    auto it = rel_diag.find(key);
                    if (it == rel_diag.end())
                        it = rel_diag.emplace(key, relative_diagonal(A, pt, ps)).first;
                    x = multiply(A, block_lift(A, x, induced_block_partition(pt, ps)), it->second);
                }
                add_tensor_terms(col, e, t, x, sign, f, deg + 1);
            }
            m.set_column(j, col.finish());
        }
    }
    ComplexData d;
    d.kind = ComplexKind::Dual;
    d.grading = GradingKind::TotalDegree;
    d.direction = Direction::Raises;
    d.field = f;
    d.cells = std::move(e.cells);
    d.differentials = std::move(diffs);
    d.source_key = source_key(g, A);
    return ChainComplex(std::move(d));
}

// ---------------------------------------------------------------------------
// Ideal

std::size_t IdealSubspace::dimension(int degree) const
{
    auto it = spans.find(degree);
    return it == spans.end() ? 0 : it->second.size();
}

std::vector<std::pair<int, EdgeSubset>> cycle_relation(const Graph& g, const std::vector<int>& cycle)
{
    const EdgeSubset v = cycle_edges(g, cycle);
    std::vector<std::pair<int, EdgeSubset>> out;
    for (std::size_t a : v.indices())
        out.emplace_back(removal_sign(v, a), v.without(a));
    return out;
}

IdealSubspace ideal_subspace(const Graph& g, const FrobeniusAlgebra& A, GeneratorMode mode)
{
    require_simple(g, "ideal_subspace");
    const Field& f = A.field();
    const auto parts = all_partitions(g);

    std::vector<EdgeSubset> cycle_sets;
    std::vector<std::vector<std::pair<int, EdgeSubset>>> relations;
    for (const auto& c : enumerate_cycles(g)) {
        if (mode == GeneratorMode::TrianglesOnly && c.size() != 3)
            continue;
        cycle_sets.push_back(cycle_edges(g, c));
        relations.push_back(cycle_relation(g, c));
    }

    // Every generator G_T ∧ δ(s(v)) is supported on subsets with one common partition
    // phi(T ∪ v), so the exterior ideal splits by (edge count, partition).
    struct Group {
        std::size_t edge_count;
        std::uint64_t representative;
        SubspaceEchelon echelon;
    };
    std::map<std::pair<std::size_t, std::vector<std::vector<int>>>, Group> groups;
    auto group_for = [&](EdgeSubset s) -> Group& {
        auto key = std::make_pair(s.size(), parts[s.bits()].blocks());
        auto it = groups.find(key);
        if (it == groups.end())
            it = groups.emplace(key, Group{s.size(), s.bits(), SubspaceEchelon(f)}).first;
        return it->second;
    };

    const std::uint64_t subsets = std::uint64_t{1} << g.edge_count();
    for (std::size_t r = 0; r < relations.size(); ++r) {
        for (std::uint64_t tb = 0; tb < subsets; ++tb) {
            const EdgeSubset t(tb);
            if ((t & cycle_sets[r]).size() > 1)
                continue;  // every term would repeat a generator
            VectorBuilder vec(f);
            EdgeSubset support;
            for (const auto& [s, mono] : relations[r]) {
                auto w = wedge(t, mono);
                if (!w)
                    continue;
                vec.add(w->monomial.bits(), f.from_int(s * w->sign));
                support = w->monomial;
            }
            SparseVector v = vec.finish();
            if (!v.empty())
                group_for(support).echelon.insert(std::move(v));
        }
    }

    if (mode == GeneratorMode::AllCycles) {
        // Every monomial containing a cycle must already lie in the generated span.
        for (std::uint64_t sb = 0; sb < subsets; ++sb) {
            const EdgeSubset s(sb);
            if (is_forest(g, s))
                continue;
            SparseVector unit{{static_cast<std::size_t>(sb), f.from_int(1)}};
            auto key = std::make_pair(s.size(), parts[sb].blocks());
            auto it = groups.find(key);
            if (it == groups.end() || !it->second.echelon.contains(unit))
                throw std::logic_error("ideal_subspace: cycle monomial outside the generated ideal");
        }
    }

    // Tensor the exterior part with every factor tuple, in dual coordinates.
    const auto dual_cells =
        enumerate_cells(g, A, parts, [&](const CellLabel& l) { return dual_total_degree(g, A, l); });
    IdealSubspace out;
    out.mode = mode;
    for (auto& [key, grp] : groups) {
        out.exterior_dimensions[static_cast<int>(grp.edge_count)] += grp.echelon.dimension();
        const std::size_t l = parts[grp.representative].size();
        for (const auto& tuple : factor_tuples(A.dimension(), l)) {
            for (const auto& bv : grp.echelon.basis()) {
                SparseVector v;
                int deg = 0;
                for (const auto& [mask, c] : bv) {
                    const auto& [d, idx] = dual_cells.where.at(LabelKey{mask, tuple});
                    deg = d;
                    v.emplace_back(idx, c);
                }
                std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
                out.spans[deg].push_back(std::move(v));
            }
        }
    }
    return out;
}

bool ideal_is_closed(const ChainComplex& dual, const IdealSubspace& ideal)
{
    if (dual.kind() != ComplexKind::Dual)
        throw std::invalid_argument("ideal_is_closed: expects the dual complex");
    for (const auto& [deg, vecs] : ideal.spans) {
        SubspaceEchelon next(dual.field());
        if (auto it = ideal.spans.find(deg + 1); it != ideal.spans.end())
            for (const auto& v : it->second)
                next.insert(v);
        for (const auto& v : vecs)
            if (!next.contains(apply(dual.differential(deg), v, dual.field())))
                return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// R_n

ChainComplex build_rn(const Graph& g, const FrobeniusAlgebra& A)
{
    if (A.pairing_degree() % 2 != 0)
        throw std::invalid_argument("build_rn: R_n needs an even pairing degree (an even-dimensional manifold), got "
                                    + std::to_string(A.pairing_degree()));
    return build_rn(g, A, build_cbs_dual(g, A));
}

ChainComplex build_rn(const Graph& g, const FrobeniusAlgebra& A, const ChainComplex& dual)
{
    if (A.pairing_degree() % 2 != 0)
        throw std::invalid_argument("build_rn: R_n needs an even pairing degree (an even-dimensional manifold), got "
                                    + std::to_string(A.pairing_degree()));
    require_simple(g, "build_rn");
    if (dual.kind() != ComplexKind::Dual || dual.source_key() != source_key(g, A))
        throw std::invalid_argument("build_rn: dual complex was built from different inputs");
    const Field& f = A.field();
    const IdealSubspace ideal = ideal_subspace(g, A, GeneratorMode::AllCycles);
    if (!ideal_is_closed(dual, ideal))
        throw std::logic_error("build_rn: ideal is not closed under the differential");

    std::map<int, SubspaceEchelon> ech;
    std::map<int, std::vector<std::size_t>> rep_of;  // ambient index -> quotient index (or npos)
    ComplexData d;
    d.kind = ComplexKind::Rn;
    d.grading = GradingKind::TotalDegree;
    d.direction = Direction::Raises;
    d.field = f;
    d.source_key = dual.source_key();
    for (int deg : dual.degrees()) {
        SubspaceEchelon e(f);
        if (auto it = ideal.spans.find(deg); it != ideal.spans.end())
            for (const auto& v : it->second)
                e.insert(v);
        const auto& amb = dual.basis(deg);
        std::vector<std::size_t> map(amb.size(), static_cast<std::size_t>(-1));
        auto& reps = d.cells[deg];
        for (std::size_t i = 0; i < amb.size(); ++i) {
            if (e.is_pivot(i))
                continue;
            map[i] = reps.size();
            reps.push_back(amb[i]);
        }
        ExactMatrix proj(reps.size(), amb.size());
        for (std::size_t i = 0; i < amb.size(); ++i) {
            SparseVector r = e.reduce({{i, f.from_int(1)}});
            for (auto& [k, c] : r)
                k = map[k];
            proj.set_column(i, std::move(r));
        }
        d.projections.emplace(deg, std::move(proj));
        ech.emplace(deg, std::move(e));
        rep_of.emplace(deg, std::move(map));
    }
    for (const auto& [deg, reps] : d.cells) {
        const auto& amb_map = rep_of.at(deg);
        auto next = d.projections.find(deg + 1);
        const std::size_t rows = next == d.projections.end() ? 0 : next->second.rows();
        ExactMatrix m(rows, reps.size());
        const ExactMatrix& delta = dual.differential(deg);
        for (std::size_t i = 0; i < amb_map.size(); ++i) {
            if (amb_map[i] == static_cast<std::size_t>(-1))
                continue;
            if (next == d.projections.end())
                continue;
            m.set_column(amb_map[i], apply(next->second, delta.column(i), f));
        }
        d.differentials.emplace(deg, std::move(m));
    }
    return ChainComplex(std::move(d));
}

// ---------------------------------------------------------------------------
// δ_int / δ_ext, F, filtrations

DifferentialSplit differential_split(const ChainComplex& dual)
{
    if (dual.kind() != ComplexKind::Dual)
        throw std::invalid_argument("differential_split: expects the dual complex");
    DifferentialSplit out;
    for (int deg : dual.degrees()) {
        const ExactMatrix& m = dual.differential(deg);
        const auto& src = dual.basis(deg);
        const auto& dst = dual.basis(deg + 1);
        ExactMatrix in(m.rows(), m.cols()), ex(m.rows(), m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            SparseVector a, b;
            for (const auto& [r, c] : m.column(j))
                (dst[r].blocks == src[j].blocks ? a : b).emplace_back(r, c);
            in.set_column(j, std::move(a));
            ex.set_column(j, std::move(b));
        }
        out.internal.emplace(deg, std::move(in));
        out.external.emplace(deg, std::move(ex));
    }
    return out;
}

ChainMap map_F(const ChainComplex& dual, const ChainComplex& rn)
{
    if (dual.kind() != ComplexKind::Dual || rn.kind() != ComplexKind::Rn)
        throw std::invalid_argument("map_F: expects (dual, rn)");
    if (dual.source_key() != rn.source_key())
        throw std::invalid_argument("map_F: complexes built from different graph/algebra/field");
    ChainMap f;
    f.degree_shift = 0;
    f.components = rn.projections();
    return f;
}

bool is_chain_map(const ChainMap& f, const ChainComplex& src, const ChainComplex& dst)
{
    if (src.step() != dst.step())
        return false;
    const Field& fld = src.field();
    auto component = [&](int deg) {
        auto it = f.components.find(deg);
        if (it != f.components.end())
            return it->second;
        return ExactMatrix(dst.dimension(deg + f.degree_shift), src.dimension(deg));
    };
    auto diff = [](const ChainComplex& c, int deg) {
        if (c.dimension(deg) == 0)
            return ExactMatrix(c.dimension(deg + c.step()), 0);
        return c.differential(deg);
    };
    std::set<int> degs;
    for (int d : src.degrees()) {
        degs.insert(d);
        degs.insert(d - src.step());
    }
    for (int d : degs) {
        ExactMatrix fd = component(d);
        ExactMatrix fn = component(d + src.step());
        if (fd.rows() != dst.dimension(d + f.degree_shift) || fd.cols() != src.dimension(d))
            return false;
        if (!(multiply(fn, diff(src, d), fld) == multiply(diff(dst, d + f.degree_shift), fd, fld)))
            return false;
    }
    return true;
}

ChainComplex filtration_quotient(const ChainComplex& c, int k)
{
    if (c.kind() != ComplexKind::Dual && c.kind() != ComplexKind::Rn)
        throw std::invalid_argument("filtration_quotient: expects the dual or rn complex");
    const int l = k - 1;
    ComplexData d;
    d.kind = ComplexKind::Stratum;
    d.grading = c.grading();
    d.direction = c.direction();
    d.field = c.field();
    d.source_key = c.source_key() + "#l=" + std::to_string(l);
    std::map<int, std::vector<std::size_t>> keep;  // degree -> stratum index -> ambient index
    for (int deg : c.degrees()) {
        const auto& b = c.basis(deg);
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (b[i].blocks == l) {
                keep[deg].push_back(i);
                d.cells[deg].push_back(b[i]);
            }
        }
    }
    for (const auto& [deg, idx] : keep) {
        const ExactMatrix& m = c.differential(deg);
        std::map<std::size_t, std::size_t> target;
        if (auto it = keep.find(deg + c.step()); it != keep.end())
            for (std::size_t i = 0; i < it->second.size(); ++i)
                target.emplace(it->second[i], i);
        ExactMatrix out(target.size(), idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) {
            SparseVector col;
            for (const auto& [r, v] : m.column(idx[j]))
                if (auto t = target.find(r); t != target.end())
                    col.emplace_back(t->second, v);
            out.set_column(j, std::move(col));
        }
        d.differentials.emplace(deg, std::move(out));
    }
    return ChainComplex(std::move(d));
}

// ---------------------------------------------------------------------------
// C_conn and deletion–contraction

namespace {

ChainComplex conn_complex(const Graph& g, const Field& f = Field())
{
    if (g.edge_count() > 24)
        throw std::invalid_argument("build_conn: too many edges to enumerate subsets");
    ComplexData d;
    d.kind = ComplexKind::Conn;
    d.grading = GradingKind::EdgeCount;
    d.direction = Direction::Lowers;
    d.field = f;
    d.source_key = g.encode();
    const std::uint64_t subsets = std::uint64_t{1} << g.edge_count();
    std::map<std::uint64_t, std::size_t> index;
    for (std::uint64_t s = 0; s < subsets; ++s) {
        const EdgeSubset S(s);
        if (component_count(g, S) != 1)
            continue;
        auto& list = d.cells[static_cast<int>(S.size())];
        index.emplace(s, list.size());
        list.push_back(CellLabel{S, {}, 1, 0});
    }
    for (const auto& [deg, labels] : d.cells) {
        auto below = d.cells.find(deg - 1);
        ExactMatrix m(below == d.cells.end() ? 0 : below->second.size(), labels.size());
        for (std::size_t j = 0; j < labels.size(); ++j) {
            VectorBuilder col(d.field);
            for (std::size_t e : labels[j].edges.indices()) {
                const EdgeSubset t = labels[j].edges.without(e);
                if (auto it = index.find(t.bits()); it != index.end())
                    col.add(it->second, d.field.from_int(removal_sign(labels[j].edges, e)));
            }
            m.set_column(j, col.finish());
        }
        d.differentials.emplace(deg, std::move(m));
    }
    return ChainComplex(std::move(d));
}

}  // namespace

ChainComplex build_conn(const Graph& g, const Field& f)
{
    if (g.edge_count() == 0 && g.vertex_count() > 1)
        return conn_complex(g, f);
    if (!g.is_connected())
        throw std::invalid_argument("build_conn: graph must be connected");
    return conn_complex(g, f);
}

std::pair<Graph, std::size_t> relabel_edge_last(const Graph& g, std::size_t e)
{
    if (e >= g.edge_count())
        throw std::out_of_range("relabel_edge_last: edge index out of range");
    const int n = static_cast<int>(g.vertex_count());
    const auto [u, v] = g.edge(e);
    std::vector<int> perm(static_cast<std::size_t>(n), -1);
    if (u == v) {
        perm[static_cast<std::size_t>(u)] = n - 1;
    } else {
        // A loop at the top vertex would sort after e, so the loop-free endpoint goes on top.
        auto has_loop = [&](int w) {
            for (std::size_t i = 0; i < g.edge_count(); ++i)
                if (g.is_loop(i) && g.edge(i).first == w)
                    return true;
            return false;
        };
        const bool swap = has_loop(v) && !has_loop(u);
        perm[static_cast<std::size_t>(swap ? v : u)] = n - 2;
        perm[static_cast<std::size_t>(swap ? u : v)] = n - 1;
    }
    int next = 0;
    for (auto& p : perm)
        if (p < 0)
            p = next++;
    Graph h = g.relabel(perm);
    const Edge want = std::minmax(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
    const std::size_t last = h.edge_count() - 1;
    if (h.edge(last) != want)
        throw std::invalid_argument("relabel_edge_last: both endpoints carry loops, so the edge cannot be ordered last");
    return {h, last};
}

DelConSequence delcon_sequence(const Graph& g, std::size_t e)
{
    if (e >= g.edge_count())
        throw std::out_of_range("delcon_sequence: edge index out of range");
    if (e + 1 != g.edge_count())
        throw std::invalid_argument("delcon_sequence: the chosen edge must be ordered last");
    if (g.is_loop(e))
        throw std::invalid_argument("delcon_sequence: cannot contract a loop");
    const Graph del = delete_edge(g, e);
    const Graph con = contract_edge(g, e);
    // A disconnected Γ∖e has no spanning connected subsets, so its complex is empty.
    DelConSequence s{conn_complex(del), build_conn(g), conn_complex(con), {}, {}};
    const Field f;

    // Old edge -> contracted edge index (stable re-sort of the mapped pairs).
    const auto vmap = contraction_vertex_map(g, e);
    std::vector<std::pair<Edge, std::size_t>> mapped;
    for (std::size_t i = 0; i + 1 < g.edge_count(); ++i) {
        int a = vmap[static_cast<std::size_t>(g.edge(i).first)];
        int b = vmap[static_cast<std::size_t>(g.edge(i).second)];
        mapped.push_back({{std::min(a, b), std::max(a, b)}, i});
    }
    std::stable_sort(mapped.begin(), mapped.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::size_t> new_index(g.edge_count() - 1);
    for (std::size_t k = 0; k < mapped.size(); ++k) {
        if (mapped[k].first != con.edge(k))
            throw std::logic_error("delcon_sequence: contraction edge order mismatch");
        new_index[mapped[k].second] = k;
    }

    s.alpha.degree_shift = 0;
    for (int deg : s.deleted.degrees()) {
        const auto& src = s.deleted.basis(deg);
        ExactMatrix m(s.whole.dimension(deg), src.size());
        for (std::size_t j = 0; j < src.size(); ++j)
            m.set_column(j, {{s.whole.locate(src[j]).second, f.from_int(1)}});
        s.alpha.components.emplace(deg, std::move(m));
    }
    s.beta.degree_shift = -1;
    for (int deg : s.whole.degrees()) {
        const auto& src = s.whole.basis(deg);
        ExactMatrix m(s.contracted.dimension(deg - 1), src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            if (!src[j].edges.contains(e))
                continue;
            std::vector<std::size_t> seq;
            for (std::size_t i : src[j].edges.without(e).indices())
                seq.push_back(new_index[i]);
            std::size_t inversions = 0;
            EdgeSubset image;
            for (std::size_t a = 0; a < seq.size(); ++a) {
                image = image.with(seq[a]);
                for (std::size_t b = a + 1; b < seq.size(); ++b)
                    inversions += seq[a] > seq[b];
            }
            const auto [d, idx] = s.contracted.locate(CellLabel{image, {}, 1, 0});
            if (d != deg - 1)
                throw std::logic_error("delcon_sequence: contraction changed degree unexpectedly");
            m.set_column(j, {{idx, f.from_int(inversions % 2 == 0 ? 1 : -1)}});
        }
        s.beta.components.emplace(deg, std::move(m));
    }
    return s;
}

std::vector<ExactnessRow> delcon_exactness(const DelConSequence& s)
{
    const Field f;
    std::vector<ExactnessRow> rows;
    std::set<int> degs;
    for (int d : s.deleted.degrees())
        degs.insert(d);
    for (int d : s.whole.degrees())
        degs.insert(d);
    for (int d : s.contracted.degrees())
        degs.insert(d + 1);
    for (int deg : degs) {
        ExactnessRow r;
        r.degree = deg;
        r.dim_deleted = s.deleted.dimension(deg);
        r.dim_whole = s.whole.dimension(deg);
        r.dim_contracted = s.contracted.dimension(deg - 1);
        ExactMatrix a(r.dim_whole, r.dim_deleted), b(r.dim_contracted, r.dim_whole);
        if (auto it = s.alpha.components.find(deg); it != s.alpha.components.end())
            a = it->second;
        if (auto it = s.beta.components.find(deg); it != s.beta.components.end())
            b = it->second;
        r.rank_alpha = rank(a, f);
        r.rank_beta = rank(b, f);
        r.alpha_injective = r.rank_alpha == r.dim_deleted;
        r.beta_surjective = r.rank_beta == r.dim_contracted;
        r.middle_exact = multiply(b, a, f).is_zero() && r.rank_alpha == r.dim_whole - r.rank_beta;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace gcoh
