#include <doctest.h>

#include <map>
#include <sstream>

#include "graphcohom/complexes.hpp"
#include "graphcohom/exterior.hpp"
#include "graphcohom/homology.hpp"
#include "support.hpp"

using namespace gcoh;

namespace {

const Field Q;

FrobeniusAlgebra alg(const std::string& name, const Field& f = Q)
{
    return *FrobeniusAlgebra::builtin(name, f);
}

std::vector<std::size_t> dims(const ChainComplex& c)
{
    std::vector<std::size_t> out;
    for (int d : c.degrees())
        out.push_back(c.dimension(d));
    return out;
}

using Dense = std::vector<std::vector<Scalar>>;

struct Flat {
    std::map<std::pair<std::uint64_t, std::vector<int>>, std::size_t> index;
    std::vector<CellLabel> labels;
};

Flat flatten(const ChainComplex& c)
{
    Flat f;
    for (int d : c.degrees())
        for (const auto& l : c.basis(d)) {
            f.index.emplace(std::make_pair(l.edges.bits(), l.factors), f.labels.size());
            f.labels.push_back(l);
        }
    return f;
}

// The differential of c as one dense matrix over the flat label order of `f`.
Dense dense_differential(const ChainComplex& c, const Flat& f)
{
    const std::size_t n = f.labels.size();
    Dense m(n, std::vector<Scalar>(n));
    for (int d : c.degrees()) {
        const auto& src = c.basis(d);
        const auto& dst = c.basis(d + c.step());
        const ExactMatrix& dm = c.differential(d);
        for (std::size_t j = 0; j < src.size(); ++j) {
            const std::size_t col = f.index.at({src[j].edges.bits(), src[j].factors});
            for (const auto& [r, v] : dm.column(j))
                m[f.index.at({dst[r].edges.bits(), dst[r].factors})][col] = v;
        }
    }
    return m;
}

Dense dense_mul(const Dense& a, const Dense& b, const Field& f)
{
    const std::size_t n = a.size();
    Dense c(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (Field::is_zero(a[i][k]))
                continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!Field::is_zero(b[k][j]))
                    c[i][j] = f.add(c[i][j], f.mul(a[i][k], b[k][j]));
        }
    return c;
}

Dense transpose(const Dense& a)
{
    Dense t(a.size(), std::vector<Scalar>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            t[j][i] = a[i][j];
    return t;
}

// Independent construction of Λ[G_ab] ⊗ A^{⊗3} / (G_ab(p_a*x − p_b*x), Arnold) for K3;
// returns quotient dimension per total degree (deg G = m − 1, plus factor degrees).
std::map<int, std::size_t> direct_quotient_k3_dims(const FrobeniusAlgebra& A)
{
    const Field& f = A.field();
    const Graph g = Graph::complete(3);
    const std::size_t dim = A.dimension();
    const std::size_t dim3 = dim * dim * dim;
    auto coord = [&](std::uint64_t s, const std::vector<int>& x) {
        return s * dim3 + static_cast<std::size_t>((x[0] * static_cast<int>(dim) + x[1]) * static_cast<int>(dim) + x[2]);
    };
    auto degree_of = [&](std::uint64_t s, const std::vector<int>& x) {
        return (A.pairing_degree() - 1) * static_cast<int>(EdgeSubset(s).size()) + A.degree(x[0]) + A.degree(x[1])
               + A.degree(x[2]);
    };
    std::vector<std::vector<int>> tuples;
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b)
            for (std::size_t c = 0; c < dim; ++c)
                tuples.push_back({static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)});

    SubspaceEchelon rel(f);
    auto add_relation = [&](const std::vector<std::pair<std::uint64_t, TensorElement>>& terms) {
        VectorBuilder v(f);
        for (const auto& [s, t] : terms)
            for (const auto& [idx, c] : t.terms())
                v.add(coord(s, idx), c);
        rel.insert(v.finish());
    };
    for (std::uint64_t t = 0; t < 8; ++t) {
        for (const auto& y : tuples) {
            TensorElement ty = TensorElement::pure(y, f.from_int(1), f);
            // G_T · G_ab ⊗ (p_a*(x) − p_b*(x)) y
            for (std::size_t e = 0; e < 3; ++e) {
                auto w = wedge(EdgeSubset(t), EdgeSubset::single(e));
                if (!w)
                    continue;
                for (std::size_t x = 0; x < dim; ++x) {
                    TensorElement px = TensorElement::pure({static_cast<int>(x)}, f.from_int(1), f);
                    TensorElement diff = pullback_slot(A, px, static_cast<std::size_t>(g.edge(e).first), 3);
                    diff.add(pullback_slot(A, px, static_cast<std::size_t>(g.edge(e).second), 3), f.from_int(-1), f);
                    TensorElement z(3);
                    z.add(multiply(A, diff, ty), f.from_int(w->sign), f);
                    add_relation({{w->monomial.bits(), z}});
                }
            }
            // G_T times the Arnold relation of the triangle
            std::vector<std::pair<std::uint64_t, TensorElement>> terms;
            for (const auto& [s, mono] : cycle_relation(g, {0, 1, 2})) {
                auto w = wedge(EdgeSubset(t), mono);
                if (!w)
                    continue;
                TensorElement z(3);
                z.add(ty, f.from_int(s * w->sign), f);
                terms.emplace_back(w->monomial.bits(), z);
            }
            if (!terms.empty())
                add_relation(terms);
        }
    }
    std::map<int, std::size_t> out;
    for (std::uint64_t s = 0; s < 8; ++s)
        for (const auto& x : tuples)
            if (!rel.is_pivot(coord(s, x)))
                ++out[degree_of(s, x)];
    return out;
}

}  // namespace

TEST_CASE("C_BS chain groups and differential")
{
    auto s2 = alg("s2");
    auto k3 = build_cbs(Graph::complete(3), s2);
    CHECK(k3.grading() == GradingKind::EdgeCount);
    CHECK(dims(k3) == std::vector<std::size_t>{8, 12, 6, 2});

    // ∂(e_∅ ⊗ x⊗x) = e_01 ⊗ x·x = 0
    auto k2 = build_cbs(Graph::complete(2), s2);
    auto [d, j] = k2.locate(CellLabel{EdgeSubset(0), {1, 1}, 2, 4});
    CHECK(d == 0);
    CHECK(k2.differential(0).column(j).empty());
    // ∂(e_∅ ⊗ 1⊗x) = e_01 ⊗ x
    auto [d1, j1] = k2.locate(CellLabel{EdgeSubset(0), {0, 1}, 2, 2});
    REQUIRE(k2.differential(d1).column(j1).size() == 1);
    CHECK(k2.basis(1)[k2.differential(d1).column(j1)[0].first].factors == std::vector<int>{1});

    CHECK_THROWS(build_cbs(Graph::multigraph(2, {{0, 1}, {0, 1}}), s2));
    // edgeless: concentrated in one degree with A^{⊗n}
    auto e3 = build_cbs(Graph::edgeless(3), s2);
    CHECK(e3.degrees() == std::vector<int>{0});
    CHECK(e3.dimension(0) == 8);
}

TEST_CASE("dual differential examples")
{
    auto s2 = alg("s2");
    // δ(G_01 ⊗ 1) = G_∅ ⊗ (1⊗x + x⊗1)
    auto k2 = build_cbs_dual(Graph::complete(2), s2);
    CHECK(k2.grading() == GradingKind::TotalDegree);
    auto [d, j] = k2.locate(CellLabel{EdgeSubset(1), {0}, 1, 0});
    const auto& col = k2.differential(d).column(j);
    REQUIRE(col.size() == 2);
    std::map<std::vector<int>, Scalar> got;
    for (const auto& [r, v] : col) {
        CHECK(k2.basis(d + 1)[r].edges.empty());
        got[k2.basis(d + 1)[r].factors] = v;
    }
    CHECK(got == std::map<std::vector<int>, Scalar>{{{0, 1}, 1}, {{1, 0}, 1}});

    // δ(G_all ⊗ 1) on K3 only removes internal edges: three tree terms, no Δ
    auto k3 = build_cbs_dual(Graph::complete(3), s2);
    auto [d3, j3] = k3.locate(CellLabel{EdgeSubset(7), {0}, 1, 0});
    const auto& c3 = k3.differential(d3).column(j3);
    REQUIRE(c3.size() == 3);
    for (const auto& [r, v] : c3) {
        const auto& lab = k3.basis(d3 + 1)[r];
        CHECK(lab.edges.size() == 2);
        CHECK(lab.factors == std::vector<int>{0});
        CHECK(v == removal_sign(EdgeSubset(7), static_cast<std::size_t>(__builtin_ctzll(7 & ~lab.edges.bits()))));
    }
}

TEST_CASE("dual differential is the pairing adjoint of ∂")
{
    std::vector<FrobeniusAlgebra> algebras{alg("s2"), alg("t2"), alg("cp2")};
    for (auto& A : testing::odd_algebras())
        algebras.push_back(A);
    for (const auto& A : algebras) {
        CAPTURE(A.name());
        for (const Graph& g : {Graph::complete(2), Graph::path(3), Graph::complete(3), Graph::cycle(4)}) {
            if (A.dimension() > 2 && g.edge_count() > 3)
                continue;
            auto cbs = build_cbs(g, A);
            auto dual = build_cbs_dual(g, A);
            Flat flat = flatten(cbs);
            REQUIRE(flat.labels.size() == dual.total_dimension());
            Dense bd = dense_differential(cbs, flat);
            Dense dd = dense_differential(dual, flat);
            const std::size_t n = flat.labels.size();
            Dense gram(n, std::vector<Scalar>(n));
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    if (flat.labels[x].edges == flat.labels[y].edges)
                        gram[x][y] = pairing_n(A, TensorElement::pure(flat.labels[x].factors, 1, Q),
                                               TensorElement::pure(flat.labels[y].factors, 1, Q));
            // <x, δy> = <∂x, y>
            CHECK(dense_mul(gram, dd, Q) == dense_mul(transpose(bd), gram, Q));
        }
    }
}

TEST_CASE("odd pairing degree: both complexes are built, R_n is refused")
{
    for (const auto& A : testing::odd_algebras(Field::prime(101))) {
        const Graph k4 = Graph::complete(4);
        auto cbs = build_cbs(k4, A);
        auto dual = build_cbs_dual(k4, A);
        CHECK(cbs.total_dimension() == dual.total_dimension());
        CHECK_THROWS_AS(build_rn(k4, A, dual), std::invalid_argument);
    }
}

TEST_CASE("total degree bookkeeping")
{
    auto s2 = alg("s2");
    auto t2 = alg("t2");
    for (const auto& A : {s2, t2}) {
        const Graph g = Graph::complete(4);
        auto dual = build_cbs_dual(g, A);
        const int m = A.pairing_degree();
        for (int d : dual.degrees())
            for (const auto& lab : dual.basis(d)) {
                CHECK(d == dual_total_degree(g, A, lab));
                const int n = 4, l = lab.blocks, s = static_cast<int>(lab.edges.size());
                CHECK(d == (m - 1) * (n - l) - (s - n + l) + lab.internal_degree);
                if (is_forest(g, lab.edges))
                    CHECK(d == (m - 1) * s + lab.internal_degree);
            }
    }
}

TEST_CASE("ideal generated by cycle relations")
{
    auto s2 = alg("s2");
    const Graph k3 = Graph::complete(3);
    auto rel = cycle_relation(k3, {0, 1, 2});
    // δ(s(0,1,2)) = G01G02 − G01G12 + G02G12 in monomials 3, 5, 6 ... as signed terms
    std::map<std::uint64_t, int> r;
    for (const auto& [s, m] : rel)
        r[m.bits()] = s;
    CHECK(r == std::map<std::uint64_t, int>{{0b110, 1}, {0b101, -1}, {0b011, 1}});

    auto tri = ideal_subspace(k3, s2, GeneratorMode::TrianglesOnly);
    CHECK(tri.exterior_dimensions.at(2) == 1);
    CHECK(tri.exterior_dimensions.at(3) == 1);
    auto dual = build_cbs_dual(k3, s2);
    CHECK(ideal_is_closed(dual, tri));

    // trees carry no relations
    auto tree = ideal_subspace(Graph::path(4), s2, GeneratorMode::AllCycles);
    CHECK(tree.spans.empty());

    // chordless C4: the 4-cycle relation is invisible to triangle generators
    const Graph c4 = Graph::cycle(4);
    auto all = ideal_subspace(c4, s2, GeneratorMode::AllCycles);
    auto only3 = ideal_subspace(c4, s2, GeneratorMode::TrianglesOnly);
    CHECK(all.exterior_dimensions.at(3) == 1);
    CHECK(all.exterior_dimensions.at(4) == 1);
    CHECK(only3.exterior_dimensions.empty());
    CHECK(ideal_is_closed(build_cbs_dual(c4, s2), all));

    // K4: triangles generate the whole cycle ideal
    const Graph k4 = Graph::complete(4);
    CHECK(ideal_subspace(k4, s2, GeneratorMode::AllCycles).exterior_dimensions
          == ideal_subspace(k4, s2, GeneratorMode::TrianglesOnly).exterior_dimensions);

    // the top monomial of K3: G_02 ∧ δ(s) = ±G01G02G12 since G_02² = 0
    int top_sign = 0;
    for (const auto& [s, m] : rel)
        if (auto w = wedge(EdgeSubset::single(1), m)) {
            CHECK(w->monomial == EdgeSubset(7));
            top_sign += s * w->sign;
        }
    CHECK((top_sign == 1 || top_sign == -1));
}

TEST_CASE("R_n as a quotient of the dual complex")
{
    auto s2 = alg("s2");
    const Graph k3 = Graph::complete(3);
    auto dual = build_cbs_dual(k3, s2);
    auto rn = build_rn(k3, s2, dual);
    std::map<std::size_t, std::size_t> by_edges;
    for (int d : rn.degrees())
        for (const auto& lab : rn.basis(d))
            ++by_edges[lab.edges.size()];
    CHECK(by_edges[2] == 4);
    CHECK(by_edges[3] == 0);
    CHECK(by_edges[0] == 8);  // A^{⊗3} untouched
    CHECK(by_edges[1] == 12);

    // the image of G_01G02G12 ⊗ a is zero
    for (int a = 0; a < 2; ++a) {
        auto [d, j] = dual.locate(CellLabel{EdgeSubset(7), {a}, 1, 2 * a});
        CHECK(rn.projections().at(d).column(j).empty());
    }
    // forest monomials map to nonzero cosets
    auto [df, jf] = dual.locate(CellLabel{EdgeSubset(0b011), {0}, 1, 0});
    CHECK_FALSE(rn.projections().at(df).column(jf).empty());

    // a tree: R_n is the dual complex
    const Graph p4 = Graph::path(4);
    auto pd = build_cbs_dual(p4, s2);
    auto pr = build_rn(p4, s2, pd);
    CHECK(dims(pd) == dims(pr));

    // odd pairing degree is rejected
    std::istringstream s3("pairing_degree 3\nbasis 1:0 y:3\nunit 1\npair 1 y = 1\n");
    auto A3 = FrobeniusAlgebra::parse(s3, "s3");
    CHECK_THROWS_WITH_AS(build_rn(k3, A3), doctest::Contains("even pairing degree"), std::invalid_argument);
    CHECK_THROWS(build_rn(Graph::multigraph(2, {{0, 1}, {0, 1}}), s2));
    CHECK_THROWS(build_rn(Graph::complete(2), s2, dual));
}

TEST_CASE("R_n for K3 matches a direct Λ[G] ⊗ A^{⊗3} construction")
{
    for (const char* name : {"s2", "t2"}) {
        auto A = alg(name);
        auto rn = build_rn(Graph::complete(3), A);
        std::map<int, std::size_t> ours;
        for (int d : rn.degrees())
            ours[d] = rn.dimension(d);
        CHECK(ours == direct_quotient_k3_dims(A));
    }
}

TEST_CASE("differential split and the chain map F")
{
    auto s2 = alg("s2");
    auto t2 = alg("t2");
    // tree: δ_int = 0
    auto pd = build_cbs_dual(Graph::path(3), s2);
    for (const auto& [d, m] : differential_split(pd).internal)
        CHECK(m.is_zero());
    // K3: δ_ext vanishes on G_all
    auto k3 = build_cbs_dual(Graph::complete(3), s2);
    auto split = differential_split(k3);
    auto [d, j] = k3.locate(CellLabel{EdgeSubset(7), {0}, 1, 0});
    CHECK(split.external.at(d).column(j).empty());
    for (const auto& A : {s2, t2}) {
        const Graph g = Graph::complete(4);
        auto dual = build_cbs_dual(g, A);
        auto sp = differential_split(dual);
        for (int deg : dual.degrees()) {
            CHECK(add(sp.internal.at(deg), sp.external.at(deg), Q) == dual.differential(deg));
            if (!sp.internal.count(deg + 1))
                continue;
            CHECK(multiply(sp.internal.at(deg + 1), sp.internal.at(deg), Q).is_zero());
            CHECK(multiply(sp.external.at(deg + 1), sp.external.at(deg), Q).is_zero());
            CHECK(add(multiply(sp.internal.at(deg + 1), sp.external.at(deg), Q),
                      multiply(sp.external.at(deg + 1), sp.internal.at(deg), Q), Q)
                      .is_zero());
        }
        // on forest labels the R_n differential is δ_ext followed by the projection
        auto rn = build_rn(g, A, dual);
        auto F = map_F(dual, rn);
        CHECK(is_chain_map(F, dual, rn));
        for (int deg : dual.degrees()) {
            const auto& b = dual.basis(deg);
            for (std::size_t i = 0; i < b.size(); ++i) {
                if (!is_forest(g, b[i].edges) || !F.components.count(deg + 1))
                    continue;
                CHECK(apply(F.components.at(deg + 1), sp.external.at(deg).column(i), Q)
                      == apply(F.components.at(deg + 1), dual.differential(deg).column(i), Q));
            }
        }
    }
    CHECK_THROWS(differential_split(build_cbs(Graph::complete(2), s2)));
    auto other = build_rn(Graph::complete(3), t2);
    CHECK_THROWS(map_F(k3, other));
}

TEST_CASE("C_conn")
{
    auto k3 = build_conn(Graph::complete(3));
    CHECK(k3.degrees() == std::vector<int>{2, 3});
    CHECK(dims(k3) == std::vector<std::size_t>{3, 1});
    CHECK(k3.direction() == Direction::Lowers);
    CHECK(rank(k3.differential(3), Q) == 1);

    auto k2 = build_conn(Graph::complete(2));
    CHECK(k2.degrees() == std::vector<int>{1});
    CHECK(k2.dimension(1) == 1);

    // edge plus loop: d{edge, loop} = −{edge}, one edge precedes the loop
    auto looped = build_conn(Graph::multigraph(2, {{0, 1}, {1, 1}}));
    REQUIRE(looped.dimension(2) == 1);
    const auto& col = looped.differential(2).column(0);
    REQUIRE(col.size() == 1);
    CHECK(looped.basis(1)[col[0].first].edges == EdgeSubset(0b01));
    CHECK(col[0].second == -1);

    CHECK_THROWS(build_conn(Graph::simple(4, {{0, 1}, {2, 3}})));
    CHECK(build_conn(Graph::edgeless(3)).degrees().empty());
    CHECK(build_conn(Graph::edgeless(1)).dimension(0) == 1);
}

TEST_CASE("deletion–contraction sequence")
{
    std::vector<Graph> graphs{Graph::complete(3), Graph::complete(4), Graph::cycle(4),
                              Graph::simple(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}, {1, 3}})};
    for (const Graph& g : graphs) {
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            auto [h, last] = relabel_edge_last(g, e);
            CHECK(last + 1 == h.edge_count());
            auto s = delcon_sequence(h, last);
            CHECK(is_chain_map(s.alpha, s.deleted, s.whole));
            CHECK(is_chain_map(s.beta, s.whole, s.contracted));
            for (const auto& row : delcon_exactness(s)) {
                CAPTURE(row.degree);
                CHECK(row.alpha_injective);
                CHECK(row.beta_surjective);
                CHECK(row.middle_exact);
            }
            // β kills subsets that avoid e
            for (int d : s.whole.degrees()) {
                const auto& b = s.whole.basis(d);
                for (std::size_t i = 0; i < b.size(); ++i)
                    if (!b[i].edges.contains(last))
                        CHECK(s.beta.components.at(d).column(i).empty());
            }
        }
    }
    // loops and a doubled edge; a loop on one endpoint moves that endpoint off the top vertex
    const Graph multi = Graph::multigraph(3, {{0, 1}, {0, 1}, {1, 2}, {0, 2}, {2, 2}});
    for (std::size_t e = 0; e < multi.edge_count(); ++e) {
        if (multi.is_loop(e))
            continue;
        auto [h, last] = relabel_edge_last(multi, e);
        CHECK_FALSE(h.is_loop(last));
        for (const auto& row : delcon_exactness(delcon_sequence(h, last)))
            CHECK(row.middle_exact);
    }
    CHECK_THROWS(relabel_edge_last(Graph::multigraph(2, {{0, 0}, {0, 1}, {1, 1}}), 1));
    CHECK_THROWS(delcon_sequence(Graph::complete(3), 0));
    CHECK_THROWS(delcon_sequence(Graph::multigraph(2, {{0, 1}, {1, 1}}), 1));
}

TEST_CASE("filtration strata")
{
    auto s2 = alg("s2");
    for (int n : {3, 4}) {
        const Graph g = Graph::complete(static_cast<std::size_t>(n));
        auto dual = build_cbs_dual(g, s2);
        auto rn = build_rn(g, s2, dual);
        // l = n: only S = ∅, zero differential
        auto top = filtration_quotient(dual, n + 1);
        for (int d : top.degrees()) {
            for (const auto& lab : top.basis(d))
                CHECK(lab.edges.empty());
            CHECK(top.differential(d).is_zero());
        }
        for (int l = 1; l <= n; ++l)
            CHECK(betti(filtration_quotient(dual, l + 1)) == betti(filtration_quotient(rn, l + 1)));
        // l = 1: connected spanning subgraphs ⊗ A, by edge count
        auto conn = build_conn(g);
        std::map<std::size_t, std::size_t> stratum;
        auto l1 = filtration_quotient(dual, 2);
        for (int d : l1.degrees())
            for (const auto& lab : l1.basis(d))
                ++stratum[lab.edges.size()];
        for (int d : conn.degrees())
            CHECK(stratum[static_cast<std::size_t>(d)] == conn.dimension(d) * s2.dimension());
    }
    CHECK_THROWS(filtration_quotient(build_conn(Graph::complete(3)), 2));
}
