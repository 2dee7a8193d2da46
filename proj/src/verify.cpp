#include "graphcohom/verify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "graphcohom/chromatic.hpp"
#include "graphcohom/homology.hpp"

namespace gcoh {

std::string to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Info: return "INFO";
    }
    return "?";
}

namespace {

TensorElement basis_vector(const FrobeniusAlgebra& A, int i)
{
    return TensorElement::pure({i}, A.field().from_int(1), A.field());
}

/// a·b as a one-slot element.
TensorElement product1(const FrobeniusAlgebra& A, int a, int b)
{
    return multiply(A, basis_vector(A, a), basis_vector(A, b));
}

TensorElement in_slot(const FrobeniusAlgebra& A, int i, std::size_t slot)
{
    return pullback_slot(A, basis_vector(A, i), slot, 2);
}

}  // namespace

std::string check_lemma_delta(const FrobeniusAlgebra& A)
{
    const int n = static_cast<int>(A.dimension());
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            TensorElement ab = multiply(A, in_slot(A, a, 0), in_slot(A, b, 1));
            if (!(multiply(A, ab, A.diagonal()) == comultiply(A, product1(A, a, b))))
                return "(a⊗b)Δ != μ*(ab) at a=" + A.label(a) + ", b=" + A.label(b);
        }
    }
    return {};
}

std::string check_delta_symmetry(const FrobeniusAlgebra& A)
{
    const int n = static_cast<int>(A.dimension());
    const Field& f = A.field();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            TensorElement ab = TensorElement::pure({a, b}, f.from_int(1), f);
            Scalar rhs(0);
            for (const auto& t : A.product(a, b))
                rhs = f.add(rhs, f.mul(t.coefficient, A.pairing(t.basis, A.unit())));
            if (pairing_n(A, ab, A.diagonal()) != rhs)
                return "<a⊗b, Δ> != <ab, 1> at a=" + A.label(a) + ", b=" + A.label(b);
        }
        if (!(multiply(A, in_slot(A, a, 1), A.diagonal()) == multiply(A, in_slot(A, a, 0), A.diagonal())))
            return "(1⊗a)Δ != (a⊗1)Δ at a=" + A.label(a);
    }
    return {};
}

std::string check_bimodule(const FrobeniusAlgebra& A)
{
    const int n = static_cast<int>(A.dimension());
    const Field& f = A.field();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                TensorElement mid =
                    multiply(A, multiply(A, in_slot(A, a, 0), comultiply(A, b)), in_slot(A, c, 1));
                TensorElement abc = multiply(A, product1(A, a, b), basis_vector(A, c));
                for (int x = 0; x < n; ++x) {
                    for (int y = 0; y < n; ++y) {
                        TensorElement xy = TensorElement::pure({x, y}, f.from_int(1), f);
                        const Scalar lhs = pairing_n(A, xy, mid);
                        Scalar rhs = pairing_n(A, product1(A, x, y), abc);
                        // moving 1⊗c past the rest of the pairing costs (−1)^{m|c|}
                        if (A.pairing_degree() * A.degree(c) % 2 != 0)
                            rhs = f.neg(rhs);
                        if (lhs != rhs)
                            return "bimodule identity fails at x=" + A.label(x) + " y=" + A.label(y)
                                   + " a=" + A.label(a) + " b=" + A.label(b) + " c=" + A.label(c);
                    }
                }
            }
        }
    }
    return {};
}

std::vector<CheckResult> run_verify_suite(const Graph& g, const FrobeniusAlgebra& A, GeneratorMode mode)
{
    std::vector<CheckResult> out;
    // A throwing check is a failure of that check, not of the whole suite.
    auto run = [&](const std::string& name, const std::function<CheckResult()>& body) {
        try {
            CheckResult r = body();
            r.name = name;
            out.push_back(std::move(r));
        } catch (const std::exception& e) {
            out.push_back({name, CheckStatus::Fail, e.what()});
        }
    };
    auto verdict = [](const std::string& failure, const std::string& ok) {
        return failure.empty() ? CheckResult{{}, CheckStatus::Pass, ok} : CheckResult{{}, CheckStatus::Fail, failure};
    };
    auto info = [](const std::string& why) { return CheckResult{{}, CheckStatus::Info, why}; };

    const bool simple = g.is_simple();
    const bool even = A.pairing_degree() % 2 == 0;
    const bool connected = g.is_connected();

    run("frobenius-axioms", [&] {
        return CheckResult{{}, CheckStatus::Pass, "algebra '" + A.name() + "' validated on construction"};
    });
    run("delta-symmetry", [&] { return verdict(check_delta_symmetry(A), "Δ = " + A.format(A.diagonal())); });
    run("lemma-delta", [&] { return verdict(check_lemma_delta(A), "(a⊗b)Δ = μ*(ab) for all basis pairs"); });
    run("mu-bimodule", [&] { return verdict(check_bimodule(A), "<x⊗y,(a⊗1)μ*(b)(1⊗c)> = (−1)^{m|c|}<xy,abc>"); });

    std::optional<ChainComplex> dual, rn;
    run("d-squared-cbs", [&] {
        if (!simple)
            return info("skipped: graph is not simple");
        build_cbs(g, A);
        return CheckResult{{}, CheckStatus::Pass, "∂∘∂ = 0"};
    });
    run("d-squared-dual", [&] {
        if (!simple)
            return info("skipped: graph is not simple");
        dual.emplace(build_cbs_dual(g, A));
        return CheckResult{{}, CheckStatus::Pass, "δ∘δ = 0"};
    });
    run("d-squared-rn", [&] {
        if (!dual)
            return info("skipped: no dual complex");
        if (!even)
            return info("skipped: R_n needs an even pairing degree");
        rn.emplace(build_rn(g, A, *dual));
        return CheckResult{{}, CheckStatus::Pass, "d∘d = 0"};
    });
    run("d-squared-conn", [&] {
        if (!connected)
            return info("skipped: graph is disconnected");
        build_conn(g);
        return CheckResult{{}, CheckStatus::Pass, "d_conn∘d_conn = 0"};
    });
    run("delta-split", [&] {
        if (!dual)
            return info("skipped: no dual complex");
        const Field& f = dual->field();
        DifferentialSplit s = differential_split(*dual);
        for (int d : dual->degrees()) {
            if (!(add(s.internal.at(d), s.external.at(d), f) == dual->differential(d)))
                return CheckResult{{}, CheckStatus::Fail, "δ_int + δ_ext != δ in degree " + std::to_string(d)};
            auto next = s.internal.find(d + 1);
            if (next == s.internal.end())
                continue;
            const auto& ni = next->second;
            const auto& ne = s.external.at(d + 1);
            if (!multiply(ni, s.internal.at(d), f).is_zero() || !multiply(ne, s.external.at(d), f).is_zero()
                || !add(multiply(ni, s.external.at(d), f), multiply(ne, s.internal.at(d), f), f).is_zero())
                return CheckResult{{}, CheckStatus::Fail, "split is not a bicomplex in degree " + std::to_string(d)};
        }
        return CheckResult{{}, CheckStatus::Pass, "δ_int² = δ_ext² = δ_intδ_ext + δ_extδ_int = 0"};
    });
    run("ideal-closed", [&] {
        if (!dual)
            return info("skipped: no dual complex");
        IdealSubspace I = ideal_subspace(g, A, mode);
        return ideal_is_closed(*dual, I) ? CheckResult{{}, CheckStatus::Pass, "δ(I) ⊆ I"}
                                          : CheckResult{{}, CheckStatus::Fail, "δ(I) not contained in I"};
    });
    run("ideal-triangle-generation", [&] {
        if (!simple)
            return info("skipped: graph is not simple");
        IdealSubspace all = ideal_subspace(g, A, GeneratorMode::AllCycles);
        IdealSubspace tri = ideal_subspace(g, A, GeneratorMode::TrianglesOnly);
        std::ostringstream diff;
        for (const auto& [d, v] : all.exterior_dimensions) {
            auto it = tri.exterior_dimensions.find(d);
            const std::size_t t = it == tri.exterior_dimensions.end() ? 0 : it->second;
            if (t != v)
                diff << " edges " << d << ": all-cycles " << v << " vs triangles " << t << ";";
        }
        if (diff.str().empty())
            return CheckResult{{}, CheckStatus::Pass, "triangle relations generate the cycle ideal"};
        return info("triangle relations generate a smaller ideal:" + diff.str());
    });
    run("arnold-cycles-vanish", [&] {
        if (!rn)
            return info("skipped: no R_n complex");
        std::size_t checked = 0;
        for (int d : dual->degrees()) {
            const auto& b = dual->basis(d);
            const ExactMatrix& proj = rn->projections().at(d);
            for (std::size_t i = 0; i < b.size(); ++i) {
                if (is_forest(g, b[i].edges))
                    continue;
                ++checked;
                if (!proj.column(i).empty())
                    return CheckResult{{}, CheckStatus::Fail, "cycle-supported label survives in R_n"};
            }
        }
        return CheckResult{{}, CheckStatus::Pass, std::to_string(checked) + " cycle-supported labels map to 0"};
    });
    run("chain-map-F", [&] {
        if (!rn)
            return info("skipped: no R_n complex");
        return is_chain_map(map_F(*dual, *rn), *dual, *rn) ? CheckResult{{}, CheckStatus::Pass, "F∘δ = d∘F"}
                                                            : CheckResult{{}, CheckStatus::Fail, "F∘δ != d∘F"};
    });
    run("quasi-iso", [&] {
        if (!rn)
            return info("skipped: no R_n complex");
        QuasiIsoReport r = quasi_iso_check(*dual, *rn);
        return r.all_match ? CheckResult{{}, CheckStatus::Pass, "Betti tables of dual and R_n agree"}
                           : CheckResult{{}, CheckStatus::Fail, "Betti tables of dual and R_n differ"};
    });
    run("filtration-strata", [&] {
        if (!rn)
            return info("skipped: no R_n complex");
        for (int l = 1; l <= static_cast<int>(g.vertex_count()); ++l) {
            if (!(betti(filtration_quotient(*dual, l + 1)) == betti(filtration_quotient(*rn, l + 1))))
                return CheckResult{{}, CheckStatus::Fail, "stratum l=" + std::to_string(l) + " Betti tables differ"};
        }
        return CheckResult{{}, CheckStatus::Pass, "every stratum of dual and R_n has the same homology"};
    });
    run("del-contr-exact", [&] {
        if (!connected)
            return info("skipped: graph is disconnected");
        std::size_t tried = 0, blocked = 0;
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            if (g.is_loop(e))
                continue;
            const auto [u, v] = g.edge(e);
            if (std::find(g.edges().begin(), g.edges().end(), Edge{u, u}) != g.edges().end()
                && std::find(g.edges().begin(), g.edges().end(), Edge{v, v}) != g.edges().end()) {
                ++blocked;
                continue;
            }
            auto [h, last] = relabel_edge_last(g, e);
            DelConSequence s = delcon_sequence(h, last);
            if (!is_chain_map(s.alpha, s.deleted, s.whole) || !is_chain_map(s.beta, s.whole, s.contracted))
                return CheckResult{{}, CheckStatus::Fail, "α or β is not a chain map for edge " + std::to_string(e)};
            for (const auto& r : delcon_exactness(s))
                if (!r.alpha_injective || !r.beta_surjective || !r.middle_exact)
                    return CheckResult{{}, CheckStatus::Fail,
                                       "not exact in degree " + std::to_string(r.degree) + " for edge "
                                           + std::to_string(e)};
            ++tried;
        }
        std::string detail = "exact for " + std::to_string(tried) + " edges";
        if (blocked > 0)
            detail += " (" + std::to_string(blocked) + " skipped: loops at both ends)";
        return CheckResult{{}, CheckStatus::Pass, detail};
    });
    run("loop-multiedge", [&] {
        if (!connected || g.edge_count() == 0)
            return info("skipped: needs a connected graph with an edge");
        if (g.edge_count() + 1 > 20)
            return info("skipped: graph too large");
        std::vector<Edge> looped = g.edges();
        looped.emplace_back(0, 0);
        if (!betti(build_conn(Graph::multigraph(g.vertex_count(), looped))).nonzero().empty())
            return CheckResult{{}, CheckStatus::Fail, "a loop leaves nonzero C_conn homology"};
        std::vector<Edge> doubled = g.edges();
        doubled.push_back(g.edge(0));
        if (!(betti(build_conn(Graph::multigraph(g.vertex_count(), doubled))).nonzero()
              == betti(build_conn(g)).nonzero()))
            return CheckResult{{}, CheckStatus::Fail, "doubling an edge changes C_conn homology"};
        return CheckResult{{}, CheckStatus::Pass, "loop kills homology; doubled edge keeps it"};
    });
    run("euler-chromatic", [&] {
        if (!simple)
            return info("skipped: graph is not simple");
        IntPolynomial lhs = graded_euler(build_cbs(g, A));
        IntPolynomial rhs = chromatic_delcon(g).compose(quantum_dimension(A));
        return lhs == rhs ? CheckResult{{}, CheckStatus::Pass, "χ_q(C_BS) = P(Γ, qdim A) = " + lhs.to_string("q")}
                          : CheckResult{{}, CheckStatus::Fail,
                                        "χ_q(C_BS) = " + lhs.to_string("q") + " but P(Γ, qdim A) = " + rhs.to_string("q")};
    });
    run("chromatic-routes", [&] {
        IntPolynomial a = chromatic_subset(g), b = chromatic_delcon(g);
        return a == b ? CheckResult{{}, CheckStatus::Pass, "P = " + a.to_string("λ")}
                      : CheckResult{{}, CheckStatus::Fail, "subset " + a.to_string("λ") + " vs delcon " + b.to_string("λ")};
    });
    return out;
}

}  // namespace gcoh
