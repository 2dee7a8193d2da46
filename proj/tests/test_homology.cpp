#include <doctest.h>

#include "graphcohom/chromatic.hpp"
#include "graphcohom/homology.hpp"
#include "support.hpp"

using namespace gcoh;

namespace {

const Field Q;

FrobeniusAlgebra alg(const std::string& name, const Field& f = Q)
{
    return *FrobeniusAlgebra::builtin(name, f);
}

}  // namespace

TEST_CASE("Betti numbers of C_conn")
{
    auto k3 = betti(build_conn(Graph::complete(3)));
    CHECK(k3.nonzero() == std::map<int, std::size_t>{{2, 2}});
    CHECK(k3.at(3) == 0);
    CHECK(k3.at(7) == 0);
    auto k4 = betti(build_conn(Graph::complete(4)));
    CHECK(k4.nonzero() == std::map<int, std::size_t>{{3, 6}});
    // a tree: only the whole edge set
    CHECK(betti(build_conn(Graph::path(4))).nonzero() == std::map<int, std::size_t>{{3, 1}});
    // a cycle: the top cell hits the sum of the four paths; H_3 has rank |[λ]P(C4)| = 3
    auto c4 = betti(build_conn(Graph::cycle(4)));
    CHECK(c4.nonzero() == std::map<int, std::size_t>{{3, 3}});
}

TEST_CASE("Betti numbers of the C_BS complexes")
{
    auto s2 = alg("s2");
    // edgeless: zero differential, homology is the whole chain group
    auto e = betti(build_cbs(Graph::edgeless(2), s2));
    CHECK(e.nonzero() == std::map<int, std::size_t>{{0, 4}});

    auto k3 = betti(build_cbs_dual(Graph::complete(3), s2));
    CHECK(k3.grading == GradingKind::TotalDegree);
    CHECK(k3.nonzero() == std::map<int, std::size_t>{{0, 1}, {3, 1}});
    auto k4 = betti(build_cbs_dual(Graph::complete(4), s2));
    CHECK(k4.nonzero() == std::map<int, std::size_t>{{0, 1}, {1, 2}, {3, 1}, {4, 2}});

    BettiTable a{GradingKind::EdgeCount, {{0, 1}, {1, 0}}};
    BettiTable b{GradingKind::EdgeCount, {{0, 1}}};
    BettiTable c{GradingKind::TotalDegree, {{0, 1}}};
    CHECK(a == b);
    CHECK_FALSE(a == c);
}

TEST_CASE("Euler characteristic equals the alternating Betti sum")
{
    for (const char* name : {"s2", "t2", "cp2"}) {
        auto A = alg(name);
        for (std::size_t n = 1; n <= 3; ++n)
            for (const Graph& g : testing::all_simple_graphs(n)) {
                for (const auto& c : {build_cbs(g, A), build_cbs_dual(g, A), build_rn(g, A)})
                    CHECK(euler_characteristic(c) == euler_characteristic(betti(c)));
                auto cbs = build_cbs(g, A);
                auto P = chromatic_subset(g);
                CHECK(euler_characteristic(cbs) == P.evaluate(static_cast<long>(A.dimension())));
                CHECK(graded_euler(cbs) == P.compose(quantum_dimension(A)));
            }
    }
}

TEST_CASE("graded Euler characteristic examples")
{
    auto s2 = alg("s2");
    auto q2 = quantum_dimension(s2);
    auto k3 = graded_euler(build_cbs(Graph::complete(3), s2));
    CHECK(k3 == chromatic_subset(Graph::complete(3)).compose(q2));
    // (1+q²)((1+q²)−1)((1+q²)−2) = q⁶ − q²  ... expanded
    CHECK(k3.to_string("q") == "q^6 - q^2");
    CHECK(graded_euler(build_cbs(Graph::edgeless(3), s2)) == q2.pow(3));
    CHECK_THROWS(graded_euler(build_cbs_dual(Graph::complete(2), s2)));
}

TEST_CASE("dual and R_n are quasi-isomorphic")
{
    struct Case {
        Graph g;
        const char* alg;
    };
    for (const auto& [g, name] : {Case{Graph::complete(3), "s2"}, Case{Graph::path(4), "s2"},
                                  Case{Graph::complete(4), "t2"}, Case{Graph::cycle(4), "cp2"}}) {
        auto A = alg(name);
        auto dual = build_cbs_dual(g, A);
        auto rn = build_rn(g, A, dual);
        auto report = quasi_iso_check(dual, rn);
        CHECK(report.all_match);
        for (const auto& row : report.rows)
            CHECK(row.dim_b <= row.dim_a);
    }
    auto s2 = alg("s2");
    CHECK_THROWS(quasi_iso_check(build_cbs(Graph::complete(2), s2), build_cbs_dual(Graph::complete(2), s2)));
}

TEST_CASE("Betti numbers agree across Q and large primes")
{
    const Field f101 = Field::prime(101);
    const Field f65537 = Field::prime(65537);
    for (const char* name : {"s2", "t2"})
        for (const Graph& g : {Graph::complete(3), Graph::cycle(4), Graph::complete(4)}) {
            auto q = betti(build_cbs_dual(g, alg(name)));
            CHECK(q == betti(build_cbs_dual(g, alg(name, f101))));
            CHECK(q == betti(build_cbs_dual(g, alg(name, f65537))));
            CHECK(betti(build_rn(g, alg(name))) == betti(build_rn(g, alg(name, f101))));
        }
    CHECK(betti(build_conn(Graph::complete(4))) == betti(build_conn(Graph::complete(4), f101)));
}
