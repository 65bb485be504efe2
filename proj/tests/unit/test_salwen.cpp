#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "common.hpp"

using namespace floq;
using test::MHz;

namespace {

double max_entry(const Mat& h, std::initializer_list<std::pair<int, int>> at)
{
    double m = 0.0;
    for (auto [i, j] : at)
        m = std::max({m, std::abs(h(i, j)), std::abs(h(j, i))});
    return m;
}

std::vector<double> sorted_eps(const EffectiveSpinHamiltonian& h)
{
    std::vector<double> e(h.quasienergies.data(), h.quasienergies.data() + h.quasienergies.size());
    std::sort(e.begin(), e.end());
    return e;
}

}  // namespace

TEST_SUITE("salwen") {

TEST_CASE("slow manifolds at the working points")
{
    auto zx = test::build(test::table1(4));
    std::vector<CompositeIndex> expect = {{0, {-1}}, {1, {0}}, {2, {-1}}, {3, {0}}};
    CHECK(zx.m.states == expect);
    // Found without being told which states to take
    const auto found = identify_slow_manifold(zx.f);
    CHECK(found.states == expect);
    CHECK(zx.m.gap == doctest::Approx(3.0));

    auto sq = test::build(test::squeezing(4));
    expect = {{0, {-1}}, {1, {-1}}, {2, {0}}, {3, {0}}};
    CHECK(sq.m.states == expect);

    auto bi = test::build(test::table2(2));
    expect = {{0, {-1, -1}}, {1, {-1, 0}}, {2, {0, -1}}, {3, {0, 0}}};
    CHECK(bi.m.states == expect);
}

TEST_CASE("non-degenerate slow states are rejected")
{
    auto setup = test::table1(4);
    setup.frame = {11.9, 0.0};
    CHECK_THROWS_AS(test::build(setup), PhysicsError);
    setup = test::table1(4);
    setup.slow_states[0].m = {0};
    CHECK_THROWS_AS(test::build(setup), PhysicsError);
}

TEST_CASE("zeroth scattering term is the projected V")
{
    auto sq = test::build(test::squeezing(6));
    CHECK(max_abs(scattering_apply(sq.f, sq.m, 0.0, 0)) < 1e-15);
    auto zx = test::build(test::table1(6));
    const Mat t0 = scattering_apply(zx.f, zx.m, 0.0, 0);
    Mat pv(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            pv(i, j) = zx.f.V().coeff(zx.m.rows[i], zx.m.rows[j]);
    CHECK(max_abs(t0 - pv) < 1e-15);
}

TEST_CASE("scattering term k scales as lambda^(k+1)")
{
    auto zx = test::build(test::table1(6));
    const double lambda = 0.37;
    const auto scaled = scale_perturbation(zx.f, lambda);
    for (int k = 0; k <= 4; ++k) {
        const Mat a = scattering_apply(zx.f, zx.m, 0.002, k);
        const Mat b = scattering_apply(scaled, zx.m, 0.002, k);
        CHECK(max_abs(b - std::pow(lambda, k + 1) * a) <= 1e-12 * std::max(max_abs(a), 1e-12));
    }
}

TEST_CASE("second-order ZX element")
{
    auto zx = test::build(test::table1(8));
    const Mat t1 = scattering_apply(zx.f, zx.m, 0.0, 1);
    CHECK(std::abs(t1(0, 1)) / MHz == doctest::Approx(21.4286).epsilon(1e-5));
    // Closed form at leading order: 2 eta omega_2 b^2 / (omega_1^2 - omega_2^2)
    const double b = 0.25, eta = 1.2;
    CHECK(std::abs(t1(0, 1)) == doctest::Approx(2 * eta * 9 * b * b / (144.0 - 81.0)).epsilon(1e-12));
}

TEST_CASE("zero perturbation gives zero effective Hamiltonian")
{
    auto zx = test::build(test::table1(4));
    const auto off = scale_perturbation(zx.f, 0.0);
    const auto sol = solve_self_consistent(off, zx.m, 4);
    CHECK(sol.eps.cwiseAbs().maxCoeff() == 0.0);
    CHECK(max_abs(sol.kappa) == 0.0);
    const auto h = effective_hamiltonian(off, zx.m, 4);
    CHECK(h.couplings.empty());
    for (double d : h.delta_omega)
        CHECK(d == 0.0);
    for (auto& m : effective_series(off, zx.m, 4))
        CHECK(max_abs(m) == 0.0);
}

TEST_CASE("first-order kappa vanishes when the slow block of V does")
{
    auto sq = test::build(test::squeezing(6));
    const auto sol = solve_self_consistent(sq.f, sq.m, 4);
    CHECK(sol.kappa.col(1).cwiseAbs().maxCoeff() < 1e-15);
    // Row sums of kappa give the quasienergies
    for (Index a = 0; a < 4; ++a)
        CHECK(std::abs(sol.kappa.row(a).sum().real() - sol.eps(a)) < 1e-12);
}

TEST_CASE("all-orders self-consistent solution")
{
    for (auto setup : {test::table1(8), test::squeezing(8)}) {
        auto b = test::build(setup);
        const auto sol = solve_self_consistent_exact(b.f, b.m);
        CHECK(sol.residual <= 1e-9 * std::max(sol.eps.cwiseAbs().maxCoeff(), MHz));
        Eigen::SelfAdjointEigenSolver<Mat> es(sol.h);
        for (Index a = 0; a < 4; ++a) {
            double best = 1e9;
            for (Index j = 0; j < 4; ++j)
                best = std::min(best, std::abs(es.eigenvalues()(j) - sol.eps(a)));
            CHECK(best < 1e-9);
        }
    }
}

TEST_CASE("spin Hamiltonian reconstructs the effective matrix")
{
    auto b = test::build(test::table2(6));
    const auto h = effective_hamiltonian(b.f, b.m, 4);
    PauliDecomposition all = h.couplings;
    all["II"] = h.offset;
    all["ZI"] = h.delta_omega[0];
    all["IZ"] = h.delta_omega[1];
    CHECK(max_abs(pauli_reconstruct(all, QubitRegister(2)) - h.matrix) < 1e-9);
    const auto sol = solve_self_consistent(b.f, b.m, 4);
    std::vector<double> e(sol.eps.data(), sol.eps.data() + 4);
    std::sort(e.begin(), e.end());
    const auto q = sorted_eps(h);
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(q[i] - e[i]) < 1e-9);
}

TEST_CASE("block structure at the ZX point")
{
    auto b = test::build(test::table1(8));
    for (auto& m : effective_series(b.f, b.m, 6))
        CHECK(max_entry(m, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}) < 1e-12);
    const auto dense = effective_hamiltonian_exact(b.f, b.m, ExactRoute::dense);
    CHECK(max_entry(dense.matrix, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}) < 1e-12);
}

TEST_CASE("block structure at longitudinal working points")
{
    for (auto setup : {test::squeezing(8), test::hopping(8), test::table2(6)}) {
        auto b = test::build(setup);
        for (auto& m : effective_series(b.f, b.m, 6))
            CHECK(max_entry(m, {{0, 1}, {0, 2}, {3, 1}, {3, 2}}) < 1e-12);
    }
}

TEST_CASE("transverse bimodal drive keeps the effective matrix diagonal")
{
    auto b = test::build(test::bimodal_zz(6));
    for (auto& m : effective_series(b.f, b.m, 6))
        CHECK(max_abs(m - Mat(m.diagonal().asDiagonal())) < 1e-12);
}

TEST_CASE("even-k transverse drive is diagonal")
{
    auto b = test::build(single_mode_scheme(MultiphotonKind::zx, 2, 'x', 11, 9, 0.3, 0.3, 12));
    const auto h = effective_hamiltonian(b.f, b.m, 6);
    CHECK(max_abs(h.matrix - Mat(h.matrix.diagonal().asDiagonal())) < 1e-7);
    const auto d = effective_hamiltonian_exact(b.f, b.m, ExactRoute::dense);
    CHECK(max_abs(d.matrix - Mat(d.matrix.diagonal().asDiagonal())) < 1e-7);
}

TEST_CASE("order 4 to 6 difference scales with at least the fifth power")
{
    auto b = test::build(test::table1(8));
    CHECK(order_scaling_slope(b.f, b.m, 4, 6, {0.5, 0.25, 0.125}) > 4.5);
}

TEST_CASE("ZX quasienergies are antisymmetric about the offset")
{
    auto b = test::build(test::table1(8));
    for (auto h : {effective_hamiltonian(b.f, b.m, 6),
                   effective_hamiltonian_exact(b.f, b.m, ExactRoute::dense)}) {
        auto e = sorted_eps(h);
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs((e[i] - h.offset) + (e[3 - i] - h.offset)) < 1e-9);
    }
}

TEST_CASE("sixth order agrees with the exact route")
{
    struct Case {
        SchemeSetup s;
        ExactRoute route;
    };
    std::vector<Case> cases = {{test::table1(8), ExactRoute::dense},
                               {test::squeezing(8), ExactRoute::dense},
                               {test::hopping(8), ExactRoute::self_consistent},
                               {test::table2(6), ExactRoute::dense},
                               {test::table2(6, BimodalPhase::quadrature), ExactRoute::dense},
                               {test::bimodal_zz(6), ExactRoute::dense},
                               {test::table3(12), ExactRoute::dense}};
    for (auto& c : cases) {
        auto b = test::build(c.s);
        const auto p6 = sorted_eps(effective_hamiltonian(b.f, b.m, 6));
        const auto ex = sorted_eps(effective_hamiltonian_exact(b.f, b.m, c.route));
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(p6[i] - ex[i]) <= 0.01 * MHz);
    }
}

TEST_CASE("truncation N -> N+2 moves coefficients by less than 1%")
{
    auto a = test::build(test::table1(8));
    auto b = test::build(test::table1(10));
    const auto ha = effective_hamiltonian(a.f, a.m, 6), hb = effective_hamiltonian(b.f, b.m, 6);
    for (const char* l : {"ZI", "IZ", "ZX"})
        CHECK(std::abs(ha.coefficient(l) - hb.coefficient(l)) < 0.01 * std::abs(ha.coefficient(l)));
}

TEST_CASE("usage errors")
{
    auto b = test::build(test::table1(4));
    CHECK_THROWS_AS(scattering_apply(b.f, b.m, 0.0, -1), UsageError);
    CHECK_THROWS_AS(solve_self_consistent(b.f, b.m, 1), UsageError);
    CHECK_THROWS_AS(order_scaling_slope(b.f, b.m, 4, 6, {0.5}), UsageError);
}

}
