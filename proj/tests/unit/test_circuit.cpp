#include "doctest.h"

#include <cmath>

#include "common.hpp"

using namespace floq;

namespace {

CircuitSpec two_qubits(double g_c)
{
    CircuitSpec s;
    s.qubits = {{12.0, {}}, {9.0, {}}};
    if (g_c != 0.0)
        s.couplings.push_back({0, 1, CapacitiveCoupling{g_c}});
    return s;
}

}  // namespace

TEST_SUITE("circuit") {

TEST_CASE("transmon at the regime boundary")
{
    const auto p = quantize_transmon(2.0, 1.0);
    CHECK(p.phi_bar == doctest::Approx(std::pow(0.25, 0.25)).epsilon(1e-15));
    CHECK(p.phi_bar == doctest::Approx(0.70710678118654752).epsilon(1e-15));
    CHECK(p.warnings.size() == 1);
}

TEST_CASE("transmon frequency against the closed form U = -E_C/8")
{
    // phi_bar^4 = E_C/(2E_J), so U = -E_C/8 and omega = sqrt(2 E_J E_C) - E_C/4.
    const long double ej = 12.5L, ec = 0.25L;
    const long double u = -ec / 8.0L;
    const long double w = std::sqrt(2.0L * ej * ec) + 2.0L * u;
    const auto p = quantize_transmon(12.5, 0.25);
    CHECK(std::abs(p.U - double(u)) < 1e-15);
    CHECK(std::abs(p.omega - double(w)) < 1e-14);
    CHECK(p.omega == doctest::Approx(2.4375));
    CHECK(p.warnings.empty());
}

TEST_CASE("transmon limit E_C -> 0")
{
    double prev = 1.0;
    for (double ec : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const auto p = quantize_transmon(10.0, ec);
        CHECK(std::abs(p.U) < std::abs(prev));
        prev = p.U;
        CHECK(p.omega == doctest::Approx(std::sqrt(20.0 * ec)).epsilon(ec));
    }
    CHECK_THROWS_AS(quantize_transmon(0.0, 1.0), UsageError);
    CHECK_THROWS_AS(quantize_transmon(1.0, -1.0), UsageError);
}

TEST_CASE("static Hamiltonian without coupling")
{
    const Mat h = build_static_hamiltonian(two_qubits(0.0));
    Mat expect = Mat::Zero(4, 4);
    expect.diagonal() << 21, 12, 9, 0;
    CHECK(max_abs(h - expect) == 0.0);
}

TEST_CASE("capacitive coupling appears as YY")
{
    const auto d = pauli_decompose(build_static_hamiltonian(two_qubits(0.2)), QubitRegister(2));
    CHECK(std::abs(d.at("YY") - 0.2) < 1e-15);
    CHECK(std::abs(d.at("XX")) < 1e-15);
}

TEST_CASE("SQUID at phi_dc = pi contributes nothing statically")
{
    CircuitSpec s = two_qubits(0.0);
    SquidCoupler c;
    c.g_x = 0.3;
    c.g_z = 0.01;
    c.g_1 = c.g_2 = 0.15;
    c.phi_dc = M_PI;
    s.couplings.push_back({0, 1, c});
    CHECK(max_abs(build_static_hamiltonian(s) - build_static_hamiltonian(two_qubits(0.0))) == 0.0);
    c.phi_dc = 0.0;
    s.couplings[0].kind = c;
    const auto d = pauli_decompose(build_static_hamiltonian(s), QubitRegister(2));
    CHECK(std::abs(d.at("XX") - 0.3) < 1e-15);
    CHECK(std::abs(d.at("ZZ") - 0.01) < 1e-15);
}

TEST_CASE("single tone Fourier component")
{
    CircuitSpec s = two_qubits(0.3);
    s.drives.push_back({0, 'x', {Tone{0.25, 9.0, 0.0, {}}}});
    const auto fh = build_fourier_components(s, {9.0});
    CHECK(fh.components.size() == 3);
    const Mat x1 = pauli_matrix('X', 0, QubitRegister(2));
    CHECK(max_abs(fh.components.at({1}) - 0.125 * x1) < 1e-15);
    CHECK(max_abs(fh.components.at({-1}) - fh.components.at({1}).adjoint()) == 0.0);
}

TEST_CASE("no drives gives only the static component")
{
    CircuitSpec s = two_qubits(0.2);
    s.drives.push_back({0, 'z', {Tone{0.0, 9.0, 0.0, {}}}});
    const auto fh = build_fourier_components(s, {9.0});
    CHECK(fh.components.size() == 1);
    CHECK(max_abs(fh.static_part() - build_static_hamiltonian(s)) == 0.0);
}

TEST_CASE("coupler flux tone")
{
    CircuitSpec s = two_qubits(0.0);
    SquidCoupler c;
    c.g_x = 0.3;
    c.phi_dc = M_PI;
    c.tones.push_back(Tone{0.1, 0.0, 0.0, Key{1, 1}});
    s.couplings.push_back({0, 1, c});
    const auto fh = build_fourier_components(s, {3.5, 8.5});
    const auto d = pauli_decompose(fh.components.at({1, 1}), QubitRegister(2));
    CHECK(std::abs(d.at("XX") - 0.03) < 1e-15);
    CHECK(fh.components.count({-1, -1}) == 1);
}

TEST_CASE("time-domain Hamiltonian is Hermitian")
{
    auto setup = test::table2();
    const auto fh = build_fourier_components(setup.circuit, test::freqs(setup.modes));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (int i = 0; i < 50; ++i) {
        const Mat h = evaluate_hamiltonian(fh, test::freqs(setup.modes), u(rng));
        CHECK(max_abs(h - h.adjoint()) < 1e-10);
    }
}

TEST_CASE("parity commutes with every term except transverse drives")
{
    const QubitRegister reg(2);
    const Mat parity = pauli_string("ZZ");
    auto commutes = [&](const Mat& a) { return max_abs(parity * a - a * parity) < 1e-14; };

    CircuitSpec s = two_qubits(0.3);
    CHECK(commutes(build_static_hamiltonian(s)));
    SquidCoupler c;
    c.g_x = 0.3;
    c.g_z = 0.01;
    c.g_1 = c.g_2 = 0.15;
    c.phi_dc = 0.0;
    CircuitSpec sq = two_qubits(0.0);
    sq.couplings.push_back({0, 1, c});
    CHECK(commutes(build_static_hamiltonian(sq)));

    for (char axis : {'x', 'y', 'z'}) {
        CircuitSpec d = two_qubits(0.0);
        d.drives.push_back({1, axis, {Tone{0.2, 9.0, 0.0, {}}}});
        const auto fh = build_fourier_components(d, {9.0});
        CHECK(commutes(fh.components.at({1})) == (axis == 'z'));
    }
}

TEST_CASE("tone resolution and commensurate modes")
{
    CHECK(resolve_tone(9.0, {9.0}, "t") == Key{1});
    CHECK(resolve_tone(3.5, {12.0, 8.5}, "t") == Key{1, -1});
    CHECK(resolve_tone(20.5, {12.0, 8.5}, "t") == Key{1, 1});
    try {
        resolve_tone(7.3, {9.0}, "drives[0].tones[0]");
        FAIL("expected an error");
    } catch (const UsageError& e) {
        CHECK(std::string(e.what()).find("drives[0].tones[0]") != std::string::npos);
    }
    CHECK_THROWS_AS(check_incommensurate({3.0, 6.0}), UsageError);
    CHECK_THROWS_AS(check_incommensurate({3.0, 4.0}), UsageError);
    CHECK_NOTHROW(check_incommensurate({12.0, 8.5}));
}

TEST_CASE("circuit validation")
{
    CircuitSpec s = two_qubits(0.0);
    s.couplings.push_back({0, 0, CapacitiveCoupling{0.1}});
    CHECK_THROWS_AS(s.validate(), UsageError);
    s = two_qubits(0.1);
    s.couplings.push_back({1, 0, StaticCoupling{0.1, 0, 0}});
    CHECK_THROWS_AS(s.validate(), UsageError);
    s = two_qubits(0.0);
    s.drives.push_back({2, 'x', {}});
    CHECK_THROWS_AS(s.validate(), UsageError);
    s = two_qubits(0.0);
    s.drives.push_back({0, 'w', {}});
    CHECK_THROWS_AS(s.validate(), UsageError);
}

}
