#include "floq/catalog.hpp"

#include <cmath>
#include <numbers>

namespace floq {

namespace {

void require_nonzero(double den, const char* what)
{
    if (std::abs(den) < 1e-12)
        throw UsageError(std::string("degenerate denominator: ") + what + " vanishes");
}

Series quad_quart(double c2, double c4)
{
    Series s;
    s.set(2, c2);
    s.set(4, c4);
    return s;
}

}  // namespace

double Series::through(int p) const
{
    double s = 0.0;
    for (int i = 0; i <= p && i < int(terms.size()); ++i)
        s += terms[i];
    return s;
}

void Series::set(int p, double v)
{
    if (int(terms.size()) <= p)
        terms.resize(p + 1, 0.0);
    terms[p] = v;
}

const Series& InteractionParams::coupling(const std::string& name) const
{
    auto it = couplings.find(name);
    if (it == couplings.end())
        throw UsageError("scheme " + scheme + " has no coupling " + name);
    return it->second;
}

InteractionParams zx_params(double w1, double w2, double b, double eta, double theta)
{
    const double d = w1 * w1 - w2 * w2;
    require_nonzero(d, "omega_1^2 - omega_2^2");
    const double e2 = 2.0 + eta * eta;
    const double b2 = b * b, b4 = b2 * b2, d3 = d * d * d;
    InteractionParams p;
    p.scheme = "zx";
    p.theta = theta;
    p.delta_omega1 = quad_quart(w1 * e2 * b2 / d,
                                -w1 * ((e2 * e2 + 2.0) * w1 * w1 + (3.0 * e2 * e2 + 10.0) * w2 * w2)
                                    * b4 / d3);
    // The printed quartic term carries one extra factor omega_2 and is not
    // dimensionless; it is evaluated without it.
    p.delta_omega2 =
        quad_quart(-w2 * eta * eta * b2 / d, w2 * eta * eta * e2 * (3.0 * w1 * w1 + w2 * w2) * b4 / d3);
    p.flags.push_back("dimension_fix: delta_omega2 quartic term taken without the printed extra omega_2");
    p.couplings["J_zx"] = quad_quart(2.0 * eta * w2 * b2 / d,
                                     -2.0 * eta * e2 * (3.0 * w1 * w1 + w2 * w2) * w2 * b4 / d3);
    return p;
}

InteractionParams squeezing_params(double w1, double w2, double b, double eta, double theta)
{
    const double d = w1 * w1 - w2 * w2;
    require_nonzero(d, "omega_1^2 - omega_2^2");
    const double s = w1 + w2;
    const double e2 = eta * eta;
    const double b2 = b * b, b4 = b2 * b2, d3 = d * d * d;
    InteractionParams p;
    p.scheme = "squeezing";
    p.theta = theta;
    p.delta_omega1 = quad_quart(
        -b2 * e2 * w1 / d,
        -b4 * e2
            * ((2.0 + e2) * std::pow(w1, 4) - 4.0 * std::pow(w1, 3) * w2
               + (1.0 + 3.0 * e2) * w1 * w1 * w2 * w2 + std::pow(w2, 4))
            / (w1 * d3));
    p.delta_omega2 = quad_quart(
        -b2 * e2 * w2 / d,
        b4 * e2 * w2
            * ((2.0 + 3.0 * e2) * std::pow(w1, 3) - 5.0 * w1 * w1 * w2
               + (2.0 + e2) * w1 * w2 * w2 + std::pow(w2, 3))
            / (w1 * d3));
    p.couplings["J_s"] = quad_quart(2.0 * b2 * eta / s, -2.0 * b4 * eta * (2.0 + e2) / (s * s * s));
    return p;
}

InteractionParams hopping_params(double w1, double w2, double b, double eta, double theta)
{
    const double m = w1 - w2;
    require_nonzero(m, "omega_1 - omega_2");
    const double d = w1 * w1 - w2 * w2;
    const double e2 = eta * eta;
    const double b2 = b * b, b4 = b2 * b2, d3 = d * d * d;
    InteractionParams p;
    p.scheme = "hopping";
    p.theta = theta;
    p.delta_omega1 = quad_quart(
        b2 * e2 * w1 / d,
        -b4 * e2
            * ((2.0 + e2) * std::pow(w1, 4) + 4.0 * std::pow(w1, 3) * w2
               + (1.0 + 3.0 * e2) * w1 * w1 * w2 * w2 + std::pow(w2, 4))
            / (w1 * d3));
    p.delta_omega2 = quad_quart(
        -b2 * e2 * w2 / d,
        b4 * e2 * w2
            * ((2.0 + 3.0 * e2) * std::pow(w1, 3) + 5.0 * w1 * w1 * w2
               + (2.0 + e2) * w1 * w2 * w2 - std::pow(w2, 3))
            / (w1 * d3));
    p.couplings["J_h"] =
        quad_quart(-2.0 * b2 * eta / m, -2.0 * b4 * eta * (2.0 + e2) / (m * m * m));
    return p;
}

InteractionParams bimodal_xx_yy_params(double w1, double w2, double b, double eta11,
                                       double eta21, double eta12, double eta22,
                                       BimodalPhase phase)
{
    const double dm = w1 - w2, dp = w1 + w2;
    require_nonzero(dm, "omega_1 - omega_2");
    require_nonzero(dp, "omega_1 + omega_2");
    const double b2 = b * b;
    InteractionParams p;
    p.scheme = phase == BimodalPhase::aligned ? "xx_yy" : "xy_yx";
    p.delta_omega1.set(2, b2 * w1 / (dm * dp));
    p.delta_omega2.set(2, -b2 * w2 / (dm * dp));
    Series a, c;
    a.set(2, b2 * ((-eta12 + eta22) / dm + (eta11 + eta21) / dp));
    c.set(2, b2 * ((eta12 - eta22) / dm + (eta11 + eta21) / dp));
    if (phase == BimodalPhase::aligned) {
        p.couplings["J_xx"] = a;
        p.couplings["J_yy"] = c;
    } else {
        p.couplings["J_xy"] = a;
        p.couplings["J_yx"] = c;
    }
    p.flags.push_back("label_caveat: the tabulated xx example matches the J_yy expression");
    return p;
}

InteractionParams bimodal_zz_params(double w1, double w2, double b, double eta11, double eta12,
                                    double eta21, double eta22)
{
    require_nonzero(w1 * w1 - w2 * w2, "omega_1^2 - omega_2^2");
    require_nonzero(2.0 * w1 - w2, "2 omega_1 - omega_2");
    require_nonzero(2.0 * w1 + w2, "2 omega_1 + omega_2");
    require_nonzero(w1 - 2.0 * w2, "omega_1 - 2 omega_2");
    require_nonzero(w1 + 2.0 * w2, "omega_1 + 2 omega_2");
    const double b2 = b * b, b3 = b2 * b;
    const double d = w1 * w1 - w2 * w2;
    InteractionParams p;
    p.scheme = "zz_bimodal";
    p.delta_omega1.set(2, -b2 * (eta11 * eta11 - eta12 * eta12) / w2 + b2 * w1 / d
                              + b2
                                    * (eta11 * eta11 * (2.0 * w1 - w2)
                                       + eta12 * eta12 * (2.0 * w1 + w2))
                                    / (4.0 * w1 * w1 - w2 * w2));
    p.delta_omega2.set(2, -b2 * (eta21 * eta21 - eta22 * eta22) / w1 - b2 * w2 / d
                              + b2
                                    * (eta21 * eta21 * (w1 - 2.0 * w2)
                                       - eta22 * eta22 * (w1 + 2.0 * w2))
                                    / (w1 * w1 - 4.0 * w2 * w2));
    const double pa = eta11 * eta21, pb = eta12 * eta22;
    Series j;
    j.set(3, 4.0 * b3 * (pa - pb) / (w1 * w2) + 4.0 * b3 * pb / (3.0 * w1 * (2.0 * w1 - w2))
                 + 4.0 * b3 * pa / (3.0 * w1 * (2.0 * w1 + w2))
                 - 8.0 * b3 * pb / (3.0 * w1 * (w1 - 2.0 * w2))
                 - 8.0 * b3 * pa / (3.0 * w1 * (w1 + 2.0 * w2)));
    p.couplings["J_zz"] = j;
    return p;
}

namespace {

struct CouplerEtas {
    double b, e1, e2, ez;
};

CouplerEtas coupler_etas(const CouplerInputs& in)
{
    if (std::abs(in.phi_dc - std::numbers::pi) > 1e-9)
        throw UsageError("coupler formulas hold at phi_dc = pi only; use the static coupler "
                         "Hamiltonian elsewhere");
    if (in.g_x == 0.0)
        throw UsageError("coupler formulas need g_x != 0");
    require_nonzero(in.w1 - in.w2, "omega_1 - omega_2");
    return {in.g_x * in.phi_ac, (in.g_1 - in.g_2) / in.g_x, (in.g_1 + in.g_2) / in.g_x,
            in.g_z / in.g_x};
}

}  // namespace

InteractionParams coupler_params(const CouplerInputs& in)
{
    const auto [b, e1, e2, ez] = coupler_etas(in);
    const double w1 = in.w1, w2 = in.w2;
    const double dm = w1 - w2, dp = w1 + w2;
    const double b2 = b * b, b3 = b2 * b;
    InteractionParams p;
    p.scheme = "coupler_xx_yy";
    p.theta = 0.0;
    p.delta_omega1.set(2, b2 / 4.0 * (2.0 / w1 + 1.0 / dm + 1.0 / dp));
    p.delta_omega1.set(3, -2.0 * b3 * (e1 - e2) * ez * (1.0 / dm + 1.0 / dp));
    p.delta_omega2.set(2, b2 / 4.0 * (2.0 / w2 - 1.0 / dm + 1.0 / dp));
    p.delta_omega2.set(3, -2.0 * b3 * (e1 + e2) * ez * (1.0 / dm + 1.0 / dp));
    p.flags.push_back("not_homogeneous: printed cubic shift terms scale as frequency squared");
    Series jxx, jyy;
    jxx.set(1, b);
    // second term evaluated as printed (2 eta_z, not squared)
    jxx.set(3, b3 * ((2.0 * ez * ez - e1 * e1) / (dm * dm) + (2.0 * ez - e2 * e2) / (dp * dp)));
    jyy.set(3, b3 * (e1 * e1 / (dm * dm) + 1.0 / (2.0 * w1 * w2) - e2 * e2 / (dm * dm)));
    if (std::abs(in.theta) < 1e-12) {
        p.couplings["J_xx"] = jxx;
        p.couplings["J_yy"] = jyy;
    } else if (std::abs(std::abs(in.theta) - std::numbers::pi) < 1e-12) {
        p.couplings["J_xx"] = jyy;
        p.couplings["J_yy"] = jxx;
        p.flags.push_back("theta=pi: xx and yy exchanged, shifts taken from theta=0");
    } else {
        throw UsageError("coupler formulas are tabulated for theta = 0 or pi");
    }
    return p;
}

PauliDecomposition rwa_coupler(double g_x, double phi_ac1, double phi_ac2, double theta)
{
    const QubitRegister reg(2);
    const Mat pp = pauli_matrix('+', 0, reg) * pauli_matrix('+', 1, reg);
    const Mat pm = pauli_matrix('+', 0, reg) * pauli_matrix('-', 1, reg);
    Mat h = g_x * std::exp(cplx(0.0, theta)) * phi_ac1 * pp + g_x * phi_ac2 * pm;
    h += Mat(h.adjoint());
    PauliDecomposition out;
    for (const auto& [k, v] : pauli_decompose(h, reg))
        if (std::abs(v) > 1e-15)
            out[k] = v;
    return out;
}

JyySuppression jyy_suppression(const CouplerInputs& in)
{
    const auto [b, e1, e2, ez] = coupler_etas(in);
    const double w1 = in.w1, w2 = in.w2;
    const double dm = w1 - w2, dp = w1 + w2;
    JyySuppression s;
    s.j_yy = b * b * b * (e1 * e1 / (dm * dm) + 1.0 / (2.0 * w1 * w2) - e2 * e2 / (dm * dm));
    // printed "eta_2^z" read as eta_z^2
    s.d_y = in.g_x / 2.0
            * (1.0 + 3.0 * b * b / (2.0 * w1 * w2) + 6.0 * b * b * ez * ez / (dm * dm)
               + 6.0 * b * b * (ez * ez - e2 * e2) / (dp * dp));
    s.delta_phi = -s.j_yy / s.d_y;
    s.approx_delta_phi = 2.0 * s.j_yy / in.g_x;
    return s;
}

InteractionParams multiphoton_params(int k, MultiphotonKind kind, char axis, double w1, double w2,
                                     double b, double eta)
{
    if (k != 2 && k != 3)
        throw UsageError("multiphoton formulas exist for k = 2 and k = 3 only");
    InteractionParams p;
    const bool transverse = axis == 'x' || axis == 'y';
    if (kind == MultiphotonKind::zx) {
        if (!transverse)
            throw UsageError("zx multiphoton scheme needs a transverse drive");
        p.scheme = "multiphoton_zx_k" + std::to_string(k);
        Series j;
        if (k % 2 == 0) {
            j.set(k + 1, 0.0);
            p.flags.push_back("parity_forbidden: even photon number restores parity");
        } else {
            const double d = w1 * w1 - w2 * w2;
            require_nonzero(d, "omega_1^2 - omega_2^2");
            require_nonzero(w1 * w1 - w2 * w2 / 9.0, "omega_1^2 - omega_2^2/9");
            j.set(4, 4.0 * eta * std::pow(b, 4) * w2 / (d * (w1 * w1 - w2 * w2 / 9.0)));
        }
        p.couplings["J_zx"] = j;
        return p;
    }
    if (k != 2)
        throw UsageError("squeezing and hopping multiphoton formulas exist for k = 2 only");
    const double den = kind == MultiphotonKind::squeezing ? w1 + w2 : w1 - w2;
    require_nonzero(den, kind == MultiphotonKind::squeezing ? "omega_1 + omega_2"
                                                            : "omega_1 - omega_2");
    Series j;
    j.set(3, -8.0 * eta * b * b * b / (den * den));
    const std::string name = kind == MultiphotonKind::squeezing ? "J_s" : "J_h";
    p.scheme = (kind == MultiphotonKind::squeezing ? "multiphoton_squeezing_k2"
                                                    : "multiphoton_hopping_k2");
    p.couplings[name] = j;
    p.flags.push_back("printed_formula_inconsistent: the two-photon table value is not "
                      "reproduced by this closed form");
    return p;
}

std::vector<double> frame_from_states(const std::vector<double>& omega,
                                      const std::vector<double>& modes,
                                      const std::vector<CompositeIndex>& states)
{
    const int n = int(omega.size());
    auto eps0 = [&](const CompositeIndex& c) {
        const auto occ = occupations(c.alpha, n);
        double e = 0.0;
        for (int j = 0; j < n; ++j)
            e += omega[j] * occ[j];
        for (size_t i = 0; i < modes.size(); ++i)
            e += c.m[i] * modes[i];
        return e;
    };
    auto find = [&](Index alpha) -> const CompositeIndex& {
        for (const auto& c : states)
            if (c.alpha == alpha)
                return c;
        throw UsageError("slow state list misses qubit basis state " + std::to_string(alpha + 1));
    };
    std::vector<int> none(n, 0);
    const double e0 = eps0(find(basis_index(none)));
    std::vector<double> f(n);
    for (int j = 0; j < n; ++j) {
        std::vector<int> occ(n, 0);
        occ[j] = 1;
        f[j] = eps0(find(basis_index(occ))) - e0;
    }
    return f;
}

namespace {

CompositeIndex ci(Index a, Key m) { return {a, std::move(m)}; }

}  // namespace

SchemeSetup single_mode_scheme(MultiphotonKind kind, int k, char axis, double w1, double w2,
                               double g_c, double b, int truncation, double theta)
{
    if (k < 1)
        throw UsageError("photon number k must be at least 1");
    SchemeSetup s;
    double wd = 0.0;
    // basis: 0 = |11>, 1 = |10>, 2 = |01>, 3 = |00>
    switch (kind) {
    case MultiphotonKind::zx:
        s.scheme = "zx";
        wd = w2 / k;
        s.slow_states = {ci(0, {-k}), ci(1, {0}), ci(2, {-k}), ci(3, {0})};
        break;
    case MultiphotonKind::squeezing:
        s.scheme = "squeezing";
        wd = (w1 + w2) / k;
        s.slow_states = {ci(0, {-k}), ci(1, {-k}), ci(2, {0}), ci(3, {0})};
        break;
    case MultiphotonKind::hopping:
        s.scheme = "hopping";
        wd = (w1 - w2) / k;
        s.slow_states = {ci(0, {-k}), ci(1, {-k}), ci(2, {0}), ci(3, {0})};
        break;
    }
    if (k > 1)
        s.scheme += "_k" + std::to_string(k);
    if (!(wd > 0.0))
        throw UsageError("working point drive frequency must be positive");
    s.circuit.qubits = {{w1, std::nullopt}, {w2, std::nullopt}};
    if (g_c != 0.0)
        s.circuit.couplings.push_back({0, 1, CapacitiveCoupling{g_c}});
    DriveSpec d;
    d.qubit = 0;
    d.axis = axis;
    d.tones.push_back({2.0 * b, wd, theta, Key{1}});
    s.circuit.drives.push_back(d);
    s.modes = {{wd, truncation}};
    s.frame = frame_from_states({w1, w2}, {wd}, s.slow_states);
    return s;
}

namespace {

SchemeSetup bimodal_base(double w1, double w2, double b, int truncation)
{
    SchemeSetup s;
    s.circuit.qubits = {{w1, std::nullopt}, {w2, std::nullopt}};
    s.circuit.couplings.push_back({0, 1, CapacitiveCoupling{b}});
    s.modes = {{w1, truncation}, {w2, truncation}};
    s.slow_states = {ci(0, {-1, -1}), ci(1, {-1, 0}), ci(2, {0, -1}), ci(3, {0, 0})};
    s.frame = frame_from_states({w1, w2}, {w1, w2}, s.slow_states);
    return s;
}

void add_tone(DriveSpec& d, double component, Key key, double theta)
{
    if (component != 0.0)
        d.tones.push_back({2.0 * component, 0.0, theta, std::move(key)});
}

}  // namespace

SchemeSetup bimodal_xx_yy_scheme(double w1, double w2, double b, double eta11, double eta21,
                                 double eta12, double eta22, int truncation, BimodalPhase phase)
{
    SchemeSetup s = bimodal_base(w1, w2, b, truncation);
    s.scheme = phase == BimodalPhase::aligned ? "xx_yy" : "xy_yx";
    const double th = phase == BimodalPhase::aligned ? 0.0 : std::numbers::pi / 2.0;
    DriveSpec d1{0, 'z', {}}, d2{1, 'z', {}};
    add_tone(d1, eta11 * b, {1, 1}, th);
    add_tone(d1, eta12 * b, {1, -1}, th);
    add_tone(d2, eta21 * b, {1, 1}, th);
    add_tone(d2, eta22 * b, {1, -1}, th);
    for (auto* d : {&d1, &d2})
        if (!d->tones.empty())
            s.circuit.drives.push_back(*d);
    return s;
}

SchemeSetup bimodal_zz_scheme(double w1, double w2, double b, double eta11, double eta12,
                              double eta21, double eta22, int truncation)
{
    SchemeSetup s = bimodal_base(w1, w2, b, truncation);
    s.scheme = "zz_bimodal";
    DriveSpec d1{0, 'x', {}}, d2{1, 'x', {}};
    add_tone(d1, eta11 * b, {1, 1}, 0.0);
    add_tone(d1, eta12 * b, {1, -1}, 0.0);
    add_tone(d2, eta21 * b, {1, 1}, 0.0);
    add_tone(d2, eta22 * b, {1, -1}, 0.0);
    for (auto* d : {&d1, &d2})
        if (!d->tones.empty())
            s.circuit.drives.push_back(*d);
    return s;
}

}  // namespace floq
