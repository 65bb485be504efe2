#include "floq/circuit.hpp"

#include <cmath>
#include <numbers>

namespace floq {

TransmonParams quantize_transmon(double E_J, double E_C)
{
    if (!(E_J > 0.0) || !(E_C > 0.0))
        throw UsageError("quantize_transmon: E_J and E_C must be positive");
    TransmonParams p;
    p.E_J = E_J;
    p.E_C = E_C;
    p.phi_bar = std::pow(E_C / (2.0 * E_J), 0.25);
    const double pb4 = p.phi_bar * p.phi_bar * p.phi_bar * p.phi_bar;
    p.U = -E_J * pb4 / 4.0;
    p.omega = std::sqrt(2.0 * E_J * E_C) + 2.0 * p.U;
    if (E_J / E_C < 20.0)
        p.warnings.push_back("E_J/E_C = " + std::to_string(E_J / E_C)
                             + " is below 20; transmon regime not reached");
    return p;
}

std::vector<std::string> CircuitSpec::validate() const
{
    std::vector<std::string> warnings;
    if (qubits.empty())
        throw UsageError("circuit has no qubits");
    const int n = int(qubits.size());
    std::vector<std::pair<int, int>> seen;
    for (const auto& c : couplings) {
        if (c.i < 0 || c.j < 0 || c.i >= n || c.j >= n)
            throw UsageError("coupling references a qubit that does not exist");
        if (c.i == c.j)
            throw UsageError("coupling pair must reference distinct qubits");
        auto pr = std::minmax(c.i, c.j);
        for (auto& s : seen)
            if (s == std::pair<int, int>(pr.first, pr.second))
                throw UsageError("more than one coupler on pair (" + std::to_string(c.i + 1) + ","
                                 + std::to_string(c.j + 1) + ")");
        seen.emplace_back(pr.first, pr.second);
        if (auto* s = std::get_if<SquidCoupler>(&c.kind))
            for (const auto& t : s->tones)
                if (std::abs(t.amplitude) > 0.3)
                    warnings.push_back("SQUID tone phi_ac = " + std::to_string(t.amplitude)
                                       + " exceeds 0.3; flux linearization is poor");
    }
    for (const auto& d : drives) {
        if (d.qubit < 0 || d.qubit >= n)
            throw UsageError("drive targets qubit " + std::to_string(d.qubit + 1)
                             + " which does not exist");
        if (d.axis != 'x' && d.axis != 'y' && d.axis != 'z')
            throw UsageError(std::string("drive axis must be x, y or z, got '") + d.axis + "'");
        for (const auto& t : d.tones)
            if (!t.key && !(t.frequency > 0.0))
                throw UsageError("drive tone frequency must be positive");
    }
    for (const auto& q : qubits)
        if (q.transmon)
            for (const auto& w : q.transmon->warnings)
                warnings.push_back(w);
    return warnings;
}

int FourierHamiltonian::max_order(int mode) const
{
    int m = 0;
    for (const auto& [k, _] : components)
        m = std::max(m, std::abs(k[mode]));
    return m;
}

namespace {

Mat two_body(char a, char b, int i, int j, const QubitRegister& reg)
{
    return pauli_matrix(a, i, reg) * pauli_matrix(b, j, reg);
}

Mat squid_h1(const SquidCoupler& s, int i, int j, const QubitRegister& reg)
{
    return s.g_1 * pauli_matrix('n', i, reg) + s.g_2 * pauli_matrix('n', j, reg)
           + s.g_x * two_body('X', 'X', i, j, reg) + s.g_z * two_body('Z', 'Z', i, j, reg);
}

}  // namespace

Mat build_static_hamiltonian(const CircuitSpec& spec)
{
    spec.validate();
    const QubitRegister reg = spec.reg();
    Mat h = Mat::Zero(reg.dim(), reg.dim());
    for (int q = 0; q < reg.n_qubits; ++q)
        h += spec.qubits[q].omega * pauli_matrix('n', q, reg);
    for (const auto& c : spec.couplings) {
        if (auto* cc = std::get_if<CapacitiveCoupling>(&c.kind)) {
            h += cc->g_c * two_body('Y', 'Y', c.i, c.j, reg);
        } else if (auto* sc = std::get_if<StaticCoupling>(&c.kind)) {
            h += sc->g_xx * two_body('X', 'X', c.i, c.j, reg)
                 + sc->g_yy * two_body('Y', 'Y', c.i, c.j, reg)
                 + sc->g_zz * two_body('Z', 'Z', c.i, c.j, reg);
        } else {
            const auto& s = std::get<SquidCoupler>(c.kind);
            const double w = std::cos(s.phi_dc / 2.0);
            // cos(pi/2) is 6e-17 in floating point; keep the sweet spot exact
            if (std::abs(w) > 1e-14)
                h += w * squid_h1(s, c.i, c.j, reg);
            if (s.include_capacitive_yy)
                h += s.g_c * two_body('Y', 'Y', c.i, c.j, reg);
        }
    }
    return h;
}

void check_incommensurate(const std::vector<double>& modes)
{
    for (size_t a = 0; a < modes.size(); ++a) {
        if (!(modes[a] > 0.0))
            throw UsageError("mode frequency must be positive");
        for (size_t b = a + 1; b < modes.size(); ++b)
            for (int c1 = 1; c1 <= 4; ++c1)
                for (int c2 = -4; c2 <= 4; ++c2) {
                    if (c2 == 0)
                        continue;
                    const double s = c1 * modes[a] + c2 * modes[b];
                    const double scale = std::abs(c1 * modes[a]) + std::abs(c2 * modes[b]);
                    if (std::abs(s) <= 1e-9 * scale)
                        throw UsageError("modes " + std::to_string(a + 1) + " and "
                                         + std::to_string(b + 1) + " are commensurate ("
                                         + std::to_string(c1) + "*f" + std::to_string(a + 1)
                                         + " + " + std::to_string(c2) + "*f"
                                         + std::to_string(b + 1) + " = 0)");
                }
    }
}

Key resolve_tone(double frequency, const std::vector<double>& modes, const std::string& label)
{
    const int m = int(modes.size());
    if (m == 0)
        throw UsageError("tone " + label + ": no modes declared");
    Key best;
    int best_l1 = 1 << 30;
    bool tie = false;
    Key c(m, -4);
    double scale = 0.0;
    for (double f : modes)
        scale = std::max(scale, std::abs(f));
    while (true) {
        double s = 0.0;
        int l1 = 0;
        for (int i = 0; i < m; ++i) {
            s += c[i] * modes[i];
            l1 += std::abs(c[i]);
        }
        if (l1 > 0 && std::abs(s - frequency) <= 1e-9 * std::max(scale, std::abs(frequency))) {
            if (l1 < best_l1) {
                best = c;
                best_l1 = l1;
                tie = false;
            } else if (l1 == best_l1) {
                tie = true;
            }
        }
        int i = 0;
        while (i < m && c[i] == 4) {
            c[i] = -4;
            ++i;
        }
        if (i == m)
            break;
        ++c[i];
    }
    if (best.empty())
        throw UsageError("tone " + label + " at " + std::to_string(frequency)
                         + " GHz does not match any integer combination of the declared modes");
    if (tie)
        throw UsageError("tone " + label + " at " + std::to_string(frequency)
                         + " GHz matches several mode combinations");
    return best;
}

FourierHamiltonian build_fourier_components(const CircuitSpec& spec,
                                            const std::vector<double>& mode_frequencies)
{
    spec.validate();
    check_incommensurate(mode_frequencies);
    const QubitRegister reg = spec.reg();
    const Index d = reg.dim();
    FourierHamiltonian fh;
    fh.n_modes = int(mode_frequencies.size());
    fh.n_qubits = reg.n_qubits;
    fh.components[fh.zero_key()] = build_static_hamiltonian(spec);
    fh.bare = RVec::Zero(d);
    for (int q = 0; q < reg.n_qubits; ++q)
        fh.bare += spec.qubits[q].omega * pauli_matrix('n', q, reg).diagonal().real();

    auto add = [&](const Key& k, const Mat& a) {
        auto it = fh.components.find(k);
        if (it == fh.components.end())
            fh.components.emplace(k, a);
        else
            it->second += a;
    };
    auto key_of = [&](const Tone& t, const std::string& label) {
        Key k;
        if (t.key) {
            k = *t.key;
            if (int(k.size()) != fh.n_modes)
                throw UsageError("tone " + label + ": key arity " + std::to_string(k.size())
                                 + " does not match " + std::to_string(fh.n_modes) + " modes");
            if (t.frequency != 0.0) {
                double s = 0.0;
                for (int i = 0; i < fh.n_modes; ++i)
                    s += k[i] * mode_frequencies[i];
                if (std::abs(s - t.frequency) > 1e-9 * std::max(1.0, std::abs(s)))
                    throw UsageError("tone " + label + ": key and frequency disagree");
            }
        } else {
            k = resolve_tone(t.frequency, mode_frequencies, label);
        }
        bool zero = true;
        for (int v : k)
            zero = zero && v == 0;
        if (zero)
            throw UsageError("tone " + label + " resolves to the static component");
        return k;
    };
    auto neg = [](Key k) {
        for (int& v : k)
            v = -v;
        return k;
    };

    for (size_t di = 0; di < spec.drives.size(); ++di) {
        const auto& dr = spec.drives[di];
        const Mat s = pauli_matrix(char(std::toupper(dr.axis)), dr.qubit, reg);
        for (size_t ti = 0; ti < dr.tones.size(); ++ti) {
            const auto& t = dr.tones[ti];
            if (t.amplitude == 0.0)
                continue;
            const std::string label =
                "drives[" + std::to_string(di) + "].tones[" + std::to_string(ti) + "]";
            const Key k = key_of(t, label);
            const Mat c = (t.amplitude / 2.0) * std::exp(cplx(0.0, t.theta)) * s;
            add(k, c);
            add(neg(k), c.adjoint());
        }
    }
    for (size_t ci = 0; ci < spec.couplings.size(); ++ci) {
        const auto& cp = spec.couplings[ci];
        const auto* s = std::get_if<SquidCoupler>(&cp.kind);
        if (!s)
            continue;
        const Mat h1 = squid_h1(*s, cp.i, cp.j, reg);
        const double w = std::sin(s->phi_dc / 2.0);
        for (size_t ti = 0; ti < s->tones.size(); ++ti) {
            const auto& t = s->tones[ti];
            if (t.amplitude == 0.0 || w == 0.0)
                continue;
            const std::string label =
                "couplings[" + std::to_string(ci) + "].tones[" + std::to_string(ti) + "]";
            const Key k = key_of(t, label);
            const Mat c = t.amplitude * std::exp(cplx(0.0, t.theta)) * w * h1;
            add(k, c);
            add(neg(k), c.adjoint());
        }
    }
    return fh;
}

Mat evaluate_hamiltonian(const FourierHamiltonian& fh, const std::vector<double>& modes, double t)
{
    if (int(modes.size()) != fh.n_modes)
        throw UsageError("evaluate_hamiltonian: mode count mismatch");
    Mat h = Mat::Zero(fh.bare.size(), fh.bare.size());
    for (const auto& [k, c] : fh.components) {
        double ph = 0.0;
        for (int i = 0; i < fh.n_modes; ++i)
            ph += k[i] * modes[i];
        h += std::exp(cplx(0.0, 2.0 * std::numbers::pi * ph * t)) * c;
    }
    return h;
}

}  // namespace floq
