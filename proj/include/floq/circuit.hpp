#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "floq/operators.hpp"

namespace floq {

// Frequencies and energies are in GHz (the f = omega/2pi values), times in ns.

struct TransmonParams {
    double E_J = 0.0;
    double E_C = 0.0;
    double omega = 0.0;
    double U = 0.0;
    double phi_bar = 0.0;
    std::vector<std::string> warnings;
};

TransmonParams quantize_transmon(double E_J, double E_C);

struct QubitSpec {
    double omega = 0.0;
    std::optional<TransmonParams> transmon;
};

// One cosine tone. For qubit drives the term is amplitude*cos(2pi f t + theta)*sigma^a,
// for SQUID tones the flux is 2*amplitude*cos(2pi f t + theta).
// key, when set, pins the Fourier multi-index instead of resolving frequency.
struct Tone {
    double amplitude = 0.0;
    double frequency = 0.0;
    double theta = 0.0;
    std::optional<Key> key;
};

struct DriveSpec {
    int qubit = 0;  // zero-based
    char axis = 'x';  // x, y or z
    std::vector<Tone> tones;
};

// g_c sigma^y sigma^y
struct CapacitiveCoupling {
    double g_c = 0.0;
};

// Fixed two-body terms, used for undriven links.
struct StaticCoupling {
    double g_xx = 0.0;
    double g_yy = 0.0;
    double g_zz = 0.0;
};

// H1' = g_1 n_i + g_2 n_j + g_x XX + g_z ZZ, static weight cos(phi_dc/2),
// tone weight sin(phi_dc/2).
struct SquidCoupler {
    double g_x = 0.0;
    double g_z = 0.0;
    double g_1 = 0.0;
    double g_2 = 0.0;
    double phi_dc = 0.0;
    bool include_capacitive_yy = false;
    double g_c = 0.0;
    std::vector<Tone> tones;  // amplitude = phi_ac
};

struct Coupling {
    int i = 0;
    int j = 1;
    std::variant<CapacitiveCoupling, StaticCoupling, SquidCoupler> kind;
};

struct CircuitSpec {
    std::vector<QubitSpec> qubits;
    std::vector<Coupling> couplings;
    std::vector<DriveSpec> drives;

    QubitRegister reg() const { return QubitRegister(int(qubits.size())); }
    // Throws UsageError; returns non-fatal warnings.
    std::vector<std::string> validate() const;
};

struct FourierHamiltonian {
    int n_modes = 0;
    int n_qubits = 0;
    std::map<Key, Mat> components;
    // Diagonal of sum_j omega_j n_j, the unperturbed qubit energies.
    RVec bare;

    Key zero_key() const { return Key(n_modes, 0); }
    const Mat& static_part() const { return components.at(zero_key()); }
    int max_order(int mode) const;
};

Mat build_static_hamiltonian(const CircuitSpec& spec);

// Throws UsageError if two modes are commensurate: c1 f_a + c2 f_b = 0 with
// 0 < |c| <= 4, relative tolerance 1e-9.
void check_incommensurate(const std::vector<double>& modes);

// Integer combination of modes with |coefficients| <= 4 equal to frequency,
// smallest L1 norm first. label names the tone in error messages.
Key resolve_tone(double frequency, const std::vector<double>& modes, const std::string& label);

FourierHamiltonian build_fourier_components(const CircuitSpec& spec,
                                            const std::vector<double>& mode_frequencies);

// H(t) = sum_n H^(n) exp(i 2pi n.f t), t in ns.
Mat evaluate_hamiltonian(const FourierHamiltonian& fh, const std::vector<double>& modes,
                         double t);

}  // namespace floq
