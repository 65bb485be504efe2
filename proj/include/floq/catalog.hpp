#pragma once

#include <map>
#include <string>
#include <vector>

#include "floq/floquet.hpp"

namespace floq {

// Closed-form interaction strengths. All inputs and outputs in GHz; b is the
// Fourier component amplitude of the drive (tone amplitude 2b).

// Contributions by power of b: terms[p] is the b^p piece.
struct Series {
    std::vector<double> terms;

    double at(int p) const { return p >= 0 && p < int(terms.size()) ? terms[p] : 0.0; }
    double through(int p) const;
    double total() const { return through(int(terms.size()) - 1); }
    void set(int p, double v);
};

struct InteractionParams {
    std::string scheme;
    Series delta_omega1;
    Series delta_omega2;
    std::map<std::string, Series> couplings;  // J_zx, J_s, J_h, J_xx, J_yy, J_xy, J_yx, J_zz
    double theta = 0.0;                       // couplings carry exp(i theta)
    std::vector<std::string> flags;

    const Series& coupling(const std::string& name) const;
};

// Transverse drive on qubit 1 at omega_d = omega_2, eta = g_c / b.
InteractionParams zx_params(double w1, double w2, double b, double eta, double theta = 0.0);
// Longitudinal drive on qubit 1 at omega_1 + omega_2 and omega_1 - omega_2.
InteractionParams squeezing_params(double w1, double w2, double b, double eta,
                                   double theta = 0.0);
InteractionParams hopping_params(double w1, double w2, double b, double eta, double theta = 0.0);

enum class BimodalPhase { aligned, quadrature };  // theta_ij = 0 or pi/2

// Longitudinal bimodal drive; eta_ij = b_ij / b for qubit i, tone j (1: sum, 2: difference).
InteractionParams bimodal_xx_yy_params(double w1, double w2, double b, double eta11,
                                       double eta21, double eta12, double eta22,
                                       BimodalPhase phase = BimodalPhase::aligned);
// Transverse bimodal drive, third order.
InteractionParams bimodal_zz_params(double w1, double w2, double b, double eta11, double eta12,
                                    double eta21, double eta22);

struct CouplerInputs {
    double w1 = 0.0;
    double w2 = 0.0;
    double g_x = 0.0;
    double g_1 = 0.0;
    double g_2 = 0.0;
    double g_z = 0.0;
    double phi_ac = 0.0;
    double phi_dc = 3.14159265358979323846;
    double theta = 0.0;  // 0 or pi
};

// Flux-driven SQUID coupler biased at phi_dc = pi, b = g_x phi_ac, third order.
InteractionParams coupler_params(const CouplerInputs& in);

// Leading rotating-wave Hamiltonian of the driven coupler on two qubits.
PauliDecomposition rwa_coupler(double g_x, double phi_ac1, double phi_ac2, double theta);

struct JyySuppression {
    double j_yy = 0.0;         // J_yy at equal amplitudes
    double d_y = 0.0;          // dJ_yy / d(delta phi_ac)
    double delta_phi = 0.0;    // -J_yy / D_y
    double approx_delta_phi = 0.0;  // 2 J_yy / g_x as printed
};

JyySuppression jyy_suppression(const CouplerInputs& in);

enum class MultiphotonKind { zx, squeezing, hopping };

// k-photon working points omega_d = omega_2/k (zx) or (omega_1 +- omega_2)/k.
InteractionParams multiphoton_params(int k, MultiphotonKind kind, char axis, double w1, double w2,
                                     double b, double eta);

// Ready-to-run two-qubit setups at the catalog working points.
struct SchemeSetup {
    std::string scheme;
    CircuitSpec circuit;
    std::vector<ModeSpec> modes;
    std::vector<double> frame;
    std::vector<CompositeIndex> slow_states;
};

// Single-mode drive on qubit 1 at the k-photon point of kind. axis 'x' or 'z'.
SchemeSetup single_mode_scheme(MultiphotonKind kind, int k, char axis, double w1, double w2,
                               double g_c, double b, int truncation = 8, double theta = 0.0);

// Longitudinal bimodal drive on both qubits, modes (w1, w2), g_c = b.
SchemeSetup bimodal_xx_yy_scheme(double w1, double w2, double b, double eta11, double eta21,
                                 double eta12, double eta22, int truncation = 6,
                                 BimodalPhase phase = BimodalPhase::aligned);

// Transverse bimodal drive, g_c = b.
SchemeSetup bimodal_zz_scheme(double w1, double w2, double b, double eta11, double eta12,
                              double eta21, double eta22, int truncation = 6);

// Frame making every slow state degenerate: f_j = eps0 of the state with only
// qubit j excited minus eps0 of the ground state.
std::vector<double> frame_from_states(const std::vector<double>& omega,
                                      const std::vector<double>& modes,
                                      const std::vector<CompositeIndex>& states);

}  // namespace floq
