#pragma once

#include <optional>
#include <string>
#include <vector>

#include "floq/circuit.hpp"

namespace floq {

struct ModeSpec {
    double frequency = 0.0;
    int truncation = 8;  // Fourier indices -N..N
};

struct CompositeIndex {
    Index alpha = 0;
    Key m;

    bool operator==(const CompositeIndex& o) const { return alpha == o.alpha && m == o.m; }
};

// Truncated Floquet matrix H_F = F0 + V. F0 is diagonal: bare qubit energies
// plus photon shifts. Row order: photon multi-index outer (lexicographic,
// first mode slowest), qubit state inner.
class FloquetMatrix {
public:
    FloquetMatrix() = default;
    FloquetMatrix(const FourierHamiltonian& fh, const std::vector<ModeSpec>& modes);

    Index dim() const { return dim_; }
    Index qubit_dim() const { return d_; }
    Index n_blocks() const { return n_blocks_; }
    int n_modes() const { return int(modes_.size()); }
    int n_qubits() const { return fh_.n_qubits; }
    const std::vector<ModeSpec>& modes() const { return modes_; }
    std::vector<double> mode_frequencies() const;
    const FourierHamiltonian& fourier() const { return fh_; }

    bool contains(const Key& m) const;
    Index block_of(const Key& m) const;
    Key photon(Index block) const;
    Index row(const CompositeIndex& c) const;
    CompositeIndex index(Index row) const;

    // Unperturbed lab-frame quasienergies eps0(alpha, m) = E_alpha + m.f
    const RVec& unperturbed() const { return eps0_; }
    // eps0 minus the recorded frame sum_j f_j n_j
    RVec frame_energies() const;
    const SpMat& V() const { return v_; }
    SpMat full() const;
    Mat dense() const;

    const std::optional<std::vector<double>>& frame() const { return frame_; }
    void set_frame(std::vector<double> f) { frame_ = std::move(f); }
    // V -> lambda V
    void scale_perturbation(double lambda) { v_ *= cplx(lambda); }

private:
    FourierHamiltonian fh_;
    std::vector<ModeSpec> modes_;
    Index d_ = 0;
    Index n_blocks_ = 0;
    Index dim_ = 0;
    std::vector<Index> stride_;
    RVec eps0_;
    SpMat v_;
    std::optional<std::vector<double>> frame_;
};

FloquetMatrix assemble_floquet_matrix(const FourierHamiltonian& fh,
                                      const std::vector<ModeSpec>& modes);

// Records per-qubit frame frequencies. frame_energies() then reports
// eps0 - sum_j f_j n_j, which is what slow-manifold detection uses.
FloquetMatrix apply_rotating_frame(FloquetMatrix f, const std::vector<double>& frame);

// Fold into [-omega/2, omega/2).
double fold_quasienergy(double eps, double omega);

struct SpectrumMethod {
    enum class Kind { dense, window } kind = Kind::dense;
    double center = 0.0;
    int count = 0;
    double tol = 1e-10;

    static SpectrumMethod dense_method() { return {}; }
    static SpectrumMethod window_method(double center, int count)
    {
        return {Kind::window, center, count, 1e-10};
    }
};

struct QuasienergySpectrum {
    RVec eps;  // ascending
    Mat vecs;  // columns
    // bare row -> eigen index, -1 where unassigned
    std::vector<Index> bare_to_dressed;
    // eigen index -> bare row, -1 where unassigned
    std::vector<Index> dressed_to_bare;
    std::vector<bool> ambiguous;  // per eigen index
    std::vector<Index> unassigned_bare;
    bool complete = true;  // all eigenpairs of the truncated matrix present
};

QuasienergySpectrum quasienergy_spectrum(const FloquetMatrix& f,
                                         SpectrumMethod method = SpectrumMethod::dense_method());

// Lowest |eigenvalue - center| eigenpairs of a sparse Hermitian matrix via
// shift-invert subspace iteration.
void window_eigensolve(const SpMat& h, double center, int count, double tol, RVec& eps,
                       Mat& vecs);

// P_bar(alpha -> beta) summed over all photon blocks of the final state.
double transition_probability_time_avg(const FloquetMatrix& f, const QuasienergySpectrum& s,
                                       Index alpha, Index beta);

// Full matrix P_bar(beta, alpha).
Mat transition_probability_time_avg_matrix(const FloquetMatrix& f,
                                           const QuasienergySpectrum& s);

enum class TimeDepForm {
    amplitude,  // |sum_n exp(i2pi n.f t) <<beta,n|U_F(t)|alpha,0>>|^2, t0 = 0
    incoherent  // sum_n |<<beta,n|U_F(t)|alpha,0>>|^2
};

std::vector<double> transition_probability_time_dep(const FloquetMatrix& f,
                                                    const QuasienergySpectrum& s, Index alpha,
                                                    Index beta, const std::vector<double>& t,
                                                    TimeDepForm form = TimeDepForm::amplitude);

// Hilbert-space propagator U(t, 0) reconstructed from the Floquet spectrum.
Mat floquet_propagator(const FloquetMatrix& f, const QuasienergySpectrum& s, double t);

// Max deviation of U_F U_F^dagger from identity on the composite space.
double floquet_unitarity_defect(const QuasienergySpectrum& s, double t);

struct TimeDomainResult {
    std::vector<double> t;
    std::vector<Vec> states;
    long steps = 0;
    long rejected = 0;
    double max_norm_drift = 0.0;
};

// Dormand-Prince 5(4) on i dpsi/dt = 2pi H(t) psi with per-step error <= tol.
// The norm is never renormalized.
TimeDomainResult propagate_time_domain(const FourierHamiltonian& fh,
                                       const std::vector<double>& modes, const Vec& psi0,
                                       const std::vector<double>& t, double tol = 1e-10);

}  // namespace floq
