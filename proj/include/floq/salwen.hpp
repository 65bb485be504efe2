#pragma once

#include <string>
#include <vector>

#include "floq/floquet.hpp"

namespace floq {

struct ManifoldOptions {
    double degeneracy_tol = 1e-6;
    double gap_min = 0.05;
    // Explicit slow states; when empty, one state per qubit basis state is
    // searched with zero frame quasienergy and minimal |m|.
    std::vector<CompositeIndex> states;
};

// 2^n slow states, one per qubit basis state, ordered by alpha so that the
// slow basis coincides with the qubit basis.
struct SlowManifold {
    std::vector<CompositeIndex> states;
    std::vector<Index> rows;
    RVec eps0_lab;
    RVec eps0_frame;
    std::vector<double> frame;
    // States sharing a lab quasienergy are eliminated together; every other
    // state, slow or not, counts as fast for that class.
    std::vector<std::vector<int>> classes;
    std::vector<double> class_energy;
    std::vector<int> class_of;
    // Smallest |eps0_s - E_class| over fast states not degenerate with a class.
    double gap = 0.0;
    // Fast states exactly degenerate with a class (allowed only if decoupled).
    Index resonant_fast = 0;
};

SlowManifold identify_slow_manifold(const FloquetMatrix& f, const ManifoldOptions& opt = {});

// P (V G)^k V P at trial offset eps from each column's class energy, with
// G = sum' |s><s| / (E_class + eps - eps0_s) over the complement of the class.
Mat scattering_apply(const FloquetMatrix& f, const SlowManifold& m, double eps, int k);

// H_eff order by order: entry n is the lambda^n coefficient of the Hermitian
// effective Hamiltonian under V -> lambda V, class energies removed from n = 0.
std::vector<Mat> effective_series(const FloquetMatrix& f, const SlowManifold& m, int p);

struct SelfConsistentSolution {
    int order = 0;  // 0 for the all-orders solution
    RVec eps;       // frame quasienergies per slow eigenstate
    Mat vecs;       // columns over the slow basis, largest component real-positive
    Mat h;          // assembled effective matrix (frame)
    // kappa(alpha, p) = <v_alpha| H^(p) |v_alpha>; row sums give eps.
    Mat kappa;
    // max over alpha of the distance from eps_alpha to the nearest eigenvalue
    // of h(eps_alpha) (all-orders route only)
    double residual = 0.0;
    int iterations = 0;
};

SelfConsistentSolution solve_self_consistent(const FloquetMatrix& f, const SlowManifold& m,
                                             int p_c);

// All-orders route: h(eps) = H_PP + H_PQ (eps - H_QQ)^-1 H_QP per class, each
// branch iterated to eps = eig(h(eps)). Independent of the series.
SelfConsistentSolution solve_self_consistent_exact(const FloquetMatrix& f,
                                                   const SlowManifold& m, double tol = 1e-13,
                                                   int max_iter = 50);

// Per-class dense diagonalization; eigenvectors with the largest class weight
// are projected and Loewdin-orthonormalized.
Mat exact_effective_matrix(const FloquetMatrix& f, const SlowManifold& m,
                           const QuasienergySpectrum& s);

struct EffectiveSpinHamiltonian {
    std::string method;
    int order = 0;
    std::vector<double> frame;
    std::vector<double> delta_omega;  // sigma_j^z coefficients
    PauliDecomposition couplings;     // real parts, all other non-identity strings
    double offset = 0.0;              // identity coefficient
    Mat matrix;
    RVec quasienergies;
    Mat eigenvectors;

    double coefficient(const std::string& label) const;
    // |<alpha|H|beta>|
    double element(int a, int b) const { return std::abs(matrix(a, b)); }
};

EffectiveSpinHamiltonian spin_hamiltonian(const Mat& h, const SlowManifold& m,
                                          const std::string& method, int order);

// Series route through order p_c.
EffectiveSpinHamiltonian effective_hamiltonian(const FloquetMatrix& f, const SlowManifold& m,
                                               int p_c);

enum class ExactRoute { dense, self_consistent };

EffectiveSpinHamiltonian effective_hamiltonian_exact(const FloquetMatrix& f,
                                                     const SlowManifold& m, ExactRoute route);

// Copy of f with V scaled by lambda.
FloquetMatrix scale_perturbation(const FloquetMatrix& f, double lambda);

// log-log slope of max_alpha |eps(p_hi) - eps(p_lo)| over the lambda grid.
double order_scaling_slope(const FloquetMatrix& f, const SlowManifold& m, int p_lo, int p_hi,
                           const std::vector<double>& lambdas);

}  // namespace floq
