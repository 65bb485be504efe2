#pragma once

#include <random>
#include <vector>

#include "floq/io.hpp"

namespace floq::test {

inline std::vector<double> freqs(const std::vector<ModeSpec>& modes)
{
    std::vector<double> out;
    for (auto& m : modes)
        out.push_back(m.frequency);
    return out;
}

// Floquet matrix in the scheme's frame with its slow manifold.
struct Built {
    FourierHamiltonian fh;
    FloquetMatrix f;
    SlowManifold m;
};

inline Built build(const SchemeSetup& s, double gap_min = 0.05)
{
    Built b;
    b.fh = build_fourier_components(s.circuit, freqs(s.modes));
    b.f = apply_rotating_frame(assemble_floquet_matrix(b.fh, s.modes), s.frame);
    ManifoldOptions o;
    o.states = s.slow_states;
    o.gap_min = gap_min;
    b.m = identify_slow_manifold(b.f, o);
    return b;
}

inline Built build_module(const ModuleSetup& s, double gap_min = 0.02)
{
    Built b;
    b.fh = build_fourier_components(s.circuit, freqs(s.modes));
    b.f = apply_rotating_frame(assemble_floquet_matrix(b.fh, s.modes), s.frame);
    ManifoldOptions o;
    o.states = s.slow_states;
    o.gap_min = gap_min;
    b.m = identify_slow_manifold(b.f, o);
    return b;
}

inline SchemeSetup table1(int n = 8)
{
    return single_mode_scheme(MultiphotonKind::zx, 1, 'x', 12, 9, 0.3, 0.25, n);
}
inline SchemeSetup table2(int n = 6, BimodalPhase ph = BimodalPhase::aligned)
{
    return bimodal_xx_yy_scheme(12, 8.5, 0.3, 0.75, 0.75, 0.256, 0, n, ph);
}
inline SchemeSetup squeezing(int n = 8)
{
    return single_mode_scheme(MultiphotonKind::squeezing, 1, 'z', 12, 9, 0.5, 0.2, n);
}
inline SchemeSetup hopping(int n = 8)
{
    return single_mode_scheme(MultiphotonKind::hopping, 1, 'z', 12, 9, 0.25, 0.1, n);
}
inline SchemeSetup bimodal_zz(int n = 6)
{
    return bimodal_zz_scheme(9, 5, 0.4, 0.6, 0, 0.6, 0, n);
}
inline SchemeSetup table3(int n = 12)
{
    return single_mode_scheme(MultiphotonKind::squeezing, 2, 'x', 11, 9, 0.18, 0.12, n);
}
inline SchemeSetup three_photon_zx(int n = 14)
{
    return single_mode_scheme(MultiphotonKind::zx, 3, 'x', 11, 9, 0.6, 0.6, n);
}

inline constexpr double MHz = 1e-3;

inline Mat random_matrix(std::mt19937& rng, Index d)
{
    std::normal_distribution<double> g;
    Mat a(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            a(i, j) = cplx(g(rng), g(rng));
    return a;
}

}  // namespace floq::test
