#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "floq/catalog.hpp"
#include "floq/salwen.hpp"

namespace floq {

enum class LinkType { xx, yy, zz };

std::string to_string(LinkType t);
LinkType link_type_from_string(const std::string& s);

// Oriented edge. In the driven-qubit scheme the left end carries the
// sum-frequency tone and the right end the difference-frequency tone.
struct Edge {
    int left = 0;
    int right = 1;
    LinkType type = LinkType::xx;
};

struct HoneycombLattice {
    std::vector<int> band;  // frequency class per vertex (0 or 1)
    std::vector<Edge> edges;

    int n_vertices() const { return int(band.size()); }
    // Throws UsageError on degree > 3, repeated link types at a vertex or a
    // zz edge inside one band.
    void validate() const;
    std::vector<int> neighbors(int v) const;
    // Every edge reversed.
    HoneycombLattice flipped() const;

    // Central qubit 0 with an xx edge to 1, a yy edge to 2 and a zz edge to 3,
    // oriented along the chain 2 -> 0 -> 1.
    static HoneycombLattice module(std::vector<int> band = {0, 1, 1, 1});
    // Single hexagon, link types cycling xx, yy, zz.
    static HoneycombLattice plaquette();
    // Brick-wall honeycomb: rows of alternating xx/yy chains joined by zz rungs.
    static HoneycombLattice brick_wall(int rows, int cols);
};

// Candidate frequencies per band, tried in order.
struct BandPalette {
    std::vector<double> band0;
    std::vector<double> band1;
};

using FrequencyAssignment = std::vector<double>;

// Greedy deterministic assignment in vertex order. Nearest neighbors differ by
// at least delta_nn, vertices sharing a neighbor by at least delta_nnn.
FrequencyAssignment assign_frequencies(const HoneycombLattice& lattice,
                                       const BandPalette& palette, double delta_nn,
                                       double delta_nnn);

struct LinkTargets {
    double j_xx = 0.0;
    double j_yy = 0.0;
    double j_zz = 0.0;

    double of(LinkType t) const;
};

enum class ModuleScheme { driven_qubit, driven_coupler };

std::string to_string(ModuleScheme s);
ModuleScheme module_scheme_from_string(const std::string& s);

// Static circuit constants of the lattice.
struct ModuleParams {
    double g_c = 0.2;         // capacitive YY on driven-qubit xx/yy edges
    double zz_g_x = 0.2;      // residual transverse term on zz links
    double coupler_g_x = 0.3;
    double coupler_g_z = 0.01;
    double coupler_g_j = 0.15;  // g_1 = g_2
    double max_amplitude = 0.5;  // bound on any tone component or flux amplitude
};

struct ScheduledTone {
    int edge = 0;
    int qubit = 0;       // carrying qubit (driven qubit) or left end (coupler)
    std::string role;    // "sum" or "difference"
    Key key;             // over the lattice frequencies
    double frequency = 0.0;  // GHz, positive
    double amplitude = 0.0;  // component b (drive) or phi_ac (flux)
    double theta = 0.0;
};

struct DriveSchedule {
    ModuleScheme scheme = ModuleScheme::driven_qubit;
    std::vector<double> omega;
    std::vector<ScheduledTone> tones;
    // zz edge -> static ZZ strength (GHz)
    std::vector<std::pair<int, double>> static_zz;

    int tones_on(int qubit) const;
};

// Per-edge effective |J| measured on a compiled schedule, indexed like lattice.edges.
using CouplingProbe = std::function<std::vector<double>(const DriveSchedule&)>;

// Leading-order inversion, optionally followed by one secant step that rescales
// every edge by |J_target| / |J_probe|.
DriveSchedule compile_drive_schedule(const HoneycombLattice& lattice,
                                     const FrequencyAssignment& omega, const LinkTargets& targets,
                                     ModuleScheme scheme, const ModuleParams& params = {},
                                     const CouplingProbe& corrector = {});

// Tone of the given role (sum or difference of the edge frequencies) on one
// end of an edge, key flipped to a positive frequency.
ScheduledTone edge_tone(const HoneycombLattice& lattice, const FrequencyAssignment& omega,
                        int edge, int qubit, const std::string& role, double amplitude,
                        double theta = 0.0);

struct ModuleSetup {
    CircuitSpec circuit;
    std::vector<ModeSpec> modes;
    std::vector<double> frame;
    std::vector<CompositeIndex> slow_states;
    HoneycombLattice lattice;
};

// Star-shaped module with one mode per qubit frequency; slow states
// (alpha, m = -n(alpha)).
ModuleSetup build_module_hamiltonian(const HoneycombLattice& lattice, const DriveSchedule& schedule,
                                     const ModuleParams& params = {}, int truncation = 4);

// Pauli label on the lattice for the coupling an edge realizes.
std::string edge_label(const HoneycombLattice& lattice, int edge);

struct FastStateDiagnostic {
    double eps = 0.0;    // unperturbed quasienergy relative to the slow manifold
    double t_max = 0.0;  // largest coupling at that level
    double ratio = 0.0;
};

struct ModuleDiagnostics {
    std::optional<EffectiveSpinHamiltonian> effective;
    std::vector<FastStateDiagnostic> table;  // one row per |eps| level, lowest first
    double t_max = 0.0;
    double gap = 0.0;
    double max_ratio = 0.0;
    Index resonant_coupled = 0;  // zero-denominator fast states with nonzero coupling
    bool pass = false;
};

// t(s) = || row s of (V + V G V) P || at eps = 0, G the lab-frame resolvent on
// the fast space, maximized over each |eps| level. t_max and the gap (lowest
// |eps| whose t reaches 10% of t_max) use the coupled levels below window,
// at most fast_count of them; max_ratio covers every level.
ModuleDiagnostics validate_adiabaticity(const FloquetMatrix& f, const SlowManifold& m,
                                        double window = 1.0, int fast_count = 64);

// Target Hamiltonian on the lattice, one two-body string per edge.
PauliDecomposition kitaev_target_hamiltonian(const HoneycombLattice& lattice,
                                             const LinkTargets& targets);

// Frequencies and schedules used in the worked module examples.
FrequencyAssignment module_frequencies_large_detuning();
FrequencyAssignment module_frequencies_small_detuning();
BandPalette module_palette_large_detuning();
BandPalette module_palette_small_detuning();

// Literal driven-qubit module tones (component amplitudes b12, b21, b13, b31).
DriveSchedule driven_qubit_module_schedule(const FrequencyAssignment& omega, double b12,
                                           double b21, double b13, double b31, double j_zz);

}  // namespace floq
