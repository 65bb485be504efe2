#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "floq/catalog.hpp"
#include "floq/honeycomb.hpp"
#include "floq/salwen.hpp"

namespace floq {

using json = nlohmann::json;

inline constexpr const char* kUnits = "GHz_over_2pi";

struct EffectiveTask {
    std::vector<int> orders{2, 4, 6};
    std::string exact = "dense";  // dense | self_consistent | none
};

struct SpectrumTask {
    std::string method = "dense";  // dense | window
    double center = 0.0;
    int count = 0;
};

struct SweepAxis {
    std::vector<std::string> paths;  // JSON pointers into the config
    std::vector<double> values;
};

struct SweepTask {
    std::vector<SweepAxis> axes;
    std::string observable = "quasienergies";  // quasienergies | effective | probability
    int track = 8;                             // branches nearest zero
    int order = 2;
    std::vector<std::string> terms;  // effective columns; empty = all seen
    std::vector<std::pair<std::string, std::string>> transitions;  // probability observable
};

struct ProbabilityTask {
    std::string initial;
    std::string final_state;
    std::vector<double> times;  // ns; empty = time average only
    std::string form = "amplitude";
    bool oracle = false;  // add the time-domain integration column
};

struct HoneycombTask {
    HoneycombLattice lattice;
    std::optional<FrequencyAssignment> frequencies;
    std::optional<BandPalette> palette;
    double delta_nn = 0.0;
    double delta_nnn = 0.0;
    ModuleScheme scheme = ModuleScheme::driven_qubit;
    LinkTargets targets;
    ModuleParams params;
    int truncation = 4;
    int order = 6;
    bool correct = false;
    double window = 1.0;
    double gap_min = 0.02;
    std::optional<DriveSchedule> schedule;
};

struct CatalogTask {
    std::string scheme;
    json inputs;
};

struct RunConfig {
    json document;  // validated input
    std::string task;
    bool has_circuit = false;
    CircuitSpec circuit;
    std::vector<ModeSpec> modes;
    std::optional<std::vector<double>> frame;
    ManifoldOptions manifold;
    EffectiveTask effective;
    SpectrumTask spectrum;
    SweepTask sweep;
    ProbabilityTask probability;
    std::optional<HoneycombTask> honeycomb;
    std::optional<CatalogTask> catalog;
    std::vector<std::string> warnings;

    std::vector<double> mode_frequencies() const;
};

// Throws UsageError listing every schema violation with its JSON pointer.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_json(const json& doc);

struct RunOptions {
    std::string out_dir = ".";
    int threads = 1;
    std::optional<int> truncation_override;
    std::optional<int> order;
    std::optional<std::string> task;  // overrides the config task
};

// Runs the task and writes its files; returns the list of files written.
// Throws UsageError (exit 1) or PhysicsError (exit 2).
std::vector<std::string> run_task(const RunConfig& config, const RunOptions& options);

// Exit status for an exception escaping run_task.
int exit_code_for(const std::exception& e);

// 64-bit FNV-1a over the canonical serialization.
std::string config_hash(const json& doc, const RunOptions& options);

struct Provenance {
    std::string hash;
    std::string task;
    std::vector<int> truncations;
    std::vector<int> orders;
    std::string timestamp;
};

// "# key: value" lines; the timestamp is always the last line.
std::string csv_header(const Provenance& p);
json provenance_json(const Provenance& p);

json effective_to_json(const EffectiveSpinHamiltonian& h);
json schedule_to_json(const DriveSchedule& s, const HoneycombLattice& lattice);
DriveSchedule schedule_from_json(const json& j, const HoneycombLattice& lattice,
                                 const std::vector<double>& omega, ModuleScheme scheme);
std::string schedule_table(const DriveSchedule& s, const HoneycombLattice& lattice);
json series_to_json(const Series& s);

// Closed-form catalog entry for a task section; throws UsageError on bad inputs.
InteractionParams evaluate_catalog(const CatalogTask& task);
json catalog_to_json(const InteractionParams& p);

// Occupation string (qubit 1 first, '1' excited) to basis index.
Index parse_qubit_state(const std::string& s, int n_qubits);
std::string qubit_state_label(Index alpha, int n_qubits);

}  // namespace floq
