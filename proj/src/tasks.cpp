#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <thread>

#include "floq/io.hpp"

namespace floq {

namespace {

constexpr Index kDenseLimit = 5000;

std::string timestamp()
{
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
        t = std::time_t(std::strtoll(epoch, nullptr, 10));
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct Writer {
    std::filesystem::path dir;
    std::vector<std::string> written;

    void file(const std::string& name, const std::string& body)
    {
        std::filesystem::create_directories(dir);
        const auto path = dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw UsageError("cannot write '" + path.string() + "'");
        out << body;
        written.push_back(path.string());
    }

    void json_file(const std::string& name, const json& j) { file(name, j.dump(2) + "\n"); }
};

std::vector<ModeSpec> effective_modes(const RunConfig& cfg, const RunOptions& opt)
{
    auto modes = cfg.modes;
    if (opt.truncation_override)
        for (auto& m : modes)
            m.truncation = *opt.truncation_override;
    return modes;
}

std::vector<double> frame_for(const RunConfig& cfg)
{
    if (cfg.frame)
        return *cfg.frame;
    const int n = int(cfg.circuit.qubits.size());
    if (!cfg.manifold.states.empty()) {
        std::vector<double> omega;
        for (auto& q : cfg.circuit.qubits)
            omega.push_back(q.omega);
        return frame_from_states(omega, cfg.mode_frequencies(), cfg.manifold.states);
    }
    return std::vector<double>(n, 0.0);
}

struct Prepared {
    FourierHamiltonian fh;
    std::vector<ModeSpec> modes;
    FloquetMatrix f;
};

Prepared prepare(const RunConfig& cfg, const RunOptions& opt)
{
    if (!cfg.has_circuit)
        throw UsageError("task '" + cfg.task + "' needs a circuit section");
    if (cfg.modes.empty())
        throw UsageError("task '" + cfg.task + "' needs at least one mode");
    Prepared p;
    p.modes = effective_modes(cfg, opt);
    p.fh = build_fourier_components(cfg.circuit, cfg.mode_frequencies());
    p.f = apply_rotating_frame(assemble_floquet_matrix(p.fh, p.modes), frame_for(cfg));
    return p;
}

std::vector<int> truncations_of(const std::vector<ModeSpec>& modes)
{
    std::vector<int> t;
    for (auto& m : modes)
        t.push_back(m.truncation);
    return t;
}

QuasienergySpectrum spectrum_near(const FloquetMatrix& f, double center, int count)
{
    if (f.dim() <= kDenseLimit)
        return quasienergy_spectrum(f);
    return quasienergy_spectrum(f, SpectrumMethod::window_method(center, count));
}

std::string photon_string(const Key& m)
{
    std::string s;
    for (size_t i = 0; i < m.size(); ++i)
        s += (i ? " " : "") + std::to_string(m[i]);
    return s;
}

// ---------------------------------------------------------------- spectrum

void run_spectrum(const RunConfig& cfg, const RunOptions& opt, Provenance prov, Writer& w)
{
    const Prepared p = prepare(cfg, opt);
    prov.truncations = truncations_of(p.modes);
    QuasienergySpectrum s;
    if (cfg.spectrum.method == "window")
        s = quasienergy_spectrum(
            p.f, SpectrumMethod::window_method(cfg.spectrum.center, cfg.spectrum.count));
    else if (p.f.dim() > kDenseLimit)
        throw UsageError("dense spectrum limited to dimension " + std::to_string(kDenseLimit)
                         + ", got " + std::to_string(p.f.dim()) + "; use the window method");
    else
        s = quasienergy_spectrum(p.f);
    const int n = p.f.n_qubits();
    std::string csv = csv_header(prov) + "index,eps_GHz,bare_state,bare_m,ambiguous\n";
    for (Index i = 0; i < s.eps.size(); ++i) {
        std::string state, m;
        if (s.dressed_to_bare[i] >= 0) {
            const auto ci = p.f.index(s.dressed_to_bare[i]);
            state = qubit_state_label(ci.alpha, n);
            m = photon_string(ci.m);
        }
        csv += std::to_string(i) + "," + num(s.eps[i]) + "," + state + "," + m + ","
               + (s.ambiguous[i] ? "1" : "0") + "\n";
    }
    w.file("spectrum.csv", csv);
    std::cout << "spectrum: " << s.eps.size() << " quasienergies, dimension " << p.f.dim()
              << "\n";
}

// --------------------------------------------------------------- effective

std::vector<int> orders_for(const RunConfig& cfg, const RunOptions& opt)
{
    if (opt.order)
        return {*opt.order};
    return cfg.effective.orders;
}

json manifold_json(const SlowManifold& m, int n_qubits)
{
    json states = json::array();
    for (size_t i = 0; i < m.states.size(); ++i)
        states.push_back({{"state", qubit_state_label(m.states[i].alpha, n_qubits)},
                          {"m", m.states[i].m},
                          {"eps0_lab", m.eps0_lab[Index(i)]},
                          {"class", m.class_of[i]}});
    return {{"states", states},
            {"gap", m.gap},
            {"classes", m.classes.size()},
            {"resonant_fast", m.resonant_fast}};
}

void effective_rows(std::string& csv, const EffectiveSpinHamiltonian& h)
{
    const std::string pre = h.method + "," + std::to_string(h.order) + ",";
    for (size_t j = 0; j < h.delta_omega.size(); ++j)
        csv += pre + "delta_omega_" + std::to_string(j + 1) + "," + num(h.delta_omega[j]) + "\n";
    for (auto& [label, c] : h.couplings)
        csv += pre + label + "," + num(c.real()) + "\n";
}

void print_effective(const EffectiveSpinHamiltonian& h)
{
    std::printf("%-16s order %d:", h.method.c_str(), h.order);
    for (size_t j = 0; j < h.delta_omega.size(); ++j)
        std::printf(" dw%zu=%.4f", j + 1, h.delta_omega[j] * 1e3);
    for (auto& [label, c] : h.couplings)
        if (std::abs(c) > 1e-7)
            std::printf(" %s=%.4f", label.c_str(), c.real() * 1e3);
    std::printf("  [MHz]\n");
}

void run_effective(const RunConfig& cfg, const RunOptions& opt, Provenance prov, Writer& w)
{
    const Prepared p = prepare(cfg, opt);
    const SlowManifold m = identify_slow_manifold(p.f, cfg.manifold);
    const auto orders = orders_for(cfg, opt);
    prov.truncations = truncations_of(p.modes);
    prov.orders = orders;

    std::vector<EffectiveSpinHamiltonian> results;
    for (int order : orders)
        results.push_back(effective_hamiltonian(p.f, m, order));
    if (cfg.effective.exact == "dense") {
        if (p.f.dim() > kDenseLimit)
            throw UsageError("dense exact route limited to dimension "
                             + std::to_string(kDenseLimit) + "; use self_consistent");
        results.push_back(effective_hamiltonian_exact(p.f, m, ExactRoute::dense));
    } else if (cfg.effective.exact == "self_consistent") {
        results.push_back(effective_hamiltonian_exact(p.f, m, ExactRoute::self_consistent));
    }

    json out = {{"provenance", provenance_json(prov)},
                {"manifold", manifold_json(m, p.f.n_qubits())},
                {"results", json::array()}};
    std::string csv = csv_header(prov) + "method,order,term,value_GHz\n";
    for (auto& h : results) {
        out["results"].push_back(effective_to_json(h));
        effective_rows(csv, h);
        print_effective(h);
    }
    w.json_file("effective.json", out);
    w.file("effective.csv", csv);
}

// ------------------------------------------------------------- probability

Vec basis_state(Index dim, Index alpha)
{
    Vec v = Vec::Zero(dim);
    v[alpha] = 1.0;
    return v;
}

void run_probability(const RunConfig& cfg, const RunOptions& opt, Provenance prov, Writer& w)
{
    const Prepared p = prepare(cfg, opt);
    prov.truncations = truncations_of(p.modes);
    if (p.f.dim() > kDenseLimit)
        throw UsageError("transition probabilities need the dense spectrum (dimension <= "
                         + std::to_string(kDenseLimit) + ")");
    const int n = p.f.n_qubits();
    const Index a = parse_qubit_state(cfg.probability.initial, n);
    const Index b = parse_qubit_state(cfg.probability.final_state, n);
    const auto s = quasienergy_spectrum(p.f);
    const double avg = transition_probability_time_avg(p.f, s, a, b);
    double sum = 0.0;
    for (Index beta = 0; beta < p.f.qubit_dim(); ++beta)
        sum += transition_probability_time_avg(p.f, s, a, beta);
    json out = {{"provenance", provenance_json(prov)},
                {"initial", cfg.probability.initial},
                {"final", cfg.probability.final_state},
                {"time_average", avg},
                {"sum_rule", sum}};
    if (sum < 0.999)
        std::cerr << "warning: truncation leak, probabilities from " << cfg.probability.initial
                  << " sum to " << sum << "\n";
    std::printf("time-averaged P(%s -> %s) = %.6f (sum rule %.6f)\n",
                cfg.probability.initial.c_str(), cfg.probability.final_state.c_str(), avg, sum);

    if (!cfg.probability.times.empty()) {
        const auto& t = cfg.probability.times;
        const TimeDepForm form = cfg.probability.form == "incoherent" ? TimeDepForm::incoherent
                                                                      : TimeDepForm::amplitude;
        const auto pf = transition_probability_time_dep(p.f, s, a, b, t, form);
        std::vector<double> oracle;
        if (cfg.probability.oracle) {
            const auto r = propagate_time_domain(p.fh, cfg.mode_frequencies(),
                                                 basis_state(p.f.qubit_dim(), a), t);
            for (auto& psi : r.states)
                oracle.push_back(std::norm(psi[b]));
            out["oracle_norm_drift"] = r.max_norm_drift;
        }
        std::string csv = csv_header(prov) + "t_ns,P_floquet" + (oracle.empty() ? "" : ",P_time_domain") + "\n";
        double dev = 0.0;
        for (size_t i = 0; i < t.size(); ++i) {
            csv += num(t[i]) + "," + num(pf[i]);
            if (!oracle.empty()) {
                csv += "," + num(oracle[i]);
                dev = std::max(dev, std::abs(oracle[i] - pf[i]));
            }
            csv += "\n";
        }
        if (!oracle.empty()) {
            out["oracle_max_deviation"] = dev;
            std::printf("time-domain oracle: max |dP| = %.3e\n", dev);
        }
        w.file("probability.csv", csv);
    }
    w.json_file("probability.json", out);
}

// ------------------------------------------------------------------- sweep

struct PointResult {
    std::map<std::string, double> values;
    std::string status = "ok";
};

PointResult sweep_point(const RunConfig& cfg, const RunOptions& opt)
{
    PointResult r;
    const Prepared p = prepare(cfg, opt);
    const auto& sw = cfg.sweep;
    if (sw.observable == "quasienergies") {
        const auto s = spectrum_near(p.f, 0.0, sw.track);
        std::vector<double> eps(s.eps.data(), s.eps.data() + s.eps.size());
        std::stable_sort(eps.begin(), eps.end(),
                         [](double x, double y) { return std::abs(x) < std::abs(y); });
        eps.resize(std::min<size_t>(eps.size(), size_t(sw.track)));
        std::sort(eps.begin(), eps.end());
        for (size_t i = 0; i < eps.size(); ++i)
            r.values["eps_" + std::to_string(i + 1)] = eps[i];
    } else if (sw.observable == "effective") {
        const SlowManifold m = identify_slow_manifold(p.f, cfg.manifold);
        const auto h = effective_hamiltonian(p.f, m, opt.order.value_or(sw.order));
        for (size_t j = 0; j < h.delta_omega.size(); ++j)
            r.values["delta_omega_" + std::to_string(j + 1)] = h.delta_omega[j];
        for (auto& [label, c] : h.couplings)
            r.values[label] = c.real();
    } else {
        if (p.f.dim() > kDenseLimit)
            throw UsageError("probability sweeps need the dense spectrum");
        const auto s = quasienergy_spectrum(p.f);
        const int n = p.f.n_qubits();
        for (auto& [a, b] : sw.transitions)
            r.values["P_" + a + "_" + b] = transition_probability_time_avg(
                p.f, s, parse_qubit_state(a, n), parse_qubit_state(b, n));
    }
    return r;
}

void run_sweep(const RunConfig& cfg, const RunOptions& opt, Provenance prov, Writer& w)
{
    const auto& sw = cfg.sweep;
    if (sw.axes.empty())
        throw UsageError("sweep task needs a sweep section with at least one axis");
    std::vector<std::vector<double>> points{{}};
    for (auto& ax : sw.axes) {
        std::vector<std::vector<double>> next;
        for (auto& pt : points)
            for (double v : ax.values) {
                auto q = pt;
                q.push_back(v);
                next.push_back(q);
            }
        points = std::move(next);
    }
    prov.truncations = truncations_of(effective_modes(cfg, opt));
    if (sw.observable == "effective")
        prov.orders = {opt.order.value_or(sw.order)};

    std::vector<PointResult> results(points.size());
    std::atomic<size_t> next{0};
    std::mutex err_mutex;
    std::optional<std::string> usage_error;
    auto worker = [&]() {
        for (size_t i = next++; i < points.size(); i = next++) {
            try {
                json doc = cfg.document;
                for (size_t a = 0; a < sw.axes.size(); ++a)
                    for (auto& path : sw.axes[a].paths)
                        doc[json::json_pointer(path)] = points[i][a];
                results[i] = sweep_point(parse_config_json(doc), opt);
            } catch (const PhysicsError& e) {
                results[i].status = "physics_error";
            } catch (const std::exception& e) {
                std::lock_guard lock(err_mutex);
                if (!usage_error)
                    usage_error = "sweep point " + std::to_string(i) + ": " + e.what();
            }
        }
    };
    const int n_threads = std::max(1, std::min<int>(opt.threads, int(points.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    if (usage_error)
        throw UsageError(*usage_error);

    std::vector<std::string> columns;
    if (sw.observable == "quasienergies") {
        for (int i = 0; i < sw.track; ++i)
            columns.push_back("eps_" + std::to_string(i + 1));
    } else if (sw.observable == "probability") {
        for (auto& [a, b] : sw.transitions)
            columns.push_back("P_" + a + "_" + b);
    } else if (!sw.terms.empty()) {
        columns = sw.terms;
    } else {
        std::set<std::string> labels;
        for (auto& r : results)
            for (auto& [k, v] : r.values)
                if (k.rfind("delta_omega_", 0) == 0)
                    labels.insert(k);
        columns.assign(labels.begin(), labels.end());
        std::set<std::string> couplings;
        for (auto& r : results)
            for (auto& [k, v] : r.values)
                if (!labels.count(k))
                    couplings.insert(k);
        columns.insert(columns.end(), couplings.begin(), couplings.end());
    }

    std::string csv = csv_header(prov) + "point";
    for (auto& ax : sw.axes)
        csv += "," + ax.paths.front();
    for (auto& c : columns)
        csv += "," + c + (sw.observable == "probability" ? "" : "_GHz");
    csv += ",status\n";
    size_t failed = 0;
    for (size_t i = 0; i < points.size(); ++i) {
        csv += std::to_string(i);
        for (double v : points[i])
            csv += "," + num(v);
        for (auto& c : columns) {
            auto it = results[i].values.find(c);
            csv += "," + (it == results[i].values.end() ? std::string("nan") : num(it->second));
        }
        csv += "," + results[i].status + "\n";
        failed += results[i].status != "ok";
    }
    w.file("sweep.csv", csv);

    json axes = json::array();
    for (auto& ax : sw.axes)
        axes.push_back({{"paths", ax.paths}, {"values", ax.values}});
    json rows = json::array();
    for (size_t i = 0; i < points.size(); ++i) {
        json values = json::object();
        for (auto& c : columns) {
            auto it = results[i].values.find(c);
            values[c] = it == results[i].values.end() ? json(nullptr) : json(it->second);
        }
        rows.push_back({{"point", i}, {"axes", points[i]}, {"values", values},
                        {"status", results[i].status}});
    }
    w.json_file("sweep.json", {{"provenance", provenance_json(prov)},
                               {"observable", sw.observable},
                               {"axes", axes},
                               {"columns", columns},
                               {"points", rows}});
    std::cout << "sweep: " << points.size() << " points, " << failed
              << " without a valid slow manifold or spectrum\n";
}

// ---------------------------------------------------------------- honeycomb

FrequencyAssignment honeycomb_frequencies(const HoneycombTask& h)
{
    if (h.frequencies)
        return *h.frequencies;
    return assign_frequencies(h.lattice, *h.palette, h.delta_nn, h.delta_nnn);
}

struct ModuleRun {
    ModuleSetup setup;
    FloquetMatrix f;
    SlowManifold m;
};

ModuleRun module_run(const HoneycombTask& h, const DriveSchedule& s, int truncation)
{
    ModuleRun r;
    r.setup = build_module_hamiltonian(h.lattice, s, h.params, truncation);
    std::vector<double> mf;
    for (auto& m : r.setup.modes)
        mf.push_back(m.frequency);
    const auto fh = build_fourier_components(r.setup.circuit, mf);
    r.f = apply_rotating_frame(assemble_floquet_matrix(fh, r.setup.modes), r.setup.frame);
    ManifoldOptions o;
    o.states = r.setup.slow_states;
    o.gap_min = h.gap_min;
    r.m = identify_slow_manifold(r.f, o);
    return r;
}

DriveSchedule honeycomb_schedule(const HoneycombTask& h, int truncation, int order)
{
    if (h.schedule)
        return *h.schedule;
    CouplingProbe probe;
    if (h.correct)
        probe = [&](const DriveSchedule& s) {
            const auto r = module_run(h, s, truncation);
            const auto eff = effective_hamiltonian(r.f, r.m, order);
            std::vector<double> out;
            for (size_t e = 0; e < h.lattice.edges.size(); ++e)
                out.push_back(std::abs(eff.coefficient(edge_label(h.lattice, int(e)))));
            return out;
        };
    return compile_drive_schedule(h.lattice, honeycomb_frequencies(h), h.targets, h.scheme,
                                  h.params, probe);
}

const HoneycombTask& honeycomb_of(const RunConfig& cfg)
{
    if (!cfg.honeycomb)
        throw UsageError("task '" + cfg.task + "' needs a honeycomb section");
    return *cfg.honeycomb;
}

void run_honeycomb_compile(const RunConfig& cfg, const RunOptions& opt, Provenance prov,
                           Writer& w)
{
    const auto& h = honeycomb_of(cfg);
    const int trunc = opt.truncation_override.value_or(h.truncation);
    const int order = opt.order.value_or(h.order);
    if (h.correct) {
        prov.truncations.assign(h.lattice.n_vertices(), trunc);
        prov.orders = {order};
    }
    const DriveSchedule s = honeycomb_schedule(h, trunc, order);
    json out = {{"provenance", provenance_json(prov)},
                {"schedule", schedule_to_json(s, h.lattice)},
                {"targets", {{"j_xx", h.targets.j_xx}, {"j_yy", h.targets.j_yy}, {"j_zz", h.targets.j_zz}}}};
    w.json_file("schedule.json", out);
    const std::string table = schedule_table(s, h.lattice);
    w.file("schedule.txt", csv_header(prov) + table);
    std::cout << table;
}

void run_honeycomb_validate(const RunConfig& cfg, const RunOptions& opt, Provenance prov,
                            Writer& w)
{
    const auto& h = honeycomb_of(cfg);
    const int trunc = opt.truncation_override.value_or(h.truncation);
    const int order = opt.order.value_or(h.order);
    prov.truncations.assign(h.lattice.n_vertices(), trunc);
    prov.orders = {order};
    const DriveSchedule s = honeycomb_schedule(h, trunc, order);
    const ModuleRun r = module_run(h, s, trunc);
    const auto eff = effective_hamiltonian(r.f, r.m, order);
    const auto d = validate_adiabaticity(r.f, r.m, h.window);

    std::string csv = csv_header(prov) + "eps_GHz,t_max_GHz,ratio\n";
    for (auto& row : d.table)
        csv += num(row.eps) + "," + num(row.t_max) + "," + num(row.ratio) + "\n";
    w.file("diagnostics.csv", csv);

    json edges = json::array();
    for (size_t e = 0; e < h.lattice.edges.size(); ++e) {
        const auto label = edge_label(h.lattice, int(e));
        edges.push_back({{"edge", e + 1},
                         {"type", to_string(h.lattice.edges[e].type)},
                         {"label", label},
                         {"target", h.targets.of(h.lattice.edges[e].type)},
                         {"effective", eff.coefficient(label)}});
    }
    json out = {{"provenance", provenance_json(prov)},
                {"schedule", schedule_to_json(s, h.lattice)},
                {"effective", effective_to_json(eff)},
                {"edges", edges},
                {"diagnostics",
                 {{"t_max", d.t_max},
                  {"gap", d.gap},
                  {"max_ratio", d.max_ratio},
                  {"resonant_coupled", d.resonant_coupled},
                  {"pass", d.pass}}}};
    w.json_file("module.json", out);
    print_effective(eff);
    std::printf("adiabaticity: t_max %.3f MHz, gap %.3f GHz, max ratio %.4f -> %s\n",
                d.t_max * 1e3, d.gap, d.max_ratio, d.pass ? "pass" : "fail");
    if (!d.pass)
        throw PhysicsError("adiabaticity check failed: max t_max/eps = " + num(d.max_ratio)
                           + ", coupled resonant fast states " + std::to_string(d.resonant_coupled));
}

// ----------------------------------------------------------------- catalog

void run_catalog(const RunConfig& cfg, const RunOptions&, Provenance prov, Writer& w)
{
    if (!cfg.catalog)
        throw UsageError("task 'catalog' needs a catalog section");
    const auto p = evaluate_catalog(*cfg.catalog);
    json out = catalog_to_json(p);
    out["provenance"] = provenance_json(prov);
    out["inputs"] = cfg.catalog->inputs;
    w.json_file("catalog.json", out);
    std::printf("%s:", p.scheme.c_str());
    std::printf(" dw1=%.4f dw2=%.4f", p.delta_omega1.total() * 1e3, p.delta_omega2.total() * 1e3);
    for (auto& [name, s] : p.couplings)
        std::printf(" %s=%.4f", name.c_str(), s.total() * 1e3);
    std::printf("  [MHz]\n");
    for (auto& f : p.flags)
        std::printf("  flag: %s\n", f.c_str());
}

// Strict reader for catalog inputs.
class Inputs {
public:
    explicit Inputs(const json& j) : j_(j)
    {
        if (!j_.is_object())
            throw UsageError("catalog inputs must be an object");
    }

    double get(const std::string& k, std::optional<double> fallback = std::nullopt)
    {
        used_.insert(k);
        if (!j_.contains(k)) {
            if (fallback)
                return *fallback;
            throw UsageError("catalog input '" + k + "' missing");
        }
        if (!j_.at(k).is_number())
            throw UsageError("catalog input '" + k + "' must be a number");
        return j_.at(k).get<double>();
    }

    std::string str(const std::string& k, const std::string& fallback)
    {
        used_.insert(k);
        if (!j_.contains(k))
            return fallback;
        if (!j_.at(k).is_string())
            throw UsageError("catalog input '" + k + "' must be a string");
        return j_.at(k).get<std::string>();
    }

    void done() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!used_.count(it.key()))
                throw UsageError("catalog input '" + it.key() + "' is not used by this scheme");
    }

private:
    const json& j_;
    std::set<std::string> used_;
};

CouplerInputs coupler_inputs(Inputs& in)
{
    CouplerInputs c;
    c.w1 = in.get("w1");
    c.w2 = in.get("w2");
    c.g_x = in.get("g_x");
    c.g_1 = in.get("g_1", 0.0);
    c.g_2 = in.get("g_2", 0.0);
    c.g_z = in.get("g_z", 0.0);
    c.phi_ac = in.get("phi_ac");
    c.phi_dc = in.get("phi_dc", std::numbers::pi);
    c.theta = in.get("theta", 0.0);
    return c;
}

using TaskFn = void (*)(const RunConfig&, const RunOptions&, Provenance, Writer&);

}  // namespace

InteractionParams evaluate_catalog(const CatalogTask& task)
{
    Inputs in(task.inputs);
    InteractionParams p;
    const std::string& s = task.scheme;
    if (s == "zx" || s == "squeezing" || s == "hopping") {
        const double w1 = in.get("w1"), w2 = in.get("w2"), b = in.get("b"), eta = in.get("eta");
        const double th = in.get("theta", 0.0);
        p = s == "zx"          ? zx_params(w1, w2, b, eta, th)
            : s == "squeezing" ? squeezing_params(w1, w2, b, eta, th)
                               : hopping_params(w1, w2, b, eta, th);
    } else if (s == "xx_yy") {
        const double w1 = in.get("w1"), w2 = in.get("w2"), b = in.get("b");
        const double e11 = in.get("eta11"), e21 = in.get("eta21"), e12 = in.get("eta12"),
                     e22 = in.get("eta22");
        const std::string ph = in.str("phase", "aligned");
        if (ph != "aligned" && ph != "quadrature")
            throw UsageError("catalog phase must be aligned or quadrature");
        p = bimodal_xx_yy_params(w1, w2, b, e11, e21, e12, e22,
                                 ph == "aligned" ? BimodalPhase::aligned
                                                 : BimodalPhase::quadrature);
    } else if (s == "zz_bimodal") {
        const double w1 = in.get("w1"), w2 = in.get("w2"), b = in.get("b");
        const double e11 = in.get("eta11"), e12 = in.get("eta12"), e21 = in.get("eta21"),
                     e22 = in.get("eta22");
        p = bimodal_zz_params(w1, w2, b, e11, e12, e21, e22);
    } else if (s == "coupler") {
        p = coupler_params(coupler_inputs(in));
    } else if (s == "coupler_jyy_suppression") {
        const auto j = jyy_suppression(coupler_inputs(in));
        p.scheme = s;
        p.couplings["J_yy"].set(3, j.j_yy);
        p.couplings["D_y"].set(1, j.d_y);
        p.couplings["delta_phi_ac"].set(0, j.delta_phi);
        p.couplings["delta_phi_ac_printed_estimate"].set(0, j.approx_delta_phi);
    } else if (s == "multiphoton") {
        const double kd = in.get("k");
        if (kd != std::floor(kd) || kd < 1)
            throw UsageError("catalog input 'k' must be a positive integer");
        const std::string kind = in.str("kind", "zx");
        const std::string axis = in.str("axis", "x");
        MultiphotonKind mk;
        if (kind == "zx")
            mk = MultiphotonKind::zx;
        else if (kind == "squeezing")
            mk = MultiphotonKind::squeezing;
        else if (kind == "hopping")
            mk = MultiphotonKind::hopping;
        else
            throw UsageError("catalog kind must be zx, squeezing or hopping");
        if (axis != "x" && axis != "z")
            throw UsageError("catalog axis must be x or z");
        p = multiphoton_params(int(kd), mk, axis[0], in.get("w1"), in.get("w2"), in.get("b"),
                               in.get("eta"));
    } else {
        throw UsageError("unknown catalog scheme '" + s + "'");
    }
    in.done();
    return p;
}

std::vector<std::string> run_task(const RunConfig& config, const RunOptions& options)
{
    const std::string task = options.task.value_or(config.task);
    static const std::map<std::string, TaskFn> tasks = {
        {"spectrum", run_spectrum},
        {"effective", run_effective},
        {"sweep", run_sweep},
        {"probability", run_probability},
        {"honeycomb-compile", run_honeycomb_compile},
        {"honeycomb-validate", run_honeycomb_validate},
        {"catalog", run_catalog},
    };
    auto it = tasks.find(task);
    if (it == tasks.end())
        throw UsageError(task.empty() ? "no task given" : "unknown task '" + task + "'");
    if (options.threads < 1)
        throw UsageError("--threads must be at least 1");
    if (options.truncation_override && *options.truncation_override < 1)
        throw UsageError("--truncation-override must be positive");
    if (options.order && *options.order < 1)
        throw UsageError("--order must be positive");
    for (auto& warning : config.warnings)
        std::cerr << "warning: " << warning << "\n";

    RunConfig cfg = config;
    cfg.task = task;
    Provenance prov;
    prov.hash = config_hash(config.document, options);
    prov.task = task;
    prov.timestamp = timestamp();
    Writer w{options.out_dir, {}};
    it->second(cfg, options, prov, w);
    return w.written;
}

}  // namespace floq
