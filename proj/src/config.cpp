#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "floq/io.hpp"

namespace floq {

namespace {

// Collects schema violations instead of stopping at the first one.
class Checker {
public:
    std::vector<std::string> errors;

    void fail(const std::string& path, const std::string& msg)
    {
        errors.push_back((path.empty() ? "/" : path) + ": " + msg);
    }

    bool object(const json& j, const std::string& path)
    {
        if (!j.is_object()) {
            fail(path, "expected an object");
            return false;
        }
        return true;
    }

    bool array(const json& j, const std::string& path)
    {
        if (!j.is_array()) {
            fail(path, "expected an array");
            return false;
        }
        return true;
    }

    void keys(const json& o, const std::string& path, const std::set<std::string>& allowed)
    {
        for (auto it = o.begin(); it != o.end(); ++it)
            if (!allowed.count(it.key()))
                fail(path + "/" + it.key(), "unknown key");
    }

    double number(const json& o, const std::string& path, const std::string& key,
                  std::optional<double> fallback = std::nullopt)
    {
        if (!o.contains(key)) {
            if (!fallback)
                fail(path + "/" + key, "required number missing");
            return fallback.value_or(0.0);
        }
        const json& v = o.at(key);
        if (!v.is_number() || !std::isfinite(v.get<double>())) {
            fail(path + "/" + key, "expected a finite number");
            return fallback.value_or(0.0);
        }
        return v.get<double>();
    }

    int integer(const json& o, const std::string& path, const std::string& key,
                std::optional<int> fallback = std::nullopt)
    {
        if (!o.contains(key)) {
            if (!fallback)
                fail(path + "/" + key, "required integer missing");
            return fallback.value_or(0);
        }
        const json& v = o.at(key);
        if (!v.is_number_integer()) {
            fail(path + "/" + key, "expected an integer");
            return fallback.value_or(0);
        }
        return v.get<int>();
    }

    bool boolean(const json& o, const std::string& path, const std::string& key, bool fallback)
    {
        if (!o.contains(key))
            return fallback;
        if (!o.at(key).is_boolean()) {
            fail(path + "/" + key, "expected true or false");
            return fallback;
        }
        return o.at(key).get<bool>();
    }

    std::string string(const json& o, const std::string& path, const std::string& key,
                       std::optional<std::string> fallback = std::nullopt)
    {
        if (!o.contains(key)) {
            if (!fallback)
                fail(path + "/" + key, "required string missing");
            return fallback.value_or("");
        }
        if (!o.at(key).is_string()) {
            fail(path + "/" + key, "expected a string");
            return fallback.value_or("");
        }
        return o.at(key).get<std::string>();
    }

    std::vector<double> numbers(const json& v, const std::string& path)
    {
        std::vector<double> out;
        if (!array(v, path))
            return out;
        for (size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number())
                fail(path + "/" + std::to_string(i), "expected a number");
            else
                out.push_back(v[i].get<double>());
        }
        return out;
    }

    std::vector<int> integers(const json& v, const std::string& path)
    {
        std::vector<int> out;
        if (!array(v, path))
            return out;
        for (size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number_integer())
                fail(path + "/" + std::to_string(i), "expected an integer");
            else
                out.push_back(v[i].get<int>());
        }
        return out;
    }

    // Either an explicit list or {"start", "stop", "num"} (inclusive ends).
    std::vector<double> grid(const json& v, const std::string& path)
    {
        if (v.is_array())
            return numbers(v, path);
        if (!object(v, path))
            return {};
        keys(v, path, {"start", "stop", "num"});
        const double a = number(v, path, "start");
        const double b = number(v, path, "stop");
        const int n = integer(v, path, "num");
        if (n < 1) {
            fail(path + "/num", "must be at least 1");
            return {};
        }
        std::vector<double> out(n);
        for (int i = 0; i < n; ++i)
            out[i] = n == 1 ? a : a + (b - a) * double(i) / double(n - 1);
        return out;
    }
};

const std::set<std::string> kTasks = {"spectrum",          "effective",          "sweep",
                                      "probability",       "honeycomb-compile",
                                      "honeycomb-validate", "catalog"};

std::vector<Tone> parse_tones(Checker& c, const json& arr, const std::string& path,
                              const std::vector<double>& modes)
{
    std::vector<Tone> tones;
    if (!c.array(arr, path))
        return tones;
    for (size_t i = 0; i < arr.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        const json& t = arr[i];
        if (!c.object(t, p))
            continue;
        c.keys(t, p, {"amplitude", "frequency", "theta", "key"});
        Tone tone;
        tone.amplitude = c.number(t, p, "amplitude");
        tone.theta = c.number(t, p, "theta", 0.0);
        if (t.contains("key")) {
            Key k = c.integers(t.at("key"), p + "/key");
            if (k.size() != modes.size()) {
                c.fail(p + "/key", "needs one entry per mode");
                continue;
            }
            double f = 0.0;
            for (size_t m = 0; m < k.size(); ++m)
                f += k[m] * modes[m];
            if (t.contains("frequency")) {
                const double given = c.number(t, p, "frequency");
                if (std::abs(std::abs(given) - std::abs(f)) > 1e-9 * std::max(1.0, std::abs(f)))
                    c.fail(p, "frequency does not match the key");
            }
            tone.frequency = f;
            tone.key = k;
        } else if (t.contains("frequency")) {
            tone.frequency = c.number(t, p, "frequency");
            if (modes.empty()) {
                c.fail(p, "tone frequency given but no modes are declared");
                continue;
            }
            try {
                tone.key = resolve_tone(tone.frequency, modes, "tone " + p);
            } catch (const UsageError& e) {
                c.errors.push_back(e.what());  // already names the tone
            }
        } else {
            c.fail(p, "tone needs a frequency or a key");
        }
        tones.push_back(tone);
    }
    return tones;
}

int qubit_ref(Checker& c, const json& v, const std::string& path, int n_qubits)
{
    if (!v.is_number_integer()) {
        c.fail(path, "expected a 1-based qubit number");
        return 0;
    }
    const int q = v.get<int>();
    if (q < 1 || q > n_qubits) {
        c.fail(path, "qubit " + std::to_string(q) + " out of range");
        return 0;
    }
    return q - 1;
}

void parse_circuit(Checker& c, const json& j, RunConfig& cfg)
{
    const std::string path = "/circuit";
    if (!c.object(j, path))
        return;
    c.keys(j, path, {"qubits", "couplings", "drives"});
    if (!j.contains("qubits")) {
        c.fail(path + "/qubits", "required array missing");
        return;
    }
    const std::vector<double> modes = cfg.mode_frequencies();
    const json& qs = j.at("qubits");
    if (c.array(qs, path + "/qubits")) {
        for (size_t i = 0; i < qs.size(); ++i) {
            const std::string p = path + "/qubits/" + std::to_string(i);
            if (!c.object(qs[i], p))
                continue;
            c.keys(qs[i], p, {"omega", "E_J", "E_C"});
            QubitSpec q;
            if (qs[i].contains("omega")) {
                if (qs[i].contains("E_J") || qs[i].contains("E_C"))
                    c.fail(p, "give omega or (E_J, E_C), not both");
                q.omega = c.number(qs[i], p, "omega");
            } else {
                const double ej = c.number(qs[i], p, "E_J");
                const double ec = c.number(qs[i], p, "E_C");
                if (ej > 0.0 && ec > 0.0) {
                    try {
                        q.transmon = quantize_transmon(ej, ec);
                        q.omega = q.transmon->omega;
                        for (auto& w : q.transmon->warnings)
                            cfg.warnings.push_back(p + ": " + w);
                    } catch (const std::exception& e) {
                        c.fail(p, e.what());
                    }
                } else {
                    c.fail(p, "E_J and E_C must be positive");
                }
            }
            cfg.circuit.qubits.push_back(q);
        }
    }
    const int n = int(cfg.circuit.qubits.size());

    if (j.contains("couplings") && c.array(j.at("couplings"), path + "/couplings")) {
        const json& cs = j.at("couplings");
        for (size_t i = 0; i < cs.size(); ++i) {
            const std::string p = path + "/couplings/" + std::to_string(i);
            const json& o = cs[i];
            if (!c.object(o, p))
                continue;
            Coupling cp;
            if (!o.contains("qubits") || !o.at("qubits").is_array() || o.at("qubits").size() != 2) {
                c.fail(p + "/qubits", "expected a pair of 1-based qubit numbers");
            } else {
                cp.i = qubit_ref(c, o.at("qubits")[0], p + "/qubits/0", n);
                cp.j = qubit_ref(c, o.at("qubits")[1], p + "/qubits/1", n);
            }
            const std::string type = c.string(o, p, "type");
            if (type == "capacitive") {
                c.keys(o, p, {"qubits", "type", "g_c"});
                cp.kind = CapacitiveCoupling{c.number(o, p, "g_c")};
            } else if (type == "static") {
                c.keys(o, p, {"qubits", "type", "g_xx", "g_yy", "g_zz"});
                cp.kind = StaticCoupling{c.number(o, p, "g_xx", 0.0), c.number(o, p, "g_yy", 0.0),
                                         c.number(o, p, "g_zz", 0.0)};
            } else if (type == "squid") {
                c.keys(o, p,
                       {"qubits", "type", "g_x", "g_z", "g_1", "g_2", "phi_dc",
                        "include_capacitive_yy", "g_c", "tones"});
                SquidCoupler sq;
                sq.g_x = c.number(o, p, "g_x");
                sq.g_z = c.number(o, p, "g_z", 0.0);
                sq.g_1 = c.number(o, p, "g_1", 0.0);
                sq.g_2 = c.number(o, p, "g_2", 0.0);
                sq.phi_dc = c.number(o, p, "phi_dc");
                sq.include_capacitive_yy = c.boolean(o, p, "include_capacitive_yy", false);
                sq.g_c = c.number(o, p, "g_c", 0.0);
                if (o.contains("tones"))
                    sq.tones = parse_tones(c, o.at("tones"), p + "/tones", modes);
                cp.kind = sq;
            } else if (!type.empty()) {
                c.fail(p + "/type", "unknown coupling type '" + type + "'");
            }
            cfg.circuit.couplings.push_back(cp);
        }
    }

    if (j.contains("drives") && c.array(j.at("drives"), path + "/drives")) {
        const json& ds = j.at("drives");
        for (size_t i = 0; i < ds.size(); ++i) {
            const std::string p = path + "/drives/" + std::to_string(i);
            const json& o = ds[i];
            if (!c.object(o, p))
                continue;
            c.keys(o, p, {"qubit", "axis", "tones"});
            DriveSpec d;
            if (o.contains("qubit"))
                d.qubit = qubit_ref(c, o.at("qubit"), p + "/qubit", n);
            else
                c.fail(p + "/qubit", "required qubit missing");
            const std::string axis = c.string(o, p, "axis");
            if (axis == "x" || axis == "y" || axis == "z")
                d.axis = axis[0];
            else
                c.fail(p + "/axis", "axis must be x, y or z");
            if (o.contains("tones"))
                d.tones = parse_tones(c, o.at("tones"), p + "/tones", modes);
            else
                c.fail(p + "/tones", "required array missing");
            cfg.circuit.drives.push_back(d);
        }
    }
    if (c.errors.empty()) {
        try {
            for (auto& w : cfg.circuit.validate())
                cfg.warnings.push_back(w);
        } catch (const UsageError& e) {
            c.fail(path, e.what());
        }
    }
    cfg.has_circuit = true;
}

HoneycombLattice parse_lattice(Checker& c, const json& j, const std::string& path)
{
    HoneycombLattice lat;
    if (!c.object(j, path))
        return lat;
    if (j.contains("preset")) {
        const std::string preset = c.string(j, path, "preset");
        if (preset == "module") {
            c.keys(j, path, {"preset", "bands"});
            if (j.contains("bands"))
                lat = HoneycombLattice::module(c.integers(j.at("bands"), path + "/bands"));
            else
                lat = HoneycombLattice::module();
        } else if (preset == "plaquette") {
            c.keys(j, path, {"preset"});
            lat = HoneycombLattice::plaquette();
        } else if (preset == "brick_wall") {
            c.keys(j, path, {"preset", "rows", "cols"});
            const int r = c.integer(j, path, "rows");
            const int k = c.integer(j, path, "cols");
            if (r < 1 || k < 1)
                c.fail(path, "rows and cols must be positive");
            else
                lat = HoneycombLattice::brick_wall(r, k);
        } else {
            c.fail(path + "/preset", "unknown preset '" + preset + "'");
        }
        return lat;
    }
    c.keys(j, path, {"bands", "edges"});
    if (j.contains("bands"))
        lat.band = c.integers(j.at("bands"), path + "/bands");
    else
        c.fail(path + "/bands", "required array missing");
    const int n = lat.n_vertices();
    if (j.contains("edges") && c.array(j.at("edges"), path + "/edges")) {
        const json& es = j.at("edges");
        for (size_t i = 0; i < es.size(); ++i) {
            const std::string p = path + "/edges/" + std::to_string(i);
            if (!c.object(es[i], p))
                continue;
            c.keys(es[i], p, {"left", "right", "type"});
            Edge e;
            e.left = es[i].contains("left") ? qubit_ref(c, es[i].at("left"), p + "/left", n) : 0;
            e.right =
                es[i].contains("right") ? qubit_ref(c, es[i].at("right"), p + "/right", n) : 0;
            try {
                e.type = link_type_from_string(c.string(es[i], p, "type"));
            } catch (const UsageError& err) {
                c.fail(p + "/type", err.what());
            }
            lat.edges.push_back(e);
        }
    } else {
        c.fail(path + "/edges", "required array missing");
    }
    return lat;
}

void parse_honeycomb(Checker& c, const json& j, RunConfig& cfg)
{
    const std::string path = "/honeycomb";
    if (!c.object(j, path))
        return;
    c.keys(j, path,
           {"lattice", "frequencies", "palette", "delta_nn", "delta_nnn", "scheme", "targets",
            "params", "truncation", "order", "correct", "window", "gap_min", "schedule"});
    HoneycombTask h;
    if (j.contains("lattice"))
        h.lattice = parse_lattice(c, j.at("lattice"), path + "/lattice");
    else
        c.fail(path + "/lattice", "required object missing");
    if (c.errors.empty()) {
        try {
            h.lattice.validate();
        } catch (const UsageError& e) {
            c.fail(path + "/lattice", e.what());
        }
    }
    if (j.contains("frequencies")) {
        h.frequencies = c.numbers(j.at("frequencies"), path + "/frequencies");
        if (int(h.frequencies->size()) != h.lattice.n_vertices())
            c.fail(path + "/frequencies", "needs one frequency per vertex");
    } else if (j.contains("palette")) {
        const json& p = j.at("palette");
        if (c.object(p, path + "/palette")) {
            c.keys(p, path + "/palette", {"band0", "band1"});
            BandPalette bp;
            if (p.contains("band0"))
                bp.band0 = c.numbers(p.at("band0"), path + "/palette/band0");
            if (p.contains("band1"))
                bp.band1 = c.numbers(p.at("band1"), path + "/palette/band1");
            h.palette = bp;
        }
        h.delta_nn = c.number(j, path, "delta_nn");
        h.delta_nnn = c.number(j, path, "delta_nnn");
    } else {
        c.fail(path, "give frequencies or a palette");
    }
    try {
        h.scheme = module_scheme_from_string(c.string(j, path, "scheme", "driven_qubit"));
    } catch (const UsageError& e) {
        c.fail(path + "/scheme", e.what());
    }
    if (j.contains("targets") && c.object(j.at("targets"), path + "/targets")) {
        const json& t = j.at("targets");
        c.keys(t, path + "/targets", {"j_xx", "j_yy", "j_zz"});
        h.targets = {c.number(t, path + "/targets", "j_xx", 0.0),
                     c.number(t, path + "/targets", "j_yy", 0.0),
                     c.number(t, path + "/targets", "j_zz", 0.0)};
    }
    if (j.contains("params") && c.object(j.at("params"), path + "/params")) {
        const json& p = j.at("params");
        const std::string pp = path + "/params";
        c.keys(p, pp,
               {"g_c", "zz_g_x", "coupler_g_x", "coupler_g_z", "coupler_g_j", "max_amplitude"});
        ModuleParams d;
        h.params = {c.number(p, pp, "g_c", d.g_c),
                    c.number(p, pp, "zz_g_x", d.zz_g_x),
                    c.number(p, pp, "coupler_g_x", d.coupler_g_x),
                    c.number(p, pp, "coupler_g_z", d.coupler_g_z),
                    c.number(p, pp, "coupler_g_j", d.coupler_g_j),
                    c.number(p, pp, "max_amplitude", d.max_amplitude)};
    }
    h.truncation = c.integer(j, path, "truncation", 4);
    h.order = c.integer(j, path, "order", 6);
    h.correct = c.boolean(j, path, "correct", false);
    h.window = c.number(j, path, "window", 1.0);
    h.gap_min = c.number(j, path, "gap_min", 0.02);
    if (h.truncation < 1)
        c.fail(path + "/truncation", "must be positive");
    if (h.order < 2)
        c.fail(path + "/order", "must be at least 2");
    if (j.contains("schedule") && c.errors.empty()) {
        try {
            const std::vector<double> w =
                h.frequencies ? *h.frequencies
                              : assign_frequencies(h.lattice, *h.palette, h.delta_nn, h.delta_nnn);
            h.schedule = schedule_from_json(j.at("schedule"), h.lattice, w, h.scheme);
        } catch (const UsageError& e) {
            c.fail(path + "/schedule", e.what());
        }
    }
    cfg.honeycomb = h;
}

void parse_sections(Checker& c, const json& doc, RunConfig& cfg)
{
    if (doc.contains("effective") && c.object(doc.at("effective"), "/effective")) {
        const json& e = doc.at("effective");
        c.keys(e, "/effective", {"orders", "exact"});
        if (e.contains("orders"))
            cfg.effective.orders = c.integers(e.at("orders"), "/effective/orders");
        for (int p : cfg.effective.orders)
            if (p < 1)
                c.fail("/effective/orders", "orders must be positive");
        cfg.effective.exact = c.string(e, "/effective", "exact", "dense");
        if (cfg.effective.exact != "dense" && cfg.effective.exact != "self_consistent"
            && cfg.effective.exact != "none")
            c.fail("/effective/exact", "expected dense, self_consistent or none");
    }
    if (doc.contains("spectrum") && c.object(doc.at("spectrum"), "/spectrum")) {
        const json& s = doc.at("spectrum");
        c.keys(s, "/spectrum", {"method", "center", "count"});
        cfg.spectrum.method = c.string(s, "/spectrum", "method", "dense");
        cfg.spectrum.center = c.number(s, "/spectrum", "center", 0.0);
        cfg.spectrum.count = c.integer(s, "/spectrum", "count", 0);
        if (cfg.spectrum.method != "dense" && cfg.spectrum.method != "window")
            c.fail("/spectrum/method", "expected dense or window");
        if (cfg.spectrum.method == "window" && cfg.spectrum.count < 1)
            c.fail("/spectrum/count", "window method needs a positive count");
    }
    if (doc.contains("sweep") && c.object(doc.at("sweep"), "/sweep")) {
        const json& s = doc.at("sweep");
        c.keys(s, "/sweep", {"axes", "observable", "track", "order", "terms", "transitions"});
        if (s.contains("axes") && c.array(s.at("axes"), "/sweep/axes")) {
            for (size_t i = 0; i < s.at("axes").size(); ++i) {
                const std::string p = "/sweep/axes/" + std::to_string(i);
                const json& a = s.at("axes")[i];
                if (!c.object(a, p))
                    continue;
                c.keys(a, p, {"paths", "values"});
                SweepAxis ax;
                if (a.contains("paths") && c.array(a.at("paths"), p + "/paths")) {
                    for (auto& x : a.at("paths")) {
                        if (!x.is_string()) {
                            c.fail(p + "/paths", "expected JSON pointer strings");
                            continue;
                        }
                        const std::string ptr = x.get<std::string>();
                        try {
                            json::json_pointer jp(ptr);
                            if (!doc.contains(jp) || !doc.at(jp).is_number())
                                c.fail(p + "/paths", "'" + ptr + "' does not name a number");
                        } catch (const json::exception&) {
                            c.fail(p + "/paths", "'" + ptr + "' is not a JSON pointer");
                        }
                        ax.paths.push_back(ptr);
                    }
                } else {
                    c.fail(p + "/paths", "required array missing");
                }
                if (a.contains("values"))
                    ax.values = c.grid(a.at("values"), p + "/values");
                else
                    c.fail(p + "/values", "required grid missing");
                cfg.sweep.axes.push_back(ax);
            }
        } else {
            c.fail("/sweep/axes", "required array missing");
        }
        cfg.sweep.observable = c.string(s, "/sweep", "observable", "quasienergies");
        if (cfg.sweep.observable != "quasienergies" && cfg.sweep.observable != "effective"
            && cfg.sweep.observable != "probability")
            c.fail("/sweep/observable", "expected quasienergies, effective or probability");
        cfg.sweep.track = c.integer(s, "/sweep", "track", 8);
        cfg.sweep.order = c.integer(s, "/sweep", "order", 2);
        if (s.contains("terms") && c.array(s.at("terms"), "/sweep/terms"))
            for (auto& t : s.at("terms"))
                cfg.sweep.terms.push_back(t.is_string() ? t.get<std::string>() : "");
        if (s.contains("transitions") && c.array(s.at("transitions"), "/sweep/transitions"))
            for (auto& t : s.at("transitions")) {
                if (!t.is_array() || t.size() != 2 || !t[0].is_string() || !t[1].is_string()) {
                    c.fail("/sweep/transitions", "expected pairs of state labels");
                    continue;
                }
                cfg.sweep.transitions.emplace_back(t[0].get<std::string>(),
                                                   t[1].get<std::string>());
            }
        if (cfg.sweep.observable == "probability" && cfg.sweep.transitions.empty())
            c.fail("/sweep/transitions", "probability sweeps need at least one transition");
    }
    if (doc.contains("probability") && c.object(doc.at("probability"), "/probability")) {
        const json& s = doc.at("probability");
        c.keys(s, "/probability", {"initial", "final", "times", "form", "oracle"});
        cfg.probability.initial = c.string(s, "/probability", "initial");
        cfg.probability.final_state = c.string(s, "/probability", "final");
        if (s.contains("times"))
            cfg.probability.times = c.grid(s.at("times"), "/probability/times");
        cfg.probability.form = c.string(s, "/probability", "form", "amplitude");
        if (cfg.probability.form != "amplitude" && cfg.probability.form != "incoherent")
            c.fail("/probability/form", "expected amplitude or incoherent");
        cfg.probability.oracle = c.boolean(s, "/probability", "oracle", false);
    }
    if (doc.contains("catalog") && c.object(doc.at("catalog"), "/catalog")) {
        const json& s = doc.at("catalog");
        CatalogTask t;
        t.scheme = c.string(s, "/catalog", "scheme");
        t.inputs = s;
        t.inputs.erase("scheme");
        try {
            evaluate_catalog(t);
        } catch (const UsageError& e) {
            c.fail("/catalog", e.what());
        }
        cfg.catalog = t;
    }
}

}  // namespace

std::vector<double> RunConfig::mode_frequencies() const
{
    std::vector<double> out;
    for (auto& m : modes)
        out.push_back(m.frequency);
    return out;
}

RunConfig parse_config_json(const json& doc)
{
    Checker c;
    RunConfig cfg;
    cfg.document = doc;
    if (!c.object(doc, ""))
        throw UsageError("config: document must be a JSON object");
    c.keys(doc, "",
           {"units", "task", "circuit", "modes", "frame", "slow_states", "manifold", "effective",
            "spectrum", "sweep", "probability", "honeycomb", "catalog"});
    if (!doc.contains("units"))
        c.fail("/units", "unit annotation missing (expected \"" + std::string(kUnits) + "\")");
    else if (doc.at("units") != kUnits)
        c.fail("/units", "unsupported units, expected \"" + std::string(kUnits) + "\"");
    cfg.task = c.string(doc, "", "task");
    if (!cfg.task.empty() && !kTasks.count(cfg.task))
        c.fail("/task", "unknown task '" + cfg.task + "'");

    if (doc.contains("modes") && c.array(doc.at("modes"), "/modes")) {
        const json& ms = doc.at("modes");
        for (size_t i = 0; i < ms.size(); ++i) {
            const std::string p = "/modes/" + std::to_string(i);
            if (!c.object(ms[i], p))
                continue;
            c.keys(ms[i], p, {"frequency", "truncation"});
            ModeSpec m;
            m.frequency = c.number(ms[i], p, "frequency");
            m.truncation = c.integer(ms[i], p, "truncation", 8);
            if (m.frequency <= 0.0)
                c.fail(p + "/frequency", "must be positive");
            if (m.truncation < 1)
                c.fail(p + "/truncation", "must be positive");
            cfg.modes.push_back(m);
        }
        if (c.errors.empty()) {
            try {
                check_incommensurate(cfg.mode_frequencies());
            } catch (const UsageError& e) {
                c.fail("/modes", e.what());
            }
        }
    }
    if (doc.contains("circuit"))
        parse_circuit(c, doc.at("circuit"), cfg);
    const int n = int(cfg.circuit.qubits.size());

    if (doc.contains("frame")) {
        cfg.frame = c.numbers(doc.at("frame"), "/frame");
        if (int(cfg.frame->size()) != n)
            c.fail("/frame", "needs one frequency per qubit");
    }
    if (doc.contains("slow_states") && c.array(doc.at("slow_states"), "/slow_states")) {
        const json& ss = doc.at("slow_states");
        for (size_t i = 0; i < ss.size(); ++i) {
            const std::string p = "/slow_states/" + std::to_string(i);
            if (!c.object(ss[i], p))
                continue;
            c.keys(ss[i], p, {"state", "m"});
            CompositeIndex ci;
            try {
                ci.alpha = parse_qubit_state(c.string(ss[i], p, "state"), n);
            } catch (const UsageError& e) {
                c.fail(p + "/state", e.what());
            }
            if (ss[i].contains("m"))
                ci.m = c.integers(ss[i].at("m"), p + "/m");
            if (ci.m.size() != cfg.modes.size())
                c.fail(p + "/m", "needs one photon index per mode");
            cfg.manifold.states.push_back(ci);
        }
    }
    if (doc.contains("manifold") && c.object(doc.at("manifold"), "/manifold")) {
        const json& m = doc.at("manifold");
        c.keys(m, "/manifold", {"degeneracy_tol", "gap_min"});
        cfg.manifold.degeneracy_tol = c.number(m, "/manifold", "degeneracy_tol", 1e-6);
        cfg.manifold.gap_min = c.number(m, "/manifold", "gap_min", 0.05);
    }
    parse_sections(c, doc, cfg);
    if (doc.contains("honeycomb"))
        parse_honeycomb(c, doc.at("honeycomb"), cfg);

    if (!c.errors.empty()) {
        std::ostringstream os;
        os << "config has " << c.errors.size() << " schema violation"
           << (c.errors.size() > 1 ? "s" : "") << ":";
        for (auto& e : c.errors)
            os << "\n  " << e;
        throw UsageError(os.str());
    }
    return cfg;
}

RunConfig parse_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open config '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("config '" + path + "' is not well-formed JSON: " + e.what());
    }
    return parse_config_json(doc);
}

Index parse_qubit_state(const std::string& s, int n_qubits)
{
    if (int(s.size()) != n_qubits)
        throw UsageError("state '" + s + "' needs " + std::to_string(n_qubits)
                         + " occupation digits");
    std::vector<int> occ;
    for (char ch : s) {
        if (ch != '0' && ch != '1')
            throw UsageError("state '" + s + "' may only contain 0 and 1");
        occ.push_back(ch - '0');
    }
    return basis_index(occ);
}

std::string qubit_state_label(Index alpha, int n_qubits)
{
    std::string s;
    for (int o : occupations(alpha, n_qubits))
        s += char('0' + o);
    return s;
}

}  // namespace floq
