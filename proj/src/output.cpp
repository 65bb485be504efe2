#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "floq/io.hpp"

namespace floq {

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const PhysicsError*>(&e))
        return 2;
    return 1;
}

std::string config_hash(const json& doc, const RunOptions& options)
{
    // Object keys are sorted by nlohmann::json, so dump() is canonical.
    json h = {{"config", doc}};
    if (options.truncation_override)
        h["truncation_override"] = *options.truncation_override;
    if (options.order)
        h["order"] = *options.order;
    if (options.task)
        h["task"] = *options.task;
    const std::string s = h.dump();
    std::uint64_t x = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        x ^= ch;
        x *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, x);
    return buf;
}

namespace {

std::string join(const std::vector<int>& v)
{
    std::string s;
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

std::string key_string(const Key& k)
{
    std::string s = "(";
    for (size_t i = 0; i < k.size(); ++i)
        s += (i ? "," : "") + std::to_string(k[i]);
    return s + ")";
}

}  // namespace

std::string csv_header(const Provenance& p)
{
    std::ostringstream os;
    os << "# units: " << kUnits << "\n"
       << "# task: " << p.task << "\n"
       << "# config_hash: " << p.hash << "\n"
       << "# truncations: " << join(p.truncations) << "\n"
       << "# orders: " << join(p.orders) << "\n"
       << "# generated: " << p.timestamp << "\n";
    return os.str();
}

json provenance_json(const Provenance& p)
{
    return {{"units", kUnits},           {"task", p.task},   {"config_hash", p.hash},
            {"truncations", p.truncations}, {"orders", p.orders}, {"generated", p.timestamp}};
}

json effective_to_json(const EffectiveSpinHamiltonian& h)
{
    json couplings = json::object();
    for (auto& [label, c] : h.couplings)
        couplings[label] = c.real();
    json out = {{"method", h.method},
                {"order", h.order},
                {"frame", h.frame},
                {"offset", h.offset},
                {"delta_omega", h.delta_omega},
                {"couplings", couplings}};
    std::vector<double> eps(h.quasienergies.data(),
                            h.quasienergies.data() + h.quasienergies.size());
    out["quasienergies"] = eps;
    return out;
}

json schedule_to_json(const DriveSchedule& s, const HoneycombLattice& lattice)
{
    json tones = json::array();
    for (auto& t : s.tones)
        tones.push_back({{"edge", t.edge + 1},
                         {"link", to_string(lattice.edges[t.edge].type)},
                         {"qubit", t.qubit + 1},
                         {"role", t.role},
                         {"key", t.key},
                         {"frequency", t.frequency},
                         {"amplitude", t.amplitude},
                         {"theta", t.theta}});
    json zz = json::array();
    for (auto& [e, g] : s.static_zz)
        zz.push_back({{"edge", e + 1}, {"value", g}});
    return {{"scheme", to_string(s.scheme)},
            {"frequencies", s.omega},
            {"tones", tones},
            {"static_zz", zz}};
}

DriveSchedule schedule_from_json(const json& j, const HoneycombLattice& lattice,
                                 const std::vector<double>& omega, ModuleScheme scheme)
{
    if (!j.is_object())
        throw UsageError("schedule must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "tones" && it.key() != "static_zz")
            throw UsageError("schedule: unknown key '" + it.key() + "'");
    DriveSchedule s;
    s.scheme = scheme;
    s.omega = omega;
    try {
        for (auto& t : j.value("tones", json::array())) {
            for (auto it = t.begin(); it != t.end(); ++it)
                if (it.key() != "edge" && it.key() != "qubit" && it.key() != "role"
                    && it.key() != "amplitude" && it.key() != "theta")
                    throw UsageError("schedule tone: unknown key '" + it.key() + "'");
            s.tones.push_back(edge_tone(lattice, omega, t.at("edge").get<int>() - 1,
                                        t.at("qubit").get<int>() - 1,
                                        t.at("role").get<std::string>(),
                                        t.at("amplitude").get<double>(), t.value("theta", 0.0)));
        }
        for (auto& z : j.value("static_zz", json::array())) {
            const int e = z.at("edge").get<int>() - 1;
            if (e < 0 || e >= int(lattice.edges.size()) || lattice.edges[e].type != LinkType::zz)
                throw UsageError("static_zz edge " + std::to_string(e + 1) + " is not a zz link");
            s.static_zz.emplace_back(e, z.at("value").get<double>());
        }
    } catch (const json::exception& e) {
        throw UsageError(std::string("schedule: ") + e.what());
    }
    return s;
}

std::string schedule_table(const DriveSchedule& s, const HoneycombLattice& lattice)
{
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-5s %-4s %-6s %-11s %-14s %12s %14s %8s\n", "edge", "link",
                  "qubit", "role", "key", "freq_GHz", "amplitude_GHz", "theta");
    os << buf;
    for (auto& t : s.tones) {
        std::snprintf(buf, sizeof buf, "%-5d %-4s %-6d %-11s %-14s %12.6f %14.6f %8.4f\n",
                      t.edge + 1, to_string(lattice.edges[t.edge].type).c_str(), t.qubit + 1,
                      t.role.c_str(), key_string(t.key).c_str(), t.frequency, t.amplitude,
                      t.theta);
        os << buf;
    }
    for (auto& [e, g] : s.static_zz) {
        std::snprintf(buf, sizeof buf, "%-5d %-4s %-6s %-11s %-14s %12s %14.6f %8s\n", e + 1,
                      "zz", "-", "static", "-", "-", g, "-");
        os << buf;
    }
    return os.str();
}

json series_to_json(const Series& s)
{
    json by_order = json::object();
    for (size_t p = 0; p < s.terms.size(); ++p)
        if (s.terms[p] != 0.0)
            by_order[std::to_string(p)] = s.terms[p];
    return {{"by_order", by_order}, {"total", s.total()}};
}

json catalog_to_json(const InteractionParams& p)
{
    json c = json::object();
    for (auto& [name, s] : p.couplings)
        c[name] = series_to_json(s);
    return {{"scheme", p.scheme},
            {"delta_omega1", series_to_json(p.delta_omega1)},
            {"delta_omega2", series_to_json(p.delta_omega2)},
            {"couplings", c},
            {"theta", p.theta},
            {"flags", p.flags}};
}

}  // namespace floq
