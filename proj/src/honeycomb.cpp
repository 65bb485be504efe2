#include "floq/honeycomb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace floq {

std::string to_string(LinkType t)
{
    switch (t) {
    case LinkType::xx:
        return "xx";
    case LinkType::yy:
        return "yy";
    case LinkType::zz:
        return "zz";
    }
    return "?";
}

LinkType link_type_from_string(const std::string& s)
{
    if (s == "xx")
        return LinkType::xx;
    if (s == "yy")
        return LinkType::yy;
    if (s == "zz")
        return LinkType::zz;
    throw UsageError("unknown link type '" + s + "' (expected xx, yy or zz)");
}

std::string to_string(ModuleScheme s)
{
    return s == ModuleScheme::driven_qubit ? "driven_qubit" : "driven_coupler";
}

ModuleScheme module_scheme_from_string(const std::string& s)
{
    if (s == "driven_qubit")
        return ModuleScheme::driven_qubit;
    if (s == "driven_coupler")
        return ModuleScheme::driven_coupler;
    throw UsageError("unknown scheme '" + s + "' (expected driven_qubit or driven_coupler)");
}

void HoneycombLattice::validate() const
{
    const int n = n_vertices();
    std::vector<std::set<LinkType>> types(n);
    std::vector<int> degree(n, 0);
    std::set<std::pair<int, int>> pairs;
    for (size_t e = 0; e < edges.size(); ++e) {
        const auto& ed = edges[e];
        if (ed.left < 0 || ed.right < 0 || ed.left >= n || ed.right >= n || ed.left == ed.right)
            throw UsageError("edge " + std::to_string(e) + " has invalid endpoints");
        if (!pairs.insert(std::minmax(ed.left, ed.right)).second)
            throw UsageError("edge " + std::to_string(e) + " duplicates a vertex pair");
        for (int v : {ed.left, ed.right}) {
            if (++degree[v] > 3)
                throw UsageError("vertex " + std::to_string(v + 1) + " has more than three edges");
            if (!types[v].insert(ed.type).second)
                throw UsageError("vertex " + std::to_string(v + 1) + " has two " + to_string(ed.type)
                                 + " edges");
        }
        if (ed.type == LinkType::zz && band[ed.left] == band[ed.right])
            throw UsageError("zz edge " + std::to_string(e) + " joins two vertices of one band");
    }
}

std::vector<int> HoneycombLattice::neighbors(int v) const
{
    std::vector<int> out;
    for (const auto& e : edges) {
        if (e.left == v)
            out.push_back(e.right);
        else if (e.right == v)
            out.push_back(e.left);
    }
    return out;
}

HoneycombLattice HoneycombLattice::flipped() const
{
    HoneycombLattice l = *this;
    for (auto& e : l.edges)
        std::swap(e.left, e.right);
    return l;
}

HoneycombLattice HoneycombLattice::module(std::vector<int> band)
{
    if (band.size() != 4)
        throw UsageError("module lattice needs four band tags");
    HoneycombLattice l;
    l.band = std::move(band);
    l.edges = {{0, 1, LinkType::xx}, {2, 0, LinkType::yy}, {0, 3, LinkType::zz}};
    l.validate();
    return l;
}

HoneycombLattice HoneycombLattice::plaquette()
{
    HoneycombLattice l;
    l.band = {0, 1, 0, 1, 0, 1};
    const LinkType cycle[3] = {LinkType::xx, LinkType::yy, LinkType::zz};
    for (int v = 0; v < 6; ++v)
        l.edges.push_back({v, (v + 1) % 6, cycle[v % 3]});
    l.validate();
    return l;
}

HoneycombLattice HoneycombLattice::brick_wall(int rows, int cols)
{
    if (rows < 1 || cols < 2)
        throw UsageError("brick wall needs at least one row and two columns");
    HoneycombLattice l;
    l.band.resize(rows * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const int v = r * cols + c;
            l.band[v] = (r + c) % 2;
            if (c + 1 < cols)
                l.edges.push_back({v, v + 1, c % 2 == 0 ? LinkType::xx : LinkType::yy});
            if (r + 1 < rows && (r + c) % 2 == 0)
                l.edges.push_back({v, v + cols, LinkType::zz});
        }
    l.validate();
    return l;
}

FrequencyAssignment assign_frequencies(const HoneycombLattice& lattice,
                                       const BandPalette& palette, double delta_nn,
                                       double delta_nnn)
{
    lattice.validate();
    const int n = lattice.n_vertices();
    constexpr double slack = 1e-9;
    FrequencyAssignment w(n, 0.0);
    std::vector<bool> done(n, false);
    for (int v = 0; v < n; ++v) {
        const auto& pal = lattice.band[v] == 0 ? palette.band0 : palette.band1;
        std::set<int> nnn;
        const auto nb = lattice.neighbors(v);
        for (int u : nb)
            for (int x : lattice.neighbors(u))
                if (x != v)
                    nnn.insert(x);
        bool placed = false;
        for (double cand : pal) {
            bool ok = true;
            for (int u : nb)
                ok = ok && (!done[u] || std::abs(w[u] - cand) >= delta_nn - slack);
            for (int u : nnn)
                ok = ok && (!done[u] || std::abs(w[u] - cand) >= delta_nnn - slack);
            if (ok) {
                w[v] = cand;
                done[v] = placed = true;
                break;
            }
        }
        if (!placed)
            throw UsageError("no frequency in band " + std::to_string(lattice.band[v])
                             + " satisfies the detuning constraints at vertex "
                             + std::to_string(v + 1));
    }
    return w;
}

double LinkTargets::of(LinkType t) const
{
    switch (t) {
    case LinkType::xx:
        return j_xx;
    case LinkType::yy:
        return j_yy;
    case LinkType::zz:
        return j_zz;
    }
    return 0.0;
}

int DriveSchedule::tones_on(int qubit) const
{
    int c = 0;
    for (const auto& t : tones)
        if (t.qubit == qubit)
            ++c;
    return c;
}

namespace {

ScheduledTone make_tone(int edge, int qubit, const std::string& role, Key key,
                        const FrequencyAssignment& w, double amplitude, double theta)
{
    double f = 0.0;
    for (size_t i = 0; i < key.size(); ++i)
        f += key[i] * w[i];
    if (f < 0.0) {
        // cos is even: flip the key and the phase
        for (int& k : key)
            k = -k;
        f = -f;
        theta = -theta + 0.0;  // no negative zero
    }
    return {edge, qubit, role, std::move(key), f, amplitude, theta};
}

Key unit_key(int n, int i, int si, int j, int sj)
{
    Key k(n, 0);
    k[i] += si;
    k[j] += sj;
    return k;
}

void check_bound(double a, double bound, int edge)
{
    if (std::abs(a) > bound)
        throw UsageError("edge " + std::to_string(edge) + " needs amplitude "
                         + std::to_string(std::abs(a)) + " GHz, above the bound "
                         + std::to_string(bound));
}

DriveSchedule leading_order(const HoneycombLattice& lattice, const FrequencyAssignment& w,
                            const LinkTargets& targets, ModuleScheme scheme,
                            const ModuleParams& params)
{
    const int n = lattice.n_vertices();
    DriveSchedule s;
    s.scheme = scheme;
    s.omega = w;
    std::vector<int> sum_tones(n, 0), diff_tones(n, 0);
    for (size_t e = 0; e < lattice.edges.size(); ++e) {
        const auto& ed = lattice.edges[e];
        const double j = targets.of(ed.type);
        if (ed.type == LinkType::zz) {
            if (j != 0.0)
                s.static_zz.emplace_back(int(e), j);
            continue;
        }
        if (j == 0.0)
            continue;
        const int i = ed.left, k = ed.right;
        const double sp = w[i] + w[k], sm = w[i] - w[k];
        if (scheme == ModuleScheme::driven_qubit) {
            if (std::abs(sm) < 1e-9)
                throw UsageError("edge " + std::to_string(e) + " joins degenerate qubits");
            const double sign = ed.type == LinkType::xx ? 1.0 : -1.0;
            // both processes contribute equally once the ratio rule holds
            const double b_sum = sign * j * sp / (2.0 * params.g_c);
            const double b_diff = sign * b_sum * sm / sp;
            check_bound(b_sum, params.max_amplitude, int(e));
            check_bound(b_diff, params.max_amplitude, int(e));
            if (++sum_tones[i] > 1 || ++diff_tones[k] > 1)
                throw UsageError("orientation conflict at edge " + std::to_string(e)
                                 + ": a qubit would carry two tones of the same kind");
            s.tones.push_back(make_tone(int(e), i, "sum", unit_key(n, i, 1, k, 1), w, b_sum, 0.0));
            s.tones.push_back(
                make_tone(int(e), k, "difference", unit_key(n, i, 1, k, -1), w, b_diff, 0.0));
        } else {
            const double phi = std::abs(j) / params.coupler_g_x;
            check_bound(phi, params.max_amplitude, int(e));
            const double theta = ed.type == LinkType::xx ? 0.0 : std::numbers::pi;
            s.tones.push_back(make_tone(int(e), i, "sum", unit_key(n, i, 1, k, 1), w, phi, 0.0));
            s.tones.push_back(
                make_tone(int(e), i, "difference", unit_key(n, i, 1, k, -1), w, phi, theta));
        }
    }
    return s;
}

}  // namespace

ScheduledTone edge_tone(const HoneycombLattice& lattice, const FrequencyAssignment& omega,
                        int edge, int qubit, const std::string& role, double amplitude,
                        double theta)
{
    if (edge < 0 || edge >= int(lattice.edges.size()))
        throw UsageError("tone refers to missing edge " + std::to_string(edge));
    const auto& ed = lattice.edges[edge];
    if (qubit != ed.left && qubit != ed.right)
        throw UsageError("tone on edge " + std::to_string(edge) + " sits on qubit "
                         + std::to_string(qubit) + " outside the edge");
    const int n = lattice.n_vertices();
    if (role == "sum")
        return make_tone(edge, qubit, role, unit_key(n, ed.left, 1, ed.right, 1), omega,
                         amplitude, theta);
    if (role == "difference")
        return make_tone(edge, qubit, role, unit_key(n, ed.left, 1, ed.right, -1), omega,
                         amplitude, theta);
    throw UsageError("tone role must be sum or difference, got '" + role + "'");
}

DriveSchedule compile_drive_schedule(const HoneycombLattice& lattice,
                                     const FrequencyAssignment& omega, const LinkTargets& targets,
                                     ModuleScheme scheme, const ModuleParams& params,
                                     const CouplingProbe& corrector)
{
    lattice.validate();
    if (int(omega.size()) != lattice.n_vertices())
        throw UsageError("frequency assignment does not cover the lattice");
    DriveSchedule s = leading_order(lattice, omega, targets, scheme, params);
    if (!corrector)
        return s;
    const auto measured = corrector(s);
    if (measured.size() != lattice.edges.size())
        throw UsageError("coupling probe must return one value per edge");
    for (auto& t : s.tones) {
        const double target = std::abs(targets.of(lattice.edges[t.edge].type));
        if (measured[t.edge] > 0.0)
            t.amplitude *= target / std::abs(measured[t.edge]);
        check_bound(t.amplitude, params.max_amplitude, t.edge);
    }
    for (auto& [e, g] : s.static_zz)
        if (measured[e] > 0.0)
            g *= std::abs(targets.j_zz) / std::abs(measured[e]);
    return s;
}

std::string edge_label(const HoneycombLattice& lattice, int edge)
{
    const auto& e = lattice.edges.at(edge);
    std::string label(lattice.n_vertices(), 'I');
    const char c = e.type == LinkType::xx ? 'X' : e.type == LinkType::yy ? 'Y' : 'Z';
    label[e.left] = c;
    label[e.right] = c;
    return label;
}

ModuleSetup build_module_hamiltonian(const HoneycombLattice& lattice, const DriveSchedule& schedule,
                                     const ModuleParams& params, int truncation)
{
    lattice.validate();
    const int n = lattice.n_vertices();
    // star: one vertex touches every edge
    int center = -1;
    for (int v = 0; v < n && center < 0; ++v) {
        bool all = true;
        for (const auto& e : lattice.edges)
            all = all && (e.left == v || e.right == v);
        if (all && int(lattice.edges.size()) == n - 1)
            center = v;
    }
    if (center < 0)
        throw UsageError("module is not star-shaped (one central qubit joined to every other)");
    if (int(schedule.omega.size()) != n)
        throw UsageError("schedule does not match the module size");

    ModuleSetup out;
    out.lattice = lattice;
    for (double w : schedule.omega)
        out.circuit.qubits.push_back({w, std::nullopt});
    std::map<int, double> zz(schedule.static_zz.begin(), schedule.static_zz.end());
    for (size_t e = 0; e < lattice.edges.size(); ++e) {
        const auto& ed = lattice.edges[e];
        if (ed.type == LinkType::zz) {
            StaticCoupling sc;
            sc.g_xx = params.zz_g_x;
            sc.g_zz = zz.count(int(e)) ? zz[int(e)] : 0.0;
            out.circuit.couplings.push_back({ed.left, ed.right, sc});
        } else if (schedule.scheme == ModuleScheme::driven_qubit) {
            out.circuit.couplings.push_back({ed.left, ed.right, CapacitiveCoupling{params.g_c}});
        } else {
            SquidCoupler sq;
            sq.g_x = params.coupler_g_x;
            sq.g_z = params.coupler_g_z;
            sq.g_1 = sq.g_2 = params.coupler_g_j;
            sq.phi_dc = std::numbers::pi;
            for (const auto& t : schedule.tones)
                if (t.edge == int(e))
                    sq.tones.push_back({t.amplitude, 0.0, t.theta, t.key});
            out.circuit.couplings.push_back({ed.left, ed.right, sq});
        }
    }
    if (schedule.scheme == ModuleScheme::driven_qubit) {
        std::map<int, DriveSpec> drives;
        for (const auto& t : schedule.tones) {
            auto& d = drives[t.qubit];
            d.qubit = t.qubit;
            d.axis = 'z';
            d.tones.push_back({2.0 * t.amplitude, 0.0, t.theta, t.key});
        }
        for (auto& [q, d] : drives)
            out.circuit.drives.push_back(d);
    }
    for (double w : schedule.omega)
        out.modes.push_back({w, truncation});
    const QubitRegister reg(n);
    for (Index a = 0; a < reg.dim(); ++a) {
        const auto occ = occupations(a, n);
        Key m(n);
        for (int j = 0; j < n; ++j)
            m[j] = -occ[j];
        out.slow_states.push_back({a, m});
    }
    out.frame = frame_from_states(schedule.omega, schedule.omega, out.slow_states);
    return out;
}

ModuleDiagnostics validate_adiabaticity(const FloquetMatrix& f, const SlowManifold& m,
                                        double window, int fast_count)
{
    const Index dim = f.dim();
    const RVec& eps0 = f.unperturbed();
    std::vector<char> slow(dim, 0);
    for (Index r : m.rows)
        slow[r] = 1;
    RVec t2 = RVec::Zero(dim);
    RVec rel = RVec::Constant(dim, std::numeric_limits<double>::infinity());
    ModuleDiagnostics d;
    std::vector<char> resonant(dim, 0);
    for (size_t c = 0; c < m.classes.size(); ++c) {
        const double e = m.class_energy[c];
        const auto& idx = m.classes[c];
        Mat p = Mat::Zero(dim, Index(idx.size()));
        for (size_t i = 0; i < idx.size(); ++i)
            p(m.rows[idx[i]], Index(i)) = 1.0;
        const Mat vp = f.V() * p;
        Mat g = vp;
        for (Index r = 0; r < dim; ++r) {
            const double den = e - eps0[r];
            if (slow[r] || std::abs(den) < 1e-9) {
                if (!slow[r] && vp.row(r).norm() > 1e-12)
                    resonant[r] = 1;
                g.row(r).setZero();
            } else {
                g.row(r) /= den;
            }
            if (!slow[r])
                rel[r] = std::min(rel[r], std::abs(eps0[r] - e));
        }
        const Mat t = vp + f.V() * g;
        t2 += t.rowwise().squaredNorm();
    }
    for (Index r = 0; r < dim; ++r)
        if (resonant[r])
            ++d.resonant_coupled;

    // group fast states by |eps| level
    std::map<long long, double> levels;
    for (Index r = 0; r < dim; ++r) {
        if (slow[r] || rel[r] < 1e-9)
            continue;
        const long long key = std::llround(rel[r] * 1e6);
        const double t = std::sqrt(t2[r]);
        auto [it, fresh] = levels.emplace(key, t);
        if (!fresh)
            it->second = std::max(it->second, t);
    }
    // t_max and gap refer to the lowest coupled levels; the ratio to all of them
    std::vector<std::pair<double, double>> low;
    for (const auto& [k, t] : levels) {
        const double e = double(k) * 1e-6;
        d.max_ratio = std::max(d.max_ratio, t / e);
        if (t > 1e-6 && e <= window && int(low.size()) < fast_count)
            low.emplace_back(e, t);
    }
    for (const auto& [e, t] : low) {
        d.t_max = std::max(d.t_max, t);
        d.table.push_back({e, t, t / e});
    }
    d.gap = std::numeric_limits<double>::infinity();
    for (const auto& [e, t] : low)
        if (t >= 0.1 * d.t_max)
            d.gap = std::min(d.gap, e);
    if (d.t_max == 0.0)
        d.gap = m.gap;
    d.pass = d.max_ratio <= 0.1 && d.resonant_coupled == 0;
    return d;
}

PauliDecomposition kitaev_target_hamiltonian(const HoneycombLattice& lattice,
                                             const LinkTargets& targets)
{
    PauliDecomposition out;
    for (size_t e = 0; e < lattice.edges.size(); ++e)
        out[edge_label(lattice, int(e))] += targets.of(lattice.edges[e].type);
    return out;
}

FrequencyAssignment module_frequencies_large_detuning() { return {6.1, 9.6, 9.1, 9.9}; }

FrequencyAssignment module_frequencies_small_detuning() { return {6.1, 6.45, 6.55, 9.9}; }

BandPalette module_palette_large_detuning() { return {{6.1, 6.3}, {9.6, 9.1, 9.9, 9.4}}; }

BandPalette module_palette_small_detuning() { return {{6.1, 6.45, 6.55, 6.8}, {9.9, 9.5}}; }

DriveSchedule driven_qubit_module_schedule(const FrequencyAssignment& omega, double b12,
                                           double b21, double b13, double b31, double j_zz)
{
    DriveSchedule s;
    s.scheme = ModuleScheme::driven_qubit;
    s.omega = omega;
    s.tones.push_back(make_tone(0, 0, "sum", unit_key(4, 0, 1, 1, 1), omega, b12, 0.0));
    s.tones.push_back(make_tone(0, 1, "difference", unit_key(4, 0, 1, 1, -1), omega, b21, 0.0));
    s.tones.push_back(make_tone(1, 2, "sum", unit_key(4, 2, 1, 0, 1), omega, b31, 0.0));
    s.tones.push_back(make_tone(1, 0, "difference", unit_key(4, 2, 1, 0, -1), omega, b13, 0.0));
    s.static_zz.emplace_back(2, j_zz);
    return s;
}

}  // namespace floq
