#include <algorithm>
#include <cmath>
#include <numbers>

#include "floq/floquet.hpp"

namespace floq {

TimeDomainResult propagate_time_domain(const FourierHamiltonian& fh,
                                       const std::vector<double>& modes, const Vec& psi0,
                                       const std::vector<double>& t, double tol)
{
    if (int(modes.size()) != fh.n_modes)
        throw UsageError("propagate_time_domain: mode count mismatch");
    if (psi0.size() != fh.bare.size())
        throw UsageError("propagate_time_domain: initial state has wrong dimension");
    for (size_t i = 1; i < t.size(); ++i)
        if (t[i] < t[i - 1])
            throw UsageError("propagate_time_domain: time grid must be non-decreasing");

    const double two_pi = 2.0 * std::numbers::pi;
    // Interaction picture of the static diagonal: psi = exp(-i 2pi D t) phi.
    // The bare qubit phases are then exact and the steps follow the couplings.
    RVec diag = RVec::Zero(psi0.size());
    for (const auto& [k, c] : fh.components)
        if (std::all_of(k.begin(), k.end(), [](int x) { return x == 0; }))
            diag = c.diagonal().real();
    auto frame = [&](double tt, double sign) {
        Vec ph(diag.size());
        for (Index a = 0; a < diag.size(); ++a)
            ph[a] = std::exp(cplx(0.0, sign * two_pi * diag[a] * tt));
        return ph;
    };
    std::vector<std::pair<double, Mat>> terms;
    for (const auto& [k, c] : fh.components) {
        double f = 0.0;
        for (int i = 0; i < fh.n_modes; ++i)
            f += k[i] * modes[i];
        Mat m = c;
        if (f == 0.0 && std::all_of(k.begin(), k.end(), [](int x) { return x == 0; }))
            m.diagonal().setZero();
        terms.emplace_back(two_pi * f, -cplx(0.0, two_pi) * m);
    }
    auto rhs = [&](double tt, const Vec& y) {
        const Vec out_phase = frame(tt, 1.0);
        const Vec psi = frame(tt, -1.0).cwiseProduct(y);
        Vec out = Vec::Zero(y.size());
        for (const auto& [w, c] : terms)
            out += std::exp(cplx(0.0, w * tt)) * (c * psi);
        return Vec(out_phase.cwiseProduct(out));
    };

    // Dormand-Prince 5(4) tableau
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    TimeDomainResult res;
    if (t.empty())
        return res;
    double now = t.front();
    Vec y = frame(now, 1.0).cwiseProduct(psi0);
    double fmax = 0.0;
    for (const auto& [w, c] : terms)
        fmax = std::max(fmax, std::abs(w) + c.norm());
    double h = 0.01 / std::max(fmax, 1.0);
    Vec k1 = rhs(now, y);
    const double n0 = psi0.norm();
    for (size_t gi = 0; gi < t.size(); ++gi) {
        const double target = t[gi];
        while (now < target) {
            const bool last = now + h >= target;
            const double step = last ? target - now : h;
            const Vec k2 = rhs(now + c2 * step, y + step * (a21 * k1));
            const Vec k3 = rhs(now + c3 * step, y + step * (a31 * k1 + a32 * k2));
            const Vec k4 = rhs(now + c4 * step, y + step * (a41 * k1 + a42 * k2 + a43 * k3));
            const Vec k5 =
                rhs(now + c5 * step, y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const Vec k6 = rhs(now + step, y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4
                                                       + a65 * k5));
            const Vec y5 = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Vec k7 = rhs(now + step, y5);
            const Vec err =
                step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double en = err.norm();
            if (en <= tol) {
                now += step;
                y = y5;
                k1 = k7;
                ++res.steps;
                res.max_norm_drift = std::max(res.max_norm_drift, std::abs(y.norm() - n0));
                if (last)
                    now = target;
            } else {
                ++res.rejected;
            }
            const double fac = en > 0.0 ? 0.9 * std::pow(tol / en, 0.2) : 5.0;
            const double hn = step * std::min(5.0, std::max(0.2, fac));
            if (!(last && en <= tol))
                h = hn;
            if (h < 1e-15 * std::max(1.0, std::abs(target)))
                throw PhysicsError("propagate_time_domain: step size underflow");
        }
        res.t.push_back(now);
        res.states.push_back(frame(now, -1.0).cwiseProduct(y));
    }
    return res;
}

}  // namespace floq
