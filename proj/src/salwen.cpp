#include "floq/salwen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/SparseLU>

namespace floq {

namespace {

constexpr double kResonance = 1e-9;
constexpr double kNumerator = 1e-12;

int l1(const Key& m)
{
    int s = 0;
    for (int v : m)
        s += std::abs(v);
    return s;
}

// Inverse square root of a Hermitian positive matrix.
Mat inv_sqrt(const Mat& s)
{
    Eigen::SelfAdjointEigenSolver<Mat> es((s + s.adjoint()) / 2.0);
    const RVec w = es.eigenvalues();
    if (w.minCoeff() <= 0.0)
        throw PhysicsError("overlap matrix is singular; slow states lost their weight");
    return es.eigenvectors() * w.cwiseInverse().cwiseSqrt().cast<cplx>().asDiagonal()
           * es.eigenvectors().adjoint();
}

void fix_phases(Mat& v)
{
    for (Index c = 0; c < v.cols(); ++c) {
        Index best = 0;
        for (Index r = 1; r < v.rows(); ++r)
            if (std::abs(v(r, c)) > std::abs(v(best, c)) + 1e-14)
                best = r;
        const cplx z = v(best, c);
        if (std::abs(z) > 0.0)
            v.col(c) *= std::conj(z) / std::abs(z);
    }
}

// Resolvent rows: 1/(e - eps0_s) on the complement of the class, zero on the
// class itself and on exactly degenerate rows whose numerators vanish.
void apply_resolvent(Mat& x, const RVec& eps0, const std::vector<char>& in_class,
                     const RVec& e_col)
{
    for (Index r = 0; r < x.rows(); ++r) {
        if (in_class[r]) {
            x.row(r).setZero();
            continue;
        }
        for (Index c = 0; c < x.cols(); ++c) {
            const double den = e_col[c] - eps0[r];
            if (std::abs(den) < kResonance) {
                if (std::abs(x(r, c)) > kNumerator)
                    throw PhysicsError("resonant fast state " + std::to_string(r)
                                       + " couples to the slow manifold (energy denominator "
                                       + std::to_string(den) + ")");
                x(r, c) = 0.0;
            } else {
                x(r, c) /= den;
            }
        }
    }
}

Mat series_product(const std::vector<Mat>& a, const std::vector<Mat>& b, int n)
{
    Mat out = Mat::Zero(a[0].rows(), b[0].cols());
    for (int k = 0; k <= n; ++k)
        if (k < int(a.size()) && n - k < int(b.size()))
            out += a[k] * b[n - k];
    return out;
}

// Bloch wave-operator recursion for one class; returns lambda^n terms of the
// des Cloizeaux Hamiltonian (lab energies).
std::vector<Mat> class_series(const FloquetMatrix& f, const std::vector<Index>& rows, int p)
{
    const Index dim = f.dim();
    const Index s = Index(rows.size());
    const RVec& eps0 = f.unperturbed();
    const SpMat& v = f.V();
    std::vector<char> in_class(dim, 0);
    RVec e(s);
    for (Index i = 0; i < s; ++i) {
        in_class[rows[i]] = 1;
        e[i] = eps0[rows[i]];
    }
    auto project = [&](const Mat& x) {
        Mat out(s, x.cols());
        for (Index i = 0; i < s; ++i)
            out.row(i) = x.row(rows[i]);
        return out;
    };

    std::vector<Mat> omega;  // Omega_0 .. Omega_{p-1}
    Mat om0 = Mat::Zero(dim, s);
    for (Index i = 0; i < s; ++i)
        om0(rows[i], i) = 1.0;
    omega.push_back(om0);
    std::vector<Mat> w(p + 1);
    w[0] = e.cast<cplx>().asDiagonal();
    for (int n = 1; n <= p; ++n) {
        Mat vo = v * omega[n - 1];
        w[n] = project(vo);
        if (n == p)
            break;
        for (int k = 1; k < n; ++k)
            vo -= omega[k] * w[n - k];
        apply_resolvent(vo, eps0, in_class, e);
        omega.push_back(std::move(vo));
    }

    // S = Omega^dagger Omega order by order; Omega_k for k >= 1 vanishes on the class.
    std::vector<Mat> sser(p + 1, Mat::Zero(s, s));
    sser[0] = Mat::Identity(s, s);
    for (int n = 2; n <= p; ++n)
        for (int k = 1; k < n; ++k)
            if (k < int(omega.size()) && n - k < int(omega.size()))
                sser[n] += omega[k].adjoint() * omega[n - k];

    std::vector<Mat> kser(p + 1);
    for (int n = 0; n <= p; ++n)
        kser[n] = series_product(sser, w, n);

    // S^{-1/2} = sum_j binom(-1/2, j) X^j with X = S - 1 starting at order 2
    std::vector<Mat> x(p + 1, Mat::Zero(s, s));
    for (int n = 1; n <= p; ++n)
        x[n] = sser[n];
    std::vector<Mat> sinv(p + 1, Mat::Zero(s, s));
    sinv[0] = Mat::Identity(s, s);
    std::vector<Mat> xp = sinv;
    double coef = 1.0;
    for (int j = 1; j <= p; ++j) {
        std::vector<Mat> next(p + 1);
        for (int n = 0; n <= p; ++n)
            next[n] = series_product(xp, x, n);
        xp = std::move(next);
        coef *= (-0.5 - (j - 1)) / double(j);
        for (int n = 0; n <= p; ++n)
            sinv[n] += coef * xp[n];
    }
    std::vector<Mat> tmp(p + 1), out(p + 1);
    for (int n = 0; n <= p; ++n)
        tmp[n] = series_product(sinv, kser, n);
    for (int n = 0; n <= p; ++n)
        out[n] = series_product(tmp, sinv, n);
    return out;
}

std::vector<Index> class_rows(const SlowManifold& m, int c)
{
    std::vector<Index> r;
    for (int i : m.classes[c])
        r.push_back(m.rows[i]);
    return r;
}

}  // namespace

SlowManifold identify_slow_manifold(const FloquetMatrix& f, const ManifoldOptions& opt)
{
    SlowManifold m;
    const Index d = f.qubit_dim();
    const RVec fe = f.frame_energies();
    const RVec& lab = f.unperturbed();
    m.frame = f.frame() ? *f.frame() : std::vector<double>(f.n_qubits(), 0.0);

    if (!opt.states.empty()) {
        if (Index(opt.states.size()) != d)
            throw PhysicsError("slow manifold needs " + std::to_string(d) + " states, "
                               + std::to_string(opt.states.size()) + " given");
        std::vector<CompositeIndex> st = opt.states;
        std::sort(st.begin(), st.end(),
                  [](const CompositeIndex& a, const CompositeIndex& b) { return a.alpha < b.alpha; });
        for (Index a = 0; a < d; ++a)
            if (st[a].alpha != a)
                throw PhysicsError("slow manifold must hold exactly one state per qubit basis state");
        m.states = st;
        for (const auto& c : st)
            m.rows.push_back(f.row(c));
        const double ref = fe[m.rows[0]];
        for (Index r : m.rows)
            if (std::abs(fe[r] - ref) > opt.degeneracy_tol)
                throw PhysicsError("declared slow states are not degenerate in the rotating frame "
                                   "(spread exceeds " + std::to_string(opt.degeneracy_tol)
                                   + " GHz)");
    } else {
        m.states.resize(d);
        m.rows.assign(d, -1);
        std::vector<int> best(d, 1 << 30);
        std::vector<int> ties(d, 0);
        for (Index r = 0; r < f.dim(); ++r) {
            if (std::abs(fe[r]) >= opt.degeneracy_tol)
                continue;
            const CompositeIndex ci = f.index(r);
            const int n = l1(ci.m);
            if (n < best[ci.alpha]) {
                best[ci.alpha] = n;
                ties[ci.alpha] = 0;
                m.states[ci.alpha] = ci;
                m.rows[ci.alpha] = r;
            } else if (n == best[ci.alpha]) {
                ++ties[ci.alpha];
            }
        }
        for (Index a = 0; a < d; ++a) {
            if (m.rows[a] < 0)
                throw PhysicsError("degeneracy mismatch: qubit state " + std::to_string(a + 1)
                                   + " has no Floquet partner at zero frame quasienergy");
            if (ties[a] > 0)
                throw PhysicsError("degeneracy mismatch: qubit state " + std::to_string(a + 1)
                                   + " has several minimal-photon partners at zero quasienergy");
        }
    }

    m.eps0_lab.resize(d);
    m.eps0_frame.resize(d);
    m.class_of.assign(d, -1);
    for (Index a = 0; a < d; ++a) {
        m.eps0_lab[a] = lab[m.rows[a]];
        m.eps0_frame[a] = fe[m.rows[a]];
    }
    for (Index a = 0; a < d; ++a) {
        if (m.class_of[a] >= 0)
            continue;
        const int c = int(m.classes.size());
        m.classes.emplace_back();
        for (Index b = a; b < d; ++b)
            if (m.class_of[b] < 0 && std::abs(m.eps0_lab[b] - m.eps0_lab[a]) < opt.degeneracy_tol) {
                m.class_of[b] = c;
                m.classes[c].push_back(int(b));
            }
        double e = 0.0;
        for (int i : m.classes[c])
            e += m.eps0_lab[i];
        m.class_energy.push_back(e / double(m.classes[c].size()));
    }

    std::vector<char> slow(f.dim(), 0);
    for (Index r : m.rows)
        slow[r] = 1;
    m.gap = std::numeric_limits<double>::infinity();
    for (Index r = 0; r < f.dim(); ++r) {
        if (slow[r])
            continue;
        bool resonant = false;
        for (double e : m.class_energy) {
            const double dist = std::abs(lab[r] - e);
            if (dist < opt.degeneracy_tol)
                resonant = true;
            else
                m.gap = std::min(m.gap, dist);
        }
        if (resonant)
            ++m.resonant_fast;
    }
    if (m.gap < opt.gap_min)
        throw PhysicsError("gap to the nearest fast state is " + std::to_string(m.gap)
                           + " GHz, below gap_min " + std::to_string(opt.gap_min));
    return m;
}

Mat scattering_apply(const FloquetMatrix& f, const SlowManifold& m, double eps, int k)
{
    if (k < 0)
        throw UsageError("scattering_apply: order must be non-negative");
    const Index s = Index(m.rows.size());
    Mat out = Mat::Zero(s, s);
    const RVec& eps0 = f.unperturbed();
    for (size_t c = 0; c < m.classes.size(); ++c) {
        const auto rows = class_rows(m, int(c));
        const Index cs = Index(rows.size());
        std::vector<char> in_class(f.dim(), 0);
        for (Index r : rows)
            in_class[r] = 1;
        Mat p = Mat::Zero(f.dim(), cs);
        for (Index i = 0; i < cs; ++i)
            p(rows[i], i) = 1.0;
        Mat x = f.V() * p;
        const RVec e = RVec::Constant(cs, m.class_energy[c] + eps);
        for (int it = 0; it < k; ++it) {
            apply_resolvent(x, eps0, in_class, e);
            x = f.V() * x;
        }
        for (Index a = 0; a < s; ++a)
            for (Index i = 0; i < cs; ++i)
                out(a, m.classes[c][i]) = x(m.rows[a], i);
    }
    return out;
}

std::vector<Mat> effective_series(const FloquetMatrix& f, const SlowManifold& m, int p)
{
    if (p < 0)
        throw UsageError("effective_series: order must be non-negative");
    const Index s = Index(m.rows.size());
    std::vector<Mat> out(p + 1, Mat::Zero(s, s));
    for (size_t c = 0; c < m.classes.size(); ++c) {
        const auto rows = class_rows(m, int(c));
        auto ser = class_series(f, rows, std::max(p, 1));
        ser[0] -= m.class_energy[c] * Mat::Identity(rows.size(), rows.size());
        const auto& idx = m.classes[c];
        for (int n = 0; n <= p; ++n)
            for (size_t i = 0; i < idx.size(); ++i)
                for (size_t j = 0; j < idx.size(); ++j)
                    out[n](idx[i], idx[j]) = ser[n](i, j);
    }
    return out;
}

SelfConsistentSolution solve_self_consistent(const FloquetMatrix& f, const SlowManifold& m,
                                             int p_c)
{
    if (p_c < 2)
        throw UsageError("solve_self_consistent: order must be at least 2");
    const auto ser = effective_series(f, m, p_c);
    Mat h = Mat::Zero(ser[0].rows(), ser[0].cols());
    for (const auto& t : ser)
        h += t;
    h = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    SelfConsistentSolution sol;
    sol.order = p_c;
    sol.eps = es.eigenvalues();
    sol.vecs = es.eigenvectors();
    fix_phases(sol.vecs);
    sol.h = h;
    sol.kappa = Mat::Zero(h.rows(), p_c + 1);
    for (Index a = 0; a < h.rows(); ++a)
        for (int n = 0; n <= p_c; ++n)
            sol.kappa(a, n) = sol.vecs.col(a).dot(ser[n] * sol.vecs.col(a));
    return sol;
}

SelfConsistentSolution solve_self_consistent_exact(const FloquetMatrix& f,
                                                   const SlowManifold& m, double tol,
                                                   int max_iter)
{
    const Index s = Index(m.rows.size());
    const SpMat h = f.full();
    const auto start = solve_self_consistent(f, m, 4);
    SelfConsistentSolution sol;
    sol.order = 0;
    sol.eps = RVec::Zero(s);
    sol.vecs = Mat::Zero(s, s);
    sol.h = Mat::Zero(s, s);
    Index col = 0;
    for (size_t c = 0; c < m.classes.size(); ++c) {
        const auto rows = class_rows(m, int(c));
        const auto& idx = m.classes[c];
        const Index cs = Index(rows.size());
        std::vector<Index> qmap(f.dim(), -1);
        std::vector<char> in_class(f.dim(), 0);
        for (Index r : rows)
            in_class[r] = 1;
        Index nq = 0;
        for (Index r = 0; r < f.dim(); ++r)
            if (!in_class[r])
                qmap[r] = nq++;
        std::vector<Eigen::Triplet<cplx>> tq;
        Mat hqp = Mat::Zero(nq, cs);
        Mat hpp = Mat::Zero(cs, cs);
        std::vector<Index> pos(f.dim(), -1);
        for (Index i = 0; i < cs; ++i)
            pos[rows[i]] = i;
        for (Index k = 0; k < h.outerSize(); ++k)
            for (SpMat::InnerIterator it(h, k); it; ++it) {
                const Index r = it.row(), cc = it.col();
                if (!in_class[r] && !in_class[cc])
                    tq.emplace_back(qmap[r], qmap[cc], -it.value());
                else if (!in_class[r] && in_class[cc])
                    hqp(qmap[r], pos[cc]) = it.value();
                else if (in_class[r] && in_class[cc])
                    hpp(pos[r], pos[cc]) = it.value();
            }
        SpMat negq(nq, nq);
        negq.setFromTriplets(tq.begin(), tq.end());
        SpMat ident(nq, nq);
        ident.setIdentity();
        Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
        lu.analyzePattern(negq + ident);

        auto h_of = [&](double e, Mat* x_out) {
            SpMat a = negq + cplx(e) * ident;
            lu.factorize(a);
            if (lu.info() != Eigen::Success)
                throw PhysicsError("self-consistent resolvent is singular at eps = "
                                   + std::to_string(e) + " GHz (resonant fast state)");
            Mat x = lu.solve(hqp);
            if (!x.allFinite())
                throw PhysicsError("self-consistent resolvent is singular");
            Mat hh = hpp + hqp.adjoint() * x;
            if (x_out)
                *x_out = std::move(x);
            return Mat((hh + hh.adjoint()) / 2.0);
        };

        // start from the 4th-order series within this class
        std::vector<double> guesses;
        {
            Mat blk(cs, cs);
            for (Index i = 0; i < cs; ++i)
                for (Index j = 0; j < cs; ++j)
                    blk(i, j) = start.h(idx[i], idx[j]);
            Eigen::SelfAdjointEigenSolver<Mat> es(blk);
            for (Index i = 0; i < cs; ++i)
                guesses.push_back(es.eigenvalues()[i] + m.class_energy[c]);
        }
        Mat cvec(cs, cs);
        RVec evals(cs);
        for (Index b = 0; b < cs; ++b) {
            double e = guesses[b];
            int it = 0;
            for (; it < max_iter; ++it) {
                Eigen::SelfAdjointEigenSolver<Mat> es(h_of(e, nullptr));
                Index best = 0;
                for (Index i = 1; i < cs; ++i)
                    if (std::abs(es.eigenvalues()[i] - e) < std::abs(es.eigenvalues()[best] - e))
                        best = i;
                const double en = es.eigenvalues()[best];
                const bool done = std::abs(en - e) < tol;
                e = en;
                if (done)
                    break;
            }
            if (it == max_iter)
                throw PhysicsError("self-consistent iteration did not converge");
            sol.iterations = std::max(sol.iterations, it + 1);
            Mat x;
            Eigen::SelfAdjointEigenSolver<Mat> es(h_of(e, &x));
            Index best = 0;
            for (Index i = 1; i < cs; ++i)
                if (std::abs(es.eigenvalues()[i] - e) < std::abs(es.eigenvalues()[best] - e))
                    best = i;
            const double resid = std::abs(es.eigenvalues()[best] - e);
            sol.residual = std::max(sol.residual, resid);
            Vec v = es.eigenvectors().col(best);
            // P-projection of the normalized full eigenvector
            const double nfast = (x * v).squaredNorm();
            v /= std::sqrt(1.0 + nfast);
            cvec.col(b) = v;
            evals[b] = e - m.class_energy[c];
        }
        const Mat co = cvec * inv_sqrt(cvec.adjoint() * cvec);
        const Mat hc = co * evals.cast<cplx>().asDiagonal() * co.adjoint();
        for (Index i = 0; i < cs; ++i)
            for (Index j = 0; j < cs; ++j)
                sol.h(idx[i], idx[j]) = hc(i, j);
        for (Index b = 0; b < cs; ++b) {
            sol.eps[col] = evals[b];
            for (Index i = 0; i < cs; ++i)
                sol.vecs(idx[i], col) = co(i, b);
            ++col;
        }
    }
    fix_phases(sol.vecs);
    return sol;
}

Mat exact_effective_matrix(const FloquetMatrix& f, const SlowManifold& m,
                           const QuasienergySpectrum& s)
{
    if (!s.complete)
        throw UsageError("exact effective matrix needs the complete spectrum");
    const Index ns = Index(m.rows.size());
    Mat out = Mat::Zero(ns, ns);
    for (size_t c = 0; c < m.classes.size(); ++c) {
        const auto& idx = m.classes[c];
        const Index cs = Index(idx.size());
        Mat pv(cs, s.eps.size());
        for (Index i = 0; i < cs; ++i)
            pv.row(i) = s.vecs.row(m.rows[idx[i]]);
        const RVec wt = pv.cwiseAbs2().colwise().sum();
        std::vector<Index> order(wt.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return wt[a] > wt[b]; });
        Mat cmat(cs, cs);
        RVec e(cs);
        for (Index k = 0; k < cs; ++k) {
            cmat.col(k) = pv.col(order[k]);
            e[k] = s.eps[order[k]] - m.class_energy[c];
        }
        const Mat co = cmat * inv_sqrt(cmat.adjoint() * cmat);
        const Mat hc = co * e.cast<cplx>().asDiagonal() * co.adjoint();
        for (Index i = 0; i < cs; ++i)
            for (Index j = 0; j < cs; ++j)
                out(idx[i], idx[j]) = hc(i, j);
    }
    return out;
}

double EffectiveSpinHamiltonian::coefficient(const std::string& label) const
{
    auto it = couplings.find(label);
    if (it != couplings.end())
        return it->second.real();
    const int n = int(label.size());
    int nz = 0, zpos = -1;
    for (int j = 0; j < n; ++j)
        if (label[j] != 'I') {
            ++nz;
            zpos = label[j] == 'Z' ? j : -2;
        }
    if (nz == 0)
        return offset;
    if (nz == 1 && zpos >= 0 && zpos < int(delta_omega.size()))
        return delta_omega[zpos];
    return 0.0;
}

EffectiveSpinHamiltonian spin_hamiltonian(const Mat& h, const SlowManifold& m,
                                          const std::string& method, int order)
{
    const int nq = int(std::lround(std::log2(double(h.rows()))));
    const QubitRegister reg(nq);
    if (h.rows() != reg.dim())
        throw UsageError("effective matrix dimension is not a power of two");
    if (max_abs(h - h.adjoint()) > 1e-9)
        throw PhysicsError("assembled effective Hamiltonian is not Hermitian (phase or assignment error)");
    EffectiveSpinHamiltonian out;
    out.method = method;
    out.order = order;
    out.frame = m.frame;
    out.matrix = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(out.matrix);
    out.quasienergies = es.eigenvalues();
    out.eigenvectors = es.eigenvectors();
    fix_phases(out.eigenvectors);
    const auto pd = pauli_decompose(out.matrix, reg);
    out.delta_omega.assign(nq, 0.0);
    for (const auto& [label, v] : pd) {
        int nz = 0, zpos = -1;
        for (int j = 0; j < nq; ++j)
            if (label[j] != 'I') {
                ++nz;
                zpos = label[j] == 'Z' ? j : -2;
            }
        if (nz == 0)
            out.offset = v.real();
        else if (nz == 1 && zpos >= 0)
            out.delta_omega[zpos] = v.real();
        else if (std::abs(v) > 1e-13)
            out.couplings[label] = v.real();
    }
    return out;
}

EffectiveSpinHamiltonian effective_hamiltonian(const FloquetMatrix& f, const SlowManifold& m,
                                               int p_c)
{
    const auto sol = solve_self_consistent(f, m, p_c);
    const Mat h = sol.vecs * sol.eps.cast<cplx>().asDiagonal() * sol.vecs.adjoint();
    return spin_hamiltonian(h, m, "series", p_c);
}

EffectiveSpinHamiltonian effective_hamiltonian_exact(const FloquetMatrix& f,
                                                     const SlowManifold& m, ExactRoute route)
{
    if (route == ExactRoute::dense) {
        const auto s = quasienergy_spectrum(f);
        return spin_hamiltonian(exact_effective_matrix(f, m, s), m, "dense", 0);
    }
    const auto sol = solve_self_consistent_exact(f, m);
    return spin_hamiltonian(sol.h, m, "self_consistent", 0);
}

FloquetMatrix scale_perturbation(const FloquetMatrix& f, double lambda)
{
    FloquetMatrix g = f;
    g.scale_perturbation(lambda);
    return g;
}

double order_scaling_slope(const FloquetMatrix& f, const SlowManifold& m, int p_lo, int p_hi,
                           const std::vector<double>& lambdas)
{
    if (lambdas.size() < 2)
        throw UsageError("order_scaling_slope needs at least two lambda values");
    std::vector<double> lx, ly;
    for (double l : lambdas) {
        const FloquetMatrix g = scale_perturbation(f, l);
        const auto a = solve_self_consistent(g, m, p_lo);
        const auto b = solve_self_consistent(g, m, p_hi);
        const double diff = (a.eps - b.eps).cwiseAbs().maxCoeff();
        lx.push_back(std::log(l));
        ly.push_back(std::log(std::max(diff, 1e-300)));
    }
    const double n = double(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace floq
