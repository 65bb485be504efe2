#include "floq/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace floq {

FloquetMatrix::FloquetMatrix(const FourierHamiltonian& fh, const std::vector<ModeSpec>& modes)
    : fh_(fh), modes_(modes)
{
    if (int(modes.size()) != fh.n_modes)
        throw UsageError("assemble_floquet_matrix: " + std::to_string(modes.size())
                         + " modes given, Fourier keys have arity " + std::to_string(fh.n_modes));
    for (int i = 0; i < fh.n_modes; ++i) {
        if (modes[i].truncation < 1)
            throw UsageError("mode truncation must be at least 1");
        if (modes[i].truncation < fh.max_order(i))
            throw UsageError("mode " + std::to_string(i + 1) + " truncation "
                             + std::to_string(modes[i].truncation)
                             + " is below the largest Fourier index "
                             + std::to_string(fh.max_order(i)));
    }
    d_ = fh.bare.size();
    const int m = fh.n_modes;
    stride_.assign(m, 1);
    n_blocks_ = 1;
    for (int i = m - 1; i >= 0; --i) {
        stride_[i] = n_blocks_;
        n_blocks_ *= 2 * modes[i].truncation + 1;
    }
    dim_ = n_blocks_ * d_;

    eps0_.resize(dim_);
    for (Index b = 0; b < n_blocks_; ++b) {
        const Key p = photon(b);
        double shift = 0.0;
        for (int i = 0; i < m; ++i)
            shift += p[i] * modes[i].frequency;
        eps0_.segment(b * d_, d_) = fh.bare.array() + shift;
    }

    std::vector<Eigen::Triplet<cplx>> trip;
    for (const auto& [k, c] : fh.components) {
        Mat blk = c;
        bool is_zero = true;
        for (int v : k)
            is_zero = is_zero && v == 0;
        if (is_zero)
            blk.diagonal() -= fh.bare.cast<cplx>();
        std::vector<std::tuple<Index, Index, cplx>> nz;
        for (Index r = 0; r < d_; ++r)
            for (Index cc = 0; cc < d_; ++cc)
                if (blk(r, cc) != cplx(0.0))
                    nz.emplace_back(r, cc, blk(r, cc));
        if (nz.empty())
            continue;
        for (Index b = 0; b < n_blocks_; ++b) {
            Key target = photon(b);
            for (int i = 0; i < m; ++i)
                target[i] += k[i];
            if (!contains(target))
                continue;
            const Index tb = block_of(target);
            for (const auto& [r, cc, v] : nz)
                trip.emplace_back(tb * d_ + r, b * d_ + cc, v);
        }
    }
    v_.resize(dim_, dim_);
    v_.setFromTriplets(trip.begin(), trip.end());
    v_.makeCompressed();
}

std::vector<double> FloquetMatrix::mode_frequencies() const
{
    std::vector<double> f;
    for (const auto& m : modes_)
        f.push_back(m.frequency);
    return f;
}

bool FloquetMatrix::contains(const Key& m) const
{
    if (int(m.size()) != n_modes())
        return false;
    for (int i = 0; i < n_modes(); ++i)
        if (std::abs(m[i]) > modes_[i].truncation)
            return false;
    return true;
}

Index FloquetMatrix::block_of(const Key& m) const
{
    if (!contains(m))
        throw UsageError("photon index outside the truncated Floquet space");
    Index b = 0;
    for (int i = 0; i < n_modes(); ++i)
        b += (m[i] + modes_[i].truncation) * stride_[i];
    return b;
}

Key FloquetMatrix::photon(Index block) const
{
    Key m(n_modes());
    for (int i = 0; i < n_modes(); ++i) {
        const Index w = 2 * modes_[i].truncation + 1;
        m[i] = int((block / stride_[i]) % w) - modes_[i].truncation;
    }
    return m;
}

Index FloquetMatrix::row(const CompositeIndex& c) const
{
    if (c.alpha < 0 || c.alpha >= d_)
        throw UsageError("qubit basis index out of range");
    return block_of(c.m) * d_ + c.alpha;
}

CompositeIndex FloquetMatrix::index(Index r) const
{
    return {r % d_, photon(r / d_)};
}

RVec FloquetMatrix::frame_energies() const
{
    RVec e = eps0_;
    if (!frame_)
        return e;
    const auto& f = *frame_;
    RVec shift = RVec::Zero(d_);
    for (Index a = 0; a < d_; ++a) {
        const auto occ = occupations(a, n_qubits());
        for (int j = 0; j < n_qubits(); ++j)
            shift[a] += f[j] * occ[j];
    }
    for (Index b = 0; b < n_blocks_; ++b)
        e.segment(b * d_, d_) -= shift;
    return e;
}

SpMat FloquetMatrix::full() const
{
    SpMat h = v_;
    for (Index r = 0; r < dim_; ++r)
        h.coeffRef(r, r) += eps0_[r];
    h.makeCompressed();
    return h;
}

Mat FloquetMatrix::dense() const
{
    Mat h = Mat(v_);
    h.diagonal() += eps0_.cast<cplx>();
    return h;
}

FloquetMatrix assemble_floquet_matrix(const FourierHamiltonian& fh,
                                      const std::vector<ModeSpec>& modes)
{
    return FloquetMatrix(fh, modes);
}

FloquetMatrix apply_rotating_frame(FloquetMatrix f, const std::vector<double>& frame)
{
    if (int(frame.size()) != f.n_qubits())
        throw UsageError("rotating frame has " + std::to_string(frame.size())
                         + " entries for " + std::to_string(f.n_qubits()) + " qubits");
    f.set_frame(frame);
    return f;
}

double fold_quasienergy(double eps, double omega)
{
    double r = std::fmod(eps + omega / 2.0, omega);
    if (r < 0.0)
        r += omega;
    return r - omega / 2.0;
}

namespace {

void assign(QuasienergySpectrum& s, Index dim)
{
    const Index n = s.eps.size();
    s.bare_to_dressed.assign(dim, -1);
    s.dressed_to_bare.assign(n, -1);
    s.ambiguous.assign(n, false);
    struct Cand {
        double w;
        Index bare;
        Index j;
    };
    std::vector<Cand> cand;
    for (Index j = 0; j < n; ++j) {
        double top = 0.0, second = 0.0;
        for (Index r = 0; r < dim; ++r) {
            const double w = std::norm(s.vecs(r, j));
            if (w > top) {
                second = top;
                top = w;
            } else if (w > second) {
                second = w;
            }
            if (w >= 0.02)
                cand.push_back({w, r, j});
        }
        if (top - second < 1e-3)
            s.ambiguous[j] = true;
    }
    std::stable_sort(cand.begin(), cand.end(), [](const Cand& a, const Cand& b) {
        if (a.w != b.w)
            return a.w > b.w;
        if (a.j != b.j)
            return a.j < b.j;
        return a.bare < b.bare;
    });
    for (const auto& c : cand) {
        if (s.bare_to_dressed[c.bare] >= 0 || s.dressed_to_bare[c.j] >= 0)
            continue;
        s.bare_to_dressed[c.bare] = c.j;
        s.dressed_to_bare[c.j] = c.bare;
    }
    s.unassigned_bare.clear();
    for (Index r = 0; r < dim; ++r)
        if (s.bare_to_dressed[r] < 0)
            s.unassigned_bare.push_back(r);
}

}  // namespace

QuasienergySpectrum quasienergy_spectrum(const FloquetMatrix& f, SpectrumMethod method)
{
    QuasienergySpectrum s;
    if (method.kind == SpectrumMethod::Kind::dense) {
        if (f.dim() > 5000)
            throw UsageError("dense quasienergy spectrum limited to dimension 5000, matrix has "
                             + std::to_string(f.dim()) + "; use a window");
        Eigen::SelfAdjointEigenSolver<Mat> es(f.dense());
        if (es.info() != Eigen::Success)
            throw PhysicsError("dense eigensolver did not converge");
        s.eps = es.eigenvalues();
        s.vecs = es.eigenvectors();
        s.complete = true;
    } else {
        if (method.count < 1)
            throw UsageError("window spectrum needs a positive count");
        window_eigensolve(f.full(), method.center, method.count, method.tol, s.eps, s.vecs);
        s.complete = method.count >= f.dim();
    }
    assign(s, f.dim());
    return s;
}

Mat transition_probability_time_avg_matrix(const FloquetMatrix& f, const QuasienergySpectrum& s)
{
    const Index d = f.qubit_dim();
    const Index n = s.eps.size();
    const Index zero = f.block_of(Key(f.n_modes(), 0));
    Mat w = s.vecs.cwiseAbs2().cast<cplx>();
    Mat init = w.middleRows(zero * d, d);  // d x n
    Mat fin = Mat::Zero(d, n);
    for (Index b = 0; b < f.n_blocks(); ++b)
        fin += w.middleRows(b * d, d);
    return fin * init.transpose();
}

double transition_probability_time_avg(const FloquetMatrix& f, const QuasienergySpectrum& s,
                                       Index alpha, Index beta)
{
    const Index d = f.qubit_dim();
    if (alpha < 0 || alpha >= d || beta < 0 || beta >= d)
        throw UsageError("transition_probability_time_avg: state index out of range");
    const Index zero = f.block_of(Key(f.n_modes(), 0));
    double p = 0.0;
    for (Index j = 0; j < s.eps.size(); ++j) {
        const double wa = std::norm(s.vecs(zero * d + alpha, j));
        double wb = 0.0;
        for (Index b = 0; b < f.n_blocks(); ++b)
            wb += std::norm(s.vecs(b * d + beta, j));
        p += wa * wb;
    }
    return p;
}

namespace {

// Columns: amplitude <<beta, n| U_F(t) |alpha, 0>> for all rows.
Vec composite_column(const QuasienergySpectrum& s, Index col_row, double t)
{
    const double two_pi = 2.0 * std::numbers::pi;
    Vec c(s.eps.size());
    for (Index j = 0; j < s.eps.size(); ++j)
        c[j] = std::conj(s.vecs(col_row, j)) * std::exp(cplx(0.0, -two_pi * s.eps[j] * t));
    return s.vecs * c;
}

double photon_phase(const FloquetMatrix& f, Index block, double t)
{
    const Key m = f.photon(block);
    double ph = 0.0;
    for (int i = 0; i < f.n_modes(); ++i)
        ph += m[i] * f.modes()[i].frequency;
    return 2.0 * std::numbers::pi * ph * t;
}

}  // namespace

std::vector<double> transition_probability_time_dep(const FloquetMatrix& f,
                                                    const QuasienergySpectrum& s, Index alpha,
                                                    Index beta, const std::vector<double>& t,
                                                    TimeDepForm form)
{
    const Index d = f.qubit_dim();
    if (alpha < 0 || alpha >= d || beta < 0 || beta >= d)
        throw UsageError("transition_probability_time_dep: state index out of range");
    const Index col = f.row({alpha, Key(f.n_modes(), 0)});
    std::vector<double> out;
    out.reserve(t.size());
    for (double ti : t) {
        const Vec u = composite_column(s, col, ti);
        if (form == TimeDepForm::amplitude) {
            cplx a = 0.0;
            for (Index b = 0; b < f.n_blocks(); ++b)
                a += std::exp(cplx(0.0, photon_phase(f, b, ti))) * u[b * d + beta];
            out.push_back(std::norm(a));
        } else {
            double p = 0.0;
            for (Index b = 0; b < f.n_blocks(); ++b)
                p += std::norm(u[b * d + beta]);
            out.push_back(p);
        }
    }
    return out;
}

Mat floquet_propagator(const FloquetMatrix& f, const QuasienergySpectrum& s, double t)
{
    const Index d = f.qubit_dim();
    const Index zero = f.block_of(Key(f.n_modes(), 0));
    const double two_pi = 2.0 * std::numbers::pi;
    Mat rhs = s.vecs.middleRows(zero * d, d).adjoint();  // n x d
    for (Index j = 0; j < s.eps.size(); ++j)
        rhs.row(j) *= std::exp(cplx(0.0, -two_pi * s.eps[j] * t));
    const Mat ucol = s.vecs * rhs;  // D x d
    Mat u = Mat::Zero(d, d);
    for (Index b = 0; b < f.n_blocks(); ++b)
        u += std::exp(cplx(0.0, photon_phase(f, b, t))) * ucol.middleRows(b * d, d);
    return u;
}

double floquet_unitarity_defect(const QuasienergySpectrum& s, double t)
{
    const double two_pi = 2.0 * std::numbers::pi;
    Vec ph(s.eps.size());
    for (Index j = 0; j < s.eps.size(); ++j)
        ph[j] = std::exp(cplx(0.0, -two_pi * s.eps[j] * t));
    const Mat u = s.vecs * ph.asDiagonal() * s.vecs.adjoint();
    const Mat e = u * u.adjoint() - Mat::Identity(u.rows(), u.cols());
    return max_abs(e);
}

}  // namespace floq
