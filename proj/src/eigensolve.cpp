#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/SparseLU>

#include "floq/floquet.hpp"

namespace floq {

void window_eigensolve(const SpMat& h, double center, int count, double tol, RVec& eps, Mat& vecs)
{
    const Index n = h.rows();
    if (count > n)
        count = int(n);
    const Index block = std::min<Index>(n, count + std::max(8, count / 2));

    SpMat a = h;
    for (Index i = 0; i < n; ++i)
        a.coeffRef(i, i) -= center;
    a.makeCompressed();
    Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success)
        throw PhysicsError("window eigensolver: shift coincides with an eigenvalue; move the center");

    std::mt19937_64 rng(12345);
    std::normal_distribution<double> nd;
    Mat x(n, block);
    for (Index c = 0; c < block; ++c)
        for (Index r = 0; r < n; ++r)
            x(r, c) = cplx(nd(rng), nd(rng));

    RVec theta;
    Mat ritz;
    for (int it = 0; it < 1000; ++it) {
        Mat y = lu.solve(x);
        Eigen::HouseholderQR<Mat> qr(y);
        const Mat q = qr.householderQ() * Mat::Identity(n, block);
        const Mat hq = h * q;
        const Mat small = q.adjoint() * hq;
        Eigen::SelfAdjointEigenSolver<Mat> es((small + small.adjoint()) / 2.0);
        std::vector<Index> order(block);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](Index i, Index j) {
            return std::abs(es.eigenvalues()[i] - center) < std::abs(es.eigenvalues()[j] - center);
        });
        theta.resize(block);
        Mat u(block, block);
        for (Index k = 0; k < block; ++k) {
            theta[k] = es.eigenvalues()[order[k]];
            u.col(k) = es.eigenvectors().col(order[k]);
        }
        x = q * u;
        const Mat r = hq * u - x * theta.cast<cplx>().asDiagonal();
        bool done = true;
        for (int k = 0; k < count; ++k)
            if (r.col(k).norm() > tol * std::max(1.0, std::abs(theta[k])))
                done = false;
        if (done) {
            ritz = x;
            break;
        }
    }
    if (ritz.size() == 0)
        throw PhysicsError("window eigensolver did not converge");
    std::vector<Index> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Index i, Index j) { return theta[i] < theta[j]; });
    eps.resize(count);
    vecs.resize(n, count);
    for (int k = 0; k < count; ++k) {
        eps[k] = theta[order[k]];
        vecs.col(k) = ritz.col(order[k]);
    }
}

}  // namespace floq
