#include "tpad/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Sparse>

namespace tpad {

namespace {
Eigen::SparseMatrix<cplx> sparse_kasteleyn(const LatticeModel& m) {
    std::vector<Eigen::Triplet<cplx>> t;
    for (const auto& e : m.edges) t.emplace_back(e.black, e.white, kasteleyn_entry(m, e));
    Eigen::SparseMatrix<cplx> K(m.black.size(), m.white.size());
    K.setFromTriplets(t.begin(), t.end());
    return K;
}
}  // namespace

KinvMatrix invert_kasteleyn(ModelPtr model, int cap) {
    if (model->n > cap) throw std::invalid_argument("oracle size cap exceeded");
    const Eigen::MatrixXcd K = kasteleyn_matrix(*model);
    const auto N = K.rows();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(K);
    KinvMatrix out;
    out.model = std::move(model);
    // K is B x W so its inverse is W x B
    out.inv = lu.solve(Eigen::MatrixXcd::Identity(N, N));
    // one step of iterative refinement
    const Eigen::SparseMatrix<cplx> Ks = sparse_kasteleyn(*out.model);
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Identity(N, N) - Ks * out.inv;
    out.inv += lu.solve(R);
    R = Ks * out.inv - Eigen::MatrixXcd::Identity(N, N);
    // relative to the largest inverse entry, which reaches 1e4 on thin-region models
    out.residual = R.cwiseAbs().maxCoeff() / std::max(1.0, out.inv.cwiseAbs().maxCoeff());
    if (!std::isfinite(out.residual)) throw std::runtime_error("Kasteleyn matrix is singular");
    if (out.residual > 1e-10) throw std::runtime_error("Kasteleyn inverse residual above 1e-10");
    return out;
}

Eigen::MatrixXcd l_matrix(const KinvMatrix& kinv, const std::vector<int>& edges) {
    const LatticeModel& m = *kinv.model;
    const auto k = static_cast<Eigen::Index>(edges.size());
    Eigen::MatrixXcd L(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const EdgeRef& ei = m.edges[edges[i]];
        const cplx kb = kasteleyn_entry(m, ei);
        for (Eigen::Index j = 0; j < k; ++j) {
            const EdgeRef& ej = m.edges[edges[j]];
            L(i, j) = kb * kinv.at(ej.white, ei.black);
        }
    }
    return L;
}

double correlation(const KinvMatrix& kinv, const std::vector<int>& edges) {
    if (edges.empty()) return 1.0;
    const cplx d = l_matrix(kinv, edges).partialPivLu().determinant();
    if (std::abs(d.imag()) > 1e-10) throw std::runtime_error("correlation has an imaginary residue above 1e-10");
    return d.real();
}

double edge_probability(const KinvMatrix& kinv, int edge) { return correlation(kinv, {edge}); }

double gap_probability_exact(const KinvMatrix& kinv, const std::vector<int>& edges) {
    if (edges.empty()) return 1.0;
    Eigen::MatrixXcd L = l_matrix(kinv, edges);
    const auto k = L.rows();
    const cplx d = (Eigen::MatrixXcd::Identity(k, k) - L).partialPivLu().determinant();
    if (std::abs(d.imag()) > 1e-8 || d.real() < -1e-8 || d.real() > 1 + 1e-8)
        throw std::runtime_error("gap probability left [0,1]");
    return std::clamp(d.real(), 0.0, 1.0);
}

Eigen::MatrixXcd kinv_columns(const LatticeModel& m, const std::vector<int>& blacks, double* residual) {
    const Eigen::MatrixXcd K = kasteleyn_matrix(m);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(K);
    const auto N = K.rows();
    Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(N, blacks.size());
    for (std::size_t j = 0; j < blacks.size(); ++j) E(blacks[j], j) = 1.0;
    Eigen::MatrixXcd X = lu.solve(E);
    const Eigen::SparseMatrix<cplx> Ks = sparse_kasteleyn(m);
    X += lu.solve(E - Ks * X);
    const double res = (Ks * X - E).cwiseAbs().maxCoeff() / std::max(1.0, X.cwiseAbs().maxCoeff());
    if (residual) *residual = res;
    if (!(res <= 1e-10)) throw std::runtime_error("Kasteleyn column solve residual above 1e-10");
    return X;
}

double log_abs_det_kasteleyn(const LatticeModel& m) {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(kasteleyn_matrix(m));
    const Eigen::MatrixXcd& U = lu.matrixLU();
    double s = 0.0;
    for (Eigen::Index i = 0; i < U.rows(); ++i) s += std::log(std::abs(U(i, i)));
    return s;
}

}  // namespace tpad
