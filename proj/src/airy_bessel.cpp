#include "tpad/airy_bessel.hpp"

#include <gsl/gsl_integration.h>

#include <Eigen/Dense>
#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <stdexcept>

namespace tpad {

void gauss_legendre(int n, double lo, double hi, std::vector<double>& x, std::vector<double>& w) {
    gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(n);
    if (!t) throw std::runtime_error("gauss_legendre: table allocation failed");
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) gsl_integration_glfixed_point(lo, hi, i, &x[i], &w[i], t);
    gsl_integration_glfixed_table_free(t);
}

namespace {

// Gamma_+ (sign>0) or Gamma_- (sign<0): two rays from +-i delta; right ray inward, left ray outward
void airy_contour(int sign, const AiryQuad& q, std::vector<cplx>& z, std::vector<cplx>& dz) {
    std::vector<double> t, wt;
    gauss_legendre(q.ray_nodes, 0.0, q.ray_length, t, wt);
    cplx d1 = std::polar(1.0, PI / 6), d2 = std::polar(1.0, 5 * PI / 6);
    if (sign < 0) {
        d1 = std::conj(d1);
        d2 = std::conj(d2);
    }
    const cplx base = I * q.delta * double(sign);
    z.clear();
    dz.clear();
    for (int i = 0; i < q.ray_nodes; ++i) {
        z.push_back(base + t[i] * d1);
        dz.push_back(-d1 * wt[i]);
    }
    for (int i = 0; i < q.ray_nodes; ++i) {
        z.push_back(base + t[i] * d2);
        dz.push_back(d2 * wt[i]);
    }
}

// Fw(w; tau, xi) and Fz(z; tau', xi') with the measure folded in
cplx Fw(cplx w, cplx dw, double tau, double xi) {
    return std::exp(-(I * w * w * w / 3.0 - tau * w * w + I * w * (xi - tau * tau))) * dw;
}
cplx Fz(cplx z, cplx dz, double taup, double xip) {
    return std::exp(I * z * z * z / 3.0 - taup * z * z + I * z * (xip - taup * taup)) * dz;
}

const cplx AIRY_NORM = 1.0 / (I * (2.0 * PI * I) * (2.0 * PI * I));

constexpr double SPECTRAL_GAP = 1.0;
constexpr double SPECTRAL_CUT = 40.0;  // e^{-40} tail
constexpr int SPECTRAL_NODES = 400;

}  // namespace

double psi(double tau, double xi, double taup, double xip) {
    const double d = taup - tau;
    if (!(d > 0)) throw std::domain_error("psi needs tau < tau'");
    const double e = -(xi - xip) * (xi - xip) / (4 * d) - 0.5 * d * (xi + xip) + d * d * d / 12.0 - 0.5 * std::log(4 * PI * d);
    return std::exp(e);
}

cplx airy_tilde(double tau, double xi, double taup, double xip, const AiryQuad& q) {
    std::vector<cplx> z, dz, w, dw;
    airy_contour(+1, q, z, dz);
    airy_contour(-1, q, w, dw);
    std::vector<cplx> fz(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) fz[k] = Fz(z[k], dz[k], taup, xip);
    cplx s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const cplx fw = Fw(w[j], dw[j], tau, xi);
        cplx inner = 0.0;
        for (std::size_t k = 0; k < z.size(); ++k) inner += fz[k] / (z[k] - w[j]);
        s += fw * inner;
    }
    return AIRY_NORM * std::exp((taup * taup * taup - tau * tau * tau) / 3.0 + tau * xi - taup * xip) * s;
}

double extended_kernel(double tau, double xi, double taup, double xip, const AiryQuad& q) {
    double v = airy_tilde(tau, xi, taup, xip, q).real();
    if (tau < taup) v -= psi(tau, xi, taup, xip);
    return v;
}

double gauge(double alpha_i, double beta_i, double alpha_j, double beta_j) {
    return std::exp(beta_j * alpha_j - beta_i * alpha_i + 2.0 / 3.0 * (beta_j * beta_j * beta_j - beta_i * beta_i * beta_i));
}

double airy_kernel_reference(double x, double y) {
    using boost::math::airy_ai;
    using boost::math::airy_ai_prime;
    if (std::abs(x - y) < 1e-12) {
        const double a = airy_ai(x), ap = airy_ai_prime(x);
        return ap * ap - x * a * a;
    }
    return (airy_ai(x) * airy_ai_prime(y) - airy_ai_prime(x) * airy_ai(y)) / (x - y);
}

FddResult airy_process_fdd(const AiryQuery& qr) {
    const std::size_t J = qr.times.size();
    if (J == 0 || qr.levels.size() != J) throw std::invalid_argument("airy fdd: times and levels must match");
    for (std::size_t k = 1; k < J; ++k)
        if (!(qr.times[k] > qr.times[k - 1])) throw std::invalid_argument("airy fdd: times must increase");
    double top = qr.levels[0];
    for (double l : qr.levels) top = std::max(top, l);
    const double upper = top + qr.span;
    const int M = qr.nodes;
    const int D = static_cast<int>(J) * M;

    std::vector<double> xs(D), ws(D);
    for (std::size_t k = 0; k < J; ++k) {
        std::vector<double> x, w;
        gauss_legendre(M, qr.levels[k], upper, x, w);
        for (int a = 0; a < M; ++a) {
            xs[k * M + a] = x[a];
            ws[k * M + a] = w[a];
        }
    }
    std::vector<cplx> z, dz, w, dw;
    airy_contour(+1, qr.quad, z, dz);
    airy_contour(-1, qr.quad, w, dw);
    const int P = static_cast<int>(z.size());
    Eigen::MatrixXcd C(P, P);
    for (int j = 0; j < P; ++j)
        for (int k = 0; k < P; ++k) C(j, k) = 1.0 / (z[k] - w[j]);

    // Blocks are evaluated at times (0, tau' - tau), the kernel being stationary. Far apart blocks use
    // int e^{-lambda (tau - tau')} Ai(xi + lambda) Ai(xi' + lambda) over the half line on the side where it
    // converges; the contour form would have to cancel exp(|tau' - tau|^3 / 12) against Psi there.
    std::vector<double> lam, lw;
    gauss_legendre(SPECTRAL_NODES, 0.0, 1.0, lam, lw);
    FddResult res;
    Eigen::MatrixXd Mat = Eigen::MatrixXd::Identity(D, D);
    for (std::size_t bk = 0; bk < J; ++bk)
        for (std::size_t bl = 0; bl < J; ++bl) {
            const double g = qr.times[bl] - qr.times[bk];
            Eigen::MatrixXd V(M, M);
            if (std::abs(g) > SPECTRAL_GAP) {
                const double s = g > 0 ? -1.0 : 1.0;  // integrate xi - lambda when tau < tau'
                const double L = SPECTRAL_CUT / std::abs(g);
                Eigen::MatrixXd Ar(M, SPECTRAL_NODES), Ac(SPECTRAL_NODES, M);
                for (int q = 0; q < SPECTRAL_NODES; ++q) {
                    const double l = L * lam[q], wq = L * lw[q] * std::exp(-l * std::abs(g));
                    for (int a = 0; a < M; ++a) {
                        Ar(a, q) = wq * boost::math::airy_ai(xs[bk * M + a] + s * l);
                        Ac(q, a) = boost::math::airy_ai(xs[bl * M + a] + s * l);
                    }
                }
                V = s * (Ar * Ac);
            } else {
                Eigen::MatrixXcd FW(M, P), FZ(P, M);
                for (int a = 0; a < M; ++a)
                    for (int j = 0; j < P; ++j) FW(a, j) = Fw(w[j], dw[j], 0.0, xs[bk * M + a]);
                for (int k = 0; k < P; ++k)
                    for (int a = 0; a < M; ++a) FZ(k, a) = Fz(z[k], dz[k], g, xs[bl * M + a]);
                const Eigen::MatrixXcd At = FW * (C * FZ);
                for (int a = 0; a < M; ++a)
                    for (int b = 0; b < M; ++b) {
                        const double xi = xs[bk * M + a], xip = xs[bl * M + b];
                        const cplx at = AIRY_NORM * std::exp(g * g * g / 3.0 - g * xip) * At(a, b);
                        res.residue = std::max(res.residue, std::abs(at.imag()));
                        V(a, b) = at.real() - (g > 0 ? psi(0.0, xi, g, xip) : 0.0);
                    }
            }
            for (int a = 0; a < M; ++a)
                for (int b = 0; b < M; ++b) {
                    const int r = int(bk) * M + a, c = int(bl) * M + b;
                    Mat(r, c) -= std::sqrt(ws[r]) * V(a, b) * std::sqrt(ws[c]);
                }
        }
    double det = Mat.partialPivLu().determinant();
    if (det < -1e-6 || det > 1.0 + 1e-6) throw std::runtime_error("airy fdd: determinant outside [0,1]");
    res.value = std::clamp(det, 0.0, 1.0);
    res.nodes_used = D;
    return res;
}

}  // namespace tpad
