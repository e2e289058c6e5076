#pragma once

#include <array>
#include <vector>

#include "tpad/lattice.hpp"
#include "tpad/window.hpp"

namespace tpad {

struct ContourSpec {
    double radius = 0.0;  // 0 picks the default for the integral
    int nodes = 256;      // starting node count
    double tol = 1e-12;
    int max_nodes = 1 << 16;
};

// Convergence record of one adaptive quadrature.
struct QuadReport {
    int nodes = 0;
    double radius = 0.0;
    double delta = 0.0;       // |v_N - v_{N/2}|
    double prev_delta = 0.0;  // |v_{N/2} - v_{N/4}|
    double noise_floor = 0.0;
    bool converged = false;
    bool ratio_judged = false;
    // last pair whose first difference exceeds 10x the noise floor, second clamped to the floor
    double ratio_num = 0.0, ratio_den = 0.0;
    double ratio() const { return ratio_den > 0 ? ratio_num / ratio_den : 0.0; }
    bool contraction_ok() const { return !ratio_judged || ratio() <= 0.1; }
};

struct Estimate {
    cplx value{0.0, 0.0};
    std::vector<QuadReport> reports;
    bool converged() const;
};

inline double c_of(double a, double b = 1.0) { return (a / b) / (1.0 + (a / b) * (a / b)); }

// w sqrt(1 + 2c/w^2); cut on i[-sqrt(2c), sqrt(2c)]
cplx branch_sqrt(cplx w, double c);
// literal two-logarithm form with arguments in (-pi/2, 3pi/2]
cplx branch_sqrt_logform(cplx w, double c);
cplx G_eval(cplx w, double c);
cplx G_recip(cplx w, double c);

int h_index(int e1, int e2);

struct DimerCoordinates {
    Vertex x;  // white
    Vertex y;  // black
    int e1 = 0, e2 = 0, h = 0;
    int k1 = 0, l1 = 0, k2 = 0, l2 = 0;
};
DimerCoordinates make_coords(const Vertex& white, const Vertex& black);

// logscale is added to the log of the integrand before summation
Estimate E_kl(int k, int l, double a, const ContourSpec& cs = {}, cplx logscale = 0.0);
Estimate K11_inv_entry(const DimerCoordinates& d, double a, const ContourSpec& cs = {}, cplx logscale = 0.0);

cplx log_H(int x1, int x2, cplx w, int n, double c);

cplx ytilde(int g1, int g2, int e1, int e2, double a, double b, cplx u, cplx v);
cplx Q_eval(int g1, int g2, int e1, int e2, cplx w1, cplx w2, double a);
cplx V_eval(int e1, int e2, cplx w1, cplx w2, double a);
// g = -2i V(i,i)
cplx g_const(int e1, int e2, double a);

double default_radius(double c);

Estimate B_integral(const DimerCoordinates& d, double a, int n, const ContourSpec& cs = {}, cplx logscale = 0.0);
// B* and its three constituent integrals (value, r2, r3, r4)
Estimate Bstar_integral(const DimerCoordinates& d, double a, int n, const ContourSpec& cs = {}, cplx logscale = 0.0,
                        std::array<cplx, 3>* parts = nullptr);

struct KinvAnalytic {
    cplx value;
    cplx k11, b, bstar;
    std::vector<QuadReport> reports;
};
// K11 - B + B*, for arbitrary positive (a,b) through the scaling K(a,b) = b K(a/b,1)
KinvAnalytic kinv_analytic(const LatticeModel& m, const Vertex& white, const Vertex& black, const ContourSpec& cs = {});

struct RescaledValue {
    cplx value;   // finite-n rescaled kernel
    cplx target;  // -gauge (A~ - Psi 1) at the achieved point
    cplx k11_part, b_part, bstar_part;
    WindowPoint pi, pj;
    std::vector<QuadReport> reports;
};
RescaledValue rescaled_kernel(const ScalingWindow& w, double alpha_i, double beta_i, int eps2, double alpha_j, double beta_j,
                              int eps1, const ContourSpec& cs = {}, bool with_bstar = true);

// discrete Bessel kernel as a double contour integral
Estimate bessel_kernel(int at_i, int at_j, double nu, const ContourSpec& cs = {});
// series oracle (-1)^{(i-j)/2} sum_k J_{i/2+k}(nu) J_{j/2+k}(nu)
double bessel_series(int at_i, int at_j, double nu);
// -a i B_{0,0} at the remark's coordinates, a = 4 nu / n
Estimate bessel_limit_check(int n, double nu, int at_i, int at_j, const ContourSpec& cs = {});

// leading term of E_{m,m} at a and its log-modulus; literal uses h_1, exact uses |G(i)|
double E_leading_log(int m, double a, bool literal);

}  // namespace tpad
