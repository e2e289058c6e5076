#include "tpad/analytic_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unsupported/Eigen/FFT>

#include "tpad/airy_bessel.hpp"

namespace tpad {

namespace {

constexpr double EPS = std::numeric_limits<double>::epsilon();

std::vector<cplx> circle(int N, double r) {
    std::vector<cplx> w(N);
    for (int j = 0; j < N; ++j) w[j] = std::polar(r, (j + 0.5) * 2.0 * PI / N);
    return w;
}

// Runs eval(N) -> {value, roundoff scale} with node doubling. At least three levels are
// evaluated so the contraction ratio is available.
template <class F>
QuadReport adapt(F&& eval, const ContourSpec& cs, double radius, cplx& out) {
    QuadReport rep;
    rep.radius = radius;
    std::vector<cplx> hist;
    double scale = 0.0;
    int N = std::max(cs.nodes, 16);
    for (;;) {
        auto [v, sc] = eval(N);
        hist.push_back(v);
        scale = sc;
        rep.nodes = N;
        if (hist.size() >= 2) {
            rep.prev_delta = rep.delta;
            rep.delta = std::abs(hist.back() - hist[hist.size() - 2]);
            // a tolerance below the roundoff floor cannot be met, so the floor also counts
            const double target = std::max(cs.tol * std::max(1.0, std::abs(v)), 1e3 * EPS * std::max(std::abs(v), sc));
            if (hist.size() >= 3 && rep.delta <= target) {
                rep.converged = true;
                break;
            }
        }
        if (2 * N > cs.max_nodes) break;
        N *= 2;
    }
    out = hist.back();
    rep.noise_floor = 1e3 * EPS * std::max(std::abs(out), scale);
    for (std::size_t k = hist.size() - 1; k >= 2; --k) {
        const double d1 = std::abs(hist[k] - hist[k - 1]), d0 = std::abs(hist[k - 1] - hist[k - 2]);
        // last step that can show a ratio of 0.1 at all; a drop into the floor counts as reaching it
        if (d0 > 10.0 * rep.noise_floor) {
            rep.ratio_judged = true;
            rep.ratio_num = std::max(d1, rep.noise_floor);
            rep.ratio_den = d0;
            break;
        }
    }
    return rep;
}

// Laurent coefficients of ytilde in (u, v), degrees -4..4, by sampling on roots of unity
using Coeffs = std::array<std::array<cplx, 9>, 9>;

Coeffs ytilde_coeffs(int g1, int g2, int e1, int e2, double a) {
    constexpr int M = 16;
    std::array<std::array<cplx, M>, M> s{};
    for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q)
            s[p][q] = ytilde(g1, g2, e1, e2, a, 1.0, std::polar(1.0, 2 * PI * p / M), std::polar(1.0, 2 * PI * q / M));
    Coeffs C{};
    double big = 0.0;
    for (int dp = -4; dp <= 4; ++dp)
        for (int dq = -4; dq <= 4; ++dq) {
            cplx acc = 0.0;
            for (int p = 0; p < M; ++p)
                for (int q = 0; q < M; ++q) acc += s[p][q] * std::polar(1.0, -2 * PI * (dp * p + dq * q) / M);
            C[dp + 4][dq + 4] = acc / double(M * M);
            big = std::max(big, std::abs(acc) / (M * M));
        }
    for (auto& row : C)
        for (auto& x : row)
            if (std::abs(x) < 1e-14 * big) x = 0.0;
    return C;
}

struct HArgs {
    int x1, x2;
};

// pref/(2 pi i)^2 iint dw1/w1 dw2 sum_g sgn(g) Q_g(w1,w2)/(w2-w1) H_A(w1)/H_B(w2)
Estimate vdouble(const DimerCoordinates& d, double a, int n, HArgs HA, HArgs HB, const std::array<double, 4>& sgn,
                 cplx logpref, const ContourSpec& cs) {
    const double c = c_of(a);
    const double r = cs.radius > 0 ? cs.radius : default_radius(c);
    if (!(r > std::sqrt(2 * c)) || !(r < 1.0)) throw std::invalid_argument("contour radius must lie in (sqrt(2c), 1)");
    const int e1 = d.e1, e2 = d.e2;
    std::array<Coeffs, 4> C;
    std::array<double, 4> kappa;
    for (int g = 0; g < 4; ++g) {
        const int g1 = g >> 1, g2 = g & 1;
        C[g] = ytilde_coeffs(g1, g2, e1, e2, a);
        const int sgn_e = ((e1 + e2 + e1 * e2) % 2) ? -1 : 1;
        const int sgn_g = ((g1 * (1 + e2) + g2 * (1 + e1)) % 2) ? -1 : 1;
        kappa[g] = sgn[g] * sgn_e * sgn_g / (4.0 * (1 + a * a) * (1 + a * a));
    }
    auto eval = [&](int N) -> std::pair<cplx, double> {
        auto w1 = circle(N, r), w2 = circle(N, 1.0 / r);
        std::vector<cplx> LA(N), LB(N), lG1(N), lGr2(N), s1(N), s2(N), D1(N), D2(N);
        double refA = -std::numeric_limits<double>::infinity(), refB = std::numeric_limits<double>::infinity();
        double cond = 1.0;  // exp(L) carries an absolute exponent error of order eps |L|
        for (int j = 0; j < N; ++j) {
            LA[j] = log_H(HA.x1, HA.x2, w1[j], n, c);
            LB[j] = log_H(HB.x1, HB.x2, w2[j], n, c);
            refA = std::max(refA, LA[j].real());
            refB = std::min(refB, LB[j].real());
            cond = std::max({cond, std::abs(LA[j]), std::abs(LB[j])});
            lG1[j] = std::log(G_eval(w1[j], c));
            lGr2[j] = std::log(G_recip(w2[j], c));
            cplx sq1 = branch_sqrt(w1[j], c), sq1i = branch_sqrt(1.0 / w1[j], c);
            cplx sq2 = branch_sqrt(w2[j], c), sq2i = branch_sqrt(1.0 / w2[j], c);
            s1[j] = w1[j] * sq1i;
            s2[j] = sq2 / w2[j];
            D1[j] = sq1 * sq1i;
            D2[j] = sq2 * sq2i;
        }
        Eigen::FFT<double> fft;
        std::vector<cplx> in(N), out;
        const int sA = 3 * e1 - 1, sB = 3 * e2 - 1;
        std::vector<cplx> total(N, 0.0), mag(N, 0.0);
        std::vector<double> absacc(N, 0.0);
        for (int g = 0; g < 4; ++g) {
            const int g1 = g >> 1, g2 = g & 1;
            std::array<std::vector<cplx>, 9> Ah, Bh;
            // l1 norms of the transformed samples bound the rounding error of each FFT output
            std::array<double, 9> nA{}, nB{};
            for (int p = 0; p < 9; ++p) {
                bool used = false;
                for (int q = 0; q < 9; ++q) used = used || C[g][p][q] != 0.0;
                if (!used) continue;
                for (int j = 0; j < N; ++j) {
                    cplx v = std::exp(LA[j] - refA + double(sA + p - 4) * lG1[j]) / D1[j];
                    if (g1) v *= s1[j];
                    in[j] = v;
                    nA[p] += std::abs(v);
                }
                fft.fwd(out, in);
                Ah[p] = out;
            }
            for (int q = 0; q < 9; ++q) {
                bool used = false;
                for (int p = 0; p < 9; ++p) used = used || C[g][p][q] != 0.0;
                if (!used) continue;
                for (int k = 0; k < N; ++k) {
                    cplx v = std::exp(-(LB[k] - refB) + double(sB + q - 4) * lGr2[k]) / D2[k];
                    if (g2) v *= s2[k];
                    in[k] = v;
                    nB[q] += std::abs(v);
                }
                fft.fwd(out, in);
                Bh[q] = out;
            }
            for (int p = 0; p < 9; ++p) {
                if (Ah[p].empty()) continue;
                for (int m = 0; m < N; ++m) {
                    cplx bb = 0.0;
                    double bn = 0.0;
                    for (int q = 0; q < 9; ++q)
                        if (C[g][p][q] != 0.0) {
                            bb += C[g][p][q] * Bh[q][m];
                            bn += std::abs(C[g][p][q]) * nB[q];
                        }
                    const cplx t = kappa[g] * Ah[p][(N - m) % N] * bb;
                    total[m] += t;
                    absacc[m] += std::abs(kappa[g]) * (std::abs(Ah[p][(N - m) % N]) * bn + nA[p] * std::abs(bb));
                }
            }
        }
        cplx S = 0.0;
        double Sabs = 0.0, rp = 1.0;
        for (int m = 0; m < N; ++m) {
            S += rp * total[m];
            Sabs += rp * absacc[m];
            rp *= r * r;
        }
        const double norm = 1.0 / (double(N) * N * (1.0 - std::pow(r, 2.0 * N)));
        const cplx scale = std::exp(cplx(refA - refB) + logpref);
        return {S * norm * scale, cond * Sabs * norm * std::abs(scale)};
    };
    Estimate est;
    est.reports.push_back(adapt(eval, cs, r, est.value));
    return est;
}

}  // namespace

bool Estimate::converged() const {
    for (const auto& r : reports)
        if (!r.converged) return false;
    return true;
}

cplx branch_sqrt(cplx w, double c) {
    const double s = std::sqrt(2 * c);
    if (std::abs(w.real()) <= 1e-15 * std::max(1.0, std::abs(w)) && std::abs(w.imag()) <= s)
        throw std::domain_error("branch_sqrt: point on the cut");
    return w * std::sqrt(1.0 + 2.0 * c / (w * w));
}

cplx branch_sqrt_logform(cplx w, double c) {
    const double s = std::sqrt(2 * c);
    if (std::abs(w.real()) <= 1e-15 * std::max(1.0, std::abs(w)) && std::abs(w.imag()) <= s)
        throw std::domain_error("branch_sqrt: point on the cut");
    auto L = [](cplx z) {
        cplx l = std::log(z);
        if (l.imag() <= -PI / 2) l += cplx(0.0, 2 * PI);
        return l;
    };
    return std::exp(0.5 * L(w + I * s) + 0.5 * L(w - I * s));
}

cplx G_eval(cplx w, double c) { return (w - branch_sqrt(w, c)) / std::sqrt(2 * c); }

cplx G_recip(cplx w, double c) {
    if (w == 0.0) return 0.0;
    return G_eval(1.0 / w, c);
}

int h_index(int e1, int e2) { return e1 * (1 - e2) + e2 * (1 - e1); }

DimerCoordinates make_coords(const Vertex& x, const Vertex& y) {
    DimerCoordinates d;
    d.x = x;
    d.y = y;
    d.e1 = vertex_class(x);
    d.e2 = vertex_class(y);
    d.h = h_index(d.e1, d.e2);
    d.k1 = (x.x2 - y.x2 - 1) / 2 + d.h;
    d.l1 = (y.x1 - x.x1 - 1) / 2;
    d.k2 = d.k1 + 1 - 2 * d.h;
    d.l2 = d.l1 + 1;
    return d;
}

Estimate E_kl(int k, int l, double a, const ContourSpec& cs, cplx logscale) {
    k = std::abs(k);
    l = std::abs(l);
    const double c = c_of(a);
    const double rho = cs.radius > 0 ? cs.radius : 1.0;
    if (!(rho > std::sqrt(2 * c)) || !(rho < 1.0 / std::sqrt(2 * c)))
        throw std::invalid_argument("E contour must lie inside the annulus of analyticity");
    const cplx pre = ipow(-k - l) / (2.0 * (1 + a * a));
    auto eval = [&](int N) -> std::pair<cplx, double> {
        cplx acc = 0.0;
        double aacc = 0.0, cond = 1.0;
        for (const cplx& w : circle(N, rho)) {
            const cplx lg = double(l) * std::log(G_eval(w, c)) + double(k) * std::log(G_recip(w, c));
            cplx f = std::exp(lg + logscale) / (branch_sqrt(w, c) * branch_sqrt(1.0 / w, c));
            acc += f;
            aacc += std::abs(f);
            cond = std::max(cond, std::abs(lg));
        }
        return {pre * acc / double(N), cond * std::abs(pre) * aacc / N};
    };
    Estimate est;
    est.reports.push_back(adapt(eval, cs, rho, est.value));
    return est;
}

Estimate K11_inv_entry(const DimerCoordinates& d, double a, const ContourSpec& cs, cplx logscale) {
    Estimate e1 = E_kl(d.k1, d.l1, a, cs, logscale);
    Estimate e2 = E_kl(d.k2, d.l2, a, cs, logscale);
    Estimate out;
    out.value = -ipow(1 + d.h) * (std::pow(a, d.e2) * e1.value + std::pow(a, 1 - d.e2) * e2.value);
    out.reports = e1.reports;
    out.reports.insert(out.reports.end(), e2.reports.begin(), e2.reports.end());
    return out;
}

cplx log_H(int x1, int x2, cplx w, int n, double c) {
    // every exponent is an integer, so principal logarithms exponentiate consistently
    return double(n / 2) * std::log(w) + double((n - x1) / 2) * std::log(G_eval(w, c)) -
           double((n - x2) / 2) * std::log(G_recip(w, c));
}

namespace {
cplx yt00(int g1, int g2, double a, double b, cplx u, cplx v) {
    const cplx u2 = u * u, v2 = v * v, u4 = u2 * u2, v4 = v2 * v2;
    const double a2 = a * a, b2 = b * b;
    if (g1 == 0 && g2 == 0)
        return a / (4 * (a2 + b2) * (a2 + b2)) *
               (2 * a2 * a2 * a2 * u2 * v2 - a2 * a2 * b2 * (1.0 + u4 + u2 * v2 - u4 * v2 + v4 - u2 * v4) -
                a2 * b2 * b2 * (1.0 + 3.0 * u2 + 3.0 * v2 + 2.0 * u2 * v2 + u4 * v2 + u2 * v4 - u4 * v4) -
                b2 * b2 * b2 * (1.0 + v2 + u2 + 3.0 * u2 * v2));
    if (g1 == 0 && g2 == 1)
        return a / (4 * (a2 + b2)) * (b2 + a2 * u2) * (2 * a2 * v2 + b2 * (1.0 + v2 - u2 + u2 * v2));
    if (g1 == 1 && g2 == 0)
        return a / (4 * (a2 + b2)) * (b2 + a2 * v2) * (2 * a2 * u2 + b2 * (1.0 - v2 + u2 + u2 * v2));
    return a / 4 * (2 * a2 * u2 * v2 + b2 * (-1.0 + v2 + u2 + u2 * v2));
}
}  // namespace

cplx ytilde(int g1, int g2, int e1, int e2, double a, double b, cplx u, cplx v) {
    if (e1 == 0 && e2 == 0) return yt00(g1, g2, a, b, u, v);
    if (e1 == 0 && e2 == 1) return yt00(g1, g2, b, a, u, 1.0 / v);
    if (e1 == 1 && e2 == 0) return yt00(g1, g2, b, a, 1.0 / u, v);
    return yt00(g1, g2, a, b, 1.0 / u, 1.0 / v);
}

cplx Q_eval(int g1, int g2, int e1, int e2, cplx w1, cplx w2, double a) {
    const double c = c_of(a);
    const cplx den = 4 * (1 + a * a) * (1 + a * a) * branch_sqrt(w1, c) * branch_sqrt(1.0 / w1, c) * branch_sqrt(w2, c) *
                     branch_sqrt(1.0 / w2, c);
    const cplx G1 = G_eval(w1, c), Gr2 = G_recip(w2, c);
    const double sgn = (((e1 + e2 + e1 * e2) + g1 * (1 + e2) + g2 * (1 + e1)) % 2) ? -1.0 : 1.0;
    cplx v = sgn * std::pow(G1, 3 * e1 - 1) * std::pow(Gr2, 3 * e2 - 1) / den;
    if (g1) v *= w1 * branch_sqrt(1.0 / w1, c);
    if (g2) v *= branch_sqrt(w2, c) / w2;
    return v * ytilde(g1, g2, e1, e2, a, 1.0, G1, Gr2);
}

cplx V_eval(int e1, int e2, cplx w1, cplx w2, double a) {
    cplx s = 0.0;
    for (int g = 0; g < 4; ++g) s += Q_eval(g >> 1, g & 1, e1, e2, w1, w2, a);
    return s;
}

cplx g_const(int e1, int e2, double a) { return -2.0 * I * V_eval(e1, e2, I, I, a); }

double default_radius(double c) { return (std::sqrt(2 * c) + 1.0) / 2.0; }

Estimate B_integral(const DimerCoordinates& d, double a, int n, const ContourSpec& cs, cplx logscale) {
    const Vertex &x = d.x, &y = d.y;
    const cplx pref = ipow(mod((x.x2 - x.x1 + y.x1 - y.x2) / 2, 4));
    Estimate e = vdouble(d, a, n, {x.x1 + 1, x.x2}, {y.x1, y.x2 + 1}, {1, 1, 1, 1}, logscale, cs);
    e.value *= pref;
    return e;
}

Estimate Bstar_integral(const DimerCoordinates& d, double a, int n, const ContourSpec& cs, cplx logscale,
                        std::array<cplx, 3>* parts) {
    const int x1 = d.x.x1, x2 = d.x.x2, y1 = d.y.x1, y2 = d.y.x2;
    const int e1 = d.e1, e2 = d.e2;
    auto sg = [](int k) { return (k % 2) ? -1.0 : 1.0; };
    std::array<double, 4> s2, s3, s4;
    for (int g = 0; g < 4; ++g) {
        const int g1 = g >> 1, g2 = g & 1;
        s2[g] = sg(e2 + g2);
        s3[g] = sg(e1 + g1);
        s4[g] = sg(e1 + g1 + e2 + g2);
    }
    Estimate r2 = vdouble(d, a, n, {x1 + 1, x2}, {2 * n - y1, y2 + 1}, s2, logscale, cs);
    Estimate r3 = vdouble(d, a, n, {x1 + 1, 2 * n - x2}, {y1, y2 + 1}, s3, logscale, cs);
    Estimate r4 = vdouble(d, a, n, {x1 + 1, 2 * n - x2}, {2 * n - y1, y2 + 1}, s4, logscale, cs);
    const cplx v2 = -ipow(mod((x1 - x2 - y1 - y2) / 2, 4)) * r2.value;
    const cplx v3 = -ipow(mod((y2 - y1 - x2 - x1) / 2, 4)) * r3.value;
    const cplx v4 = -ipow(mod((y2 + y1 + x2 + x1) / 2, 4)) * r4.value;
    Estimate out;
    out.value = I * sg(e1 + e2) * (v2 + v3) - v4;
    for (auto* r : {&r2, &r3, &r4}) out.reports.insert(out.reports.end(), r->reports.begin(), r->reports.end());
    if (parts) *parts = {v2, v3, v4};
    return out;
}

KinvAnalytic kinv_analytic(const LatticeModel& m, const Vertex& white, const Vertex& black, const ContourSpec& cs) {
    const double a = m.a / m.b;
    DimerCoordinates d = make_coords(white, black);
    Estimate k = K11_inv_entry(d, a, cs);
    Estimate b = B_integral(d, a, m.n, cs);
    Estimate bs = Bstar_integral(d, a, m.n, cs);
    KinvAnalytic out;
    out.k11 = k.value / m.b;
    out.b = b.value / m.b;
    out.bstar = bs.value / m.b;
    out.value = out.k11 - out.b + out.bstar;
    for (auto* e : {&k, &b, &bs}) out.reports.insert(out.reports.end(), e->reports.begin(), e->reports.end());
    return out;
}

RescaledValue rescaled_kernel(const ScalingWindow& w, double alpha_i, double beta_i, int eps2, double alpha_j,
                              double beta_j, int eps1, const ContourSpec& cs, bool with_bstar) {
    RescaledValue out;
    out.pi = round_point(w, alpha_i, beta_i);
    out.pj = round_point(w, alpha_j, beta_j);
    const Vertex x = window_white(w, out.pj, eps1);
    const Vertex y = window_black(w, out.pi, eps2);
    DimerCoordinates d = make_coords(x, y);
    if (d.e1 != eps1 || d.e2 != eps2) throw std::logic_error("window point has the wrong class");
    const double a = w.a;
    const cplx g = g_const(eps1, eps2, a);
    const cplx lpre = double((2 + x.x1 - x.x2 - y.x1 + y.x2) / 2) * std::log(w.curlyG) + std::log(w.pn) - std::log(g) +
                      double(mod(x.x1 - y.x1 - 1, 4)) * cplx(0.0, PI / 2);
    ContourSpec bcs = cs;
    if (bcs.radius <= 0) bcs.radius = 1.0 - 0.5 / w.pn;
    ContourSpec ecs = cs;
    ecs.radius = 0;
    Estimate k = K11_inv_entry(d, a, ecs, lpre);
    Estimate b = B_integral(d, a, w.n, bcs, lpre);
    out.k11_part = k.value;
    out.b_part = -b.value;
    out.reports = k.reports;
    out.reports.insert(out.reports.end(), b.reports.begin(), b.reports.end());
    if (with_bstar) {
        Estimate bs = Bstar_integral(d, a, w.n, bcs, lpre);
        out.bstar_part = bs.value;
        out.reports.insert(out.reports.end(), bs.reports.begin(), bs.reports.end());
    }
    out.value = out.k11_part + out.b_part + out.bstar_part;
    const double tau = -out.pj.beta, xi = out.pj.alpha + out.pj.beta * out.pj.beta;
    const double taup = -out.pi.beta, xip = out.pi.alpha + out.pi.beta * out.pi.beta;
    out.target = -gauge(out.pi.alpha, out.pi.beta, out.pj.alpha, out.pj.beta) * extended_kernel(tau, xi, taup, xip);
    return out;
}

Estimate bessel_kernel(int at_i, int at_j, double nu, const ContourSpec& cs) {
    const double r = cs.radius > 0 ? cs.radius : 0.8;
    if (!(r > 0) || !(r < 1)) throw std::invalid_argument("Bessel contour radius must lie in (0,1)");
    auto eval = [&](int N) -> std::pair<cplx, double> {
        auto w1 = circle(N, r), w2 = circle(N, 1.0 / r);
        std::vector<cplx> A(N), B(N), Ah, Bh;
        for (int j = 0; j < N; ++j) {
            A[j] = w1[j] * std::exp(0.5 * nu * (w1[j] * w1[j] - 1.0 / (w1[j] * w1[j])) + double(at_j) * std::log(w1[j]));
            B[j] = std::exp(-0.5 * nu * (w2[j] * w2[j] - 1.0 / (w2[j] * w2[j])) - double(at_i + 1) * std::log(w2[j]));
        }
        Eigen::FFT<double> fft;
        fft.fwd(Ah, A);
        fft.fwd(Bh, B);
        double nA = 0.0, nB = 0.0;
        for (int j = 0; j < N; ++j) {
            nA += std::abs(A[j]);
            nB += std::abs(B[j]);
        }
        cplx S = 0.0;
        double Sa = 0.0, rp = 1.0;
        for (int m = 0; m < N; ++m) {
            const cplx ah = Ah[(N - m) % N];
            S += rp * ah * Bh[m];
            Sa += rp * (std::abs(ah) * nB + nA * std::abs(Bh[m]));
            rp *= r * r;
        }
        const double norm = 1.0 / (double(N) * N * (1.0 - std::pow(r, 2.0 * N)));
        return {S * norm, Sa * norm};
    };
    Estimate est;
    est.reports.push_back(adapt(eval, cs, r, est.value));
    return est;
}

double bessel_series(int at_i, int at_j, double nu) {
    auto J = [nu](int order) {
        if (order >= 0) return std::cyl_bessel_j(double(order), nu);
        return ((-order) % 2 ? -1.0 : 1.0) * std::cyl_bessel_j(double(-order), nu);
    };
    double s = 0.0;
    for (int k = 1; k < 200; ++k) {
        double t = J(at_i / 2 + k) * J(at_j / 2 + k);
        s += t;
        if (k > 10 && std::abs(t) < 1e-300) break;
    }
    return (mod((at_i - at_j) / 2, 2) ? -1.0 : 1.0) * s;
}

Estimate bessel_limit_check(int n, double nu, int at_i, int at_j, const ContourSpec& cs) {
    const double a = 4.0 * nu / n;
    const int Nj = n / 2 + 1 + at_j, Ni = n / 2 + 1 + at_i;
    DimerCoordinates d = make_coords({Nj, Nj - 1}, {Ni - 1, Ni});
    Estimate b = B_integral(d, a, n, cs);
    b.value *= -a * I;
    return b;
}

double E_leading_log(int m, double a, bool literal) {
    double core;
    if (literal) {
        core = m * (std::log(a / 2.0) + a);
    } else {
        core = 2.0 * m * std::log(std::abs(G_eval(I, c_of(a))));
    }
    return core - 0.5 * std::log(4 * PI) - 0.5 * std::log(2 * a * m);
}

}  // namespace tpad
