#include <doctest.h>

#include <random>

#include "tpad/analytic_kernel.hpp"
#include "tpad/oracle.hpp"
#include "tpad/window.hpp"

using namespace tpad;

namespace {

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("square root branch") {
    const double c = 0.18;
    CHECK(close(branch_sqrt(1.0, c), std::sqrt(1 + 2 * c), 1e-15));
    CHECK(close(branch_sqrt(I, c), I * 0.8, 1e-15));
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int k = 0; k < 200; ++k) {
        const cplx w(u(gen), u(gen));
        if (std::abs(w.real()) < 1e-3) continue;
        CHECK(close(branch_sqrt(std::conj(w), c), std::conj(branch_sqrt(w, c)), 1e-13));
        CHECK(close(branch_sqrt(w, c), branch_sqrt_logform(w, c), 1e-12));
        CHECK(close(branch_sqrt(w, c) * branch_sqrt(w, c), w * w + 2 * c, 1e-12));
    }
    CHECK_THROWS(branch_sqrt(cplx(0, 0.1), c));
}

TEST_CASE("G identities") {
    const double c = c_of(0.4);
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int k = 0; k < 200; ++k) {
        const cplx w(u(gen), u(gen));
        if (std::abs(w.real()) < 1e-3) continue;
        const cplx g = G_eval(w, c);
        CHECK(std::abs(g) < 1.0);
        CHECK(close(std::sqrt(c / 2) * (g - 1.0 / g), w, 1e-11));
        CHECK(close(G_eval(-w, c), -g, 1e-13));
        CHECK(close(G_eval(std::conj(w), c), std::conj(g), 1e-13));
    }
    CHECK(close(G_eval(I, c), I * (1 - std::sqrt(1 - 2 * c)) / std::sqrt(2 * c), 1e-14));
    // |G(i)| against sqrt(a/2) as a -> 0
    const double a = 1e-4;
    CHECK(std::abs(G_eval(I, c_of(a))) / std::sqrt(a / 2) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("E symmetries and decay") {
    const double a = 0.3;
    for (auto [k, l] : {std::pair{1, 2}, {3, 0}, {2, 5}}) {
        const cplx e = E_kl(k, l, a).value;
        CHECK(close(E_kl(-k, l, a).value, e, 1e-13));
        CHECK(close(E_kl(k, -l, a).value, e, 1e-13));
    }
    double prev = INFINITY;
    for (int s = 0; s <= 12; s += 4) {
        const double v = std::abs(E_kl(s, s, a).value);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("coordinates") {
    const DimerCoordinates d = make_coords({3, 2}, {2, 5});
    CHECK(d.k2 == d.k1 + 1 - 2 * d.h);
    CHECK(d.l2 == d.l1 + 1);
    CHECK(h_index(0, 0) == 0);
    CHECK(h_index(0, 1) == 1);
    CHECK(h_index(1, 0) == 1);
    CHECK(h_index(1, 1) == 0);
}

TEST_CASE("log H") {
    const int n = 8;
    const double c = c_of(0.5);
    const cplx w = std::polar(0.9, 0.3);
    CHECK(close(std::exp(log_H(n, n, w, n, c)), std::pow(w, n / 2), 1e-13));
    // conjugate points for the real-symmetric model
    CHECK(close(std::exp(log_H(3, 6, std::conj(w), n, c)), std::conj(std::exp(log_H(3, 6, w, n, c))), 1e-12));
}

TEST_CASE("V parity and g constants") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.3, 1.5), ang(0, 6.28);
    for (int e1 : {0, 1})
        for (int e2 : {0, 1})
            for (int k = 0; k < 20; ++k) {
                const cplx w1 = std::polar(u(gen), ang(gen)), w2 = std::polar(u(gen), ang(gen));
                const double sgn = ((e1 + e2) % 2) ? -1.0 : 1.0;
                CHECK(close(V_eval(e1, e2, -w1, -w2, 0.3), sgn * V_eval(e1, e2, w1, w2, 0.3), 1e-11));
            }
    // small-a form of g
    const double a = 1e-5;
    for (int e1 : {0, 1})
        for (int e2 : {0, 1}) {
            const cplx expect = ipow(1 + e1 * (1 - e2) - e2 * (1 - e1)) * std::pow(a / 2, (e1 + e2) / 2.0);
            CHECK(std::abs(g_const(e1, e2, a) / expect - 1.0) < 1e-2);
        }
    // V00 ~ -w1/(2 w2)
    const cplx w1(0.7, 0.4), w2(-0.3, 0.9);
    CHECK(std::abs(V_eval(0, 0, w1, w2, 1e-6) + w1 / (2.0 * w2)) < 1e-4);
}

TEST_CASE("contour formula matches the dense inverse") {
    for (double a : {0.3, 0.7}) {
        const auto m = make_model(8, a);
        const KinvMatrix K = invert_kasteleyn(m);
        std::mt19937_64 gen(7);
        for (int k = 0; k < 12; ++k) {
            const int wi = int(gen() % m->white.size()), bi = int(gen() % m->black.size());
            const KinvAnalytic v = kinv_analytic(*m, m->white[wi], m->black[bi]);
            CHECK(std::abs(v.value - K.at(wi, bi)) <= 1e-8);
        }
    }
    // annulus is empty when a = b
    const auto m1 = make_model(4, 1.0);
    CHECK_THROWS_AS(kinv_analytic(*m1, m1->white[0], m1->black[0]), std::invalid_argument);
}

TEST_CASE("B is radius independent") {
    const double a = 0.1;
    const DimerCoordinates d = make_coords({9, 6}, {6, 9});
    ContourSpec r1, r2;
    r1.radius = 0.6;
    r2.radius = 0.75;
    const Estimate b1 = B_integral(d, a, 16, r1), b2 = B_integral(d, a, 16, r2);
    CHECK(b1.converged());
    CHECK(std::abs(b1.value - b2.value) <= 1e-9 * std::max(1.0, std::abs(b1.value)));
    const Estimate s1 = Bstar_integral(d, a, 16, r1), s2 = Bstar_integral(d, a, 16, r2);
    CHECK(std::abs(s1.value - s2.value) <= 1e-9 * std::max(1.0, std::abs(s1.value)));
}

TEST_CASE("scaling window") {
    for (int n : {256, 1024, 4096}) {
        const ScalingWindow w = make_window(n, 0.3);
        CHECK(w.pn * w.qn == doctest::Approx(double(n)).epsilon(1e-12));
        CHECK(w.pn * w.pn * w.pn == doctest::Approx(w.a * n).epsilon(1e-12));
        CHECK(w.nxc % 2 == 0);
        CHECK(w.nxc >= n * (1 - 0.5 * std::sqrt(1 + 2 * w.c)));
        CHECK(w.nxc <= n * (1 - 0.5 * std::sqrt(1 - 2 * w.c)));
        const WindowPoint p = round_point(w, 0.7, -0.4);
        CHECK(p.A % 2 == 0);
        CHECK(p.B % 2 == 0);
    }
    CHECK_THROWS(make_window(64, 0.6));
}

TEST_CASE("rescaled kernel: equal beta has no Gaussian part") {
    const ScalingWindow w = make_window(1024, 0.3);
    const RescaledValue v = rescaled_kernel(w, 1.0, 0.0, 0, 0.0, 0.0, 0);
    CHECK(std::isfinite(std::abs(v.value)));
    CHECK(std::abs(v.target.imag()) < 1e-12);
}

TEST_CASE("discrete Bessel kernel") {
    for (int i : {-2, 0, 2})
        for (int j : {-2, 0, 2}) {
            const Estimate k = bessel_kernel(i, j, 1.0);
            CHECK(std::abs(k.value - bessel_series(i, j, 1.0)) < 1e-10);
        }
    ContourSpec r;
    r.radius = 0.5;
    CHECK(std::abs(bessel_kernel(0, 2, 1.0, r).value - bessel_kernel(0, 2, 1.0).value) < 1e-10);
    CHECK(std::abs(bessel_series(0, 0, 1.0)) > std::abs(bessel_series(0, 4, 1.0)));
    CHECK(std::abs(bessel_series(0, 4, 1.0)) > std::abs(bessel_series(0, 8, 1.0)));
}
