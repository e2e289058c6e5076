#include <doctest.h>

#include <cmath>

#include "tpad/airy_bessel.hpp"

using namespace tpad;

TEST_CASE("Gaussian part") {
    CHECK(psi(0, 0, 1, 0) == doctest::Approx(std::exp(1.0 / 12) / std::sqrt(4 * PI)).epsilon(1e-14));
    CHECK_THROWS(psi(1, 0, 1, 0));
    CHECK(psi(0, 0.5, 1e-4, -0.5) < 1e-100);
}

TEST_CASE("equal-time kernel is the Airy kernel") {
    for (double x : {-3.0, -1.0, 0.0, 1.5, 3.0}) {
        CHECK(extended_kernel(0, x, 0, x) == doctest::Approx(airy_kernel_reference(x, x)).epsilon(1e-8));
        CHECK(extended_kernel(0, x, 0, x + 0.7) == doctest::Approx(extended_kernel(0, x + 0.7, 0, x)).epsilon(1e-8));
    }
    CHECK(airy_kernel_reference(0, 0) == doctest::Approx(0.0670).epsilon(1e-2));
    double prev = INFINITY;
    for (double x = 0; x <= 8; x += 2) {
        const double v = extended_kernel(0, x, 0, x);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("indicator in the extended kernel") {
    const cplx at = airy_tilde(0.5, 0.3, 0.0, -0.2);
    CHECK(extended_kernel(0.5, 0.3, 0.0, -0.2) == doctest::Approx(at.real()).epsilon(1e-12));
    CHECK(extended_kernel(0.0, 0.3, 0.5, -0.2) ==
          doctest::Approx(airy_tilde(0.0, 0.3, 0.5, -0.2).real() - psi(0.0, 0.3, 0.5, -0.2)).epsilon(1e-12));
}

TEST_CASE("Airy process distributions") {
    AiryQuery q;
    q.times = {0};
    q.levels = {0};
    // Tracy-Widom GUE at 0
    CHECK(airy_process_fdd(q).value == doctest::Approx(0.96937282835).epsilon(1e-9));
    q.levels = {12};
    CHECK(airy_process_fdd(q).value == doctest::Approx(1.0).epsilon(1e-12));

    AiryQuery a, b;
    a.times = {0.0, 1.0};
    b.times = {0.5, 1.5};
    a.levels = b.levels = {-0.5, 0.3};
    CHECK(airy_process_fdd(a).value == doctest::Approx(airy_process_fdd(b).value).epsilon(1e-8));

    AiryQuery lo = a;
    lo.levels = {-0.7, 0.3};
    CHECK(airy_process_fdd(lo).value <= airy_process_fdd(a).value);

    CHECK(airy_process_fdd(a).residue < 1e-8);
}

namespace {

double two_time(double t, double x, double y) {
    AiryQuery q;
    q.times = {0.0, t};
    q.levels = {x, y};
    return airy_process_fdd(q).value;
}

double one_time(double x) {
    AiryQuery q;
    q.times = {0.0};
    q.levels = {x};
    return airy_process_fdd(q).value;
}

}  // namespace

TEST_CASE("far apart times decorrelate") {
    CHECK(std::abs(two_time(6, 0, 0) - one_time(0) * one_time(0)) <= 1e-3);
    // covariance decays like t^-2
    const double p1 = one_time(-1), p2 = one_time(-0.5);
    const double d6 = two_time(6, -1, -0.5) - p1 * p2, d10 = two_time(10, -1, -0.5) - p1 * p2;
    CHECK(d6 > 0);
    CHECK(d10 / d6 == doctest::Approx(0.36).epsilon(0.1));
    // node doubling at a large gap
    AiryQuery q;
    q.times = {0.0, 6.0};
    q.levels = {-1, -0.5};
    const double v40 = airy_process_fdd(q).value;
    q.nodes = 80;
    CHECK(std::abs(airy_process_fdd(q).value - v40) < 1e-10);
}
