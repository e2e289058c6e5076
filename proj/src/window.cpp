#include "tpad/window.hpp"

#include <cmath>

namespace tpad {

int ScalingWindow::round_even(double v) { return 2 * static_cast<int>(std::lround(v / 2.0)); }

int ScalingWindow::line_T(double t) const {
    return 2 * static_cast<int>(std::floor((t * qn - 1.0) / 2.0)) + 2;
}

int ScalingWindow::x_top() const { return nxc + 1 + round_even(alpha * pn); }

ScalingWindow make_window_a(int n, double a, double beta) {
    if (n < 4 || n % 4 != 0) throw std::invalid_argument("order must be 4m");
    if (!(a > 0.0) || a >= 1.0) throw std::invalid_argument("window needs 0 < a < 1");
    ScalingWindow w;
    w.n = n;
    w.a = a;
    w.gamma = std::log(a) / std::log(static_cast<double>(n)) + 1.0;
    w.c = a / (1.0 + a * a);
    const double lo = n * (1.0 - 0.5 * std::sqrt(1.0 + 2.0 * w.c));
    const double hi = n * (1.0 - 0.5 * std::sqrt(1.0 - 2.0 * w.c));
    w.nxc = 2 * static_cast<int>(std::floor(hi / 2.0));
    if (w.nxc < lo) throw std::runtime_error("no even reference point in window interval");
    w.xi_c = static_cast<double>(w.nxc) / n - 1.0;
    w.xi_f = -0.5 * std::sqrt(1.0 + 2.0 * w.c);
    w.pn = std::cbrt(a * n);
    w.qn = std::cbrt(static_cast<double>(n) * n / a);
    w.beta = beta;
    w.alpha = beta * std::log(static_cast<double>(n));
    w.curlyG = std::sqrt(a / 2.0) * std::exp(a / 2.0);
    return w;
}

ScalingWindow make_window(int n, double gamma, double beta) {
    if (!(gamma > 0.0) || gamma >= 0.5) throw std::invalid_argument("gamma must lie in (0,1/2)");
    ScalingWindow w = make_window_a(n, std::pow(static_cast<double>(n), gamma - 1.0), beta);
    w.gamma = gamma;
    return w;
}

WindowPoint round_point(const ScalingWindow& w, double alpha, double beta) {
    WindowPoint p;
    p.A = ScalingWindow::round_even(alpha * w.pn);
    p.B = ScalingWindow::round_even(beta * w.qn);
    p.alpha = p.A / w.pn;
    p.beta = p.B / w.qn;
    return p;
}

Vertex window_white(const ScalingWindow& w, const WindowPoint& p, int eps1) {
    const int X = w.nxc + 1 + p.A;
    return {X - p.B, X + p.B + 2 * eps1 - 1};
}

Vertex window_black(const ScalingWindow& w, const WindowPoint& p, int eps2) {
    const int X = w.nxc + 1 + p.A;
    return {X - p.B + 2 * eps2 - 1, X + p.B};
}

nlohmann::json window_to_json(const ScalingWindow& w) {
    return {{"n", w.n},         {"gamma", w.gamma}, {"a", w.a},       {"c", w.c},
            {"nxc", w.nxc},     {"xi_c", w.xi_c},   {"xi_f", w.xi_f}, {"pn", w.pn},
            {"qn", w.qn},       {"alpha", w.alpha}, {"beta", w.beta}, {"curlyG", w.curlyG},
            {"x_top", w.x_top()}};
}

}  // namespace tpad
