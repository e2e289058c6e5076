#pragma once

#include <json.hpp>

#include "tpad/lattice.hpp"

namespace tpad {

// Scaling window around the rough-smooth reference point on the main diagonal.
struct ScalingWindow {
    int n = 0;
    double gamma = 0.0;
    double a = 0.0;
    double c = 0.0;
    int nxc = 0;  // n(1+xi_c), even
    double xi_c = 0.0;
    double xi_f = 0.0;
    double pn = 0.0;
    double qn = 0.0;
    double beta = 1.0;
    double alpha = 0.0;
    double curlyG = 0.0;

    // nearest even integer to v
    static int round_even(double v);
    // t' q_n for the piecewise-constant extension
    int line_T(double t) const;
    // e1 position of the window's top face
    int x_top() const;
    // window coordinate of an e1 position
    double xi_of(int X) const { return (X - nxc - 1) / pn; }
    int X_of(double alpha_) const { return nxc + 1 + round_even(alpha_ * pn); }
};

ScalingWindow make_window(int n, double gamma, double beta = 1.0);
// same window data but with an explicit weight a (gamma recorded as log_n a + 1)
ScalingWindow make_window_a(int n, double a, double beta = 1.0);

struct WindowPoint {
    double alpha = 0.0;  // achieved after rounding
    double beta = 0.0;
    int A = 0;  // rounded alpha p_n
    int B = 0;  // rounded beta q_n
};

WindowPoint round_point(const ScalingWindow& w, double alpha, double beta);

// white vertex for (alpha_j, beta_j, eps1) and black vertex for (alpha_i, beta_i, eps2)
Vertex window_white(const ScalingWindow& w, const WindowPoint& p, int eps1);
Vertex window_black(const ScalingWindow& w, const WindowPoint& p, int eps2);

nlohmann::json window_to_json(const ScalingWindow& w);

}  // namespace tpad
