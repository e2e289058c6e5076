#pragma once

#include <vector>

#include "tpad/common.hpp"

namespace tpad {

struct AiryQuad {
    double ray_length = 10.0;  // T
    int ray_nodes = 120;       // Gauss-Legendre nodes per ray
    double delta = 1.0;        // rays start at +-i delta
};

double psi(double tau, double xi, double taup, double xip);
cplx airy_tilde(double tau, double xi, double taup, double xip, const AiryQuad& q = {});
double extended_kernel(double tau, double xi, double taup, double xip, const AiryQuad& q = {});
double gauge(double alpha_i, double beta_i, double alpha_j, double beta_j);

// independent equal-time reference via Ai, Ai'
double airy_kernel_reference(double x, double y);

struct AiryQuery {
    std::vector<double> times;
    std::vector<double> levels;
    int nodes = 40;        // Nystrom nodes per time block
    double span = 12.0;    // integrate (xi, max xi + span)
    AiryQuad quad;
};

struct FddResult {
    double value = 0.0;
    double residue = 0.0;  // largest imaginary part seen in the kernel
    int nodes_used = 0;
};

// P[A(t_1) <= xi_1, ...] = det(I - chi A chi)
FddResult airy_process_fdd(const AiryQuery& q);

// Gauss-Legendre nodes/weights on [lo, hi]
void gauss_legendre(int n, double lo, double hi, std::vector<double>& x, std::vector<double>& w);

}  // namespace tpad
