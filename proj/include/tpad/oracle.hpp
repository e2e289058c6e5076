#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tpad/lattice.hpp"

namespace tpad {

inline constexpr int DEFAULT_ORACLE_CAP = 64;

// Dense inverse of K, indexed W x B.
struct KinvMatrix {
    ModelPtr model;
    Eigen::MatrixXcd inv;
    double residual = 0.0;  // max |K Kinv - I| over max(1, max |Kinv|)
    cplx at(int white_id, int black_id) const { return inv(white_id, black_id); }
};

KinvMatrix invert_kasteleyn(ModelPtr model, int cap = DEFAULT_ORACLE_CAP);

// L(e_i, e_j) = K(b_i, w_i) Kinv(w_j, b_i)
Eigen::MatrixXcd l_matrix(const KinvMatrix& kinv, const std::vector<int>& edges);

// det of L over the edge set; imaginary residue above 1e-10 throws
double correlation(const KinvMatrix& kinv, const std::vector<int>& edges);
double edge_probability(const KinvMatrix& kinv, int edge);

// probability that no edge of the set is covered, det(I - L)
double gap_probability_exact(const KinvMatrix& kinv, const std::vector<int>& edges);

// selected columns Kinv(., b) by LU solves, for sizes beyond a full inverse
Eigen::MatrixXcd kinv_columns(const LatticeModel& m, const std::vector<int>& blacks, double* residual = nullptr);

// log|det K|, via LU
double log_abs_det_kasteleyn(const LatticeModel& m);

}  // namespace tpad
