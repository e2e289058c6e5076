#include <doctest.h>

#include <map>

#include "tpad/oracle.hpp"
#include "tpad/sampler.hpp"

using namespace tpad;

TEST_CASE("inverse residual") {
    const KinvMatrix K = invert_kasteleyn(make_model(4, 1.0));
    CHECK(K.residual <= 1e-10);
    const Eigen::MatrixXcd R = kasteleyn_matrix(*K.model) * K.inv - Eigen::MatrixXcd::Identity(20, 20);
    CHECK(R.cwiseAbs().maxCoeff() <= 1e-10);
    CHECK_THROWS(invert_kasteleyn(make_model(8, 0.5), 4));
}

TEST_CASE("one-point correlations at a vertex sum to one") {
    for (double a : {0.5, 1.0}) {
        const auto m = make_model(8, a);
        const KinvMatrix K = invert_kasteleyn(m);
        for (std::size_t w = 0; w < m->white.size(); ++w) {
            double s = 0;
            for (int e : m->white_edges(int(w)))
                if (e >= 0) {
                    const double p = edge_probability(K, e);
                    CHECK(p >= -1e-12);
                    CHECK(p <= 1 + 1e-12);
                    s += p;
                }
            CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("edges sharing a vertex are never both covered") {
    const auto m = make_model(8, 0.5);
    const KinvMatrix K = invert_kasteleyn(m);
    const auto& we = m->white_edges(5);
    std::vector<int> pair;
    for (int e : we)
        if (e >= 0 && pair.size() < 2) pair.push_back(e);
    REQUIRE(pair.size() == 2);
    CHECK(std::abs(correlation(K, pair)) <= 1e-10);
}

TEST_CASE("correlations match exhaustive enumeration at order 4") {
    const auto m = make_model(4, 1.0);
    const KinvMatrix K = invert_kasteleyn(m);
    const auto all = enumerate_matchings(*m);
    std::vector<double> freq(m->edges.size(), 0.0);
    std::map<std::pair<int, int>, double> pairs;
    double z = 0;
    for (const auto& mt : all) {
        const double wgt = matching_weight(*m, mt);
        z += wgt;
        for (int e : mt) freq[e] += wgt;
        pairs[{mt[0], mt[3]}] += wgt;
    }
    for (std::size_t e = 0; e < freq.size(); ++e) CHECK(edge_probability(K, int(e)) == doctest::Approx(freq[e] / z).epsilon(1e-12));
    const auto& [key, w] = *pairs.begin();
    CHECK(correlation(K, {key.first, key.second}) == doctest::Approx(w / z).epsilon(1e-10));
}

TEST_CASE("gap probabilities") {
    const auto m = make_model(8, 0.5);
    const KinvMatrix K = invert_kasteleyn(m);
    CHECK(gap_probability_exact(K, {}) == 1.0);
    for (int e : {0, 7, 40}) CHECK(gap_probability_exact(K, {e}) == doctest::Approx(1.0 - edge_probability(K, e)).epsilon(1e-12));
    // two edges: inclusion-exclusion
    const double p1 = edge_probability(K, 3), p2 = edge_probability(K, 50), p12 = correlation(K, {3, 50});
    CHECK(gap_probability_exact(K, {3, 50}) == doctest::Approx(1 - p1 - p2 + p12).epsilon(1e-10));
}

TEST_CASE("column solves agree with the full inverse") {
    const auto m = make_model(8, 0.3);
    const KinvMatrix K = invert_kasteleyn(m);
    double res = 0;
    const Eigen::MatrixXcd cols = kinv_columns(*m, {0, 9, 33}, &res);
    CHECK(res <= 1e-10);
    int j = 0;
    for (int b : {0, 9, 33}) CHECK((cols.col(j++) - K.inv.col(b)).cwiseAbs().maxCoeff() <= 1e-12);
}
