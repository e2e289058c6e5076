#include <doctest.h>

#include <map>

#include "tpad/oracle.hpp"
#include "tpad/sampler.hpp"

using namespace tpad;

TEST_CASE("samples are perfect matchings and reproducible") {
    for (double a : {0.2, 0.5, 1.0}) {
        const auto m = make_model(16, a);
        const DominoShuffler sh(m);
        for (std::uint64_t s = 0; s < 20; ++s) {
            const auto c = sh.sample(s);
            CHECK(validate_matching(c));
            CHECK(c.edges.size() == m->white.size());
            CHECK(sh.sample(s).edges == c.edges);
        }
    }
}

TEST_CASE("validate_matching rejects broken configurations") {
    const auto m = make_model(8, 0.5);
    auto c = sample(m, 3);
    REQUIRE(validate_matching(c));
    auto missing = c;
    missing.edges.pop_back();
    CHECK_FALSE(validate_matching(missing));
    // swap one dimer for another edge at the same black vertex
    auto clash = c;
    const EdgeRef& e = m->edges[clash.edges[0]];
    for (int d = 0; d < 4; ++d) {
        const int other = m->edge_index(e.black, static_cast<Dir>(d));
        if (other >= 0 && other != clash.edges[0]) {
            clash.edges.push_back(other);
            break;
        }
    }
    CHECK_FALSE(validate_matching(clash));
}

TEST_CASE("text round trip") {
    const auto m = make_model(8, 0.5);
    const auto c = sample(m, 11);
    const auto back = config_from_text(m, config_to_text(c));
    CHECK(back.edges == c.edges);
    CHECK_THROWS(config_from_text(m, "1 0 4 5 1\n"));
}

TEST_CASE("one-sample frequencies are 0 or 1") {
    const auto m = make_model(8, 0.5);
    std::vector<int> ids{0, 1, 2, 3, 4};
    const auto f = edge_frequencies(m, ids, 1, 5);
    for (double v : f.freq) CHECK((v == 0.0 || v == 1.0));
}

TEST_CASE("edge frequencies agree with the dense correlation kernel") {
    const auto m = make_model(4, 1.0);
    const KinvMatrix K = invert_kasteleyn(m);
    std::vector<int> ids(m->edges.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = int(i);
    const auto f = edge_frequencies(m, ids, 20000, 99, 2);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const double p = edge_probability(K, ids[i]);
        const double sd = std::sqrt(std::max(p * (1 - p), 1e-12) / 20000.0);
        CHECK(std::abs(f.freq[i] - p) <= 4 * sd + 1e-12);
    }
}

TEST_CASE("independent seed streams") {
    // batch means from disjoint streams scatter like independent draws
    const auto m = make_model(8, 0.5);
    const std::vector<int> ids{int(m->edges.size() / 2)};
    std::vector<double> means;
    for (int b = 0; b < 20; ++b) means.push_back(edge_frequencies(m, ids, 500, 1000 + b).freq[0]);
    double mu = 0, var = 0;
    for (double v : means) mu += v / means.size();
    for (double v : means) var += (v - mu) * (v - mu) / (means.size() - 1);
    const double expect = mu * (1 - mu) / 500;
    CHECK(var < 3 * expect + 1e-9);
    CHECK(var > expect / 4);
}
