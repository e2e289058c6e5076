#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tpad/geometry.hpp"
#include "tpad/sampler.hpp"

using namespace tpad;

namespace {

int dimers_in(const SquishedConfiguration& s) {
    int total = 0;
    for (const auto& c : s.components) total += int(c.dimers.size());
    return total;
}

}  // namespace

TEST_CASE("heights: corner value, steps and a-height multiples of 4") {
    const auto m = make_model(16, 0.4);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto c = sample(m, seed);
        const HeightField h = compute_heights(c);
        CHECK(h.at(0, 0) == 1);
        const int n = m->n;
        // neighbouring faces differ by 1 or 3
        for (int j = 0; j < 2 * n; ++j)
            for (int i = (j & 1); i < 2 * n; i += 2) {
                if (i + 1 <= 2 * n && j + 1 <= 2 * n) {
                    const int d = std::abs(h.at(i + 1, j + 1) - h.at(i, j));
                    CHECK((d == 1 || d == 3));
                }
            }
        const SquishedConfiguration s = squish_and_classify(c);
        for (int j = 1; j < 2 * n; j += 2)
            for (int i = 1; i < 2 * n; i += 2)
                if (is_a_face(i, j)) CHECK(h.at(i, j) % 4 == h.at(1, 1) % 4);
        (void)s;
    }
}

TEST_CASE("boundary heights do not depend on the configuration") {
    const auto m = make_model(8, 0.5);
    const HeightField h0 = compute_heights(sample(m, 1));
    for (std::uint64_t seed = 2; seed < 8; ++seed) {
        const HeightField h = compute_heights(sample(m, seed));
        for (int i = 0; i <= 2 * m->n; i += 2) {
            CHECK(h.at(i, 0) == h0.at(i, 0));
            CHECK(h.at(0, i) == h0.at(0, i));
        }
    }
    // increasing along the bottom
    for (int i = 2; i <= 2 * m->n; i += 2) CHECK(h0.at(i, 0) > h0.at(i - 2, 0));
}

TEST_CASE("squishing partitions the a-dimers and the height identity holds") {
    for (double a : {0.2, 0.5}) {
        const auto m = make_model(32, a);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto c = sample(m, seed);
            const SquishedConfiguration s = squish_and_classify(c);
            CHECK(s.identity_holds);
            CHECK(dimers_in(s) == s.a_dimers);
            for (const auto& comp : s.components) {
                if (comp.kind == ComponentKind::Loop) CHECK(comp.dimers.size() >= 4);
                if (comp.kind == ComponentKind::DoubleEdge) CHECK(comp.dimers.size() == 2);
            }
        }
    }
}

TEST_CASE("exhaustive order 4") {
    const auto m = make_model(4, 0.5);
    const auto all = enumerate_matchings(*m);
    REQUIRE(all.size() == 1024);
    int without_a = 0;
    for (const auto& edges : all) {
        DimerConfiguration c;
        c.model = m;
        c.edges = edges;
        const SquishedConfiguration s = squish_and_classify(c);
        CHECK(s.identity_holds);
        CHECK(dimers_in(s) == s.a_dimers);
        if (s.a_dimers == 0) {
            ++without_a;
            CHECK(s.count(ComponentKind::Loop) == 0);
            CHECK(s.count(ComponentKind::Path) == 0);
        }
        const LastPath lp = last_path(s);
        if (!lp.degenerate) {
            REQUIRE(lp.component >= 0);
            CHECK(s.components[lp.component].kind == ComponentKind::Path);
            CHECK(s.components[lp.component].label == m->n / 4 - 1);
        }
    }
    MESSAGE("matchings without a-dimers: " << without_a);
}

TEST_CASE("last path separates the top two corridors") {
    const auto m = make_model(64, std::pow(64.0, -0.7));
    int found = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const SquishedConfiguration s = squish_and_classify(sample(m, seed));
        const LastPath lp = last_path(s);
        if (lp.degenerate) continue;
        ++found;
        const Component& c = s.components[lp.component];
        CHECK(c.kind == ComponentKind::Path);
        CHECK(c.label == m->n / 4 - 1);
        CHECK(c.starts_bottom);
    }
    CHECK(found > 0);
}

TEST_CASE("Gamma statistic is piecewise constant in t") {
    const int n = 64;
    const ScalingWindow w = make_window(n, 0.3);
    const auto m = make_model(n, w.a);
    const SquishedConfiguration s = squish_and_classify(sample(m, 4));
    const LastPath lp = last_path(s);
    const GammaValue g0 = gamma_statistic(s, lp, 0.0, w);
    const GammaValue g1 = gamma_statistic(s, lp, 0.5 / w.qn, w);
    CHECK(g0.present == g1.present);
    if (g0.present) CHECK(g0.value == g1.value);
    // t q_n even gives t' = t
    CHECK(w.line_T(2.0 / w.qn) == 2);
}

TEST_CASE("backtracking classes") {
    const int n = 32;
    const auto m = make_model(n, 0.2);
    int ll_11 = 0, ll_00 = 0;
    for (std::size_t id = 0; id < m->edges.size(); ++id) {
        const EdgeRef& e = m->edges[id];
        const Vertex& w = m->white[e.white];
        const Vertex& b = m->black[e.black];
        if (!e.a_edge) {
            CHECK_FALSE(is_backtracking(*m, int(id), 0));
            continue;
        }
        const bool lower_left = std::max({w.x1, b.x1, w.x2, b.x2}) <= n;
        if (!lower_left) continue;
        if (vertex_class(w) == 1 && vertex_class(b) == 1) {
            CHECK(is_backtracking(*m, int(id), 0));
            ++ll_11;
        }
        if (vertex_class(w) == 0 && vertex_class(b) == 0) {
            CHECK_FALSE(is_backtracking(*m, int(id), 0));
            ++ll_00;
        }
    }
    CHECK(ll_11 > 0);
    CHECK(ll_00 > 0);
    // a central box covering the diamond takes every a-edge
    for (std::size_t id = 0; id < m->edges.size(); ++id)
        if (m->edges[id].a_edge) CHECK(is_backtracking(*m, int(id), 4 * n));
}

TEST_CASE("gap events") {
    const int n = 32;
    const ScalingWindow w = make_window(n, 0.3);
    const auto m = make_model(n, w.a);
    const auto c = sample(m, 9);
    CHECK(gap_event_indicator(c, {}, w, true));
    // a point far below every dimer on the line
    CHECK_FALSE(gap_event_indicator(c, {{0.0, -1e6}}, w, false));
}

TEST_CASE("analysis json") {
    const auto m = make_model(8, 0.5);
    const auto c = sample(m, 2);
    const auto s = squish_and_classify(c);
    const auto j = analysis_to_json(c, s, last_path(s), compute_heights(c));
    CHECK(j["identity_holds"] == true);
    CHECK(j["components"].size() == s.components.size());
}
