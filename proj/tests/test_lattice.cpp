#include <doctest.h>

#include <cmath>

#include "tpad/lattice.hpp"
#include "tpad/oracle.hpp"
#include "tpad/sampler.hpp"

using namespace tpad;

TEST_CASE("vertex and edge counts") {
    for (int n : {4, 8, 12}) {
        const auto m = make_model(n, 0.5);
        CHECK(m->white.size() == std::size_t(n * (n + 1)));
        CHECK(m->black.size() == std::size_t(n * (n + 1)));
        CHECK(m->edges.size() == std::size_t(4 * n * n));
        int cls[2][2] = {};
        int a_edges = 0;
        for (const auto& w : m->white) ++cls[0][vertex_class(w)];
        for (const auto& b : m->black) ++cls[1][vertex_class(b)];
        for (const auto& e : m->edges) a_edges += e.a_edge;
        CHECK(cls[0][0] == cls[0][1]);
        CHECK(cls[1][0] == cls[1][1]);
        CHECK(a_edges == 2 * n * n);
    }
}

TEST_CASE("orders that are not 4m are rejected") {
    CHECK_THROWS_WITH(build_model(6, 0.5), "order must be 4m");
    CHECK_THROWS(build_model(4, 0.0));
    CHECK_THROWS(build_model(4, 0.5, -1.0));
}

TEST_CASE("edge directions and weights") {
    const auto m = make_model(8, 0.5);
    for (const auto& e : m->edges) {
        const Vertex& w = m->white[e.white];
        const Vertex& b = m->black[e.black];
        const Vertex d = dir_vector(e.direction);
        CHECK(b.x1 - w.x1 == d.x1);
        CHECK(b.x2 - w.x2 == d.x2);
        CHECK(e.weight == (e.a_edge ? 0.5 : 1.0));
    }
}

TEST_CASE("face edges carry the face weight") {
    const int n = 8;
    const auto m = make_model(n, 0.5);
    for (int i = 1; i < 2 * n; i += 2)
        for (int j = 1; j < 2 * n; j += 2) {
            // whites at (i, j+-1), blacks at (i+-1, j)
            int count = 0;
            for (int dw : {-1, 1})
                for (int db : {-1, 1}) {
                    const int wi = m->white_index(i, j + dw), bi = m->black_index(i + db, j);
                    if (wi < 0 || bi < 0) continue;
                    const int e = m->edge_between(bi, wi);
                    REQUIRE(e >= 0);
                    CHECK(m->edges[e].a_edge == is_a_face(i, j));
                    ++count;
                }
            CHECK(count == 4);
        }
}

TEST_CASE("Kasteleyn entries") {
    const auto m = make_model(4, 0.3);
    // B0 black, white at +e1
    CHECK(std::abs(kasteleyn_entry(*m, Vertex{0, 1}, Vertex{1, 2}) - cplx(0.3, 0)) < 1e-15);
    // B1 black, white at -e2
    CHECK(std::abs(kasteleyn_entry(*m, Vertex{2, 1}, Vertex{3, 0}) - cplx(0, 1)) < 1e-15);
    // not adjacent
    CHECK(kasteleyn_entry(*m, Vertex{0, 1}, Vertex{5, 4}) == cplx(0, 0));
}

TEST_CASE("partition function") {
    const auto m = make_model(4, 1.0);
    CHECK(std::exp(log_abs_det_kasteleyn(*m)) == doctest::Approx(1024.0).epsilon(1e-12));
    const Eigen::MatrixXcd K = kasteleyn_matrix(*m);
    CHECK(std::abs(K.transpose().determinant()) == doctest::Approx(1024.0).epsilon(1e-12));
    for (double a : {0.5, 0.3, 2.0}) {
        const auto ma = make_model(4, a);
        double z = 0;
        for (const auto& mt : enumerate_matchings(*ma)) z += matching_weight(*ma, mt);
        CHECK(std::exp(log_abs_det_kasteleyn(*ma)) == doctest::Approx(z).epsilon(1e-9));
    }
}

TEST_CASE("model json") {
    const auto m = make_model(4, 0.5);
    const auto j = model_to_json(*m);
    CHECK(j["n"] == 4);
    CHECK(j["edges"].size() == m->edges.size());
    CHECK(j["vertices"]["white"].size() == m->white.size());
}
