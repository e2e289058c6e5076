#include "tpad/lattice.hpp"

#include <stdexcept>

namespace tpad {

int LatticeModel::white_index(int x1, int x2) const {
    if (x1 < 1 || x1 > 2 * n - 1 || x2 < 0 || x2 > 2 * n) return -1;
    if (mod(x1, 2) != 1 || mod(x2, 2) != 0) return -1;
    return (x2 / 2) * n + (x1 - 1) / 2;
}

int LatticeModel::black_index(int x1, int x2) const {
    if (x1 < 0 || x1 > 2 * n || x2 < 1 || x2 > 2 * n - 1) return -1;
    if (mod(x1, 2) != 0 || mod(x2, 2) != 1) return -1;
    return ((x2 - 1) / 2) * (n + 1) + x1 / 2;
}

int LatticeModel::edge_between(int black_id, int white_id) const {
    const Vertex& bv = black[black_id];
    const Vertex& wv = white[white_id];
    int d1 = bv.x1 - wv.x1, d2 = bv.x2 - wv.x2;
    for (int d = 0; d < 4; ++d) {
        Vertex v = dir_vector(static_cast<Dir>(d));
        if (v.x1 == d1 && v.x2 == d2) return edge_of_[4 * black_id + d];
    }
    return -1;
}

LatticeModel build_model(int n, double a, double b) {
    if (n < 4 || n % 4 != 0) throw std::invalid_argument("order must be 4m");
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("weights must be positive");
    LatticeModel m;
    m.n = n;
    m.a = a;
    m.b = b;
    m.c = (a / b) / (1.0 + (a / b) * (a / b));
    for (int x2 = 0; x2 <= 2 * n; x2 += 2)
        for (int x1 = 1; x1 <= 2 * n - 1; x1 += 2) m.white.push_back({x1, x2});
    for (int x2 = 1; x2 <= 2 * n - 1; x2 += 2)
        for (int x1 = 0; x1 <= 2 * n; x1 += 2) m.black.push_back({x1, x2});

    m.edge_of_.assign(4 * m.black.size(), -1);
    m.white_edges_.assign(m.white.size(), {-1, -1, -1, -1});
    for (int bi = 0; bi < static_cast<int>(m.black.size()); ++bi) {
        const Vertex& bv = m.black[bi];
        for (int d = 0; d < 4; ++d) {
            Vertex dv = dir_vector(static_cast<Dir>(d));
            int wi = m.white_index(bv.x1 - dv.x1, bv.x2 - dv.x2);
            if (wi < 0) continue;
            EdgeRef e;
            e.black = bi;
            e.white = wi;
            e.direction = static_cast<Dir>(d);
            // the odd-odd cell containing the edge sits at (white.x1, black.x2)
            e.a_edge = is_a_face(m.white[wi].x1, bv.x2);
            e.weight = std::abs(kasteleyn_entry(m, bv, m.white[wi]));
            m.edge_of_[4 * bi + d] = static_cast<int>(m.edges.size());
            auto& slots = m.white_edges_[wi];
            for (int& s : slots)
                if (s < 0) {
                    s = static_cast<int>(m.edges.size());
                    break;
                }
            m.edges.push_back(e);
        }
    }
    return m;
}

ModelPtr make_model(int n, double a, double b) { return std::make_shared<const LatticeModel>(build_model(n, a, b)); }

cplx kasteleyn_entry(const LatticeModel& model, const Vertex& x, const Vertex& y) {
    const int j = vertex_class(x);
    const double a = model.a, b = model.b;
    const int d1 = y.x1 - x.x1, d2 = y.x2 - x.x2;
    if (d1 == 1 && d2 == 1) return a * (1 - j) + b * j;
    if (d1 == -1 && d2 == 1) return I * (a * j + b * (1 - j));
    if (d1 == -1 && d2 == -1) return a * j + b * (1 - j);
    if (d1 == 1 && d2 == -1) return I * (a * (1 - j) + b * j);
    return 0.0;
}

cplx kasteleyn_entry(const LatticeModel& model, const EdgeRef& e) {
    return kasteleyn_entry(model, model.black[e.black], model.white[e.white]);
}

Eigen::MatrixXcd kasteleyn_matrix(const LatticeModel& model) {
    Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(model.black.size(), model.white.size());
    for (const auto& e : model.edges) K(e.black, e.white) = kasteleyn_entry(model, e);
    return K;
}

nlohmann::json model_to_json(const LatticeModel& model) {
    nlohmann::json j;
    j["n"] = model.n;
    j["a"] = model.a;
    j["b"] = model.b;
    j["c"] = model.c;
    auto& v = j["vertices"];
    v["white"] = nlohmann::json::array();
    v["black"] = nlohmann::json::array();
    for (const auto& w : model.white) v["white"].push_back({w.x1, w.x2, vertex_class(w)});
    for (const auto& k : model.black) v["black"].push_back({k.x1, k.x2, vertex_class(k)});
    auto& es = j["edges"];
    es = nlohmann::json::array();
    static const char* names[] = {"+e1", "+e2", "-e1", "-e2"};
    for (const auto& e : model.edges) {
        cplx k = kasteleyn_entry(model, e);
        es.push_back({{"white", e.white},
                      {"black", e.black},
                      {"weight", e.weight},
                      {"direction", names[static_cast<int>(e.direction)]},
                      {"a_edge", e.a_edge},
                      {"kasteleyn", {k.real(), k.imag()}}});
    }
    return j;
}

}  // namespace tpad
