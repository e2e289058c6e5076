#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "tpad/common.hpp"

namespace tpad {

struct Vertex {
    int x1 = 0;
    int x2 = 0;
    bool operator==(const Vertex&) const = default;
};

// black minus white
enum class Dir : int { PlusE1 = 0, PlusE2 = 1, MinusE1 = 2, MinusE2 = 3 };

inline Vertex dir_vector(Dir d) {
    switch (d) {
        case Dir::PlusE1: return {1, 1};
        case Dir::PlusE2: return {-1, 1};
        case Dir::MinusE1: return {-1, -1};
        default: return {1, -1};
    }
}

struct EdgeRef {
    int white = -1;
    int black = -1;
    double weight = 0.0;
    Dir direction = Dir::PlusE1;
    bool a_edge = false;
};

// (x1+x2) mod 4 = 2*eps+1
inline int vertex_class(int x1, int x2) { return (mod(x1 + x2, 4) - 1) / 2; }
inline int vertex_class(const Vertex& v) { return vertex_class(v.x1, v.x2); }

// odd-odd cell centre with (i+j) mod 4 == 2
inline bool is_a_face(int i, int j) { return mod(i, 2) == 1 && mod(j, 2) == 1 && mod(i + j, 4) == 2; }
inline bool is_b_face(int i, int j) { return mod(i, 2) == 1 && mod(j, 2) == 1 && mod(i + j, 4) == 0; }

class LatticeModel {
public:
    int n = 0;
    double a = 1.0;
    double b = 1.0;
    double c = 0.5;
    std::vector<Vertex> white;
    std::vector<Vertex> black;
    std::vector<EdgeRef> edges;

    int white_index(int x1, int x2) const;
    int black_index(int x1, int x2) const;
    int white_index(const Vertex& v) const { return white_index(v.x1, v.x2); }
    int black_index(const Vertex& v) const { return black_index(v.x1, v.x2); }
    int edge_index(int black_id, Dir d) const { return edge_of_[4 * black_id + static_cast<int>(d)]; }
    int edge_between(int black_id, int white_id) const;
    // edges incident to a white vertex, -1 padded
    const std::array<int, 4>& white_edges(int white_id) const { return white_edges_[white_id]; }
    int m() const { return n / 4; }

private:
    friend LatticeModel build_model(int, double, double);
    std::vector<int> edge_of_;
    std::vector<std::array<int, 4>> white_edges_;
};

using ModelPtr = std::shared_ptr<const LatticeModel>;

LatticeModel build_model(int n, double a, double b = 1.0);
ModelPtr make_model(int n, double a, double b = 1.0);

cplx kasteleyn_entry(const LatticeModel& model, const Vertex& black, const Vertex& white);
cplx kasteleyn_entry(const LatticeModel& model, const EdgeRef& e);

// B x W in canonical order
Eigen::MatrixXcd kasteleyn_matrix(const LatticeModel& model);

nlohmann::json model_to_json(const LatticeModel& model);

}  // namespace tpad
