#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "tpad/sampler.hpp"
#include "tpad/window.hpp"

namespace tpad {

// Heights on face centres (i,j), i+j even, 0 <= i,j <= 2n; value 1 at (0,0).
struct HeightField {
    int n = 0;
    std::vector<int> h;  // (2n+1)^2, unused entries are 0
    int at(int i, int j) const { return h[j * (2 * n + 1) + i]; }
};

// matched edge id per vertex
struct MatchIndex {
    std::vector<char> in;  // per edge
    std::vector<int> white_edge, black_edge;
};
MatchIndex index_matching(const DimerConfiguration& c);

// Height change for the diagonal step p -> p + (d1,d2). Returns nullopt if the step
// does not cross an edge of the graph.
std::optional<int> height_step(const LatticeModel& m, const MatchIndex& mi, int p1, int p2, int d1, int d2);

HeightField compute_heights(const DimerConfiguration& c);

enum class ComponentKind { DoubleEdge, Loop, Path };

struct Component {
    ComponentKind kind = ComponentKind::Path;
    std::vector<int> dimers;  // a-dimers in traversal order, white to black
    bool clockwise = false;   // loops only
    int label = 0;            // paths only: lower a-height / 4 across the path
    bool starts_bottom = false;
};

struct SquishedConfiguration {
    ModelPtr model;
    std::vector<Component> components;
    std::vector<int> component_of_edge;  // -1 unless an a-dimer
    // per a-face (i,j), indexed like HeightField; zero off a-faces
    std::vector<int> ha, hl, hc;
    bool identity_holds = false;  // h^a = h^l + h^c everywhere
    int a_dimers = 0;
    int count(ComponentKind k) const;
};

SquishedConfiguration squish_and_classify(const DimerConfiguration& c);

struct LastPath {
    int component = -1;
    std::vector<int> dimers;
    bool degenerate = false;
    int probe_T = 0;
};
LastPath last_path(const SquishedConfiguration& s);

struct GammaValue {
    bool present = false;
    bool fallback = false;
    int X = 0;
    double value = 0.0;
};
GammaValue gamma_statistic(const SquishedConfiguration& s, const LastPath& lp, double t, const ScalingWindow& w);

// side of the central box, ceil(log(n) q_n) rounded up to even
int central_box_side(const ScalingWindow& w);
bool is_backtracking(const LatticeModel& m, int edge, int box_side);

// a-edges crossed by the line T = t' q_n with window coordinate in (xi, alpha];
// restrict_w0b0 keeps only the W0 x B0 edges
std::vector<int> gap_line_edges(const LatticeModel& m, const ScalingWindow& w, double t, double xi, bool restrict_w0b0);

struct GapPoint {
    double t = 0.0;
    double xi = 0.0;
};
bool gap_event_indicator(const DimerConfiguration& c, const std::vector<GapPoint>& pts, const ScalingWindow& w,
                         bool restrict_w0b0);

// W1 x B1 edges crossed by the line through the lower left quadrant up to the window top
std::vector<int> backtracking_line_edges(const LatticeModel& m, const ScalingWindow& w, double t);
// every a-edge crossed by that line (alternating forward and backtracking)
std::vector<int> crossed_line_edges(const LatticeModel& m, int T, int X_end);

// height at the window top on the line, telescoped from the boundary
int line_height(const LatticeModel& m, const MatchIndex& mi, const ScalingWindow& w, double t);

// first `count` edges crossed by the t=0 line from the corner (0,0)
std::vector<int> diagonal_edges(const LatticeModel& m, int count);
// longest loop meeting the edge set (0 if none)
int longest_loop_meeting(const SquishedConfiguration& s, const std::vector<int>& edges);

nlohmann::json analysis_to_json(const DimerConfiguration& c, const SquishedConfiguration& s, const LastPath& lp,
                                 const HeightField& h);

}  // namespace tpad
