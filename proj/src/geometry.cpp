#include "tpad/geometry.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace tpad {

namespace {

int pidx(int n, int i, int j) { return j * (2 * n + 1) + i; }
bool in_box(int n, int i, int j) { return i >= 0 && j >= 0 && i <= 2 * n && j <= 2 * n; }

struct Crossing {
    int edge = -1;
    bool white_right = false;
};

// edge crossed by the diagonal step p -> p + d
std::optional<Crossing> crossing(const LatticeModel& m, int p1, int p2, int d1, int d2) {
    const int u1 = p1 + d1, u2 = p2, v1 = p1, v2 = p2 + d2;
    int w = m.white_index(u1, u2), b = m.black_index(v1, v2);
    bool u_white = true;
    if (w < 0 || b < 0) {
        w = m.white_index(v1, v2);
        b = m.black_index(u1, u2);
        u_white = false;
        if (w < 0 || b < 0) return std::nullopt;
    }
    Crossing c;
    c.edge = m.edge_between(b, w);
    if (c.edge < 0) return std::nullopt;
    // u is on the right iff d1 == d2
    c.white_right = (u_white == (d1 == d2));
    return c;
}

constexpr int DIRS[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};

}  // namespace

MatchIndex index_matching(const DimerConfiguration& c) {
    const LatticeModel& m = *c.model;
    MatchIndex mi;
    mi.in.assign(m.edges.size(), 0);
    mi.white_edge.assign(m.white.size(), -1);
    mi.black_edge.assign(m.black.size(), -1);
    for (int id : c.edges) {
        mi.in[id] = 1;
        mi.white_edge[m.edges[id].white] = id;
        mi.black_edge[m.edges[id].black] = id;
    }
    return mi;
}

std::optional<int> height_step(const LatticeModel& m, const MatchIndex& mi, int p1, int p2, int d1, int d2) {
    auto c = crossing(m, p1, p2, d1, d2);
    if (!c) return std::nullopt;
    if (mi.in[c->edge]) return c->white_right ? 3 : -3;
    return c->white_right ? -1 : 1;
}

HeightField compute_heights(const DimerConfiguration& c) {
    const LatticeModel& m = *c.model;
    const int n = m.n;
    const MatchIndex mi = index_matching(c);
    HeightField hf;
    hf.n = n;
    hf.h.assign((2 * n + 1) * (2 * n + 1), 0);
    std::vector<char> seen(hf.h.size(), 0);
    std::deque<std::pair<int, int>> q;
    hf.h[pidx(n, 0, 0)] = 1;
    seen[pidx(n, 0, 0)] = 1;
    q.emplace_back(0, 0);
    while (!q.empty()) {
        auto [i, j] = q.front();
        q.pop_front();
        for (const auto& d : DIRS) {
            const int i2 = i + d[0], j2 = j + d[1];
            if (!in_box(n, i2, j2)) continue;
            auto st = height_step(m, mi, i, j, d[0], d[1]);
            if (!st) continue;
            const int k = pidx(n, i2, j2);
            if (!seen[k]) {
                seen[k] = 1;
                hf.h[k] = hf.h[pidx(n, i, j)] + *st;
                q.emplace_back(i2, j2);
            } else if (hf.h[k] != hf.h[pidx(n, i, j)] + *st) {
                throw std::logic_error("height function inconsistent");
            }
        }
    }
    for (int j = 0; j <= 2 * n; ++j)
        for (int i = (j % 2); i <= 2 * n; i += 2)
            if (!seen[pidx(n, i, j)]) throw std::logic_error("height function: unreachable face");
    return hf;
}

int SquishedConfiguration::count(ComponentKind k) const {
    int c = 0;
    for (const auto& x : components) c += x.kind == k;
    return c;
}

SquishedConfiguration squish_and_classify(const DimerConfiguration& c) {
    const LatticeModel& m = *c.model;
    const int n = m.n;
    const MatchIndex mi = index_matching(c);
    const HeightField hf = compute_heights(c);
    SquishedConfiguration s;
    s.model = c.model;
    s.component_of_edge.assign(m.edges.size(), -1);

    auto is_a_dimer = [&](int e) { return e >= 0 && m.edges[e].a_edge; };
    auto bcell_black = [&](const Vertex& b) -> std::optional<Vertex> {
        for (int d : {-1, 1}) {
            const int i = b.x1 + d, j = b.x2;
            if (i >= 1 && i <= 2 * n - 1 && is_b_face(i, j)) return Vertex{i, j};
        }
        return std::nullopt;
    };
    auto bcell_white = [&](const Vertex& w) -> std::optional<Vertex> {
        for (int d : {-1, 1}) {
            const int i = w.x1, j = w.x2 + d;
            if (j >= 1 && j <= 2 * n - 1 && is_b_face(i, j)) return Vertex{i, j};
        }
        return std::nullopt;
    };
    // white vertex id paired with black vertex id through its b-face, -1 at the boundary
    auto next_white = [&](int bid) -> int {
        const Vertex& b = m.black[bid];
        auto C = bcell_black(b);
        if (!C) return -1;
        const int E = m.black_index(C->x1 + 1, C->x2), W = m.black_index(C->x1 - 1, C->x2);
        const int N = m.white_index(C->x1, C->x2 + 1), S = m.white_index(C->x1, C->x2 - 1);
        const bool aE = is_a_dimer(mi.black_edge[E]), aW = is_a_dimer(mi.black_edge[W]);
        const bool aN = is_a_dimer(mi.white_edge[N]), aS = is_a_dimer(mi.white_edge[S]);
        const int cnt = aE + aW + aN + aS;
        if (cnt == 2) return aN ? N : S;
        if (cnt == 4) return bid == E ? N : S;  // mirror along the NW-SE diagonal
        throw std::logic_error("unbalanced b-face in squishing");
    };

    std::vector<char> used(m.edges.size(), 0);
    auto walk = [&](int start, Component& comp) {
        int e = start;
        while (e >= 0 && !used[e]) {
            used[e] = 1;
            comp.dimers.push_back(e);
            const int w = next_white(m.edges[e].black);
            if (w < 0) break;
            e = mi.white_edge[w];
            if (!is_a_dimer(e)) throw std::logic_error("squished walk left the a-dimers");
        }
    };
    for (int e : c.edges) {
        if (!is_a_dimer(e)) continue;
        ++s.a_dimers;
        const Vertex& w = m.white[m.edges[e].white];
        if (bcell_white(w)) continue;
        Component comp;
        comp.kind = ComponentKind::Path;
        comp.starts_bottom = w.x2 == 0;
        walk(e, comp);
        s.components.push_back(std::move(comp));
    }
    for (int e : c.edges) {
        if (!is_a_dimer(e) || used[e]) continue;
        Component comp;
        walk(e, comp);
        comp.kind = comp.dimers.size() == 2 ? ComponentKind::DoubleEdge : ComponentKind::Loop;
        s.components.push_back(std::move(comp));
    }
    for (int k = 0; k < static_cast<int>(s.components.size()); ++k)
        for (int e : s.components[k].dimers) s.component_of_edge[e] = k;

    const std::size_t P = hf.h.size();
    s.ha.assign(P, 0);
    s.hl.assign(P, 0);
    s.hc.assign(P, 0);
    for (int j = 1; j <= 2 * n - 1; j += 2)
        for (int i = 1; i <= 2 * n - 1; i += 2)
            if (is_a_face(i, j)) s.ha[pidx(n, i, j)] = hf.at(i, j);

    // loop contribution by winding
    for (auto& comp : s.components) {
        if (comp.kind != ComponentKind::Loop) continue;
        std::vector<Vertex> poly;
        for (int e : comp.dimers) {
            poly.push_back(m.white[m.edges[e].white]);
            poly.push_back(m.black[m.edges[e].black]);
        }
        long area2 = 0;
        int lo1 = 1 << 30, hi1 = -1, lo2 = 1 << 30, hi2 = -1;
        for (std::size_t k = 0; k < poly.size(); ++k) {
            const Vertex &p = poly[k], &q = poly[(k + 1) % poly.size()];
            area2 += static_cast<long>(p.x1) * q.x2 - static_cast<long>(q.x1) * p.x2;
            lo1 = std::min(lo1, p.x1);
            hi1 = std::max(hi1, p.x1);
            lo2 = std::min(lo2, p.x2);
            hi2 = std::max(hi2, p.x2);
        }
        comp.clockwise = area2 < 0;
        const int contrib = comp.clockwise ? 4 : -4;
        for (int j = std::max(1, lo2 | 1); j <= hi2; j += 2)
            for (int i = std::max(1, lo1 | 1); i <= hi1; i += 2) {
                if (!is_a_face(i, j)) continue;
                bool inside = false;
                for (std::size_t k = 0, l = poly.size() - 1; k < poly.size(); l = k++) {
                    const Vertex &p = poly[k], &q = poly[l];
                    if ((p.x2 > j) != (q.x2 > j)) {
                        const double x = p.x1 + double(j - p.x2) * (q.x1 - p.x1) / double(q.x2 - p.x2);
                        if (i < x) inside = !inside;
                    }
                }
                if (inside) s.hl[pidx(n, i, j)] += contrib;
            }
    }

    // corridor contribution: walk over a-faces, +-4 across path dimers
    auto path_cross = [&](int p1, int p2, int d1, int d2) -> int {
        auto cr = crossing(m, p1, p2, d1, d2);
        if (!cr || !mi.in[cr->edge]) return 0;
        const int k = s.component_of_edge[cr->edge];
        if (k < 0 || s.components[k].kind != ComponentKind::Path) return 0;
        return cr->white_right ? 4 : -4;
    };
    std::vector<char> seen(P, 0);
    std::deque<std::pair<int, int>> q;
    s.hc[pidx(n, 1, 1)] = s.ha[pidx(n, 1, 1)];
    seen[pidx(n, 1, 1)] = 1;
    q.emplace_back(1, 1);
    bool consistent = true;
    while (!q.empty()) {
        auto [i, j] = q.front();
        q.pop_front();
        for (const auto& d : DIRS) {
            const int i2 = i + 2 * d[0], j2 = j + 2 * d[1];
            if (i2 < 1 || j2 < 1 || i2 > 2 * n - 1 || j2 > 2 * n - 1) continue;
            const int delta = path_cross(i, j, d[0], d[1]) + path_cross(i + d[0], j + d[1], d[0], d[1]);
            const int k = pidx(n, i2, j2);
            if (!seen[k]) {
                seen[k] = 1;
                s.hc[k] = s.hc[pidx(n, i, j)] + delta;
                q.emplace_back(i2, j2);
            } else if (s.hc[k] != s.hc[pidx(n, i, j)] + delta) {
                consistent = false;
            }
        }
    }
    bool ident = consistent;
    for (int j = 1; j <= 2 * n - 1; j += 2)
        for (int i = 1; i <= 2 * n - 1; i += 2)
            if (is_a_face(i, j) && s.ha[pidx(n, i, j)] != s.hl[pidx(n, i, j)] + s.hc[pidx(n, i, j)]) ident = false;
    s.identity_holds = ident;

    // path labels from the corridor heights on either side of the first dimer
    for (auto& comp : s.components) {
        if (comp.kind != ComponentKind::Path) continue;
        const EdgeRef& e = m.edges[comp.dimers.front()];
        const Vertex &w = m.white[e.white], &b = m.black[e.black];
        const int f1 = w.x1, f2 = b.x2;
        const int d1 = b.x1 - f1, d2 = w.x2 - f2;
        const int here = s.hc[pidx(n, f1, f2)];
        const int there = here + ((d1 != d2) ? 4 : -4);
        comp.label = static_cast<int>(floor_div(std::min(here, there), 4));
    }
    return s;
}

namespace {
// does the component use an a-edge crossed by the e1 line at T (NE or SW side of an even face)?
std::vector<int> line_faces_X(const LatticeModel& m, const std::vector<int>& dimers, int T) {
    std::vector<int> xs;
    for (int id : dimers) {
        const EdgeRef& e = m.edges[id];
        const Vertex &w = m.white[e.white], &b = m.black[e.black];
        // NE side of face g: white g+(1,0), black g+(0,1); SW side: white g-(1,0), black g-(0,1)
        for (int s : {1, -1}) {
            const int g1 = w.x1 - s, g2 = w.x2;
            if (b.x1 != g1 || b.x2 != g2 + s) continue;
            if (g2 - g1 != 2 * T) continue;
            xs.push_back((g1 + g2) / 2);
        }
    }
    return xs;
}
}  // namespace

LastPath last_path(const SquishedConfiguration& s) {
    const LatticeModel& m = *s.model;
    const int target = m.n / 4 - 1;
    std::vector<int> cand;
    for (int k = 0; k < static_cast<int>(s.components.size()); ++k) {
        const auto& c = s.components[k];
        if (c.kind == ComponentKind::Path && c.starts_bottom && c.label == target) cand.push_back(k);
    }
    LastPath lp;
    if (cand.empty()) {
        lp.degenerate = true;
        return lp;
    }
    if (cand.size() == 1) {
        lp.component = cand[0];
    } else {
        for (int r = 0; r <= m.n && lp.component < 0; r += 2)
            for (int T : {-r, r}) {
                if (lp.component >= 0) break;
                for (int k : cand)
                    if (!line_faces_X(m, s.components[k].dimers, T).empty()) {
                        lp.component = k;
                        lp.probe_T = T;
                        break;
                    }
                if (r == 0) break;
            }
        if (lp.component < 0) {
            lp.degenerate = true;
            return lp;
        }
    }
    lp.dimers = s.components[lp.component].dimers;
    return lp;
}

GammaValue gamma_statistic(const SquishedConfiguration& s, const LastPath& lp, double t, const ScalingWindow& w) {
    GammaValue g;
    if (lp.degenerate || lp.dimers.empty()) return g;
    const int T = w.line_T(t);
    const auto xs = line_faces_X(*s.model, lp.dimers, T);
    if (xs.empty()) return g;
    const int top = w.x_top();
    int best = -1, any = -1;
    for (int X : xs) {
        any = std::max(any, X);
        if (X <= top) best = std::max(best, X);
    }
    g.present = true;
    g.fallback = best < 0;
    g.X = g.fallback ? any : best;
    g.value = w.xi_of(g.X);
    return g;
}

int central_box_side(const ScalingWindow& w) {
    int s = static_cast<int>(std::ceil(std::log(static_cast<double>(w.n)) * w.qn));
    return s + (s % 2);
}

bool is_backtracking(const LatticeModel& m, int edge, int box_side) {
    const EdgeRef& e = m.edges[edge];
    if (!e.a_edge) return false;
    const Vertex &w = m.white[e.white], &b = m.black[e.black];
    const int n = m.n;
    const double half = box_side / 2.0;
    auto in_central = [&](const Vertex& v) { return std::abs(v.x1 - n) <= half && std::abs(v.x2 - n) <= half; };
    if (in_central(w) && in_central(b)) return true;
    auto both = [&](int lo1, int hi1, int lo2, int hi2) {
        return w.x1 >= lo1 && w.x1 <= hi1 && b.x1 >= lo1 && b.x1 <= hi1 && w.x2 >= lo2 && w.x2 <= hi2 && b.x2 >= lo2 &&
               b.x2 <= hi2;
    };
    const int cb = vertex_class(b), cw = vertex_class(w);
    if (both(0, n, 0, n) && cb == 1 && cw == 1) return true;
    if (both(0, n, n, 2 * n) && cb == 1 && cw == 0) return true;
    if (both(n, 2 * n, n, 2 * n) && cb == 1 && cw == 1) return true;
    if (both(n, 2 * n, 0, n) && cb == 0 && cw == 1) return true;
    return false;
}

std::vector<int> gap_line_edges(const LatticeModel& m, const ScalingWindow& w, double t, double xi, bool restrict_w0b0) {
    std::vector<int> out;
    const int T = w.line_T(t);
    if (std::abs(T) >= w.beta * w.qn && T != 0) return out;
    const int top = w.x_top();
    for (int X = 0; X <= top; X += 2) {
        if (!(w.xi_of(X) > xi)) continue;
        const int g1 = X - T, g2 = X + T;
        // forward edge on the NE side, backtracking edge on the SW side
        const int wf = m.white_index(g1 + 1, g2), bf = m.black_index(g1, g2 + 1);
        if (wf >= 0 && bf >= 0) out.push_back(m.edge_between(bf, wf));
        if (!restrict_w0b0) {
            const int wb = m.white_index(g1 - 1, g2), bb = m.black_index(g1, g2 - 1);
            if (wb >= 0 && bb >= 0) out.push_back(m.edge_between(bb, wb));
        }
    }
    return out;
}

bool gap_event_indicator(const DimerConfiguration& c, const std::vector<GapPoint>& pts, const ScalingWindow& w,
                         bool restrict_w0b0) {
    const MatchIndex mi = index_matching(c);
    for (const auto& p : pts)
        for (int e : gap_line_edges(*c.model, w, p.t, p.xi, restrict_w0b0))
            if (mi.in[e]) return false;
    return true;
}

std::vector<int> backtracking_line_edges(const LatticeModel& m, const ScalingWindow& w, double t) {
    std::vector<int> out;
    const int T = w.line_T(t);
    const int top = w.x_top();
    for (int i = std::max(1, std::abs(T) | 1); i <= top; i += 2) {
        const int wi = m.white_index(i - T, i + T + 1), bi = m.black_index(i - T + 1, i + T);
        if (wi >= 0 && bi >= 0) out.push_back(m.edge_between(bi, wi));
    }
    return out;
}

std::vector<int> crossed_line_edges(const LatticeModel& m, int T, int X_end) {
    std::vector<int> out;
    for (int X = std::abs(T); X < X_end; ++X) {
        auto cr = crossing(m, X - T, X + T, 1, 1);
        if (cr) out.push_back(cr->edge);
    }
    return out;
}

int line_height(const LatticeModel& m, const MatchIndex& mi, const ScalingWindow& w, double t) {
    const int T = w.line_T(t);
    int h = 2 * std::abs(T) + 1;
    for (int X = std::abs(T); X < w.x_top(); ++X) {
        auto st = height_step(m, mi, X - T, X + T, 1, 1);
        if (!st) throw std::logic_error("line left the diamond");
        h += *st;
    }
    return h;
}

std::vector<int> diagonal_edges(const LatticeModel& m, int count) {
    std::vector<int> out;
    for (int X = 0; X < count && X < 2 * m.n; ++X) {
        auto cr = crossing(m, X, X, 1, 1);
        if (cr) out.push_back(cr->edge);
    }
    return out;
}

int longest_loop_meeting(const SquishedConfiguration& s, const std::vector<int>& edges) {
    int best = 0;
    for (int e : edges) {
        const int k = s.component_of_edge[e];
        if (k >= 0 && s.components[k].kind == ComponentKind::Loop)
            best = std::max(best, static_cast<int>(s.components[k].dimers.size()));
    }
    return best;
}

nlohmann::json analysis_to_json(const DimerConfiguration& c, const SquishedConfiguration& s, const LastPath& lp,
                                const HeightField& h) {
    const LatticeModel& m = *c.model;
    nlohmann::json j;
    j["n"] = m.n;
    j["a"] = m.a;
    j["b"] = m.b;
    j["seed"] = c.seed;
    j["a_dimers"] = s.a_dimers;
    j["identity_holds"] = s.identity_holds;
    auto edge_json = [&](int id) {
        const EdgeRef& e = m.edges[id];
        return nlohmann::json::array(
            {m.white[e.white].x1, m.white[e.white].x2, m.black[e.black].x1, m.black[e.black].x2});
    };
    auto& comps = j["components"];
    comps = nlohmann::json::array();
    static const char* kinds[] = {"double_edge", "loop", "path"};
    for (const auto& comp : s.components) {
        nlohmann::json cj;
        cj["kind"] = kinds[static_cast<int>(comp.kind)];
        cj["length"] = comp.dimers.size();
        if (comp.kind == ComponentKind::Loop) cj["orientation"] = comp.clockwise ? "clockwise" : "counterclockwise";
        if (comp.kind == ComponentKind::Path) {
            cj["label"] = comp.label;
            cj["starts_bottom"] = comp.starts_bottom;
        }
        cj["dimers"] = nlohmann::json::array();
        for (int id : comp.dimers) cj["dimers"].push_back(edge_json(id));
        comps.push_back(cj);
    }
    j["last_path"] = {{"component", lp.component}, {"degenerate", lp.degenerate}, {"length", lp.dimers.size()}};
    auto& af = j["a_faces"];
    af = nlohmann::json::array();
    const int n = m.n;
    for (int y = 1; y <= 2 * n - 1; y += 2)
        for (int x = 1; x <= 2 * n - 1; x += 2)
            if (is_a_face(x, y)) {
                const int k = pidx(n, x, y);
                af.push_back({x, y, s.ha[k], s.hl[k], s.hc[k]});
            }
    j["heights"] = h.h;
    return j;
}

}  // namespace tpad
