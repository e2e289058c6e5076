#include "tpad/sampler.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace tpad {

namespace {
// black/white offsets from the cell centre for NE, NW, SW, SE
constexpr int BOFF[4][2] = {{1, 0}, {-1, 0}, {-1, 0}, {1, 0}};
constexpr int WOFF[4][2] = {{0, 1}, {0, 1}, {0, -1}, {0, -1}};
// level-k cell that supplies edge e of the reduced cell (p', q')
constexpr int SHIFT[4][2] = {{1, 1}, {0, 1}, {0, 0}, {1, 0}};

double uniform(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
}  // namespace

DominoShuffler::DominoShuffler(ModelPtr model) : model_(std::move(model)) {
    const int n = model_->n;
    cell_edge_.assign(4 * n * n, -1);
    std::vector<double> w(4 * n * n);
    for (int q = 0; q < n; ++q)
        for (int p = 0; p < n; ++p) {
            const int f1 = 2 * p + 1, f2 = 2 * q + 1;
            for (int e = 0; e < 4; ++e) {
                const int b = model_->black_index(f1 + BOFF[e][0], f2 + BOFF[e][1]);
                const int wv = model_->white_index(f1 + WOFF[e][0], f2 + WOFF[e][1]);
                const int id = model_->edge_between(b, wv);
                if (id < 0) throw std::logic_error("cell edge missing from model");
                cell_edge_[4 * (q * n + p) + e] = id;
                w[4 * (q * n + p) + e] = model_->edges[id].weight;
            }
        }
    prob_.assign(n + 1, {});
    for (int k = n; k >= 1; --k) {
        std::vector<double> delta(k * k);
        prob_[k].resize(k * k);
        for (int i = 0; i < k * k; ++i) {
            const double* c = &w[4 * i];
            const double ns = c[0] * c[2], we = c[1] * c[3];
            delta[i] = ns + we;
            prob_[k][i] = ns / delta[i];
        }
        if (k == 1) break;
        const int k1 = k - 1;
        std::vector<double> nw(4 * k1 * k1);
        double mx = 0.0;
        for (int q = 0; q < k1; ++q)
            for (int p = 0; p < k1; ++p)
                for (int e = 0; e < 4; ++e) {
                    const int src = (q + SHIFT[e][1]) * k + (p + SHIFT[e][0]);
                    const double v = w[4 * src + e] / delta[src];
                    nw[4 * (q * k1 + p) + e] = v;
                    mx = std::max(mx, v);
                }
        for (double& v : nw) v /= mx;
        w.swap(nw);
    }
}

std::vector<std::uint8_t> DominoShuffler::sample_cells(std::uint64_t seed) const {
    std::mt19937_64 gen(splitmix64(seed));
    std::vector<std::uint8_t> cur, nxt;
    const int n = model_->n;
    for (int k = 1; k <= n; ++k) {
        const int k1 = k - 1;
        nxt.assign(k * k, 0);
        for (int q = 0; q < k; ++q)
            for (int p = 0; p < k; ++p) {
                const bool ne = p < k1 && q < k1 && (cur[q * k1 + p] & SW);
                const bool sw = p >= 1 && q >= 1 && (cur[(q - 1) * k1 + p - 1] & NE);
                const bool nwb = p >= 1 && q < k1 && (cur[q * k1 + p - 1] & SE);
                const bool se = p < k1 && q >= 1 && (cur[(q - 1) * k1 + p] & NW);
                const int cnt = ne + sw + nwb + se;
                std::uint8_t out = 0;
                if (cnt == 1) {
                    out = ne ? SW : sw ? NE : nwb ? SE : NW;
                } else if (cnt == 0) {
                    out = uniform(gen) < prob_[k][q * k + p] ? (NE | SW) : (NW | SE);
                }
                nxt[q * k + p] = out;
            }
        cur.swap(nxt);
    }
    return cur;
}

DimerConfiguration DominoShuffler::sample(std::uint64_t seed) const {
    const auto cells = sample_cells(seed);
    DimerConfiguration c;
    c.model = model_;
    c.seed = seed;
    const int n = model_->n;
    for (int i = 0; i < n * n; ++i)
        for (int e = 0; e < 4; ++e)
            if (cells[i] & (1 << e)) c.edges.push_back(cell_edge_[4 * i + e]);
    std::sort(c.edges.begin(), c.edges.end());
    return c;
}

DimerConfiguration sample(ModelPtr model, std::uint64_t seed) { return DominoShuffler(std::move(model)).sample(seed); }

bool validate_matching(const DimerConfiguration& config) {
    if (!config.model) return false;
    const LatticeModel& m = *config.model;
    std::vector<int> wc(m.white.size(), 0), bc(m.black.size(), 0);
    for (int id : config.edges) {
        if (id < 0 || id >= static_cast<int>(m.edges.size())) return false;
        ++wc[m.edges[id].white];
        ++bc[m.edges[id].black];
    }
    for (int v : wc)
        if (v != 1) return false;
    for (int v : bc)
        if (v != 1) return false;
    return true;
}

FrequencyEstimate edge_frequencies(ModelPtr model, const std::vector<int>& edges, int num_samples, std::uint64_t seed,
                                   int jobs) {
    if (num_samples < 1) throw std::invalid_argument("num_samples must be positive");
    DominoShuffler sh(model);
    std::vector<int> pos(model->edges.size(), -1);
    for (std::size_t i = 0; i < edges.size(); ++i) pos[edges[i]] = static_cast<int>(i);
    const int T = std::max(1, jobs);
    std::vector<std::vector<long>> counts(T, std::vector<long>(edges.size(), 0));
    parallel_for(T, T, [&](std::size_t t) {
        for (int s = static_cast<int>(t); s < num_samples; s += T) {
            auto c = sh.sample(stream_seed(seed, s));
            for (int id : c.edges)
                if (pos[id] >= 0) ++counts[t][pos[id]];
        }
    });
    FrequencyEstimate out;
    out.samples = num_samples;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        long tot = 0;
        for (int t = 0; t < T; ++t) tot += counts[t][i];
        const double f = static_cast<double>(tot) / num_samples;
        out.freq.push_back(f);
        out.stderr_.push_back(std::sqrt(f * (1 - f) / num_samples));
    }
    return out;
}

std::vector<std::vector<int>> enumerate_matchings(const LatticeModel& m) {
    std::vector<std::vector<int>> out;
    std::vector<char> wused(m.white.size(), 0), bused(m.black.size(), 0);
    std::vector<int> cur;
    // black vertex -> incident edges
    std::vector<std::vector<int>> inc(m.black.size());
    for (int id = 0; id < static_cast<int>(m.edges.size()); ++id) inc[m.edges[id].black].push_back(id);
    auto rec = [&](auto&& self, int b) -> void {
        while (b < static_cast<int>(m.black.size()) && bused[b]) ++b;
        if (b == static_cast<int>(m.black.size())) {
            auto s = cur;
            std::sort(s.begin(), s.end());
            out.push_back(std::move(s));
            return;
        }
        for (int id : inc[b]) {
            const int w = m.edges[id].white;
            if (wused[w]) continue;
            wused[w] = bused[b] = 1;
            cur.push_back(id);
            self(self, b + 1);
            cur.pop_back();
            wused[w] = bused[b] = 0;
        }
    };
    rec(rec, 0);
    return out;
}

double matching_weight(const LatticeModel& m, const std::vector<int>& edges) {
    double w = 1.0;
    for (int id : edges) w *= m.edges[id].weight;
    return w;
}

std::string config_to_text(const DimerConfiguration& c) {
    std::ostringstream os;
    os << std::setprecision(17);
    const LatticeModel& m = *c.model;
    for (int id : c.edges) {
        const EdgeRef& e = m.edges[id];
        const Vertex& w = m.white[e.white];
        const Vertex& b = m.black[e.black];
        os << w.x1 << ' ' << w.x2 << ' ' << b.x1 << ' ' << b.x2 << ' ' << e.weight << '\n';
    }
    return os.str();
}

DimerConfiguration config_from_text(ModelPtr model, const std::string& text) {
    DimerConfiguration c;
    c.model = model;
    c.generator = "text";
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int wx, wy, bx, by;
        double weight;
        if (!(ls >> wx >> wy >> bx >> by >> weight)) throw std::invalid_argument("malformed dimer line: " + line);
        const int wi = model->white_index(wx, wy), bi = model->black_index(bx, by);
        if (wi < 0 || bi < 0) throw std::invalid_argument("dimer vertex outside the model: " + line);
        const int id = model->edge_between(bi, wi);
        if (id < 0) throw std::invalid_argument("dimer endpoints are not adjacent: " + line);
        c.edges.push_back(id);
    }
    std::sort(c.edges.begin(), c.edges.end());
    return c;
}

}  // namespace tpad
