#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tpad/lattice.hpp"

namespace tpad {

struct DimerConfiguration {
    ModelPtr model;
    std::vector<int> edges;  // sorted edge ids
    std::uint64_t seed = 0;
    std::string generator = "domino-shuffling";
};

// Cell edges of an odd-odd face f: NE = {f+(1,0), f+(0,1)}, NW = {f-(1,0), f+(0,1)},
// SW = {f-(1,0), f-(0,1)}, SE = {f+(1,0), f-(0,1)} (black, white)
enum CellBit : std::uint8_t { NE = 1, NW = 2, SW = 4, SE = 8 };

// Exact sampler. Creation probabilities for every level are computed once per model.
class DominoShuffler {
public:
    explicit DominoShuffler(ModelPtr model);
    DimerConfiguration sample(std::uint64_t seed) const;
    // per-cell bits of the order-n matching, row-major over (q, p)
    std::vector<std::uint8_t> sample_cells(std::uint64_t seed) const;
    const ModelPtr& model() const { return model_; }
    int cell_edge(int p, int q, int bit_index) const { return cell_edge_[4 * (q * model_->n + p) + bit_index]; }

private:
    ModelPtr model_;
    std::vector<std::vector<double>> prob_;  // prob_[k][q*k+p] = P(NE+SW) at level k
    std::vector<int> cell_edge_;
};

DimerConfiguration sample(ModelPtr model, std::uint64_t seed);
bool validate_matching(const DimerConfiguration& config);

struct FrequencyEstimate {
    std::vector<double> freq;
    std::vector<double> stderr_;
    int samples = 0;
};

// empirical inclusion frequencies; sample i uses stream_seed(seed, i)
FrequencyEstimate edge_frequencies(ModelPtr model, const std::vector<int>& edges, int num_samples, std::uint64_t seed,
                                   int jobs = 1);

// every perfect matching as a sorted edge list (small n only)
std::vector<std::vector<int>> enumerate_matchings(const LatticeModel& model);
double matching_weight(const LatticeModel& model, const std::vector<int>& edges);

// "wx wy bx by weight" per line
std::string config_to_text(const DimerConfiguration& c);
DimerConfiguration config_from_text(ModelPtr model, const std::string& text);

}  // namespace tpad
