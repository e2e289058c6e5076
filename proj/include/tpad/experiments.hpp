#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tpad/lattice.hpp"

namespace tpad {

// floats are written with 17 significant digits
std::string fmt17(double v);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;  // numbers, strings or bools
    void add(std::vector<nlohmann::json> row) { rows.push_back(std::move(row)); }
    std::string to_csv() const;
};

enum class Verdict { Pass, Fail, Info };
const char* verdict_name(Verdict v);

struct CampaignResult {
    int criterion = 0;  // 0 for campaigns without an acceptance criterion
    std::string campaign;
    Verdict verdict = Verdict::Info;
    std::string summary;
    std::vector<std::string> notes;  // printed as INFO lines
    Table table;
    double seconds = 0.0;
    nlohmann::json to_json() const;
};

struct CampaignConfig {
    std::string campaign;
    std::vector<int> ladder;
    std::vector<double> a_values;
    double gamma = 0.3;
    double nu = 1.0;
    int samples = 0;
    int pairs = 40;
    std::uint64_t seed = 20240601;
    int jobs = 1;
    double tol = 1e-12;
    nlohmann::json extra = nlohmann::json::object();
};

const std::vector<std::string>& campaign_names();
int campaign_criterion(const std::string& name);
CampaignConfig default_config(const std::string& campaign);
// keys present in j override the defaults
CampaignConfig config_from_json(const std::string& campaign, const nlohmann::json& j);
nlohmann::json config_to_json(const CampaignConfig& c);

CampaignResult run_campaign(const CampaignConfig& cfg);

CampaignResult run_oracle_equivalence(const CampaignConfig& cfg);
CampaignResult run_partition_function(const CampaignConfig& cfg);
CampaignResult run_sampler_exactness(const CampaignConfig& cfg);
CampaignResult run_gap_determinant(const CampaignConfig& cfg);
CampaignResult run_quadrature_hygiene(const CampaignConfig& cfg);
CampaignResult run_ekl_asymptotics(const CampaignConfig& cfg);
CampaignResult run_airy_crosscheck(const CampaignConfig& cfg);
CampaignResult run_kernel_convergence(const CampaignConfig& cfg);
CampaignResult run_bessel_limit(const CampaignConfig& cfg);
CampaignResult run_height_stats(const CampaignConfig& cfg);
CampaignResult run_loop_bound(const CampaignConfig& cfg);
CampaignResult run_backtracking_scan(const CampaignConfig& cfg);
CampaignResult run_gap_convergence(const CampaignConfig& cfg);

// edge probability K(b,w) Kinv(w,b) through the contour formula, stable where dense inversion is not
double edge_probability_analytic(const LatticeModel& m, int edge);
// det(I - L) with L built from contour-formula entries
double gap_probability_analytic(const LatticeModel& m, const std::vector<int>& edges);

// is there a strictly decreasing sequence d_k with |d_k - v_k| <= 3 s_k?
bool decreasing_within(const std::vector<double>& v, const std::vector<double>& s, double k_sigma = 3.0);
bool strictly_decreasing(const std::vector<double>& v);

}  // namespace tpad
