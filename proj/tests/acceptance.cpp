// Runs every acceptance campaign with its default configuration.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "tpad/experiments.hpp"

using namespace tpad;

int main(int argc, char** argv) {
    int jobs = 1;
    if (const char* j = std::getenv("TPAD_JOBS")) jobs = std::max(1, std::atoi(j));
    std::string only = argc > 1 ? argv[1] : "";
    int fails = 0;
    for (const auto& name : campaign_names()) {
        const int k = campaign_criterion(name);
        if (k == 0) continue;
        if (!only.empty() && only != name && only != std::to_string(k)) continue;
        CampaignConfig cfg = default_config(name);
        cfg.jobs = jobs;
        CampaignResult r;
        try {
            r = run_campaign(cfg);
        } catch (const std::exception& e) {
            std::printf("FAIL criterion %d %s: %s\n", k, name.c_str(), e.what());
            ++fails;
            continue;
        }
        std::printf("%s criterion %d %s: %s (%.1f s)\n", verdict_name(r.verdict), k, name.c_str(), r.summary.c_str(), r.seconds);
        for (const auto& note : r.notes) std::printf("INFO criterion %d: %s\n", k, note.c_str());
        std::fflush(stdout);
        if (r.verdict == Verdict::Fail) ++fails;
    }
    std::printf("%d failing criteria\n", fails);
    return fails == 0 ? 0 : 1;
}
