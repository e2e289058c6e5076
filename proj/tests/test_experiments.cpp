#include <doctest.h>

#include "tpad/experiments.hpp"

using namespace tpad;

TEST_CASE("decreasing checks") {
    CHECK(strictly_decreasing({3, 2, 1}));
    CHECK_FALSE(strictly_decreasing({3, 3, 1}));
    CHECK_FALSE(strictly_decreasing({}));
    CHECK(decreasing_within({1.0, 1.05, 0.5}, {0.1, 0.1, 0.1}));
    CHECK_FALSE(decreasing_within({1.0, 2.0, 0.5}, {0.1, 0.1, 0.1}));
    CHECK(decreasing_within({0.0, 0.0}, {0.01, 0.01}));
}

TEST_CASE("17 significant digits") {
    CHECK(fmt17(0.1) == "0.10000000000000001");
    CHECK(std::stod(fmt17(1.0 / 3)) == 1.0 / 3);
    Table t;
    t.columns = {"a", "b", "c"};
    t.add({1, 0.25, "x"});
    CHECK(t.to_csv() == "a,b,c\n1,0.25,x\n");
}

TEST_CASE("campaign configs") {
    CHECK(campaign_names().size() == 13);
    for (const auto& name : campaign_names()) {
        const CampaignConfig c = default_config(name);
        CHECK(c.campaign == name);
        const CampaignConfig back = config_from_json(name, config_to_json(c));
        CHECK(back.ladder == c.ladder);
        CHECK(back.samples == c.samples);
    }
    CHECK(campaign_criterion("kernel-convergence") == 8);
    CHECK(campaign_criterion("gap-convergence") == 0);
    CHECK_THROWS(config_from_json("height-stats", {{"ladder", {64, 32}}}));
    CHECK_THROWS(config_from_json("kernel-convergence", {{"gamma", 0.4}}));
    CHECK_THROWS(run_campaign(default_config("no-such-campaign")));
}

TEST_CASE("partition-function campaign passes and is deterministic") {
    const CampaignResult a = run_campaign(default_config("partition-function"));
    const CampaignResult b = run_campaign(default_config("partition-function"));
    CHECK(a.verdict == Verdict::Pass);
    CHECK(a.table.to_csv() == b.table.to_csv());
    CHECK(a.to_json()["verdict"] == "PASS");
}

TEST_CASE("small Monte Carlo campaigns are reproducible") {
    CampaignConfig c = default_config("height-stats");
    c.ladder = {8, 16};
    c.samples = 300;
    const auto a = run_campaign(c);
    c.jobs = 2;
    const auto b = run_campaign(c);
    CHECK(a.table.to_csv() == b.table.to_csv());
}
