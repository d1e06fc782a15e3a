#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "oapl/corpus/article.hpp"
#include "oapl/encoding/weights.hpp"
#include "oapl/registry/policy.hpp"

namespace oapl::corpus {

// A registry of random, internally consistent institutional policies plus a
// deposit corpus whose behaviour follows them: the OA and RA probabilities are
// log-linear in the scheme-II encoding, and mean deposit latency moves with
// policy age.
struct WorldConfig {
    std::size_t institutions = 80;
    std::size_t min_articles = 60;
    std::size_t max_articles = 240;
    int first_year = 2011;
    int last_year = 2013;
    Date snapshot_date = make_date(2014, 1, 1);
    double oa_base = 0.12;
    double ra_base = 0.08;
    double metadata_only = 0.05;
    std::vector<std::pair<encoding::ConditionId, double>> oa_effects{
        {encoding::ConditionId::MustDeposit, 0.6},
        {encoding::ConditionId::CannotWaiveDeposit, 0.5},
    };
    std::vector<std::pair<encoding::ConditionId, double>> ra_effects;
    double latency_mean_months = 9.0;
    double latency_sd_months = 6.0;
    double latency_age_slope = -0.8;  // months per year of policy age
};

struct World {
    registry::RegistrySnapshot registry;
    DepositCorpus corpus;
};

// JSON object; every key optional:
// {"institutions": 80, "articles": [60, 240], "years": [2011, 2013],
//  "snapshot_date": "2014-01-01", "oa_base": 0.12, "ra_base": 0.08, "metadata_only": 0.05,
//  "oa_effects": {"must_deposit": 0.6}, "ra_effects": {},
//  "latency": {"mean_months": 9, "sd_months": 6, "age_slope": -0.8}}
WorldConfig parse_world_config(std::string_view json_text);

World generate_world(const WorldConfig& config, std::uint64_t seed);

}  // namespace oapl::corpus
