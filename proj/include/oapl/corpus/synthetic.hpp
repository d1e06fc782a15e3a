#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "oapl/corpus/article.hpp"

namespace oapl::corpus {

struct StateProbabilities {
    double not_deposited = 1.0;
    double metadata_only = 0.0;
    double restricted = 0.0;
    double open = 0.0;
};

// Deposit latency drawn from a normal distribution, in months.
struct LatencyModel {
    double mean_months = 6.0;
    double sd_months = 6.0;
};

struct InstitutionSpec {
    std::string id;
    std::size_t articles = 0;
    StateProbabilities probabilities;
    LatencyModel oa_latency;
    LatencyModel ra_latency;
    double ra_conversion = 0.0;  // share of OA deposits first held as RA
};

struct SyntheticConfig {
    int first_year = 2011;
    int last_year = 2013;
    double altmetric_fraction = 0.8;
    double conversion_delay_months = 12.0;
    std::vector<std::string> disciplines{"general"};
    std::vector<InstitutionSpec> institutions;
};

// JSON config. Institutions give probabilities inline or name a profile:
// {
//   "years": [2011, 2013], "altmetric_fraction": 0.8, "disciplines": [...],
//   "profiles": {"strong": {"probabilities": {"not_deposited": ..., "metadata_only": ...,
//                                            "restricted": ..., "open": ...},
//                           "oa_latency": {"mean_months": 8, "sd_months": 6}, ...}},
//   "institutions": [{"id": "inst-01", "articles": 400, "profile": "strong"}]
// }
SyntheticConfig parse_synthetic_config(std::string_view json_text);

// Deterministic for a given (config, seed). Throws InputError when an
// institution's probabilities do not sum to 1 within 1e-9.
DepositCorpus generate_synthetic(const SyntheticConfig& config, std::uint64_t seed);

}  // namespace oapl::corpus
