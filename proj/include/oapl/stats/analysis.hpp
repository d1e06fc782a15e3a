#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oapl/corpus/corpus.hpp"
#include "oapl/encoding/weights.hpp"
#include "oapl/registry/policy.hpp"
#include "oapl/stats/nbr.hpp"
#include "oapl/stats/pearson.hpp"

namespace oapl::stats {

enum class Response { OaRate, RaRate, FtRate, OaY1, RaY1, FtY1 };
enum class ResponseFamily { Rates, Latency };
enum class ResponseSet { Rates, Latency, Both };

ResponseFamily family_of(Response r);
Response basis_response(ResponseFamily f);  // the FT member, used for screening
std::vector<Response> responses_of(ResponseSet set);
ResponseSet parse_response_set(std::string_view name);  // rates|latency|both

struct AnalysisConfig {
    encoding::Scheme stage1_scheme = encoding::Scheme::I;
    encoding::Scheme stage2_scheme = encoding::Scheme::II;
    double threshold = 0.1;
    ResponseSet responses = ResponseSet::Both;
    corpus::ExclusionParams exclusions;
    std::optional<Date> reference_date;  // defaults to the snapshot date
    double significance = 0.05;
    NbrOptions nbr;
};

// Conditions correlated in stage 1: the weighted conditions without the two
// embargo lengths, then mandate age.
const std::vector<encoding::ConditionId>& stage1_conditions();

struct PairwiseRow {
    encoding::ConditionId condition;
    Response response;
    std::optional<double> r;  // absent when undefined
    std::optional<double> p;
    std::size_t n = 0;
    std::string note;  // zero_variance, too_few_pairs
};

struct ScreeningOutcome {
    ResponseFamily family;
    Response basis;
    std::vector<encoding::ConditionId> retained;
    std::vector<encoding::ConditionId> eliminated;
};

struct Stage2Fit {
    Response response;
    std::vector<encoding::ConditionId> conditions;  // design columns after the intercept
    std::optional<NbrFit> fit;
    std::size_t rows = 0;
    std::size_t dropped_missing_mandate_age = 0;
    std::size_t dropped_missing_response = 0;
    bool pseudo_counts = false;  // latency scores scaled by 100 and rounded
    std::string note;
};

struct SummaryRow {
    encoding::ConditionId condition;
    Response response;
    std::string direction;  // positive, negative, near_zero or collinear
    bool nbr_significant = false;
    bool pairwise_significant = false;
    bool near_zero = false;
};

struct AnalysisReport {
    AnalysisConfig config;
    Date reference_date;
    std::vector<std::string> institutions;  // regression sample
    corpus::ExclusionReport exclusions;
    std::size_t institutions_without_policy = 0;
    std::vector<PairwiseRow> stage1;
    std::vector<ScreeningOutcome> screening;
    std::vector<PairwiseRow> stage2_pairwise;  // retained conditions under the stage-2 scheme
    std::vector<Stage2Fit> stage2;
    std::vector<SummaryRow> summary;

    const Stage2Fit* stage2_for(Response r) const;
};

// Exclusions, stage-1 correlations and screening, stage-2 regressions and the
// summary classification. Throws InfeasibleError with fewer than three
// institutions left, InputError when a record cannot be encoded.
AnalysisReport run_effectiveness_analysis(const registry::RegistrySnapshot& snapshot,
                                          const corpus::DepositCorpus& corpus, const AnalysisConfig& config);

std::string stage1_csv(const AnalysisReport& report);    // condition,response,r,p,n
std::string stage2_csv(const AnalysisReport& report);    // condition,response,beta,se,exp_beta,p,flag
std::string summary_csv(const AnalysisReport& report);
std::string report_json(const AnalysisReport& report);  // full precision

}  // namespace oapl::stats

namespace oapl {

template <>
struct EnumNames<stats::Response> {
    using E = stats::Response;
    static constexpr std::array<std::pair<E, std::string_view>, 6> values{{
        {E::OaRate, "oa_rate"},
        {E::RaRate, "ra_rate"},
        {E::FtRate, "ft_rate"},
        {E::OaY1, "oa_y1"},
        {E::RaY1, "ra_y1"},
        {E::FtY1, "ft_y1"},
    }};
};

}  // namespace oapl
