#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "oapl/corpus/article.hpp"
#include "oapl/registry/policy.hpp"

namespace oapl::metrics {

enum class GroupKind { Institution, Discipline, Year, Mandated, All };

// How articles are bucketed. `mandated` lists institution ids whose policy is
// a mandate; it is consulted only for GroupKind::Mandated.
struct GroupBy {
    GroupKind kind = GroupKind::All;
    std::set<std::string> mandated;

    static GroupBy parse(std::string_view name);  // throws InputError on an unknown key
};

// Mandated institution set from a registry snapshot (institution id == record id).
std::set<std::string> mandated_institutions(const registry::RegistrySnapshot& snapshot);

// Group label of an article, or nothing when it cannot be placed (undatable
// article grouped by year).
std::optional<std::string> group_key(const corpus::ArticleRecord& article, const GroupBy& group);

struct DepositRates {
    std::string key;
    std::size_t n_articles = 0;
    std::size_t oa = 0, ra = 0, mo = 0, nd = 0;

    std::size_t ft() const { return oa + ra; }
    double oa_rate() const { return fraction(oa); }
    double ra_rate() const { return fraction(ra); }
    double ft_rate() const { return fraction(ft()); }
    double mo_rate() const { return fraction(mo); }
    double nd_rate() const { return fraction(nd); }

private:
    double fraction(std::size_t count) const {
        return n_articles ? static_cast<double>(count) / static_cast<double>(n_articles) : 0.0;
    }
};

// One entry per non-empty group, ordered by key.
std::vector<DepositRates> deposit_rates(const corpus::DepositCorpus& corpus, const GroupBy& group);

enum class RateField { FullText, OpenAccess, Restricted, MetadataOnly, NotDeposited };

RateField parse_rate_field(std::string_view name);  // ft|oa|ra|mo|nd

// Descending by the chosen rate (compared exactly on counts), ties broken by
// n_articles descending then key ascending; groups below min_articles dropped.
std::vector<DepositRates> rank_institutions(std::vector<DepositRates> rates, RateField key,
                                            std::size_t min_articles);

enum class Category { OA, RA, FT };

Category parse_category(std::string_view name);  // oa|ra|ft
std::string_view category_name(Category c);

// Whether an article is a full-text deposit of the category.
bool in_category(const corpus::ArticleRecord& article, Category category);

struct LatencySummary {
    std::string key;
    std::size_t oa_count = 0;
    std::size_t ra_count = 0;
    std::optional<double> oa_mean;
    std::optional<double> ra_mean;
    std::optional<double> ft_mean;
};

std::vector<LatencySummary> latency_summary(const corpus::DepositCorpus& corpus, const GroupBy& group);

// Restricts an aggregation to one group and/or publication year.
struct Selection {
    std::optional<GroupBy> group;
    std::string key;  // required group label when `group` is set
    std::optional<int> year;
};

struct PeriodDistribution {
    std::array<double, corpus::kLatencyPeriods> proportions{};
    std::array<std::size_t, corpus::kLatencyPeriods> counts{};
    std::size_t total = 0;
};

// Share of the category's datable deposits falling in each latency period.
// Throws InfeasibleError when nothing qualifies.
PeriodDistribution period_distribution(const corpus::DepositCorpus& corpus, Category category,
                                       const Selection& selection = {});

struct Y1Score {
    std::string key;
    std::optional<int> year;
    double score = 0.0;
    double p_before = 0.0;
    double p_0_6 = 0.0;
    double p_6_12 = 0.0;
    std::size_t denominator = 0;
};

// First-year latency score: weights 1, 2/3, 1/3 on the shares deposited
// before publication, within 6 months, and 6-12 months after. The denominator
// counts every datable deposit of the category, late ones included.
Y1Score first_year_latency_score(const corpus::DepositCorpus& corpus, Category category,
                                 const Selection& selection = {});

struct GreenGoldCounts {
    std::size_t deposit_required = 0;
    std::size_t deposit_requested = 0;
    std::size_t deposit_not_specified = 0;
    std::size_t gold_required = 0;
    std::size_t gold_recommended = 0;
    std::size_t gold_permitted = 0;
    std::size_t gold_other = 0;  // not specified / other
    std::size_t total = 0;
};

struct RegistrySummary {
    std::size_t total = 0;
    std::size_t mandates = 0;
    std::array<std::size_t, 6> by_region{};           // indexed by registry::Region
    std::array<std::size_t, 6> by_policymaker_type{};  // indexed by registry::PolicymakerType
    GreenGoldCounts all;
    GreenGoldCounts funders;       // Funder only
    GreenGoldCounts institutions;  // ResearchOrg, MultipleResearchOrgs, SubUnit
    std::array<std::size_t, 6> mandates_by_region{};
    std::array<std::size_t, 6> deposit_timing_mandatory{};  // indexed by registry::DateOfDeposit
    std::array<std::size_t, 6> deposit_timing_requested{};
};

RegistrySummary summarize_registry(const registry::RegistrySnapshot& snapshot);

}  // namespace oapl::metrics
