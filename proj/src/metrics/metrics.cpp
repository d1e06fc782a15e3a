#include "oapl/metrics/metrics.hpp"

#include <algorithm>
#include <map>

#include "oapl/common/error.hpp"

namespace oapl::metrics {

using corpus::AccessState;
using corpus::ArticleRecord;
using corpus::DepositCorpus;

GroupBy GroupBy::parse(std::string_view name) {
    GroupBy g;
    if (name == "institution") g.kind = GroupKind::Institution;
    else if (name == "discipline") g.kind = GroupKind::Discipline;
    else if (name == "year") g.kind = GroupKind::Year;
    else if (name == "mandated") g.kind = GroupKind::Mandated;
    else if (name == "all") g.kind = GroupKind::All;
    else throw InputError("unknown group-by key '" + std::string(name) + "'");
    return g;
}

std::set<std::string> mandated_institutions(const registry::RegistrySnapshot& snapshot) {
    std::set<std::string> out;
    for (const auto& r : snapshot.records) {
        if (registry::is_mandate(r)) out.insert(r.id);
    }
    return out;
}

std::optional<std::string> group_key(const ArticleRecord& a, const GroupBy& group) {
    switch (group.kind) {
        case GroupKind::Institution: return a.institution_id;
        case GroupKind::Discipline: return a.discipline;
        case GroupKind::Year: {
            auto y = corpus::publication_year(a);
            if (!y) return std::nullopt;
            return std::to_string(*y);
        }
        case GroupKind::Mandated:
            return group.mandated.count(a.institution_id) ? std::string("mandated") : std::string("non_mandated");
        case GroupKind::All: return std::string("all");
    }
    return std::nullopt;
}

std::vector<DepositRates> deposit_rates(const DepositCorpus& corpus, const GroupBy& group) {
    std::map<std::string, DepositRates> groups;
    for (const auto& a : corpus.articles) {
        auto key = group_key(a, group);
        if (!key) continue;
        auto& g = groups[*key];
        g.key = *key;
        ++g.n_articles;
        switch (a.access_state) {
            case AccessState::OpenAccess: ++g.oa; break;
            case AccessState::RestrictedAccess: ++g.ra; break;
            case AccessState::MetadataOnly: ++g.mo; break;
            case AccessState::NotDeposited: ++g.nd; break;
        }
    }
    std::vector<DepositRates> out;
    out.reserve(groups.size());
    for (auto& [key, g] : groups) out.push_back(std::move(g));
    return out;
}

RateField parse_rate_field(std::string_view name) {
    if (name == "ft") return RateField::FullText;
    if (name == "oa") return RateField::OpenAccess;
    if (name == "ra") return RateField::Restricted;
    if (name == "mo") return RateField::MetadataOnly;
    if (name == "nd") return RateField::NotDeposited;
    throw InputError("unknown rate field '" + std::string(name) + "'");
}

namespace {

std::size_t count_of(const DepositRates& r, RateField f) {
    switch (f) {
        case RateField::FullText: return r.ft();
        case RateField::OpenAccess: return r.oa;
        case RateField::Restricted: return r.ra;
        case RateField::MetadataOnly: return r.mo;
        case RateField::NotDeposited: return r.nd;
    }
    return 0;
}

bool selected(const ArticleRecord& a, const Selection& s) {
    if (s.group) {
        auto key = group_key(a, *s.group);
        if (!key || *key != s.key) return false;
    }
    if (s.year) {
        auto y = corpus::publication_year(a);
        if (!y || *y != *s.year) return false;
    }
    return true;
}

std::vector<double> category_latencies(const DepositCorpus& corpus, Category category, const Selection& s) {
    std::vector<double> out;
    for (const auto& a : corpus.articles) {
        if (!in_category(a, category) || !selected(a, s)) continue;
        if (auto lat = corpus::deposit_latency_months(a)) out.push_back(*lat);
    }
    return out;
}

std::string describe(Category category, const Selection& s) {
    std::string out = std::string(category_name(category)) + " deposits";
    if (s.group) out += " in group '" + s.key + "'";
    if (s.year) out += " published in " + std::to_string(*s.year);
    return out;
}

}  // namespace

std::vector<DepositRates> rank_institutions(std::vector<DepositRates> rates, RateField key, std::size_t min_articles) {
    std::erase_if(rates, [&](const DepositRates& r) { return r.n_articles < min_articles || r.n_articles == 0; });
    std::sort(rates.begin(), rates.end(), [key](const DepositRates& a, const DepositRates& b) {
        // a.count/a.n vs b.count/b.n without rounding.
        auto lhs = static_cast<unsigned long long>(count_of(a, key)) * b.n_articles;
        auto rhs = static_cast<unsigned long long>(count_of(b, key)) * a.n_articles;
        if (lhs != rhs) return lhs > rhs;
        if (a.n_articles != b.n_articles) return a.n_articles > b.n_articles;
        return a.key < b.key;
    });
    return rates;
}

Category parse_category(std::string_view name) {
    if (name == "oa") return Category::OA;
    if (name == "ra") return Category::RA;
    if (name == "ft") return Category::FT;
    throw InputError("unknown category '" + std::string(name) + "'");
}

std::string_view category_name(Category c) {
    switch (c) {
        case Category::OA: return "oa";
        case Category::RA: return "ra";
        case Category::FT: return "ft";
    }
    return "?";
}

bool in_category(const ArticleRecord& a, Category category) {
    switch (category) {
        case Category::OA: return a.access_state == AccessState::OpenAccess;
        case Category::RA: return a.access_state == AccessState::RestrictedAccess;
        case Category::FT: return a.full_text();
    }
    return false;
}

std::vector<LatencySummary> latency_summary(const DepositCorpus& corpus, const GroupBy& group) {
    struct Acc {
        std::size_t oa_n = 0, ra_n = 0;
        double oa_sum = 0.0, ra_sum = 0.0;
    };
    std::map<std::string, Acc> groups;
    for (const auto& a : corpus.articles) {
        auto key = group_key(a, group);
        if (!key) continue;
        auto& acc = groups[*key];
        if (!a.full_text()) continue;
        auto lat = corpus::deposit_latency_months(a);
        if (!lat) continue;
        if (a.access_state == AccessState::OpenAccess) {
            ++acc.oa_n;
            acc.oa_sum += *lat;
        } else {
            ++acc.ra_n;
            acc.ra_sum += *lat;
        }
    }
    std::vector<LatencySummary> out;
    for (const auto& [key, acc] : groups) {
        LatencySummary s;
        s.key = key;
        s.oa_count = acc.oa_n;
        s.ra_count = acc.ra_n;
        if (acc.oa_n) s.oa_mean = acc.oa_sum / static_cast<double>(acc.oa_n);
        if (acc.ra_n) s.ra_mean = acc.ra_sum / static_cast<double>(acc.ra_n);
        if (acc.oa_n + acc.ra_n) s.ft_mean = (acc.oa_sum + acc.ra_sum) / static_cast<double>(acc.oa_n + acc.ra_n);
        out.push_back(std::move(s));
    }
    return out;
}

PeriodDistribution period_distribution(const DepositCorpus& corpus, Category category, const Selection& selection) {
    auto latencies = category_latencies(corpus, category, selection);
    if (latencies.empty()) throw InfeasibleError("no datable " + describe(category, selection));
    PeriodDistribution out;
    out.total = latencies.size();
    for (double m : latencies) ++out.counts[static_cast<std::size_t>(corpus::latency_period(m))];
    for (std::size_t i = 0; i < corpus::kLatencyPeriods; ++i) {
        out.proportions[i] = static_cast<double>(out.counts[i]) / static_cast<double>(out.total);
    }
    return out;
}

Y1Score first_year_latency_score(const DepositCorpus& corpus, Category category, const Selection& selection) {
    auto dist = period_distribution(corpus, category, selection);
    Y1Score out;
    out.key = selection.group ? selection.key : std::string("all");
    out.year = selection.year;
    out.denominator = dist.total;
    const double n = static_cast<double>(dist.total);
    out.p_before = static_cast<double>(dist.counts[0]) / n;
    out.p_0_6 = static_cast<double>(dist.counts[1]) / n;
    out.p_6_12 = static_cast<double>(dist.counts[2]) / n;
    // Weighted counts over one division keeps the all-early case exactly 1.
    out.score = (3.0 * static_cast<double>(dist.counts[0]) + 2.0 * static_cast<double>(dist.counts[1]) +
                 static_cast<double>(dist.counts[2])) /
                (3.0 * n);
    return out;
}

namespace {

void tally(GreenGoldCounts& c, const registry::PolicyRecord& r) {
    using registry::DepositOfItem;
    using registry::GoldOption;
    ++c.total;
    switch (r.deposit_of_item) {
        case DepositOfItem::Required: ++c.deposit_required; break;
        case DepositOfItem::Requested: ++c.deposit_requested; break;
        case DepositOfItem::Unspecified: ++c.deposit_not_specified; break;
    }
    switch (r.gold_option) {
        case GoldOption::Required: ++c.gold_required; break;
        case GoldOption::RecommendedAlternative: ++c.gold_recommended; break;
        case GoldOption::PermittedAlternative: ++c.gold_permitted; break;
        case GoldOption::NotSpecified:
        case GoldOption::Other: ++c.gold_other; break;
    }
}

}  // namespace

RegistrySummary summarize_registry(const registry::RegistrySnapshot& snapshot) {
    using registry::PolicymakerType;
    RegistrySummary s;
    for (const auto& r : snapshot.records) {
        ++s.total;
        ++s.by_region[static_cast<std::size_t>(r.region)];
        ++s.by_policymaker_type[static_cast<std::size_t>(r.policymaker_type)];
        tally(s.all, r);
        if (r.policymaker_type == PolicymakerType::Funder) tally(s.funders, r);
        if (r.policymaker_type == PolicymakerType::ResearchOrg ||
            r.policymaker_type == PolicymakerType::MultipleResearchOrgs ||
            r.policymaker_type == PolicymakerType::SubUnit) {
            tally(s.institutions, r);
        }
        if (registry::is_mandate(r)) {
            ++s.mandates;
            ++s.mandates_by_region[static_cast<std::size_t>(r.region)];
        }
        auto timing = static_cast<std::size_t>(r.date_of_deposit);
        if (r.deposit_of_item == registry::DepositOfItem::Required) ++s.deposit_timing_mandatory[timing];
        if (r.deposit_of_item == registry::DepositOfItem::Requested) ++s.deposit_timing_requested[timing];
    }
    return s;
}

}  // namespace oapl::metrics
