#include "oapl/corpus/world.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>

#include <json.hpp>

#include "oapl/common/error.hpp"
#include "oapl/common/random.hpp"
#include "oapl/corpus/synthetic.hpp"

namespace oapl::corpus {
namespace {

using nlohmann::json;
using namespace registry;

template <typename E>
E pick(Rng& rng, std::initializer_list<E> options) {
    auto i = rng.integer(0, static_cast<std::int64_t>(options.size()) - 1);
    return *(options.begin() + i);
}

Waivable active_waiver(Rng& rng) { return pick(rng, {Waivable::Yes, Waivable::No, Waivable::NotSpecified}); }

// Only options that carry a weight under both schemes are drawn, and the
// waiver fields follow their parent conditions.
PolicyRecord random_policy(Rng& rng, std::size_t index) {
    char id[32];
    std::snprintf(id, sizeof id, "inst-%03zu", index + 1);
    PolicyRecord r;
    r.id = id;
    r.policymaker_name = "Institution " + std::string(id + 5);
    r.country = "Synthland";
    r.region = pick(rng, {Region::Europe, Region::NorthAmerica, Region::CentralSouthAmerica, Region::Africa,
                          Region::Asia, Region::Oceania});
    r.policymaker_type = PolicymakerType::ResearchOrg;
    r.source_of_policy = pick(rng, {SourceOfPolicy::AdminDecision, SourceOfPolicy::FacultyVote});

    const Date first = make_date(2003, 1, 1);
    const Date adopted = add_days(first, static_cast<long>(rng.integer(0, days_between(first, make_date(2011, 12, 31)))));
    r.adoption_date = PartialDate{adopted, DatePrecision::Day};
    r.effective_date = r.adoption_date;

    r.deposit_of_item = pick(rng, {DepositOfItem::Required, DepositOfItem::Requested, DepositOfItem::Unspecified});
    r.deposit_waivable = r.deposit_of_item == DepositOfItem::Required ? active_waiver(rng) : Waivable::NotApplicable;
    r.locus_of_deposit = LocusOfDeposit::InstitutionalRepository;
    r.date_of_deposit = pick(rng, {DateOfDeposit::AtAcceptance, DateOfDeposit::AtPublication,
                                   DateOfDeposit::EndOfPolicyEmbargo, DateOfDeposit::WhenPublisherPermits,
                                   DateOfDeposit::NotSpecified, DateOfDeposit::Other});
    r.make_item_oa = pick(rng, {MakeItemOa::Required, MakeItemOa::RequestedOrRecommended});
    r.oa_waivable = active_waiver(rng);
    r.date_make_oa = pick(rng, {DateMakeOa::AcceptanceDate, DateMakeOa::PublicationDate, DateMakeOa::EndOfPolicyEmbargo,
                                DateMakeOa::WhenPublisherPermits, DateMakeOa::UponDeposit, DateMakeOa::NotMentioned,
                                DateMakeOa::Other});
    r.research_evaluation_condition =
        pick(rng, {ResearchEvaluation::Yes, ResearchEvaluation::No, ResearchEvaluation::NotSpecified});
    r.rights_holding = pick(rng, {RightsHolding::AuthorGrantsToInstitution, RightsHolding::InstitutionOrFunderRetains,
                                  RightsHolding::AuthorRetains, RightsHolding::NoneOfThese, RightsHolding::NotMentioned});
    const bool holds = r.rights_holding == RightsHolding::AuthorGrantsToInstitution ||
                       r.rights_holding == RightsHolding::InstitutionOrFunderRetains ||
                       r.rights_holding == RightsHolding::AuthorRetains;
    r.rights_retention_waivable = holds ? active_waiver(rng) : Waivable::NotApplicable;
    r.rights_grant_waivable = r.rights_retention_waivable;
    r.open_licensing = pick(rng, {OpenLicensing::NoReuseLicenceRequired, OpenLicensing::OpenLicenceUnspecified,
                                  OpenLicensing::CcBy, OpenLicensing::CcByNc, OpenLicensing::Other,
                                  OpenLicensing::NotSpecified});
    r.embargo_stem = pick(rng, {Embargo::Zero, Embargo::Six, Embargo::Twelve, Embargo::TwentyFour, Embargo::Longer,
                                Embargo::NotSpecified});
    r.embargo_hass = pick(rng, {Embargo::Zero, Embargo::Six, Embargo::Twelve, Embargo::NotSpecified});
    const bool no_embargo = r.embargo_stem == Embargo::NotSpecified && r.embargo_hass == Embargo::NotSpecified;
    r.embargo_waivable = no_embargo ? Waivable::NotApplicable : active_waiver(rng);
    r.gold_option = pick(rng, {GoldOption::RecommendedAlternative, GoldOption::PermittedAlternative,
                               GoldOption::NotSpecified});
    r.apc_funding = pick(rng, {ApcFunding::FromGrant, ApcFunding::SpecificFund, ApcFunding::InstitutionFunds,
                               ApcFunding::NotMentioned});
    return r;
}

double linear_predictor(const PolicyRecord& r, const std::vector<std::pair<encoding::ConditionId, double>>& effects,
                        const Date& reference) {
    const auto& table = encoding::builtin_table(encoding::Scheme::II);
    double eta = 0.0;
    for (const auto& [c, effect] : effects) {
        const double x = encoding::is_continuous(c) ? registry::mandate_age(r, reference)
                                                    : table.weight(c, encoding::option_of(r, c));
        eta += effect * x;
    }
    return eta;
}

std::vector<std::pair<encoding::ConditionId, double>> read_effects(const json& obj) {
    if (!obj.is_object()) throw InputError("world config: effects must be an object of condition -> number");
    std::vector<std::pair<encoding::ConditionId, double>> out;
    for (const auto& [key, value] : obj.items()) {
        auto c = parse_enum<encoding::ConditionId>(key);
        if (!c) throw InputError("world config: unknown condition '" + key + "'");
        out.emplace_back(*c, value.get<double>());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

WorldConfig parse_world_config(std::string_view text) try {
    json doc = json::parse(text);
    if (!doc.is_object()) throw InputError("world config must be a JSON object");
    static const char* const known[] = {"institutions", "articles", "years", "snapshot_date", "oa_base", "ra_base",
                                        "metadata_only", "oa_effects", "ra_effects", "latency"};
    for (const auto& [key, value] : doc.items()) {
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known)) {
            throw InputError("world config: unknown key '" + key + "'");
        }
    }
    WorldConfig cfg;
    cfg.institutions = doc.value("institutions", cfg.institutions);
    if (auto it = doc.find("articles"); it != doc.end()) {
        cfg.min_articles = it->at(0).get<std::size_t>();
        cfg.max_articles = it->at(1).get<std::size_t>();
    }
    if (auto it = doc.find("years"); it != doc.end()) {
        cfg.first_year = it->at(0).get<int>();
        cfg.last_year = it->at(1).get<int>();
    }
    if (auto it = doc.find("snapshot_date"); it != doc.end()) cfg.snapshot_date = parse_date(it->get<std::string>());
    cfg.oa_base = doc.value("oa_base", cfg.oa_base);
    cfg.ra_base = doc.value("ra_base", cfg.ra_base);
    cfg.metadata_only = doc.value("metadata_only", cfg.metadata_only);
    if (auto it = doc.find("oa_effects"); it != doc.end()) cfg.oa_effects = read_effects(*it);
    if (auto it = doc.find("ra_effects"); it != doc.end()) cfg.ra_effects = read_effects(*it);
    if (auto it = doc.find("latency"); it != doc.end()) {
        cfg.latency_mean_months = it->value("mean_months", cfg.latency_mean_months);
        cfg.latency_sd_months = it->value("sd_months", cfg.latency_sd_months);
        cfg.latency_age_slope = it->value("age_slope", cfg.latency_age_slope);
    }
    return cfg;
} catch (const json::exception& e) {
    throw InputError(std::string("world config: ") + e.what());
}

World generate_world(const WorldConfig& config, std::uint64_t seed) {
    if (config.min_articles > config.max_articles) throw InputError("world config: article range is empty");
    if (config.oa_base < 0.0 || config.ra_base < 0.0 || config.metadata_only < 0.0 || config.metadata_only > 1.0) {
        throw InputError("world config: base probabilities must be non-negative");
    }
    if (config.snapshot_date < make_date(2011, 12, 31)) {
        throw InputError("world config: snapshot_date precedes the latest possible adoption date");
    }

    World world;
    world.registry.snapshot_date = config.snapshot_date;
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);

    SyntheticConfig sim;
    sim.first_year = config.first_year;
    sim.last_year = config.last_year;
    for (std::size_t i = 0; i < config.institutions; ++i) {
        auto record = random_policy(rng, i);

        InstitutionSpec spec;
        spec.id = record.id;
        spec.articles = static_cast<std::size_t>(rng.integer(static_cast<std::int64_t>(config.min_articles),
                                                             static_cast<std::int64_t>(config.max_articles)));
        double oa = config.oa_base * std::exp(linear_predictor(record, config.oa_effects, config.snapshot_date));
        double ra = config.ra_base * std::exp(linear_predictor(record, config.ra_effects, config.snapshot_date));
        double mo = config.metadata_only;
        const double total = oa + ra + mo;
        if (total > 0.95) {
            oa *= 0.95 / total;
            ra *= 0.95 / total;
            mo *= 0.95 / total;
        }
        spec.probabilities = {1.0 - oa - ra - mo, mo, ra, oa};
        const double age = registry::mandate_age(record, config.snapshot_date);
        spec.oa_latency = {config.latency_mean_months + config.latency_age_slope * age, config.latency_sd_months};
        spec.ra_latency = spec.oa_latency;

        sim.institutions.push_back(std::move(spec));
        world.registry.records.push_back(std::move(record));
    }
    world.corpus = generate_synthetic(sim, seed);
    return world;
}

}  // namespace oapl::corpus
