#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oapl/common/date.hpp"
#include "oapl/corpus/article.hpp"
#include "oapl/corpus/corpus.hpp"
#include "oapl/encoding/weights.hpp"
#include "oapl/registry/policy.hpp"
#include "oapl/registry/registry.hpp"

namespace testsupport {

using namespace oapl;

inline std::filesystem::path fixture_path(const std::string& name) {
    return std::filesystem::path(OAPL_FIXTURE_DIR) / name;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// A record that passes every contradiction rule and encodes under both schemes.
inline registry::PolicyRecord mandate_record(const std::string& id) {
    using namespace registry;
    PolicyRecord r;
    r.id = id;
    r.policymaker_name = "Policymaker " + id;
    r.region = Region::Europe;
    r.country = "Belgium";
    r.policymaker_type = PolicymakerType::ResearchOrg;
    r.source_of_policy = SourceOfPolicy::AdminDecision;
    r.adoption_date = PartialDate{make_date(2008, 5, 1), DatePrecision::Day};
    r.deposit_of_item = DepositOfItem::Required;
    r.locus_of_deposit = LocusOfDeposit::InstitutionalRepository;
    r.date_of_deposit = DateOfDeposit::AtAcceptance;
    r.deposit_waivable = Waivable::No;
    r.make_item_oa = MakeItemOa::Required;
    r.oa_waivable = Waivable::No;
    r.date_make_oa = DateMakeOa::PublicationDate;
    r.research_evaluation_condition = ResearchEvaluation::Yes;
    r.rights_holding = RightsHolding::AuthorRetains;
    r.rights_retention_waivable = Waivable::No;
    r.open_licensing = OpenLicensing::NotSpecified;
    r.embargo_stem = Embargo::Six;
    r.embargo_hass = Embargo::Twelve;
    r.embargo_waivable = Waivable::No;
    r.gold_option = GoldOption::NotSpecified;
    r.apc_funding = ApcFunding::NotMentioned;
    return r;
}

// Requests deposit but mandates nothing.
inline registry::PolicyRecord request_record(const std::string& id) {
    using namespace registry;
    auto r = mandate_record(id);
    r.deposit_of_item = DepositOfItem::Requested;
    r.deposit_waivable = Waivable::NotApplicable;
    r.make_item_oa = MakeItemOa::RequestedOrRecommended;
    r.oa_waivable = Waivable::NotSpecified;
    r.date_of_deposit = DateOfDeposit::WhenPublisherPermits;
    r.research_evaluation_condition = ResearchEvaluation::No;
    return r;
}

inline corpus::ArticleRecord article(const std::string& id, const std::string& inst, corpus::AccessState state,
                                     Date published, long deposit_offset_days = 30) {
    corpus::ArticleRecord a;
    a.article_id = id;
    a.institution_id = inst;
    a.discipline = "general";
    a.altmetric_date = published;
    a.wok_date = add_days(published, corpus::kWokOffsetDays);
    a.access_state = state;
    if (state != corpus::AccessState::NotDeposited) a.deposit_date = add_days(published, deposit_offset_days);
    return a;
}

// Articles for one institution with exactly the given state counts, spread over 2011-2013.
inline void add_counts(corpus::DepositCorpus& c, const std::string& inst, std::size_t oa, std::size_t ra,
                       std::size_t mo, std::size_t nd) {
    using corpus::AccessState;
    const std::pair<AccessState, std::size_t> parts[] = {
        {AccessState::OpenAccess, oa},
        {AccessState::RestrictedAccess, ra},
        {AccessState::MetadataOnly, mo},
        {AccessState::NotDeposited, nd},
    };
    std::size_t k = 0;
    for (const auto& [state, n] : parts) {
        for (std::size_t i = 0; i < n; ++i, ++k) {
            Date pub = add_days(make_date(2011, 1, 1), static_cast<long>((k * 37) % 1090));
            c.articles.push_back(article(inst + "-" + std::to_string(k), inst, state, pub));
        }
    }
}

// Registry with the regional and policymaker-type distribution of the 663 policies.
inline registry::RegistrySnapshot world_policy_registry() {
    using namespace registry;
    const std::pair<Region, std::size_t> regions[] = {
        {Region::Europe, 389}, {Region::NorthAmerica, 145}, {Region::CentralSouthAmerica, 34},
        {Region::Africa, 16},  {Region::Asia, 40},          {Region::Oceania, 39},
    };
    const std::pair<PolicymakerType, std::size_t> types[] = {
        {PolicymakerType::Funder, 72},
        {PolicymakerType::ResearchOrg, 461},
        {PolicymakerType::FunderAndResearchOrg, 53},
        {PolicymakerType::MultipleResearchOrgs, 8},
        {PolicymakerType::SubUnit, 69},
    };
    std::vector<Region> region_of;
    for (const auto& [r, n] : regions) region_of.insert(region_of.end(), n, r);
    std::vector<PolicymakerType> type_of;
    for (const auto& [t, n] : types) type_of.insert(type_of.end(), n, t);

    RegistrySnapshot s;
    s.snapshot_date = make_date(2015, 1, 1);
    for (std::size_t i = 0; i < region_of.size(); ++i) {
        auto r = (i % 3 == 0) ? mandate_record("pol-" + std::to_string(i)) : request_record("pol-" + std::to_string(i));
        r.region = region_of[i];
        // Interleave types so regions and types are not aligned.
        r.policymaker_type = type_of[(i * 7) % type_of.size()];
        s.records.push_back(std::move(r));
    }
    return s;
}

// Table-style condition labels and option labels, mapped onto wire names.
inline const std::map<std::string, encoding::ConditionId>& printed_conditions() {
    using C = encoding::ConditionId;
    static const std::map<std::string, C> m = {
        {"Research evaluation", C::ResearchEvaluation},
        {"Must deposit", C::MustDeposit},
        {"Must make OA", C::MustMakeOA},
        {"Can not waive deposit", C::CannotWaiveDeposit},
        {"Can not waive OA", C::CannotWaiveOA},
        {"Can not waive rights retention", C::CannotWaiveRightsRetention},
        {"Deposit immediately", C::DepositImmediately},
        {"Make OA immediately", C::MakeOAImmediately},
        {"Embargo permitted: STEM", C::EmbargoSTEM},
        {"Embargo permitted: HaSS", C::EmbargoHaSS},
        {"Deposit in institutional repository", C::DepositInIR},
        {"Must retain rights", C::MustRetainRights},
        {"Open licensing conditions", C::OpenLicensing},
    };
    return m;
}

inline std::string wire_option(encoding::ConditionId c, const std::string& label) {
    using C = encoding::ConditionId;
    static const std::map<std::string, std::string> common = {
        {"Yes", "yes"},
        {"No", "no"},
        {"Not specified", "not_specified"},
        {"Not applicable", "not_applicable"},
        {"Not mentioned", "not_mentioned"},
        {"Other", "other"},
    };
    static const std::map<std::pair<C, std::string>, std::string> specific = {
        {{C::MustDeposit, "Required"}, "required"},
        {{C::MustDeposit, "Requested"}, "requested"},
        {{C::MustDeposit, "Not specified"}, "unspecified"},
        {{C::MustMakeOA, "Required"}, "required"},
        {{C::MustMakeOA, "Requested or recommended"}, "requested_or_recommended"},
        {{C::DepositImmediately, "No later than time of acceptance"}, "at_acceptance"},
        {{C::DepositImmediately, "No later than publication date"}, "at_publication"},
        {{C::DepositImmediately, "By end of the policy-specified embargo"}, "end_of_policy_embargo"},
        {{C::DepositImmediately, "When publisher permits"}, "when_publisher_permits"},
        {{C::MakeOAImmediately, "Acceptance date"}, "acceptance_date"},
        {{C::MakeOAImmediately, "Publication date"}, "publication_date"},
        {{C::MakeOAImmediately, "By end of policy-permitted embargo"}, "end_of_policy_embargo"},
        {{C::MakeOAImmediately, "As soon as deposit is completed"}, "upon_deposit"},
        {{C::MakeOAImmediately, "When publisher permits"}, "when_publisher_permits"},
        {{C::EmbargoSTEM, "0 months"}, "zero"},
        {{C::EmbargoSTEM, "6 months"}, "six"},
        {{C::EmbargoSTEM, "12 months"}, "twelve"},
        {{C::EmbargoSTEM, "Longer"}, "longer"},
        {{C::EmbargoHaSS, "0 months"}, "zero"},
        {{C::EmbargoHaSS, "6 months"}, "six"},
        {{C::EmbargoHaSS, "12 months"}, "twelve"},
        {{C::DepositInIR, "Institutional repository"}, "institutional_repository"},
        {{C::DepositInIR, "Any suitable repository"}, "any_suitable"},
        {{C::MustRetainRights, "Author retains key rights"}, "author_retains"},
        {{C::MustRetainRights, "Author grants key rights to institution"}, "author_grants_to_institution"},
        {{C::MustRetainRights, "Institution or funder retains key rights"}, "institution_or_funder_retains"},
        {{C::MustRetainRights, "None of these"}, "none_of_these"},
        {{C::OpenLicensing, "Does not require any re-use licence"}, "no_reuse_licence_required"},
        {{C::OpenLicensing, "Requires CC-BY or equivalent"}, "cc_by"},
        {{C::OpenLicensing, "Requires CC-BY-NC or equivalent"}, "cc_by_nc"},
        {{C::OpenLicensing, "Requires an open licence without specifying which one"}, "open_licence_unspecified"},
    };
    if (auto it = specific.find({c, label}); it != specific.end()) return it->second;
    if (auto it = common.find(label); it != common.end()) return it->second;
    return "<unmapped:" + label + ">";
}

struct PrintedWeight {
    encoding::ConditionId condition;
    std::string option;  // wire name
    std::string label;
    double weight_i;
    double weight_ii;
};

// Parses the tab-separated transcription ("100%" style cells).
inline std::vector<PrintedWeight> printed_weights() {
    std::vector<PrintedWeight> out;
    std::istringstream in(slurp(fixture_path("table10_weights.tsv")));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, '\t')) cells.push_back(cell);
        if (cells.size() != 4) throw std::runtime_error("bad transcription line: " + line);
        auto pct = [](const std::string& s) { return std::stod(s.substr(0, s.find('%'))) / 100.0; };
        auto c = printed_conditions().at(cells[0]);
        out.push_back({c, wire_option(c, cells[1]), cells[1], pct(cells[2]), pct(cells[3])});
    }
    return out;
}

}  // namespace testsupport
