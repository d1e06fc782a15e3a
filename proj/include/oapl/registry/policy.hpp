#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oapl/common/date.hpp"
#include "oapl/common/enum_names.hpp"

namespace oapl::registry {

enum class Region { Europe, NorthAmerica, CentralSouthAmerica, Africa, Asia, Oceania };
enum class PolicymakerType { Funder, ResearchOrg, FunderAndResearchOrg, MultipleResearchOrgs, SubUnit, Unspecified };
enum class SourceOfPolicy { AdminDecision, FacultyVote, NotMentioned, Other };
enum class DepositOfItem { Required, Requested, Unspecified };
enum class LocusOfDeposit { InstitutionalRepository, SubjectRepository, AnySuitable, NotSpecified };
enum class DateOfDeposit { AtAcceptance, AtPublication, EndOfPolicyEmbargo, WhenPublisherPermits, NotSpecified, Other };
enum class Waivable { Yes, No, NotSpecified, NotApplicable };
enum class MakeItemOa { Required, RequestedOrRecommended, NotMentioned, Other, NotSpecified };
enum class DateMakeOa {
    AcceptanceDate,
    PublicationDate,
    EndOfPolicyEmbargo,
    WhenPublisherPermits,
    UponDeposit,
    NotMentioned,
    Other,
    NotSpecified
};
enum class ResearchEvaluation { Yes, No, NotSpecified };
enum class OpenLicensing {
    NoReuseLicenceRequired,
    OpenLicenceUnspecified,
    CcBy,
    CcByNc,
    DifferentOpenLicence,
    Other,
    NotSpecified
};
enum class RightsHolding {
    AuthorGrantsToInstitution,
    InstitutionOrFunderRetains,
    AuthorRetains,
    NoneOfThese,
    NotMentioned,
    NotSpecified
};
// Permitted embargo length in months.
enum class Embargo { Zero, Six, Twelve, TwentyFour, Longer, NotSpecified };
enum class GoldOption { Required, RecommendedAlternative, PermittedAlternative, NotSpecified, Other };
enum class ApcFunding { FromGrant, SpecificFund, InstitutionFunds, NotMentioned, Other };

// One policy classified under the ROARMAP criteria.
struct PolicyRecord {
    std::string id;
    std::string policymaker_name;
    std::optional<std::string> policymaker_url;
    std::optional<std::string> policy_url;
    std::optional<std::string> repository_url;
    Region region = Region::Europe;
    std::string country;
    PolicymakerType policymaker_type = PolicymakerType::Unspecified;
    SourceOfPolicy source_of_policy = SourceOfPolicy::NotMentioned;

    std::optional<PartialDate> adoption_date;
    std::optional<PartialDate> effective_date;
    std::optional<PartialDate> last_revision_date;

    DepositOfItem deposit_of_item = DepositOfItem::Unspecified;
    LocusOfDeposit locus_of_deposit = LocusOfDeposit::NotSpecified;
    DateOfDeposit date_of_deposit = DateOfDeposit::NotSpecified;
    Waivable deposit_waivable = Waivable::NotApplicable;
    MakeItemOa make_item_oa = MakeItemOa::NotSpecified;
    Waivable oa_waivable = Waivable::NotApplicable;
    DateMakeOa date_make_oa = DateMakeOa::NotSpecified;
    ResearchEvaluation research_evaluation_condition = ResearchEvaluation::NotSpecified;
    Waivable rights_retention_waivable = Waivable::NotApplicable;
    OpenLicensing open_licensing = OpenLicensing::NotSpecified;
    RightsHolding rights_holding = RightsHolding::NotSpecified;
    Waivable rights_grant_waivable = Waivable::NotApplicable;
    Embargo embargo_stem = Embargo::NotSpecified;
    Embargo embargo_hass = Embargo::NotSpecified;
    Waivable embargo_waivable = Waivable::NotApplicable;
    GoldOption gold_option = GoldOption::NotSpecified;
    ApcFunding apc_funding = ApcFunding::NotMentioned;
    std::optional<std::string> apc_fund_url;

    friend bool operator==(const PolicyRecord&, const PolicyRecord&) = default;
};

struct RegistrySnapshot {
    Date snapshot_date;
    std::vector<PolicyRecord> records;

    const PolicyRecord* find(std::string_view id) const;
};

// A policy is a mandate when it requires repository deposit or requires OA publishing.
bool is_mandate(const PolicyRecord& record);

// Years elapsed since adoption (days / 365.25). Throws InputError when the
// adoption date is missing or later than `reference`.
double mandate_age(const PolicyRecord& record, const Date& reference);

}  // namespace oapl::registry

namespace oapl {

template <>
struct EnumNames<registry::Region> {
    using E = registry::Region;
    static constexpr std::array<std::pair<E, std::string_view>, 6> values{{
        {E::Europe, "europe"},
        {E::NorthAmerica, "north_america"},
        {E::CentralSouthAmerica, "central_south_america"},
        {E::Africa, "africa"},
        {E::Asia, "asia"},
        {E::Oceania, "oceania"},
    }};
};

template <>
struct EnumNames<registry::PolicymakerType> {
    using E = registry::PolicymakerType;
    static constexpr std::array<std::pair<E, std::string_view>, 6> values{{
        {E::Funder, "funder"},
        {E::ResearchOrg, "research_org"},
        {E::FunderAndResearchOrg, "funder_and_research_org"},
        {E::MultipleResearchOrgs, "multiple_research_orgs"},
        {E::SubUnit, "sub_unit"},
        {E::Unspecified, "unspecified"},
    }};
};

template <>
struct EnumNames<registry::SourceOfPolicy> {
    using E = registry::SourceOfPolicy;
    static constexpr std::array<std::pair<E, std::string_view>, 4> values{{
        {E::AdminDecision, "admin_decision"},
        {E::FacultyVote, "faculty_vote"},
        {E::NotMentioned, "not_mentioned"},
        {E::Other, "other"},
    }};
};

template <>
struct EnumNames<registry::DepositOfItem> {
    using E = registry::DepositOfItem;
    static constexpr std::array<std::pair<E, std::string_view>, 3> values{{
        {E::Required, "required"},
        {E::Requested, "requested"},
        {E::Unspecified, "unspecified"},
    }};
};

template <>
struct EnumNames<registry::LocusOfDeposit> {
    using E = registry::LocusOfDeposit;
    static constexpr std::array<std::pair<E, std::string_view>, 4> values{{
        {E::InstitutionalRepository, "institutional_repository"},
        {E::SubjectRepository, "subject_repository"},
        {E::AnySuitable, "any_suitable"},
        {E::NotSpecified, "not_specified"},
    }};
};

template <>
struct EnumNames<registry::DateOfDeposit> {
    using E = registry::DateOfDeposit;
    static constexpr std::array<std::pair<E, std::string_view>, 6> values{{
        {E::AtAcceptance, "at_acceptance"},
        {E::AtPublication, "at_publication"},
        {E::EndOfPolicyEmbargo, "end_of_policy_embargo"},
        {E::WhenPublisherPermits, "when_publisher_permits"},
        {E::NotSpecified, "not_specified"},
        {E::Other, "other"},
    }};
};

template <>
struct EnumNames<registry::Waivable> {
    using E = registry::Waivable;
    static constexpr std::array<std::pair<E, std::string_view>, 4> values{{
        {E::Yes, "yes"},
        {E::No, "no"},
        {E::NotSpecified, "not_specified"},
        {E::NotApplicable, "not_applicable"},
    }};
};

template <>
struct EnumNames<registry::MakeItemOa> {
    using E = registry::MakeItemOa;
    static constexpr std::array<std::pair<E, std::string_view>, 5> values{{
        {E::Required, "required"},
        {E::RequestedOrRecommended, "requested_or_recommended"},
        {E::NotMentioned, "not_mentioned"},
        {E::Other, "other"},
        {E::NotSpecified, "not_specified"},
    }};
};

template <>
struct EnumNames<registry::DateMakeOa> {
    using E = registry::DateMakeOa;
    static constexpr std::array<std::pair<E, std::string_view>, 8> values{{
        {E::AcceptanceDate, "acceptance_date"},
        {E::PublicationDate, "publication_date"},
        {E::EndOfPolicyEmbargo, "end_of_policy_embargo"},
        {E::WhenPublisherPermits, "when_publisher_permits"},
        {E::UponDeposit, "upon_deposit"},
        {E::NotMentioned, "not_mentioned"},
        {E::Other, "other"},
        {E::NotSpecified, "not_specified"},
    }};
};

template <>
struct EnumNames<registry::ResearchEvaluation> {
    using E = registry::ResearchEvaluation;
    static constexpr std::array<std::pair<E, std::string_view>, 3> values{{
        {E::Yes, "yes"},
        {E::No, "no"},
        {E::NotSpecified, "not_specified"},
    }};
};

template <>
struct EnumNames<registry::OpenLicensing> {
    using E = registry::OpenLicensing;
    static constexpr std::array<std::pair<E, std::string_view>, 7> values{{
        {E::NoReuseLicenceRequired, "no_reuse_licence_required"},
        {E::OpenLicenceUnspecified, "open_licence_unspecified"},
        {E::CcBy, "cc_by"},
        {E::CcByNc, "cc_by_nc"},
        {E::DifferentOpenLicence, "different_open_licence"},
        {E::Other, "other"},
        {E::NotSpecified, "not_specified"},
    }};
};

template <>
struct EnumNames<registry::RightsHolding> {
    using E = registry::RightsHolding;
    static constexpr std::array<std::pair<E, std::string_view>, 6> values{{
        {E::AuthorGrantsToInstitution, "author_grants_to_institution"},
        {E::InstitutionOrFunderRetains, "institution_or_funder_retains"},
        {E::AuthorRetains, "author_retains"},
        {E::NoneOfThese, "none_of_these"},
        {E::NotMentioned, "not_mentioned"},
        {E::NotSpecified, "not_specified"},
    }};
};

template <>
struct EnumNames<registry::Embargo> {
    using E = registry::Embargo;
    static constexpr std::array<std::pair<E, std::string_view>, 6> values{{
        {E::Zero, "zero"},
        {E::Six, "six"},
        {E::Twelve, "twelve"},
        {E::TwentyFour, "twenty_four"},
        {E::Longer, "longer"},
        {E::NotSpecified, "not_specified"},
    }};
};

template <>
struct EnumNames<registry::GoldOption> {
    using E = registry::GoldOption;
    static constexpr std::array<std::pair<E, std::string_view>, 5> values{{
        {E::Required, "required"},
        {E::RecommendedAlternative, "recommended_alternative"},
        {E::PermittedAlternative, "permitted_alternative"},
        {E::NotSpecified, "not_specified"},
        {E::Other, "other"},
    }};
};

template <>
struct EnumNames<registry::ApcFunding> {
    using E = registry::ApcFunding;
    static constexpr std::array<std::pair<E, std::string_view>, 5> values{{
        {E::FromGrant, "from_grant"},
        {E::SpecificFund, "specific_fund"},
        {E::InstitutionFunds, "institution_funds"},
        {E::NotMentioned, "not_mentioned"},
        {E::Other, "other"},
    }};
};

}  // namespace oapl
