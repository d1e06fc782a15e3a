#include "oapl/encoding/weights.hpp"

#include "oapl/common/error.hpp"

namespace oapl::encoding {
namespace {

using registry::PolicyRecord;

struct Row {
    ConditionId condition;
    const char* option;
    double weight_i;
    double weight_ii;
};

// Option weights per condition, percentages stored as fractions.
constexpr Row kTable[] = {
    {ConditionId::ResearchEvaluation, "yes", 1.00, 1.00},
    {ConditionId::ResearchEvaluation, "not_specified", 0.00, 0.00},
    {ConditionId::ResearchEvaluation, "no", 0.00, 0.00},

    {ConditionId::MustDeposit, "required", 1.00, 1.00},
    {ConditionId::MustDeposit, "requested", 0.10, 0.00},
    {ConditionId::MustDeposit, "unspecified", 0.00, 0.00},

    {ConditionId::MustMakeOA, "required", 1.00, 1.00},
    {ConditionId::MustMakeOA, "requested_or_recommended", 0.10, 0.00},
    {ConditionId::MustMakeOA, "not_mentioned", 0.00, 0.00},
    {ConditionId::MustMakeOA, "other", 0.00, 0.00},

    {ConditionId::CannotWaiveDeposit, "no", 1.00, 1.00},
    {ConditionId::CannotWaiveDeposit, "not_specified", 0.10, 0.00},
    {ConditionId::CannotWaiveDeposit, "yes", 0.00, 0.00},
    {ConditionId::CannotWaiveDeposit, "not_applicable", 0.50, 0.00},

    {ConditionId::CannotWaiveOA, "no", 1.00, 1.00},
    {ConditionId::CannotWaiveOA, "not_specified", 0.10, 0.00},
    {ConditionId::CannotWaiveOA, "yes", 0.00, 0.00},

    {ConditionId::CannotWaiveRightsRetention, "not_applicable", 1.00, 1.00},
    {ConditionId::CannotWaiveRightsRetention, "no", 1.00, 1.00},
    {ConditionId::CannotWaiveRightsRetention, "yes", 0.00, 0.00},
    {ConditionId::CannotWaiveRightsRetention, "not_specified", 0.10, 0.00},

    {ConditionId::DepositImmediately, "at_acceptance", 1.00, 1.00},
    {ConditionId::DepositImmediately, "at_publication", 0.20, 0.00},
    {ConditionId::DepositImmediately, "end_of_policy_embargo", 0.10, 0.00},
    {ConditionId::DepositImmediately, "when_publisher_permits", 0.05, 0.00},
    {ConditionId::DepositImmediately, "not_specified", 0.00, 0.00},
    {ConditionId::DepositImmediately, "other", 0.00, 0.00},

    {ConditionId::MakeOAImmediately, "acceptance_date", 1.00, 1.00},
    {ConditionId::MakeOAImmediately, "publication_date", 0.75, 1.00},
    {ConditionId::MakeOAImmediately, "end_of_policy_embargo", 0.50, 0.00},
    {ConditionId::MakeOAImmediately, "upon_deposit", 0.05, 0.00},
    {ConditionId::MakeOAImmediately, "when_publisher_permits", 0.05, 0.00},
    {ConditionId::MakeOAImmediately, "not_mentioned", 0.00, 0.00},
    {ConditionId::MakeOAImmediately, "other", 0.00, 0.00},

    {ConditionId::EmbargoSTEM, "not_specified", 1.00, 1.00},
    {ConditionId::EmbargoSTEM, "zero", 1.00, 1.00},
    {ConditionId::EmbargoSTEM, "six", 0.50, 0.50},
    {ConditionId::EmbargoSTEM, "twelve", 0.05, 0.05},
    {ConditionId::EmbargoSTEM, "longer", 0.00, 0.00},

    // No "longer" row exists for HaSS.
    {ConditionId::EmbargoHaSS, "not_specified", 1.00, 1.00},
    {ConditionId::EmbargoHaSS, "zero", 1.00, 1.00},
    {ConditionId::EmbargoHaSS, "six", 0.50, 0.50},
    {ConditionId::EmbargoHaSS, "twelve", 0.50, 0.50},

    {ConditionId::DepositInIR, "institutional_repository", 1.00, 1.00},
    {ConditionId::DepositInIR, "any_suitable", 0.00, 0.00},
    {ConditionId::DepositInIR, "not_specified", 0.00, 0.00},

    {ConditionId::MustRetainRights, "author_retains", 1.00, 1.00},
    {ConditionId::MustRetainRights, "author_grants_to_institution", 1.00, 1.00},
    {ConditionId::MustRetainRights, "institution_or_funder_retains", 1.00, 1.00},
    {ConditionId::MustRetainRights, "none_of_these", 0.00, 0.00},
    {ConditionId::MustRetainRights, "not_mentioned", 0.00, 0.00},

    {ConditionId::OpenLicensing, "no_reuse_licence_required", 1.00, 1.00},
    {ConditionId::OpenLicensing, "other", 0.50, 0.50},
    {ConditionId::OpenLicensing, "not_specified", 0.50, 0.50},
    {ConditionId::OpenLicensing, "cc_by", 0.00, 0.00},
    {ConditionId::OpenLicensing, "cc_by_nc", 0.00, 0.00},
    {ConditionId::OpenLicensing, "open_licence_unspecified", 0.00, 0.00},
};

BuiltinTables make_tables() {
    std::map<std::pair<ConditionId, std::string>, double> one, two;
    for (const auto& row : kTable) {
        one.emplace(std::make_pair(row.condition, std::string(row.option)), row.weight_i);
        two.emplace(std::make_pair(row.condition, std::string(row.option)), row.weight_ii);
    }
    return BuiltinTables{OptionWeightTable(Scheme::I, std::move(one)), OptionWeightTable(Scheme::II, std::move(two))};
}

std::string embargo_option(registry::Embargo e) {
    if (e == registry::Embargo::TwentyFour) return "longer";
    return std::string(to_string(e));
}

}  // namespace

const std::vector<ConditionId>& weighted_conditions() {
    static const std::vector<ConditionId> all = [] {
        std::vector<ConditionId> v;
        for (auto c : enum_values<ConditionId>()) {
            if (!is_continuous(c)) v.push_back(c);
        }
        return v;
    }();
    return all;
}

WeightLookupError::WeightLookupError(ConditionId condition, std::string option)
    : InputError("no weight for option '" + option + "' under condition '" +
                         std::string(to_string(condition)) + "'"),
      condition_(condition),
      option_(std::move(option)) {}

OptionWeightTable::OptionWeightTable(Scheme scheme, std::map<std::pair<ConditionId, std::string>, double> weights)
    : scheme_(scheme), weights_(std::move(weights)) {}

double OptionWeightTable::weight(ConditionId condition, std::string_view option) const {
    if (is_continuous(condition)) {
        throw std::invalid_argument("mandate_age is continuous and has no option weights");
    }
    auto it = weights_.find({condition, std::string(option)});
    if (it == weights_.end()) throw WeightLookupError(condition, std::string(option));
    return it->second;
}

bool OptionWeightTable::contains(ConditionId condition, std::string_view option) const {
    return weights_.count({condition, std::string(option)}) > 0;
}

const BuiltinTables& builtin_weight_tables() {
    static const BuiltinTables tables = make_tables();
    return tables;
}

const OptionWeightTable& builtin_table(Scheme scheme) {
    return scheme == Scheme::I ? builtin_weight_tables().scheme_i : builtin_weight_tables().scheme_ii;
}

std::string option_of(const PolicyRecord& r, ConditionId condition) {
    switch (condition) {
        case ConditionId::ResearchEvaluation: return std::string(to_string(r.research_evaluation_condition));
        case ConditionId::MustDeposit: return std::string(to_string(r.deposit_of_item));
        case ConditionId::MustMakeOA: return std::string(to_string(r.make_item_oa));
        case ConditionId::CannotWaiveDeposit: return std::string(to_string(r.deposit_waivable));
        case ConditionId::CannotWaiveOA: return std::string(to_string(r.oa_waivable));
        case ConditionId::CannotWaiveRightsRetention: return std::string(to_string(r.rights_retention_waivable));
        case ConditionId::DepositImmediately: return std::string(to_string(r.date_of_deposit));
        case ConditionId::MakeOAImmediately: return std::string(to_string(r.date_make_oa));
        case ConditionId::EmbargoSTEM: return embargo_option(r.embargo_stem);
        case ConditionId::EmbargoHaSS: return embargo_option(r.embargo_hass);
        case ConditionId::DepositInIR: return std::string(to_string(r.locus_of_deposit));
        case ConditionId::MustRetainRights: return std::string(to_string(r.rights_holding));
        case ConditionId::OpenLicensing: return std::string(to_string(r.open_licensing));
        case ConditionId::MandateAge: break;
    }
    throw std::invalid_argument("mandate_age has no categorical option");
}

std::optional<double> EncodedPolicy::value(ConditionId c) const {
    if (is_continuous(c)) return mandate_age;
    return weights[static_cast<std::size_t>(c)];
}

EncodedPolicy encode_policy(const PolicyRecord& record, Scheme scheme, const Date& reference) {
    const auto& table = builtin_table(scheme);
    EncodedPolicy out;
    for (auto c : weighted_conditions()) {
        out.weights[static_cast<std::size_t>(c)] = table.weight(c, option_of(record, c));
    }
    if (record.adoption_date) out.mandate_age = registry::mandate_age(record, reference);
    return out;
}

}  // namespace oapl::encoding
