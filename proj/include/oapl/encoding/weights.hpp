#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oapl/common/date.hpp"
#include "oapl/common/error.hpp"
#include "oapl/common/enum_names.hpp"
#include "oapl/registry/policy.hpp"

namespace oapl::encoding {

// The thirteen weighted policy conditions plus the continuous mandate-age covariate.
enum class ConditionId {
    ResearchEvaluation,
    MustDeposit,
    MustMakeOA,
    CannotWaiveDeposit,
    CannotWaiveOA,
    CannotWaiveRightsRetention,
    DepositImmediately,
    MakeOAImmediately,
    EmbargoSTEM,
    EmbargoHaSS,
    DepositInIR,
    MustRetainRights,
    OpenLicensing,
    MandateAge,
};

inline constexpr std::size_t kWeightedConditions = 13;

constexpr bool is_continuous(ConditionId c) { return c == ConditionId::MandateAge; }

// The thirteen weighted conditions in declaration order.
const std::vector<ConditionId>& weighted_conditions();

enum class Scheme { I, II };

// Raised for a (condition, option) pair that has no weight.
class WeightLookupError : public InputError {
public:
    WeightLookupError(ConditionId condition, std::string option);
    ConditionId condition() const { return condition_; }
    const std::string& option() const { return option_; }

private:
    ConditionId condition_;
    std::string option_;
};

class OptionWeightTable {
public:
    OptionWeightTable(Scheme scheme, std::map<std::pair<ConditionId, std::string>, double> weights);

    Scheme scheme() const { return scheme_; }

    // `option` is the wire name of the record field's enum value.
    double weight(ConditionId condition, std::string_view option) const;
    bool contains(ConditionId condition, std::string_view option) const;

    const std::map<std::pair<ConditionId, std::string>, double>& entries() const { return weights_; }

private:
    Scheme scheme_;
    std::map<std::pair<ConditionId, std::string>, double> weights_;
};

struct BuiltinTables {
    OptionWeightTable scheme_i;
    OptionWeightTable scheme_ii;
};

const BuiltinTables& builtin_weight_tables();
const OptionWeightTable& builtin_table(Scheme scheme);

// Wire name of the option a record holds for `condition` (the field that
// feeds it, after aliasing twenty_four-month embargoes to "longer").
std::string option_of(const registry::PolicyRecord& record, ConditionId condition);

struct EncodedPolicy {
    std::array<double, kWeightedConditions> weights{};
    std::optional<double> mandate_age;  // absent without an adoption date

    std::optional<double> value(ConditionId c) const;
};

EncodedPolicy encode_policy(const registry::PolicyRecord& record, Scheme scheme, const Date& reference);

}  // namespace oapl::encoding

namespace oapl {

template <>
struct EnumNames<encoding::ConditionId> {
    using E = encoding::ConditionId;
    static constexpr std::array<std::pair<E, std::string_view>, 14> values{{
        {E::ResearchEvaluation, "research_evaluation"},
        {E::MustDeposit, "must_deposit"},
        {E::MustMakeOA, "must_make_oa"},
        {E::CannotWaiveDeposit, "cannot_waive_deposit"},
        {E::CannotWaiveOA, "cannot_waive_oa"},
        {E::CannotWaiveRightsRetention, "cannot_waive_rights_retention"},
        {E::DepositImmediately, "deposit_immediately"},
        {E::MakeOAImmediately, "make_oa_immediately"},
        {E::EmbargoSTEM, "embargo_stem"},
        {E::EmbargoHaSS, "embargo_hass"},
        {E::DepositInIR, "deposit_in_ir"},
        {E::MustRetainRights, "must_retain_rights"},
        {E::OpenLicensing, "open_licensing"},
        {E::MandateAge, "mandate_age"},
    }};
};

template <>
struct EnumNames<encoding::Scheme> {
    using E = encoding::Scheme;
    static constexpr std::array<std::pair<E, std::string_view>, 2> values{{
        {E::I, "I"},
        {E::II, "II"},
    }};
};

}  // namespace oapl
