#include "oapl/registry/registry.hpp"

#include <functional>
#include <set>

#include <json.hpp>

#include "oapl/common/error.hpp"

namespace oapl::registry {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct FieldCodec {
    std::string_view name;
    bool required;
    std::function<void(PolicyRecord&, const json&)> read;
    std::function<void(const PolicyRecord&, ordered_json&)> write;
};

std::string describe(const PolicyRecord& r, std::string_view field) {
    return "record '" + r.id + "', field '" + std::string(field) + "'";
}

std::string expect_string(const PolicyRecord& r, std::string_view field, const json& v) {
    if (!v.is_string()) throw InputError(describe(r, field) + ": expected a string, got " + v.dump());
    return v.get<std::string>();
}

template <typename E>
FieldCodec enum_field(std::string_view name, E PolicyRecord::*member) {
    return FieldCodec{
        name, true,
        [name, member](PolicyRecord& r, const json& v) {
            auto text = expect_string(r, name, v);
            auto parsed = parse_enum<E>(text);
            if (!parsed) throw InputError(describe(r, name) + ": unknown value '" + text + "'");
            r.*member = *parsed;
        },
        [name, member](const PolicyRecord& r, ordered_json& out) {
            out[std::string(name)] = std::string(to_string(r.*member));
        }};
}

FieldCodec string_field(std::string_view name, std::string PolicyRecord::*member) {
    return FieldCodec{
        name, true,
        [name, member](PolicyRecord& r, const json& v) { r.*member = expect_string(r, name, v); },
        [name, member](const PolicyRecord& r, ordered_json& out) { out[std::string(name)] = r.*member; }};
}

FieldCodec optional_string_field(std::string_view name, std::optional<std::string> PolicyRecord::*member) {
    return FieldCodec{
        name, false,
        [name, member](PolicyRecord& r, const json& v) {
            if (v.is_null()) {
                (r.*member).reset();
            } else {
                r.*member = expect_string(r, name, v);
            }
        },
        [name, member](const PolicyRecord& r, ordered_json& out) {
            if (r.*member) out[std::string(name)] = *(r.*member);
        }};
}

FieldCodec date_field(std::string_view name, std::optional<PartialDate> PolicyRecord::*member) {
    return FieldCodec{
        name, false,
        [name, member](PolicyRecord& r, const json& v) {
            if (v.is_null()) {
                (r.*member).reset();
                return;
            }
            auto text = expect_string(r, name, v);
            try {
                r.*member = parse_partial_date(text);
            } catch (const InputError& e) {
                throw InputError(describe(r, name) + ": " + e.what());
            }
        },
        [name, member](const PolicyRecord& r, ordered_json& out) {
            if (r.*member) out[std::string(name)] = format_partial_date(*(r.*member));
        }};
}

const std::vector<FieldCodec>& codecs() {
    static const std::vector<FieldCodec> fields = {
        string_field("id", &PolicyRecord::id),
        string_field("policymaker_name", &PolicyRecord::policymaker_name),
        optional_string_field("policymaker_url", &PolicyRecord::policymaker_url),
        optional_string_field("policy_url", &PolicyRecord::policy_url),
        optional_string_field("repository_url", &PolicyRecord::repository_url),
        enum_field("region", &PolicyRecord::region),
        string_field("country", &PolicyRecord::country),
        enum_field("policymaker_type", &PolicyRecord::policymaker_type),
        enum_field("source_of_policy", &PolicyRecord::source_of_policy),
        date_field("adoption_date", &PolicyRecord::adoption_date),
        date_field("effective_date", &PolicyRecord::effective_date),
        date_field("last_revision_date", &PolicyRecord::last_revision_date),
        enum_field("deposit_of_item", &PolicyRecord::deposit_of_item),
        enum_field("locus_of_deposit", &PolicyRecord::locus_of_deposit),
        enum_field("date_of_deposit", &PolicyRecord::date_of_deposit),
        enum_field("deposit_waivable", &PolicyRecord::deposit_waivable),
        enum_field("make_item_oa", &PolicyRecord::make_item_oa),
        enum_field("oa_waivable", &PolicyRecord::oa_waivable),
        enum_field("date_make_oa", &PolicyRecord::date_make_oa),
        enum_field("research_evaluation_condition", &PolicyRecord::research_evaluation_condition),
        enum_field("rights_retention_waivable", &PolicyRecord::rights_retention_waivable),
        enum_field("open_licensing", &PolicyRecord::open_licensing),
        enum_field("rights_holding", &PolicyRecord::rights_holding),
        enum_field("rights_grant_waivable", &PolicyRecord::rights_grant_waivable),
        enum_field("embargo_stem", &PolicyRecord::embargo_stem),
        enum_field("embargo_hass", &PolicyRecord::embargo_hass),
        enum_field("embargo_waivable", &PolicyRecord::embargo_waivable),
        enum_field("gold_option", &PolicyRecord::gold_option),
        enum_field("apc_funding", &PolicyRecord::apc_funding),
        optional_string_field("apc_fund_url", &PolicyRecord::apc_fund_url),
    };
    return fields;
}

PolicyRecord parse_record(const json& obj, std::size_t index) {
    PolicyRecord r;
    if (!obj.is_object()) throw InputError("records[" + std::to_string(index) + "] is not an object");
    if (auto it = obj.find("id"); it != obj.end() && it->is_string()) {
        r.id = it->get<std::string>();
    } else {
        throw InputError("records[" + std::to_string(index) + "]: missing string field 'id'");
    }

    const auto& fields = codecs();
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const auto& f : fields) known = known || f.name == key;
        if (!known) throw InputError(describe(r, key) + ": unknown key");
    }
    for (const auto& f : fields) {
        auto it = obj.find(std::string(f.name));
        if (it == obj.end()) {
            if (f.required) throw InputError(describe(r, f.name) + ": missing");
            continue;
        }
        f.read(r, *it);
    }
    return r;
}

bool rights_arrangement(RightsHolding h) {
    return h == RightsHolding::AuthorGrantsToInstitution || h == RightsHolding::InstitutionOrFunderRetains ||
           h == RightsHolding::AuthorRetains;
}

}  // namespace

const PolicyRecord* RegistrySnapshot::find(std::string_view id) const {
    for (const auto& r : records) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

bool is_mandate(const PolicyRecord& record) {
    return record.deposit_of_item == DepositOfItem::Required || record.gold_option == GoldOption::Required;
}

double mandate_age(const PolicyRecord& record, const Date& reference) {
    if (!record.adoption_date) throw InputError("record '" + record.id + "': adoption_date missing");
    auto days = days_between(record.adoption_date->date, reference);
    if (days < 0) {
        throw InputError("record '" + record.id + "': reference date " + format_date(reference) +
                         " precedes adoption " + format_date(record.adoption_date->date));
    }
    return static_cast<double>(days) / 365.25;
}

RegistrySnapshot parse_registry(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed registry JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("registry document must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key != "snapshot_date" && key != "records") throw InputError("registry: unknown top-level key '" + key + "'");
    }
    auto date_it = doc.find("snapshot_date");
    if (date_it == doc.end() || !date_it->is_string()) throw InputError("registry: missing string 'snapshot_date'");
    auto recs_it = doc.find("records");
    if (recs_it == doc.end() || !recs_it->is_array()) throw InputError("registry: missing array 'records'");

    RegistrySnapshot snap;
    snap.snapshot_date = parse_date(date_it->get<std::string>());
    std::set<std::string> seen;
    std::size_t index = 0;
    for (const auto& obj : *recs_it) {
        auto rec = parse_record(obj, index++);
        if (!seen.insert(rec.id).second) throw InputError("duplicate record id '" + rec.id + "'");
        snap.records.push_back(std::move(rec));
    }
    return snap;
}

std::string serialize_registry(const RegistrySnapshot& snapshot) {
    ordered_json doc;
    doc["snapshot_date"] = format_date(snapshot.snapshot_date);
    auto records = ordered_json::array();
    for (const auto& r : snapshot.records) {
        ordered_json obj = ordered_json::object();
        for (const auto& f : codecs()) f.write(r, obj);
        records.push_back(std::move(obj));
    }
    doc["records"] = std::move(records);
    return doc.dump(2) + "\n";
}

std::vector<Violation> validate_policy(const PolicyRecord& r) {
    std::vector<Violation> out;
    auto add = [&](std::string field, std::string rule, std::string message) {
        out.push_back({r.id, std::move(field), std::move(rule), std::move(message)});
    };

    if (r.deposit_of_item != DepositOfItem::Required && r.deposit_waivable != Waivable::NotApplicable) {
        add("deposit_waivable", "V1",
            "deposit is " + std::string(to_string(r.deposit_of_item)) + " but deposit_waivable is " +
                std::string(to_string(r.deposit_waivable)) + " (expected not_applicable)");
    }
    bool oa_active =
        r.make_item_oa == MakeItemOa::Required || r.make_item_oa == MakeItemOa::RequestedOrRecommended;
    if (!oa_active && r.oa_waivable != Waivable::NotApplicable) {
        add("oa_waivable", "V2",
            "make_item_oa is " + std::string(to_string(r.make_item_oa)) + " but oa_waivable is " +
                std::string(to_string(r.oa_waivable)) + " (expected not_applicable)");
    }
    if (!rights_arrangement(r.rights_holding) && r.rights_retention_waivable != Waivable::NotApplicable) {
        add("rights_retention_waivable", "V3",
            "rights_holding is " + std::string(to_string(r.rights_holding)) + " but rights_retention_waivable is " +
                std::string(to_string(r.rights_retention_waivable)) + " (expected not_applicable)");
    }
    bool embargo_set = r.embargo_stem != Embargo::NotSpecified || r.embargo_hass != Embargo::NotSpecified;
    if (!embargo_set && r.embargo_waivable != Waivable::NotApplicable) {
        add("embargo_waivable", "V4",
            "no embargo length specified but embargo_waivable is " + std::string(to_string(r.embargo_waivable)) +
                " (expected not_applicable)");
    }

    struct Named {
        std::string_view name;
        const std::optional<PartialDate>* date;
    };
    const Named dates[] = {{"adoption_date", &r.adoption_date},
                           {"effective_date", &r.effective_date},
                           {"last_revision_date", &r.last_revision_date}};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            const auto& a = *dates[i].date;
            const auto& b = *dates[j].date;
            if (a && b && std::chrono::sys_days{b->date} < std::chrono::sys_days{a->date}) {
                add(std::string(dates[j].name), "D1",
                    std::string(dates[i].name) + " " + format_partial_date(*a) + " is after " +
                        std::string(dates[j].name) + " " + format_partial_date(*b));
            }
        }
    }
    return out;
}

std::vector<Violation> validate_snapshot(const RegistrySnapshot& snapshot) {
    std::vector<Violation> out;
    for (const auto& r : snapshot.records) {
        auto v = validate_policy(r);
        out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    }
    return out;
}

}  // namespace oapl::registry
