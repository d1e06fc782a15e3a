#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "oapl/registry/policy.hpp"

namespace oapl::registry {

// Parses a registry document: {"snapshot_date": "YYYY-MM-DD", "records": [...]}.
// Unknown keys, unknown enum values and duplicate ids raise InputError; the
// message names the record id, the field and the offending value.
RegistrySnapshot parse_registry(std::string_view json_text);

// Canonical JSON: fixed key order, absent optionals omitted, two-space indent.
std::string serialize_registry(const RegistrySnapshot& snapshot);

struct Violation {
    std::string record_id;
    std::string field;
    std::string rule;
    std::string message;
};

// Contradiction rules:
//   V1 deposit_waivable must be not_applicable unless deposit is required.
//   V2 oa_waivable must be not_applicable unless making the item OA is
//      required or requested.
//   V3 rights_retention_waivable must be not_applicable unless the policy
//      rests on a rights-holding arrangement.
//   V4 embargo_waivable must be not_applicable unless an embargo length is set.
//   D1 adoption <= effective <= last revision, checked per pair present.
std::vector<Violation> validate_policy(const PolicyRecord& record);

std::vector<Violation> validate_snapshot(const RegistrySnapshot& snapshot);

}  // namespace oapl::registry
