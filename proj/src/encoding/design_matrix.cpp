#include "oapl/encoding/design_matrix.hpp"

#include <cstdio>
#include <set>
#include <stdexcept>

#include "oapl/common/csv.hpp"
#include "oapl/common/error.hpp"

namespace oapl::encoding {

DesignMatrix::DesignMatrix(Scheme scheme, std::vector<std::string> rows, std::vector<ConditionId> columns,
                           std::vector<double> values)
    : scheme_(scheme), rows_(std::move(rows)), columns_(std::move(columns)), values_(std::move(values)) {
    if (values_.size() != rows_.size() * columns_.size()) {
        throw std::invalid_argument("design matrix value count does not match its shape");
    }
}

std::vector<double> DesignMatrix::column(std::size_t col) const {
    std::vector<double> out(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) out[r] = at(r, col);
    return out;
}

std::string DesignMatrix::to_csv() const {
    std::vector<std::string> header{"institution_id"};
    for (auto c : columns_) header.emplace_back(to_string(c));
    std::string out = csv::join(header) + "\n";
    char buf[64];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        out += csv::escape(rows_[r]);
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            std::snprintf(buf, sizeof buf, ",%.4f", at(r, c));
            out += buf;
        }
        out += "\n";
    }
    return out;
}

DesignMatrix build_design_matrix(const registry::RegistrySnapshot& snapshot,
                                 const std::vector<std::string>& institutions, Scheme scheme,
                                 const std::vector<ConditionId>& conditions, const Date& reference) {
    if (conditions.empty()) throw InputError("design matrix needs at least one condition");
    std::set<ConditionId> distinct(conditions.begin(), conditions.end());
    if (distinct.size() != conditions.size()) throw InputError("design matrix condition list has duplicates");

    std::set<std::string> seen;
    std::vector<double> values;
    values.reserve(institutions.size() * conditions.size());
    for (const auto& inst : institutions) {
        if (!seen.insert(inst).second) throw InputError("institution '" + inst + "' listed more than once");
        const auto* record = snapshot.find(inst);
        if (!record) throw InputError("no policy record for institution '" + inst + "'");
        const auto& table = builtin_table(scheme);
        for (auto c : conditions) {
            if (!is_continuous(c)) {
                try {
                    values.push_back(table.weight(c, option_of(*record, c)));
                } catch (const WeightLookupError& e) {
                    throw InputError("record '" + inst + "': " + e.what());
                }
            } else if (record->adoption_date) {
                values.push_back(registry::mandate_age(*record, reference));
            } else {
                throw InputError("record '" + inst + "': mandate_age requires an adoption_date");
            }
        }
    }
    return DesignMatrix(scheme, institutions, conditions, std::move(values));
}

}  // namespace oapl::encoding
