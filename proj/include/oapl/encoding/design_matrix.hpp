#pragma once

#include <string>
#include <vector>

#include "oapl/encoding/weights.hpp"
#include "oapl/registry/policy.hpp"

namespace oapl::encoding {

// Row-major numeric encoding of institutions' policies. Weighted columns lie
// in [0,1]; a mandate_age column holds years.
class DesignMatrix {
public:
    DesignMatrix(Scheme scheme, std::vector<std::string> rows, std::vector<ConditionId> columns,
                 std::vector<double> values);

    Scheme scheme() const { return scheme_; }
    const std::vector<std::string>& rows() const { return rows_; }
    const std::vector<ConditionId>& columns() const { return columns_; }
    std::size_t row_count() const { return rows_.size(); }
    std::size_t column_count() const { return columns_.size(); }

    double at(std::size_t row, std::size_t col) const { return values_[row * columns_.size() + col]; }
    std::vector<double> column(std::size_t col) const;

    // CSV with header institution_id,<condition>... and 4-decimal values.
    std::string to_csv() const;

private:
    Scheme scheme_;
    std::vector<std::string> rows_;
    std::vector<ConditionId> columns_;
    std::vector<double> values_;
};

// One row per institution (matched against PolicyRecord::id), columns in the
// order given. Throws InputError for an empty column set, an unresolved or
// repeated institution, or a mandate_age column on a record without adoption date.
DesignMatrix build_design_matrix(const registry::RegistrySnapshot& snapshot,
                                 const std::vector<std::string>& institutions, Scheme scheme,
                                 const std::vector<ConditionId>& conditions, const Date& reference);

}  // namespace oapl::encoding
