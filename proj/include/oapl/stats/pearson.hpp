#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "oapl/common/error.hpp"
#include "oapl/encoding/weights.hpp"

namespace oapl::stats {

struct CorrelationResult {
    encoding::ConditionId condition = encoding::ConditionId::ResearchEvaluation;
    double r = 0.0;
    double p = 1.0;  // two-tailed
    std::size_t n = 0;
};

// One of the inputs is constant, so r is undefined.
class ZeroVarianceError : public InputError {
public:
    using InputError::InputError;
};

// Product-moment r with a two-tailed t test on n-2 degrees of freedom.
// Throws InputError on a length mismatch or n < 3, ZeroVarianceError when
// either vector is constant.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

struct ScreeningResult {
    std::vector<CorrelationResult> retained;    // |r| >= threshold
    std::vector<CorrelationResult> eliminated;
};

// Input order is kept within each list.
ScreeningResult screen_conditions(const std::vector<CorrelationResult>& results, double threshold = 0.1);

}  // namespace oapl::stats
