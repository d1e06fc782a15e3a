#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oapl/common/error.hpp"
#include "oapl/encoding/design_matrix.hpp"

namespace oapl::stats {

struct NbrOptions {
    std::optional<double> fixed_alpha;  // 0 gives a Poisson fit
    int max_iterations = 100;
    double alpha_init = 1.0;
    double alpha_min = 1e-8;
    double alpha_max = 1e4;
    double ll_tol = 1e-10;
    double grad_tol = 1e-8;
    bool drop_collinear = false;  // otherwise a rank-deficient design throws
};

enum class CoefficientFlag { None, NearZero, Collinear };

struct NbrCoefficient {
    std::string name;
    double beta = 0.0;
    double se = 0.0;
    double z = 0.0;
    double p = 1.0;  // two-tailed Wald
    double exp_beta = 1.0;
    CoefficientFlag flag = CoefficientFlag::None;  // estimates are NaN when flagged

    bool estimated() const { return flag == CoefficientFlag::None; }
};

struct NbrFit {
    std::vector<NbrCoefficient> coefficients;  // design column order
    double alpha = 0.0;
    double log_likelihood = 0.0;
    bool converged = false;
    int iterations = 0;
    double gradient_norm = 0.0;
    std::size_t n = 0;
    std::vector<double> ll_trace;  // starting value, then one entry per outer iteration

    bool advisory() const { return !converged; }
    const NbrCoefficient* find(std::string_view name) const;
};

class RankDeficientError : public InputError {
public:
    RankDeficientError(const std::string& message, std::vector<std::string> columns)
        : InputError(message), columns_(std::move(columns)) {}
    const std::vector<std::string>& columns() const { return columns_; }

private:
    std::vector<std::string> columns_;
};

// NB2 regression (Var = mu + alpha mu^2) with log link:
// log mu = X beta + offset. X carries its own intercept column if wanted.
// Columns that cannot be estimated because they are all zero, or because
// the response is zero wherever they are positive (or wherever a [0,1]
// column is below 1), are flagged NearZero and left out of the fit.
NbrFit fit_nb2(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& offset,
               const std::vector<std::string>& names, const NbrOptions& options = {});

// Adds an intercept to the design; offset = log(exposure) unless exposure is empty.
NbrFit fit_nbr(const encoding::DesignMatrix& design, std::span<const double> counts,
               std::span<const double> exposure, const NbrOptions& options = {});

// NB2 log-likelihood of a single observation (alpha = 0 gives Poisson).
double nb2_log_density(double y, double mu, double alpha);

// Indices of columns dropped by a left-to-right greedy rank scan.
std::vector<std::size_t> collinear_columns(const Eigen::MatrixXd& X);

}  // namespace oapl::stats
