#include "oapl/stats/nbr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/digamma.hpp>

#include "oapl/stats/special.hpp"

namespace oapl::stats {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Above this count the sum over k < y switches to gamma-function identities.
constexpr double kFiniteSumLimit = 2000.0;

using Real = long double;

// sum_{k<y} log(1 + k a)
Real log_rising(Real y, Real a) {
    if (y <= kFiniteSumLimit) {
        Real s = 0.0L;
        for (Real k = 1.0L; k < y; k += 1.0L) s += std::log1p(k * a);
        return s;
    }
    return y * std::log(a) + std::lgamma(y + 1.0L / a) - std::lgamma(1.0L / a);
}

Real row_loglik(Real y, Real mu, Real a) {
    const Real y_log_mu = y > 0.0L ? y * std::log(mu) : 0.0L;
    if (a <= 0.0L) return y_log_mu - mu - std::lgamma(y + 1.0L);
    return log_rising(y, a) - std::lgamma(y + 1.0L) + y_log_mu - (y + 1.0L / a) * std::log1p(a * mu);
}

// sum_{k<y} k a / (1 + k a)
double rising_score(double y, double a) {
    if (y <= kFiniteSumLimit) {
        double s = 0.0;
        for (double k = 1.0; k < y; k += 1.0) s += k * a / (1.0 + k * a);
        return s;
    }
    using boost::math::digamma;
    return y - (digamma(y + 1.0 / a) - digamma(1.0 / a)) / a;
}

struct Model {
    const MatrixXd& X;
    const VectorXd& y;
    const VectorXd& offset;

    VectorXd mean(const VectorXd& beta) const { return (X * beta + offset).array().exp().matrix(); }

    Real loglik(const VectorXd& mu, double a) const {
        Real ll = 0.0L;
        for (Eigen::Index i = 0; i < y.size(); ++i) ll += row_loglik(y[i], mu[i], a);
        return ll;
    }

    VectorXd beta_gradient(const VectorXd& mu, double a) const {
        VectorXd r = (y - mu).array() / (1.0 + a * mu.array());
        return X.transpose() * r;
    }

    MatrixXd beta_information(const VectorXd& mu, double a) const {
        VectorXd w = mu.array() * (1.0 + a * y.array()) / (1.0 + a * mu.array()).square();
        return X.transpose() * w.asDiagonal() * X;
    }

    // ll(beta + step) - ll(beta) from the change in the linear predictor,
    // evaluated row by row without cancellation against the full likelihood.
    Real beta_change(const VectorXd& mu, const VectorXd& delta_eta, double a) const {
        Real total = 0.0L;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const Real d = delta_eta[i];
            const Real em1 = std::expm1(d);
            if (a <= 0.0) {
                total += y[i] * d - mu[i] * em1;
            } else {
                const Real am = static_cast<Real>(a) * mu[i];
                total += y[i] * d - (y[i] + 1.0L / a) * std::log1p(am * em1 / (1.0L + am));
            }
        }
        return total;
    }

    // ll at alpha = b minus ll at alpha = a, with mu held fixed.
    Real alpha_change(const VectorXd& mu, double a, double b) const {
        const Real ra = a, rb = b, diff = rb - ra;
        Real total = 0.0L;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const Real yi = y[i];
            Real rising = 0.0L;
            if (yi <= kFiniteSumLimit) {
                for (Real k = 1.0L; k < yi; k += 1.0L) rising += std::log1p(k * diff / (1.0L + k * ra));
            } else {
                rising = log_rising(yi, rb) - log_rising(yi, ra);
            }
            const Real L = std::log1p(ra * mu[i]);
            const Real D = std::log1p(diff * mu[i] / (1.0L + ra * mu[i]));
            total += rising - yi * D + L * diff / (ra * rb) - D / rb;
        }
        return total;
    }

    // d ll / d log(a)
    double log_alpha_gradient(const VectorXd& mu, double a) const {
        double g = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double am = a * mu[i];
            g += rising_score(y[i], a) + std::log1p(am) / a - mu[i] * (1.0 + a * y[i]) / (1.0 + am);
        }
        return g;
    }
};

// Newton steps on beta at fixed alpha; a step is halved until the
// log-likelihood does not fall.
void optimize_beta(const Model& m, VectorXd& beta, VectorXd& mu, double a, Real& ll, double grad_tol) {
    for (int it = 0; it < 50; ++it) {
        VectorXd g = m.beta_gradient(mu, a);
        if (g.lpNorm<Eigen::Infinity>() < 0.01 * grad_tol) return;
        Eigen::LDLT<MatrixXd> ldlt(m.beta_information(mu, a));
        if (ldlt.info() != Eigen::Success) return;
        VectorXd step = ldlt.solve(g);
        if (!step.allFinite()) return;

        double lambda = 1.0;
        bool moved = false;
        for (int h = 0; h < 40; ++h, lambda *= 0.5) {
            VectorXd cand = beta + lambda * step;
            if (cand == beta) break;
            VectorXd cand_mu = m.mean(cand);
            if (!cand_mu.allFinite()) continue;
            const Real gain = m.beta_change(mu, m.X * (lambda * step), a);
            if (gain >= 0.0L) {
                beta = std::move(cand);
                mu = std::move(cand_mu);
                ll += gain;
                moved = true;
                break;
            }
        }
        if (!moved) return;
    }
}

// One-dimensional maximisation over t = log(alpha): golden section on a
// bracket around the current value, then a Newton polish on the analytic
// score. The result never lowers the log-likelihood.
void optimize_alpha(const Model& m, const VectorXd& mu, double& a, Real& ll, double t_min, double t_max) {
    const double a0 = a;
    auto f = [&](double t) { return m.alpha_change(mu, a0, std::exp(t)); };
    const double t0 = std::log(a0);
    double lo = std::max(t_min, t0 - 4.0);
    double hi = std::min(t_max, t0 + 4.0);

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    Real fc = f(c), fd = f(d);
    while (hi - lo > 1e-7) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    double best_t = t0;
    Real best_gain = 0.0L;
    for (double cand : {c, d, lo, hi}) {
        const Real fe = cand == c ? fc : cand == d ? fd : f(cand);
        if (fe > best_gain) {
            best_gain = fe;
            best_t = cand;
        }
    }

    auto score = [&](double t) { return m.log_alpha_gradient(mu, std::exp(t)); };
    for (int it = 0; it < 20; ++it) {
        const double g = score(best_t);
        if (g == 0.0) break;
        const double h = 1e-5;
        const double curv = (score(best_t + h) - score(best_t - h)) / (2.0 * h);
        if (!(curv < 0.0)) break;
        const double t = std::clamp(best_t - g / curv, t_min, t_max);
        if (t == best_t) break;
        const Real ft = f(t);
        if (!(ft >= best_gain)) break;
        best_t = t;
        best_gain = ft;
    }

    a = std::exp(best_t);
    ll += best_gain;
}

double projected_alpha_gradient(double g, double t, double t_min, double t_max) {
    if (t <= t_min && g < 0.0) return 0.0;
    if (t >= t_max && g > 0.0) return 0.0;
    return g;
}

// Poisson-type starting values: one weighted least-squares step from
// eta = log(y + 0.1), then Poisson Newton iterations.
VectorXd poisson_start(const Model& m, double grad_tol) {
    VectorXd eta = (m.y.array() + 0.1).log().matrix();
    VectorXd w = eta.array().exp().matrix();
    VectorXd z = eta - m.offset;
    MatrixXd xtwx = m.X.transpose() * w.asDiagonal() * m.X;
    VectorXd beta = xtwx.ldlt().solve(m.X.transpose() * w.asDiagonal() * z);
    if (!beta.allFinite()) beta = VectorXd::Zero(m.X.cols());
    VectorXd mu = m.mean(beta);
    if (!mu.allFinite()) {
        beta.setZero();
        mu = m.mean(beta);
    }
    Real ll = m.loglik(mu, 0.0);
    optimize_beta(m, beta, mu, 0.0, ll, grad_tol);
    return beta;
}

std::vector<std::string> kernel_columns(const MatrixXd& X, const std::vector<std::string>& names) {
    Eigen::FullPivLU<MatrixXd> lu(X);
    lu.setThreshold(1e-10);
    MatrixXd K = lu.kernel();
    std::vector<std::string> out;
    const double scale = K.cwiseAbs().maxCoeff();
    for (Eigen::Index j = 0; j < K.rows(); ++j) {
        if (K.row(j).cwiseAbs().maxCoeff() > 1e-8 * scale) out.push_back(names[static_cast<std::size_t>(j)]);
    }
    return out;
}

bool near_zero_column(const VectorXd& x, const VectorXd& y) {
    if ((x.array() == 0.0).all()) return true;
    if ((x.array() >= 0.0).all() && x.dot(y) == 0.0) return true;
    const bool unit = (x.array() >= 0.0).all() && (x.array() <= 1.0).all();
    if (unit && (x.array() < 1.0).any() && (1.0 - x.array()).matrix().dot(y) == 0.0) return true;
    return false;
}

bool is_intercept(const VectorXd& x) { return (x.array() == 1.0).all(); }

}  // namespace

const NbrCoefficient* NbrFit::find(std::string_view name) const {
    for (const auto& c : coefficients) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

double nb2_log_density(double y, double mu, double a) { return static_cast<double>(row_loglik(y, mu, a)); }

std::vector<std::size_t> collinear_columns(const MatrixXd& X) {
    std::vector<std::size_t> dropped;
    std::vector<Eigen::Index> kept;
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        MatrixXd sub(X.rows(), static_cast<Eigen::Index>(kept.size()) + 1);
        for (std::size_t k = 0; k < kept.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = X.col(kept[k]);
        sub.col(sub.cols() - 1) = X.col(j);
        Eigen::ColPivHouseholderQR<MatrixXd> qr(sub);
        qr.setThreshold(1e-10);
        if (qr.rank() == sub.cols()) {
            kept.push_back(j);
        } else {
            dropped.push_back(static_cast<std::size_t>(j));
        }
    }
    return dropped;
}

NbrFit fit_nb2(const MatrixXd& X_in, const VectorXd& y, const VectorXd& offset, const std::vector<std::string>& names,
               const NbrOptions& options) {
    const auto n = X_in.rows();
    const auto p = X_in.cols();
    if (y.size() != n || offset.size() != n) throw InputError("nbr: response, offset and design differ in length");
    if (static_cast<Eigen::Index>(names.size()) != p) throw InputError("nbr: one name per design column required");
    if (n == 0) throw InputError("nbr: no observations");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(y[i] >= 0.0) || y[i] != std::floor(y[i])) {
            throw InputError("nbr: response row " + std::to_string(i) + " is not a non-negative integer count");
        }
        if (!std::isfinite(offset[i])) throw InputError("nbr: offset row " + std::to_string(i) + " is not finite");
    }
    if (!X_in.allFinite()) throw InputError("nbr: design contains non-finite values");
    if ((y.array() == 0.0).all()) throw InputError("nbr: every response is zero");
    if (options.fixed_alpha && *options.fixed_alpha < 0.0) throw InputError("nbr: fixed alpha must be >= 0");
    if (!(options.alpha_min > 0.0 && options.alpha_min < options.alpha_max)) throw InputError("nbr: bad alpha bounds");

    NbrFit fit;
    fit.n = static_cast<std::size_t>(n);
    fit.coefficients.resize(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) fit.coefficients[static_cast<std::size_t>(j)].name = names[static_cast<std::size_t>(j)];

    std::vector<Eigen::Index> active;
    for (Eigen::Index j = 0; j < p; ++j) {
        VectorXd col = X_in.col(j);
        if (!is_intercept(col) && near_zero_column(col, y)) {
            fit.coefficients[static_cast<std::size_t>(j)].flag = CoefficientFlag::NearZero;
        } else {
            active.push_back(j);
        }
    }

    auto gather = [&](const std::vector<Eigen::Index>& cols) {
        MatrixXd out(n, static_cast<Eigen::Index>(cols.size()));
        for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = X_in.col(cols[k]);
        return out;
    };

    MatrixXd X = gather(active);
    if (X.cols() > 0) {
        auto dropped = collinear_columns(X);
        if (!dropped.empty()) {
            if (!options.drop_collinear) {
                std::vector<std::string> active_names;
                for (auto j : active) active_names.push_back(names[static_cast<std::size_t>(j)]);
                auto involved = kernel_columns(X, active_names);
                std::string list;
                for (const auto& s : involved) list += (list.empty() ? "" : ", ") + s;
                throw RankDeficientError("nbr: design is rank deficient; collinear columns: " + list, involved);
            }
            std::vector<Eigen::Index> kept;
            for (std::size_t k = 0; k < active.size(); ++k) {
                if (std::find(dropped.begin(), dropped.end(), k) != dropped.end()) {
                    fit.coefficients[static_cast<std::size_t>(active[k])].flag = CoefficientFlag::Collinear;
                } else {
                    kept.push_back(active[k]);
                }
            }
            active = std::move(kept);
            X = gather(active);
        }
    }

    Model m{X, y, offset};
    const double t_min = std::log(options.alpha_min);
    const double t_max = std::log(options.alpha_max);
    const bool free_alpha = !options.fixed_alpha.has_value();

    VectorXd beta = X.cols() > 0 ? poisson_start(m, options.grad_tol) : VectorXd();
    double a = free_alpha ? std::clamp(options.alpha_init, options.alpha_min, options.alpha_max) : *options.fixed_alpha;
    VectorXd mu = m.mean(beta);
    Real ll = m.loglik(mu, a);
    fit.ll_trace.push_back(static_cast<double>(ll));

    for (int it = 1; it <= options.max_iterations; ++it) {
        const Real prev = ll;
        optimize_beta(m, beta, mu, a, ll, options.grad_tol);
        if (free_alpha) optimize_alpha(m, mu, a, ll, t_min, t_max);
        fit.ll_trace.push_back(static_cast<double>(ll));
        fit.iterations = it;

        double g2 = X.cols() > 0 ? m.beta_gradient(mu, a).squaredNorm() : 0.0;
        if (free_alpha) {
            const double gt = projected_alpha_gradient(m.log_alpha_gradient(mu, a), std::log(a), t_min, t_max);
            g2 += gt * gt;
        }
        fit.gradient_norm = std::sqrt(g2);
        if (std::abs(ll - prev) < options.ll_tol && fit.gradient_norm < options.grad_tol) {
            fit.converged = true;
            break;
        }
    }

    fit.alpha = a;
    fit.log_likelihood = static_cast<double>(ll);

    MatrixXd cov;
    if (X.cols() > 0) {
        MatrixXd info = m.beta_information(mu, a);
        Eigen::LDLT<MatrixXd> ldlt(info);
        if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
            cov = ldlt.solve(MatrixXd::Identity(X.cols(), X.cols()));
        }
    }
    for (std::size_t k = 0; k < active.size(); ++k) {
        auto& c = fit.coefficients[static_cast<std::size_t>(active[k])];
        const auto kk = static_cast<Eigen::Index>(k);
        c.beta = beta[kk];
        c.exp_beta = std::exp(c.beta);
        const double var = cov.size() ? cov(kk, kk) : kNaN;
        c.se = var > 0.0 ? std::sqrt(var) : kNaN;
        if (!std::isfinite(c.se)) {
            c.flag = CoefficientFlag::NearZero;
        } else {
            c.z = c.beta / c.se;
            c.p = normal_two_tailed(c.z);
        }
    }
    for (auto& c : fit.coefficients) {
        if (!c.estimated()) c.beta = c.se = c.z = c.p = c.exp_beta = kNaN;
    }
    return fit;
}

NbrFit fit_nbr(const encoding::DesignMatrix& design, std::span<const double> counts, std::span<const double> exposure,
               const NbrOptions& options) {
    const auto n = design.row_count();
    if (counts.size() != n) throw InputError("nbr: counts and design rows differ in length");
    if (!exposure.empty() && exposure.size() != n) throw InputError("nbr: exposure and design rows differ in length");

    const auto p = design.column_count() + 1;
    MatrixXd X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
    VectorXd y(static_cast<Eigen::Index>(n));
    VectorXd offset = VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        X(r, 0) = 1.0;
        for (std::size_t j = 0; j < design.column_count(); ++j) X(r, static_cast<Eigen::Index>(j + 1)) = design.at(i, j);
        y[r] = counts[i];
        if (!exposure.empty()) {
            if (!(exposure[i] > 0.0)) {
                throw InputError("nbr: exposure for '" + design.rows()[i] + "' must be positive");
            }
            if (counts[i] > exposure[i]) {
                throw InputError("nbr: count for '" + design.rows()[i] + "' exceeds its exposure");
            }
            offset[r] = std::log(exposure[i]);
        }
    }
    std::vector<std::string> names{"intercept"};
    for (auto c : design.columns()) names.emplace_back(to_string(c));
    return fit_nb2(X, y, offset, names, options);
}

}  // namespace oapl::stats
