#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oapl/common/error.hpp"
#include "oapl/corpus/world.hpp"
#include "oapl/stats/analysis.hpp"
#include "oapl/stats/nbr.hpp"
#include "oapl/stats/pearson.hpp"
#include "oapl/stats/special.hpp"
#include "oracles.hpp"

using namespace oapl;
using namespace oapl::stats;
using encoding::ConditionId;

namespace {

CorrelationResult corr(ConditionId c, double r) {
    CorrelationResult out;
    out.condition = c;
    out.r = r;
    return out;
}

// NB2 draws as a gamma-Poisson mixture.
Eigen::VectorXd nb_draws(const Eigen::VectorXd& mu, double alpha, std::mt19937_64& rng) {
    Eigen::VectorXd y(mu.size());
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        double lambda = mu[i];
        if (alpha > 0) lambda = std::gamma_distribution<double>(1.0 / alpha, alpha * mu[i])(rng);
        y[i] = static_cast<double>(std::poisson_distribution<long>(lambda)(rng));
    }
    return y;
}

}  // namespace

TEST_CASE("incomplete beta") {
    CHECK(incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    // I_x(2,3) = 6x^2 - 8x^3 + 3x^4
    double x = 0.4;
    CHECK(incomplete_beta(2.0, 3.0, x) == doctest::Approx(6 * x * x - 8 * x * x * x + 3 * x * x * x * x).epsilon(1e-14));
    CHECK(incomplete_beta(3.5, 0.5, 0.9) + incomplete_beta(0.5, 3.5, 0.1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("t tails match numerical integration") {
    for (double df : {3.0, 10.0, 30.0}) {
        for (double t : {0.0, 0.3, 1.0, 2.2, 4.5, 9.0}) {
            CAPTURE(df);
            CAPTURE(t);
            CHECK(std::fabs(student_t_two_tailed(t, df) - testsupport::oracle_t_tail(t, df)) < 1e-9);
            CHECK(student_t_two_tailed(-t, df) == student_t_two_tailed(t, df));
        }
    }
    CHECK(normal_two_tailed(1.959963984540054) == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("pearson on small vectors") {
    std::vector<double> x{1, 2, 3, 4, 5}, y{2, 1, 4, 3, 5};
    auto res = pearson(x, y);
    CHECK(res.n == 5);
    CHECK(std::fabs(res.r - testsupport::oracle_r(x, y)) < 1e-15);
    CHECK(res.r == doctest::Approx(0.8));
    CHECK(std::fabs(res.p - testsupport::oracle_pearson_p(res.r, 5)) < 1e-9);

    std::vector<double> a{1, 2, 3}, b{2, 4, 6};
    auto perfect = pearson(a, b);
    CHECK(perfect.r == 1.0);
    CHECK(perfect.p == 0.0);

    std::vector<double> flat{3, 3, 3};
    CHECK_THROWS_AS(pearson(a, flat), ZeroVarianceError);
    std::vector<double> two{1, 2};
    CHECK_THROWS_AS(pearson(two, two), InputError);
    CHECK_THROWS_AS(pearson(a, x), InputError);
}

TEST_CASE("pearson symmetry and affine invariance") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> x(20), y(20);
        for (int i = 0; i < 20; ++i) {
            x[i] = nd(rng);
            y[i] = 0.5 * x[i] + nd(rng);
        }
        auto xy = pearson(x, y), yx = pearson(y, x);
        CHECK(xy.r == doctest::Approx(yx.r).epsilon(1e-14));
        CHECK(xy.p == doctest::Approx(yx.p).epsilon(1e-12));
        std::vector<double> ax(x), neg(x);
        for (int i = 0; i < 20; ++i) {
            ax[i] = 3.5 * x[i] + 100.0;
            neg[i] = -2.0 * x[i] + 1.0;
        }
        CHECK(pearson(ax, y).r == doctest::Approx(xy.r).epsilon(1e-12));
        CHECK(pearson(neg, y).r == doctest::Approx(-xy.r).epsilon(1e-12));
        CHECK(pearson(neg, y).p == doctest::Approx(xy.p).epsilon(1e-10));
    }
}

TEST_CASE("screening threshold") {
    auto res = screen_conditions({corr(ConditionId::MustDeposit, 0.099), corr(ConditionId::CannotWaiveDeposit, -0.244),
                                  corr(ConditionId::OpenLicensing, 0.1), corr(ConditionId::MandateAge, -0.0999)});
    REQUIRE(res.retained.size() == 2);
    CHECK(res.retained[0].condition == ConditionId::CannotWaiveDeposit);
    CHECK(res.retained[1].condition == ConditionId::OpenLicensing);
    REQUIRE(res.eliminated.size() == 2);
    CHECK(res.eliminated[0].condition == ConditionId::MustDeposit);
    CHECK(screen_conditions({corr(ConditionId::MustDeposit, 0.3)}, 0.5).retained.empty());
}

TEST_CASE("nb2 density") {
    CHECK(nb2_log_density(3, 2.0, 0.0) == doctest::Approx(3 * std::log(2.0) - 2.0 - std::lgamma(4.0)));
    // alpha = 1 is geometric with p = 1/(1+mu).
    double mu = 2.5;
    CHECK(nb2_log_density(4, mu, 1.0) == doctest::Approx(4 * std::log(mu / (1 + mu)) - std::log(1 + mu)));
    CHECK(nb2_log_density(4, mu, 1e-10) == doctest::Approx(nb2_log_density(4, mu, 0.0)).epsilon(1e-8));
}

TEST_CASE("intercept-only mean equals the sample mean") {
    Eigen::MatrixXd X = Eigen::MatrixXd::Ones(3, 1);
    Eigen::VectorXd y(3);
    y << 2, 4, 6;
    auto fit = fit_nb2(X, y, Eigen::VectorXd::Zero(3), {"intercept"});
    CHECK(fit.converged);
    CHECK(std::fabs(std::exp(fit.coefficients[0].beta) - 4.0) < 1e-9);

    encoding::DesignMatrix empty_design(encoding::Scheme::II, {"a", "b", "c"}, {}, {});
    std::vector<double> counts{2, 4, 6}, exposure{50, 50, 50};
    auto rate_fit = fit_nbr(empty_design, counts, exposure);
    CHECK(rate_fit.coefficients[0].beta == doctest::Approx(std::log(4.0 / 50.0)).epsilon(1e-10));
}

TEST_CASE("poisson limit matches IRLS") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int n = 40;
    Eigen::MatrixXd X(n, 3);
    std::vector<std::vector<double>> rows(n);
    Eigen::VectorXd offset(n);
    std::vector<double> off(n);
    Eigen::VectorXd mu(n);
    for (int i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = u(rng);
        X(i, 2) = u(rng) < 0.5 ? 1.0 : 0.0;
        offset[i] = off[i] = std::log(50.0 + 100.0 * u(rng));
        rows[i] = {X(i, 0), X(i, 1), X(i, 2)};
        mu[i] = std::exp(-2.0 + 0.8 * X(i, 1) + 0.4 * X(i, 2) + offset[i]);
    }
    Eigen::VectorXd y = nb_draws(mu, 0.0, rng);
    NbrOptions opt;
    opt.fixed_alpha = 0.0;
    auto fit = fit_nb2(X, y, offset, {"intercept", "x1", "x2"}, opt);
    auto oracle = testsupport::oracle_poisson_irls(rows, {y.data(), y.data() + n}, off);
    CHECK(fit.converged);
    for (int j = 0; j < 3; ++j) CHECK(std::fabs(fit.coefficients[j].beta - oracle[j]) < 1e-6);
}

TEST_CASE("recovers a known effect") {
    std::mt19937_64 rng(99);
    const int n = 500;
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd mu(n);
    for (int i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = i % 2;
        mu[i] = std::exp(1.0 + 0.7 * X(i, 1));
    }
    auto y = nb_draws(mu, 0.5, rng);
    auto fit = fit_nb2(X, y, Eigen::VectorXd::Zero(n), {"intercept", "x"});
    CHECK(fit.converged);
    const auto* b = fit.find("x");
    REQUIRE(b != nullptr);
    CHECK(std::fabs(b->beta - 0.7) < 3 * b->se);
    CHECK(b->exp_beta == doctest::Approx(std::exp(b->beta)));
    CHECK(fit.alpha == doctest::Approx(0.5).epsilon(0.3));
    CHECK(fit.gradient_norm < 1e-8);
    for (std::size_t i = 1; i < fit.ll_trace.size(); ++i) CHECK(fit.ll_trace[i] >= fit.ll_trace[i - 1]);
    for (const auto& c : fit.coefficients) CHECK((c.exp_beta > 1.0) == (c.beta > 0.0));
}

TEST_CASE("degenerate columns are flagged") {
    const int n = 30;
    Eigen::MatrixXd X(n, 3);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = 0.0;
        X(i, 2) = (i % 3 == 0) ? 1.0 : 0.0;
        y[i] = 2 + i % 5;
    }
    auto fit = fit_nb2(X, y, Eigen::VectorXd::Zero(n), {"intercept", "zero", "x"});
    CHECK(fit.find("zero")->flag == CoefficientFlag::NearZero);
    CHECK(std::isnan(fit.find("zero")->beta));
    CHECK_FALSE(fit.find("zero")->estimated());
    CHECK(fit.find("x")->estimated());

    // Response is zero wherever the predictor is on.
    Eigen::VectorXd y2 = y;
    for (int i = 0; i < n; ++i) {
        if (X(i, 2) > 0) y2[i] = 0;
    }
    auto sep = fit_nb2(X, y2, Eigen::VectorXd::Zero(n), {"intercept", "zero", "x"});
    CHECK(sep.find("x")->flag == CoefficientFlag::NearZero);
}

TEST_CASE("collinear designs") {
    const int n = 20;
    Eigen::MatrixXd X(n, 3);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = i % 2;
        X(i, 2) = 1.0 - (i % 2);
        y[i] = 1 + i % 4;
    }
    try {
        fit_nb2(X, y, Eigen::VectorXd::Zero(n), {"intercept", "a", "b"});
        FAIL("expected RankDeficientError");
    } catch (const RankDeficientError& e) {
        CHECK(std::find(e.columns().begin(), e.columns().end(), "b") != e.columns().end());
    }
    CHECK(collinear_columns(X) == std::vector<std::size_t>{2});
    NbrOptions opt;
    opt.drop_collinear = true;
    auto fit = fit_nb2(X, y, Eigen::VectorXd::Zero(n), {"intercept", "a", "b"}, opt);
    CHECK(fit.find("b")->flag == CoefficientFlag::Collinear);
    CHECK(fit.find("a")->estimated());
}

TEST_CASE("bad responses") {
    Eigen::MatrixXd X = Eigen::MatrixXd::Ones(3, 1);
    Eigen::VectorXd y(3);
    y << 1, 2.5, 3;
    CHECK_THROWS_AS(fit_nb2(X, y, Eigen::VectorXd::Zero(3), {"intercept"}), InputError);
    y << 0, 0, 0;
    CHECK_THROWS_AS(fit_nb2(X, y, Eigen::VectorXd::Zero(3), {"intercept"}), InputError);
    encoding::DesignMatrix d(encoding::Scheme::II, {"a", "b", "c"}, {}, {});
    std::vector<double> counts{5, 2, 3}, exposure{4, 10, 10};
    CHECK_THROWS_AS(fit_nbr(d, counts, exposure), InputError);
}

TEST_CASE("effectiveness analysis on a seeded world") {
    corpus::WorldConfig cfg;
    cfg.oa_effects = {{ConditionId::MustDeposit, 0.8}, {ConditionId::CannotWaiveDeposit, 0.6}};
    auto world = corpus::generate_world(cfg, 2024);
    AnalysisConfig ac;
    auto report = run_effectiveness_analysis(world.registry, world.corpus, ac);
    CHECK(report.reference_date == cfg.snapshot_date);
    CHECK(report.institutions.size() >= 3);

    const auto* oa = report.stage2_for(Response::OaRate);
    REQUIRE(oa != nullptr);
    REQUIRE(oa->fit.has_value());
    const auto* md = oa->fit->find("must_deposit");
    REQUIRE(md != nullptr);
    CHECK(md->exp_beta > 1.0);

    // Retained conditions are a subset of stage 1, and every stage-2 column was screened in.
    for (const auto& s : report.screening) {
        for (auto c : s.retained) {
            CHECK(std::any_of(report.stage1.begin(), report.stage1.end(),
                              [&](const PairwiseRow& r) { return r.condition == c; }));
        }
    }
    for (const auto& f : report.stage2) {
        for (auto c : f.conditions) {
            const auto& scr = *std::find_if(report.screening.begin(), report.screening.end(),
                                            [&](const ScreeningOutcome& o) { return o.family == family_of(f.response); });
            CHECK(std::find(scr.retained.begin(), scr.retained.end(), c) != scr.retained.end());
        }
    }

    auto again = run_effectiveness_analysis(world.registry, world.corpus, ac);
    CHECK(report_json(again) == report_json(report));
    CHECK(stage2_csv(again) == stage2_csv(report));
    CHECK(stage1_csv(report).rfind("condition,response,r,p,n\n", 0) == 0);
    CHECK(stage2_csv(report).rfind("condition,response,beta,se,exp_beta,p,flag\n", 0) == 0);
}

TEST_CASE("mandate age drives latency") {
    corpus::WorldConfig cfg;
    cfg.institutions = 120;
    cfg.oa_effects.clear();
    cfg.latency_age_slope = -2.5;
    auto world = corpus::generate_world(cfg, 8);
    AnalysisConfig ac;
    ac.responses = ResponseSet::Latency;
    auto report = run_effectiveness_analysis(world.registry, world.corpus, ac);
    double best = 0.0;
    ConditionId best_c = ConditionId::ResearchEvaluation;
    for (const auto& row : report.stage1) {
        if (row.response != Response::FtY1 || !row.r) continue;
        if (std::fabs(*row.r) > best) {
            best = std::fabs(*row.r);
            best_c = row.condition;
        }
    }
    CHECK(best_c == ConditionId::MandateAge);
}

TEST_CASE("no policy effect leaves the rate stage empty") {
    corpus::WorldConfig cfg;
    cfg.institutions = 1500;
    cfg.min_articles = 60;
    cfg.max_articles = 80;
    cfg.oa_effects.clear();
    cfg.ra_effects.clear();
    auto world = corpus::generate_world(cfg, 3);
    AnalysisConfig ac;
    ac.responses = ResponseSet::Rates;
    auto report = run_effectiveness_analysis(world.registry, world.corpus, ac);
    REQUIRE(report.screening.size() == 1);
    CHECK(report.screening[0].retained.empty());
    for (const auto& f : report.stage2) {
        CHECK_FALSE(f.fit.has_value());
        CHECK(f.note == "no conditions retained");
    }
}

TEST_CASE("too few institutions is infeasible") {
    corpus::WorldConfig cfg;
    cfg.institutions = 2;
    auto world = corpus::generate_world(cfg, 1);
    CHECK_THROWS_AS(run_effectiveness_analysis(world.registry, world.corpus, AnalysisConfig{}), InfeasibleError);
}
