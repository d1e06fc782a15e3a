#include "oapl/stats/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include <json.hpp>

#include "oapl/common/csv.hpp"
#include "oapl/common/error.hpp"
#include "oapl/metrics/metrics.hpp"

namespace oapl::stats {

using encoding::ConditionId;
using encoding::Scheme;

ResponseFamily family_of(Response r) {
    switch (r) {
        case Response::OaRate:
        case Response::RaRate:
        case Response::FtRate: return ResponseFamily::Rates;
        default: return ResponseFamily::Latency;
    }
}

Response basis_response(ResponseFamily f) { return f == ResponseFamily::Rates ? Response::FtRate : Response::FtY1; }

std::vector<Response> responses_of(ResponseSet set) {
    std::vector<Response> out;
    if (set != ResponseSet::Latency) out.insert(out.end(), {Response::OaRate, Response::RaRate, Response::FtRate});
    if (set != ResponseSet::Rates) out.insert(out.end(), {Response::OaY1, Response::RaY1, Response::FtY1});
    return out;
}

ResponseSet parse_response_set(std::string_view name) {
    if (name == "rates") return ResponseSet::Rates;
    if (name == "latency") return ResponseSet::Latency;
    if (name == "both") return ResponseSet::Both;
    throw InputError("unknown response set '" + std::string(name) + "' (expected rates, latency or both)");
}

const std::vector<ConditionId>& stage1_conditions() {
    static const std::vector<ConditionId> list = [] {
        std::vector<ConditionId> out;
        for (auto c : encoding::weighted_conditions()) {
            if (c != ConditionId::EmbargoSTEM && c != ConditionId::EmbargoHaSS) out.push_back(c);
        }
        out.push_back(ConditionId::MandateAge);
        return out;
    }();
    return list;
}

const Stage2Fit* AnalysisReport::stage2_for(Response r) const {
    for (const auto& f : stage2) {
        if (f.response == r) return &f;
    }
    return nullptr;
}

namespace {

struct InstitutionData {
    const registry::PolicyRecord* record = nullptr;
    std::size_t articles = 0, oa = 0, ra = 0;
    std::optional<double> mandate_age;
    std::optional<double> y1_oa, y1_ra, y1_ft;
};

std::optional<double> condition_value(const InstitutionData& d, ConditionId c, Scheme scheme) {
    if (encoding::is_continuous(c)) return d.mandate_age;
    try {
        return encoding::builtin_table(scheme).weight(c, encoding::option_of(*d.record, c));
    } catch (const encoding::WeightLookupError& e) {
        throw InputError("record '" + d.record->id + "': " + e.what());
    }
}

std::optional<double> response_value(const InstitutionData& d, Response r) {
    const auto n = static_cast<double>(d.articles);
    switch (r) {
        case Response::OaRate: return static_cast<double>(d.oa) / n;
        case Response::RaRate: return static_cast<double>(d.ra) / n;
        case Response::FtRate: return static_cast<double>(d.oa + d.ra) / n;
        case Response::OaY1: return d.y1_oa;
        case Response::RaY1: return d.y1_ra;
        case Response::FtY1: return d.y1_ft;
    }
    return std::nullopt;
}

double response_count(const InstitutionData& d, Response r) {
    switch (r) {
        case Response::OaRate: return static_cast<double>(d.oa);
        case Response::RaRate: return static_cast<double>(d.ra);
        case Response::FtRate: return static_cast<double>(d.oa + d.ra);
        default: return std::round(*response_value(d, r) * 100.0);
    }
}

PairwiseRow correlate(const std::vector<InstitutionData>& data, ConditionId c, Response r, Scheme scheme) {
    PairwiseRow row{c, r, std::nullopt, std::nullopt, 0, ""};
    std::vector<double> x, y;
    for (const auto& d : data) {
        auto xv = condition_value(d, c, scheme);
        auto yv = response_value(d, r);
        if (!xv || !yv) continue;
        x.push_back(*xv);
        y.push_back(*yv);
    }
    row.n = x.size();
    if (row.n < 3) {
        row.note = "too_few_pairs";
        return row;
    }
    try {
        auto res = pearson(x, y);
        row.r = res.r;
        row.p = res.p;
    } catch (const ZeroVarianceError&) {
        row.note = "zero_variance";
    }
    return row;
}

std::optional<double> y1_of(const corpus::DepositCorpus& c, metrics::Category cat) {
    try {
        return metrics::first_year_latency_score(c, cat).score;
    } catch (const InfeasibleError&) {
        return std::nullopt;
    }
}

Stage2Fit fit_stage2(const std::vector<InstitutionData>& data, const std::vector<ConditionId>& conditions,
                     Response response, const AnalysisConfig& config) {
    Stage2Fit out;
    out.response = response;
    out.conditions = conditions;
    out.pseudo_counts = family_of(response) == ResponseFamily::Latency;
    if (conditions.empty()) {
        out.note = "no conditions retained";
        return out;
    }

    const bool needs_age = std::find(conditions.begin(), conditions.end(), ConditionId::MandateAge) != conditions.end();
    std::vector<const InstitutionData*> rows;
    for (const auto& d : data) {
        if (!response_value(d, response)) {
            ++out.dropped_missing_response;
            continue;
        }
        if (needs_age && !d.mandate_age) {
            ++out.dropped_missing_mandate_age;
            continue;
        }
        rows.push_back(&d);
    }
    out.rows = rows.size();
    if (rows.empty()) {
        out.note = "no usable rows";
        return out;
    }

    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto p = static_cast<Eigen::Index>(conditions.size()) + 1;
    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd y(n), offset = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& d = *rows[static_cast<std::size_t>(i)];
        X(i, 0) = 1.0;
        for (Eigen::Index j = 1; j < p; ++j) {
            X(i, j) = *condition_value(d, conditions[static_cast<std::size_t>(j - 1)], config.stage2_scheme);
        }
        y[i] = response_count(d, response);
        if (!out.pseudo_counts) offset[i] = std::log(static_cast<double>(d.articles));
    }
    std::vector<std::string> names{"intercept"};
    for (auto c : conditions) names.emplace_back(to_string(c));

    auto options = config.nbr;
    options.drop_collinear = true;
    try {
        out.fit = fit_nb2(X, y, offset, names, options);
    } catch (const RankDeficientError& e) {
        out.note = e.what();
    } catch (const InputError& e) {
        out.note = e.what();
    }
    if (out.pseudo_counts && out.note.empty()) out.note = "latency score x100 rounded to pseudo-counts, no offset";
    return out;
}

}  // namespace

AnalysisReport run_effectiveness_analysis(const registry::RegistrySnapshot& snapshot,
                                          const corpus::DepositCorpus& corpus_in, const AnalysisConfig& config) {
    AnalysisReport report;
    report.config = config;
    report.reference_date = config.reference_date.value_or(snapshot.snapshot_date);

    auto excluded = corpus::apply_exclusions(corpus_in, snapshot, config.exclusions);
    report.exclusions = excluded.report;

    std::map<std::string, corpus::DepositCorpus> by_institution;
    for (const auto& a : excluded.corpus.articles) by_institution[a.institution_id].articles.push_back(a);

    std::vector<InstitutionData> data;
    for (const auto& id : excluded.institutions) {
        const auto* record = snapshot.find(id);
        if (!record) {
            ++report.institutions_without_policy;
            continue;
        }
        InstitutionData d;
        d.record = record;
        const auto& sub = by_institution[id];
        d.articles = sub.articles.size();
        for (const auto& a : sub.articles) {
            if (a.access_state == corpus::AccessState::OpenAccess) ++d.oa;
            if (a.access_state == corpus::AccessState::RestrictedAccess) ++d.ra;
        }
        if (record->adoption_date) d.mandate_age = registry::mandate_age(*record, report.reference_date);
        d.y1_oa = y1_of(sub, metrics::Category::OA);
        d.y1_ra = y1_of(sub, metrics::Category::RA);
        d.y1_ft = y1_of(sub, metrics::Category::FT);
        report.institutions.push_back(id);
        data.push_back(std::move(d));
    }
    if (data.size() < 3) {
        throw InfeasibleError("analysis needs at least 3 institutions with a policy record after exclusions; " +
                              std::to_string(data.size()) + " left");
    }

    const auto responses = responses_of(config.responses);
    for (auto r : responses) {
        for (auto c : stage1_conditions()) report.stage1.push_back(correlate(data, c, r, config.stage1_scheme));
    }

    std::map<ResponseFamily, std::vector<ConditionId>> retained;
    for (auto family : {ResponseFamily::Rates, ResponseFamily::Latency}) {
        const bool wanted = std::any_of(responses.begin(), responses.end(), [&](Response r) { return family_of(r) == family; });
        if (!wanted) continue;
        ScreeningOutcome s{family, basis_response(family), {}, {}};
        std::vector<CorrelationResult> defined;
        for (const auto& row : report.stage1) {
            if (row.response != s.basis) continue;
            if (row.r) {
                defined.push_back({row.condition, *row.r, *row.p, row.n});
            } else {
                s.eliminated.push_back(row.condition);
            }
        }
        auto screened = screen_conditions(defined, config.threshold);
        for (const auto& c : screened.retained) s.retained.push_back(c.condition);
        for (const auto& c : screened.eliminated) s.eliminated.push_back(c.condition);
        std::sort(s.eliminated.begin(), s.eliminated.end());
        retained[family] = s.retained;
        report.screening.push_back(std::move(s));
    }

    for (auto r : responses) {
        const auto& conds = retained[family_of(r)];
        for (auto c : conds) report.stage2_pairwise.push_back(correlate(data, c, r, config.stage2_scheme));
        report.stage2.push_back(fit_stage2(data, conds, r, config));
    }

    for (const auto& fit : report.stage2) {
        for (auto c : fit.conditions) {
            SummaryRow row{c, fit.response, "", false, false, false};
            for (const auto& pw : report.stage2_pairwise) {
                if (pw.condition == c && pw.response == fit.response && pw.p) {
                    row.pairwise_significant = *pw.p < config.significance;
                }
            }
            const NbrCoefficient* coef = fit.fit ? fit.fit->find(to_string(c)) : nullptr;
            if (!coef) {
                row.direction = "not_fitted";
            } else if (coef->flag == CoefficientFlag::NearZero) {
                row.direction = "near_zero";
                row.near_zero = true;
            } else if (coef->flag == CoefficientFlag::Collinear) {
                row.direction = "collinear";
            } else {
                row.direction = coef->beta > 0.0 ? "positive" : coef->beta < 0.0 ? "negative" : "zero";
                row.nbr_significant = coef->p < config.significance;
            }
            report.summary.push_back(std::move(row));
        }
    }
    return report;
}

namespace {

std::string fixed3(std::optional<double> v) {
    if (!v || !std::isfinite(*v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", *v);
    return buf;
}

std::string_view flag_name(const NbrCoefficient& c, bool advisory) {
    switch (c.flag) {
        case CoefficientFlag::NearZero: return "near_zero";
        case CoefficientFlag::Collinear: return "collinear";
        case CoefficientFlag::None: break;
    }
    return advisory ? "advisory" : "ok";
}

using ojson = nlohmann::ordered_json;

ojson number_or_null(std::optional<double> v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

ojson pairwise_json(const std::vector<PairwiseRow>& rows) {
    ojson out = ojson::array();
    for (const auto& r : rows) {
        out.push_back({{"condition", to_string(r.condition)},
                       {"response", to_string(r.response)},
                       {"r", number_or_null(r.r)},
                       {"p", number_or_null(r.p)},
                       {"n", r.n},
                       {"note", r.note}});
    }
    return out;
}

ojson conditions_json(const std::vector<ConditionId>& cs) {
    ojson out = ojson::array();
    for (auto c : cs) out.push_back(to_string(c));
    return out;
}

}  // namespace

std::string stage1_csv(const AnalysisReport& report) {
    std::string out = "condition,response,r,p,n\n";
    for (const auto& r : report.stage1) {
        out += csv::join({std::string(to_string(r.condition)), std::string(to_string(r.response)), fixed3(r.r),
                          fixed3(r.p), std::to_string(r.n)}) +
               "\n";
    }
    return out;
}

std::string stage2_csv(const AnalysisReport& report) {
    std::string out = "condition,response,beta,se,exp_beta,p,flag\n";
    for (const auto& f : report.stage2) {
        if (!f.fit) continue;
        for (const auto& c : f.fit->coefficients) {
            out += csv::join({c.name, std::string(to_string(f.response)), fixed3(c.beta), fixed3(c.se),
                              fixed3(c.exp_beta), fixed3(c.p), std::string(flag_name(c, f.fit->advisory()))}) +
                   "\n";
        }
    }
    return out;
}

std::string summary_csv(const AnalysisReport& report) {
    std::string out = "condition,response,direction,nbr_significant,pairwise_significant,near_zero\n";
    auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
    for (const auto& s : report.summary) {
        out += csv::join({std::string(to_string(s.condition)), std::string(to_string(s.response)), s.direction,
                          yn(s.nbr_significant), yn(s.pairwise_significant), yn(s.near_zero)}) +
               "\n";
    }
    return out;
}

std::string report_json(const AnalysisReport& report) {
    const auto& cfg = report.config;
    ojson doc;
    doc["config"] = {{"stage1_scheme", to_string(cfg.stage1_scheme)},
                     {"stage2_scheme", to_string(cfg.stage2_scheme)},
                     {"threshold", cfg.threshold},
                     {"significance", cfg.significance},
                     {"reference_date", format_date(report.reference_date)},
                     {"exclusions",
                      {{"min_articles", cfg.exclusions.min_articles},
                       {"adoption_cutoff_year", cfg.exclusions.adoption_cutoff_year},
                       {"require_ir_locus", cfg.exclusions.require_ir_locus},
                       {"window", {cfg.exclusions.window_first_year, cfg.exclusions.window_last_year}}}}};

    ojson excl = ojson::array();
    for (const auto& e : report.exclusions.exclusions) {
        excl.push_back({{"institution_id", e.institution_id}, {"rule", e.rule}, {"detail", e.detail}});
    }
    doc["exclusions"] = {{"excluded", excl},
                         {"articles_outside_window", report.exclusions.articles_outside_window},
                         {"articles_undated", report.exclusions.articles_undated},
                         {"institutions_without_policy", report.institutions_without_policy}};
    doc["institutions"] = report.institutions;
    doc["stage1"] = pairwise_json(report.stage1);

    ojson screening = ojson::array();
    for (const auto& s : report.screening) {
        screening.push_back({{"family", s.family == ResponseFamily::Rates ? "rates" : "latency"},
                             {"basis", to_string(s.basis)},
                             {"retained", conditions_json(s.retained)},
                             {"eliminated", conditions_json(s.eliminated)}});
    }
    doc["screening"] = screening;
    doc["stage2_pairwise"] = pairwise_json(report.stage2_pairwise);

    ojson stage2 = ojson::array();
    for (const auto& f : report.stage2) {
        ojson item = {{"response", to_string(f.response)},
                      {"conditions", conditions_json(f.conditions)},
                      {"rows", f.rows},
                      {"dropped_missing_mandate_age", f.dropped_missing_mandate_age},
                      {"dropped_missing_response", f.dropped_missing_response},
                      {"pseudo_counts", f.pseudo_counts},
                      {"note", f.note}};
        if (f.fit) {
            const auto& fit = *f.fit;
            ojson coefs = ojson::array();
            for (const auto& c : fit.coefficients) {
                coefs.push_back({{"name", c.name},
                                 {"beta", number_or_null(c.beta)},
                                 {"se", number_or_null(c.se)},
                                 {"z", number_or_null(c.z)},
                                 {"p", number_or_null(c.p)},
                                 {"exp_beta", number_or_null(c.exp_beta)},
                                 {"flag", flag_name(c, fit.advisory())}});
            }
            item["fit"] = {{"alpha", fit.alpha},
                           {"log_likelihood", fit.log_likelihood},
                           {"converged", fit.converged},
                           {"advisory", fit.advisory()},
                           {"iterations", fit.iterations},
                           {"gradient_norm", fit.gradient_norm},
                           {"coefficients", coefs}};
        } else {
            item["fit"] = nullptr;
        }
        stage2.push_back(item);
    }
    doc["stage2"] = stage2;

    ojson summary = ojson::array();
    for (const auto& s : report.summary) {
        summary.push_back({{"condition", to_string(s.condition)},
                           {"response", to_string(s.response)},
                           {"direction", s.direction},
                           {"nbr_significant", s.nbr_significant},
                           {"pairwise_significant", s.pairwise_significant},
                           {"near_zero", s.near_zero}});
    }
    doc["summary"] = summary;
    return doc.dump(2) + "\n";
}

}  // namespace oapl::stats
