#include "oapl/cli/app.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "oapl/common/csv.hpp"
#include "oapl/common/error.hpp"
#include "oapl/corpus/corpus.hpp"
#include "oapl/corpus/synthetic.hpp"
#include "oapl/corpus/world.hpp"
#include "oapl/encoding/design_matrix.hpp"
#include "oapl/metrics/metrics.hpp"
#include "oapl/registry/registry.hpp"
#include "oapl/stats/analysis.hpp"

namespace oapl::cli {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string fixed(double v, int places) {
    if (!std::isfinite(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, v);
    return buf;
}

std::string percent(std::size_t count, std::size_t total) {
    return total ? fixed(100.0 * static_cast<double>(count) / static_cast<double>(total), 1) : "";
}

std::string opt_fixed(const std::optional<double>& v, int places) { return v ? fixed(*v, places) : ""; }

std::size_t line_count(std::string_view text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

class Output {
public:
    Output(std::string dir, std::ostream& log) : log_(log) {
        if (dir.empty()) {
            const char* env = std::getenv("OAPL_OUTPUT_DIR");
            dir = env && *env ? env : ".";
        }
        dir_ = dir;
    }

    // CSV tables report data rows (header excluded); other files report bytes.
    void write(std::string_view name, const std::string& content) {
        auto path = write_atomic(dir_, name, content);
        if (name.ends_with(".csv")) {
            const auto lines = line_count(content);
            log_ << "wrote " << path.string() << " (" << (lines ? lines - 1 : 0) << " rows)\n";
        } else {
            log_ << "wrote " << path.string() << " (" << content.size() << " bytes)\n";
        }
    }

private:
    fs::path dir_;
    std::ostream& log_;
};

registry::RegistrySnapshot load_registry(const std::string& path) {
    auto text = read_file(path);
    try {
        return registry::parse_registry(text);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

corpus::DepositCorpus load_corpus(const std::string& path) {
    auto text = read_file(path);
    try {
        return corpus::parse_corpus(text);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

encoding::Scheme parse_scheme(const std::string& s) {
    auto v = parse_enum<encoding::Scheme>(s);
    if (!v) throw InputError("unknown weight scheme '" + s + "' (expected I or II)");
    return *v;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto end = s.find(',', start);
        if (end == std::string::npos) end = s.size();
        if (end > start) out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

// ---- validate -------------------------------------------------------------

struct ValidateArgs {
    std::string registry;
    std::string out;
    std::string format = "csv";
    bool strict = false;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
    auto snapshot = load_registry(a.registry);
    auto violations = registry::validate_snapshot(snapshot);
    Output dest(a.out, out);
    if (a.format == "json") {
        ojson doc = ojson::array();
        for (const auto& v : violations) {
            doc.push_back({{"record_id", v.record_id}, {"field", v.field}, {"rule", v.rule}, {"message", v.message}});
        }
        dest.write("violations.json", doc.dump(2) + "\n");
    } else {
        std::string text = "record_id,field,rule,message\n";
        for (const auto& v : violations) text += csv::join({v.record_id, v.field, v.rule, v.message}) + "\n";
        dest.write("violations.csv", text);
    }
    for (const auto& v : violations) out << a.registry << ": record '" << v.record_id << "' " << v.field << " [" << v.rule << "] " << v.message << "\n";
    out << snapshot.records.size() << " records checked, " << violations.size() << " violations\n";
    return a.strict && !violations.empty() ? kViolations : kOk;
}

// ---- summarize ------------------------------------------------------------

struct SummarizeArgs {
    std::string registry;
    std::string out;
    std::string format = "csv";
};

template <typename E, std::size_t N>
std::string count_table(std::string_view label, std::string_view count_label, const std::array<std::size_t, N>& counts,
                        std::size_t total) {
    std::string text = std::string(label) + "," + std::string(count_label) + ",percent\n";
    for (auto e : enum_values<E>()) {
        const auto c = counts[static_cast<std::size_t>(e)];
        text += csv::join({std::string(to_string(e)), std::to_string(c), percent(c, total)}) + "\n";
    }
    text += csv::join({"total", std::to_string(total), percent(total, total)}) + "\n";
    return text;
}

std::vector<std::pair<std::string, std::size_t>> green_gold_rows(const metrics::GreenGoldCounts& c) {
    return {{"green:required", c.deposit_required},   {"green:requested", c.deposit_requested},
            {"green:not_specified", c.deposit_not_specified}, {"gold:required", c.gold_required},
            {"gold:recommended", c.gold_recommended}, {"gold:permitted", c.gold_permitted},
            {"gold:not_specified_or_other", c.gold_other}};
}

std::string green_gold_table(const metrics::GreenGoldCounts& c) {
    std::string text = "criterion,option,policies,percent\n";
    for (const auto& [key, n] : green_gold_rows(c)) {
        auto colon = key.find(':');
        text += csv::join({key.substr(0, colon), key.substr(colon + 1), std::to_string(n), percent(n, c.total)}) + "\n";
    }
    return text;
}

ojson green_gold_json(const metrics::GreenGoldCounts& c) {
    ojson o;
    for (const auto& [key, n] : green_gold_rows(c)) o[key] = n;
    o["total"] = c.total;
    return o;
}

template <typename E, std::size_t N>
ojson count_json(const std::array<std::size_t, N>& counts) {
    ojson o;
    for (auto e : enum_values<E>()) o[std::string(to_string(e))] = counts[static_cast<std::size_t>(e)];
    return o;
}

int cmd_summarize(const SummarizeArgs& a, std::ostream& out) {
    auto snapshot = load_registry(a.registry);
    auto s = metrics::summarize_registry(snapshot);
    Output dest(a.out, out);
    using registry::DateOfDeposit;
    using registry::PolicymakerType;
    using registry::Region;
    if (a.format == "json") {
        ojson doc;
        doc["records"] = s.total;
        doc["by_region"] = count_json<Region>(s.by_region);
        doc["by_policymaker_type"] = count_json<PolicymakerType>(s.by_policymaker_type);
        doc["green_gold"] = green_gold_json(s.all);
        doc["green_gold_funders"] = green_gold_json(s.funders);
        doc["green_gold_institutions"] = green_gold_json(s.institutions);
        doc["mandates"] = s.mandates;
        doc["mandates_by_region"] = count_json<Region>(s.mandates_by_region);
        doc["deposit_timing_mandatory"] = count_json<DateOfDeposit>(s.deposit_timing_mandatory);
        doc["deposit_timing_requested"] = count_json<DateOfDeposit>(s.deposit_timing_requested);
        dest.write("summary.json", doc.dump(2) + "\n");
        return kOk;
    }
    dest.write("regions.csv", count_table<Region>("region", "policies", s.by_region, s.total));
    dest.write("policymaker_types.csv",
               count_table<PolicymakerType>("policymaker_type", "policies", s.by_policymaker_type, s.total));
    dest.write("green_gold.csv", green_gold_table(s.all));
    dest.write("green_gold_funders.csv", green_gold_table(s.funders));
    dest.write("green_gold_institutions.csv", green_gold_table(s.institutions));
    dest.write("mandates_by_region.csv", count_table<Region>("region", "mandates", s.mandates_by_region, s.mandates));

    std::string timing = "date_of_deposit,mandatory,requested\n";
    for (auto e : enum_values<DateOfDeposit>()) {
        const auto i = static_cast<std::size_t>(e);
        timing += csv::join({std::string(to_string(e)), std::to_string(s.deposit_timing_mandatory[i]),
                             std::to_string(s.deposit_timing_requested[i])}) +
                  "\n";
    }
    dest.write("deposit_timing.csv", timing);
    return kOk;
}

// ---- encode ---------------------------------------------------------------

struct EncodeArgs {
    std::string registry;
    std::string out;
    std::string weights = "I";
    std::string conditions;
    std::string institutions;
    std::string reference_date;
};

std::vector<encoding::ConditionId> parse_conditions(const std::string& list) {
    if (list.empty()) return encoding::weighted_conditions();
    std::vector<encoding::ConditionId> out;
    for (const auto& name : split_list(list)) {
        auto c = parse_enum<encoding::ConditionId>(name);
        if (!c) throw InputError("unknown condition '" + name + "'");
        out.push_back(*c);
    }
    return out;
}

int cmd_encode(const EncodeArgs& a, std::ostream& out) {
    auto snapshot = load_registry(a.registry);
    const Date reference = a.reference_date.empty() ? snapshot.snapshot_date : parse_date(a.reference_date);
    std::vector<std::string> ids;
    if (a.institutions.empty()) {
        for (const auto& r : snapshot.records) ids.push_back(r.id);
    } else {
        ids = split_list(a.institutions);
    }
    auto matrix = encoding::build_design_matrix(snapshot, ids, parse_scheme(a.weights), parse_conditions(a.conditions),
                                                reference);
    Output(a.out, out).write("design_matrix.csv", matrix.to_csv());
    return kOk;
}

// ---- metrics --------------------------------------------------------------

struct MetricsArgs {
    std::string corpus;
    std::string registry;
    std::string out;
    std::string format = "csv";
    std::string group_by = "institution";
    std::string category = "ft";
    std::string rank_by = "ft";
    std::optional<int> year;
    std::size_t min_articles = 0;
};

int cmd_metrics(const MetricsArgs& a, std::ostream& out) {
    auto corpus = load_corpus(a.corpus);
    auto group = metrics::GroupBy::parse(a.group_by);
    if (group.kind == metrics::GroupKind::Mandated) {
        if (a.registry.empty()) throw InputError("--group-by mandated needs --registry");
        group.mandated = metrics::mandated_institutions(load_registry(a.registry));
    }
    const auto category = metrics::parse_category(a.category);
    const auto rank_field = metrics::parse_rate_field(a.rank_by);

    auto rates = metrics::deposit_rates(corpus, group);
    if (group.kind == metrics::GroupKind::Institution) {
        rates = metrics::rank_institutions(std::move(rates), rank_field, a.min_articles);
    } else {
        std::erase_if(rates, [&](const metrics::DepositRates& r) { return r.n_articles < a.min_articles; });
    }
    std::set<std::string> kept;
    for (const auto& r : rates) kept.insert(r.key);

    auto latency = metrics::latency_summary(corpus, group);
    std::erase_if(latency, [&](const metrics::LatencySummary& l) { return !kept.count(l.key); });

    struct GroupPeriods {
        std::string key;
        metrics::PeriodDistribution dist;
        metrics::Y1Score y1;
    };
    std::vector<GroupPeriods> periods;
    for (const auto& r : rates) {
        metrics::Selection sel{group, r.key, a.year};
        try {
            periods.push_back({r.key, metrics::period_distribution(corpus, category, sel),
                               metrics::first_year_latency_score(corpus, category, sel)});
        } catch (const InfeasibleError&) {
        }
    }

    Output dest(a.out, out);
    const std::string cat(metrics::category_name(category));
    if (a.format == "json") {
        ojson r = ojson::array();
        for (const auto& g : rates) {
            r.push_back({{"key", g.key}, {"n_articles", g.n_articles}, {"oa", g.oa}, {"ra", g.ra}, {"ft", g.ft()},
                         {"mo", g.mo}, {"nd", g.nd}, {"oa_rate", g.oa_rate()}, {"ra_rate", g.ra_rate()},
                         {"ft_rate", g.ft_rate()}, {"mo_rate", g.mo_rate()}, {"nd_rate", g.nd_rate()}});
        }
        dest.write("rates.json", r.dump(2) + "\n");

        auto opt = [](const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); };
        ojson l = ojson::array();
        for (const auto& g : latency) {
            l.push_back({{"key", g.key}, {"oa_count", g.oa_count}, {"oa_mean_months", opt(g.oa_mean)},
                         {"ra_count", g.ra_count}, {"ra_mean_months", opt(g.ra_mean)}, {"ft_mean_months", opt(g.ft_mean)}});
        }
        dest.write("latency.json", l.dump(2) + "\n");

        ojson p = ojson::array(), y = ojson::array();
        for (const auto& g : periods) {
            ojson row{{"key", g.key}, {"category", cat}, {"year", a.year ? ojson(*a.year) : ojson(nullptr)}};
            for (std::size_t i = 0; i < corpus::kLatencyPeriods; ++i) {
                row[std::string(to_string(static_cast<corpus::LatencyPeriod>(i)))] = g.dist.proportions[i];
            }
            row["total"] = g.dist.total;
            p.push_back(row);
            y.push_back({{"key", g.key}, {"category", cat}, {"year", a.year ? ojson(*a.year) : ojson(nullptr)},
                         {"score", g.y1.score}, {"p_before", g.y1.p_before}, {"p_0_6", g.y1.p_0_6},
                         {"p_6_12", g.y1.p_6_12}, {"denominator", g.y1.denominator}});
        }
        dest.write("periods.json", p.dump(2) + "\n");
        dest.write("y1.json", y.dump(2) + "\n");
        return kOk;
    }

    std::string r = "key,n_articles,ft_pct,oa_pct,ra_pct,mo_pct,nd_pct\n";
    for (const auto& g : rates) {
        r += csv::join({g.key, std::to_string(g.n_articles), percent(g.ft(), g.n_articles), percent(g.oa, g.n_articles),
                        percent(g.ra, g.n_articles), percent(g.mo, g.n_articles), percent(g.nd, g.n_articles)}) +
             "\n";
    }
    dest.write("rates.csv", r);

    std::string l = "key,oa_count,oa_mean_months,ra_count,ra_mean_months,ft_mean_months\n";
    for (const auto& g : latency) {
        l += csv::join({g.key, std::to_string(g.oa_count), opt_fixed(g.oa_mean, 1), std::to_string(g.ra_count),
                        opt_fixed(g.ra_mean, 1), opt_fixed(g.ft_mean, 1)}) +
             "\n";
    }
    dest.write("latency.csv", l);

    std::string p = "key,category,year";
    for (std::size_t i = 0; i < corpus::kLatencyPeriods; ++i) {
        p += "," + std::string(to_string(static_cast<corpus::LatencyPeriod>(i))) + "_pct";
    }
    p += ",total\n";
    std::string y = "key,category,year,score,before_pct,within_6_pct,between_6_and_12_pct,denominator\n";
    const std::string year = a.year ? std::to_string(*a.year) : "";
    for (const auto& g : periods) {
        std::vector<std::string> row{g.key, cat, year};
        for (std::size_t i = 0; i < corpus::kLatencyPeriods; ++i) row.push_back(percent(g.dist.counts[i], g.dist.total));
        row.push_back(std::to_string(g.dist.total));
        p += csv::join(row) + "\n";
        y += csv::join({g.key, cat, year, fixed(g.y1.score, 3), fixed(100.0 * g.y1.p_before, 1),
                        fixed(100.0 * g.y1.p_0_6, 1), fixed(100.0 * g.y1.p_6_12, 1), std::to_string(g.y1.denominator)}) +
             "\n";
    }
    dest.write("periods.csv", p);
    dest.write("y1.csv", y);
    return kOk;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
    std::string registry;
    std::string corpus;
    std::string out;
    std::string weights = "I";
    std::string stage2_weights = "II";
    double threshold = 0.1;
    std::string responses = "both";
    std::string reference_date;
    std::size_t min_articles = 50;
    int adoption_cutoff = 2011;
    bool any_locus = false;
    int window_first = 2011;
    int window_last = 2013;
    bool strict = false;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
    auto snapshot = load_registry(a.registry);
    auto corpus = load_corpus(a.corpus);
    if (a.strict) {
        std::set<std::string> bad;
        for (const auto& v : registry::validate_snapshot(snapshot)) bad.insert(v.record_id);
        std::erase_if(snapshot.records, [&](const registry::PolicyRecord& r) { return bad.count(r.id) > 0; });
        if (!bad.empty()) err << "--strict: rejected " << bad.size() << " records with violations\n";
    }

    stats::AnalysisConfig cfg;
    cfg.stage1_scheme = parse_scheme(a.weights);
    cfg.stage2_scheme = parse_scheme(a.stage2_weights);
    cfg.threshold = a.threshold;
    cfg.responses = stats::parse_response_set(a.responses);
    if (!a.reference_date.empty()) cfg.reference_date = parse_date(a.reference_date);
    cfg.exclusions.min_articles = a.min_articles;
    cfg.exclusions.adoption_cutoff_year = a.adoption_cutoff;
    cfg.exclusions.require_ir_locus = !a.any_locus;
    cfg.exclusions.window_first_year = a.window_first;
    cfg.exclusions.window_last_year = a.window_last;
    if (a.window_first > a.window_last) throw InputError("--window-first is after --window-last");

    auto report = stats::run_effectiveness_analysis(snapshot, corpus, cfg);
    Output dest(a.out, out);
    dest.write("stage1.csv", stats::stage1_csv(report));
    dest.write("stage2.csv", stats::stage2_csv(report));
    dest.write("summary.csv", stats::summary_csv(report));
    dest.write("report.json", stats::report_json(report));
    for (const auto& f : report.stage2) {
        if (f.fit && f.fit->advisory()) {
            err << "warning: " << to_string(f.response) << " fit did not converge; results are advisory\n";
        }
    }
    return kOk;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    bool world = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    Output dest(a.out, out);
    if (a.world) {
        auto cfg = a.config.empty() ? corpus::WorldConfig{} : corpus::parse_world_config(read_file(a.config));
        auto world = corpus::generate_world(cfg, a.seed);
        dest.write("registry.json", registry::serialize_registry(world.registry));
        dest.write("corpus.csv", corpus::serialize_corpus(world.corpus));
        return kOk;
    }
    if (a.config.empty()) throw InputError("simulate needs --config unless --world is given");
    std::string text = read_file(a.config);
    corpus::SyntheticConfig cfg;
    try {
        cfg = corpus::parse_synthetic_config(text);
    } catch (const InputError& e) {
        throw InputError(a.config + ": " + e.what());
    }
    dest.write("corpus.csv", corpus::serialize_corpus(corpus::generate_synthetic(cfg, a.seed)));
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Open Access policy encoding, deposit metrics and policy-effectiveness analysis", "oa-policy-lab"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    const std::string out_help = "Output directory (default: $OAPL_OUTPUT_DIR, else the current directory)";
    auto format_check = CLI::IsMember({"csv", "json"});

    ValidateArgs va;
    auto* validate = app.add_subcommand("validate", "Check registry records for contradictions and date order");
    validate->add_option("--registry", va.registry, "Registry JSON file")->required();
    validate->add_flag("--strict", va.strict, "Exit with status 1 when any violation is found");
    validate->add_option("--format", va.format, "csv or json")->check(format_check);
    validate->add_option("--out", va.out, out_help);

    SummarizeArgs sa;
    auto* summarize = app.add_subcommand("summarize", "Registry breakdowns by region, policymaker type and criteria");
    summarize->add_option("--registry", sa.registry, "Registry JSON file")->required();
    summarize->add_option("--format", sa.format, "csv or json")->check(format_check);
    summarize->add_option("--out", sa.out, out_help);

    EncodeArgs ea;
    auto* encode = app.add_subcommand("encode", "Write the numeric design matrix for a weight scheme");
    encode->add_option("--registry", ea.registry, "Registry JSON file")->required();
    encode->add_option("--weights", ea.weights, "Weight scheme, I or II")->check(CLI::IsMember({"I", "II"}));
    encode->add_option("--conditions", ea.conditions, "Comma-separated condition names (default: the 13 weighted)");
    encode->add_option("--institutions", ea.institutions, "Comma-separated record ids (default: every record)");
    encode->add_option("--reference-date", ea.reference_date, "Date for mandate_age, YYYY-MM-DD (default: snapshot date)");
    encode->add_option("--out", ea.out, out_help);

    MetricsArgs ma;
    auto* metrics_cmd = app.add_subcommand("metrics", "Deposit rates, latency, period shares and first-year scores");
    metrics_cmd->add_option("--corpus", ma.corpus, "Corpus CSV file")->required();
    metrics_cmd->add_option("--registry", ma.registry, "Registry JSON file (needed for --group-by mandated)");
    metrics_cmd->add_option("--group-by", ma.group_by, "institution, discipline, year, mandated or all")
        ->check(CLI::IsMember({"institution", "discipline", "year", "mandated", "all"}));
    metrics_cmd->add_option("--category", ma.category, "Deposit category for period and score tables: oa, ra or ft")
        ->check(CLI::IsMember({"oa", "ra", "ft"}));
    metrics_cmd->add_option("--rank-by", ma.rank_by, "Rate used to rank institutions: ft, oa, ra, mo or nd")
        ->check(CLI::IsMember({"ft", "oa", "ra", "mo", "nd"}));
    metrics_cmd->add_option("--year", ma.year, "Restrict period and score tables to one publication year");
    metrics_cmd->add_option("--min-articles", ma.min_articles, "Drop groups with fewer articles");
    metrics_cmd->add_option("--format", ma.format, "csv or json")->check(format_check);
    metrics_cmd->add_option("--out", ma.out, out_help);

    AnalyzeArgs aa;
    auto* analyze = app.add_subcommand("analyze", "Correlation screening and negative binomial regression");
    analyze->add_option("--registry", aa.registry, "Registry JSON file")->required();
    analyze->add_option("--corpus", aa.corpus, "Corpus CSV file")->required();
    analyze->add_option("--weights", aa.weights, "Stage-1 weight scheme, I or II")->check(CLI::IsMember({"I", "II"}));
    analyze->add_option("--stage2-weights", aa.stage2_weights, "Stage-2 weight scheme, I or II")
        ->check(CLI::IsMember({"I", "II"}));
    analyze->add_option("--threshold", aa.threshold, "Screening threshold on |r| (retained when |r| >= threshold)");
    analyze->add_option("--responses", aa.responses, "rates, latency or both")
        ->check(CLI::IsMember({"rates", "latency", "both"}));
    analyze->add_option("--reference-date", aa.reference_date, "Date for mandate_age, YYYY-MM-DD (default: snapshot date)");
    analyze->add_option("--min-articles", aa.min_articles, "Exclude institutions with fewer articles in the window");
    analyze->add_option("--adoption-cutoff", aa.adoption_cutoff, "Exclude mandates adopted after this year");
    analyze->add_flag("--any-locus", aa.any_locus, "Keep mandates whose deposit locus is not the institutional repository");
    analyze->add_option("--window-first", aa.window_first, "First publication year of the article window");
    analyze->add_option("--window-last", aa.window_last, "Last publication year of the article window");
    analyze->add_flag("--strict", aa.strict, "Drop registry records that fail validation before analysing");
    analyze->add_option("--out", aa.out, out_help);

    SimulateArgs sm;
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic corpus, or a registry and corpus with --world");
    simulate->add_option("--config", sm.config, "Synthetic corpus config JSON (world config JSON with --world)");
    simulate->add_option("--seed", sm.seed, "Random seed")->required();
    simulate->add_flag("--world", sm.world, "Generate a policy registry together with a corpus that follows it");
    simulate->add_option("--out", sm.out, out_help);

    std::vector<const char*> argv;
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*validate) return cmd_validate(va, out);
        if (*summarize) return cmd_summarize(sa, out);
        if (*encode) return cmd_encode(ea, out);
        if (*metrics_cmd) return cmd_metrics(ma, out);
        if (*analyze) return cmd_analyze(aa, out, err);
        if (*simulate) return cmd_simulate(sm, out);
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace oapl::cli
