#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "oapl/common/error.hpp"
#include "oapl/corpus/corpus.hpp"
#include "oapl/corpus/synthetic.hpp"
#include "oapl/corpus/world.hpp"
#include "oapl/registry/registry.hpp"

using namespace oapl;
using namespace oapl::corpus;
using testsupport::add_counts;
using testsupport::mandate_record;

namespace {

ArticleRecord dated(std::optional<Date> wok, std::optional<Date> alt, std::optional<Date> deposit) {
    ArticleRecord a;
    a.article_id = "a";
    a.institution_id = "i";
    a.wok_date = wok;
    a.altmetric_date = alt;
    a.deposit_date = deposit;
    a.access_state = deposit ? AccessState::OpenAccess : AccessState::NotDeposited;
    return a;
}

const Exclusion* find_exclusion(const ExclusionReport& r, const std::string& id) {
    for (const auto& e : r.exclusions) {
        if (e.institution_id == id) return &e;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("publication date estimate") {
    CHECK(estimated_publication_date(dated(make_date(2012, 9, 1), make_date(2012, 3, 10), std::nullopt)) ==
          make_date(2012, 3, 10));
    CHECK(estimated_publication_date(dated(make_date(2012, 7, 1), std::nullopt, std::nullopt)) ==
          make_date(2012, 1, 23));
    CHECK(kWokOffsetDays == std::lround(5.26 * kDaysPerMonth));
    CHECK_THROWS_AS(estimated_publication_date(dated(std::nullopt, std::nullopt, std::nullopt)), InputError);
    CHECK(publication_year(dated(make_date(2011, 3, 1), std::nullopt, std::nullopt)) == 2010);
    CHECK_FALSE(publication_year(dated(std::nullopt, std::nullopt, std::nullopt)).has_value());
}

TEST_CASE("deposit latency in months") {
    auto same = dated(std::nullopt, make_date(2012, 1, 1), make_date(2012, 1, 1));
    CHECK(deposit_latency_months(same) == 0.0);
    auto later = dated(std::nullopt, make_date(2012, 1, 1), make_date(2012, 7, 1));
    CHECK(*deposit_latency_months(later) == doctest::Approx(182.0 / 30.4375).epsilon(1e-15));
    CHECK(*deposit_latency_months(later) == doctest::Approx(5.98).epsilon(1e-3));
    auto before = dated(std::nullopt, make_date(2012, 1, 1), make_date(2011, 12, 1));
    CHECK(*deposit_latency_months(before) == doctest::Approx(-31.0 / 30.4375).epsilon(1e-15));
    CHECK_FALSE(deposit_latency_months(dated(std::nullopt, make_date(2012, 1, 1), std::nullopt)).has_value());
}

TEST_CASE("latency periods are half-open") {
    CHECK(latency_period(-0.1) == LatencyPeriod::BeforePublication);
    CHECK(latency_period(0.0) == LatencyPeriod::Within6Months);
    CHECK(latency_period(5.999) == LatencyPeriod::Within6Months);
    CHECK(latency_period(6.0) == LatencyPeriod::Between6And12);
    CHECK(latency_period(12.0) == LatencyPeriod::Between12And24);
    CHECK(latency_period(23.99) == LatencyPeriod::Between12And24);
    CHECK(latency_period(24.0) == LatencyPeriod::After24Months);
    CHECK(latency_period(1e6) == LatencyPeriod::After24Months);
}

TEST_CASE("article invariants") {
    CHECK_FALSE(check_article(dated(std::nullopt, make_date(2012, 1, 1), make_date(2012, 2, 1))).has_value());
    auto nd = dated(std::nullopt, make_date(2012, 1, 1), std::nullopt);
    nd.deposit_date = make_date(2012, 2, 1);
    CHECK(check_article(nd).has_value());
    auto open = dated(std::nullopt, make_date(2012, 1, 1), std::nullopt);
    open.access_state = AccessState::OpenAccess;
    CHECK(check_article(open).has_value());
    auto conv = dated(std::nullopt, make_date(2012, 1, 1), make_date(2012, 2, 1));
    conv.oa_conversion_date = make_date(2012, 1, 15);
    CHECK(check_article(conv).has_value());
    conv.oa_conversion_date = make_date(2013, 1, 15);
    CHECK_FALSE(check_article(conv).has_value());
}

TEST_CASE("corpus csv round trip") {
    DepositCorpus c;
    add_counts(c, "inst-a", 2, 1, 1, 1);
    c.articles[0].discipline = "physics, applied";
    c.articles[1].altmetric_date.reset();
    c.articles[0].oa_conversion_date = add_days(*c.articles[0].deposit_date, 40);
    auto text = serialize_corpus(c);
    auto back = parse_corpus(text);
    CHECK(back.articles == c.articles);
    CHECK(serialize_corpus(back) == text);
    CHECK(parse_corpus(std::string(kCorpusHeader) + "\n").articles.empty());
}

TEST_CASE("corpus parse errors list every bad line") {
    std::string text(kCorpusHeader);
    text += "\n";
    text += "a1,i,g,2012-01-01,,,open,\n";           // open without deposit
    text += "a2,i,g,2012-01-01,,,not_deposited,\n";  // fine
    text += "a3,i,g,2012-01-01,,,nonsense,\n";
    text += "a2,i,g,2012-01-01,,,not_deposited,\n";  // duplicate id
    try {
        parse_corpus(text);
        FAIL("expected InputError");
    } catch (const InputError& e) {
        std::string msg = e.what();
        CHECK(msg.find("3 invalid row") != std::string::npos);
        CHECK(msg.find("line 2:") != std::string::npos);
        CHECK(msg.find("line 4:") != std::string::npos);
        CHECK(msg.find("line 5:") != std::string::npos);
        CHECK(msg.find("line 3:") == std::string::npos);
    }
    CHECK_THROWS_WITH_AS(parse_corpus("article_id,institution_id\n"), doctest::Contains("missing column"), InputError);
}

TEST_CASE("exclusion filters attribute each rule") {
    registry::RegistrySnapshot snap;
    snap.snapshot_date = make_date(2014, 1, 1);
    auto ok = mandate_record("ok");
    auto any = mandate_record("any-locus");
    any.locus_of_deposit = registry::LocusOfDeposit::AnySuitable;
    auto late = mandate_record("late");
    late.adoption_date = PartialDate{make_date(2012, 5, 1), DatePrecision::Day};
    auto undated = mandate_record("undated");
    undated.adoption_date.reset();
    auto small = mandate_record("small");
    auto requester = testsupport::request_record("requester");
    requester.locus_of_deposit = registry::LocusOfDeposit::AnySuitable;
    requester.adoption_date = PartialDate{make_date(2013, 1, 1), DatePrecision::Day};
    snap.records = {ok, any, late, undated, small, requester};

    DepositCorpus c;
    for (const char* id : {"ok", "any-locus", "late", "undated", "requester", "no-policy"}) add_counts(c, id, 10, 5, 5, 40);
    add_counts(c, "small", 10, 5, 5, 29);
    // Out-of-window articles do not count toward the minimum.
    c.articles.push_back(testsupport::article("old-1", "small", AccessState::OpenAccess, make_date(2009, 6, 1)));

    auto res = apply_exclusions(c, snap);
    CHECK(res.institutions == std::vector<std::string>{"no-policy", "ok", "requester"});
    CHECK(res.report.exclusions.size() == 4);
    CHECK(find_exclusion(res.report, "small")->rule == "min_articles");
    CHECK(find_exclusion(res.report, "any-locus")->rule == "ir_locus");
    CHECK(find_exclusion(res.report, "late")->rule == "adoption_cutoff");
    CHECK(find_exclusion(res.report, "undated")->rule == "adoption_cutoff");
    CHECK(res.report.articles_outside_window == 1);
    CHECK(res.corpus.articles.size() == 180);

    ExclusionParams loose;
    loose.require_ir_locus = false;
    loose.adoption_cutoff_year = 2012;
    loose.min_articles = 49;
    auto res2 = apply_exclusions(c, snap, loose);
    CHECK(res2.report.exclusions.size() == 1);
    CHECK(find_exclusion(res2.report, "undated") != nullptr);

    ExclusionParams bad;
    bad.window_first_year = 2014;
    CHECK_THROWS_AS(apply_exclusions(c, snap, bad), InputError);
}

TEST_CASE("fifty articles is enough") {
    registry::RegistrySnapshot snap;
    snap.snapshot_date = make_date(2014, 1, 1);
    DepositCorpus c;
    add_counts(c, "edge", 0, 0, 0, 50);
    add_counts(c, "short", 0, 0, 0, 49);
    auto res = apply_exclusions(c, snap);
    CHECK(res.institutions == std::vector<std::string>{"edge"});
}

TEST_CASE("synthetic generator") {
    SyntheticConfig cfg;
    InstitutionSpec all_open;
    all_open.id = "open-inst";
    all_open.articles = 200;
    all_open.probabilities = {0.0, 0.0, 0.0, 1.0};
    cfg.institutions.push_back(all_open);

    auto a = generate_synthetic(cfg, 7);
    CHECK(a.articles.size() == 200);
    CHECK(std::all_of(a.articles.begin(), a.articles.end(),
                      [](const ArticleRecord& r) { return r.access_state == AccessState::OpenAccess; }));
    CHECK(std::all_of(a.articles.begin(), a.articles.end(),
                      [](const ArticleRecord& r) { return !check_article(r).has_value(); }));
    CHECK(serialize_corpus(generate_synthetic(cfg, 7)) == serialize_corpus(a));
    CHECK(serialize_corpus(generate_synthetic(cfg, 8)) != serialize_corpus(a));

    cfg.institutions[0].probabilities = {0.5, 0.0, 0.0, 0.49};
    CHECK_THROWS_AS(generate_synthetic(cfg, 1), InputError);
}

TEST_CASE("synthetic rates follow the configured probabilities") {
    auto cfg = parse_synthetic_config(R"({
        "years": [2011, 2013],
        "profiles": {"mandated": {"probabilities": {"not_deposited": 0.744, "metadata_only": 0.088,
                                                    "restricted": 0.030, "open": 0.138}}},
        "institutions": [{"id": "m", "articles": 10000, "profile": "mandated"}]
    })");
    auto c = generate_synthetic(cfg, 42);
    std::array<std::size_t, 4> counts{};
    for (const auto& a : c.articles) ++counts[static_cast<std::size_t>(a.access_state)];
    CHECK(std::fabs(counts[0] / 100.0 - 74.4) <= 1.0);
    CHECK(std::fabs(counts[1] / 100.0 - 8.8) <= 1.0);
    CHECK(std::fabs(counts[2] / 100.0 - 3.0) <= 1.0);
    CHECK(std::fabs(counts[3] / 100.0 - 13.8) <= 1.0);
    CHECK_THROWS_AS(parse_synthetic_config(R"({"institutions": [{"id": "x", "articles": 3, "profile": "nope"}]})"),
                    InputError);
}

TEST_CASE("generated worlds are valid and reproducible") {
    WorldConfig cfg;
    cfg.institutions = 20;
    auto w = generate_world(cfg, 11);
    CHECK(w.registry.records.size() == 20);
    CHECK(registry::validate_snapshot(w.registry).empty());
    for (const auto& r : w.registry.records) {
        CHECK_NOTHROW(encoding::encode_policy(r, encoding::Scheme::I, cfg.snapshot_date));
        CHECK_NOTHROW(encoding::encode_policy(r, encoding::Scheme::II, cfg.snapshot_date));
    }
    auto again = generate_world(cfg, 11);
    CHECK(registry::serialize_registry(again.registry) == registry::serialize_registry(w.registry));
    CHECK(serialize_corpus(again.corpus) == serialize_corpus(w.corpus));

    auto parsed = parse_world_config(R"({"institutions": 5, "oa_effects": {"must_deposit": 1.0}})");
    CHECK(parsed.institutions == 5);
    REQUIRE(parsed.oa_effects.size() == 1);
    CHECK(parsed.oa_effects[0].first == encoding::ConditionId::MustDeposit);
    CHECK_THROWS_AS(parse_world_config(R"({"institutes": 5})"), InputError);
}
