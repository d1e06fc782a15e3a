#include "doctest.h"

#include <algorithm>

#include "fixtures.hpp"
#include "oapl/common/csv.hpp"
#include "oapl/common/error.hpp"
#include "oapl/registry/registry.hpp"

using namespace oapl;
using namespace oapl::registry;
using testsupport::mandate_record;
using testsupport::request_record;

namespace {

bool has_rule(const std::vector<Violation>& v, const std::string& rule) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.rule == rule; });
}

RegistrySnapshot one(PolicyRecord r) {
    RegistrySnapshot s;
    s.snapshot_date = make_date(2015, 1, 1);
    s.records.push_back(std::move(r));
    return s;
}

}  // namespace

TEST_CASE("dates") {
    CHECK(parse_date("2012-02-29") == make_date(2012, 2, 29));
    CHECK_THROWS_AS(parse_date("2013-02-29"), InputError);
    CHECK_THROWS_AS(parse_date("2013-2-01"), InputError);
    auto p = parse_partial_date("2009-06");
    CHECK(p.precision == DatePrecision::Month);
    CHECK(p.date == make_date(2009, 6, 1));
    CHECK(format_partial_date(p) == "2009-06");
    CHECK(format_partial_date(parse_partial_date("2007")) == "2007");
    CHECK(days_between(make_date(2011, 1, 1), make_date(2012, 1, 1)) == 365);
}

TEST_CASE("csv reader handles quotes and CRLF") {
    auto rows = csv::read("a,b\r\n\"x,1\",\"say \"\"hi\"\"\"\r\n\r\nlast,\n");
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].fields[0] == "x,1");
    CHECK(rows[1].fields[1] == "say \"hi\"");
    CHECK(rows[2].fields.size() == 2);
    CHECK(rows[2].line == 4);
    CHECK(csv::escape("plain") == "plain");
    CHECK(csv::escape("a\"b") == "\"a\"\"b\"");
    CHECK_THROWS_AS(csv::read("\"open"), InputError);
}

TEST_CASE("mandate classification") {
    auto r = request_record("a");
    r.gold_option = GoldOption::PermittedAlternative;
    CHECK_FALSE(is_mandate(r));
    r.make_item_oa = MakeItemOa::Required;
    CHECK_FALSE(is_mandate(r));
    r.gold_option = GoldOption::Required;
    CHECK(is_mandate(r));
    auto m = mandate_record("b");
    m.gold_option = GoldOption::PermittedAlternative;
    CHECK(is_mandate(m));
    // Monotone in the deposit requirement.
    for (auto gold : enum_values<GoldOption>()) {
        auto lo = request_record("lo");
        lo.gold_option = gold;
        auto hi = lo;
        hi.deposit_of_item = DepositOfItem::Required;
        CHECK((!is_mandate(lo) || is_mandate(hi)));
        CHECK(is_mandate(hi));
    }
}

TEST_CASE("mandate age in years") {
    auto r = mandate_record("x");
    r.adoption_date = PartialDate{make_date(2008, 9, 1), DatePrecision::Day};
    double age = mandate_age(r, make_date(2012, 1, 15));
    CHECK(age == doctest::Approx(static_cast<double>(days_between(make_date(2008, 9, 1), make_date(2012, 1, 15))) /
                                 365.25)
                     .epsilon(1e-15));
    CHECK(age == doctest::Approx(1231.0 / 365.25));
    CHECK(mandate_age(r, make_date(2008, 9, 1)) == 0.0);
    CHECK_THROWS_AS(mandate_age(r, make_date(2008, 8, 31)), InputError);
    r.adoption_date.reset();
    CHECK_THROWS_AS(mandate_age(r, make_date(2012, 1, 1)), InputError);
}

TEST_CASE("consistent fixtures pass validation") {
    CHECK(validate_policy(mandate_record("m")).empty());
    CHECK(validate_policy(request_record("q")).empty());
}

TEST_CASE("V1 deposit waiver without a deposit requirement") {
    auto r = request_record("v1");
    r.deposit_waivable = Waivable::Yes;
    auto v = validate_policy(r);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "V1");
    CHECK(v[0].record_id == "v1");
    CHECK(v[0].field == "deposit_waivable");
}

TEST_CASE("V2 OA waiver without an OA condition") {
    auto r = mandate_record("v2");
    r.make_item_oa = MakeItemOa::NotMentioned;
    CHECK(has_rule(validate_policy(r), "V2"));
    r.oa_waivable = Waivable::NotApplicable;
    CHECK_FALSE(has_rule(validate_policy(r), "V2"));
}

TEST_CASE("V3 rights waiver without a rights arrangement") {
    auto r = mandate_record("v3");
    r.rights_holding = RightsHolding::NotMentioned;
    CHECK(has_rule(validate_policy(r), "V3"));
    r.rights_retention_waivable = Waivable::NotApplicable;
    CHECK(validate_policy(r).empty());
}

TEST_CASE("V4 embargo waiver without an embargo") {
    auto r = mandate_record("v4");
    r.embargo_stem = Embargo::NotSpecified;
    r.embargo_hass = Embargo::NotSpecified;
    CHECK(has_rule(validate_policy(r), "V4"));
    r.embargo_hass = Embargo::Zero;
    CHECK_FALSE(has_rule(validate_policy(r), "V4"));
}

TEST_CASE("D1 date ordering") {
    auto r = mandate_record("d1");
    r.adoption_date = PartialDate{make_date(2010, 5, 1), DatePrecision::Day};
    r.effective_date = PartialDate{make_date(2010, 4, 1), DatePrecision::Day};
    CHECK(has_rule(validate_policy(r), "D1"));
    r.effective_date = PartialDate{make_date(2010, 5, 1), DatePrecision::Day};
    CHECK(validate_policy(r).empty());
    r.last_revision_date = PartialDate{make_date(2009, 1, 1), DatePrecision::Day};
    CHECK(has_rule(validate_policy(r), "D1"));
}

TEST_CASE("validation is a pure function of the record") {
    auto r = mandate_record("p");
    r.deposit_of_item = DepositOfItem::Unspecified;
    auto a = validate_policy(r);
    auto b = validate_policy(r);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].message == b[i].message);
    auto snap = one(r);
    CHECK(validate_snapshot(snap).size() == a.size());
}

TEST_CASE("serialize then parse is the identity") {
    RegistrySnapshot s;
    s.snapshot_date = make_date(2014, 12, 31);
    auto a = mandate_record("a");
    a.policy_url = "http://example.org/policy";
    a.effective_date = PartialDate{make_date(2009, 1, 1), DatePrecision::Year};
    s.records.push_back(a);
    auto b = request_record("b");
    b.adoption_date.reset();
    b.region = Region::Oceania;
    b.policymaker_type = PolicymakerType::Funder;
    s.records.push_back(b);

    auto text = serialize_registry(s);
    auto back = parse_registry(text);
    CHECK(back.snapshot_date == s.snapshot_date);
    REQUIRE(back.records.size() == 2);
    CHECK(back.records[0] == a);
    CHECK(back.records[1] == b);
    CHECK(serialize_registry(back) == text);
    CHECK(back.find("b") != nullptr);
    CHECK(back.find("zzz") == nullptr);
}

TEST_CASE("parse errors name the record, field and value") {
    auto text = serialize_registry(one(mandate_record("rec-7")));
    auto bad_enum = text;
    bad_enum.replace(bad_enum.find("\"europe\""), 8, "\"atlantis\"");
    try {
        parse_registry(bad_enum);
        FAIL("expected an InputError");
    } catch (const InputError& e) {
        std::string msg = e.what();
        CHECK(msg.find("rec-7") != std::string::npos);
        CHECK(msg.find("region") != std::string::npos);
        CHECK(msg.find("atlantis") != std::string::npos);
    }

    auto unknown = text;
    unknown.replace(unknown.find("\"country\""), 9, "\"kountry\"");
    CHECK_THROWS_AS(parse_registry(unknown), InputError);

    RegistrySnapshot dup;
    dup.snapshot_date = make_date(2015, 1, 1);
    dup.records = {mandate_record("x"), mandate_record("x")};
    CHECK_THROWS_WITH_AS(parse_registry(serialize_registry(dup)), doctest::Contains("duplicate"), InputError);
    CHECK_THROWS_AS(parse_registry("{not json"), InputError);
    CHECK_THROWS_AS(parse_registry("{\"records\": []}"), InputError);
}

TEST_CASE("partial dates survive a round trip at their precision") {
    auto r = mandate_record("pd");
    r.adoption_date = PartialDate{make_date(2006, 3, 1), DatePrecision::Month};
    auto back = parse_registry(serialize_registry(one(r)));
    CHECK(back.records[0].adoption_date->precision == DatePrecision::Month);
    CHECK(serialize_registry(back).find("\"2006-03\"") != std::string::npos);
}
