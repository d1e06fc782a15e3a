#include "oapl/corpus/article.hpp"

#include "oapl/common/error.hpp"

namespace oapl::corpus {

std::optional<std::string> check_article(const ArticleRecord& a) {
    if (a.article_id.empty()) return "article_id is empty";
    if (a.institution_id.empty()) return "institution_id is empty";
    if (a.access_state == AccessState::NotDeposited && a.deposit_date) {
        return "deposit_date present on a not_deposited article";
    }
    if (a.access_state != AccessState::NotDeposited && !a.deposit_date) {
        return "deposit_date missing on a " + std::string(to_string(a.access_state)) + " article";
    }
    if (a.oa_conversion_date) {
        if (a.access_state != AccessState::OpenAccess) return "oa_conversion_date present on a non-open article";
        if (days_between(*a.deposit_date, *a.oa_conversion_date) < 0) {
            return "oa_conversion_date precedes deposit_date";
        }
    }
    if (a.deposited() && !a.wok_date && !a.altmetric_date) {
        return "deposited article has neither wok_date nor altmetric_date";
    }
    return std::nullopt;
}

std::optional<Date> try_publication_date(const ArticleRecord& a) {
    if (a.altmetric_date) return a.altmetric_date;
    if (a.wok_date) return add_days(*a.wok_date, -kWokOffsetDays);
    return std::nullopt;
}

Date estimated_publication_date(const ArticleRecord& a) {
    auto d = try_publication_date(a);
    if (!d) throw InputError("article '" + a.article_id + "' has neither altmetric_date nor wok_date");
    return *d;
}

std::optional<int> publication_year(const ArticleRecord& a) {
    auto d = try_publication_date(a);
    if (!d) return std::nullopt;
    return year_of(*d);
}

std::optional<double> deposit_latency_months(const ArticleRecord& a) {
    if (!a.deposit_date) return std::nullopt;
    auto pub = try_publication_date(a);
    if (!pub) return std::nullopt;
    return static_cast<double>(days_between(*pub, *a.deposit_date)) / kDaysPerMonth;
}

LatencyPeriod latency_period(double m) {
    if (m < 0.0) return LatencyPeriod::BeforePublication;
    if (m < 6.0) return LatencyPeriod::Within6Months;
    if (m < 12.0) return LatencyPeriod::Between6And12;
    if (m < 24.0) return LatencyPeriod::Between12And24;
    return LatencyPeriod::After24Months;
}

}  // namespace oapl::corpus
