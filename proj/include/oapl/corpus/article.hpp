#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oapl/common/date.hpp"
#include "oapl/common/enum_names.hpp"

namespace oapl::corpus {

enum class AccessState { NotDeposited, MetadataOnly, RestrictedAccess, OpenAccess };

struct ArticleRecord {
    std::string article_id;
    std::string institution_id;
    std::string discipline;
    std::optional<Date> wok_date;
    std::optional<Date> altmetric_date;
    std::optional<Date> deposit_date;
    AccessState access_state = AccessState::NotDeposited;
    std::optional<Date> oa_conversion_date;  // RA -> OA transition, when known

    bool deposited() const { return access_state != AccessState::NotDeposited; }
    bool full_text() const {
        return access_state == AccessState::OpenAccess || access_state == AccessState::RestrictedAccess;
    }

    friend bool operator==(const ArticleRecord&, const ArticleRecord&) = default;
};

// Empty when the record satisfies every per-article invariant, otherwise a
// description of the first breach.
std::optional<std::string> check_article(const ArticleRecord& article);

struct DepositCorpus {
    std::vector<ArticleRecord> articles;
};

// Mean Gregorian month and the fixed WoK-to-publication offset (5.26 months).
inline constexpr double kDaysPerMonth = 30.4375;
inline constexpr long kWokOffsetDays = 160;

// Altmetric date when present, otherwise the WoK date less 160 days.
// Throws InputError when neither is recorded.
Date estimated_publication_date(const ArticleRecord& article);

std::optional<Date> try_publication_date(const ArticleRecord& article);

std::optional<int> publication_year(const ArticleRecord& article);

// Signed months from estimated publication to deposit; absent when the article
// has no deposit date or no datable publication.
std::optional<double> deposit_latency_months(const ArticleRecord& article);

enum class LatencyPeriod { BeforePublication, Within6Months, Between6And12, Between12And24, After24Months };

inline constexpr std::size_t kLatencyPeriods = 5;

// Half-open bins: (-inf,0) [0,6) [6,12) [12,24) [24,inf).
LatencyPeriod latency_period(double latency_months);

}  // namespace oapl::corpus

namespace oapl {

template <>
struct EnumNames<corpus::AccessState> {
    using E = corpus::AccessState;
    static constexpr std::array<std::pair<E, std::string_view>, 4> values{{
        {E::NotDeposited, "not_deposited"},
        {E::MetadataOnly, "metadata_only"},
        {E::RestrictedAccess, "restricted"},
        {E::OpenAccess, "open"},
    }};
};

template <>
struct EnumNames<corpus::LatencyPeriod> {
    using E = corpus::LatencyPeriod;
    static constexpr std::array<std::pair<E, std::string_view>, 5> values{{
        {E::BeforePublication, "before_publication"},
        {E::Within6Months, "within_6_months"},
        {E::Between6And12, "between_6_and_12_months"},
        {E::Between12And24, "between_12_and_24_months"},
        {E::After24Months, "after_24_months"},
    }};
};

}  // namespace oapl
