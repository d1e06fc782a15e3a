#include "oapl/corpus/corpus.hpp"

#include <array>

#include "oapl/common/csv.hpp"
#include "oapl/common/error.hpp"

namespace oapl::corpus {
namespace {

constexpr std::array<std::string_view, 8> kColumns = {
    "article_id", "institution_id", "discipline", "wok_date",
    "altmetric_date", "deposit_date", "access_state", "oa_conversion_date"};

std::optional<Date> optional_date(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return parse_date(text);
}

std::string date_or_empty(const std::optional<Date>& d) { return d ? format_date(*d) : std::string(); }

}  // namespace

DepositCorpus parse_corpus(std::string_view text) {
    auto rows = csv::read(text);
    if (rows.empty()) throw InputError("corpus: missing header");

    const auto& header = rows.front().fields;
    for (auto col : kColumns) {
        bool found = false;
        for (const auto& h : header) found = found || h == col;
        if (!found) throw InputError("corpus: missing column '" + std::string(col) + "'");
    }
    if (header.size() != kColumns.size()) {
        throw InputError("corpus: expected header '" + std::string(kCorpusHeader) + "'");
    }
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
        if (header[i] != kColumns[i]) {
            throw InputError("corpus: expected header '" + std::string(kCorpusHeader) + "'");
        }
    }

    DepositCorpus out;
    std::set<std::string> ids;
    std::vector<std::string> problems;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        auto where = "line " + std::to_string(row.line) + ": ";
        if (row.fields.size() != kColumns.size()) {
            problems.push_back(where + "expected " + std::to_string(kColumns.size()) + " fields, got " +
                               std::to_string(row.fields.size()));
            continue;
        }
        try {
            ArticleRecord a;
            a.article_id = row.fields[0];
            a.institution_id = row.fields[1];
            a.discipline = row.fields[2];
            a.wok_date = optional_date(row.fields[3]);
            a.altmetric_date = optional_date(row.fields[4]);
            a.deposit_date = optional_date(row.fields[5]);
            auto state = parse_enum<AccessState>(row.fields[6]);
            if (!state) throw InputError("unknown access_state '" + row.fields[6] + "'");
            a.access_state = *state;
            a.oa_conversion_date = optional_date(row.fields[7]);
            if (auto breach = check_article(a)) throw InputError(*breach);
            if (!ids.insert(a.article_id).second) throw InputError("duplicate article_id '" + a.article_id + "'");
            out.articles.push_back(std::move(a));
        } catch (const InputError& e) {
            problems.push_back(where + e.what());
        }
    }
    if (!problems.empty()) {
        std::string msg = "corpus: " + std::to_string(problems.size()) + " invalid row(s)";
        for (const auto& p : problems) msg += "\n  " + p;
        throw InputError(msg);
    }
    return out;
}

std::string serialize_corpus(const DepositCorpus& corpus) {
    std::string out(kCorpusHeader);
    out += "\n";
    for (const auto& a : corpus.articles) {
        out += csv::join({a.article_id, a.institution_id, a.discipline, date_or_empty(a.wok_date),
                          date_or_empty(a.altmetric_date), date_or_empty(a.deposit_date),
                          std::string(to_string(a.access_state)), date_or_empty(a.oa_conversion_date)});
        out += "\n";
    }
    return out;
}

std::vector<std::string> institutions_of(const DepositCorpus& corpus) {
    std::set<std::string> ids;
    for (const auto& a : corpus.articles) ids.insert(a.institution_id);
    return {ids.begin(), ids.end()};
}

ExclusionResult apply_exclusions(const DepositCorpus& corpus, const registry::RegistrySnapshot& snapshot,
                                 const ExclusionParams& params) {
    if (params.window_first_year > params.window_last_year) {
        throw InputError("exclusion window " + std::to_string(params.window_first_year) + "-" +
                         std::to_string(params.window_last_year) + " is empty");
    }

    ExclusionResult result;
    std::map<std::string, std::size_t> in_window;
    for (const auto& id : institutions_of(corpus)) in_window[id] = 0;
    for (const auto& a : corpus.articles) {
        auto year = publication_year(a);
        if (!year) {
            ++result.report.articles_undated;
        } else if (*year < params.window_first_year || *year > params.window_last_year) {
            ++result.report.articles_outside_window;
        } else {
            ++in_window[a.institution_id];
        }
    }

    std::set<std::string> retained;
    for (const auto& [id, count] : in_window) {
        bool keep = true;
        if (count == 0 && params.min_articles == 0) {
            keep = false;
            result.report.exclusions.push_back({id, "no_articles_in_window", "no datable articles in the window"});
        } else if (count < params.min_articles) {
            keep = false;
            result.report.exclusions.push_back(
                {id, "min_articles",
                 std::to_string(count) + " articles in " + std::to_string(params.window_first_year) + "-" +
                     std::to_string(params.window_last_year) + " (minimum " + std::to_string(params.min_articles) +
                     ")"});
        }
        const auto* policy = snapshot.find(id);
        if (policy && registry::is_mandate(*policy)) {
            if (params.require_ir_locus && policy->locus_of_deposit != registry::LocusOfDeposit::InstitutionalRepository) {
                keep = false;
                result.report.exclusions.push_back(
                    {id, "ir_locus", "locus of deposit is " + std::string(to_string(policy->locus_of_deposit))});
            }
            if (!policy->adoption_date) {
                keep = false;
                result.report.exclusions.push_back({id, "adoption_cutoff", "mandate has no adoption date"});
            } else if (year_of(policy->adoption_date->date) > params.adoption_cutoff_year) {
                keep = false;
                result.report.exclusions.push_back(
                    {id, "adoption_cutoff",
                     "adopted " + format_partial_date(*policy->adoption_date) + ", after " +
                         std::to_string(params.adoption_cutoff_year)});
            }
        }
        if (keep) retained.insert(id);
    }

    for (const auto& a : corpus.articles) {
        if (!retained.count(a.institution_id)) continue;
        auto year = publication_year(a);
        if (year && *year >= params.window_first_year && *year <= params.window_last_year) {
            result.corpus.articles.push_back(a);
        }
    }
    result.institutions.assign(retained.begin(), retained.end());
    return result;
}

}  // namespace oapl::corpus
