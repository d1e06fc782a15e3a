#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "oapl/corpus/article.hpp"
#include "oapl/registry/policy.hpp"

namespace oapl::corpus {

inline constexpr std::string_view kCorpusHeader =
    "article_id,institution_id,discipline,wok_date,altmetric_date,deposit_date,access_state,oa_conversion_date";

// Parses the corpus CSV. Every row is checked; all offending rows are listed
// (by line number) in a single InputError.
DepositCorpus parse_corpus(std::string_view csv_text);

std::string serialize_corpus(const DepositCorpus& corpus);

struct ExclusionParams {
    std::size_t min_articles = 50;
    int adoption_cutoff_year = 2011;
    bool require_ir_locus = true;
    int window_first_year = 2011;
    int window_last_year = 2013;
};

struct Exclusion {
    std::string institution_id;
    std::string rule;  // min_articles, ir_locus, adoption_cutoff or no_articles_in_window
    std::string detail;
};

struct ExclusionReport {
    std::vector<Exclusion> exclusions;
    std::size_t articles_outside_window = 0;
    std::size_t articles_undated = 0;
};

struct ExclusionResult {
    DepositCorpus corpus;                   // articles of retained institutions inside the window
    std::vector<std::string> institutions;  // retained, sorted
    ExclusionReport report;
};

// Drops institutions with fewer than min_articles articles in the window,
// mandates whose locus of deposit is not the institutional repository, and
// mandates adopted after the cutoff year (or with no adoption date).
// Institutions without a policy record are kept as non-mandated comparisons.
ExclusionResult apply_exclusions(const DepositCorpus& corpus, const registry::RegistrySnapshot& snapshot,
                                 const ExclusionParams& params = {});

// Sorted distinct institution ids.
std::vector<std::string> institutions_of(const DepositCorpus& corpus);

}  // namespace oapl::corpus
