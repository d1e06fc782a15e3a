#include "oapl/corpus/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include <json.hpp>

#include "oapl/common/error.hpp"
#include "oapl/common/random.hpp"

namespace oapl::corpus {
namespace {

using nlohmann::json;

double number_or(const json& obj, const char* key, double fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number()) throw InputError(std::string("synthetic config: '") + key + "' must be a number");
    return it->get<double>();
}

StateProbabilities read_probabilities(const json& obj) {
    if (!obj.is_object()) throw InputError("synthetic config: 'probabilities' must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (key != "not_deposited" && key != "metadata_only" && key != "restricted" && key != "open") {
            throw InputError("synthetic config: unknown access state '" + key + "'");
        }
    }
    return StateProbabilities{number_or(obj, "not_deposited", 0.0), number_or(obj, "metadata_only", 0.0),
                              number_or(obj, "restricted", 0.0), number_or(obj, "open", 0.0)};
}

LatencyModel read_latency(const json& obj, LatencyModel fallback) {
    if (!obj.is_object()) throw InputError("synthetic config: latency model must be an object");
    return LatencyModel{number_or(obj, "mean_months", fallback.mean_months),
                        number_or(obj, "sd_months", fallback.sd_months)};
}

// Applies the keys present in `obj` over `spec`.
void read_behaviour(const json& obj, InstitutionSpec& spec) {
    if (auto it = obj.find("probabilities"); it != obj.end()) spec.probabilities = read_probabilities(*it);
    if (auto it = obj.find("oa_latency"); it != obj.end()) spec.oa_latency = read_latency(*it, spec.oa_latency);
    if (auto it = obj.find("ra_latency"); it != obj.end()) spec.ra_latency = read_latency(*it, spec.ra_latency);
    spec.ra_conversion = number_or(obj, "ra_conversion", spec.ra_conversion);
}

void check_probabilities(const InstitutionSpec& spec) {
    const auto& p = spec.probabilities;
    for (double v : {p.not_deposited, p.metadata_only, p.restricted, p.open}) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InputError("institution '" + spec.id + "': probabilities must lie in [0,1]");
        }
    }
    double total = p.not_deposited + p.metadata_only + p.restricted + p.open;
    if (std::abs(total - 1.0) > 1e-9) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", total);
        throw InputError("institution '" + spec.id + "': state probabilities sum to " + buf + ", not 1");
    }
    if (spec.ra_conversion < 0.0 || spec.ra_conversion > 1.0) {
        throw InputError("institution '" + spec.id + "': ra_conversion must lie in [0,1]");
    }
}

AccessState draw_state(Rng& rng, const StateProbabilities& p) {
    double u = rng.uniform();
    if (u < p.open) return AccessState::OpenAccess;
    u -= p.open;
    if (u < p.restricted) return AccessState::RestrictedAccess;
    u -= p.restricted;
    if (u < p.metadata_only) return AccessState::MetadataOnly;
    return AccessState::NotDeposited;
}

long months_to_days(double months) { return std::lround(months * kDaysPerMonth); }

}  // namespace

SyntheticConfig parse_synthetic_config(std::string_view text) try {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed synthetic config: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("synthetic config must be a JSON object");

    SyntheticConfig cfg;
    if (auto it = doc.find("years"); it != doc.end()) {
        if (!it->is_array() || it->size() != 2) throw InputError("synthetic config: 'years' must be [first, last]");
        cfg.first_year = (*it)[0].get<int>();
        cfg.last_year = (*it)[1].get<int>();
    }
    cfg.altmetric_fraction = number_or(doc, "altmetric_fraction", cfg.altmetric_fraction);
    cfg.conversion_delay_months = number_or(doc, "conversion_delay_months", cfg.conversion_delay_months);
    if (auto it = doc.find("disciplines"); it != doc.end()) {
        cfg.disciplines = it->get<std::vector<std::string>>();
        if (cfg.disciplines.empty()) throw InputError("synthetic config: 'disciplines' must not be empty");
    }

    std::map<std::string, json> profiles;
    if (auto it = doc.find("profiles"); it != doc.end()) {
        for (const auto& [name, body] : it->items()) profiles[name] = body;
    }

    auto insts = doc.find("institutions");
    if (insts == doc.end() || !insts->is_array()) throw InputError("synthetic config: missing 'institutions' array");
    for (const auto& obj : *insts) {
        InstitutionSpec spec;
        spec.id = obj.at("id").get<std::string>();
        spec.articles = obj.at("articles").get<std::size_t>();
        if (auto p = obj.find("profile"); p != obj.end()) {
            auto name = p->get<std::string>();
            auto found = profiles.find(name);
            if (found == profiles.end()) throw InputError("institution '" + spec.id + "': unknown profile '" + name + "'");
            read_behaviour(found->second, spec);
        }
        read_behaviour(obj, spec);
        cfg.institutions.push_back(std::move(spec));
    }
    return cfg;
} catch (const json::exception& e) {
    throw InputError(std::string("synthetic config: ") + e.what());
}

DepositCorpus generate_synthetic(const SyntheticConfig& config, std::uint64_t seed) {
    if (config.first_year > config.last_year) throw InputError("synthetic config: empty year range");
    if (config.disciplines.empty()) throw InputError("synthetic config: no disciplines");
    if (config.conversion_delay_months < 0.0) throw InputError("synthetic config: negative conversion delay");
    for (const auto& spec : config.institutions) {
        if (spec.id.empty()) throw InputError("synthetic config: institution with empty id");
        check_probabilities(spec);
    }

    const Date start = make_date(config.first_year, 1, 1);
    const long span_days = days_between(start, make_date(config.last_year, 12, 31));

    Rng rng(seed);
    DepositCorpus out;
    for (const auto& spec : config.institutions) {
        for (std::size_t k = 0; k < spec.articles; ++k) {
            ArticleRecord a;
            char id[32];
            std::snprintf(id, sizeof id, "-%06zu", k + 1);
            a.article_id = spec.id + id;
            a.institution_id = spec.id;
            a.discipline = config.disciplines[static_cast<std::size_t>(
                rng.integer(0, static_cast<std::int64_t>(config.disciplines.size()) - 1))];

            const Date published = add_days(start, static_cast<long>(rng.integer(0, span_days)));
            a.wok_date = add_days(published, kWokOffsetDays);
            if (rng.bernoulli(config.altmetric_fraction)) a.altmetric_date = published;

            a.access_state = draw_state(rng, spec.probabilities);
            if (a.access_state != AccessState::NotDeposited) {
                const auto& model =
                    a.access_state == AccessState::RestrictedAccess ? spec.ra_latency : spec.oa_latency;
                double latency = rng.normal(model.mean_months, model.sd_months);
                a.deposit_date = add_days(published, months_to_days(latency));
                if (a.access_state == AccessState::OpenAccess && rng.bernoulli(spec.ra_conversion)) {
                    a.oa_conversion_date = add_days(*a.deposit_date, months_to_days(config.conversion_delay_months));
                }
            }
            out.articles.push_back(std::move(a));
        }
    }
    return out;
}

}  // namespace oapl::corpus
