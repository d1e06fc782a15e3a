#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace oapl {

// Specialise with `static constexpr std::array<std::pair<E, std::string_view>, N> values`
// listing every enumerator with its wire name.
template <typename E>
struct EnumNames;

template <typename E>
constexpr std::string_view to_string(E value) {
    for (const auto& [v, name] : EnumNames<E>::values) {
        if (v == value) return name;
    }
    return "?";
}

template <typename E>
constexpr std::optional<E> parse_enum(std::string_view text) {
    for (const auto& [v, name] : EnumNames<E>::values) {
        if (name == text) return v;
    }
    return std::nullopt;
}

template <typename E>
constexpr auto enum_values() {
    std::array<E, EnumNames<E>::values.size()> out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = EnumNames<E>::values[i].first;
    return out;
}

}  // namespace oapl
