#pragma once

#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "gnt/geometry.hpp"
#include "gnt/newton.hpp"
#include "gnt/report.hpp"
#include "gnt/variation.hpp"

namespace gnt {

// Configuration parsing. Every malformed input raises ParseError (or
// LimitError / PreconditionError for well-formed but unsupported values).

// Throws ParseError naming the first key of `obj` not in `allowed`.
void require_known_keys(const Json& obj, std::initializer_list<std::string_view> allowed, std::string_view context);

double number_or(const Json& obj, std::string_view key, double fallback);
long long integer_or(const Json& obj, std::string_view key, long long fallback);
std::uint64_t seed_or(const Json& obj, std::uint64_t fallback);

// {"q":2,"m":2,"matrices":[[[..],[..]],[[..],[..]]]}; q and m optional but
// checked when present.
EndoTuple tuple_from_json(const Json& j);

// One m x m matrix per block, rows on lines, entries separated by commas or
// whitespace, blocks separated by blank lines.
EndoTuple tuple_from_csv(std::string_view text);

// JSON when the first non-blank character is '{', CSV otherwise.
EndoTuple tuple_from_text(std::string_view text);

Json to_json(const EndoTuple& a);
Json to_json(const MultiIndex& u);
// {"q","m","sigma":[{"u":[..],"value":..},..]} in graded-lex order
Json to_json(const SigmaTable& sigma);
Json to_json(const Matrix& matrix);

MultiIndex multiindex_from_json(const Json& j, int q);

// componentwise | literal | both
ReadingChoice parse_reading_choice(std::string_view tag);

// {"immersion": name, "params": {...}}
std::shared_ptr<const Immersion> immersion_from_json(const Json& config);

// {"axes":[{"rule":"periodic","n":64}, ...]} or {"n":[..]}; rules, when
// given, must match the immersion's domain. Missing grid: default_counts.
ParamGrid grid_from_json(const Immersion& immersion, const Json& grid);
std::vector<int> default_counts(const Immersion& immersion);

// {"normal":[...], "tangential":[...]} with each entry a number or
// {"constant":c, "terms":[{"coefficient":a,"frequency":[..],"kind":"cos"|"sin"}]},
// or {"random":{"seed":..,"max_frequency":..,"normal_amplitude":..,"tangential_amplitude":..}}.
// Missing field: lambda = 1 in every normal direction, mu = 0.
VariationField field_from_json(const Json& field, int q, int m);
Json to_json(const VariationField& field);

}  // namespace gnt
