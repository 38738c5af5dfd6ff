#pragma once

// JSON form of a measure:
//   {"atoms":[{"t":2,"w":1}],
//    "segments":[{"lo":0,"hi":"inf",
//                 "density":{"kind":"exp","params":[1,1]},
//                 "exp_lo":0,"exp_hi":"-inf"}]}
// Density kinds: const [c], power [c,a] (c t^a), exp [c,b] (c e^{-bt}),
// expr ["<expression in t>"]. Infinite values are the strings "inf"/"-inf".

#include <filesystem>

#include "json.hpp"

#include "hausdorff/measure.hpp"

namespace hausdorff {

Measure measure_from_json(const nlohmann::json& doc);
nlohmann::json measure_to_json(const Measure& mu);

Measure load_measure(const std::filesystem::path& path);

/// Reads a JSON number or one of the strings "inf", "+inf", "-inf".
double json_extended_number(const nlohmann::json& v, const char* field);

} // namespace hausdorff
