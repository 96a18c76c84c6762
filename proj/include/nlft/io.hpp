#pragma once

// File formats:
//   step function (JSON)  {"d", "cell_exponent", "support_exponent", "values": [[re, im], ...]}
//   top layer (CSV)       xi_num,xi_scale,re_a,im_a,re_b,im_b,abs_a,abs_b,size
//   reports (JSON)        every object carries "schema_version"

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "nlft/audit.hpp"
#include "nlft/engine.hpp"

namespace nlft {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kTopLayerCsvVersion = "# nlft-top-layer v1";

// Throws ParseError naming the offending field.
StepFunction step_function_from_json(const nlohmann::json& j);
StepFunction parse_function_file(const std::filesystem::path& path);
nlohmann::json to_json(const StepFunction& f);

// Versioned comment line, column header, one row per grid frequency.
void write_top_layer_csv(std::ostream& os, const TileLayer& top, unsigned d, int support_exponent);

// Shortest round-trip decimal for a double ("%.17g").
std::string format_double(double x);

nlohmann::json to_json(const Su11& g);  // [re_a, im_a, re_b, im_b]
nlohmann::json to_json(const CheckStats& s);
nlohmann::json to_json(const ScaleReport& r);
nlohmann::json to_json(const RatioReport& r);
nlohmann::json to_json(const SwapFuzzReport& r);
nlohmann::json to_json(const CaseLemmaReport& r);

// True iff every number in the document is finite.
bool all_finite(const nlohmann::json& j);

}  // namespace nlft
