#include "nlft/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nlft/errors.hpp"

namespace nlft {

using nlohmann::json;

namespace {

long long integer_field(const json& j, const char* key) {
    const std::string path = std::string("/") + key;
    if (!j.contains(key)) throw ParseError(path, "missing field");
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
    return v.get<long long>();
}

}  // namespace

StepFunction step_function_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("", "expected a JSON object");
    const long long d = integer_field(j, "d");
    if (d < 2 || d > 1 << 20) throw ParseError("/d", "radix must be an integer >= 2");
    const long long cell = integer_field(j, "cell_exponent");
    const long long support = integer_field(j, "support_exponent");
    if (std::llabs(cell) > 64 || std::llabs(support) > 64) throw ParseError("/cell_exponent", "exponent out of range");
    if (!j.contains("values")) throw ParseError("/values", "missing field");
    const auto& vals = j.at("values");
    if (!vals.is_array()) throw ParseError("/values", "expected an array of [re, im] pairs");
    std::vector<cplx> values;
    values.reserve(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const auto& v = vals[i];
        const std::string path = "/values/" + std::to_string(i);
        if (!v.is_array() || v.size() != 2) throw ParseError(path, "expected a [re, im] pair");
        for (std::size_t c = 0; c < 2; ++c)
            if (!v[c].is_number()) throw ParseError(path + "/" + std::to_string(c), "expected a number");
        values.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    if (cell + support < 0) throw ParseError("/support_exponent", "support_exponent + cell_exponent must be >= 0");
    u64 expected = 0;
    try {
        expected = ipow(static_cast<u64>(d), static_cast<unsigned>(cell + support));
    } catch (const InputTooLarge&) {
        throw ParseError("/values", "d^(support_exponent + cell_exponent) overflows");
    }
    if (values.size() != expected)
        throw ParseError("/values", "expected d^(support_exponent + cell_exponent) = " + std::to_string(expected) +
                                        " values, got " + std::to_string(values.size()));
    try {
        return StepFunction(static_cast<unsigned>(d), static_cast<int>(cell), static_cast<int>(support),
                            std::move(values));
    } catch (const std::exception& e) {
        throw ParseError("/values", e.what());
    }
}

StepFunction parse_function_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("", "cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError("", path.string() + ": " + e.what());
    }
    return step_function_from_json(j);
}

json to_json(const StepFunction& f) {
    json values = json::array();
    for (const auto& v : f.values()) values.push_back({v.real(), v.imag()});
    return {{"d", f.radix()},
            {"cell_exponent", f.cell_exponent()},
            {"support_exponent", f.support_exponent()},
            {"values", std::move(values)}};
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_top_layer_csv(std::ostream& os, const TileLayer& top, unsigned d, int support_exponent) {
    if (top.columns != 1) throw InvalidArgument("top-layer CSV needs a single-column layer");
    os << kTopLayerCsvVersion << " d=" << d << " support_exponent=" << support_exponent << '\n';
    os << "xi_num,xi_scale,re_a,im_a,re_b,im_b,abs_a,abs_b,size\n";
    for (std::size_t k = 0; k < top.rows; ++k) {
        const auto xi = grid_frequency(d, support_exponent, k);
        const Su11& g = top.tiles[k];
        os << xi.numerator() << ',' << xi.scale();
        for (double v : {g.a.real(), g.a.imag(), g.b.real(), g.b.imag(), std::abs(g.a), std::abs(g.b), size(g)})
            os << ',' << format_double(v);
        os << '\n';
    }
}

json to_json(const Su11& g) { return json::array({g.a.real(), g.a.imag(), g.b.real(), g.b.imag()}); }

json to_json(const CheckStats& s) {
    json witness = json::array();
    for (const auto& g : s.witness) witness.push_back(to_json(g));
    return {{"name", s.name},         {"p", s.p},
            {"checks", s.checks},     {"skipped", s.skipped},
            {"violations", s.violations}, {"max_ratio", s.max_ratio},
            {"witness", std::move(witness)}};
}

json to_json(const ScaleReport& r) {
    return {{"schema_version", kSchemaVersion},
            {"p", r.p},
            {"q", std::isinf(r.q) ? json("inf") : json(r.q)},
            {"scales", r.scales},
            {"values", r.values},
            {"monotone", r.monotone},
            {"max_violation", r.max_violation}};
}

json to_json(const RatioReport& r) {
    return {{"schema_version", kSchemaVersion}, {"p_grid", r.p_grid},
            {"ratios", r.ratios},               {"sup_ratio", r.sup_ratio},
            {"theoretical_cap", r.theoretical_cap}, {"within_cap", r.within_cap}};
}

json to_json(const SwapFuzzReport& r) {
    json per_p = json::array();
    for (const auto& s : r.per_p) per_p.push_back(to_json(s));
    return {{"schema_version", kSchemaVersion},
            {"kind", "swap"},
            {"d", r.d},
            {"regime", std::string(to_string(r.regime))},
            {"trials", r.trials},
            {"seed", r.seed},
            {"violations", r.violations()},
            {"per_p", std::move(per_p)}};
}

json to_json(const CaseLemmaReport& r) {
    json checks = json::array();
    for (const auto& s : r.checks) checks.push_back(to_json(s));
    return {{"schema_version", kSchemaVersion},
            {"kind", "case-lemmas"},
            {"d", r.d},
            {"trials_per_case", r.trials},
            {"seed", r.seed},
            {"violations", r.violations()},
            {"checks", std::move(checks)}};
}

bool all_finite(const json& j) {
    if (j.is_number_float()) return std::isfinite(j.get<double>());
    if (j.is_structured()) {
        for (const auto& v : j) // objects iterate over values
            if (!all_finite(v)) return false;
    }
    return true;
}

}  // namespace nlft
