#include "nlft/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nlft/audit.hpp"
#include "nlft/errors.hpp"
#include "nlft/io.hpp"

namespace nlft {

using nlohmann::json;

namespace {

constexpr double kOracleTolerance = 1e-9;
constexpr double kDriftTolerance = 1e-9;

const char* const kCommands[] = {"transform", "oracle-check", "plancherel", "hy-scan", "scale", "bellman", "fuzz"};

StepFunction load_function(const RunConfig& c, bool real_valued = false) {
    if (!c.input.empty()) return parse_function_file(c.input);
    Rng rng(derive_seed(c.seed, 0, 0xf));
    return random_step_function(c.d, c.cell_exponent, c.nx, 1.0, rng, real_valued);
}

bool is_real(const StepFunction& f) {
    for (const auto& v : f.values())
        if (v.imag() != 0.0) return false;
    return true;
}

std::vector<double> grid_or(const RunConfig& c, std::vector<double> fallback) {
    return c.p_grid.empty() ? fallback : c.p_grid;
}

struct Emitted {
    std::string text;
    bool finite = true;
};

Emitted emit_json(const json& j) { return {j.dump(2) + "\n", all_finite(j)}; }

// One CSV row per element of `rows`, each row an array of scalars.
Emitted emit_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows,
                 const std::string& version_line) {
    std::ostringstream os;
    bool finite = true;
    os << version_line << '\n';
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            finite = finite && std::isfinite(row[i]);
            os << (i ? "," : "") << format_double(row[i]);
        }
        os << '\n';
    }
    return {os.str(), finite};
}

double max_drift(const TileLayer& layer) {
    double m = 0.0;
    for (const auto& g : layer.tiles) m = std::max(m, std::abs(g.constraint_residual()));
    return m;
}

struct Outcome {
    Emitted report;
    bool held = true;
    std::string failure;
};

Outcome cmd_transform(const RunConfig& c) {
    const auto f = load_function(c);
    const auto top = transform_top(f, c.nxi, c.threads);
    Outcome o;
    if (c.format == "csv") {
        std::ostringstream os;
        write_top_layer_csv(os, top, f.radix(), f.support_exponent());
        o.report.text = os.str();
        for (const auto& g : top.tiles)
            for (double v : {g.a.real(), g.a.imag(), g.b.real(), g.b.imag()}) o.report.finite &= std::isfinite(v);
    } else {
        json rows = json::array();
        for (std::size_t k = 0; k < top.rows; ++k) {
            const auto xi = grid_frequency(f.radix(), f.support_exponent(), k);
            const auto& g = top.tiles[k];
            rows.push_back({{"xi_num", xi.numerator()}, {"xi_scale", xi.scale()}, {"G", to_json(g)}, {"size", size(g)}});
        }
        o.report = emit_json({{"schema_version", kSchemaVersion},
                              {"d", f.radix()},
                              {"support_exponent", f.support_exponent()},
                              {"freq_exponent", c.nxi},
                              {"max_constraint_drift", max_drift(top)},
                              {"top_layer", std::move(rows)}});
    }
    const double drift = max_drift(top);
    if (!(drift <= kDriftTolerance)) {
        o.held = false;
        o.failure = "constraint drift " + format_double(drift) + " exceeds " + format_double(kDriftTolerance);
    }
    return o;
}

Outcome cmd_oracle_check(const RunConfig& c) {
    const auto f = load_function(c);
    const auto pyramid = transform(f, c.nxi, c.threads);
    double worst = 0.0;
    std::uint64_t tiles = 0;
    json witness = nullptr;
    for (const auto& layer : pyramid.layers()) {
        for (std::size_t col = 0; col < layer.columns; ++col)
            for (std::size_t row = 0; row < layer.rows; ++row) {
                const Tile tile = pyramid.tile(layer.scale, col, row);
                const Su11 ref = direct_oracle(f, c.nxi, tile.freq().left(), tile.time());
                const Su11& got = layer.at(col, row);
                const double err = std::max(std::abs(ref.a - got.a), std::abs(ref.b - got.b));
                ++tiles;
                if (err > worst || witness.is_null()) {
                    worst = std::max(worst, err);
                    witness = {{"scale", layer.scale}, {"column", col}, {"row", row},
                               {"butterfly", to_json(got)}, {"oracle", to_json(ref)}};
                }
            }
    }
    Outcome o;
    o.held = worst <= kOracleTolerance;
    if (!o.held) o.failure = "butterfly/oracle mismatch " + format_double(worst);
    o.report = emit_json({{"schema_version", kSchemaVersion},
                          {"d", f.radix()},
                          {"support_exponent", f.support_exponent()},
                          {"freq_exponent", c.nxi},
                          {"tiles_checked", tiles},
                          {"max_entry_error", worst},
                          {"tolerance", kOracleTolerance},
                          {"pass", o.held},
                          {"worst_tile", witness}});
    return o;
}

Outcome cmd_plancherel(const RunConfig& c) {
    const auto f = load_function(c, true);
    // sign asserted only for real f at d = 2
    const bool nonneg_asserted = f.radix() == 2 && is_real(f);
    const auto table = plancherel_table(f, std::max(-f.support_exponent(), std::min(0, c.nxi)), c.nxi, c.threads);
    Outcome o;
    double prev = kInfinity;
    for (const auto& r : table) {
        if (nonneg_asserted && r.defect < -1e-10) {
            o.held = false;
            o.failure = "negative defect at freq_exponent " + std::to_string(r.freq_exponent);
        }
        if (r.defect > prev + 1e-12) {
            o.held = false;
            o.failure = "defect increased at freq_exponent " + std::to_string(r.freq_exponent);
        }
        prev = r.defect;
    }
    if (c.format == "csv") {
        std::vector<std::vector<double>> rows;
        for (const auto& r : table) rows.push_back({static_cast<double>(r.freq_exponent), r.energy, r.captured, r.defect});
        o.report = emit_csv({"freq_exponent", "energy", "captured", "defect"}, rows, "# nlft-plancherel v1");
    } else {
        json rows = json::array();
        for (const auto& r : table)
            rows.push_back({{"freq_exponent", r.freq_exponent}, {"captured", r.captured}, {"defect", r.defect}});
        o.report = emit_json({{"schema_version", kSchemaVersion},
                              {"d", f.radix()},
                              {"energy", table.front().energy},
                              {"nonnegativity_asserted", nonneg_asserted},
                              {"table", std::move(rows)},
                              {"pass", o.held}});
    }
    return o;
}

Outcome cmd_hy_scan(const RunConfig& c) {
    const auto f = load_function(c);
    const auto bf = solve_threshold(f.radix());
    auto grid = default_p_grid();
    grid.insert(grid.begin(), 1.0);
    const auto report = hy_ratio_scan(f, c.nxi, bf, grid_or(c, grid), c.threads);
    Outcome o;
    o.held = report.within_cap;
    if (!o.held) o.failure = "Hausdorff-Young ratio " + format_double(report.sup_ratio) + " exceeds the cap";
    if (c.format == "csv") {
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < report.p_grid.size(); ++i) rows.push_back({report.p_grid[i], report.ratios[i]});
        o.report = emit_csv({"p", "ratio"}, rows,
                            "# nlft-hy-scan v1 cap=" + format_double(report.theoretical_cap));
    } else {
        o.report = emit_json(to_json(report));
    }
    return o;
}

Outcome cmd_scale(const RunConfig& c) {
    const auto f = load_function(c);
    const auto bf = solve_threshold(f.radix());
    const auto pyramid = transform(f, c.nxi, c.threads);
    Outcome o;
    json reports = json::array();
    std::vector<std::vector<double>> rows;
    for (double p : grid_or(c, {1.0, 1.01, 1.2, 1.5, 1.8, 2.0})) {
        const auto r = scale_functional(pyramid, bf, ConjugatePair(p));
        const auto chain = chain_bounds(pyramid, r, f, bf);
        // p = 1 is reported but not asserted.
        const bool asserted = p > 1.0;
        const bool chain_ok = chain.base_value <= chain.base_bound * (1 + kSlack) &&
                              chain.top_mean <= chain.top_bound * (1 + kSlack);
        if (asserted && !(r.monotone && chain_ok)) {
            o.held = false;
            o.failure = "scale functional check failed at p = " + format_double(p);
        }
        auto j = to_json(r);
        j["asserted"] = asserted;
        j["chain"] = {{"base_value", chain.base_value}, {"base_bound", chain.base_bound},
                      {"top_mean", chain.top_mean},     {"top_bound", chain.top_bound}};
        reports.push_back(std::move(j));
        for (std::size_t i = 0; i < r.values.size(); ++i)
            rows.push_back({p, static_cast<double>(r.scales[i]), r.values[i]});
    }
    if (c.format == "csv")
        o.report = emit_csv({"p", "scale", "B"}, rows, "# nlft-scale v1");
    else
        o.report = emit_json({{"schema_version", kSchemaVersion}, {"d", f.radix()}, {"reports", std::move(reports)}});
    return o;
}

Outcome cmd_bellman(const RunConfig& c) {
    const auto a = audit_bellman(c.d);
    Outcome o;
    o.held = a.ok();
    if (!o.held) o.failure = "beta_d property check failed for d = " + std::to_string(c.d);
    json j = {{"schema_version", kSchemaVersion},
              {"d", a.d},
              {"threshold", a.threshold},
              {"residual", a.residual},
              {"threshold_lower_bound", a.lower_bound},
              {"threshold_upper_bound", a.upper_bound},
              {"threshold_ok", a.threshold_ok()},
              {"grid_points", a.points},
              {"sandwich_violations", a.sandwich_violations},
              {"small_t_violations", a.small_t_violations},
              {"upper_branch_violations", a.upper_branch_violations},
              {"continuity_gap", a.continuity_gap},
              {"pass", o.held}};
    if (c.format == "csv") {
        o.report = emit_csv({"d", "threshold", "residual", "lower_bound", "upper_bound", "continuity_gap"},
                            {{static_cast<double>(a.d), a.threshold, a.residual, a.lower_bound, a.upper_bound,
                              a.continuity_gap}},
                            "# nlft-bellman v1");
    } else {
        o.report = emit_json(j);
    }
    return o;
}

std::vector<std::vector<double>> stats_rows(const std::vector<CheckStats>& all, const RunConfig& c) {
    std::vector<std::vector<double>> rows;
    for (const auto& s : all)
        rows.push_back({static_cast<double>(c.d), s.p, static_cast<double>(s.checks), static_cast<double>(s.skipped),
                        static_cast<double>(s.violations), s.max_ratio});
    return rows;
}

Outcome cmd_fuzz(const RunConfig& c) {
    const auto grid = grid_or(c, default_p_grid());
    Outcome o;
    json j;
    std::vector<CheckStats> stats;
    std::uint64_t violations = 0;
    if (c.fuzz_kind == "swap") {
        const auto r = fuzz_swap_inequality(c.d, parse_regime(c.regime), c.trials, c.seed, grid, c.threads);
        j = to_json(r);
        stats = r.per_p;
        violations = r.violations();
    } else {
        const auto r = fuzz_case_lemmas(c.d, c.trials, c.seed, grid, c.threads);
        j = to_json(r);
        stats = r.checks;
        violations = r.violations();
    }
    o.held = violations == 0;
    if (!o.held) o.failure = std::to_string(violations) + " violations";
    if (c.format == "csv") {
        // Inequality names are not numeric; prefix them to each row.
        std::ostringstream os;
        os << "# nlft-fuzz v1 kind=" << c.fuzz_kind << " regime=" << c.regime << " seed=" << c.seed << '\n';
        os << "inequality,d,p,regime,checks,skipped,violations,max_ratio\n";
        const auto rows = stats_rows(stats, c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::string regime = c.fuzz_kind == "swap" ? c.regime : stats[i].name.substr(0, 5);
            os << (c.fuzz_kind == "swap" ? "swap" : stats[i].name) << ',' << c.d << ','
               << format_double(c.fuzz_kind == "swap" ? std::stod(stats[i].name.substr(2)) : rows[i][1]) << ','
               << regime << ',' << stats[i].checks << ',' << stats[i].skipped << ',' << stats[i].violations << ','
               << format_double(stats[i].max_ratio) << '\n';
            o.report.finite = o.report.finite && std::isfinite(stats[i].max_ratio);
        }
        o.report.text = os.str();
    } else {
        o.report = emit_json(j);
    }
    return o;
}

}  // namespace

std::vector<double> parse_p_grid(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double p = 0.0;
        try {
            p = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw InvalidArgument("bad p-grid entry '" + item + "'");
        out.push_back(p);
    }
    if (out.empty()) throw InvalidArgument("empty p-grid");
    return out;
}

void validate(const RunConfig& c) {
    bool known = false;
    for (const char* cmd : kCommands) known = known || c.command == cmd;
    if (!known) throw InvalidArgument("unknown command '" + c.command + "'");
    if (c.d < 2) throw InvalidArgument("--d must be at least 2");
    if (c.nx < 0 || c.nx > 40) throw InvalidArgument("--nx must lie in [0, 40]");
    if (c.nxi < 0 || c.nxi > 40) throw InvalidArgument("--nxi must lie in [0, 40]");
    if (c.input.empty() && c.command != "plancherel" && c.nxi < c.cell_exponent) throw InvalidArgument("--nxi must be >= --cell-exponent");
    if (c.format != "csv" && c.format != "json") throw InvalidArgument("--format must be csv or json");
    if (c.threads < 1) throw InvalidArgument("--threads must be at least 1");
    if (c.command == "fuzz") {
        if (c.trials < 1) throw InvalidArgument("--trials must be at least 1");
        if (c.fuzz_kind != "swap" && c.fuzz_kind != "cases") throw InvalidArgument("--kind must be swap or cases");
        parse_regime(c.regime);
        for (double p : c.p_grid)
            if (!(p > 1.0 && p <= 2.0)) throw InvalidArgument("fuzz p-grid entries must lie in (1, 2]");
    }
    for (double p : c.p_grid)
        if (!(p >= 1.0 && p <= 2.0)) throw InvalidArgument("p-grid entries must lie in [1, 2]");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    Outcome o;
    try {
        validate(config);
        if (config.command == "transform") o = cmd_transform(config);
        else if (config.command == "oracle-check") o = cmd_oracle_check(config);
        else if (config.command == "plancherel") o = cmd_plancherel(config);
        else if (config.command == "hy-scan") o = cmd_hy_scan(config);
        else if (config.command == "scale") o = cmd_scale(config);
        else if (config.command == "bellman") o = cmd_bellman(config);
        else o = cmd_fuzz(config);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    if (config.output.empty()) {
        out << o.report.text;
    } else {
        std::ofstream file(config.output, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << config.output << '\n';
            return 2;
        }
        file << o.report.text;
    }
    if (!o.report.finite) {
        err << "error: report contains non-finite numbers\n";
        return 1;
    }
    if (!o.held) {
        err << "assertion failed: " << o.failure << '\n';
        return 1;
    }
    return 0;
}

}  // namespace nlft
