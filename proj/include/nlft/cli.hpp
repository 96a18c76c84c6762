#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nlft {

struct RunConfig {
    std::string command;       // transform | oracle-check | plancherel | hy-scan | scale | bellman | fuzz
    unsigned d = 2;
    int nx = 2;                // support exponent of generated functions
    int nxi = 2;               // frequency exponent
    int cell_exponent = 0;     // cell exponent of generated functions
    std::uint64_t seed = 42;
    std::uint64_t trials = 10000;
    std::vector<double> p_grid;  // empty: command default
    std::string input;         // step function JSON; empty: random function from seed
    std::string output;        // empty: stdout
    std::string format = "json";  // csv | json
    unsigned threads = 1;
    std::string regime = "mixed";  // fuzz: case1 | case2 | case3 | mixed
    std::string fuzz_kind = "swap";  // fuzz: swap | cases
};

// Throws InvalidArgument describing the first bad field.
void validate(const RunConfig& config);

// "1.5,2" -> {1.5, 2}; throws InvalidArgument on malformed entries.
std::vector<double> parse_p_grid(const std::string& text);

// Runs one command. Returns 0 iff every asserted inequality held and every
// emitted number is finite; 1 on an assertion failure; 2 on bad input.
// Reports go to config.output (or `out`); diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace nlft
