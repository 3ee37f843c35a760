#pragma once

// Command-line front end. `run` is separate from argument parsing so that
// tests can drive every subcommand in-process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sqf/certify.hpp"

namespace sqf::cli {

enum class Format { Text, Json };

struct RunConfig {
    std::string subcommand;
    std::vector<std::string> args;
    std::optional<unsigned long> max_n;
    std::uint64_t prime_bound = kDefaultPrimeBound;
    unsigned long index_cap = kDefaultIndexCap;
    unsigned long terms = 25;
    unsigned long x_bound = 100;
    Format format = Format::Text;
    std::string out;
    unsigned workers = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

const std::vector<std::string>& subcommands();
std::string synopsis();

/// Executes one subcommand. The report goes to `out` (or to config.out when
/// set); diagnostics go to `err`. Returns kExitOk, kExitNegative or kExitUsage.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace sqf::cli
