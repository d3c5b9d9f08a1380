#pragma once

// Command-line front end. Every subcommand is a thin adapter over the core
// library; run() is separated from main() so tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rnacci/bounds.hpp"
#include "rnacci/identities.hpp"
#include "rnacci/solver.hpp"

namespace rnacci::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

using Json = nlohmann::ordered_json;

/// args excludes the program name. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "A..B" (inclusive) or a single "A". Throws std::invalid_argument on malformed input.
std::pair<int, int> parse_range(const std::string& text);

/// Exact rational from "p/q", a decimal, or scientific notation ("1e-6", "2.5E-3").
mpq_class parse_rational(const std::string& text);

/// Round to 15 significant digits.
double round_significant15(double x);

Json to_json(int k, int d, const Solution& s);
Json to_json(const BoundRow& row);
Json to_json(const VerificationReport& report);
Json to_json(const PhiApprox& phi);

std::string bounds_csv(const std::vector<BoundRow>& rows);

/// The published table of m-bounds for 2 <= k <= 5, 1 <= d <= 10, indexed [k-2][d-1].
const std::vector<std::vector<std::int64_t>>& published_m_bounds();

}  // namespace rnacci::cli
