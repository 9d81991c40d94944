#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "ehsched/multicycle.hpp"
#include "ehsched/types.hpp"

namespace ehsched {

// Parse error carrying "<source>:<line>: <reason>" in what().
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Single-cycle instance text:
//   line 1:      N R N0 alpha beta epsilon S0
//   lines 2..N+1: g_i T_i
// `#` starts a comment; blank lines are skipped. NaN, infinities, and
// out-of-domain values are rejected with a line-numbered ParseError.
Instance parse_instance(std::istream& in, const std::string& source_name);
Instance parse_instance_file(const std::string& path);
std::string format_instance(const Instance& inst);

// Multi-cycle instance text:
//   line 1: Ncycles N K R N0 alpha beta
//   then Ncycles*N lines of g_i T_i
MultiCycleInstance parse_multicycle(std::istream& in,
                                    const std::string& source_name);
MultiCycleInstance parse_multicycle_file(const std::string& path);
std::string format_multicycle(const MultiCycleInstance& mc);

// Shortest round-trip decimal form (17 significant digits).
std::string format_double(double v);

} // namespace ehsched
