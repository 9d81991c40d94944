#include "ehsched/instance_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace ehsched {

namespace {

[[noreturn]] void fail(const std::string& source, int line,
                       const std::string& msg) {
  throw ParseError(source + ":" + std::to_string(line) + ": " + msg);
}

// Content lines with their physical line numbers, comments stripped.
struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    Line line;
    line.number = number;
    std::string tok;
    while (ss >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

double parse_real(const std::string& source, int line, const std::string& tok,
                  const std::string& what) {
  double v = 0.0;
  size_t used = 0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    fail(source, line, what + ": '" + tok + "' is not a number");
  }
  if (used != tok.size())
    fail(source, line, what + ": trailing characters in '" + tok + "'");
  if (!std::isfinite(v))
    fail(source, line, what + " must be finite, got '" + tok + "'");
  return v;
}

int parse_count(const std::string& source, int line, const std::string& tok,
                const std::string& what) {
  const double v = parse_real(source, line, tok, what);
  if (v != std::floor(v) || v < 0.0 || v > 1e9)
    fail(source, line, what + " must be a non-negative integer, got '" + tok +
                           "'");
  return static_cast<int>(v);
}

} // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Instance parse_instance(std::istream& in, const std::string& source_name) {
  const std::vector<Line> lines = tokenize(in);
  if (lines.empty()) fail(source_name, 1, "empty instance file");
  const Line& header = lines[0];
  if (header.tokens.size() != 7)
    fail(source_name, header.number,
         "header must be 'N R N0 alpha beta epsilon S0' (7 values), got " +
             std::to_string(header.tokens.size()));
  Instance inst;
  inst.n_slots = parse_count(source_name, header.number, header.tokens[0], "N");
  inst.rate = parse_real(source_name, header.number, header.tokens[1], "R");
  inst.noise = parse_real(source_name, header.number, header.tokens[2], "N0");
  inst.price_conv =
      parse_real(source_name, header.number, header.tokens[3], "alpha");
  inst.price_renew =
      parse_real(source_name, header.number, header.tokens[4], "beta");
  inst.epsilon =
      parse_real(source_name, header.number, header.tokens[5], "epsilon");
  inst.initial_storage =
      parse_real(source_name, header.number, header.tokens[6], "S0");

  if (inst.n_slots < 1) fail(source_name, header.number, "N must be >= 1");
  if (inst.rate < 0.0) fail(source_name, header.number, "R must be >= 0");
  if (inst.noise <= 0.0) fail(source_name, header.number, "N0 must be > 0");
  if (inst.price_renew <= 0.0)
    fail(source_name, header.number, "beta must be > 0");
  if (inst.price_conv <= inst.price_renew)
    fail(source_name, header.number, "alpha must exceed beta");
  if (inst.epsilon < 0.0 || inst.epsilon >= 1.0)
    fail(source_name, header.number, "epsilon must lie in [0, 1)");
  if (inst.initial_storage < 0.0)
    fail(source_name, header.number, "S0 must be >= 0");

  if (static_cast<int>(lines.size()) != inst.n_slots + 1) {
    const int last = lines.back().number;
    fail(source_name, last,
         "expected " + std::to_string(inst.n_slots) +
             " slot lines after the header, got " +
             std::to_string(lines.size() - 1));
  }
  inst.gains.reserve(inst.n_slots);
  inst.arrivals.reserve(inst.n_slots);
  for (int i = 1; i <= inst.n_slots; ++i) {
    const Line& line = lines[i];
    if (line.tokens.size() != 2)
      fail(source_name, line.number,
           "slot line must be 'g T' (2 values), got " +
               std::to_string(line.tokens.size()));
    const double g = parse_real(source_name, line.number, line.tokens[0], "g");
    const double t = parse_real(source_name, line.number, line.tokens[1], "T");
    if (g <= 0.0) fail(source_name, line.number, "g must be > 0");
    if (t < 0.0) fail(source_name, line.number, "T must be >= 0");
    inst.gains.push_back(g);
    inst.arrivals.push_back(t);
  }
  inst.validate();
  return inst;
}

Instance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return parse_instance(in, path);
}

std::string format_instance(const Instance& inst) {
  std::string out = "# N R N0 alpha beta epsilon S0\n";
  out += std::to_string(inst.n_slots) + " " + format_double(inst.rate) + " " +
         format_double(inst.noise) + " " + format_double(inst.price_conv) +
         " " + format_double(inst.price_renew) + " " +
         format_double(inst.epsilon) + " " +
         format_double(inst.initial_storage) + "\n";
  out += "# g T\n";
  for (int i = 0; i < inst.n_slots; ++i)
    out += format_double(inst.gains[i]) + " " +
           format_double(inst.arrivals[i]) + "\n";
  return out;
}

MultiCycleInstance parse_multicycle(std::istream& in,
                                    const std::string& source_name) {
  const std::vector<Line> lines = tokenize(in);
  if (lines.empty()) fail(source_name, 1, "empty instance file");
  const Line& header = lines[0];
  if (header.tokens.size() != 7)
    fail(source_name, header.number,
         "header must be 'Ncycles N K R N0 alpha beta' (7 values), got " +
             std::to_string(header.tokens.size()));
  MultiCycleInstance mc;
  mc.cycles =
      parse_count(source_name, header.number, header.tokens[0], "Ncycles");
  mc.slots_per_cycle =
      parse_count(source_name, header.number, header.tokens[1], "N");
  mc.drops_per_cycle =
      parse_count(source_name, header.number, header.tokens[2], "K");
  mc.rate = parse_real(source_name, header.number, header.tokens[3], "R");
  mc.noise = parse_real(source_name, header.number, header.tokens[4], "N0");
  mc.price_conv =
      parse_real(source_name, header.number, header.tokens[5], "alpha");
  mc.price_renew =
      parse_real(source_name, header.number, header.tokens[6], "beta");

  if (mc.cycles < 1) fail(source_name, header.number, "Ncycles must be >= 1");
  if (mc.slots_per_cycle < 1)
    fail(source_name, header.number, "N must be >= 1");
  if (mc.drops_per_cycle < 0 || mc.drops_per_cycle > mc.slots_per_cycle)
    fail(source_name, header.number, "K must lie in [0, N]");
  if (mc.rate < 0.0) fail(source_name, header.number, "R must be >= 0");
  if (mc.noise <= 0.0) fail(source_name, header.number, "N0 must be > 0");
  if (mc.price_renew <= 0.0)
    fail(source_name, header.number, "beta must be > 0");
  if (mc.price_conv <= mc.price_renew)
    fail(source_name, header.number, "alpha must exceed beta");

  const int total = mc.total_slots();
  if (static_cast<int>(lines.size()) != total + 1) {
    const int last = lines.back().number;
    fail(source_name, last,
         "expected " + std::to_string(total) +
             " slot lines after the header, got " +
             std::to_string(lines.size() - 1));
  }
  mc.gains.reserve(total);
  mc.arrivals.reserve(total);
  for (int i = 1; i <= total; ++i) {
    const Line& line = lines[i];
    if (line.tokens.size() != 2)
      fail(source_name, line.number,
           "slot line must be 'g T' (2 values), got " +
               std::to_string(line.tokens.size()));
    const double g = parse_real(source_name, line.number, line.tokens[0], "g");
    const double t = parse_real(source_name, line.number, line.tokens[1], "T");
    if (g <= 0.0) fail(source_name, line.number, "g must be > 0");
    if (t < 0.0) fail(source_name, line.number, "T must be >= 0");
    mc.gains.push_back(g);
    mc.arrivals.push_back(t);
  }
  mc.validate();
  return mc;
}

MultiCycleInstance parse_multicycle_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return parse_multicycle(in, path);
}

std::string format_multicycle(const MultiCycleInstance& mc) {
  std::string out = "# Ncycles N K R N0 alpha beta\n";
  out += std::to_string(mc.cycles) + " " + std::to_string(mc.slots_per_cycle) +
         " " + std::to_string(mc.drops_per_cycle) + " " +
         format_double(mc.rate) + " " + format_double(mc.noise) + " " +
         format_double(mc.price_conv) + " " + format_double(mc.price_renew) +
         "\n";
  out += "# g T\n";
  for (int i = 0; i < mc.total_slots(); ++i)
    out += format_double(mc.gains[i]) + " " + format_double(mc.arrivals[i]) +
           "\n";
  return out;
}

} // namespace ehsched
