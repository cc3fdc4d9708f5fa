#pragma once

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "spectra/error.hpp"
#include "spectra/families.hpp"
#include "spectra/graph.hpp"
#include "spectra/io.hpp"

namespace spectra {

struct GraphInput {
  Graph graph;
  std::optional<BicyclicSpec> spec;  // set for P:, Cmq: and B: inputs
  std::string label;
};

namespace detail {

inline std::vector<int> parse_int_list(std::string_view s, const std::string& whole) {
  std::vector<int> out;
  while (true) {
    const auto comma = s.find(',');
    const auto tok = s.substr(0, comma);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw InvalidInput("malformed integer list in '" + whole + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

inline Graph graph_from_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string first;
  while (std::getline(in, first)) {
    const auto b = first.find_first_not_of(" \t\r");
    if (b != std::string::npos) {
      first = first.substr(b);
      break;
    }
  }
  if (first.empty()) throw InvalidInput(origin + " is empty");
  const bool numeric = std::isdigit(static_cast<unsigned char>(first[0])) && first.find(' ') != std::string::npos;
  if (numeric) return parse_edge_list(text);
  while (!first.empty() && std::isspace(static_cast<unsigned char>(first.back()))) first.pop_back();
  return from_graph6(first);
}

}  // namespace detail

/// Parses a family term ("C:n", "P:m,p,q", "Cmq:m,q", "B:m,p,q",
/// "Dtilde:n", "join:n,alpha"), a path to a graph6 or edge-list file, or a
/// literal graph6 string.
inline GraphInput parse_graph_input(const std::string& arg) {
  const auto colon = arg.find(':');
  if (colon != std::string::npos) {
    const std::string head = arg.substr(0, colon);
    const auto vals = detail::parse_int_list(std::string_view(arg).substr(colon + 1), arg);
    auto need = [&](std::size_t k) {
      if (vals.size() != k)
        throw InvalidInput("'" + head + ":' takes " + std::to_string(k) + " integer(s), got '" + arg + "'");
    };
    GraphInput out;
    out.label = arg;
    try {
      if (head == "C") {
        need(1);
        out.graph = build_cycle(vals[0]);
      } else if (head == "P" || head == "B") {
        need(3);
        out.spec = BicyclicSpec{head == "P" ? Family::P : Family::B, vals[0], vals[1], vals[2]};
        out.graph = build_family(*out.spec);
      } else if (head == "Cmq") {
        need(2);
        out.spec = BicyclicSpec::figure_eight(vals[0], vals[1]);
        out.graph = build_family(*out.spec);
      } else if (head == "Dtilde") {
        need(1);
        out.graph = build_tilde_D(vals[0]);
      } else if (head == "join") {
        need(2);
        out.graph = build_join_extremal(vals[0], vals[1]);
      } else {
        throw InvalidInput("unknown family '" + head + "' in '" + arg + "'");
      }
    } catch (const InvalidParameter& e) {
      throw InvalidInput(std::string("invalid family parameters: ") + e.what());
    }
    return out;
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::ostringstream ss;
    ss << in.rdbuf();
    return {detail::graph_from_text(ss.str(), arg), std::nullopt, arg};
  }
  return {from_graph6(arg), std::nullopt, arg};
}

struct IntRange {
  int lo = 0;
  int hi = 0;
};

// "a..b" or a single integer.
inline IntRange parse_range(const std::string& s) {
  const auto dots = s.find("..");
  auto num = [&s](std::string_view t) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) throw InvalidInput("malformed range '" + s + "'");
    return v;
  };
  IntRange r;
  if (dots == std::string::npos) {
    r.lo = r.hi = num(s);
  } else {
    r.lo = num(std::string_view(s).substr(0, dots));
    r.hi = num(std::string_view(s).substr(dots + 2));
  }
  if (r.hi < r.lo) throw InvalidInput("empty range '" + s + "'");
  return r;
}

// Comma-separated integers and ranges, e.g. "7,8,10..12".
inline std::vector<int> parse_int_set(const std::string& s) {
  std::vector<int> out;
  std::string_view rest(s);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto r = parse_range(std::string(rest.substr(0, comma)));
    for (int v = r.lo; v <= r.hi; ++v) out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (out.empty()) throw InvalidInput("empty list '" + s + "'");
  return out;
}

}  // namespace spectra
