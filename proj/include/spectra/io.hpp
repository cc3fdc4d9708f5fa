#pragma once

#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "spectra/error.hpp"
#include "spectra/graph.hpp"

namespace spectra {

namespace detail {

inline void graph6_put_order(std::string& out, std::uint64_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
}

template <class BitAt>
std::string graph6_from_bits(int n, BitAt bit_at) {
  std::string out;
  graph6_put_order(out, static_cast<std::uint64_t>(n));
  int acc = 0, count = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (bit_at(i, j) ? 1 : 0);
      if (++count == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = count = 0;
      }
    }
  if (count > 0) out.push_back(static_cast<char>((acc << (6 - count)) + 63));
  return out;
}

}  // namespace detail

inline std::string to_graph6(const Graph& g) {
  return detail::graph6_from_bits(g.order(), [&g](int i, int j) { return g.adjacent(i, j); });
}

inline std::string rows_to_graph6(const std::vector<std::uint64_t>& rows) {
  return detail::graph6_from_bits(static_cast<int>(rows.size()),
                                  [&rows](int i, int j) { return ((rows[i] >> j) & 1U) != 0; });
}

// Accepts an optional ">>graph6<<" header and trailing whitespace.
inline Graph from_graph6(std::string_view s) {
  constexpr std::string_view header = ">>graph6<<";
  if (s.substr(0, header.size()) == header) s.remove_prefix(header.size());
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  if (s.empty()) throw InvalidInput("graph6: empty string");
  for (char c : s)
    if (c < 63 || c > 126) throw InvalidInput("graph6: character out of range");

  std::size_t pos = 0;
  std::uint64_t n = 0;
  auto take = [&](int k) {
    if (pos + k > s.size()) throw InvalidInput("graph6: truncated order field");
    std::uint64_t v = 0;
    for (int i = 0; i < k; ++i) v = (v << 6) | static_cast<std::uint64_t>(s[pos++] - 63);
    return v;
  };
  if (s[0] != 126) {
    n = take(1);
  } else if (s.size() > 1 && s[1] != 126) {
    pos = 1;
    n = take(3);
  } else {
    pos = 2;
    n = take(6);
  }
  if (n > 100000) throw InvalidInput("graph6: order too large");

  const std::uint64_t nbits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::uint64_t nbytes = (nbits + 5) / 6;
  if (s.size() - pos != nbytes) throw InvalidInput("graph6: wrong length for order " + std::to_string(n));

  std::vector<Edge> es;
  std::uint64_t k = 0;
  for (int j = 1; j < static_cast<int>(n); ++j)
    for (int i = 0; i < j; ++i, ++k) {
      const int byte = s[pos + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) es.emplace_back(i, j);
    }
  const int pad = static_cast<int>(nbytes * 6 - nbits);
  if (pad > 0) {
    const int last = s.back() - 63;
    if (last & ((1 << pad) - 1)) throw InvalidInput("graph6: nonzero padding bits");
  }
  return Graph(static_cast<int>(n), es);
}

// "n m" on the first line, then m lines "u v" with 0-based endpoints.
inline std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  os << g.order() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

inline Graph read_edge_list(std::istream& in) {
  long long n = 0, m = 0;
  if (!(in >> n >> m)) throw InvalidInput("edge list: missing header \"n m\"");
  if (n < 1 || m < 0) throw InvalidInput("edge list: bad header");
  std::vector<Edge> es;
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) throw InvalidInput("edge list: expected " + std::to_string(m) + " edges");
    if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidInput("edge list: endpoint out of range");
    es.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  try {
    return Graph(static_cast<int>(n), es);
  } catch (const InvalidParameter& e) {
    throw InvalidInput(std::string("edge list: ") + e.what());
  }
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

}  // namespace spectra
