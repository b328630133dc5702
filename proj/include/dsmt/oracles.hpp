#pragma once

// Independent counting paths for D^Theta: exhaustive monotone-function
// enumeration, the Kisielewicz-Tombak explicit sum, and storage estimates.
// Nothing here reuses the recursive generator.

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsmt/errors.hpp"
#include "dsmt/hyperpowerset.hpp"

namespace dsmt::oracles {

inline constexpr unsigned kMaxBruteForceAtoms = 4;
inline constexpr unsigned kMaxFormulaAtoms = 4;
inline constexpr unsigned kMaxFormulaAtomsLongRunning = 5;
inline constexpr unsigned kMaxReportAtoms = 8;

/// Truth table over all 2^n inputs: bit x <=> f(x), where input x has x_i = bit (i-1).
using TruthTable = std::uint64_t;

struct MbfEnumeration {
  std::uint64_t count = 0;
  std::vector<TruthTable> tables;  // ascending by table value
};

/// True iff raising any single input bit from 0 to 1 never lowers the output.
inline bool is_monotone_table(TruthTable table, unsigned n) {
  const std::uint64_t inputs = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < inputs; ++x) {
    if (!((table >> x) & 1U)) continue;
    for (unsigned i = 0; i < n; ++i) {
      const std::uint64_t up = x | (std::uint64_t{1} << i);
      if (!((table >> up) & 1U)) return false;
    }
  }
  return true;
}

/// Enumerates all 2^(2^n) Boolean functions and keeps the monotone ones.
inline MbfEnumeration brute_force_mbf(unsigned n) {
  if (n > kMaxBruteForceAtoms) {
    const BigInt candidates = BigInt(1) << (1U << n);
    throw CapacityError("brute-force enumeration limited to n <= 4", candidates.str() + " candidate tables",
                        "n/a");
  }
  MbfEnumeration out;
  const std::uint64_t candidates = std::uint64_t{1} << (1U << n);
  for (std::uint64_t t = 0; t < candidates; ++t)
    if (is_monotone_table(t, n)) out.tables.push_back(t);
  out.count = out.tables.size();
  return out;
}

/// Brute-force tables with f(0...0) = 0, restricted to the nonzero inputs:
/// bit (r-1) of each result is f(r), the Venn-mask form.
inline std::vector<std::uint64_t> isotone_masks(const MbfEnumeration& e) {
  std::vector<std::uint64_t> masks;
  for (TruthTable t : e.tables)
    if (!(t & 1U)) masks.push_back(t >> 1);
  return masks;
}

namespace detail {

/// b_i^k = [k / 2^i] - 2 [k / 2^(i+1)].
inline std::int64_t b(std::uint64_t i, std::uint64_t k) {
  return static_cast<std::int64_t>(k / (std::uint64_t{1} << i)) -
         2 * static_cast<std::int64_t>(k / (std::uint64_t{1} << (i + 1)));
}

/// l(0) = 0, l(i) = [log2 i].
inline std::uint64_t l(std::uint64_t i) { return i == 0 ? 0 : static_cast<std::uint64_t>(std::bit_width(i) - 1); }

inline std::int64_t indicator(std::int64_t v) {
  if (v != 0 && v != 1) throw std::logic_error("Kisielewicz factor left {0, 1}");
  return v;
}

}  // namespace detail

/// d(n) = sum_{k=1}^{2^(2^n)} prod_{j=1}^{2^n-1} prod_{i=0}^{j-1}
///          (1 - b_i^k (1 - b_j^k) prod_{m=0}^{l(i)} (1 - b_m^i (1 - b_m^j))).
/// Every factor and summand is checked to be 0 or 1. n = 5 takes 2^32 terms and
/// must be requested explicitly.
inline BigInt kisielewicz_d(unsigned n, bool allow_long_running = false) {
  const unsigned cap = allow_long_running ? kMaxFormulaAtomsLongRunning : kMaxFormulaAtoms;
  if (n > cap) {
    const BigInt terms = BigInt(1) << (1U << n);
    throw CapacityError("explicit formula limited to n <= " + std::to_string(cap), terms.str() + " summands", "n/a");
  }
  const std::uint64_t top_k = std::uint64_t{1} << (1U << n);
  const std::uint64_t top_j = (std::uint64_t{1} << n) - 1;
  BigInt total = 0;
  for (std::uint64_t k = 1; k <= top_k; ++k) {
    std::int64_t summand = 1;
    for (std::uint64_t j = 1; j <= top_j && summand != 0; ++j) {
      for (std::uint64_t i = 0; i < j && summand != 0; ++i) {
        std::int64_t inner = 1;
        for (std::uint64_t m = 0; m <= detail::l(i); ++m)
          inner *= detail::indicator(1 - detail::b(m, i) * (1 - detail::b(m, j)));
        summand *= detail::indicator(1 - detail::b(i, k) * (1 - detail::b(j, k)) * inner);
      }
    }
    total += detail::indicator(summand);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Storage estimates

struct MemRow {
  unsigned n = 0;
  std::uint64_t bytes_per_elem = 0;
  BigInt elem_count;             // d(n) - 2: the empty set is not stored
  BigInt total_bytes;            // bytes_per_elem * elem_count
  BigInt refined_powerset_size;  // 2^(2^n - 1)
};

inline std::vector<MemRow> memsize_report(unsigned n_min, unsigned n_max) {
  if (n_max > kMaxReportAtoms) throw DomainError("memory report limited to n <= 8 (d(n) unknown beyond)");
  if (n_min > n_max) throw DomainError("memory report range is empty");
  std::vector<MemRow> rows;
  for (unsigned n = n_min; n <= n_max; ++n) {
    MemRow row;
    row.n = n;
    row.bytes_per_elem = bytes_per_mask(n);
    row.elem_count = known_cardinality(n) - 2;
    row.total_bytes = row.elem_count * row.bytes_per_elem;
    row.refined_powerset_size = BigInt(1) << ((1U << n) - 1);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string render_bytes_per_elem(std::uint64_t bytes) {
  return std::to_string(bytes) + (bytes == 1 ? " byte" : " bytes");
}

/// Two significant digits in the largest binary unit (Kb = 2^10 ... Gb = 2^30)
/// that keeps the value at or above 0.1; exact below that. Gb values of 1000 or
/// more use a power-of-ten exponent, e.g. "3.6e4 Gb".
inline std::string render_size(const BigInt& bytes) {
  static constexpr const char* kUnits[] = {"bytes", "Kb", "Mb", "Gb"};
  const long double raw = bytes.convert_to<long double>();
  int unit = 0;
  long double scaled = raw;
  for (int u = 3; u >= 1; --u) {
    const long double v = raw / std::pow(1024.0L, u);
    if (v >= 0.1L) {
      unit = u;
      scaled = v;
      break;
    }
  }
  if (unit == 0) return bytes.str() + (bytes == 1 ? " byte" : " bytes");

  char buf[64];
  if (scaled >= 1000.0L) {
    int exponent = static_cast<int>(std::floor(std::log10(scaled)));
    long double mantissa = std::round(scaled / std::pow(10.0L, exponent) * 10.0L) / 10.0L;
    if (mantissa >= 10.0L) {
      mantissa /= 10.0L;
      ++exponent;
    }
    std::snprintf(buf, sizeof buf, "%.1Lfe%d %s", mantissa, exponent, kUnits[unit]);
  } else if (scaled >= 10.0L) {
    std::snprintf(buf, sizeof buf, "%.0Lf %s", scaled, kUnits[unit]);
  } else if (scaled >= 1.0L) {
    std::snprintf(buf, sizeof buf, "%.1Lf %s", scaled, kUnits[unit]);
  } else {
    std::snprintf(buf, sizeof buf, "%.2Lf %s", scaled, kUnits[unit]);
  }
  return buf;
}

}  // namespace dsmt::oracles
