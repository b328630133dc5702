#pragma once

// Materialization of D^Theta and the minimal-DNF (antichain) view of its elements.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dsmt/errors.hpp"
#include "dsmt/venn.hpp"

namespace dsmt {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr unsigned kMaxGenerateAtoms = 6;

/// Published Dedekind numbers d(0)..d(8): counts of monotone Boolean functions
/// of n variables, both constants included.
inline BigInt known_cardinality(unsigned n) {
  static const std::array<const char*, 9> kValues = {
      "2", "3", "6", "20", "168", "7581", "7828354", "2414682040998", "56130437228687557907788"};
  if (n >= kValues.size()) throw DomainError("d(" + std::to_string(n) + ") is not known");
  return BigInt(kValues[n]);
}

/// Bytes needed to store one mask of 2^n - 1 bits, rounded up to whole bytes (minimum 1).
inline std::uint64_t bytes_per_mask(unsigned n) {
  const std::uint64_t bits = (std::uint64_t{1} << n) - 1;
  return std::max<std::uint64_t>(1, (bits + 7) / 8);
}

namespace detail {

[[noreturn]] inline void refuse_generation(unsigned n) {
  std::string elements = "unknown";
  std::string bytes = "unknown";
  if (n <= 8) {
    const BigInt count = known_cardinality(n) - 1;
    elements = count.str();
    bytes = BigInt(count * bytes_per_mask(n)).str() + " bytes";
  }
  throw CapacityError("refusing to generate D^Theta for n=" + std::to_string(n) + " (limit n <= 6)", elements,
                      bytes);
}

/// Full truth tables (bit x <=> f(x), input 0 included) of every monotone
/// function of `vars` variables, in canonical order. vars <= 5.
inline std::vector<std::uint64_t> monotone_tables(unsigned vars) {
  std::vector<std::uint64_t> level = {0b0, 0b1};
  for (unsigned k = 1; k <= vars; ++k) {
    const unsigned half = 1U << (k - 1);
    std::vector<std::uint64_t> next;
    // Adjoin to each row r_i every row r_j with r_i | r_j == r_j; r_i fills the low
    // (more significant) half so lexicographic pair order stays canonical.
    for (std::uint64_t lo : level)
      for (std::uint64_t hi : level)
        if ((lo & ~hi) == 0) next.push_back(lo | (hi << half));
    level = std::move(next);
  }
  return level;
}

/// Streams single-word masks of D^Theta for n <= 6 in canonical order.
template <typename Fn>
std::uint64_t for_each_word(unsigned n, Fn&& fn) {
  if (n > kMaxGenerateAtoms) refuse_generation(n);
  if (n == 0) {
    fn(std::uint64_t{0});
    return 1;
  }
  const std::vector<std::uint64_t> base = monotone_tables(n - 1);
  const unsigned half = 1U << (n - 1);
  std::uint64_t count = 0;
  for (std::uint64_t lo : base) {
    if (lo & 1U) continue;  // f(0...0) = 1: only the tautology, dropped
    for (std::uint64_t hi : base) {
      if ((lo & ~hi) != 0) continue;
      const std::uint64_t table = lo | (hi << half);
      fn(table >> 1);
      ++count;
    }
  }
  return count;
}

}  // namespace detail

/// All of D^Theta for a frame with n <= 6, in canonical order.
class HyperPowerset {
 public:
  explicit HyperPowerset(Frame frame) : frame_(frame) {}

  Frame frame() const noexcept { return frame_; }
  std::size_t size() const noexcept { return words_.size(); }
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  VennMask operator[](std::size_t i) const { return VennMask::from_word(frame_, words_.at(i)); }

  /// Position of `mask` by binary search, or size() if absent.
  std::size_t index_of(const VennMask& mask) const {
    if (mask.frame() != frame_) return size();
    const std::uint64_t w = mask.word();
    auto it = std::lower_bound(words_.begin(), words_.end(), w, canonical_less_word);
    return (it != words_.end() && *it == w) ? static_cast<std::size_t>(it - words_.begin()) : size();
  }

  bool contains(const VennMask& mask) const { return index_of(mask) != size(); }

 private:
  friend HyperPowerset generate(Frame frame);

  Frame frame_;
  std::vector<std::uint64_t> words_;
};

/// Materializes D^Theta (d(n) - 1 elements, empty set first, theta_1 u ... u theta_n last).
inline HyperPowerset generate(Frame frame) {
  if (frame.n() > kMaxGenerateAtoms) detail::refuse_generation(frame.n());
  HyperPowerset out(frame);
  out.words_.reserve(static_cast<std::size_t>(known_cardinality(frame.n()) - 1));
  detail::for_each_word(frame.n(), [&](std::uint64_t w) { out.words_.push_back(w); });
  return out;
}

/// Visits every element of D^Theta once, in canonical order, without retaining them.
/// Returns the number of elements visited.
template <typename Visitor>
std::uint64_t generate_stream(Frame frame, Visitor&& visit) {
  return detail::for_each_word(frame.n(), [&](std::uint64_t w) { visit(VennMask::from_word(frame, w)); });
}

// ---------------------------------------------------------------------------
// Antichains

/// Orders atom sets by size, then lexicographically on their ascending atom lists.
inline bool term_less(AtomSet a, AtomSet b) noexcept {
  const int ca = std::popcount(a);
  const int cb = std::popcount(b);
  if (ca != cb) return ca < cb;
  const AtomSet diff = a ^ b;
  if (diff == 0) return false;
  return (a & diff & (~diff + 1)) != 0;
}

/// Set of pairwise incomparable, nonempty atom sets. The empty antichain is the empty set.
class Antichain {
 public:
  Antichain() = default;

  /// Normalizes `members`: duplicates and non-minimal members are dropped, and
  /// reduced() reports whether anything was dropped.
  explicit Antichain(std::vector<AtomSet> members) {
    for (AtomSet m : members)
      if (m == 0) throw DomainError("antichain member must be a nonempty atom set");
    std::sort(members.begin(), members.end(), term_less);
    for (AtomSet m : members) {
      const bool covered =
          std::any_of(members_.begin(), members_.end(), [m](AtomSet kept) { return (kept & m) == kept; });
      if (covered) reduced_ = true;
      else members_.push_back(m);
    }
  }

  const std::vector<AtomSet>& members() const noexcept { return members_; }
  bool empty() const noexcept { return members_.empty(); }
  bool reduced() const noexcept { return reduced_; }

  friend bool operator==(const Antichain& a, const Antichain& b) { return a.members_ == b.members_; }

 private:
  std::vector<AtomSet> members_;
  bool reduced_ = false;
};

/// Inclusion-minimal labels among the mask's regions: its minimal DNF.
inline Antichain to_dnf(const VennMask& mask) {
  if (!is_isotone(mask)) throw DomainError("to_dnf requires an isotone mask, got " + mask.to_bits());
  std::vector<AtomSet> minimal;
  const Frame frame = mask.frame();
  for (RegionIndex r = 1; r <= frame.regions(); ++r) {
    if (!mask.test(r)) continue;
    bool is_minimal = true;
    for (AtomSet rest = r; rest != 0; rest &= rest - 1) {
      const RegionIndex below = r & ~(rest & (~rest + 1));
      if (below != 0 && mask.test(below)) {
        is_minimal = false;
        break;
      }
    }
    if (is_minimal) minimal.push_back(r);
  }
  return Antichain(std::move(minimal));
}

/// Upward closure of the antichain: region r is set iff some member is contained in r.
inline VennMask from_antichain(const Antichain& chain, Frame frame) {
  for (AtomSet m : chain.members())
    if (m > frame.full())
      throw DomainError("antichain member references an atom beyond n=" + std::to_string(frame.n()));
  VennMask out(frame);
  for (RegionIndex r = 1; r <= frame.regions(); ++r)
    for (AtomSet m : chain.members())
      if ((m & r) == m) {
        out.set(r);
        break;
      }
  return out;
}

/// "t1&t2|t3" with terms in antichain order; "0" for the empty set.
inline std::string render_expr(const Antichain& chain) {
  if (chain.empty()) return "0";
  std::string out;
  for (std::size_t t = 0; t < chain.members().size(); ++t) {
    if (t) out += '|';
    bool first = true;
    for (unsigned i = 0; i < 32; ++i) {
      if (!(chain.members()[t] & (AtomSet{1} << i))) continue;
      if (!first) out += '&';
      out += 't' + std::to_string(i + 1);
      first = false;
    }
  }
  return out;
}

/// The element obtained by swapping union and intersection in its expression,
/// i.e. the dual function x -> not f(not x). The empty set has no dual in D^Theta
/// (its dual is the excluded tautology).
inline VennMask dual(const VennMask& mask) {
  const Frame frame = mask.frame();
  if (mask.none()) throw DomainError("the empty set has no dual inside D^Theta");
  VennMask out(frame);
  const RegionIndex full = frame.full();
  for (RegionIndex r = 1; r <= full; ++r) {
    const RegionIndex complement = full ^ r;
    const bool f_complement = complement != 0 && mask.test(complement);
    if (!f_complement) out.set(r);
  }
  return out;
}

}  // namespace dsmt
