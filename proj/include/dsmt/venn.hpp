#pragma once

// Venn-region encoding of hyper-powerset elements.
//
// A frame of n atoms splits into 2^n - 1 disjoint Venn regions. Region r
// (1 <= r <= 2^n - 1) is labelled by the set of atoms covering it, encoded as
// the integer with bit (i-1) set for atom i. Every element of D^Theta is a
// union of regions, stored as a bit mask with bit (r-1) <=> region r.
//
// Text forms list regions in basis order (<1>, <2>, <12>, <3>, ...), which is
// the integer order of r; the leftmost character is region <1>.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dsmt/errors.hpp"

namespace dsmt {

/// Bit (i-1) set <=> atom i is a member. Region indices use the same encoding.
using AtomSet = std::uint32_t;
using RegionIndex = std::uint32_t;

inline constexpr unsigned kMaxMaskAtoms = 16;

/// Frame of discernment with n atoms theta_1..theta_n.
class Frame {
 public:
  constexpr Frame() = default;
  constexpr explicit Frame(unsigned n) : n_(n) {
    if (n > kMaxMaskAtoms) throw DomainError("frame size " + std::to_string(n) + " exceeds 16");
  }

  constexpr unsigned n() const noexcept { return n_; }
  /// Number of Venn regions, 2^n - 1.
  constexpr std::size_t regions() const noexcept { return (std::size_t{1} << n_) - 1; }
  constexpr AtomSet full() const noexcept { return static_cast<AtomSet>(regions()); }

  friend constexpr bool operator==(Frame, Frame) = default;

 private:
  unsigned n_ = 0;
};

inline void require_same_frame(Frame a, Frame b) {
  if (a != b) throw FrameMismatch(a.n(), b.n());
}

class VennMask {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  VennMask() = default;
  explicit VennMask(Frame frame) : frame_(frame), words_((frame.regions() + kWordBits - 1) / kWordBits, 0) {}

  /// Single-word constructor for n <= 6; bit (r-1) <=> region r.
  static VennMask from_word(Frame frame, Word bits) {
    if (frame.n() > 6) throw DomainError("from_word requires n <= 6");
    VennMask m(frame);
    if (!m.words_.empty()) m.words_[0] = bits & m.tail_mask();
    else if (bits != 0) throw DomainError("n=0 mask has no regions");
    return m;
  }

  static VennMask all_ones(Frame frame) {
    VennMask m(frame);
    for (auto& w : m.words_) w = ~Word{0};
    if (!m.words_.empty()) m.words_.back() &= m.tail_mask();
    return m;
  }

  /// Parses the '0'/'1' text form (leftmost = region <1>).
  static VennMask from_bits(Frame frame, std::string_view text) {
    if (text.size() != frame.regions())
      throw DomainError("bit string of length " + std::to_string(text.size()) + ", expected " +
                        std::to_string(frame.regions()));
    VennMask m(frame);
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') m.set(static_cast<RegionIndex>(i + 1));
      else if (text[i] != '0') throw DomainError("bit string contains '" + std::string(1, text[i]) + "'");
    }
    return m;
  }

  /// Parses the hexadecimal form: big-endian over the bit-string order.
  static VennMask from_hex(Frame frame, std::string_view text) {
    const std::size_t width = frame.regions();
    const std::size_t digits = hex_digits(width);
    if (text.size() > digits || text.empty())
      throw DomainError("hex string must have 1.." + std::to_string(digits) + " digits");
    std::string bits;
    bits.reserve(text.size() * 4);
    for (char c : text) {
      int v = -1;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      if (v < 0) throw DomainError("invalid hex digit '" + std::string(1, c) + "'");
      for (int b = 3; b >= 0; --b) bits.push_back(((v >> b) & 1) ? '1' : '0');
    }
    if (bits.size() < width) bits.insert(0, width - bits.size(), '0');
    const std::size_t excess = bits.size() - width;
    if (bits.find('1') < excess) throw DomainError("hex value exceeds mask width");
    return from_bits(frame, std::string_view(bits).substr(excess));
  }

  Frame frame() const noexcept { return frame_; }
  std::size_t width() const noexcept { return frame_.regions(); }
  std::span<const Word> words() const noexcept { return words_; }

  /// The whole mask as one word; only valid for n <= 6.
  Word word() const {
    if (frame_.n() > 6) throw DomainError("word() requires n <= 6");
    return words_.empty() ? 0 : words_[0];
  }

  bool test(RegionIndex r) const {
    check_region(r);
    return (words_[(r - 1) / kWordBits] >> ((r - 1) % kWordBits)) & 1U;
  }

  void set(RegionIndex r, bool value = true) {
    check_region(r);
    const Word bit = Word{1} << ((r - 1) % kWordBits);
    if (value) words_[(r - 1) / kWordBits] |= bit;
    else words_[(r - 1) / kWordBits] &= ~bit;
  }

  bool none() const noexcept {
    for (Word w : words_)
      if (w) return false;
    return true;
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  std::string to_bits() const {
    std::string out(width(), '0');
    for (std::size_t i = 0; i < out.size(); ++i)
      if (test(static_cast<RegionIndex>(i + 1))) out[i] = '1';
    return out;
  }

  /// Big-endian hex over the bit-string order, zero-padded to ceil(width/4) digits.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string bits = to_bits();
    const std::size_t digits = hex_digits(bits.size());
    bits.insert(0, digits * 4 - bits.size(), '0');
    std::string out;
    out.reserve(digits);
    for (std::size_t d = 0; d < digits; ++d) {
      int v = 0;
      for (std::size_t b = 0; b < 4; ++b) v = (v << 1) | (bits[d * 4 + b] == '1');
      out.push_back(kDigits[v]);
    }
    return out;
  }

  VennMask& operator&=(const VennMask& other) {
    require_same_frame(frame_, other.frame_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }

  VennMask& operator|=(const VennMask& other) {
    require_same_frame(frame_, other.frame_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  friend VennMask operator&(VennMask a, const VennMask& b) { return a &= b; }
  friend VennMask operator|(VennMask a, const VennMask& b) { return a |= b; }

  friend bool operator==(const VennMask& a, const VennMask& b) {
    return a.frame_ == b.frame_ && a.words_ == b.words_;
  }

  static constexpr std::size_t hex_digits(std::size_t width) noexcept { return (width + 3) / 4; }

 private:
  void check_region(RegionIndex r) const {
    if (r < 1 || r > frame_.regions())
      throw DomainError("region " + std::to_string(r) + " out of range 1.." + std::to_string(frame_.regions()));
  }

  Word tail_mask() const noexcept {
    const std::size_t rem = frame_.regions() % kWordBits;
    return rem == 0 ? ~Word{0} : (Word{1} << rem) - 1;
  }

  Frame frame_;
  std::vector<Word> words_;
};

/// Canonical order: the bit string read as a big-endian binary number
/// (region <1> most significant). Masks of different frames order by n.
inline std::strong_ordering canonical_compare(const VennMask& a, const VennMask& b) {
  if (a.frame() != b.frame()) return a.frame().n() <=> b.frame().n();
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    const VennMask::Word diff = wa[i] ^ wb[i];
    if (diff == 0) continue;
    const VennMask::Word lowest = diff & (~diff + 1);
    return (wa[i] & lowest) ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

/// Single-word variant of canonical_compare for n <= 6 masks.
inline bool canonical_less_word(std::uint64_t a, std::uint64_t b) noexcept {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  return (b & (diff & (~diff + 1))) != 0;
}

struct CanonicalLess {
  bool operator()(const VennMask& a, const VennMask& b) const { return canonical_compare(a, b) < 0; }
};

// ---------------------------------------------------------------------------

/// Region code "<d1...dk>" of region r. Rendering is limited to n <= 9.
inline std::string region_label(RegionIndex r, Frame frame) {
  if (frame.n() >= 10) throw DomainError("region labels are only rendered for n <= 9");
  if (r < 1 || r > frame.regions())
    throw DomainError("region " + std::to_string(r) + " out of range 1.." + std::to_string(frame.regions()));
  std::string out = "<";
  for (unsigned i = 0; i < frame.n(); ++i)
    if (r & (1U << i)) out.push_back(static_cast<char>('1' + i));
  out.push_back('>');
  return out;
}

/// Builds u_n recursively: u_n = [u_{n-1}, <n>, u_{n-1} each joined with <n>].
/// The result coincides with the integer order 1..2^n-1, which is checked.
inline std::vector<RegionIndex> basis_order(Frame frame) {
  std::vector<RegionIndex> order;
  order.reserve(frame.regions());
  for (unsigned k = 1; k <= frame.n(); ++k) {
    const RegionIndex atom = RegionIndex{1} << (k - 1);
    const std::size_t previous = order.size();
    order.push_back(atom);
    for (std::size_t i = 0; i < previous; ++i) order.push_back(order[i] | atom);
  }
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] != i + 1) throw std::logic_error("basis order diverged from integer order");
  return order;
}

/// theta_i as a mask: every region whose label contains atom i.
inline VennMask atom_mask(unsigned atom, Frame frame) {
  if (atom < 1 || atom > frame.n())
    throw DomainError("atom " + std::to_string(atom) + " out of range 1.." + std::to_string(frame.n()));
  VennMask m(frame);
  const AtomSet bit = AtomSet{1} << (atom - 1);
  for (RegionIndex r = 1; r <= frame.regions(); ++r)
    if (r & bit) m.set(r);
  return m;
}

enum class SetOp { intersect, unite };

inline VennMask combine_masks(const VennMask& a, const VennMask& b, SetOp op) {
  return op == SetOp::intersect ? (a & b) : (a | b);
}

/// True iff the set bits form an upward-closed family of region labels.
/// Checked on single-atom covers, which suffices by transitivity.
inline bool is_isotone(const VennMask& a) {
  const Frame frame = a.frame();
  for (RegionIndex r = 1; r <= frame.regions(); ++r) {
    if (!a.test(r)) continue;
    for (unsigned i = 0; i < frame.n(); ++i) {
      const RegionIndex up = r | (RegionIndex{1} << i);
      if (up != r && !a.test(up)) return false;
    }
  }
  return true;
}

struct MaskRelations {
  bool is_subset;   // a is contained in b
  bool intersects;  // a and b share a region
};

inline MaskRelations mask_relations(const VennMask& a, const VennMask& b) {
  const VennMask meet = a & b;
  return {meet == a, !meet.none()};
}

}  // namespace dsmt
