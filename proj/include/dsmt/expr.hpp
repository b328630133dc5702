#pragma once

// Set expressions over frame atoms.
//
//   Expr   := Term ('|' Term)*
//   Term   := Factor ('&' Factor)*
//   Factor := atom | '(' Expr ')' | '0'
//
// Atoms are t1..tn (the Greek form θ1..θn is also read). '∩' and '∪' are
// synonyms of '&' and '|'. There is no complement operator.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dsmt/errors.hpp"
#include "dsmt/hyperpowerset.hpp"
#include "dsmt/venn.hpp"

namespace dsmt {

struct Expr {
  enum class Kind { empty, atom, intersect, unite };

  Kind kind = Kind::empty;
  unsigned atom = 0;
  std::vector<Expr> children;

  static Expr empty_set() { return {}; }
  static Expr make_atom(unsigned i) { return {Kind::atom, i, {}}; }

  /// n-ary node; children of the same kind are spliced in, and a single child is returned as is.
  static Expr make(Kind kind, std::vector<Expr> operands) {
    Expr node{kind, 0, {}};
    for (auto& op : operands) {
      if (op.kind == kind) {
        for (auto& grandchild : op.children) node.children.push_back(std::move(grandchild));
      } else {
        node.children.push_back(std::move(op));
      }
    }
    if (node.children.size() == 1) return std::move(node.children.front());
    return node;
  }

  friend bool operator==(const Expr&, const Expr&) = default;
};

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, Frame frame) : text_(text), frame_(frame) {}

  Expr parse() {
    Expr e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail_syntax("unexpected input", {"'&'", "'|'", "end of input"});
    return e;
  }

 private:
  static constexpr std::string_view kCap = "\xE2\x88\xA9";    // ∩
  static constexpr std::string_view kCup = "\xE2\x88\xAA";    // ∪
  static constexpr std::string_view kTheta = "\xCE\xB8";      // θ

  Expr parse_expr() {
    std::vector<Expr> terms;
    terms.push_back(parse_term());
    while (accept('|', kCup)) terms.push_back(parse_term());
    return Expr::make(Expr::Kind::unite, std::move(terms));
  }

  Expr parse_term() {
    std::vector<Expr> factors;
    factors.push_back(parse_factor());
    while (accept('&', kCap)) factors.push_back(parse_factor());
    return Expr::make(Expr::Kind::intersect, std::move(factors));
  }

  Expr parse_factor() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      ++depth_;
      Expr inner = parse_expr();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail_syntax("unbalanced parenthesis", {"'&'", "'|'", "')'"});
      ++pos_;
      --depth_;
      return inner;
    }
    if (pos_ < text_.size() && text_[pos_] == '0') {
      ++pos_;
      return Expr::empty_set();
    }
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == 't') {
      ++pos_;
    } else if (text_.substr(pos_).starts_with(kTheta)) {
      pos_ += kTheta.size();
    } else {
      fail_syntax(pos_ >= text_.size() ? "unexpected end of input" : "unexpected character",
                  {"atom", "'('", "'0'"});
    }
    if (pos_ >= text_.size() || text_[pos_] < '0' || text_[pos_] > '9')
      fail_syntax("atom index missing", {"digit"});
    unsigned long index = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      index = std::min<unsigned long>(index * 10 + static_cast<unsigned long>(text_[pos_] - '0'), 1000000UL);
      ++pos_;
    }
    if (index < 1 || index > frame_.n())
      throw ParseError(ParseError::Kind::atom_out_of_range, start,
                       "atom t" + std::to_string(index) + " out of range 1.." + std::to_string(frame_.n()));
    return Expr::make_atom(static_cast<unsigned>(index));
  }

  bool accept(char ascii, std::string_view unicode) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ascii) {
      ++pos_;
      return true;
    }
    if (text_.substr(pos_).starts_with(unicode)) {
      pos_ += unicode.size();
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  [[noreturn]] void fail_syntax(const std::string& message, std::vector<std::string> expected) {
    if (depth_ > 0 && expected.back() == "end of input") expected.back() = "')'";
    throw ParseError(ParseError::Kind::syntax, pos_, "syntax error: " + message, std::move(expected));
  }

  std::string_view text_;
  Frame frame_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace detail

inline Expr parse(std::string_view text, Frame frame) { return detail::ExprParser(text, frame).parse(); }

inline VennMask eval_mask(const Expr& e, Frame frame) {
  switch (e.kind) {
    case Expr::Kind::empty:
      return VennMask(frame);
    case Expr::Kind::atom:
      return atom_mask(e.atom, frame);
    case Expr::Kind::intersect:
    case Expr::Kind::unite: {
      const SetOp op = e.kind == Expr::Kind::intersect ? SetOp::intersect : SetOp::unite;
      VennMask acc = eval_mask(e.children.at(0), frame);
      for (std::size_t i = 1; i < e.children.size(); ++i) acc = combine_masks(acc, eval_mask(e.children[i], frame), op);
      return acc;
    }
  }
  throw std::logic_error("unknown expression node");
}

struct Canonical {
  VennMask mask;
  std::string dnf;
};

inline Canonical canonicalize(std::string_view text, Frame frame) {
  VennMask mask = eval_mask(parse(text, frame), frame);
  std::string dnf = render_expr(to_dnf(mask));
  return {std::move(mask), std::move(dnf)};
}

/// Equality under the algebra of sets: both sides denote the same union of Venn regions.
inline bool equivalent(std::string_view lhs, std::string_view rhs, Frame frame) {
  return eval_mask(parse(lhs, frame), frame) == eval_mask(parse(rhs, frame), frame);
}

}  // namespace dsmt
