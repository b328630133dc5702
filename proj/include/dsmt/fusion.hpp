#pragma once

// Belief-function combination.
//
// DSm side: generalized bbas over D^Theta, combined by the conjunctive DSm rule
// (no conflict, paradoxical mass stays on intersections).
//
// Shafer side: classical bbas over 2^Theta with exclusive atoms, the conjunctive
// consensus and its conflict k12, and the weighted redistribution family that
// yields Dempster's, Yager's and Smets' rules for particular weights.
//
// All rules iterate over focal cross-products only.

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dsmt/errors.hpp"
#include "dsmt/hyperpowerset.hpp"
#include "dsmt/venn.hpp"

namespace dsmt {

/// Allowed deviation of an input mass (or weight) total from 1.
inline constexpr double kMassTolerance = 1e-9;
/// k12 within this distance of 1 counts as full contradiction.
inline constexpr double kContradictionTolerance = 1e-12;

namespace detail {

inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);  // resolves the 1e-9 tolerance without binary noise
  os << v;
  return os.str();
}

inline void check_mass_value(double m, const std::string& where) {
  if (!std::isfinite(m) || m <= 0.0 || m > 1.0 + kMassTolerance)
    throw MassError("mass " + format_double(m) + " for " + where + " outside (0, 1]");
}

inline void check_total(double total, const char* what) {
  if (std::abs(total - 1.0) > kMassTolerance) {
    std::ostringstream os;
    os << what << " sum to " << format_double(total) << ", ";
    if (total < 1.0) os << "deficit " << format_double(1.0 - total);
    else os << "excess " << format_double(total - 1.0);
    throw MassError(os.str());
  }
}

struct Unchecked {};

}  // namespace detail

struct TermLess {
  bool operator()(AtomSet a, AtomSet b) const noexcept { return term_less(a, b); }
};

/// Atom-subset text such as "t1|t3", "0" for the empty set.
inline std::string subset_expr(AtomSet s) {
  if (s == 0) return "0";
  std::string out;
  for (unsigned i = 0; i < 32; ++i)
    if (s & (AtomSet{1} << i)) out += (out.empty() ? "t" : "|t") + std::to_string(i + 1);
  return out;
}

// ---------------------------------------------------------------------------
// DSm

/// Generalized bba over D^Theta: focal masks with strictly positive mass, m(empty) = 0, total 1.
class GeneralizedBBA {
 public:
  using Masses = std::map<VennMask, double, CanonicalLess>;

  GeneralizedBBA(Frame frame, Masses masses) : frame_(frame), masses_(std::move(masses)) {
    double total = 0.0;
    for (const auto& [mask, m] : masses_) {
      require_same_frame(frame_, mask.frame());
      if (mask.none()) throw MassError("m(empty set) must be 0");
      if (!is_isotone(mask)) throw DomainError("focal element " + mask.to_bits() + " is not in D^Theta");
      detail::check_mass_value(m, mask.to_bits());
      total += m;
    }
    detail::check_total(total, "masses");
  }

  GeneralizedBBA(detail::Unchecked, Frame frame, Masses masses) : frame_(frame), masses_(std::move(masses)) {}

  Frame frame() const noexcept { return frame_; }
  const Masses& masses() const noexcept { return masses_; }
  std::size_t size() const noexcept { return masses_.size(); }

  double mass(const VennMask& a) const {
    auto it = masses_.find(a);
    return it == masses_.end() ? 0.0 : it->second;
  }

  double total() const {
    double t = 0.0;
    for (const auto& [mask, m] : masses_) t += m;
    return t;
  }

 private:
  Frame frame_;
  Masses masses_;
};

/// m(C) = sum over focal pairs with A & B == C of m1(A) m2(B).
inline GeneralizedBBA dsm_combine(const GeneralizedBBA& m1, const GeneralizedBBA& m2) {
  require_same_frame(m1.frame(), m2.frame());
  GeneralizedBBA::Masses out;
  for (const auto& [a, ma] : m1.masses())
    for (const auto& [b, mb] : m2.masses()) out[a & b] += ma * mb;
  return GeneralizedBBA(detail::Unchecked{}, m1.frame(), std::move(out));
}

/// Chains sources through dsm_combine, left to right.
inline GeneralizedBBA dsm_fuse_many(std::span<const GeneralizedBBA> sources) {
  if (sources.empty()) throw DomainError("dsm_fuse_many needs at least one source");
  GeneralizedBBA acc = sources.front();
  for (std::size_t i = 1; i < sources.size(); ++i) acc = dsm_combine(acc, sources[i]);
  return acc;
}

struct BeliefInterval {
  double bel;
  double pl;
};

inline BeliefInterval dsm_bel_pl(const GeneralizedBBA& m, const VennMask& a) {
  require_same_frame(m.frame(), a.frame());
  if (!is_isotone(a)) throw DomainError("target " + a.to_bits() + " is not in D^Theta");
  BeliefInterval out{0.0, 0.0};
  for (const auto& [b, mb] : m.masses()) {
    const MaskRelations rel = mask_relations(b, a);
    if (rel.is_subset) out.bel += mb;
    if (rel.intersects) out.pl += mb;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shafer model

/// Classical bba over 2^Theta. Closed-world bbas have m(empty) = 0; open-world ones may not.
class ClassicalBBA {
 public:
  using Masses = std::map<AtomSet, double, TermLess>;

  ClassicalBBA(Frame frame, Masses masses, bool open_world = false)
      : frame_(frame), masses_(std::move(masses)), open_world_(open_world) {
    double total = 0.0;
    for (const auto& [s, m] : masses_) {
      if (s > frame_.full()) throw DomainError("subset references an atom beyond n=" + std::to_string(frame_.n()));
      if (s == 0 && !open_world_) throw MassError("m(empty set) must be 0 in a closed-world bba");
      detail::check_mass_value(m, subset_expr(s));
      total += m;
    }
    detail::check_total(total, "masses");
  }

  ClassicalBBA(detail::Unchecked, Frame frame, Masses masses, bool open_world)
      : frame_(frame), masses_(std::move(masses)), open_world_(open_world) {}

  Frame frame() const noexcept { return frame_; }
  const Masses& masses() const noexcept { return masses_; }
  bool open_world() const noexcept { return open_world_; }

  double mass(AtomSet s) const {
    auto it = masses_.find(s);
    return it == masses_.end() ? 0.0 : it->second;
  }

 private:
  Frame frame_;
  Masses masses_;
  bool open_world_ = false;
};

/// Redistribution coefficients w(A) for every A in 2^Theta (empty set included), summing to 1.
class RedistributionWeights {
 public:
  using Weights = std::map<AtomSet, double, TermLess>;

  RedistributionWeights(Frame frame, Weights weights) : frame_(frame), weights_(std::move(weights)) {
    double total = 0.0;
    for (const auto& [s, w] : weights_) {
      if (s > frame_.full()) throw DomainError("weight subset references an atom beyond n=" + std::to_string(frame_.n()));
      if (!std::isfinite(w) || w < 0.0 || w > 1.0 + kMassTolerance)
        throw MassError("weight " + detail::format_double(w) + " for " + subset_expr(s) + " outside [0, 1]");
      total += w;
    }
    detail::check_total(total, "weights");
  }

  Frame frame() const noexcept { return frame_; }
  const Weights& weights() const noexcept { return weights_; }

  double weight(AtomSet s) const {
    auto it = weights_.find(s);
    return it == weights_.end() ? 0.0 : it->second;
  }

 private:
  Frame frame_;
  Weights weights_;
};

struct FusionOutcome {
  ClassicalBBA result;
  double conflict;  // k12, the mass on the empty set before redistribution
};

/// Unnormalized cross product over subset intersections; conflict lands on the empty set.
inline FusionOutcome conjunctive_consensus(const ClassicalBBA& m1, const ClassicalBBA& m2) {
  require_same_frame(m1.frame(), m2.frame());
  if (m1.open_world() || m2.open_world()) throw DomainError("consensus inputs must be closed-world bbas");
  ClassicalBBA::Masses out;
  for (const auto& [a, ma] : m1.masses())
    for (const auto& [b, mb] : m2.masses()) out[a & b] += ma * mb;
  const auto empty = out.find(0);
  const double conflict = empty == out.end() ? 0.0 : empty->second;
  return {ClassicalBBA(detail::Unchecked{}, m1.frame(), std::move(out), true), conflict};
}

inline bool is_full_contradiction(double conflict) { return 1.0 - conflict <= kContradictionTolerance; }

/// Dempster's orthogonal sum: consensus normalized by 1 - k12.
inline FusionOutcome dempster_combine(const ClassicalBBA& m1, const ClassicalBBA& m2) {
  FusionOutcome consensus = conjunctive_consensus(m1, m2);
  const double k = consensus.conflict;
  if (is_full_contradiction(k)) throw FullContradiction();
  ClassicalBBA::Masses out;
  for (const auto& [s, m] : consensus.result.masses())
    if (s != 0) out[s] = m / (1.0 - k);
  return {ClassicalBBA(detail::Unchecked{}, m1.frame(), std::move(out), false), k};
}

/// w(empty) k12 stays on the empty set; every other A receives w(A) k12 on top of its consensus mass.
inline FusionOutcome weighted_redistribution(const ClassicalBBA& m1, const ClassicalBBA& m2,
                                             const RedistributionWeights& w) {
  require_same_frame(m1.frame(), w.frame());
  FusionOutcome consensus = conjunctive_consensus(m1, m2);
  const double k = consensus.conflict;
  ClassicalBBA::Masses out;
  for (const auto& [s, m] : consensus.result.masses())
    if (s != 0) out[s] = m;
  for (const auto& [s, ws] : w.weights()) {
    if (ws == 0.0 || k == 0.0) continue;
    out[s] += ws * k;
  }
  const bool open_world = w.weight(0) > 0.0;
  if (!open_world) out.erase(0);
  return {ClassicalBBA(detail::Unchecked{}, m1.frame(), std::move(out), open_world), k};
}

/// Weights that turn weighted_redistribution into Dempster's rule for this consensus:
/// w(empty) = 0, w(A) = m(A) / (1 - m(empty)).
inline RedistributionWeights dempster_weights(const FusionOutcome& consensus) {
  const double k = consensus.conflict;
  if (is_full_contradiction(k)) throw FullContradiction();
  RedistributionWeights::Weights w;
  for (const auto& [s, m] : consensus.result.masses())
    if (s != 0) w[s] = m / (1.0 - k);
  return RedistributionWeights(consensus.result.frame(), std::move(w));
}

/// Yager: all conflict goes to the whole frame.
inline RedistributionWeights yager_weights(Frame frame) {
  return RedistributionWeights(frame, {{frame.full(), 1.0}});
}

/// Smets: conflict stays on the empty set (open world).
inline RedistributionWeights smets_weights(Frame frame) { return RedistributionWeights(frame, {{0, 1.0}}); }

/// Bel(A) sums m(B) for nonempty B within A; Pl(A) sums m(B) for B meeting A.
inline BeliefInterval dst_bel_pl(const ClassicalBBA& m, AtomSet a) {
  if (a > m.frame().full()) throw DomainError("target references an atom beyond n=" + std::to_string(m.frame().n()));
  BeliefInterval out{0.0, 0.0};
  for (const auto& [b, mb] : m.masses()) {
    if (b != 0 && (b & a) == b) out.bel += mb;
    if ((b & a) != 0) out.pl += mb;
  }
  return out;
}

}  // namespace dsmt
