#pragma once

// Mass-assignment files and belief reports.
//
// File format:
//   {"n": 2, "model": "dsm" | "dst",
//    "masses": [{"expr": "t1", "mass": 0.6}, {"expr": "t1|t2", "mass": 0.4}]}
//
// "dst" files describe classical bbas: every expression must evaluate to a
// union of atoms.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dsmt/errors.hpp"
#include "dsmt/expr.hpp"
#include "dsmt/fusion.hpp"
#include "dsmt/hyperpowerset.hpp"
#include "dsmt/venn.hpp"

namespace dsmt {

enum class Model { dsm, dst };

struct LoadedBBA {
  Model model;
  std::variant<GeneralizedBBA, ClassicalBBA> bba;
  std::vector<std::string> warnings;

  Frame frame() const {
    return std::visit([](const auto& m) { return m.frame(); }, bba);
  }
};

/// The atom set whose union is `mask`, if the mask is such a union.
inline std::optional<AtomSet> as_atom_union(const VennMask& mask) {
  const Frame frame = mask.frame();
  AtomSet atoms = 0;
  VennMask covered(frame);
  for (unsigned i = 1; i <= frame.n(); ++i) {
    VennMask a = atom_mask(i, frame);
    if ((a & mask) == a) {
      atoms |= AtomSet{1} << (i - 1);
      covered |= a;
    }
  }
  if (covered != mask) return std::nullopt;
  return atoms;
}

/// Union-of-atoms mask for a classical subset.
inline VennMask atom_union_mask(AtomSet s, Frame frame) {
  VennMask out(frame);
  for (unsigned i = 1; i <= frame.n(); ++i)
    if (s & (AtomSet{1} << (i - 1))) out |= atom_mask(i, frame);
  return out;
}

/// Reads a classical bba as a gbba whose focal elements are the corresponding atom unions.
inline GeneralizedBBA to_generalized(const ClassicalBBA& m) {
  GeneralizedBBA::Masses out;
  for (const auto& [s, mass] : m.masses()) {
    if (s == 0) throw MassError("open-world bba with m(empty set) > 0 has no generalized counterpart");
    out[atom_union_mask(s, m.frame())] += mass;
  }
  return GeneralizedBBA(m.frame(), std::move(out));
}

inline GeneralizedBBA as_generalized(const LoadedBBA& loaded) {
  if (const auto* g = std::get_if<GeneralizedBBA>(&loaded.bba)) return *g;
  return to_generalized(std::get<ClassicalBBA>(loaded.bba));
}

inline LoadedBBA parse_bba_json(const nlohmann::json& doc, std::optional<Frame> expected = std::nullopt) {
  if (!doc.is_object()) throw FormatError("mass file must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_unsigned())
    throw FormatError("mass file needs a non-negative integer \"n\"");
  const auto n = doc["n"].get<std::uint64_t>();
  if (n > kMaxMaskAtoms) throw FormatError("\"n\" = " + std::to_string(n) + " exceeds 16");
  const Frame frame(static_cast<unsigned>(n));
  if (expected && *expected != frame) throw FrameMismatch(expected->n(), frame.n());

  if (!doc.contains("model") || !doc["model"].is_string()) throw FormatError("mass file needs \"model\"");
  const std::string model_name = doc["model"].get<std::string>();
  Model model;
  if (model_name == "dsm") model = Model::dsm;
  else if (model_name == "dst") model = Model::dst;
  else throw FormatError("unknown model \"" + model_name + "\" (expected dsm or dst)");

  if (!doc.contains("masses") || !doc["masses"].is_array()) throw FormatError("mass file needs a \"masses\" array");

  std::vector<std::string> warnings;
  GeneralizedBBA::Masses dsm_masses;
  ClassicalBBA::Masses dst_masses;
  std::map<VennMask, std::string, CanonicalLess> first_seen;

  const auto& entries = doc["masses"];
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string where = "masses[" + std::to_string(i) + "]";
    const auto& entry = entries[i];
    if (!entry.is_object() || !entry.contains("expr") || !entry["expr"].is_string() || !entry.contains("mass") ||
        !entry["mass"].is_number())
      throw FormatError(where + " needs a string \"expr\" and a numeric \"mass\"");
    const std::string text = entry["expr"].get<std::string>();
    const double mass = entry["mass"].get<double>();

    VennMask mask;
    try {
      mask = eval_mask(parse(text, frame), frame);
    } catch (const ParseError& e) {
      throw ParseError(where + ".expr \"" + text + "\"", e);
    }
    if (!std::isfinite(mass) || mass < 0.0 || mass > 1.0 + kMassTolerance)
      throw MassError(where + ": mass " + detail::format_double(mass) + " outside [0, 1]");
    if (mass == 0.0) {
      warnings.push_back(where + ": zero mass on \"" + text + "\" ignored");
      continue;
    }
    if (mask.none()) throw MassError(where + ": \"" + text + "\" denotes the empty set, whose mass must be 0");

    std::optional<AtomSet> subset;
    if (model == Model::dst) {
      subset = as_atom_union(mask);
      if (!subset)
        throw MassError(where + ": \"" + text +
                        "\" is not a union of atoms, which the dst model (exclusive atoms) requires");
    }

    auto [it, inserted] = first_seen.emplace(mask, text);
    if (!inserted)
      warnings.push_back(where + ": \"" + text + "\" is equivalent to \"" + it->second + "\"; masses merged");

    if (model == Model::dsm) dsm_masses[mask] += mass;
    else dst_masses[*subset] += mass;
  }

  if (model == Model::dsm) return {model, GeneralizedBBA(frame, std::move(dsm_masses)), std::move(warnings)};
  return {model, ClassicalBBA(frame, std::move(dst_masses)), std::move(warnings)};
}

inline LoadedBBA parse_bba(std::string_view text, std::optional<Frame> expected = std::nullopt) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  return parse_bba_json(doc, expected);
}

inline LoadedBBA load_bba(const std::string& path, std::optional<Frame> expected = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open mass file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_bba(std::string_view(buf.str()), expected);
  } catch (const ParseError& e) {
    throw ParseError(path, e);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  } catch (const MassError& e) {
    throw MassError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

struct BeliefRow {
  std::string expr;
  VennMask mask;
  double bel;
  double pl;
};

inline constexpr unsigned kMaxAllTargetsAtoms = 4;

namespace detail {

inline void check_all_targets(Frame frame) {
  if (frame.n() > kMaxAllTargetsAtoms) {
    const BigInt count = known_cardinality(std::min(frame.n(), 8U)) - 1;
    throw CapacityError("belief report over all of D^Theta limited to n <= 4",
                        frame.n() <= 8 ? count.str() : "unknown",
                        frame.n() <= 8 ? BigInt(count * bytes_per_mask(frame.n())).str() + " bytes" : "unknown");
  }
}

}  // namespace detail

/// Bel/Pl of a gbba for each target expression. An empty target list means every element of D^Theta.
inline std::vector<BeliefRow> beliefs_report(const GeneralizedBBA& m, const std::vector<std::string>& targets) {
  std::vector<BeliefRow> rows;
  if (targets.empty()) {
    detail::check_all_targets(m.frame());
    generate_stream(m.frame(), [&](const VennMask& a) {
      const BeliefInterval bp = dsm_bel_pl(m, a);
      rows.push_back({render_expr(to_dnf(a)), a, bp.bel, bp.pl});
    });
    return rows;
  }
  for (const auto& t : targets) {
    VennMask a = eval_mask(parse(t, m.frame()), m.frame());
    const BeliefInterval bp = dsm_bel_pl(m, a);
    rows.push_back({t, std::move(a), bp.bel, bp.pl});
  }
  return rows;
}

/// Classical Bel/Pl; targets must be unions of atoms. An empty target list means all of 2^Theta.
inline std::vector<BeliefRow> dst_beliefs_report(const ClassicalBBA& m, const std::vector<std::string>& targets) {
  std::vector<BeliefRow> rows;
  const Frame frame = m.frame();
  if (targets.empty()) {
    detail::check_all_targets(frame);
    std::vector<AtomSet> subsets;
    for (AtomSet s = 0; s <= frame.full(); ++s) subsets.push_back(s);
    std::sort(subsets.begin(), subsets.end(), term_less);
    for (AtomSet s : subsets) {
      const BeliefInterval bp = dst_bel_pl(m, s);
      rows.push_back({subset_expr(s), atom_union_mask(s, frame), bp.bel, bp.pl});
    }
    return rows;
  }
  for (const auto& t : targets) {
    VennMask a = eval_mask(parse(t, frame), frame);
    const auto subset = as_atom_union(a);
    if (!subset) throw DomainError("target \"" + t + "\" is not a union of atoms (dst model)");
    const BeliefInterval bp = dst_bel_pl(m, *subset);
    rows.push_back({t, std::move(a), bp.bel, bp.pl});
  }
  return rows;
}

}  // namespace dsmt
