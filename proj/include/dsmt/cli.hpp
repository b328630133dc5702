#pragma once

// Command-line front end: gen, canon, count, memsize, fuse, beliefs.
//
// Exit codes: 0 success, 1 usage or input error, 2 expression parse error,
// 3 full contradiction, 4 capacity refusal.

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dsmt/bba_io.hpp"
#include "dsmt/errors.hpp"
#include "dsmt/expr.hpp"
#include "dsmt/fusion.hpp"
#include "dsmt/hyperpowerset.hpp"
#include "dsmt/oracles.hpp"
#include "dsmt/venn.hpp"

namespace dsmt::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kParse = 2,
  kContradiction = 3,
  kCapacity = 4,
};

enum class Format { table, csv, structured };

struct RunConfig {
  std::string subcommand;
  unsigned n = 0;
  std::vector<std::string> inputs;
  std::string rule = "dsm";
  Format format = Format::table;
  int precision = 6;
  bool quiet = false;
};

namespace detail {

inline std::string fixed(double v, int precision) {
  if (v == 0.0) v = 0.0;  // no "-0.000000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

/// Left-aligned columns separated by two spaces; the last column is not padded.
class TableWriter {
 public:
  TableWriter(std::ostream& out, std::vector<std::size_t> widths) : out_(out), widths_(std::move(widths)) {}

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out_ << cells[i];
      if (i + 1 < cells.size()) out_ << std::string(widths_[i] - std::min(widths_[i], cells[i].size()) + 2, ' ');
    }
    out_ << '\n';
  }

 private:
  std::ostream& out_;
  std::vector<std::size_t> widths_;
};

inline std::vector<std::size_t> widths_of(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w;
  for (const auto& r : rows) {
    if (w.size() < r.size()) w.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
  }
  return w;
}

inline std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

/// Writes rows in the chosen format. `numeric` flags columns emitted unquoted in structured output.
inline void emit(std::ostream& out, Format format, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows, const std::vector<bool>& numeric) {
  switch (format) {
    case Format::table: {
      std::vector<std::vector<std::string>> all = {header};
      all.insert(all.end(), rows.begin(), rows.end());
      TableWriter t(out, widths_of(all));
      for (const auto& r : all) t.row(r);
      break;
    }
    case Format::csv: {
      for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
      out << '\n';
      for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << '\n';
      }
      break;
    }
    case Format::structured: {
      out << "[\n";
      for (std::size_t k = 0; k < rows.size(); ++k) {
        out << "  {";
        for (std::size_t i = 0; i < header.size(); ++i) {
          out << (i ? ", " : "") << json_string(header[i]) << ": "
              << (numeric[i] ? rows[k][i] : json_string(rows[k][i]));
        }
        out << (k + 1 < rows.size() ? "},\n" : "}\n");
      }
      out << "]\n";
      break;
    }
  }
}

inline void add_format_option(CLI::App* cmd, Format& format) {
  static const std::map<std::string, Format> kFormats = {
      {"table", Format::table}, {"csv", Format::csv}, {"structured", Format::structured}, {"json", Format::structured}};
  cmd->add_option("--format", format, "Output format: table, csv or structured (json)")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
}

// ---------------------------------------------------------------------------

inline int run_gen(const RunConfig& cfg, std::ostream& out) {
  const Frame frame(cfg.n);
  if (cfg.n > kMaxGenerateAtoms) ::dsmt::detail::refuse_generation(cfg.n);
  const std::uint64_t total = static_cast<std::uint64_t>(known_cardinality(cfg.n) - 1);
  const std::size_t width = frame.regions();
  const std::size_t hex_width = VennMask::hex_digits(width);
  const std::vector<std::size_t> widths = {std::max<std::size_t>(5, std::to_string(total - 1).size()),
                                           std::max<std::size_t>(4, width), std::max<std::size_t>(3, hex_width), 3};

  TableWriter table(out, widths);
  std::uint64_t index = 0;
  switch (cfg.format) {
    case Format::table:
      table.row({"index", "bits", "hex", "dnf"});
      break;
    case Format::csv:
      out << "index,bits,hex,dnf\n";
      break;
    case Format::structured:
      out << "[\n";
      break;
  }
  generate_stream(frame, [&](const VennMask& m) {
    const std::string dnf = render_expr(to_dnf(m));
    const std::string idx = std::to_string(index);
    switch (cfg.format) {
      case Format::table:
        table.row({idx, m.to_bits(), m.to_hex(), dnf});
        break;
      case Format::csv:
        out << idx << ',' << m.to_bits() << ',' << m.to_hex() << ',' << dnf << '\n';
        break;
      case Format::structured:
        out << "  {\"index\": " << idx << ", \"bits\": \"" << m.to_bits() << "\", \"hex\": \"" << m.to_hex()
            << "\", \"dnf\": \"" << dnf << "\"}" << (index + 1 < total ? ",\n" : "\n");
        break;
    }
    ++index;
  });
  if (cfg.format == Format::structured) out << "]\n";
  return kSuccess;
}

inline int run_canon(const RunConfig& cfg, const std::string& expr, std::ostream& out) {
  const Frame frame(cfg.n);
  const Canonical c = canonicalize(expr, frame);
  emit(out, cfg.format, {"bits", "hex", "dnf"}, {{c.mask.to_bits(), c.mask.to_hex(), c.dnf}}, {false, false, false});
  return kSuccess;
}

inline int run_count(const RunConfig& cfg, const std::string& method, bool long_running, std::ostream& out) {
  BigInt value;
  if (method == "lookup") value = known_cardinality(cfg.n);
  else if (method == "brute") value = oracles::brute_force_mbf(cfg.n).count;
  else value = oracles::kisielewicz_d(cfg.n, long_running);
  out << value.str() << '\n';
  return kSuccess;
}

inline int run_memsize(const RunConfig& cfg, unsigned n_min, unsigned n_max, std::ostream& out) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : oracles::memsize_report(n_min, n_max)) {
    rows.push_back({std::to_string(r.n), std::to_string(r.bytes_per_elem), r.elem_count.str(), r.total_bytes.str(),
                    oracles::render_size(r.total_bytes), r.refined_powerset_size.str()});
  }
  emit(out, cfg.format, {"n", "bytes_per_elem", "elements", "total_bytes", "size", "refined_powerset"}, rows,
       {true, true, true, true, false, true});
  return kSuccess;
}

inline std::vector<LoadedBBA> load_all(const RunConfig& cfg, std::ostream& err) {
  std::vector<LoadedBBA> loaded;
  for (const auto& path : cfg.inputs) {
    std::optional<Frame> expected;
    if (!loaded.empty()) expected = loaded.front().frame();
    loaded.push_back(load_bba(path, expected));
    if (!cfg.quiet)
      for (const auto& w : loaded.back().warnings) err << "warning: " << path << ": " << w << '\n';
  }
  return loaded;
}

inline void emit_fusion(const RunConfig& cfg, std::vector<std::vector<std::string>> rows, double conflict,
                        std::ostream& out) {
  const std::string k = fixed(conflict, cfg.precision);
  switch (cfg.format) {
    case Format::table: {
      std::vector<std::vector<std::string>> all = {{"expr", "bits", "mass"}};
      all.insert(all.end(), rows.begin(), rows.end());
      all.push_back({"conflict", "", k});
      TableWriter t(out, widths_of(all));
      for (const auto& r : all) t.row(r);
      break;
    }
    case Format::csv:
      rows.push_back({"conflict", "", k});
      emit(out, cfg.format, {"expr", "bits", "mass"}, rows, {false, false, true});
      break;
    case Format::structured: {
      out << "{\"rule\": " << json_string(cfg.rule) << ", \"focal\": ";
      std::ostringstream focal;
      emit(focal, cfg.format, {"expr", "bits", "mass"}, rows, {false, false, true});
      std::string f = focal.str();
      f.pop_back();
      out << f << ", \"conflict\": " << k << "}\n";
      break;
    }
  }
}

inline int run_fuse(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<LoadedBBA> loaded = load_all(cfg, err);
  if (cfg.rule == "dsm") {
    std::vector<GeneralizedBBA> sources;
    for (const auto& l : loaded) sources.push_back(as_generalized(l));
    const GeneralizedBBA fused = dsm_fuse_many(sources);
    std::vector<std::vector<std::string>> rows;
    for (const auto& [mask, m] : fused.masses())
      rows.push_back({render_expr(to_dnf(mask)), mask.to_bits(), fixed(m, cfg.precision)});
    emit_fusion(cfg, std::move(rows), 0.0, out);
    return kSuccess;
  }

  if (loaded.size() != 2) {
    err << "error: rule " << cfg.rule << " combines exactly two sources\n";
    return kUsage;
  }
  for (const auto& l : loaded)
    if (l.model != Model::dst) {
      err << "error: rule " << cfg.rule << " needs \"dst\" model mass files\n";
      return kUsage;
    }
  const auto& m1 = std::get<ClassicalBBA>(loaded[0].bba);
  const auto& m2 = std::get<ClassicalBBA>(loaded[1].bba);
  FusionOutcome outcome = [&] {
    if (cfg.rule == "dempster") return dempster_combine(m1, m2);
    if (cfg.rule == "yager") return weighted_redistribution(m1, m2, yager_weights(m1.frame()));
    return weighted_redistribution(m1, m2, smets_weights(m1.frame()));
  }();
  std::vector<std::vector<std::string>> rows;
  for (const auto& [s, m] : outcome.result.masses())
    rows.push_back({subset_expr(s), atom_union_mask(s, m1.frame()).to_bits(), fixed(m, cfg.precision)});
  emit_fusion(cfg, std::move(rows), outcome.conflict, out);
  return kSuccess;
}

inline int run_beliefs(const RunConfig& cfg, const std::vector<std::string>& targets, bool all, std::ostream& out,
                       std::ostream& err) {
  if (targets.empty() == !all) {
    err << "error: give either --target EXPR (repeatable) or --all\n";
    return kUsage;
  }
  std::vector<LoadedBBA> loaded = load_all(cfg, err);
  std::vector<BeliefRow> report;
  if (loaded.size() == 1 && loaded.front().model == Model::dst) {
    report = dst_beliefs_report(std::get<ClassicalBBA>(loaded.front().bba), targets);
  } else {
    bool any_dst = false;
    std::vector<GeneralizedBBA> sources;
    for (const auto& l : loaded) {
      any_dst = any_dst || l.model == Model::dst;
      sources.push_back(as_generalized(l));
    }
    if (any_dst && loaded.size() > 1) {
      err << "error: several \"dst\" sources must be combined with `fuse` first\n";
      return kUsage;
    }
    report = beliefs_report(dsm_fuse_many(sources), targets);
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : report)
    rows.push_back({r.expr, r.mask.to_bits(), fixed(r.bel, cfg.precision), fixed(r.pl, cfg.precision)});
  emit(out, cfg.format, {"expr", "bits", "bel", "pl"}, rows, {false, false, true, true});
  return kSuccess;
}

}  // namespace detail

/// Parses argv and runs one subcommand; returns the process exit code.
inline int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyper-powerset generation, set-expression canonicalization and belief fusion", "dsmt"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* gen = app.add_subcommand("gen", "List every element of D^Theta in canonical order");
  gen->add_option("--n", cfg.n, "Number of atoms (0..6)")->required()->check(CLI::Range(0U, kMaxMaskAtoms));
  detail::add_format_option(gen, cfg.format);

  std::string expr;
  auto* canon = app.add_subcommand("canon", "Canonicalize a set expression");
  canon->add_option("--n", cfg.n, "Number of atoms (0..16)")->required()->check(CLI::Range(0U, kMaxMaskAtoms));
  canon->add_option("--expr", expr, "Expression, e.g. \"(t1|t2)&t3\"")->required();
  detail::add_format_option(canon, cfg.format);

  std::string method = "lookup";
  bool long_running = false;
  auto* count = app.add_subcommand("count", "Print the Dedekind number d(n)");
  count->add_option("--n", cfg.n, "Number of variables")->required();
  count->add_option("--method", method, "lookup, brute or formula")
      ->check(CLI::IsMember({"lookup", "brute", "formula"}));
  count->add_flag("--long-running", long_running, "Allow the explicit formula at n = 5 (2^32 terms)");

  unsigned n_min = 2;
  unsigned n_max = 0;
  auto* memsize = app.add_subcommand("memsize", "Storage needed for D^Theta");
  memsize->add_option("--max", n_max, "Largest n (<= 8)")->required();
  memsize->add_option("--min", n_min, "Smallest n (default 2)");
  detail::add_format_option(memsize, cfg.format);

  auto* fuse = app.add_subcommand("fuse", "Combine mass files");
  fuse->add_option("--rule", cfg.rule, "dsm, dempster, yager or smets")
      ->required()
      ->check(CLI::IsMember({"dsm", "dempster", "yager", "smets"}));
  fuse->add_option("--bba", cfg.inputs, "Mass files")->required()->expected(1, -1);
  fuse->add_option("--precision", cfg.precision, "Fractional digits")->check(CLI::Range(0, 17));
  detail::add_format_option(fuse, cfg.format);

  std::vector<std::string> targets;
  bool all = false;
  auto* beliefs = app.add_subcommand("beliefs", "Bel and Pl of target propositions");
  beliefs->add_option("--bba", cfg.inputs, "Mass files (several dsm files are fused first)")
      ->required()
      ->expected(1, -1);
  beliefs->add_option("--target", targets, "Target expression (repeatable)");
  beliefs->add_flag("--all", all, "Every element of D^Theta (n <= 4)");
  beliefs->add_option("--precision", cfg.precision, "Fractional digits")->check(CLI::Range(0, 17));
  detail::add_format_option(beliefs, cfg.format);

  app.add_flag("-q,--quiet", cfg.quiet, "Suppress warnings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kUsage;
  }

  try {
    if (*gen) return detail::run_gen(cfg, out);
    if (*canon) return detail::run_canon(cfg, expr, out);
    if (*count) return detail::run_count(cfg, method, long_running, out);
    if (*memsize) return detail::run_memsize(cfg, n_min, n_max, out);
    if (*fuse) return detail::run_fuse(cfg, out, err);
    if (*beliefs) return detail::run_beliefs(cfg, targets, all, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const FullContradiction& e) {
    err << "error: " << e.what() << '\n';
    return kContradiction;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace dsmt::cli
