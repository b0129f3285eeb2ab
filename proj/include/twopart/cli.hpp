#pragma once

// The `twopart` command line. Verdicts go to `out` as JSON, diagnostics to
// `err`. Exit codes: 0 success or positive verdict, 1 negative verdict or
// a search that gave up, 2 usage or input error.

#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twopart/serialize.hpp"

namespace twopart::cli {

inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;

namespace detail {

inline const std::map<std::string, GenericMode> kModes = {
    {"bipartite", GenericMode::Bipartite},
    {"2partite", GenericMode::TwoPartite},
    {"orientation", GenericMode::Orientation},
};

inline const std::map<std::string, Direction> kDirections = {
    {"lr", Direction::LeftToRight},
    {"rl", Direction::RightToLeft},
    {"LeftToRight", Direction::LeftToRight},
    {"RightToLeft", Direction::RightToLeft},
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "check hom" and "check generic" are accepted as two words.
inline std::vector<std::string> normalize(std::vector<std::string> args) {
  if (args.size() >= 2 && args[0] == "check" && (args[1] == "hom" || args[1] == "generic")) {
    args[1] = "check-" + args[1];
    args.erase(args.begin());
  }
  return args;
}

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;

  TwoPartiteDigraph load(const std::string& path) const {
    if (path.empty()) throw UsageError("an input file is required");
    if (path == "-") return read_digraph(in);
    std::ifstream file(path);
    if (!file) throw Error(ErrorCode::ParseError, "cannot open input file", path);
    try {
      return read_digraph(file);
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), path);
    }
  }

  void emit(const json& j) const { out << j.dump() << '\n'; }
};

}  // namespace detail

inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  using detail::Context;
  using detail::UsageError;
  const Context ctx{in, out, err};
  args = detail::normalize(std::move(args));

  CLI::App app{"Homogeneous 2-partite digraphs: construction, checks, classification", "twopart"};
  app.require_subcommand(1);
  std::function<int()> action;

  // Shared option storage; each subcommand binds what it uses.
  std::string in_path, in1, in2, kind, format = "json", mode_name, dir_name = "lr";
  std::size_t level = 0, size = 0, x = 0, y = 0, max_x = 0, max_y = 0, cap = 64, max_defects = 0;
  std::optional<std::size_t> max_size;
  std::optional<std::uint64_t> seed, seed1, seed2;
  std::optional<std::size_t> level_opt;
  unsigned jobs = 1;
  bool exact = false, force = false;
  std::size_t aut_cap = kDefaultAutCap;

  auto mode_of = [&]() { return detail::kModes.at(mode_name); };
  auto add_mode = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--mode", mode_name, "bipartite | 2partite | orientation")
                    ->check(CLI::IsMember({"bipartite", "2partite", "orientation"}));
    if (required) opt->required();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format,--to", format, "json | dot")->check(CLI::IsMember({"json", "dot"}));
  };
  auto write_structure = [&](const TwoPartiteDigraph& d) {
    if (format == "dot") {
      out << write_dot(d);
    } else {
      out << write_json(d) << '\n';
    }
  };

  // gen
  auto* gen = app.add_subcommand("gen", "Build a catalog structure");
  gen->add_option("kind", kind,
                  "complete | empty | matching | complement-matching | m-kappa | four-cycle | "
                  "generic-bipartite | generic-2partite | generic-orientation | closure")
      ->required()
      ->check(CLI::IsMember({"complete", "empty", "matching", "complement-matching", "m-kappa", "four-cycle",
                             "generic-bipartite", "generic-2partite", "generic-orientation", "closure"}));
  gen->add_option("--size", size, "Side size, n, or kappa");
  gen->add_option("--x", x, "|X| for complete / empty (defaults to --size)");
  gen->add_option("--y", y, "|Y| for complete / empty (defaults to --size)");
  gen->add_option("--dir", dir_name, "Edge or matching direction: lr | rl")
      ->check(CLI::IsMember({"lr", "rl", "LeftToRight", "RightToLeft"}));
  gen->add_option("--level", level, "Extension level for generic builders and closure");
  gen->add_option("--seed", seed, "Seed for the randomized builders");
  gen->add_option("--cap", cap, "Vertex budget for closure");
  gen->add_option("--in", in_path, "Input structure for closure ('-' for stdin)");
  add_mode(gen, false);
  add_format(gen);
  gen->callback([&] {
    action = [&]() -> int {
      const Direction dir = detail::kDirections.at(dir_name);
      const std::size_t m = x ? x : size, n = y ? y : size;
      auto spec = [&] {
        if (!seed) throw UsageError("randomized builders need an explicit --seed");
        ApproximantSpec s;
        s.side_size = size;
        s.level = level;
        s.seed = *seed;
        s.growth_cap = cap;
        return s;
      };
      TwoPartiteDigraph d;
      if (kind == "complete") d = complete_bipartite_digraph(m, n, dir);
      else if (kind == "empty") d = empty_digraph(m, n);
      else if (kind == "matching") d = matching_digraph(size, dir);
      else if (kind == "complement-matching") d = complement_matching_digraph(size, dir);
      else if (kind == "m-kappa") d = m_kappa(size, dir);
      else if (kind == "four-cycle") d = directed_four_cycle();
      else if (kind == "generic-bipartite") d = generic_bipartite_approx(spec(), dir);
      else if (kind == "generic-2partite") d = generic_2partite_approx(spec());
      else if (kind == "generic-orientation") d = generic_orientation_approx(spec());
      else {
        if (mode_name.empty()) throw UsageError("closure needs --mode");
        const TwoPartiteDigraph base = ctx.load(in_path);
        try {
          d = witness_closure(base, mode_of(), level, cap);
        } catch (const CapExceeded& e) {
          json remaining = json::array();
          for (const Requirement& r : e.remaining()) remaining.push_back(requirement_json(e.partial(), r));
          ctx.emit({{"cap_exceeded", true}, {"partial", to_json(e.partial())}, {"remaining", remaining}});
          err << "error: " << e.what() << '\n';
          return kNegative;
        }
      }
      write_structure(d);
      return kOk;
    };
  });

  // check-hom
  auto* hom = app.add_subcommand("check-hom", "Decide homogeneity exactly");
  hom->add_option("--in", in_path, "Structure file ('-' for stdin)")->required();
  hom->add_flag("--exact", exact, "Exact decision (the only decider; accepted for clarity)");
  hom->add_option("--max-size", max_size, "Only substructures up to this many vertices");
  hom->add_option("--aut-cap", aut_cap, "Automorphism budget for orbit reduction");
  hom->callback([&] {
    action = [&]() -> int {
      const TwoPartiteDigraph d = ctx.load(in_path);
      HomogeneityOptions opts;
      opts.max_size = max_size;
      opts.aut_cap = aut_cap;
      const HomogeneityVerdict v = is_homogeneous(d, opts);
      ctx.emit(verdict_json(d, v));
      return v.holds ? kOk : kNegative;
    };
  });

  // check-generic
  auto* gen_check = app.add_subcommand("check-generic", "Check the level-t extension property");
  gen_check->add_option("--in", in_path, "Structure file ('-' for stdin)")->required();
  add_mode(gen_check, true);
  gen_check->add_option("--level", level, "Level t")->required();
  gen_check->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  gen_check->add_option("--max-defects", max_defects, "Stop after this many defects (0: all)");
  gen_check->callback([&] {
    action = [&]() -> int {
      const TwoPartiteDigraph d = ctx.load(in_path);
      CheckOptions opts;
      opts.jobs = jobs;
      opts.max_defects = max_defects;
      const GenericityReport r = check_generic(d, mode_of(), level, opts);
      ctx.emit(report_json(d, r));
      return r.holds ? kOk : kNegative;
    };
  });

  // classify
  auto* cls = app.add_subcommand("classify", "Name the class of a structure");
  cls->add_option("--in", in_path, "Structure file ('-' for stdin)")->required();
  auto* exact_flag = cls->add_flag("--exact", exact, "Exact mode (decides homogeneity)");
  cls->add_option("--level", level_opt, "Profile mode at level t")->excludes(exact_flag);
  cls->callback([&] {
    action = [&]() -> int {
      if (!exact && !level_opt) throw UsageError("classify needs --exact or --level T");
      const TwoPartiteDigraph d = ctx.load(in_path);
      const ClassLabel label = exact ? classify_exact(d) : classify_profile(d, *level_opt);
      ctx.emit({{"mode", exact ? "exact" : "profile"}, {"label", label_json(d, label)}});
      if (label.kind == ClassCase::Inconclusive) err << "inconclusive: " << label.reason << '\n';
      return label.kind == ClassCase::NotHomogeneous || label.kind == ClassCase::Inconclusive ? kNegative : kOk;
    };
  });

  // iso
  auto* iso = app.add_subcommand("iso", "Side-preserving isomorphism test");
  iso->add_option("--in1", in1, "First structure")->required();
  iso->add_option("--in2", in2, "Second structure")->required();
  iso->callback([&] {
    action = [&]() -> int {
      const TwoPartiteDigraph a = ctx.load(in1), b = ctx.load(in2);
      const auto map = are_isomorphic(a, b);
      ctx.emit({{"isomorphic", map.has_value()},
                {"map", map ? map_json(a, b, *map) : json(nullptr)},
                {"canonical1", canonical_form(a).hex()},
                {"canonical2", canonical_form(b).hex()}});
      return map ? kOk : kNegative;
    };
  });

  // aut
  auto* aut = app.add_subcommand("aut", "List side-preserving automorphisms");
  aut->add_option("--in", in_path, "Structure file ('-' for stdin)")->required();
  aut->add_option("--cap", aut_cap, "Give up above this many automorphisms");
  aut->callback([&] {
    action = [&]() -> int {
      const TwoPartiteDigraph d = ctx.load(in_path);
      const auto all = automorphisms(d, aut_cap);
      json maps = json::array();
      for (const auto& m : all) maps.push_back(map_json(d, d, m));
      ctx.emit({{"count", all.size()}, {"automorphisms", std::move(maps)}});
      return kOk;
    };
  });

  // baf
  auto* baf = app.add_subcommand("baf", "Back-and-forth between two approximants or two files");
  add_mode(baf, true);
  baf->add_option("--level", level, "Target map size (and build level)")->required();
  baf->add_option("--size", size, "Side size of the built approximants");
  baf->add_option("--seed1", seed1, "Seed of the first approximant");
  baf->add_option("--seed2", seed2, "Seed of the second approximant");
  baf->add_option("--in1", in1, "First structure instead of building one");
  baf->add_option("--in2", in2, "Second structure instead of building one");
  baf->callback([&] {
    action = [&]() -> int {
      const GenericMode mode = mode_of();
      if (mode == GenericMode::Bipartite) throw UsageError("baf runs in 2partite or orientation mode");
      const bool files = !in1.empty() || !in2.empty();
      if (files && (in1.empty() || in2.empty())) throw UsageError("baf needs both --in1 and --in2");
      if (!files && (!seed1 || !seed2 || size == 0)) {
        throw UsageError("baf needs --size, --seed1 and --seed2 (or --in1 and --in2)");
      }
      TwoPartiteDigraph a, b;
      std::optional<BafTrace> trace;
      json summary;
      if (files) {
        a = ctx.load(in1);
        b = ctx.load(in2);
        try {
          trace = back_and_forth(a, b, mode, level);
        } catch (const InsufficientGenericity& e) {
          const TwoPartiteDigraph& owner = e.structure() == 1 ? a : b;
          summary = {{"success", false},
                     {"error", to_string(e.code())},
                     {"message", e.what()},
                     {"requirement", requirement_json(owner, e.requirement())}};
        }
      } else {
        const UniquenessReport report = uniqueness_demo(size, level, *seed1, *seed2, mode);
        if (report.first) a = *report.first;
        if (report.second) b = *report.second;
        trace = report.trace;
        if (!report.success) {
          summary = {{"success", false}, {"error", to_string(*report.error)}, {"message", report.message}};
          if (report.requirement) {
            summary["requirement"] = requirement_json(report.requirement_owner == 1 ? a : b, *report.requirement);
          }
        }
      }
      if (trace) {
        for (std::size_t k = 0; k < trace->steps.size(); ++k) ctx.emit(step_json(a, b, trace->steps[k], k));
        summary = {{"success", true}, {"size", trace->result.size()}, {"map", map_json(a, b, trace->result)}};
      } else {
        err << "back-and-forth failed: " << summary["message"].get<std::string>() << '\n';
      }
      ctx.emit(summary);
      return trace ? kOk : kNegative;
    };
  });

  // enum
  auto* en = app.add_subcommand("enum", "Census of homogeneous structures as JSON lines");
  en->add_option("--max-x", max_x, "Largest |X|")->required();
  en->add_option("--max-y", max_y, "Largest |Y|")->required();
  en->add_flag("--force", force, "Allow sizes above the enumeration budget");
  en->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  en->callback([&] {
    action = [&]() -> int {
      EnumerateOptions opts;
      opts.force = force;
      opts.jobs = jobs;
      const auto census = census_homogeneous(max_x, max_y, opts);
      for (const CensusEntry& e : census) ctx.emit(census_entry_json(e));
      err << census.size() << " homogeneous classes with |X| <= " << max_x << ", |Y| <= " << max_y << '\n';
      return kOk;
    };
  });

  // verify
  auto* ver = app.add_subcommand("verify", "Check the finite classification against the census");
  ver->add_option("--max-x", max_x, "Largest |X|")->required();
  ver->add_option("--max-y", max_y, "Largest |Y|")->required();
  ver->add_flag("--force", force, "Allow sizes above the enumeration budget");
  ver->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  ver->callback([&] {
    action = [&]() -> int {
      EnumerateOptions opts;
      opts.force = force;
      opts.jobs = jobs;
      const TheoremReport r = verify_theorem_finite(max_x, max_y, opts);
      ctx.emit(theorem_report_json(r));
      for (const auto& d : r.discrepancies) err << "discrepancy: " << d.what << '\n';
      return r.pass ? kOk : kNegative;
    };
  });

  // convert
  auto* conv = app.add_subcommand("convert", "Re-emit a structure as canonical JSON or DOT");
  conv->add_option("--in", in_path, "Structure file (default stdin)");
  add_format(conv);
  conv->callback([&] {
    action = [&]() -> int {
      write_structure(ctx.load(in_path.empty() ? "-" : in_path));
      return kOk;
    };
  });

  std::vector<std::string> storage = args;
  storage.insert(storage.begin(), "twopart");
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    err << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    err << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_input_error(e.code()) ? kUsage : kNegative;
  }
}

inline int run(int argc, char** argv) {
  return run(std::vector<std::string>(argv + 1, argv + argc), std::cin, std::cout, std::cerr);
}

}  // namespace twopart::cli
