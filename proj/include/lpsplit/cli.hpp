#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lpsplit/lpsplit.hpp"

namespace lpsplit::cli {

// Exit codes: 0 success, 1 domain failure (no matching splitting set,
// non-HCF input for an HCF-only method, enumeration cap exceeded),
// 2 usage or parse error.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

namespace detail {

inline std::string slurp(const std::string& path, std::istream& fallback) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << fallback.rdbuf();
    return ss.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw CLI::ValidationError("input", "cannot open file: " + path);
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

inline Program load_program(const std::string& path, std::istream& in,
                            std::ostream& err) {
  std::vector<std::string> warnings;
  Program p = parse_program(slurp(path, in), warnings);
  for (const std::string& w : warnings) err << "warning: " << w << '\n';
  return p;
}

inline std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline AtomSet atoms_by_name(const Program& p, const std::string& csv) {
  std::vector<AtomId> ids;
  for (const std::string& n : split_csv(csv)) {
    auto id = p.symbols.find(n);
    if (!id) throw std::invalid_argument("unknown atom '" + n + "'");
    ids.push_back(*id);
  }
  return make_atom_set(std::move(ids));
}

inline std::string join_indices(const std::vector<std::size_t>& xs) {
  if (xs.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(xs[i]);
  }
  return out;
}

inline void print_models(const std::vector<Interpretation>& models,
                         const SymbolTable& symbols, std::ostream& out) {
  for (const Interpretation& m : models)
    out << format_atom_set(symbols, m) << '\n';
  out << "count: " << models.size() << '\n';
}

}  // namespace detail

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int run(const std::vector<std::string>& args, std::istream& in,
               std::ostream& out, std::ostream& err) {
  CLI::App app{"splitting-set toolkit for ground disjunctive logic programs"};
  app.require_subcommand(1);

  std::string input;
  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("input", input, "program file (omit or '-' for stdin)");
  };

  auto* cmd_check = app.add_subcommand("check", "parse a program and print summary facts");
  add_input(cmd_check);

  bool graph_super = false, graph_dot = false;
  auto* cmd_graph = app.add_subcommand("graph", "print the (super-)dependency graph");
  add_input(cmd_graph);
  cmd_graph->add_flag("--super", graph_super, "condense SCCs into super-graph nodes");
  cmd_graph->add_flag("--dot", graph_dot, "emit Graphviz DOT instead of adjacency lines");

  bool split_nonempty = false, split_bottom_hcf = false, split_trace = false;
  std::string split_require;
  auto* cmd_split = app.add_subcommand("split", "find a minimum nontrivial splitting set");
  add_input(cmd_split);
  cmd_split->add_flag("--nonempty", split_nonempty,
                      "require a nonempty splitting set (default behaviour)");
  cmd_split->add_option("--require", split_require,
                        "comma-separated atoms the splitting set must contain");
  cmd_split->add_flag("--bottom-hcf", split_bottom_hcf,
                      "require the bottom program to be head-cycle-free");
  cmd_split->add_flag("--trace", split_trace, "print the search expansion log");

  auto* cmd_gsplit = app.add_subcommand("gsplit", "find a minimum nontrivial g-splitting set");
  add_input(cmd_gsplit);

  std::string solve_method = "brute";
  std::size_t solve_cap = 20;
  bool solve_verbose = false;
  auto* cmd_solve = app.add_subcommand("solve", "enumerate stable models");
  add_input(cmd_solve);
  cmd_solve->add_option("--method", solve_method, "brute|hcf|split|gsplit")
      ->check(CLI::IsMember({"brute", "hcf", "split", "gsplit"}));
  cmd_solve->add_option("--max-atoms", solve_cap, "enumeration cap (default 20)");
  cmd_solve->add_flag("--verbose", solve_verbose,
                      "report models missed by the gsplit pipeline");

  std::string reduce_true, reduce_false;
  auto* cmd_reduce = app.add_subcommand("reduce", "propagate fixed truth values");
  add_input(cmd_reduce);
  cmd_reduce->add_option("--true", reduce_true, "comma-separated atoms set to true");
  cmd_reduce->add_option("--false", reduce_false, "comma-separated atoms set to false");

  GenConfig gen_cfg;
  std::string gen_policy = "nonempty";
  auto add_policy = [&](CLI::App* cmd, std::string& var) {
    cmd->add_option("--head-policy", var, "nonempty|all8 (default nonempty)")
        ->check(CLI::IsMember({"nonempty", "all8"}));
  };
  auto* cmd_gen = app.add_subcommand("gen", "generate a random program");
  cmd_gen->add_option("--vars", gen_cfg.num_vars, "number of variables (default 20)");
  cmd_gen->add_option("--ratio", gen_cfg.ratio, "rules-to-variables ratio (default 4.25)");
  cmd_gen->add_option("--seed", gen_cfg.seed, "random seed (default 1)");
  add_policy(cmd_gen, gen_policy);

  SweepConfig sweep_cfg;
  std::string sweep_policy = "nonempty";
  auto* cmd_sweep = app.add_subcommand(
      "sweep", "minimum splitting-set size vs. rules-to-variables ratio (CSV)");
  cmd_sweep->add_option("--vars", sweep_cfg.num_vars, "number of variables (default 20)");
  cmd_sweep->add_option("--from", sweep_cfg.ratio_from, "first ratio (default 2.0)");
  cmd_sweep->add_option("--to", sweep_cfg.ratio_to, "last ratio (default 6.0)");
  cmd_sweep->add_option("--step", sweep_cfg.ratio_step, "ratio step (default 0.25)");
  cmd_sweep->add_option("--per-point", sweep_cfg.per_point,
                        "programs per ratio point (default 100)");
  cmd_sweep->add_option("--seed", sweep_cfg.seed, "master seed (default 1)");
  add_policy(cmd_sweep, sweep_policy);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*cmd_check) {
      Program p = detail::load_program(input, in, err);
      SuperDepGraph sg = build_super_graph(build_dep_graph(p));
      out << "atoms: " << lett(p).size() << '\n';
      out << "rules: " << p.rules.size() << '\n';
      out << "sccs: " << sg.sccs.size() << '\n';
      out << "hcf: " << (is_hcf(p, sg) ? "yes" : "no") << '\n';
      out << "sources:";
      for (const AtomSet& s : sources(sg)) out << ' ' << format_atom_set(p.symbols, s);
      out << '\n';
      return kOk;
    }

    if (*cmd_graph) {
      Program p = detail::load_program(input, in, err);
      DepGraph g = build_dep_graph(p);
      if (graph_super) {
        SuperDepGraph sg = build_super_graph(g);
        if (graph_dot) {
          out << to_dot(sg, p.symbols);
        } else {
          for (SccId c = 0; c < sg.sccs.size(); ++c) {
            out << format_atom_set(p.symbols, sg.sccs[c]) << " ->";
            for (SccId d : sg.dag_out[c])
              out << ' ' << format_atom_set(p.symbols, sg.sccs[d]);
            out << '\n';
          }
          out << "sources:";
          for (const AtomSet& s : sources(sg))
            out << ' ' << format_atom_set(p.symbols, s);
          out << '\n';
        }
      } else if (graph_dot) {
        out << to_dot(g, p.symbols);
      } else {
        std::vector<std::pair<std::string, AtomId>> by_name;
        for (AtomId a : g.nodes) by_name.emplace_back(p.symbols.name(a), a);
        std::sort(by_name.begin(), by_name.end());
        for (const auto& [name, a] : by_name) {
          out << name << " ->";
          std::vector<std::string> targets;
          for (AtomId b : g.out[a]) targets.push_back(p.symbols.name(b));
          std::sort(targets.begin(), targets.end());
          for (const std::string& t : targets) out << ' ' << t;
          out << '\n';
        }
      }
      return kOk;
    }

    if (*cmd_split) {
      Program p = detail::load_program(input, in, err);
      SuperDepGraph sg = build_super_graph(build_dep_graph(p));
      SplitGoal goal;
      if (!split_require.empty())
        goal.required = detail::atoms_by_name(p, split_require);
      if (split_bottom_hcf) goal.predicate = SplitGoal::bottom_is_hcf().predicate;
      SplitSearchResult result = find_min_splitting_set(p, sg, goal);
      if (split_trace) out << format_trace(result, p.symbols);
      if (!result.splitting_set)
        throw DomainError("no splitting set satisfies the given constraints");
      std::vector<std::size_t> kept;
      bottom(p, *result.splitting_set, &kept);
      out << "splitting set: " << format_atom_set(p.symbols, *result.splitting_set)
          << '\n';
      out << "size: " << result.splitting_set->size() << '\n';
      out << "bottom rules: " << detail::join_indices(kept) << '\n';
      return kOk;
    }

    if (*cmd_gsplit) {
      Program p = detail::load_program(input, in, err);
      SuperDepGraph sg = build_super_graph(build_dep_graph(p));
      auto found = min_g_splitting_set(p, sg);
      if (!found) throw DomainError("program has no atoms; no nontrivial g-splitting set");
      std::vector<std::size_t> kept;
      bottom(p, *found, &kept);
      out << "g-splitting set: " << format_atom_set(p.symbols, *found) << '\n';
      out << "size: " << found->size() << '\n';
      out << "bottom rules: " << detail::join_indices(kept) << '\n';
      return kOk;
    }

    if (*cmd_solve) {
      Program p = detail::load_program(input, in, err);
      std::vector<Interpretation> models;
      if (solve_method == "brute") {
        models = stable_models_bruteforce(p, solve_cap);
      } else if (solve_method == "hcf") {
        SuperDepGraph sg = build_super_graph(build_dep_graph(p));
        if (!is_hcf(p, sg)) throw DomainError("input program is not head-cycle-free");
        lpsplit::detail::MaskedProgram mp(p);
        if (mp.universe.size() > solve_cap)
          throw DomainError("program has " + std::to_string(mp.universe.size()) +
                            " atoms, above the enumeration cap");
        const std::uint64_t limit = std::uint64_t{1} << mp.universe.size();
        for (std::uint64_t mask = 0; mask < limit; ++mask) {
          Interpretation s = mp.to_atoms(mask);
          if (is_stable_hcf(p, sg, s)) models.push_back(std::move(s));
        }
        sort_models(p.symbols, models);
      } else if (solve_method == "split") {
        auto u = min_splitting_set(p);
        models = u ? stable_models_via_split(p, *u, solve_cap)
                   : stable_models_bruteforce(p, solve_cap);
      } else {  // gsplit
        SuperDepGraph sg = build_super_graph(build_dep_graph(p));
        if (!is_hcf(p, sg)) throw DomainError("input program is not head-cycle-free");
        auto s = min_g_splitting_set(p, sg);
        models = s ? stable_models_via_gsplit(p, *s, solve_cap)
                   : stable_models_bruteforce(p, solve_cap);
        if (solve_verbose && lett(p).size() <= solve_cap) {
          for (const Interpretation& m : stable_models_bruteforce(p, solve_cap)) {
            if (std::find(models.begin(), models.end(), m) == models.end())
              err << "note: stable model " << format_atom_set(p.symbols, m)
                  << " not produced by the g-split pipeline\n";
          }
        }
      }
      detail::print_models(models, p.symbols, out);
      return kOk;
    }

    if (*cmd_reduce) {
      Program p = detail::load_program(input, in, err);
      AtomSet x, y;
      try {
        x = detail::atoms_by_name(p, reduce_true);
        y = detail::atoms_by_name(p, reduce_false);
        if (intersects(x, y))
          throw CLI::ValidationError("--true/--false", "atom sets overlap");
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
      }
      std::vector<std::size_t> kept;
      Program reduced = reduce(p, x, y, &kept);
      for (std::size_t i = 0; i < reduced.rules.size(); ++i)
        out << render_rule(reduced.symbols, reduced.rules[i]) << "  % rule "
            << kept[i] << '\n';
      return kOk;
    }

    if (*cmd_gen) {
      gen_cfg.head_policy = gen_policy == "all8" ? HeadPolicy::kAllSubsets
                                                 : HeadPolicy::kNonEmptySubsets;
      try {
        out << render_program(gen_random_program(gen_cfg));
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
      }
      return kOk;
    }

    if (*cmd_sweep) {
      sweep_cfg.head_policy = sweep_policy == "all8" ? HeadPolicy::kAllSubsets
                                                     : HeadPolicy::kNonEmptySubsets;
      try {
        run_sweep(sweep_cfg, &out);
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
      }
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsageError;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kOk;
}

}  // namespace lpsplit::cli
