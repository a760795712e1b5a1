#pragma once

#include <functional>
#include <optional>
#include <queue>
#include <set>
#include <string>

#include "lpsplit/graph.hpp"
#include "lpsplit/program.hpp"

namespace lpsplit {

namespace detail {
inline void require_known(const Program& p, const AtomSet& u) {
  AtomSet known = lett(p);
  for (AtomId a : u) {
    if (!contains(known, a))
      throw std::invalid_argument("atom '" + p.symbols.name(a) +
                                  "' does not occur in the program");
  }
}
}  // namespace detail

/// Splitting set: every rule whose head meets u has *all* its atoms in u.
inline bool is_splitting_set(const Program& p, const AtomSet& u) {
  detail::require_known(p, u);
  for (const Rule& r : p.rules) {
    if (!intersects(r.head, u)) continue;
    if (!subset_of(r.head, u) || !subset_of(r.body_pos, u) ||
        !subset_of(r.body_neg, u))
      return false;
  }
  return true;
}

/// Generalized splitting set: every rule whose head meets u has its *body*
/// in u (head atoms outside u are allowed).
inline bool is_g_splitting_set(const Program& p, const AtomSet& u) {
  detail::require_known(p, u);
  for (const Rule& r : p.rules) {
    if (!intersects(r.head, u)) continue;
    if (!subset_of(r.body_pos, u) || !subset_of(r.body_neg, u)) return false;
  }
  return true;
}

/// b_U(P) (equivalently P_S): the rules using only atoms from u, in original
/// order. When kept_indices is given it receives the 1-based indices of the
/// retained rules.
inline Program bottom(const Program& p, const AtomSet& u,
                      std::vector<std::size_t>* kept_indices = nullptr) {
  Program out;
  out.symbols = p.symbols;
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    const Rule& r = p.rules[i];
    if (subset_of(r.head, u) && subset_of(r.body_pos, u) &&
        subset_of(r.body_neg, u)) {
      out.rules.push_back(r);
      if (kept_indices) kept_indices->push_back(i + 1);
    }
  }
  return out;
}

/// A search state: a set of SCC ids closed under DAG ancestors (a collection
/// of trees). Its atom count doubles as the path cost.
struct SearchState {
  detail::Bitset scc_ids;
  std::uint32_t atom_count = 0;

  bool contains_atom(const SuperDepGraph& sg, AtomId a) const {
    SccId c = sg.scc_index[a];
    return c != kNoScc && scc_ids.test(c);
  }
};

/// Lowest-indexed rule witnessing that the state is not a splitting set:
/// head meets the state but some rule atom is outside it. Returns a 0-based
/// rule index, or nothing when the state is a splitting set.
inline std::optional<std::size_t> violating_rule(const Program& p,
                                                 const SuperDepGraph& sg,
                                                 const SearchState& s) {
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    const Rule& r = p.rules[i];
    bool head_hit = false;
    for (AtomId h : r.head)
      if (s.contains_atom(sg, h)) {
        head_hit = true;
        break;
      }
    if (!head_hit) continue;
    auto all_in = [&](const AtomSet& part) {
      for (AtomId a : part)
        if (!s.contains_atom(sg, a)) return false;
      return true;
    };
    if (!all_in(r.head) || !all_in(r.body_pos) || !all_in(r.body_neg)) return i;
  }
  return std::nullopt;
}

struct SuccessorStep {
  SearchState state;
  std::size_t rule_index;  // 1-based rule that forced the extension
  std::uint32_t action_cost;
};

/// The single action available to a non-initial state: find the lowest rule
/// proving the state is not a splitting set and unite the state with that
/// rule's tree. Returns nothing when the state is a goal (a splitting set).
inline std::optional<SuccessorStep> successor(const Program& p,
                                              const SuperDepGraph& sg,
                                              const SearchState& s) {
  auto rule = violating_rule(p, sg, s);
  if (!rule) return std::nullopt;

  SearchState next;
  next.scc_ids = s.scc_ids;
  const Rule& r = p.rules[*rule];
  auto add_tree = [&](const AtomSet& part) {
    for (AtomId a : part) next.scc_ids |= sg.ancestors[sg.scc_index[a]];
  };
  add_tree(r.head);
  add_tree(r.body_pos);
  add_tree(r.body_neg);
  next.atom_count = 0;
  for (SccId c = 0; c < sg.sccs.size(); ++c)
    if (next.scc_ids.test(c))
      next.atom_count += static_cast<std::uint32_t>(sg.sccs[c].size());
  return SuccessorStep{std::move(next), *rule + 1, next.atom_count - s.atom_count};
}

/// Goal description for the splitting-set search. `required` seeds the search
/// with tree(required) instead of the SG sources; `predicate`, when set, must
/// additionally accept a candidate splitting set before it counts as a goal.
struct SplitGoal {
  AtomSet required;
  std::function<bool(const Program&, const AtomSet&)> predicate;

  static SplitGoal nonempty_min_size() { return {}; }

  static SplitGoal must_contain(AtomSet atoms) {
    SplitGoal g;
    g.required = std::move(atoms);
    return g;
  }

  static SplitGoal bottom_is_hcf() {
    SplitGoal g;
    g.predicate = [](const Program& p, const AtomSet& u) {
      return is_hcf(bottom(p, u));
    };
    return g;
  }

  static SplitGoal custom(std::function<bool(const Program&, const AtomSet&)> f) {
    SplitGoal g;
    g.predicate = std::move(f);
    return g;
  }
};

enum class ExpandOutcome {
  kExpanded,  // not a splitting set; child generated
  kGoal,      // splitting set satisfying the goal
  kRejected,  // splitting set failing the goal predicate; branch abandoned
};

/// One uniform-cost expansion, recorded for the `--trace` output.
struct Expansion {
  AtomSet atoms;
  std::uint32_t cost = 0;
  ExpandOutcome outcome = ExpandOutcome::kExpanded;
  std::size_t via_rule = 0;  // 1-based rule applied here; 0 = none

  struct Child {
    AtomSet atoms;
    std::uint32_t cost;
    bool duplicate;  // already generated on another path; not re-queued
  };
  std::vector<Child> children;
};

struct SplitSearchResult {
  std::optional<AtomSet> splitting_set;
  std::vector<Expansion> trace;
};

/// Uniform-cost search for a minimum-size nontrivial splitting set subject to
/// `goal`. The initial state is the empty set; its successors are the SG
/// sources (or the single state tree(goal.required)). States are expanded in
/// ascending atom count with FIFO tie-breaking, so the first accepted goal has
/// minimum size. Lett(P) itself is admitted as a last-resort answer.
inline SplitSearchResult find_min_splitting_set(
    const Program& p, const SuperDepGraph& sg,
    const SplitGoal& goal = SplitGoal::nonempty_min_size()) {
  SplitSearchResult result;
  const std::size_t m = sg.sccs.size();

  struct QueueEntry {
    std::uint32_t cost;
    std::uint64_t seq;
    SearchState state;
  };
  auto later = [](const QueueEntry& a, const QueueEntry& b) {
    return a.cost != b.cost ? a.cost > b.cost : a.seq > b.seq;
  };
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, decltype(later)> open(later);
  std::set<detail::Bitset> generated;
  std::uint64_t seq = 0;

  auto make_state = [&](const detail::Bitset& bits) {
    SearchState s;
    s.scc_ids = bits;
    for (SccId c = 0; c < m; ++c)
      if (bits.test(c)) s.atom_count += static_cast<std::uint32_t>(sg.sccs[c].size());
    return s;
  };

  Expansion init;
  init.cost = 0;
  std::vector<SearchState> starts;
  if (!goal.required.empty()) {
    detail::require_known(p, goal.required);
    detail::Bitset bits(m);
    for (AtomId a : goal.required) bits |= sg.ancestors[sg.scc_index[a]];
    starts.push_back(make_state(bits));
  } else {
    for (SccId src : sg.source_ids) {
      detail::Bitset bits(m);
      bits.set(src);
      starts.push_back(make_state(bits));
    }
  }
  for (SearchState& s : starts) {
    init.children.push_back({atoms_of_scc_bits(sg, s.scc_ids), s.atom_count, false});
    generated.insert(s.scc_ids);
    open.push({s.atom_count, seq++, std::move(s)});
  }
  result.trace.push_back(std::move(init));

  while (!open.empty()) {
    QueueEntry entry = open.top();
    open.pop();

    Expansion ex;
    ex.atoms = atoms_of_scc_bits(sg, entry.state.scc_ids);
    ex.cost = entry.cost;

    auto step = successor(p, sg, entry.state);
    if (!step) {
      // A splitting set. Accept unless the goal predicate rejects it.
      if (!goal.predicate || goal.predicate(p, ex.atoms)) {
        ex.outcome = ExpandOutcome::kGoal;
        result.splitting_set = ex.atoms;
        result.trace.push_back(std::move(ex));
        return result;
      }
      ex.outcome = ExpandOutcome::kRejected;
      result.trace.push_back(std::move(ex));
      continue;
    }

    ex.via_rule = step->rule_index;
    bool duplicate = generated.count(step->state.scc_ids) > 0;
    ex.children.push_back(
        {atoms_of_scc_bits(sg, step->state.scc_ids), step->state.atom_count, duplicate});
    if (!duplicate) {
      generated.insert(step->state.scc_ids);
      open.push({step->state.atom_count, seq++, std::move(step->state)});
    }
    result.trace.push_back(std::move(ex));
  }
  return result;
}

/// Convenience wrapper building the graphs internally.
inline std::optional<AtomSet> min_splitting_set(
    const Program& p, const SplitGoal& goal = SplitGoal::nonempty_min_size()) {
  SuperDepGraph sg = build_super_graph(build_dep_graph(p));
  return find_min_splitting_set(p, sg, goal).splitting_set;
}

/// Minimum nonempty g-splitting set. g-splitting sets are exactly the
/// ancestor-closed atom sets (unions of trees in the SG), so the smallest
/// nonempty one is a smallest source SCC; ties go to the lowest SCC id.
inline std::optional<AtomSet> min_g_splitting_set(const Program&,
                                                  const SuperDepGraph& sg) {
  std::optional<SccId> best;
  for (SccId src : sg.source_ids) {
    if (!best || sg.sccs[src].size() < sg.sccs[*best].size()) best = src;
  }
  if (!best) return std::nullopt;
  return sg.sccs[*best];
}

/// Renders the expansion log, one line per expansion:
///   expand {c, d} cost=2 via rule 4 -> {c, d, g} cost=3
inline std::string format_trace(const SplitSearchResult& result,
                                const SymbolTable& symbols) {
  std::string out;
  for (const Expansion& ex : result.trace) {
    out += "expand " + format_atom_set(symbols, ex.atoms) +
           " cost=" + std::to_string(ex.cost);
    if (ex.via_rule != 0) out += " via rule " + std::to_string(ex.via_rule);
    if (ex.outcome == ExpandOutcome::kGoal) out += " goal";
    if (ex.outcome == ExpandOutcome::kRejected) out += " rejected";
    for (std::size_t i = 0; i < ex.children.size(); ++i) {
      out += i == 0 ? " -> " : ", ";
      out += format_atom_set(symbols, ex.children[i].atoms) +
             " cost=" + std::to_string(ex.children[i].cost);
      if (ex.children[i].duplicate) out += " (duplicate)";
    }
    out += '\n';
  }
  return out;
}

}  // namespace lpsplit
