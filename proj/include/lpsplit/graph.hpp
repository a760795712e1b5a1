#pragma once

#include <string>

#include "lpsplit/detail.hpp"
#include "lpsplit/program.hpp"

namespace lpsplit {

/// Atom dependency graph: an arc A -> B for every rule with A in the body
/// (positive or negative occurrence) and B in the head. Nodes are exactly
/// Lett(P).
struct DepGraph {
  AtomSet nodes;                 // Lett(P)
  std::vector<AtomSet> out;      // indexed by AtomId; empty outside Lett(P)
};

inline DepGraph build_dep_graph(const Program& p) {
  DepGraph g;
  g.nodes = lett(p);
  g.out.resize(p.symbols.size());
  std::vector<std::vector<AtomId>> raw(p.symbols.size());
  for (const Rule& r : p.rules) {
    for (AtomId b : r.body_pos)
      for (AtomId h : r.head) raw[b].push_back(h);
    for (AtomId b : r.body_neg)
      for (AtomId h : r.head) raw[b].push_back(h);
  }
  for (AtomId a : g.nodes) g.out[a] = make_atom_set(std::move(raw[a]));
  return g;
}

using SccId = std::uint32_t;
inline constexpr SccId kNoScc = static_cast<SccId>(-1);

/// SCC condensation of the dependency graph. SCC ids are assigned in a fixed
/// topological order (every DAG arc goes from a lower id to a higher id), so
/// source enumeration, tie-breaking and all outputs are deterministic.
struct SuperDepGraph {
  std::vector<AtomSet> sccs;                 // indexed by SccId, topological
  std::vector<std::vector<SccId>> dag_out;   // deduplicated, ascending
  std::vector<std::vector<SccId>> dag_in;
  std::vector<SccId> scc_index;              // AtomId -> SccId; kNoScc outside Lett(P)
  std::vector<SccId> source_ids;             // in-degree-0 SCCs, ascending
  std::vector<detail::Bitset> ancestors;     // per SCC: every SCC that reaches it, itself included
};

inline SuperDepGraph build_super_graph(const DepGraph& g) {
  constexpr std::uint32_t kUnvisited = static_cast<std::uint32_t>(-1);
  const std::size_t n = g.out.size();

  SuperDepGraph sg;
  sg.scc_index.assign(n, kNoScc);

  // Iterative Tarjan. Roots are taken in ascending atom id and adjacency
  // lists are already sorted, so the emission order (reverse topological) is
  // fixed for a given program.
  std::vector<std::uint32_t> index(n, kUnvisited);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<AtomId> stack;
  std::vector<std::vector<AtomId>> emitted;
  struct Frame {
    AtomId v;
    std::size_t next_edge;
  };
  std::vector<Frame> frames;
  std::uint32_t counter = 0;

  for (AtomId root : g.nodes) {
    if (index[root] != kUnvisited) continue;
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    frames.push_back({root, 0});
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_edge < g.out[f.v].size()) {
        AtomId w = g.out[f.v][f.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        AtomId v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == index[v]) {
          emitted.emplace_back();
          AtomId w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            emitted.back().push_back(w);
          } while (w != v);
        }
      }
    }
  }

  // Reverse the emission order to number SCCs topologically.
  const std::size_t m = emitted.size();
  sg.sccs.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    SccId id = static_cast<SccId>(m - 1 - i);
    AtomSet atoms = make_atom_set(std::move(emitted[i]));
    for (AtomId a : atoms) sg.scc_index[a] = id;
    sg.sccs[id] = std::move(atoms);
  }

  std::vector<std::vector<SccId>> raw_out(m), raw_in(m);
  for (AtomId a : g.nodes) {
    for (AtomId b : g.out[a]) {
      SccId ca = sg.scc_index[a], cb = sg.scc_index[b];
      if (ca != cb) {
        raw_out[ca].push_back(cb);
        raw_in[cb].push_back(ca);
      }
    }
  }
  sg.dag_out.resize(m);
  sg.dag_in.resize(m);
  for (std::size_t c = 0; c < m; ++c) {
    std::sort(raw_out[c].begin(), raw_out[c].end());
    raw_out[c].erase(std::unique(raw_out[c].begin(), raw_out[c].end()), raw_out[c].end());
    sg.dag_out[c] = std::move(raw_out[c]);
    std::sort(raw_in[c].begin(), raw_in[c].end());
    raw_in[c].erase(std::unique(raw_in[c].begin(), raw_in[c].end()), raw_in[c].end());
    sg.dag_in[c] = std::move(raw_in[c]);
  }

  for (SccId c = 0; c < m; ++c)
    if (sg.dag_in[c].empty()) sg.source_ids.push_back(c);

  // Ancestor closure in one topological pass: every predecessor has a lower id.
  sg.ancestors.assign(m, detail::Bitset(m));
  for (SccId c = 0; c < m; ++c) {
    sg.ancestors[c].set(c);
    for (SccId pre : sg.dag_in[c]) sg.ancestors[c] |= sg.ancestors[pre];
  }
  return sg;
}

inline SccId scc_id_of(const SuperDepGraph& sg, AtomId v) {
  if (v >= sg.scc_index.size() || sg.scc_index[v] == kNoScc)
    throw std::invalid_argument("atom does not occur in the program");
  return sg.scc_index[v];
}

/// scc(v): the atom set of v's strongly connected component.
inline const AtomSet& scc_of(const SuperDepGraph& sg, AtomId v) {
  return sg.sccs[scc_id_of(sg, v)];
}

/// Atom set of a collection of SCC ids given as a bitset.
inline AtomSet atoms_of_scc_bits(const SuperDepGraph& sg, const detail::Bitset& bits) {
  std::vector<AtomId> out;
  for (SccId c = 0; c < sg.sccs.size(); ++c)
    if (bits.test(c)) out.insert(out.end(), sg.sccs[c].begin(), sg.sccs[c].end());
  return make_atom_set(std::move(out));
}

/// tree(vs): all atoms in SCCs from which some scc(v), v in vs, is reachable
/// in the DAG (the ancestor closure), including the scc(v) themselves.
inline AtomSet tree_of(const SuperDepGraph& sg, const AtomSet& vs) {
  detail::Bitset acc(sg.sccs.size());
  for (AtomId v : vs) acc |= sg.ancestors[scc_id_of(sg, v)];
  return atoms_of_scc_bits(sg, acc);
}

inline AtomSet tree_of(const SuperDepGraph& sg, AtomId v) {
  return tree_of(sg, AtomSet{v});
}

/// Source SCCs (no incoming DAG arc) as atom sets, in topological id order.
inline std::vector<AtomSet> sources(const SuperDepGraph& sg) {
  std::vector<AtomSet> out;
  out.reserve(sg.source_ids.size());
  for (SccId c : sg.source_ids) out.push_back(sg.sccs[c]);
  return out;
}

/// Head-cycle-free: no rule has two distinct head atoms in one SCC.
inline bool is_hcf(const Program& p, const SuperDepGraph& sg) {
  std::vector<SccId> seen;
  for (const Rule& r : p.rules) {
    seen.clear();
    for (AtomId h : r.head) seen.push_back(sg.scc_index[h]);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  }
  return true;
}

inline bool is_hcf(const Program& p) {
  return is_hcf(p, build_super_graph(build_dep_graph(p)));
}

inline std::string to_dot(const DepGraph& g, const SymbolTable& symbols) {
  std::vector<std::string> names;
  for (AtomId a : g.nodes) names.push_back(symbols.name(a));
  std::sort(names.begin(), names.end());
  std::string out = "digraph dependencies {\n  rankdir=LR;\n";
  for (const std::string& n : names) out += "  \"" + n + "\";\n";
  std::vector<std::pair<std::string, std::string>> arcs;
  for (AtomId a : g.nodes)
    for (AtomId b : g.out[a]) arcs.emplace_back(symbols.name(a), symbols.name(b));
  std::sort(arcs.begin(), arcs.end());
  for (const auto& [from, to] : arcs)
    out += "  \"" + from + "\" -> \"" + to + "\";\n";
  out += "}\n";
  return out;
}

inline std::string to_dot(const SuperDepGraph& sg, const SymbolTable& symbols) {
  std::string out = "digraph super_dependencies {\n  rankdir=LR;\n";
  for (SccId c = 0; c < sg.sccs.size(); ++c) {
    out += "  scc" + std::to_string(c) + " [shape=box,label=\"" +
           format_atom_set(symbols, sg.sccs[c]) + "\"];\n";
  }
  for (SccId c = 0; c < sg.sccs.size(); ++c)
    for (SccId d : sg.dag_out[c])
      out += "  scc" + std::to_string(c) + " -> scc" + std::to_string(d) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace lpsplit
