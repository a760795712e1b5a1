#pragma once

#include <optional>
#include <string>

#include "lpsplit/graph.hpp"
#include "lpsplit/program.hpp"
#include "lpsplit/split.hpp"

namespace lpsplit {

/// A candidate or verified stable model: a subset of Lett(P).
using Interpretation = AtomSet;

/// S satisfies the body of r when body_pos is inside S and body_neg misses S;
/// S satisfies r when it does not satisfy the body or some head atom is in S.
inline bool satisfies(const Interpretation& s, const Rule& r) {
  bool body_sat = subset_of(r.body_pos, s) && !intersects(r.body_neg, s);
  return !body_sat || intersects(r.head, s);
}

inline bool satisfies_all(const Interpretation& s, const Program& p) {
  for (const Rule& r : p.rules)
    if (!satisfies(s, r)) return false;
  return true;
}

/// Gelfond-Lifschitz reduct: drop each rule whose negative body meets s, strip
/// the negative body from the rest. Rule order is preserved.
inline Program reduct(const Program& p, const Interpretation& s) {
  Program out;
  out.symbols = p.symbols;
  for (const Rule& r : p.rules) {
    if (intersects(r.body_neg, s)) continue;
    out.rules.push_back({r.head, r.body_pos, {}});
  }
  return out;
}

namespace detail {

// Per-rule bitmasks over an enumeration universe of <= 64 atoms.
struct MaskedProgram {
  AtomSet universe;  // lett(p), ascending atom ids; bit i = universe[i]
  struct MaskedRule {
    std::uint64_t head, body_pos, body_neg;
  };
  std::vector<MaskedRule> rules;

  explicit MaskedProgram(const Program& p) : universe(lett(p)) {
    auto mask_of = [&](const AtomSet& part) {
      std::uint64_t m = 0;
      for (AtomId a : part) {
        std::size_t bit =
            std::lower_bound(universe.begin(), universe.end(), a) - universe.begin();
        m |= std::uint64_t{1} << bit;
      }
      return m;
    };
    rules.reserve(p.rules.size());
    for (const Rule& r : p.rules)
      rules.push_back({mask_of(r.head), mask_of(r.body_pos), mask_of(r.body_neg)});
  }

  // T closed under the reduct of the program w.r.t. S.
  bool closed_under_reduct(std::uint64_t t, std::uint64_t s) const {
    for (const MaskedRule& r : rules) {
      if (r.body_neg & s) continue;            // rule deleted in the reduct
      if ((r.body_pos & t) != r.body_pos) continue;
      if ((r.head & t) == 0) return false;
    }
    return true;
  }

  AtomSet to_atoms(std::uint64_t mask) const {
    AtomSet out;
    for (std::size_t i = 0; i < universe.size(); ++i)
      if (mask >> i & 1) out.push_back(universe[i]);
    return out;
  }
};

}  // namespace detail

/// Canonical model order: by size, then lexicographically by sorted atom
/// names. Duplicates are removed.
inline void sort_models(const SymbolTable& symbols,
                        std::vector<Interpretation>& models) {
  auto key = [&](const Interpretation& m) {
    std::vector<std::string> names;
    names.reserve(m.size());
    for (AtomId a : m) names.push_back(symbols.name(a));
    std::sort(names.begin(), names.end());
    return names;
  };
  std::sort(models.begin(), models.end(),
            [&](const Interpretation& a, const Interpretation& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return key(a) < key(b);
            });
  models.erase(std::unique(models.begin(), models.end()), models.end());
}

/// All stable models by direct enumeration: S is stable iff S is closed under
/// reduct(p, S) and no proper subset of S is. Minimality is checked by
/// enumerating the 2^|S| subsets, which is fine below the atom cap.
inline std::vector<Interpretation> stable_models_bruteforce(
    const Program& p, std::size_t max_atoms = 20) {
  detail::MaskedProgram mp(p);
  const std::size_t n = mp.universe.size();
  if (n > max_atoms)
    throw std::invalid_argument("program has " + std::to_string(n) +
                                " atoms, above the enumeration cap of " +
                                std::to_string(max_atoms));

  std::vector<Interpretation> models;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < limit; ++s) {
    if (!mp.closed_under_reduct(s, s)) continue;
    bool minimal = true;
    if (s != 0) {
      std::uint64_t sub = (s - 1) & s;
      while (true) {
        if (mp.closed_under_reduct(sub, s)) {
          minimal = false;
          break;
        }
        if (sub == 0) break;
        sub = (sub - 1) & s;
      }
    }
    if (minimal) models.push_back(mp.to_atoms(s));
  }
  sort_models(p.symbols, models);
  return models;
}

namespace detail {

// Least fixpoint of provable atoms w.r.t. s, recording for each atom the
// first rule that derived it and the derivation order. A rule derives its
// unique head atom in s once its body is satisfied by s and its positive body
// is already derived.
struct ProofFixpoint {
  std::vector<char> provable;             // by AtomId
  std::vector<std::size_t> marker_rule;   // 1-based rule per atom
  std::vector<AtomId> order;              // derivation order

  ProofFixpoint(const Program& p, const Interpretation& s) {
    provable.assign(p.symbols.size(), 0);
    marker_rule.assign(p.symbols.size(), 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < p.rules.size(); ++i) {
        const Rule& r = p.rules[i];
        if (!subset_of(r.body_pos, s) || intersects(r.body_neg, s)) continue;
        AtomSet witness = set_intersection(r.head, s);
        if (witness.size() != 1 || provable[witness[0]]) continue;
        bool ready = true;
        for (AtomId b : r.body_pos)
          if (!provable[b]) {
            ready = false;
            break;
          }
        if (!ready) continue;
        provable[witness[0]] = 1;
        marker_rule[witness[0]] = i + 1;
        order.push_back(witness[0]);
        changed = true;
      }
    }
  }
};

}  // namespace detail

/// Atoms of s that have a proof w.r.t. p and s.
inline AtomSet provable_atoms(const Program& p, const Interpretation& s) {
  detail::ProofFixpoint fp(p, s);
  AtomSet out;
  for (AtomId a : s)
    if (fp.provable[a]) out.push_back(a);
  return out;
}

/// A proof of one atom: rule indices r_1..r_n (1-based) such that each rule
/// has exactly one head atom in s, bodies are satisfied by s, positive bodies
/// are witnessed earlier, and a is witnessed by r_n. Every prefix is itself a
/// proof of its last rule's witness.
struct ProofTrace {
  std::vector<std::size_t> rules;
};

inline std::optional<ProofTrace> find_proof(const Program& p,
                                            const Interpretation& s, AtomId a) {
  if (!contains(s, a))
    throw std::invalid_argument("atom '" + p.symbols.name(a) +
                                "' is not in the interpretation");
  detail::ProofFixpoint fp(p, s);
  if (!fp.provable[a]) return std::nullopt;

  // Collect the transitive positive-body support of a, then order it by
  // derivation time; that ordering makes every prefix a valid proof.
  std::vector<char> needed(p.symbols.size(), 0);
  std::vector<AtomId> work{a};
  needed[a] = 1;
  while (!work.empty()) {
    AtomId cur = work.back();
    work.pop_back();
    const Rule& r = p.rules[fp.marker_rule[cur] - 1];
    for (AtomId b : r.body_pos)
      if (!needed[b]) {
        needed[b] = 1;
        work.push_back(b);
      }
  }
  ProofTrace trace;
  for (AtomId atom : fp.order)
    if (needed[atom]) trace.rules.push_back(fp.marker_rule[atom]);
  return trace;
}

/// Stability check for head-cycle-free programs: s is stable iff s satisfies
/// every rule and every atom of s has a proof.
inline bool is_stable_hcf(const Program& p, const SuperDepGraph& sg,
                          const Interpretation& s) {
  if (!is_hcf(p, sg))
    throw std::invalid_argument("program is not head-cycle-free");
  detail::require_known(p, s);
  if (!satisfies_all(s, p)) return false;
  return provable_atoms(p, s).size() == s.size();
}

inline bool is_stable_hcf(const Program& p, const Interpretation& s) {
  return is_stable_hcf(p, build_super_graph(build_dep_graph(p)), s);
}

/// Reduce(P, X, Y): set the atoms of X true and the atoms of Y false.
/// A rule is deleted when its negative body or head meets X, or its positive
/// body meets Y; surviving rules drop X from positive bodies and Y from heads
/// and negative bodies. Defined set-theoretically, so the iteration order of
/// X and Y is immaterial. A rule reduced to empty head and empty body stays
/// as the unsatisfiable constraint ":-.".
inline Program reduce(const Program& p, const AtomSet& x, const AtomSet& y,
                      std::vector<std::size_t>* kept_indices = nullptr) {
  if (intersects(x, y))
    throw std::invalid_argument("true and false atom sets overlap");
  Program out;
  out.symbols = p.symbols;
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    const Rule& r = p.rules[i];
    if (intersects(r.body_neg, x) || intersects(r.head, x) ||
        intersects(r.body_pos, y))
      continue;
    out.rules.push_back({set_difference(r.head, y), set_difference(r.body_pos, x),
                         set_difference(r.body_neg, y)});
    if (kept_indices) kept_indices->push_back(i + 1);
  }
  return out;
}

namespace detail {

// Shared decomposition pipeline: bottom models X, then models of the
// propagated top Reduce(P, X, u - X), combined as X union Y.
inline std::vector<Interpretation> split_pipeline(const Program& p,
                                                  const AtomSet& u,
                                                  std::size_t max_atoms) {
  std::vector<Interpretation> out;
  Program bot = bottom(p, u);
  for (const Interpretation& x : stable_models_bruteforce(bot, max_atoms)) {
    Program top = reduce(p, x, set_difference(u, x));
    for (const Interpretation& y : stable_models_bruteforce(top, max_atoms))
      out.push_back(set_union(x, y));
  }
  sort_models(p.symbols, out);
  return out;
}

}  // namespace detail

/// Splitting Set Theorem: the stable models of p are exactly
/// { X u Y : X stable in b_U(P), Y stable in Reduce(P, X, U-X) }.
inline std::vector<Interpretation> stable_models_via_split(
    const Program& p, const AtomSet& u, std::size_t max_atoms = 20) {
  if (!is_splitting_set(p, u))
    throw std::invalid_argument("not a splitting set");
  return detail::split_pipeline(p, u, max_atoms);
}

/// Program decomposition over a g-splitting set of an HCF program. Every
/// returned set is a stable model of p; the converse direction is not
/// guaranteed, so the result may omit models (callers can compare with the
/// brute-force enumeration when the program is small enough).
inline std::vector<Interpretation> stable_models_via_gsplit(
    const Program& p, const AtomSet& s, std::size_t max_atoms = 20) {
  if (!is_hcf(p))
    throw std::invalid_argument("program is not head-cycle-free");
  if (!is_g_splitting_set(p, s))
    throw std::invalid_argument("not a g-splitting set");
  return detail::split_pipeline(p, s, max_atoms);
}

}  // namespace lpsplit
