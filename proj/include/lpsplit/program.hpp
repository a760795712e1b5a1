#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lpsplit {

using AtomId = std::uint32_t;

/// Sorted, duplicate-free vector of atom ids. Every rule part and every
/// interpretation uses this representation, so each traversal order is
/// deterministic.
using AtomSet = std::vector<AtomId>;

inline AtomSet make_atom_set(std::vector<AtomId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

inline bool contains(const AtomSet& s, AtomId a) {
  return std::binary_search(s.begin(), s.end(), a);
}

inline bool subset_of(const AtomSet& a, const AtomSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool intersects(const AtomSet& a, const AtomSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      return true;
    }
  }
  return false;
}

inline AtomSet set_union(const AtomSet& a, const AtomSet& b) {
  AtomSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline AtomSet set_intersection(const AtomSet& a, const AtomSet& b) {
  AtomSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline AtomSet set_difference(const AtomSet& a, const AtomSet& b) {
  AtomSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// One ground disjunctive rule: head | ... :- body_pos, not body_neg.
/// An empty head is an integrity rule; all three parts may be empty.
struct Rule {
  AtomSet head;
  AtomSet body_pos;
  AtomSet body_neg;

  bool operator==(const Rule&) const = default;
};

/// All atoms occurring anywhere in the rule (head and both body parts).
inline AtomSet atoms_of_rule(const Rule& r) {
  return set_union(set_union(r.head, r.body_pos), r.body_neg);
}

/// Dense symbol interner: ids are 0..size()-1 in first-intern order.
class SymbolTable {
 public:
  AtomId intern(std::string_view name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    AtomId id = static_cast<AtomId>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
  }

  std::optional<AtomId> find(std::string_view name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& name(AtomId id) const {
    if (id >= names_.size()) throw std::out_of_range("unknown atom id");
    return names_[id];
  }

  std::size_t size() const { return names_.size(); }

 private:
  // transparent lookup so find() takes string_view without allocating
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  struct Eq {
    using is_transparent = void;
    bool operator()(std::string_view a, std::string_view b) const { return a == b; }
  };

  std::vector<std::string> names_;
  std::unordered_map<std::string, AtomId, Hash, Eq> ids_;
};

/// A ground DLP: interned symbols plus an ordered rule list. Rule order is
/// observable (1-based indices in diagnostics and in the split search).
/// Immutable by convention once built; all queries are const.
struct Program {
  SymbolTable symbols;
  std::vector<Rule> rules;
};

/// Lett(P): the atoms that occur in at least one rule. Interned symbols that
/// no rule mentions are excluded.
inline AtomSet lett(const Program& p) {
  std::vector<AtomId> all;
  for (const Rule& r : p.rules) {
    all.insert(all.end(), r.head.begin(), r.head.end());
    all.insert(all.end(), r.body_pos.begin(), r.body_pos.end());
    all.insert(all.end(), r.body_neg.begin(), r.body_neg.end());
  }
  return make_atom_set(std::move(all));
}

/// Renders a set as "{a, b, c}" with atom names in lexicographic order.
inline std::string format_atom_set(const SymbolTable& symbols, const AtomSet& s) {
  std::vector<std::string> names;
  names.reserve(s.size());
  for (AtomId a : s) names.push_back(symbols.name(a));
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  out += "}";
  return out;
}

}  // namespace lpsplit
