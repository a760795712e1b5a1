#pragma once

#include <initializer_list>
#include <stdexcept>

#include "lpsplit/parser.hpp"

namespace common {

// The two bundled example programs, inline for unit tests; the CLI and
// acceptance suites read the identical files from fixtures/.
inline constexpr const char* kExample1 =
    "a :- not b.\n"
    "e | b :- not a.\n"
    "f :- not b.\n"
    "g | d :- c.\n"
    "c | f :- not d.\n"
    "h :- e.\n"
    "e :- a, not h.\n"
    "h :- a.\n";

inline constexpr const char* kExample3 =
    "a :- not b.\n"
    "b :- not a.\n"
    "b | c :- a.\n"
    "a | d :- b.\n";

inline lpsplit::AtomSet atoms(const lpsplit::Program& p,
                              std::initializer_list<const char*> names) {
  std::vector<lpsplit::AtomId> ids;
  for (const char* n : names) {
    auto id = p.symbols.find(n);
    if (!id) throw std::logic_error(std::string("test fixture lacks atom ") + n);
    ids.push_back(*id);
  }
  return lpsplit::make_atom_set(std::move(ids));
}

}  // namespace common
