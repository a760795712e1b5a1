#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "lpsplit/program.hpp"

namespace lpsplit {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}

  std::size_t line;
  std::size_t column;
};

namespace detail {

// Recursive-descent parser for the rule grammar:
//   rule    := [ head ] ":-" [ body ] "." | head "."
//   head    := atom ("|" atom)*
//   body    := literal ("," literal)*
//   literal := atom | "not" atom
// "%" starts a comment running to end of line; whitespace is insignificant.
// "not" is a reserved word and cannot name an atom (it could not survive a
// render/parse round trip).
class RuleParser {
 public:
  RuleParser(std::string_view text, std::vector<std::string>* warnings)
      : text_(text), warnings_(warnings) {}

  Program parse() {
    Program p;
    skip_space();
    while (pos_ < text_.size()) {
      parse_rule(p);
      skip_space();
    }
    return p;
  }

 private:
  void parse_rule(Program& p) {
    Rule r;
    std::size_t rule_no = p.rules.size() + 1;
    std::vector<AtomId> head;
    if (!lookahead_is(":-")) {
      head.push_back(parse_head_atom(p));
      skip_space();
      while (peek() == '|') {
        ++pos_;
        ++column_;
        skip_space();
        head.push_back(parse_head_atom(p));
        skip_space();
      }
    }
    dedup_into(r.head, std::move(head), "head", rule_no);
    skip_space();
    if (lookahead_is(":-")) {
      pos_ += 2;
      column_ += 2;
      skip_space();
      std::vector<AtomId> pos_atoms;
      std::vector<AtomId> neg_atoms;
      if (peek() != '.') {
        parse_literal(p, pos_atoms, neg_atoms);
        skip_space();
        while (peek() == ',') {
          ++pos_;
          ++column_;
          skip_space();
          parse_literal(p, pos_atoms, neg_atoms);
          skip_space();
        }
      }
      dedup_into(r.body_pos, std::move(pos_atoms), "positive body", rule_no);
      dedup_into(r.body_neg, std::move(neg_atoms), "negative body", rule_no);
    } else if (r.head.empty()) {
      fail("expected an atom or ':-'");
    }
    skip_space();
    if (peek() != '.') fail("expected '.' at end of rule");
    ++pos_;
    ++column_;
    p.rules.push_back(std::move(r));
  }

  void parse_literal(Program& p, std::vector<AtomId>& pos_atoms,
                     std::vector<AtomId>& neg_atoms) {
    std::size_t line = line_, col = column_;
    std::string word = parse_identifier();
    if (word == "not") {
      skip_space();
      neg_atoms.push_back(intern_checked(p, parse_identifier()));
    } else {
      pos_atoms.push_back(intern_checked(p, std::move(word), line, col));
    }
  }

  AtomId parse_head_atom(Program& p) {
    std::size_t line = line_, col = column_;
    return intern_checked(p, parse_identifier(), line, col);
  }

  AtomId intern_checked(Program& p, std::string word) {
    return intern_checked(p, std::move(word), line_, column_);
  }

  AtomId intern_checked(Program& p, std::string word, std::size_t line,
                        std::size_t col) {
    if (word == "not")
      throw ParseError("'not' is a reserved word and cannot name an atom", line,
                       col);
    return p.symbols.intern(word);
  }

  std::string parse_identifier() {
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_]))
      fail("expected an atom");
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
      ++pos_;
      ++column_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void dedup_into(AtomSet& dst, std::vector<AtomId> atoms, const char* part,
                  std::size_t rule_no) {
    AtomSet s = make_atom_set(atoms);
    if (s.size() != atoms.size() && warnings_) {
      warnings_->push_back("rule " + std::to_string(rule_no) +
                           ": duplicate atom in " + part + " (deduplicated)");
    }
    dst = std::move(s);
  }

  static bool is_ident_start(char c) {
    return c == '_' || std::isalpha(static_cast<unsigned char>(c));
  }
  static bool is_ident_char(char c) {
    return c == '_' || std::isalnum(static_cast<unsigned char>(c));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool lookahead_is(std::string_view tok) const {
    return text_.substr(pos_, tok.size()) == tok;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        column_ = 1;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        ++column_;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string got = pos_ < text_.size()
                          ? "'" + std::string(1, text_[pos_]) + "'"
                          : "end of input";
    throw ParseError(msg + ", got " + got, line_, column_);
  }

  std::string_view text_;
  std::vector<std::string>* warnings_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace detail

/// Parses program text. Atom symbols are interned in first-occurrence order
/// and rules keep their textual order. Duplicate atoms inside one rule part
/// are deduplicated with a warning.
inline Program parse_program(std::string_view text,
                             std::vector<std::string>& warnings) {
  return detail::RuleParser(text, &warnings).parse();
}

inline Program parse_program(std::string_view text) {
  return detail::RuleParser(text, nullptr).parse();
}

/// Renders one rule in canonical form: atoms of each part sorted by name,
/// "a | b :- c, not d."; facts render without ":-", integrity rules without a
/// head, and the fully empty rule as ":-.".
inline std::string render_rule(const SymbolTable& symbols, const Rule& r) {
  auto sorted_names = [&](const AtomSet& s) {
    std::vector<std::string> names;
    names.reserve(s.size());
    for (AtomId a : s) names.push_back(symbols.name(a));
    std::sort(names.begin(), names.end());
    return names;
  };

  std::string out;
  auto head = sorted_names(r.head);
  for (std::size_t i = 0; i < head.size(); ++i) {
    if (i) out += " | ";
    out += head[i];
  }
  if (r.body_pos.empty() && r.body_neg.empty()) {
    if (r.head.empty()) out += ":-";
    out += ".";
    return out;
  }
  out += r.head.empty() ? ":- " : " :- ";
  bool first = true;
  for (const std::string& n : sorted_names(r.body_pos)) {
    if (!first) out += ", ";
    out += n;
    first = false;
  }
  for (const std::string& n : sorted_names(r.body_neg)) {
    if (!first) out += ", ";
    out += "not " + n;
    first = false;
  }
  out += ".";
  return out;
}

/// Canonical text form, one rule per line. parse_program(render_program(p))
/// yields a structurally identical program, and rendering is a pure function
/// of the structure, so repeated renders are byte-identical.
inline std::string render_program(const Program& p) {
  std::string out;
  for (const Rule& r : p.rules) {
    out += render_rule(p.symbols, r);
    out += '\n';
  }
  return out;
}

/// Structural equality up to atom ids: same rule count and, rule by rule,
/// the same head/body atom names. Interning order is irrelevant.
inline bool equivalent(const Program& a, const Program& b) {
  if (a.rules.size() != b.rules.size()) return false;
  return render_program(a) == render_program(b);
}

}  // namespace lpsplit
