#include "bistab/parser.hpp"

#include "bistab/errors.hpp"

#include <cctype>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace bistab {

namespace {

constexpr Coefficient kMaxCoefficient = 1'000'000;

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct ParsedReaction {
  Reaction reaction;
  Position start;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  BiNetwork run() {
    std::vector<ParsedReaction> reactions;
    while (!at_end()) {
      skip_blanks();
      if (at_end()) break;
      char c = peek();
      if (c == '\n' || c == ';') {
        advance();
        continue;
      }
      if (c == '#') {
        skip_comment();
        continue;
      }
      Position start = pos_;
      Reaction r = parse_reaction();
      if (reactions.size() == 2) {
        fail_at("expected exactly 2 reactions, found a third", start);
      }
      reactions.push_back({std::move(r), start});
      skip_blanks();
      if (!at_end()) {
        c = peek();
        if (c == '#') {
          skip_comment();
        } else if (c == '\n' || c == ';') {
          advance();
        } else {
          fail("expected ';', newline or end of input after reaction");
        }
      }
    }
    if (reactions.size() != 2) {
      fail("expected exactly 2 reactions, found " + std::to_string(reactions.size()));
    }

    BiNetwork net;
    net.species = species_;
    net.r1 = std::move(reactions[0].reaction);
    net.r2 = std::move(reactions[1].reaction);
    for (std::size_t j = 0; j < 2; ++j) {
      const Reaction& r = net.reaction(j);
      if (r.reactants == r.products) {
        fail_at("reactant side equals product side", reactions[j].start);
      }
    }
    validate(net);
    return net;
  }

 private:
  bool at_end() const { return offset_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return offset_ + ahead < text_.size() ? text_[offset_ + ahead] : '\0';
  }
  void advance() {
    if (text_[offset_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++offset_;
  }
  void skip_blanks() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
  }
  void skip_comment() {
    while (!at_end() && peek() != '\n') advance();
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }
  [[noreturn]] static void fail_at(const std::string& message, Position at) {
    throw ParseError(message, at.line, at.column);
  }

  bool at_side_end() const {
    char c = peek();
    return at_end() || c == '\n' || c == ';' || c == '#' || (c == '-' && peek(1) == '>');
  }

  std::string read_identifier() {
    std::string name;
    while (!at_end() && is_ident_char(peek())) {
      name.push_back(peek());
      advance();
    }
    return name;
  }

  SpeciesIndex intern(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    SpeciesIndex i = species_.size();
    species_.push_back(name);
    index_.emplace(name, i);
    return i;
  }

  Reaction parse_reaction() {
    Reaction r;
    // Optional "label:" prefix.
    if (is_ident_start(peek())) {
      std::size_t k = offset_;
      while (k < text_.size() && is_ident_char(text_[k])) ++k;
      std::size_t m = k;
      while (m < text_.size() && (text_[m] == ' ' || text_[m] == '\t')) ++m;
      if (m < text_.size() && text_[m] == ':') {
        r.label = read_identifier();
        skip_blanks();
        advance();  // ':'
        skip_blanks();
      }
    }
    r.reactants = parse_side();
    skip_blanks();
    if (!(peek() == '-' && peek(1) == '>')) fail("expected '->'");
    advance();
    advance();
    r.products = parse_side();
    return r;
  }

  std::map<SpeciesIndex, Coefficient> parse_side() {
    std::map<SpeciesIndex, Coefficient> side;
    skip_blanks();
    // The empty complex is written as a lone 0.
    if (peek() == '0' && !is_digit(peek(1))) {
      std::size_t saved_offset = offset_;
      Position saved_pos = pos_;
      advance();
      skip_blanks();
      if (at_side_end()) return side;
      offset_ = saved_offset;
      pos_ = saved_pos;
    }
    while (true) {
      skip_blanks();
      Position term_start = pos_;
      Coefficient coef = 1;
      if (peek() == '-' && is_digit(peek(1))) fail("negative coefficient");
      if (is_digit(peek())) {
        coef = 0;
        while (is_digit(peek())) {
          coef = coef * 10 + (peek() - '0');
          if (coef > kMaxCoefficient) fail_at("coefficient too large", term_start);
          advance();
        }
        if (peek() == '.' || peek() == 'e' || peek() == 'E' || peek() == '/') {
          fail_at("non-integer coefficient", term_start);
        }
        if (is_ident_start(peek())) fail("expected whitespace between coefficient and species");
        skip_blanks();
        if (coef == 0) fail_at("zero coefficient; omit the term instead", term_start);
      }
      if (!is_ident_start(peek())) {
        fail(at_side_end() ? "expected species name" : "unexpected character '" + std::string(1, peek()) + "'");
      }
      Position name_start = pos_;
      SpeciesIndex i = intern(read_identifier());
      if (!side.emplace(i, coef).second) {
        fail_at("species " + species_[i] + " appears twice on one side", name_start);
      }
      skip_blanks();
      if (peek() == '+') {
        advance();
        continue;
      }
      if (!at_side_end()) fail("expected '+', '->' or end of reaction");
      return side;
    }
  }

  std::string_view text_;
  std::size_t offset_ = 0;
  Position pos_;
  std::vector<std::string> species_;
  std::unordered_map<std::string, SpeciesIndex> index_;
};

}  // namespace

BiNetwork parse_network(std::string_view text) { return Parser(text).run(); }

std::string format_complex(const BiNetwork& net, const std::map<SpeciesIndex, Coefficient>& side) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [index, coef] : side) {
    if (coef == 0) continue;
    if (!first) out << " + ";
    first = false;
    if (coef != 1) out << coef << ' ';
    out << net.species.at(index);
  }
  if (first) out << '0';
  return out.str();
}

std::string serialize_network(const BiNetwork& net) {
  std::ostringstream out;
  for (std::size_t j = 0; j < 2; ++j) {
    const Reaction& r = net.reaction(j);
    if (r.label) out << *r.label << ": ";
    out << format_complex(net, r.reactants) << " -> " << format_complex(net, r.products) << '\n';
  }
  return out.str();
}

}  // namespace bistab
