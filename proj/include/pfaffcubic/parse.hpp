#pragma once

// Recursive-descent reader for the textual scalar and polynomial formats:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | 'g' integer | variable | '(' expr ')'
//
// Division is only allowed by nonzero constants.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "pfaffcubic/errors.hpp"
#include "pfaffcubic/field.hpp"
#include "pfaffcubic/poly.hpp"

namespace pfc {

namespace detail {

class Parser {
 public:
  Parser(std::string_view text, TowerPtr tower, Vars vars)
      : text_(text), tower_(std::move(tower)), vars_(std::move(vars)) {}

  MultiPoly parse() {
    MultiPoly r = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return vars_ ? attach(std::move(r)) : r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly attach(MultiPoly p) const { return p.nvars() ? p : p + MultiPoly(vars_); }

  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const MultiPoly d = unary();
        if (!d.is_constant()) fail("division by a non-constant");
        const FieldElement c = d.constant_term();
        if (c.is_zero()) fail("division by zero");
        acc = c.inverse() * acc;
      } else {
        return acc;
      }
    }
  }

  MultiPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (accept('^')) {
      skip_space();
      const std::string digits = read_digits();
      if (digits.empty() || digits.size() > 3) fail("expected a small exponent");
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  MultiPoly atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return MultiPoly(FieldElement(Rational(mpz_class(read_digits()))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      if (vars_) {
        for (std::size_t i = 0; i < vars_->size(); ++i)
          if ((*vars_)[i] == name) return MultiPoly::variable(vars_, i);
      }
      if (name.size() > 1 && name[0] == 'g' &&
          name.find_first_not_of("0123456789", 1) == std::string::npos) {
        const int level = std::stoi(name.substr(1));
        if (level < 1 || level > tower_depth(tower_)) fail("generator " + name + " is not in the tower");
        return MultiPoly(FieldElement::generator(tower_, level));
      }
      fail("unknown symbol '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  TowerPtr tower_;
  Vars vars_;
};

}  // namespace detail

inline FieldElement parse_scalar(std::string_view text, const TowerPtr& tower = nullptr) {
  const MultiPoly p = detail::Parser(text, tower, nullptr).parse();
  FieldElement c = p.constant_term();
  return tower ? c.in_tower(tower) : c;
}

inline MultiPoly parse_poly(std::string_view text, const Vars& vars, const TowerPtr& tower = nullptr) {
  return detail::Parser(text, tower, vars).parse();
}

}  // namespace pfc
