#pragma once

// Text input: field configuration files and element expressions.
//
// Configuration (one key per line, '#' starts a comment):
//
//   config      := { line }
//   line        := key '=' value
//   key         := 'p' | 'level_bound' | 'base' | 'K' | 'L' | 'K_constants' | 'L_constants'
//   p           := prime                         (default 2)
//   level_bound := positive integer N; lattice = divisors of N (default 12)
//   base        := 'closure' | lattice level     (default closure)
//   K, L        := [ var { ',' var } ]           (default K = t, L = u)
//   var         := name [ ':' rational ]         (magnitude 2^rational, default -1)
//   *_constants := lattice level of the constant field (finite base only;
//                  defaults to the base level)
//
// Elements:
//
//   tensor  := '0' | tterm { ('+' | '-') tterm }
//   tterm   := [ '-' ] product '(x)' product      left factor in K, right in L
//   expr    := [ '-' ] product { ('+' | '-') product }
//   product := unary { ('*' | '/') unary }
//   unary   := '-' unary | power
//   power   := atom [ '^' integer ]
//   atom    := coeff | integer | name | '(' expr ')'
//   coeff   := p '^' level ':' c0 ',' c1 ',' ... ',' c_{level-1}
//
// Integers denote prime-field constants. "(x)" is a single token, so a
// variable called x must be written with spaces inside parentheses.

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tnorm/error.hpp"
#include "tnorm/function_field.hpp"
#include "tnorm/tensor.hpp"

namespace tnorm {

struct FieldsConfig {
  std::uint32_t p = 2;
  std::uint32_t level_bound = 12;
  BaseField base = BaseField::closure();
  std::vector<Variable> k_vars{{"t", mpq_class(-1)}};
  std::vector<Variable> l_vars{{"u", mpq_class(-1)}};
  std::uint32_t k_constants = 0;
  std::uint32_t l_constants = 0;
};

/// A tower with its two extensions.
struct Setting {
  std::shared_ptr<const TowerConfig> tower;
  DescriptorPtr K;
  DescriptorPtr L;

  static Setting build(const FieldsConfig& cfg) {
    Setting s;
    s.tower = std::make_shared<const TowerConfig>(cfg.p, cfg.level_bound);
    return build(cfg, s.tower);
  }

  /// Reuses an existing tower with the same p and level bound.
  static Setting build(const FieldsConfig& cfg, std::shared_ptr<const TowerConfig> tower) {
    if (tower->prime() != cfg.p || tower->level_bound() != cfg.level_bound) {
      throw InvalidConfig("tower does not match the configuration");
    }
    Setting s;
    s.tower = std::move(tower);
    s.K = std::make_shared<const ExtensionDescriptor>(s.tower, Side::K, cfg.k_vars, cfg.base, cfg.k_constants);
    s.L = std::make_shared<const ExtensionDescriptor>(s.tower, Side::L, cfg.l_vars, cfg.base, cfg.l_constants);
    TensorElem::validate_descriptors(s.K, s.L);
    return s;
  }
};

namespace detail {

inline std::string trim_copy(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::uint32_t parse_uint(const std::string& s, std::size_t pos) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9) {
    throw ParseError("expected a non-negative integer, got '" + s + "'", pos);
  }
  return static_cast<std::uint32_t>(std::stoul(s));
}

inline mpq_class parse_rational(const std::string& s, std::size_t pos) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) throw ParseError("malformed rational '" + s + "'", pos);
  q.canonicalize();
  return q;
}

inline std::vector<Variable> parse_vars(const std::string& value, std::size_t pos) {
  std::vector<Variable> vars;
  if (value.empty()) return vars;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim_copy(item);
    const auto colon = item.find(':');
    Variable v{trim_copy(item.substr(0, colon)), mpq_class(-1)};
    if (colon != std::string::npos) v.exponent = parse_rational(trim_copy(item.substr(colon + 1)), pos);
    if (v.name.empty() || !std::isalpha(static_cast<unsigned char>(v.name[0]))) {
      throw ParseError("bad variable name '" + v.name + "'", pos);
    }
    for (char c : v.name) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') throw ParseError("bad variable name '" + v.name + "'", pos);
    }
    vars.push_back(std::move(v));
  }
  return vars;
}

}  // namespace detail

/// "t:-1,s:1/2" as in the K and L configuration keys.
inline std::vector<Variable> parse_variables(std::string_view text) {
  return detail::parse_vars(detail::trim_copy(text), 0);
}

inline FieldsConfig parse_fields_config(std::string_view text) {
  FieldsConfig cfg;
  std::size_t offset = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (detail::trim_copy(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line_start);
    const std::string key = detail::trim_copy(line.substr(0, eq));
    const std::string value = detail::trim_copy(line.substr(eq + 1));
    const std::size_t vpos = line_start + eq + 1;
    if (key == "p") {
      cfg.p = detail::parse_uint(value, vpos);
    } else if (key == "level_bound") {
      cfg.level_bound = detail::parse_uint(value, vpos);
    } else if (key == "base") {
      cfg.base = value == "closure" ? BaseField::closure() : BaseField::finite(detail::parse_uint(value, vpos));
      if (!cfg.base.is_closure() && cfg.base.level == 0) throw ParseError("base level must be positive", vpos);
    } else if (key == "K") {
      cfg.k_vars = detail::parse_vars(value, vpos);
    } else if (key == "L") {
      cfg.l_vars = detail::parse_vars(value, vpos);
    } else if (key == "K_constants") {
      cfg.k_constants = detail::parse_uint(value, vpos);
    } else if (key == "L_constants") {
      cfg.l_constants = detail::parse_uint(value, vpos);
    } else {
      throw ParseError("unknown key '" + key + "'", line_start);
    }
  }
  return cfg;
}

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, const Setting* setting, DescriptorPtr single)
      : text_(text), setting_(setting), single_(std::move(single)) {}

  TowerElem parse_single() {
    TowerElem e = expr(single_);
    expect_end();
    return e;
  }

  TensorElem parse_tensor() {
    skip_ws();
    std::vector<TensorTerm> terms;
    if (peek_word("0") && at_end_after(1)) {
      ++pos_;
      return TensorElem(setting_->K, setting_->L);
    }
    bool negate = false;
    if (peek('-')) {
      ++pos_;
      negate = true;
    }
    for (;;) {
      TowerElem x = product(setting_->K);
      skip_ws();
      if (!consume_tensor_token()) throw ParseError("expected '(x)'", pos_);
      TowerElem y = product(setting_->L);
      terms.push_back({negate ? -x : x, y});
      skip_ws();
      if (pos_ == text_.size()) break;
      if (peek('+')) {
        negate = false;
      } else if (peek('-')) {
        negate = true;
      } else {
        throw ParseError("expected '+', '-' or end of input", pos_);
      }
      ++pos_;
    }
    return TensorElem(setting_->K, setting_->L, std::move(terms));
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool peek_word(std::string_view w) {
    skip_ws();
    return text_.substr(pos_, w.size()) == w;
  }

  bool at_end_after(std::size_t n) {
    std::size_t p = pos_ + n;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p == text_.size();
  }

  bool consume_tensor_token() {
    if (text_.substr(pos_, 3) == "(x)") {
      pos_ += 3;
      return true;
    }
    return false;
  }

  bool at_tensor_token() {
    skip_ws();
    return text_.substr(pos_, 3) == "(x)";
  }

  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
  }

  TowerElem expr(const DescriptorPtr& d) {
    bool negate = false;
    if (peek('-')) {
      ++pos_;
      negate = true;
    }
    TowerElem acc = product(d);
    if (negate) acc = -acc;
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc = acc + product(d);
      } else if (peek('-')) {
        ++pos_;
        acc = acc - product(d);
      } else {
        return acc;
      }
    }
  }

  TowerElem product(const DescriptorPtr& d) {
    TowerElem acc = unary(d);
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = acc * unary(d);
      } else if (peek('/')) {
        const std::size_t at = ++pos_;
        TowerElem den = unary(d);
        if (den.is_zero()) throw ParseError("division by zero", at);
        acc = acc / den;
      } else {
        return acc;
      }
    }
  }

  TowerElem unary(const DescriptorPtr& d) {
    if (peek('-')) {
      ++pos_;
      return -unary(d);
    }
    TowerElem base = atom(d);
    if (peek('^')) {
      ++pos_;
      skip_ws();
      const std::size_t at = pos_;
      const std::uint32_t n = parse_uint(digits(), at);
      return power(base, n);
    }
    return base;
  }

  std::string digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  TowerElem atom(const DescriptorPtr& d) {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const std::size_t start = pos_;
    const char c = text_[pos_];
    const auto& tower = d->tower();
    if (c == '(') {
      if (at_tensor_token()) throw ParseError("unexpected '(x)'", pos_);
      ++pos_;
      TowerElem e = expr(d);
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::string n = digits();
      // coefficient literal p^level:c0,...
      std::size_t save = pos_;
      if (pos_ < text_.size() && text_[pos_] == '^') {
        ++pos_;
        const std::string lvl = digits();
        if (!lvl.empty() && pos_ < text_.size() && text_[pos_] == ':') {
          ++pos_;
          return coefficient(d, n, lvl, start);
        }
        pos_ = save;
      }
      mpz_class v(n);
      const long long r = mpz_class(v % tower.prime()).get_si();
      return TowerElem::constant(d, tower.from_int(r));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      const auto idx = d->index_of(name);
      if (!idx) {
        throw ParseError("unknown variable '" + name + "' on side " + side_name(d->side()), start);
      }
      return TowerElem::variable(d, *idx);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  TowerElem coefficient(const DescriptorPtr& d, const std::string& p, const std::string& lvl, std::size_t start) {
    const auto& tower = d->tower();
    if (parse_uint(p, start) != tower.prime()) throw ParseError("coefficient characteristic differs from p", start);
    const std::uint32_t level = parse_uint(lvl, start);
    if (!tower.is_level(level)) throw ParseError("level " + lvl + " is not in the lattice", start);
    std::vector<std::uint32_t> coords;
    for (;;) {
      const std::size_t at = pos_;
      const std::string c = digits();
      const std::uint32_t v = parse_uint(c, at);
      if (v >= tower.prime()) throw ParseError("coordinate not reduced mod p", at);
      coords.push_back(v);
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    if (coords.size() != level) throw ParseError("expected exactly " + lvl + " coordinates", start);
    const ClosureElem a = tower.from_coords(level, coords);
    if (!d->admits_constant(a)) throw ParseError("coefficient outside the constant field", start);
    return TowerElem::constant(d, a);
  }

  std::string_view text_;
  const Setting* setting_;
  DescriptorPtr single_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline TowerElem parse_tower_elem(const DescriptorPtr& desc, std::string_view text) {
  return detail::ExprParser(text, nullptr, desc).parse_single();
}

inline TensorElem parse_tensor(const Setting& setting, std::string_view text) {
  return detail::ExprParser(text, &setting, nullptr).parse_tensor();
}

}  // namespace tnorm
