#pragma once

// Text forms of polynomials and function-field elements. The output is valid
// input for tnorm/parse.hpp.

#include <string>

#include "tnorm/function_field.hpp"
#include "tnorm/polynomial.hpp"

namespace tnorm {

inline std::string format_coeff(const TowerConfig& tower, const ClosureElem& c) {
  const std::string s = tower.to_string(c);
  return s.find(':') == std::string::npos ? s : "(" + s + ")";
}

inline std::string format_monomial(const ExtensionDescriptor& desc, const Exponents& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += desc.variables()[i].name;
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

/// Terms in ascending grlex order, e.g. "1 + t + (2^2:0,1)*t^2".
inline std::string format_poly(const ExtensionDescriptor& desc, const Poly& f) {
  if (f.is_zero()) return "0";
  const auto& tower = desc.tower();
  std::string s;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    if (!s.empty()) s += " + ";
    const std::string mono = format_monomial(desc, it->exp);
    if (mono.empty()) {
      s += tower.to_string(it->coeff);
    } else if (it->coeff == tower.one()) {
      s += mono;
    } else {
      s += format_coeff(tower, it->coeff) + "*" + mono;
    }
  }
  return s;
}

inline std::string format_elem(const TowerElem& x) {
  const auto& d = x.desc();
  const std::string num = format_poly(d, x.numerator());
  if (x.denominator().is_constant()) return x.numerator().size() > 1 ? "(" + num + ")" : num;
  const std::string den = format_poly(d, x.denominator());
  const bool bare_den = x.denominator().size() == 1 && den.find('*') == std::string::npos;
  return (x.numerator().size() > 1 ? "(" + num + ")" : num) + "/" + (bare_den ? den : "(" + den + ")");
}

}  // namespace tnorm
