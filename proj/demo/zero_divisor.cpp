// Over k = F_2 the algebra F_4 (x) F_4 has zero divisors, so the norm is
// not multiplicative. Over the closure it is.
#include <iostream>

#include "tnorm/harness.hpp"
#include "tnorm/parse.hpp"

int main() {
  using namespace tnorm;
  FieldsConfig cfg;
  cfg.base = BaseField::finite(1);
  cfg.k_vars = {};
  cfg.l_vars = {};
  cfg.k_constants = 2;
  cfg.l_constants = 2;
  const Setting s = Setting::build(cfg);
  const auto w = counterexample_witness(s);
  std::cout << "a = " << format_tensor(w.a) << "  ||a|| = " << tensor_norm(w.a).to_string() << "\n"
            << "b = " << format_tensor(w.b) << "  ||b|| = " << tensor_norm(w.b).to_string() << "\n"
            << "ab is zero: " << std::boolalpha << is_zero(t_mul(w.a, w.b)) << "\n";

  const Setting closed = Setting::build(FieldsConfig{});
  const auto z = parse_tensor(closed, "t (x) 1 + 1 (x) u");
  const auto sq = t_mul(z, z);
  std::cout << "z = " << format_tensor(z) << "\n"
            << "||z|| = " << tensor_norm(z).to_string() << ", ||z^2|| = " << tensor_norm(sq).to_string() << "\n";
  const auto d = pure_decompose(z);
  std::cout << "pure part " << format_tensor(d.pure_part) << " with alpha = " << d.alpha.to_string()
            << ", beta = " << d.beta.to_string() << "\n";
}
