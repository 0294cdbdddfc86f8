#pragma once

// Deterministic generators and the property suites.
//
// Pseudorandom scheme (reproducible across implementations):
//   mix64(z):   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//               z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//               return z ^ (z >> 31)
//   next():     state += 0x9E3779B97F4A7C15; return mix64(state)
//   below(n):   next() % n
//   trial t of a run seeded with s starts from state = mix64(s) ^ mix64(t + 1).

#include <gmpxx.h>

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "tnorm/error.hpp"
#include "tnorm/format.hpp"
#include "tnorm/function_field.hpp"
#include "tnorm/parse.hpp"
#include "tnorm/tensor.hpp"

namespace tnorm {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t state) : state_(state) {}

  static Rng for_trial(std::uint64_t seed, std::uint64_t trial) { return Rng(mix64(seed) ^ mix64(trial + 1)); }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

/// Uniform element of the given lattice level.
inline ClosureElem ff_random(const TowerConfig& tower, std::uint32_t level, Rng& rng) {
  return tower.from_enumeration_index(level, rng.below(tower.field_order(level)));
}

struct ScenarioConfig {
  std::uint32_t p = 2;
  /// Coefficients are sampled from levels up to this bound; the tower's
  /// lattice is the divisors of lcm(1..level_bound).
  std::uint32_t level_bound = 4;
  /// false: k is the prime field and K, L have constants at constant_level.
  bool closed_base = true;
  std::uint32_t constant_level = 2;
  std::vector<Variable> k_vars{{"t", mpq_class(-1)}};
  std::vector<Variable> l_vars{{"u", mpq_class(-1)}};
  long long trials = 300;
  std::uint64_t seed = 0;
  long long max_terms = 4;
  long long max_degree = 4;
  std::uint64_t first_trial = 0;

  void validate() const {
    if (trials < 1) throw InvalidConfig("trials must be at least 1");
    if (max_terms < 1) throw InvalidConfig("max terms must be at least 1");
    if (max_degree < 1) throw InvalidConfig("max degree must be at least 1");
    if (level_bound < 1) throw InvalidConfig("level bound must be at least 1");
    if (!closed_base && constant_level < 1) throw InvalidConfig("constant level must be at least 1");
  }

  std::uint32_t lattice_bound() const {
    std::uint64_t l = 1;
    for (std::uint32_t i = 2; i <= level_bound; ++i) l = std::lcm(l, std::uint64_t{i});
    if (!closed_base) l = std::lcm(l, std::uint64_t{constant_level});
    if (l > 64) throw InvalidConfig("level lattice too large");
    return static_cast<std::uint32_t>(l);
  }

  FieldsConfig fields() const {
    FieldsConfig f;
    f.p = p;
    f.level_bound = lattice_bound();
    f.base = closed_base ? BaseField::closure() : BaseField::finite(1);
    f.k_vars = k_vars;
    f.l_vars = l_vars;
    f.k_constants = closed_base ? 0 : constant_level;
    f.l_constants = closed_base ? 0 : constant_level;
    return f;
  }

  std::string describe() const {
    const auto vars = [](const std::vector<Variable>& vs) {
      std::string s;
      for (const auto& v : vs) s += (s.empty() ? "" : ",") + v.name + ":" + v.exponent.get_str();
      return s.empty() ? std::string("-") : s;
    };
    return "p=" + std::to_string(p) + " level_bound=" + std::to_string(level_bound) +
           " base=" + (closed_base ? std::string("closure") : "prime constants=" + std::to_string(constant_level)) +
           " K=" + vars(k_vars) + " L=" + vars(l_vars) + " trials=" + std::to_string(trials) +
           " seed=" + std::to_string(seed) + " max_terms=" + std::to_string(max_terms) +
           " max_degree=" + std::to_string(max_degree);
  }

  /// CLI flags reproducing this configuration for a single trial.
  std::string replay_flags(std::uint64_t trial) const {
    const auto vars = [](const std::vector<Variable>& vs) {
      std::string s;
      for (const auto& v : vs) s += (s.empty() ? "" : ",") + v.name + ":" + v.exponent.get_str();
      return "\"" + s + "\"";
    };
    std::string s = "--p " + std::to_string(p) + " --level-bound " + std::to_string(level_bound);
    s += closed_base ? " --base closure" : " --base prime --constant-level " + std::to_string(constant_level);
    s += " --k " + vars(k_vars) + " --l " + vars(l_vars);
    s += " --max-terms " + std::to_string(max_terms) + " --max-degree " + std::to_string(max_degree);
    s += " --seed " + std::to_string(seed) + " --from-trial " + std::to_string(trial) + " --trials 1";
    return s;
  }
};

/// Levels coefficients are drawn from for a descriptor.
inline std::vector<std::uint32_t> sampling_levels(const ExtensionDescriptor& desc, std::uint32_t level_bound) {
  if (desc.constant_level() != 0) return {desc.constant_level()};
  std::vector<std::uint32_t> out;
  for (auto d : desc.tower().levels()) {
    if (d <= level_bound) out.push_back(d);
  }
  return out;
}

inline ClosureElem gen_constant(const ExtensionDescriptor& desc, std::uint32_t level_bound, Rng& rng, bool nonzero) {
  const auto levels = sampling_levels(desc, level_bound);
  for (;;) {
    const auto level = levels[rng.below(levels.size())];
    const ClosureElem c = ff_random(desc.tower(), level, rng);
    if (!nonzero || !c.is_zero()) return c;
  }
}

/// Random scalar of the base field k.
inline ClosureElem gen_scalar(const ExtensionDescriptor& desc, std::uint32_t level_bound, Rng& rng, bool nonzero) {
  if (desc.base().is_closure()) return gen_constant(desc, level_bound, rng, nonzero);
  for (;;) {
    const ClosureElem c = ff_random(desc.tower(), desc.base().level, rng);
    if (!nonzero || !c.is_zero()) return c;
  }
}

inline Poly gen_poly(const ExtensionDescriptor& desc, std::uint32_t level_bound, long long max_degree, Rng& rng) {
  const std::size_t n = desc.nvars();
  const auto& tower = desc.tower();
  const long long degree_cap = n == 0 ? 0 : std::max<long long>(0, max_degree);
  const std::uint64_t count = 1 + rng.below(static_cast<std::uint64_t>(degree_cap) + 1);
  std::vector<Term> terms;
  for (std::uint64_t i = 0; i < count; ++i) {
    Exponents e(n, 0);
    long long budget = static_cast<long long>(rng.below(static_cast<std::uint64_t>(degree_cap) + 1));
    for (std::size_t k = 0; k < n && budget > 0; ++k) {
      const auto d = k + 1 == n ? budget : static_cast<long long>(rng.below(static_cast<std::uint64_t>(budget) + 1));
      e[(k + rng.below(n)) % n] += static_cast<std::uint32_t>(d);
      budget -= d;
    }
    terms.push_back({std::move(e), gen_constant(desc, level_bound, rng, true)});
  }
  return Poly::from_terms(n, std::move(terms), tower);
}

/// Random sparse fraction with numerator and denominator degrees <= max_degree.
inline TowerElem gen_tower_elem(const DescriptorPtr& desc, const ScenarioConfig& cfg, Rng& rng, bool allow_zero = false) {
  for (;;) {
    Poly num = gen_poly(*desc, cfg.level_bound, cfg.max_degree, rng);
    Poly den = rng.coin() ? Poly::constant(desc->nvars(), desc->tower().one())
                          : gen_poly(*desc, cfg.level_bound, cfg.max_degree, rng);
    if (den.is_zero()) den = Poly::constant(desc->nvars(), desc->tower().one());
    TowerElem x = TowerElem::fraction(desc, std::move(num), std::move(den));
    if (allow_zero || !x.is_zero()) return x;
  }
}

inline TensorElem gen_tensor(const Setting& s, const ScenarioConfig& cfg, Rng& rng) {
  const auto m = 1 + rng.below(static_cast<std::uint64_t>(cfg.max_terms));
  std::vector<TensorTerm> terms;
  for (std::uint64_t i = 0; i < m; ++i) terms.push_back({gen_tower_elem(s.K, cfg, rng), gen_tower_elem(s.L, cfg, rng)});
  return TensorElem(s.K, s.L, std::move(terms));
}

/// A random representation-changing rewrite; the element of A is unchanged.
inline TensorElem random_rewrite(const TensorElem& z, const Setting& s, const ScenarioConfig& cfg, Rng& rng) {
  std::vector<TensorTerm> t = z.terms();
  const auto scalar = [&](bool nonzero) {
    return TowerElem::constant(s.K, gen_scalar(*s.K, cfg.level_bound, rng, nonzero));
  };
  const auto& tower = *s.tower;
  switch (t.empty() ? 0 : rng.below(5)) {
    case 0: {  // append a cancelling pair
      const auto x = gen_tower_elem(s.K, cfg, rng);
      const auto y = gen_tower_elem(s.L, cfg, rng);
      t.push_back({x, y});
      t.push_back({-x, y});
      break;
    }
    case 1: {  // x (x) y = (c x) (x) (c^-1 y)
      auto& term = t[rng.below(t.size())];
      const ClosureElem c = gen_scalar(*s.K, cfg.level_bound, rng, true);
      term = {scale(term.x, c), scale(term.y, tower.inv(c))};
      break;
    }
    case 2: {  // permute
      for (std::size_t i = t.size(); i > 1; --i) std::swap(t[i - 1], t[rng.below(i)]);
      break;
    }
    case 3: {  // x_i (x) y_i + x_j (x) y_j = x_i (x) (y_i + c y_j) + (x_j - c x_i) (x) y_j
      if (t.size() < 2) {
        t.push_back({scalar(false) * t[0].x, t[0].y});
        t.push_back({-t.back().x, t[0].y});
        break;
      }
      const std::size_t i = rng.below(t.size());
      std::size_t j = rng.below(t.size() - 1);
      if (j >= i) ++j;
      const ClosureElem c = gen_scalar(*s.K, cfg.level_bound, rng, false);
      const TowerElem xi = t[i].x, yj = t[j].y;
      t[i].y = t[i].y + scale(yj, c);
      t[j].x = t[j].x - scale(xi, c);
      break;
    }
    default: {  // split a left factor: x (x) y = x1 (x) y + (x - x1) (x) y
      const std::size_t i = rng.below(t.size());
      const auto x1 = gen_tower_elem(s.K, cfg, rng);
      const TensorTerm old = t[i];
      t[i] = {x1, old.y};
      t.push_back({old.x - x1, old.y});
      break;
    }
  }
  return TensorElem(z.left(), z.right(), std::move(t));
}

struct SuiteFailure {
  std::uint64_t trial = 0;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string expected;
  std::string observed;
  std::string replay;
};

struct SuiteReport {
  std::string suite;
  std::string config;
  long long trials = 0;
  std::vector<SuiteFailure> failures;
  double elapsed_seconds = 0;

  bool passed() const noexcept { return failures.empty(); }

  std::string to_text(bool with_timing = false) const {
    std::string s = "suite: " + suite + "\nconfig: " + config + "\ntrials: " + std::to_string(trials) +
                    "\nfailures: " + std::to_string(failures.size()) + "\n";
    for (const auto& f : failures) {
      s += "failure trial=" + std::to_string(f.trial) + "\n";
      for (const auto& [name, value] : f.inputs) s += "  input " + name + ": " + value + "\n";
      s += "  expected: " + f.expected + "\n  observed: " + f.observed + "\n  replay: " + f.replay + "\n";
    }
    if (with_timing) s += "elapsed_seconds: " + std::to_string(elapsed_seconds) + "\n";
    s += std::string("status: ") + (passed() ? "PASS" : "FAIL") + "\n";
    return s;
  }

  nlohmann::json to_json(bool with_timing = false) const {
    nlohmann::json j;
    j["suite"] = suite;
    j["config"] = config;
    j["trials"] = trials;
    j["status"] = passed() ? "PASS" : "FAIL";
    j["failures"] = nlohmann::json::array();
    for (const auto& f : failures) {
      nlohmann::json fj;
      fj["trial"] = f.trial;
      fj["inputs"] = nlohmann::json::object();
      for (const auto& [name, value] : f.inputs) fj["inputs"][name] = value;
      fj["expected"] = f.expected;
      fj["observed"] = f.observed;
      fj["replay"] = f.replay;
      j["failures"].push_back(std::move(fj));
    }
    if (with_timing) j["elapsed_seconds"] = elapsed_seconds;
    return j;
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"ultrametric", "crossnorm",     "repr-invariance", "symmetry",
                                              "submult",     "mult-closed",   "nondegeneracy",   "pure-product",
                                              "value-estimate", "counterexample"};
  return names;
}

namespace detail {

using Trial = std::function<std::optional<SuiteFailure>(const Setting&, const ScenarioConfig&, Rng&)>;

inline SuiteFailure failure(std::vector<std::pair<std::string, std::string>> inputs, std::string expected,
                            std::string observed) {
  return {0, std::move(inputs), std::move(expected), std::move(observed), {}};
}

inline std::string mags(std::initializer_list<std::pair<const char*, Magnitude>> items) {
  std::string s;
  for (const auto& [name, m] : items) s += (s.empty() ? "" : " ") + std::string(name) + "=" + m.to_string();
  return s;
}

inline std::optional<SuiteFailure> trial_ultrametric(const Setting& s, const ScenarioConfig& cfg, Rng& rng) {
  const auto z = gen_tensor(s, cfg, rng);
  const auto w = gen_tensor(s, cfg, rng);
  const auto nz = tensor_norm(z), nw = tensor_norm(w), ns = tensor_norm(t_add(z, w));
  const bool ok = ns <= mag_max(nz, nw) && (nz == nw || ns == mag_max(nz, nw));
  if (ok) return std::nullopt;
  return failure({{"z", format_tensor(z)}, {"w", format_tensor(w)}},
                 "||z+w|| <= max(||z||,||w||), with equality when ||z|| != ||w||",
                 mags({{"||z||", nz}, {"||w||", nw}, {"||z+w||", ns}}));
}

inline std::optional<SuiteFailure> trial_crossnorm(const Setting& s, const ScenarioConfig& cfg, Rng& rng) {
  const auto x = gen_tower_elem(s.K, cfg, rng);
  const auto y = gen_tower_elem(s.L, cfg, rng);
  const auto n = tensor_norm(TensorElem::pure_tensor(x, y));
  const auto expect = value(x) * value(y);
  if (n == expect) return std::nullopt;
  return failure({{"x", format_elem(x)}, {"y", format_elem(y)}}, "||x (x) y|| = |x||y|",
                 mags({{"||x(x)y||", n}, {"|x||y|", expect}}));
}

inline std::optional<SuiteFailure> trial_repr_invariance(const Setting& s, const ScenarioConfig& cfg, Rng& rng) {
  const auto z = gen_tensor(s, cfg, rng);
  const auto base = tensor_norm(z);
  TensorElem cur = z;
  for (int r = 0; r < 10; ++r) {
    cur = random_rewrite(cur, s, cfg, rng);
    const auto n = tensor_norm(cur);
    if (n != base) {
      return failure({{"z", format_tensor(z)}, {"rewritten", format_tensor(cur)}},
                     "norm unchanged by rewrite " + std::to_string(r + 1), mags({{"||z||", base}, {"||rewritten||", n}}));
    }
  }
  return std::nullopt;
}

inline std::optional<SuiteFailure> trial_symmetry(const Setting& s, const ScenarioConfig& cfg, Rng& rng) {
  const auto z = gen_tensor(s, cfg, rng);
  const auto l = tensor_norm(z), r = tensor_norm_right(z);
  if (l == r) return std::nullopt;
  return failure({{"z", format_tensor(z)}}, "left and right orthogonalization agree", mags({{"left", l}, {"right", r}}));
}

inline std::optional<SuiteFailure> trial_submult(const Setting& s, const ScenarioConfig& cfg, Rng& rng) {
  const auto z = gen_tensor(s, cfg, rng);
  const auto w = gen_tensor(s, cfg, rng);
  const auto nz = tensor_norm(z), nw = tensor_norm(w), np = tensor_norm(t_mul(z, w));
  if (np <= nz * nw) return std::nullopt;
  return failure({{"z", format_tensor(z)}, {"w", format_tensor(w)}}, "||zw|| <= ||z|| ||w||",
                 mags({{"||z||", nz}, {"||w||", nw}, {"||zw||", np}}));
}

inline std::optional<SuiteFailure> trial_mult_closed(const Setting& s, const ScenarioConfig& cfg, Rng& rng) {
  const auto z = gen_tensor(s, cfg, rng);
  const auto w = gen_tensor(s, cfg, rng);
  const auto nz = tensor_norm(z), nw = tensor_norm(w), np = tensor_norm(t_mul(z, w));
  if (np == nz * nw) return std::nullopt;
  return failure({{"z", format_tensor(z)}, {"w", format_tensor(w)}}, "||zw|| = ||z|| ||w||",
                 mags({{"||z||", nz}, {"||w||", nw}, {"||zw||", np}}));
}

/// Random element that is zero in A but not syntactically empty.
inline TensorElem constructed_zero(const Setting& s, const ScenarioConfig& cfg, Rng& rng) {
  switch (rng.below(3)) {
    case 0: {  // z minus a rewritten copy of z
      const auto z = gen_tensor(s, cfg, rng);
      TensorElem w = z;
      for (int i = 0; i < 3; ++i) w = random_rewrite(w, s, cfg, rng);
      return t_sub(z, w);
    }
    case 1: {  // (x1 + x2) (x) y - x1 (x) y - x2 (x) y
      const auto x1 = gen_tower_elem(s.K, cfg, rng), x2 = gen_tower_elem(s.K, cfg, rng);
      const auto y = gen_tower_elem(s.L, cfg, rng);
      return TensorElem(s.K, s.L, {{x1 + x2, y}, {-x1, y}, {-x2, y}});
    }
    default: {  // (c x) (x) y - x (x) (c y)
      const auto x = gen_tower_elem(s.K, cfg, rng);
      const auto y = gen_tower_elem(s.L, cfg, rng);
      const auto c = gen_scalar(*s.K, cfg.level_bound, rng, true);
      return TensorElem(s.K, s.L, {{scale(x, c), y}, {-x, scale(y, c)}});
    }
  }
}

inline std::optional<SuiteFailure> trial_nondegeneracy(const Setting& s, const ScenarioConfig& cfg, Rng& rng) {
  const bool make_zero = rng.coin();
  const auto z = make_zero ? constructed_zero(s, cfg, rng) : gen_tensor(s, cfg, rng);
  const auto n = tensor_norm(z);
  const bool rank_zero = is_zero(z);
  if (n.is_zero() == rank_zero && (!make_zero || rank_zero)) return std::nullopt;
  return failure({{"z", format_tensor(z)}},
                 make_zero ? "constructed zero: is_zero and ||z|| = 0" : "||z|| = 0 exactly when is_zero(z)",
                 "||z||=" + n.to_string() + " is_zero=" + (rank_zero ? "true" : "false"));
}

inline std::optional<SuiteFailure> trial_pure_product(const Setting& s, const ScenarioConfig& cfg, Rng& rng) {
  const auto pz = pure_decompose(gen_tensor(s, cfg, rng));
  const auto pw = pure_decompose(gen_tensor(s, cfg, rng));
  const auto expect = pz.alpha * pz.beta * pw.alpha * pw.beta;
  const auto got = tensor_norm(t_mul(pz.pure_part, pw.pure_part));
  if (got == expect) return std::nullopt;
  return failure({{"z", format_tensor(pz.pure_part)}, {"w", format_tensor(pw.pure_part)}},
                 "||zw|| = alpha beta alpha' beta' for pure z, w",
                 mags({{"alpha", pz.alpha}, {"beta", pz.beta}, {"alpha'", pw.alpha}, {"beta'", pw.beta}, {"||zw||", got}}));
}

/// Smallest power of two, as a rational, that is >= m.
inline mpq_class ceil_pow2(const Magnitude& m) {
  mpz_class e;
  mpz_cdiv_q(e.get_mpz_t(), m.exponent().get_num_mpz_t(), m.exponent().get_den_mpz_t());
  mpq_class r = 1;
  const long k = e.get_si();
  if (k >= 0) {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(k));
    r = v;
  } else {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(-k));
    r = mpq_class(1, v);
  }
  r.canonicalize();
  return r;
}

inline std::optional<SuiteFailure> trial_value_estimate(const Setting& s, const ScenarioConfig& cfg, Rng& rng) {
  const auto& tower = *s.tower;
  const auto m = 1 + rng.below(static_cast<std::uint64_t>(cfg.max_terms));
  std::vector<TowerElem> raw;
  for (std::uint64_t i = 0; i < m; ++i) raw.push_back(gen_tower_elem(s.K, cfg, rng));
  // Orthogonal family: successive coset minima, dropping dependent members.
  std::vector<TowerElem> us;
  for (const auto& x : raw) {
    auto u = min_coset_value(x, us).u;
    if (!u.is_zero()) us.push_back(std::move(u));
  }
  std::vector<TowerElem> xs = us;
  std::vector<mpq_class> rs(us.size(), mpq_class(1));
  const bool perturb = rng.coin();
  if (perturb) {
    for (std::size_t i = 1; i < us.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) xs[i] = xs[i] + scale(us[j], gen_scalar(*s.K, cfg.level_bound, rng, false));
      rs[i] = ceil_pow2(value(xs[i]) * mag_pow(value(us[i]), -1));
      if (rng.coin()) rs[i] *= mpq_class(3, 2);
    }
  }
  Vector as;
  for (std::size_t i = 0; i < xs.size(); ++i) as.push_back(gen_scalar(*s.K, cfg.level_bound, rng, false));
  std::string family;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    family += (i ? "; " : "") + format_elem(xs[i]) + " r=" + rs[i].get_str() + " a=" + tower.to_string(as[i]);
  }
  try {
    if (value_estimate_check(xs, rs, as)) return std::nullopt;
    return failure({{"family", family}}, "|sum a_i x_i| prod r_i >= max |a_i||x_i|", "inequality violated");
  } catch (const InvalidInstance& e) {
    return failure({{"family", family}}, "generated instance satisfies the hypothesis", e.what());
  }
}

}  // namespace detail

/// Zero divisors a = w (x) 1 - 1 (x) w and b = w (x) 1 - 1 (x) w^p in
/// F_{p^2} (x)_{F_p} F_{p^2}, w the level-2 generator; for p = 2 this is
/// z = w (x) 1 + 1 (x) w and z + 1 (x) 1.
struct CounterexampleWitness {
  TensorElem a;
  TensorElem b;
};

inline CounterexampleWitness counterexample_witness(const Setting& s) {
  const auto& tower = *s.tower;
  const ClosureElem w = tower.generator(2);
  const auto k = [&](const ClosureElem& c) { return TowerElem::constant(s.K, c); };
  const auto l = [&](const ClosureElem& c) { return TowerElem::constant(s.L, c); };
  TensorElem a(s.K, s.L, {{k(w), l(tower.one())}, {k(tower.neg(tower.one())), l(w)}});
  TensorElem b(s.K, s.L,
               {{k(w), l(tower.one())}, {k(tower.neg(tower.one())), l(tower.pow(w, tower.prime()))}});
  return {std::move(a), std::move(b)};
}

namespace detail {

inline std::optional<SuiteFailure> trial_counterexample(const Setting& s, const ScenarioConfig& cfg, Rng& rng,
                                                        std::uint64_t trial) {
  auto [a, b] = counterexample_witness(s);
  if (trial != 0) {
    // Units of K and L rescale the witness without changing the conclusion.
    const auto x = gen_tower_elem(s.K, cfg, rng);
    const auto y = gen_tower_elem(s.L, cfg, rng);
    a = t_mul(TensorElem(s.K, s.L, {{x, TowerElem::one(s.L)}}), a);
    b = t_mul(TensorElem(s.K, s.L, {{TowerElem::one(s.K), y}}), b);
  }
  const auto na = tensor_norm(a), nb = tensor_norm(b), np = tensor_norm(t_mul(a, b));
  const bool product_zero = is_zero(t_mul(a, b));
  if (product_zero && np.is_zero() && !(na * nb).is_zero()) return std::nullopt;
  return failure({{"a", format_tensor(a)}, {"b", format_tensor(b)}},
                 "ab = 0 while ||a|| ||b|| > 0 (multiplicativity fails over a non-closed base)",
                 mags({{"||a||", na}, {"||b||", nb}, {"||ab||", np}}) + " is_zero(ab)=" + (product_zero ? "true" : "false"));
}

}  // namespace detail

/// Runs `cfg.trials` trials of a suite. Trials are independent; `jobs` > 1
/// spreads them over threads, the report is assembled in trial order.
inline SuiteReport run_suite(const std::string& name, ScenarioConfig cfg, unsigned jobs = 1,
                             std::shared_ptr<const TowerConfig> tower = nullptr) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) throw InvalidConfig("unknown suite '" + name + "'");
  cfg.validate();
  if (name == "counterexample") {
    cfg.closed_base = false;
    if (cfg.constant_level % 2 != 0) cfg.constant_level = 2;
  }
  if ((name == "mult-closed" || name == "pure-product") && !cfg.closed_base) {
    throw InvalidConfig(name + " needs the algebraically closed base");
  }
  const auto start = std::chrono::steady_clock::now();
  const FieldsConfig fields = cfg.fields();
  if (!tower || tower->prime() != fields.p || tower->level_bound() != fields.level_bound) {
    tower = std::make_shared<const TowerConfig>(fields.p, fields.level_bound);
  }
  const Setting setting = Setting::build(fields, tower);

  detail::Trial body;
  if (name == "ultrametric") body = detail::trial_ultrametric;
  if (name == "crossnorm") body = detail::trial_crossnorm;
  if (name == "repr-invariance") body = detail::trial_repr_invariance;
  if (name == "symmetry") body = detail::trial_symmetry;
  if (name == "submult") body = detail::trial_submult;
  if (name == "mult-closed") body = detail::trial_mult_closed;
  if (name == "nondegeneracy") body = detail::trial_nondegeneracy;
  if (name == "pure-product") body = detail::trial_pure_product;
  if (name == "value-estimate") body = detail::trial_value_estimate;

  const auto count = static_cast<std::size_t>(cfg.trials);
  std::vector<std::optional<SuiteFailure>> results(count);
  const auto run_one = [&](std::size_t i) {
    const std::uint64_t trial = cfg.first_trial + i;
    Rng rng = Rng::for_trial(cfg.seed, trial);
    std::optional<SuiteFailure> f;
    try {
      f = name == "counterexample" ? detail::trial_counterexample(setting, cfg, rng, trial) : body(setting, cfg, rng);
    } catch (const std::exception& e) {
      f = detail::failure({}, "trial completes", std::string("exception: ") + e.what());
    }
    if (f) {
      f->trial = trial;
      f->replay = "tnorm check " + name + " " + cfg.replay_flags(trial);
    }
    results[i] = std::move(f);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
      pool.emplace_back([&, j] {
        for (std::size_t i = j; i < count; i += jobs) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  SuiteReport report;
  report.suite = name;
  report.config = cfg.describe();
  report.trials = cfg.trials;
  for (auto& r : results) {
    if (r) report.failures.push_back(std::move(*r));
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace tnorm
