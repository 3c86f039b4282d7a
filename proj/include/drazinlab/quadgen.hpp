#pragma once

// Seeded generators of quadruples (and triples) that satisfy a chosen
// entwining condition. Conditions that are linear in one unknown matrix are
// solved exactly with solve_general; the rest are found by rejection.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "drazinlab/identities.hpp"

namespace drazinlab {

enum class Strategy { kClassic, kMosic, kAbaAca, kNilpotentAC, kRejection, kExample34 };

std::string to_string(Strategy s);
Strategy parse_strategy(std::string_view text);
inline constexpr int kDefaultEntryBound = 3;
inline constexpr int kMosicRetries = 32;
inline constexpr std::uint64_t kDefaultRejectionBudget = 1'000'000;

struct GenSpec {
  Strategy strategy = Strategy::kMosic;
  FieldSpec field = RationalField{};
  std::size_t dim = 2;
  std::uint64_t seed = 0;
  int entry_bound = kDefaultEntryBound;
  // Rejection only: condition to hit, condition that must fail, trial budget.
  ConditionId target = ConditionId::C1;
  std::optional<ConditionId> exclude;
  std::uint64_t budget = kDefaultRejectionBudget;
};

/// Strategies whose output is a triple (a, b, c), embedded with d := a.
bool is_triple_strategy(const GenSpec& spec);

template <class F>
struct Triple {
  Matrix<F> a, b, c;
};

/// Entry and matrix sampling on top of mt19937_64. Bounded integers and
/// doubles are derived from raw engine output so that streams are
/// identical across standard library implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
    std::uint64_t x;
    do {
      x = rng_();
    } while (x >= limit);
    return x % bound;
  }

  long long integer(int bound) {
    return static_cast<long long>(below(2 * static_cast<std::uint64_t>(bound) + 1)) - bound;
  }

  double unit_interval() { return 2.0 * static_cast<double>(rng_() >> 11) * 0x1.0p-53 - 1.0; }

  /// Exact fields: uniform integer in [-bound, bound] mapped into the field.
  /// Complex: real and imaginary parts uniform in [-1, 1).
  template <class F>
  typename F::Element entry(const F& field, int bound) {
    if constexpr (F::exact) {
      return field.from_int(integer(bound));
    } else {
      double re = unit_interval();
      double im = unit_interval();
      return {re, im};
    }
  }

  /// Uniform over the whole prime field; other fields fall back to entry().
  template <class F>
  typename F::Element uniform(const F& field, int bound) {
    if constexpr (std::is_same_v<F, PrimeField>) {
      return field.from_int(static_cast<long long>(below(field.p())));
    } else {
      return entry(field, bound);
    }
  }

  enum class Shape { kFull, kUpper, kStrictlyUpper };

  template <class F>
  Matrix<F> matrix(const F& field, std::size_t n, int bound, Shape shape = Shape::kFull) {
    Matrix<F> m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (shape == Shape::kUpper && j < i) continue;
        if (shape == Shape::kStrictlyUpper && j <= i) continue;
        m(i, j) = entry(field, bound);
      }
    }
    return m;
  }

  template <class F>
  Matrix<F> uniform_matrix(const F& field, std::size_t n, int bound) {
    Matrix<F> m(field, n, n);
    for (auto& x : m.entries()) x = uniform(field, bound);
    return m;
  }

 private:
  std::mt19937_64 rng_;
};

namespace detail {

// Solves the stacked equations L_k X R_k = rhs_k for an n x n unknown X,
// vectorised row-major. Returns nullopt when
// inconsistent; otherwise a particular solution plus a random element of
// the solution space's direction.
template <class F>
std::optional<Matrix<F>> solve_sandwich(
    const std::vector<std::pair<Matrix<F>, Matrix<F>>>& sides,
    const std::vector<Matrix<F>>& rhs, Sampler& sampler, int bound) {
  const F& field = rhs.front().field();
  const std::size_t n = rhs.front().rows();
  const std::size_t nn = n * n;
  Matrix<F> system(field, sides.size() * nn, nn);
  Matrix<F> target(field, sides.size() * nn, 1);
  for (std::size_t e = 0; e < sides.size(); ++e) {
    const auto& [left, right] = sides[e];
    // Coefficient of X(i, j) in (L X R)(r, s) is L(r, i) R(j, s).
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) {
        const std::size_t row = e * nn + r * n + s;
        target(row, 0) = rhs[e](r, s);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) system(row, i * n + j) = left(r, i) * right(j, s);
      }
  }
  auto sol = solve_general(system, target);
  if (!sol) return std::nullopt;
  Matrix<F> vec = sol->particular;
  for (const auto& direction : sol->nullspace_basis) vec = vec + sampler.entry(field, bound) * direction;
  Matrix<F> x(field, n, n);
  for (std::size_t k = 0; k < nn; ++k) x.entries()[k] = vec(k, 0);
  return x;
}

template <class F>
void require_field(const GenSpec& spec, const F& field) {
  if (!std::holds_alternative<F>(spec.field) || !(std::get<F>(spec.field) == field)) {
    throw FieldMismatch("generator field does not match GenSpec field");
  }
}

}  // namespace detail

/// (a, b, b, a): the classic Cline shape.
template <class F>
Quadruple<F> gen_classic(const GenSpec& spec, const F& field) {
  Sampler s(spec.seed);
  Matrix<F> a = s.matrix(field, spec.dim, spec.entry_bound);
  Matrix<F> b = s.matrix(field, spec.dim, spec.entry_bound);
  return {a, b, b, a, "classic"};
}

/// Samples a, b, c and solves bdb = bac, cdb = cac for d. Throws Infeasible
/// when kMosicRetries samples in a row give an inconsistent system.
template <class F>
Quadruple<F> gen_mosic(const GenSpec& spec, const F& field) {
  Sampler s(spec.seed);
  for (int attempt = 0; attempt < kMosicRetries; ++attempt) {
    Matrix<F> a = s.matrix(field, spec.dim, spec.entry_bound);
    Matrix<F> b = s.matrix(field, spec.dim, spec.entry_bound);
    Matrix<F> c = s.matrix(field, spec.dim, spec.entry_bound);
    const Matrix<F> ac = a * c;
    auto d = detail::solve_sandwich<F>({{b, b}, {c, b}}, {b * ac, c * ac}, s, spec.entry_bound);
    if (d) return {std::move(a), std::move(b), std::move(c), std::move(*d), "mosic"};
  }
  throw Infeasible("no consistent bdb = bac, cdb = cac system in " +
                   std::to_string(kMosicRetries) + " samples");
}

/// Samples a, b and draws c from the affine space {c : aca = aba}, which
/// always contains b.
template <class F>
Triple<F> gen_aba_aca(const GenSpec& spec, const F& field) {
  Sampler s(spec.seed);
  Matrix<F> a = s.matrix(field, spec.dim, spec.entry_bound);
  Matrix<F> b = s.matrix(field, spec.dim, spec.entry_bound);
  auto c = detail::solve_sandwich<F>({{a, a}}, {a * b * a}, s, spec.entry_bound);
  return {std::move(a), std::move(b), c ? std::move(*c) : b};
}

/// a strictly upper triangular and c upper triangular, so ac is nilpotent;
/// d from the Mosic system. Falls back to a classic quadruple with a
/// strictly upper and b upper triangular.
template <class F>
Quadruple<F> gen_nilpotent_ac(const GenSpec& spec, const F& field) {
  using Shape = Sampler::Shape;
  Sampler s(spec.seed);
  for (int attempt = 0; attempt < kMosicRetries; ++attempt) {
    Matrix<F> a = s.matrix(field, spec.dim, spec.entry_bound, Shape::kStrictlyUpper);
    Matrix<F> b = s.matrix(field, spec.dim, spec.entry_bound);
    Matrix<F> c = s.matrix(field, spec.dim, spec.entry_bound, Shape::kUpper);
    const Matrix<F> ac = a * c;
    auto d = detail::solve_sandwich<F>({{b, b}, {c, b}}, {b * ac, c * ac}, s, spec.entry_bound);
    if (d) return {std::move(a), std::move(b), std::move(c), std::move(*d), "nilpotent_ac"};
  }
  Matrix<F> a = s.matrix(field, spec.dim, spec.entry_bound, Shape::kStrictlyUpper);
  Matrix<F> b = s.matrix(field, spec.dim, spec.entry_bound, Shape::kUpper);
  return {a, b, b, a, "nilpotent_ac/classic"};
}

/// Uniform search until spec.target holds (and spec.exclude, if set, fails).
/// Triple conditions sample (a, b, c) and set d := a. Throws Exhausted after
/// spec.budget samples.
template <class F>
Quadruple<F> gen_rejection(const GenSpec& spec, const F& field) {
  Sampler s(spec.seed);
  const bool triple = is_triple_condition(spec.target);
  for (std::uint64_t trial = 0; trial < spec.budget; ++trial) {
    Matrix<F> a = s.uniform_matrix(field, spec.dim, spec.entry_bound);
    Matrix<F> b = s.uniform_matrix(field, spec.dim, spec.entry_bound);
    Matrix<F> c = s.uniform_matrix(field, spec.dim, spec.entry_bound);
    Matrix<F> d = triple ? a : s.uniform_matrix(field, spec.dim, spec.entry_bound);
    Quadruple<F> q{std::move(a), std::move(b), std::move(c), std::move(d), "rejection"};
    if (!check_condition(q, spec.target).all_hold) continue;
    if (spec.exclude && check_condition(q, *spec.exclude).all_hold) continue;
    return q;
  }
  throw Exhausted("no " + to_string(spec.target) + " witness" +
                  (spec.exclude ? " violating " + to_string(*spec.exclude) : std::string()) +
                  " within " + std::to_string(spec.budget) + " samples");
}

/// The 2x2 example a = [[0,1],[0,0]], b = [[1,0],[0,0]], c = [[1,0],[1,1]].
template <class F = RationalField>
Triple<F> example34_triple(const F& field = F{}) {
  return {Matrix<F>::from_ints(field, {{0, 1}, {0, 0}}),
          Matrix<F>::from_ints(field, {{1, 0}, {0, 0}}),
          Matrix<F>::from_ints(field, {{1, 0}, {1, 1}})};
}

/// Dispatches on spec.strategy. Triples come back embedded with d := a.
template <class F>
Quadruple<F> generate(const GenSpec& spec, const F& field) {
  detail::require_field(spec, field);
  if (spec.dim == 0) throw DimensionMismatch("GenSpec.dim must be at least 1");
  switch (spec.strategy) {
    case Strategy::kClassic: return gen_classic(spec, field);
    case Strategy::kMosic: return gen_mosic(spec, field);
    case Strategy::kNilpotentAC: return gen_nilpotent_ac(spec, field);
    case Strategy::kRejection: return gen_rejection(spec, field);
    case Strategy::kAbaAca: {
      Triple<F> t = gen_aba_aca(spec, field);
      return embed_triple(t.a, t.b, t.c, "aba_aca");
    }
    case Strategy::kExample34: {
      Triple<F> t = example34_triple(field);
      return embed_triple(t.a, t.b, t.c, "example34");
    }
  }
  throw ParseError("unknown strategy");
}

}  // namespace drazinlab
