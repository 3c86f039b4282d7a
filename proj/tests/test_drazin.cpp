#include <doctest.h>

#include "drazinlab/drazin.hpp"
#include "support/samplers.hpp"

using namespace drazinlab;
using testing::structured;

namespace {

const RationalField Q{};
using MQ = Matrix<RationalField>;

MQ q(std::initializer_list<std::initializer_list<long long>> rows) { return MQ::from_ints(Q, rows); }

MQ jordan_zero(std::size_t n) {
  MQ j(Q, n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) j(i, i + 1) = 1;
  return j;
}

// Every n x n matrix over GF(p), in lexicographic order of entries.
std::vector<Matrix<PrimeField>> all_matrices(const PrimeField& f, std::size_t n) {
  const std::size_t cells = n * n;
  std::size_t count = 1;
  for (std::size_t i = 0; i < cells; ++i) count *= f.p();
  std::vector<Matrix<PrimeField>> out;
  out.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    Matrix<PrimeField> m(f, n, n);
    std::size_t rest = code;
    for (std::size_t k = 0; k < cells; ++k) {
      m.entries()[k] = f.from_int(static_cast<long long>(rest % f.p()));
      rest /= f.p();
    }
    out.push_back(std::move(m));
  }
  return out;
}

// Brute force: the X satisfying XAX = X, AX = XA and A^{n+1} X = A^n.
// The last equation with exponent n is valid for every index k <= n.
std::vector<std::size_t> drazin_candidates(const Matrix<PrimeField>& a,
                                           const std::vector<Matrix<PrimeField>>& all) {
  const Matrix<PrimeField> an = mat_power(a, a.rows());
  const Matrix<PrimeField> an1 = an * a;
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& x = all[i];
    const auto ax = a * x;
    if (!mat_equal(ax, x * a)) continue;
    if (!mat_equal(x * ax, x)) continue;
    if (!mat_equal(an1 * x, an)) continue;
    hits.push_back(i);
  }
  return hits;
}

// Smallest k with A^{k+1} X = A^k for the true inverse X.
std::size_t index_from_inverse(const Matrix<PrimeField>& a, const Matrix<PrimeField>& x) {
  Matrix<PrimeField> ak = Matrix<PrimeField>::identity(a.field(), a.rows());
  for (std::size_t k = 0;; ++k) {
    if (mat_equal(ak * a * x, ak)) return k;
    ak = ak * a;
  }
}

void exhaustive_uniqueness(const PrimeField& f, std::size_t n, bool oracle_sweep) {
  const auto all = all_matrices(f, n);
  for (const auto& a : all) {
    const auto hits = drazin_candidates(a, all);
    REQUIRE(hits.size() == 1);
    const auto& x = all[hits.front()];
    const auto dec = drazin_inverse(a);
    CHECK(mat_equal(dec.inverse, x));
    CHECK(dec.index == index_from_inverse(a, x));
    if (oracle_sweep) {
      // The four-axiom oracle accepts exactly the brute-force solution.
      for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(verify_drazin_axioms(a, all[i]).ok == (i == hits.front()));
      }
    }
  }
}

}  // namespace

TEST_CASE("index_of") {
  CHECK(index_of(MQ::identity(Q, 3)) == 0);
  for (std::size_t n = 1; n <= 5; ++n) CHECK(index_of(jordan_zero(n)) == n);
  CHECK(index_of(q({{0, 1}, {0, 1}})) == 1);
  CHECK(index_of(MQ(Q, 2, 2)) == 1);
}

TEST_CASE("drazin_inverse on small cases") {
  SUBCASE("diag(2, 0)") {
    const auto d = drazin_inverse(q({{2, 0}, {0, 0}}));
    MQ expected(Q, 2, 2);
    expected(0, 0) = Rational(1, 2);
    CHECK(mat_equal(d.inverse, expected));
    CHECK(d.index == 1);
    CHECK(d.core_rank == 1);
    CHECK(mat_equal(d.idempotent, q({{0, 0}, {0, 1}})));
  }
  SUBCASE("nilpotent") {
    const auto d = drazin_inverse(q({{0, 1}, {0, 0}}));
    CHECK(d.inverse.is_zero());
    CHECK(d.index == 2);
    CHECK(mat_equal(d.idempotent, MQ::identity(Q, 2)));
  }
  SUBCASE("idempotent is its own inverse") {
    const MQ e = q({{0, 1}, {0, 1}});
    const auto d = drazin_inverse(e);
    CHECK(mat_equal(d.inverse, e));
    CHECK(verify_drazin_axioms(e, d.inverse).ok);
  }
  SUBCASE("1 x 1") {
    MQ quarter(Q, 1, 1);
    quarter(0, 0) = Rational(1, 4);
    CHECK(mat_equal(drazin_inverse(q({{4}})).inverse, quarter));
    CHECK(drazin_inverse(q({{0}})).inverse.is_zero());
  }
  SUBCASE("invertible agrees with mat_inverse") {
    const MQ a = q({{2, 1}, {1, 1}});
    CHECK(mat_equal(drazin_inverse(a).inverse, mat_inverse(a)));
    CHECK(drazin_inverse(a).idempotent.is_zero());
  }
}

TEST_CASE("group_inverse") {
  const MQ a = q({{2, 1}, {1, 1}});
  CHECK(mat_equal(group_inverse(a), mat_inverse(a)));
  const MQ e = q({{0, 1}, {0, 1}});
  CHECK(mat_equal(group_inverse(e), e));
  CHECK_THROWS_AS(group_inverse(q({{0, 1}, {0, 0}})), NotGroupInvertible);
  CHECK(verify_group_axioms(e, e).ok);
}

TEST_CASE("spectral_idempotent") {
  CHECK(spectral_idempotent(q({{2, 1}, {1, 1}})).is_zero());
  CHECK(mat_equal(spectral_idempotent(jordan_zero(3)), MQ::identity(Q, 3)));
  CHECK(mat_equal(spectral_idempotent(q({{2, 0}, {0, 0}})), q({{0, 0}, {0, 1}})));
}

TEST_CASE("verify_drazin_axioms rejects wrong candidates") {
  const auto r = verify_drazin_axioms(MQ::identity(Q, 2), MQ(Q, 2, 2));
  CHECK_FALSE(r.ok);
  CHECK(std::find(r.failed.begin(), r.failed.end(), std::string(axiom::kNilpotentDefect)) != r.failed.end());

  MQ x(Q, 2, 2);
  x(0, 0) = Rational(1, 2);
  x(1, 1) = 1;
  const auto r2 = verify_drazin_axioms(q({{2, 0}, {0, 0}}), x);
  CHECK_FALSE(r2.ok);
  CHECK(r2.failed == std::vector<std::string>{axiom::kReflexive});
}

TEST_CASE("exhaustive uniqueness over M_2(GF(3))") { exhaustive_uniqueness(PrimeField(3), 2, true); }

TEST_CASE("exhaustive uniqueness over M_3(GF(2))") { exhaustive_uniqueness(PrimeField(2), 3, false); }

namespace {

template <class F>
void structured_agreement(const F& field, std::uint64_t seed, int trials) {
  Sampler s(seed);
  for (int t = 0; t < trials; ++t) {
    const std::size_t core = s.below(4);
    const auto jordan = testing::random_partition(s.below(4), s);
    if (core == 0 && jordan.empty()) continue;
    const auto known = structured(field, core, jordan, s);
    const auto dec = drazin_inverse(known.a);
    CHECK(mat_equal(dec.inverse, known.inverse));
    CHECK(dec.index == known.index);
    CHECK(dec.core_rank == known.core_rank);
    CHECK(verify_drazin_axioms(known.a, dec.inverse).ok);
  }
}

template <class F>
void random_properties(const F& field, std::uint64_t seed, int trials) {
  Sampler s(seed);
  for (int t = 0; t < trials; ++t) {
    const std::size_t n = 2 + s.below(4);
    const Matrix<F> a = s.matrix(field, n, 3);
    const auto dec = drazin_inverse(a);
    const Matrix<F>& x = dec.inverse;
    const AxiomReport report = verify_drazin_axioms(a, x);
    CHECK(report.ok);
    const Matrix<F> ak = mat_power(a, dec.index);
    CHECK(mat_equal(x * a * x, x));
    CHECK(mat_equal(ak * a * x, ak));
    CHECK((index_of(a) == 0) == (rank(a) == n));

    const Matrix<F>& p = dec.idempotent;
    CHECK(mat_equal(p * p, p));
    CHECK(mat_equal(a * p, p * a));
    CHECK(is_nilpotent(a * p));

    // Any single-entry change to A^D breaks the certificate.
    Matrix<F> perturbed = x;
    const std::size_t i = s.below(n), j = s.below(n);
    perturbed(i, j) = perturbed(i, j) + field.one();
    CHECK_FALSE(verify_drazin_axioms(a, perturbed).ok);

    // Similarity covariance with a unipotent change of basis.
    Matrix<F> unit_lower = Matrix<F>::identity(field, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < r; ++c) unit_lower(r, c) = s.entry(field, 2);
    const Matrix<F> lower_inv = testing::neumann_inverse_of_unipotent(unit_lower);
    CHECK(mat_equal(drazin_inverse(unit_lower * a * lower_inv).inverse, unit_lower * x * lower_inv));
  }
}

}  // namespace

TEST_CASE("constructive inverse matches structured matrices with known Drazin data") {
  structured_agreement(Q, 11, 100);
  structured_agreement(PrimeField(5), 12, 100);
  structured_agreement(PrimeField(7), 13, 100);
}

TEST_CASE("random matrices satisfy the Drazin axioms") {
  random_properties(Q, 21, 80);
  random_properties(PrimeField(5), 22, 150);
  random_properties(PrimeField(7), 23, 150);
}

TEST_CASE("complex field") {
  const ComplexField cf(1e-9);
  Sampler s(31);
  for (int t = 0; t < 50; ++t) {
    const auto jordan = testing::random_partition(1 + s.below(2), s);
    const auto known = structured(cf, 1 + s.below(3), jordan, s, 1);
    const auto dec = drazin_inverse(known.a);
    CHECK(dec.index == known.index);
    CHECK(relative_residual(dec.inverse, known.inverse) < 1e-8);
    CHECK(dec.residual < 1e-8);
  }

  SUBCASE("rank inside the ambiguity band is reported") {
    Matrix<ComplexField> a(cf, 2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 1e-7;
    CHECK_THROWS_AS(drazin_inverse(a), NumericalRankAmbiguous);
  }
  SUBCASE("clear gaps are fine") {
    Matrix<ComplexField> a(cf, 2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 1e-14;
    const auto dec = drazin_inverse(a);
    CHECK(dec.index == 1);
    CHECK(std::abs(dec.inverse(0, 0) - Complex(1.0)) < 1e-12);
  }
}
