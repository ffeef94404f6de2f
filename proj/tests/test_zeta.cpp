#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "random_specs.hpp"
#include "tspec/exactla.hpp"
#include "tspec/zeta.hpp"

#include <cmath>
#include <random>

using namespace tspec;
using testkit::corpus_spec;
using testkit::scalar_spec;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

IntPoly poly(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return IntPoly(std::move(v));
}

std::vector<Integer> window(const EndoSpec& s, std::uint64_t kmax) {
  return reidemeister_sequence(s, kmax).finite_prefix(kmax);
}

Integer rho_of(const SpectralDecomposition& d, const IntPoly& p) {
  for (const auto& f : d.factors)
    if (f.poly == p) return f.rho;
  return 0;
}

const long double golden_square = (3.0L + std::sqrt(5.0L)) / 2.0L;

}  // namespace

TEST_CASE("find_min_recurrence examples") {
  CHECK(find_min_recurrence(ints({1, 3, 7, 15, 31}), 1) == poly({2, -3, 1}));
  CHECK(find_min_recurrence(ints({1, 5, 16, 45, 121, 320, 841}), 1) == poly({-1, 4, -4, 1}));
  CHECK(find_min_recurrence(ints({0, 0, 0, 0}), 10) == poly({1}));
  CHECK(find_min_recurrence(window(corpus_spec("torus_fib"), 24), 10) == poly({-1, 4, -4, 1}));
  CHECK_THROWS_AS(find_min_recurrence(ints({1, 2, 4, 9}), 10), Error);
  try {
    find_min_recurrence(ints({1, 2, 4, 9, 17, 33, 60}), 1, 2);
    FAIL("expected window exhaustion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WindowExhausted);
  }
}

TEST_CASE("residues examples") {
  const auto two = residues(poly({2, -3, 1}), ints({1, 3, 7}));
  REQUIRE(two.factors.size() == 2);
  CHECK(rho_of(two, poly({-2, 1})) == 1);
  CHECK(rho_of(two, poly({-1, 1})) == -1);

  const auto torus = residues(poly({-1, 4, -4, 1}), window(corpus_spec("torus_fib"), 24));
  CHECK(rho_of(torus, poly({1, -3, 1})) == 1);
  CHECK(rho_of(torus, poly({-1, 1})) == -2);
  CHECK(torus.r_phi == 3);

  const auto zero = residues(poly({1}), ints({0, 0, 0}));
  CHECK(zero.empty());
  CHECK(zero.lambda == 0);

  CHECK_THROWS_AS(residues(poly({1, -2, 1}), ints({1, 1, 1, 1})), Error);  // repeated root
  try {
    residues(poly({2, -3, 1}), ints({1, 2, 4}));  // 2^k/2 has residue 1/2
    FAIL("expected a decomposition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OracleMismatch);
  }
}

TEST_CASE("zeta_rational closed forms") {
  const auto two = decompose(scalar_spec(2), window(scalar_spec(2), 24));
  const RationalFunction z2 = zeta_rational(two);
  CHECK(z2.numerator == poly({1, -1}));
  CHECK(z2.denominator == poly({1, -2}));

  const auto torus = decompose(corpus_spec("torus_fib"), window(corpus_spec("torus_fib"), 24));
  const RationalFunction zt = zeta_rational(torus);
  CHECK(zt.numerator == poly({1, -2, 1}));
  CHECK(zt.denominator == poly({1, -3, 1}));

  const RationalFunction trivial = zeta_rational(residues(poly({1}), ints({0, 0})));
  CHECK(trivial.numerator == poly({1}));
  CHECK(trivial.denominator == poly({1}));
}

TEST_CASE("companion_pair examples") {
  const auto two = decompose(scalar_spec(2), window(scalar_spec(2), 24));
  const CompanionPair p = companion_pair(two);
  CHECK(p.plus == IntMatrix::Constant(1, 1, Integer(2)));
  CHECK(p.minus == IntMatrix::Constant(1, 1, Integer(1)));

  const auto torus = decompose(corpus_spec("torus_fib"), window(corpus_spec("torus_fib"), 24));
  const CompanionPair q = companion_pair(torus);
  CHECK(q.plus == companion(poly({1, -3, 1})));
  CHECK(q.minus == IntMatrix::Identity(2, 2));

  const CompanionPair e = companion_pair(residues(poly({1}), ints({0})));
  CHECK(e.plus.rows() == 0);
  CHECK(e.minus.rows() == 0);
  for (const auto& t : power_traces(e.plus, 5)) CHECK(t == 0);
}

TEST_CASE("radius_and_lambda examples") {
  const auto two = radius_and_lambda(decompose(scalar_spec(2), window(scalar_spec(2), 24)));
  CHECK(std::abs(two.lambda - 2) < 1e-15L);
  CHECK(std::abs(two.radius - 0.5L) < 1e-15L);
  CHECK(two.n_phi == 1);
  CHECK(two.rho_phi == 0);
  CHECK(two.M_phi == 1);

  const auto torus = radius_and_lambda(decompose(corpus_spec("torus_fib"), window(corpus_spec("torus_fib"), 24)));
  CHECK(std::abs(torus.lambda - golden_square) < 1e-15L);
  CHECK(torus.n_phi == 1);

  const auto zero = radius_and_lambda(residues(poly({1}), ints({0})));
  CHECK(zero.lambda == 0);
  CHECK(std::isinf(zero.radius));
}

TEST_CASE("verify_exterior_bound examples") {
  const auto torus_spec = corpus_spec("torus_fib");
  const auto t = verify_exterior_bound(torus_spec, decompose(torus_spec, window(torus_spec, 24)));
  CHECK(t.applicable);
  CHECK(t.match);
  CHECK(std::abs(t.exterior_radius - golden_square) < 1e-12L);

  const auto two = verify_exterior_bound(scalar_spec(2), decompose(scalar_spec(2), window(scalar_spec(2), 24)));
  CHECK(two.match);
  CHECK(std::abs(two.exterior_radius - 2) < 1e-15L);

  const auto klein = corpus_spec("klein_2_3");
  const auto k = verify_exterior_bound(klein, decompose(klein, window(klein, 30)));
  CHECK(k.match);
  CHECK(std::abs(k.lambda - 6) < 1e-12L);

  const auto one = verify_exterior_bound(scalar_spec(1), SpectralDecomposition{});
  CHECK_FALSE(one.applicable);
}

TEST_CASE("polynomial roots carry certified discs") {
  const auto sd = polynomial_roots(poly({1, 0, -10, 0, 1}));  // roots +-sqrt2 +-sqrt3
  REQUIRE(sd.size() == 4);
  CHECK(std::abs(sd[0].modulus() - (std::sqrt(2.0L) + std::sqrt(3.0L))) < 1e-15L);
  for (const auto& r : sd) {
    CHECK(r.isolated);
    CHECK(r.radius < 1e-30L);
  }
  // 12th cyclotomic polynomial: all roots on the unit circle at angles +-pi/6, +-5pi/6
  for (const auto& r : polynomial_roots(poly({1, 0, -1, 0, 1}))) {
    CHECK(std::abs(r.modulus() - 1) < 1e-15L);
    const long double turns = std::abs(r.angle()) / std::acos(-1.0L) * 6;
    CHECK(std::abs(turns - std::round(turns)) < 1e-12L);
  }
  const auto lin = polynomial_roots(poly({-3, 2}));
  REQUIRE(lin.size() == 1);
  CHECK(lin[0].value.real() == 1.5L);
}

TEST_CASE("synthetic exponential sums are recovered") {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> root(-6, 6), res(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::map<int, int> terms;
    const int count = 1 + static_cast<int>(rng() % 4);
    while (static_cast<int>(terms.size()) < count) {
      const int lam = root(rng), r = res(rng);
      if (lam != 0 && r != 0) terms[lam] = r;
    }
    std::vector<Integer> seq;
    for (unsigned k = 1; k <= 30; ++k) {
      Integer s = 0;
      for (auto [lam, r] : terms) s += r * pow(Integer(lam), k);
      seq.push_back(s);
    }
    const auto d = residues(find_min_recurrence(seq, 10), seq);
    REQUIRE(d.factors.size() == terms.size());
    for (auto [lam, r] : terms) CHECK(rho_of(d, poly({-lam, 1})) == r);
  }
}

TEST_CASE("random specs: round trip, trace identity and lambda properties") {
  std::mt19937_64 rng(62);
  testkit::SpecRequest req;
  req.finite_through = 74;
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = testkit::random_spec(rng, req);
    const std::uint64_t kmax = 2 * default_degree_bound(s.spec) + 10;
    const auto seq = window(s.spec, kmax);
    const auto d = decompose(s.spec, seq);
    INFO(s.name);

    const auto series = exp_log_series(seq, kmax);
    const auto taylor = zeta_rational(d).taylor(kmax);
    for (std::size_t m = 0; m <= kmax; ++m) CHECK(series[m] == Rational(taylor[m]));

    const CompanionPair p = companion_pair(d);
    const auto tp = power_traces(p.plus, kmax), tm = power_traces(p.minus, kmax);
    for (std::size_t k = 0; k < kmax; ++k) CHECK(tp[k] - tm[k] == seq[k]);

    CHECK((d.lambda == 0 || d.lambda >= 1 - 1e-12L));
    if (d.lambda > 0) {
      long double positive = 0;
      for (const auto& f : d.factors)
        if (f.rho > 0)
          for (const auto& r : f.roots) positive = std::max(positive, r.modulus());
      CHECK(std::abs(positive - d.lambda) <= 1e-12L * d.lambda);
    }
    const auto ext = verify_exterior_bound(s.spec, d);
    if (ext.applicable) CHECK_MESSAGE(ext.match, ext.exterior_radius << " vs " << ext.lambda);
    ++checked;
  }
  CHECK(checked == 30);
}
