#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "random_specs.hpp"
#include "tspec/asymptotics.hpp"
#include "tspec/exactla.hpp"

#include <cmath>
#include <random>

using namespace tspec;
using testkit::corpus_spec;
using testkit::scalar_spec;

namespace {

std::vector<Integer> window(const EndoSpec& s, std::uint64_t kmax) {
  return reidemeister_sequence(s, kmax).finite_prefix(kmax);
}

SpectralDecomposition decomposition(const EndoSpec& s, std::uint64_t kmax = 0) {
  if (kmax == 0) kmax = std::max<std::uint64_t>(24, 2 * default_degree_bound(s) + 10);
  return decompose(s, window(s, kmax));
}

EndoSpec torus_with(const IntPoly& charpoly_of_d) {
  EndoSpec s;
  s.n = charpoly_of_d.degree();
  s.holonomy = {IntMatrix::Identity(s.n, s.n)};
  s.D = to_rational(IntMatrix(companion(charpoly_of_d)));
  s.d = RatVector::Zero(s.n);
  return s;
}

IntPoly poly(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return IntPoly(std::move(v));
}

/// phi^m as a spec: linear part D^m with translation sum_{i<m} D^i d.
EndoSpec power_spec(const EndoSpec& s, unsigned m) {
  const auto image = validate_spec(s).holonomy_image;
  EndoSpec p = s;
  p.D = mat_pow(s.D, m);
  RatVector shift = RatVector::Zero(s.n);
  RatMatrix acc = RatMatrix::Identity(s.n, s.n);
  for (unsigned i = 0; i < m; ++i) {
    shift += acc * s.d;
    acc = acc * s.D;
  }
  p.d = shift;
  std::vector<std::size_t> map(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    std::size_t j = i;
    for (unsigned r = 0; r < m; ++r) j = image[j];
    map[i] = j;
  }
  p.holonomy_map = map;
  return p;
}

/// Least p with s[i + p] = s[i] on the whole window, by direct comparison.
std::uint64_t brute_period(const std::vector<Integer>& seq) {
  for (std::uint64_t p = 1; p < seq.size(); ++p) {
    bool ok = true;
    for (std::size_t i = 0; i + p < seq.size() && ok; ++i) ok = mod_floor(seq[i], 2) == mod_floor(seq[i + p], 2);
    if (ok) return p;
  }
  return 0;
}

}  // namespace

TEST_CASE("classify_trichotomy examples") {
  const Trichotomy two = classify_trichotomy(decomposition(scalar_spec(2)));
  CHECK(two.kind == AsymptoticCase::Periodic);
  CHECK(two.q == 1);
  CHECK(std::abs(two.profile.at(0) - 1) < 1e-12L);
  CHECK(two.confidence == "certified-numeric");

  const Trichotomy torus = classify_trichotomy(decomposition(corpus_spec("torus_fib")));
  CHECK(torus.kind == AsymptoticCase::Periodic);
  CHECK(torus.q == 1);
  CHECK(std::abs(torus.profile.at(0) - 1) < 1e-12L);

  // Complex pair of modulus sqrt 2; the real root 2 of the exterior square dominates.
  const auto pair = decomposition(torus_with(poly({2, -1, 1})));
  CHECK(std::abs(pair.lambda - 2) < 1e-15L);
  const Trichotomy p = classify_trichotomy(pair);
  CHECK(p.kind == AsymptoticCase::Periodic);
  CHECK(p.q == 1);
  CHECK(std::abs(p.profile.at(0) - 1) < 1e-12L);
  for (const auto& r : polynomial_roots(poly({2, -1, 1}))) {
    const long double turn = std::abs(r.angle()) / (2 * std::acos(-1.0L));
    CHECK(std::abs(turn - std::acos(1 / (2 * std::sqrt(2.0L))) / (2 * std::acos(-1.0L))) < 1e-15L);
    bool rational = false;
    for (long q = 1; q <= kAngleDenominatorCap; ++q)
      rational = rational || std::abs(turn * q - std::round(turn * q)) < 1e-12L * q;
    CHECK_FALSE(rational);
  }

  // Salem quartic: the dominant modulus is shared by tau and tau e^{+-i theta}.
  const auto salem = decomposition(torus_with(poly({1, -1, -1, -1, 1})), 60);
  CHECK(salem.n_phi == 3);
  CHECK(classify_trichotomy(salem).kind == AsymptoticCase::IntervalDense);

  const Trichotomy trivial = classify_trichotomy(SpectralDecomposition{});
  CHECK(trivial.kind == AsymptoticCase::TrivialZeta);
  CHECK(trivial.confidence == "exact");
}

TEST_CASE("limsup of the scaled spectrum matches the dominant part") {
  for (const auto& s : {scalar_spec(2), corpus_spec("torus_fib"), scalar_spec(-3), corpus_spec("klein_2_3")}) {
    const auto seq = window(s, 24);
    const LimsupCheck c = limsup_check(decomposition(s), seq);
    CHECK_MESSAGE(c.agrees, c.gap);
  }
}

TEST_CASE("r2_period examples") {
  CHECK(r2_period(window(scalar_spec(2), 24)) == 1);
  CHECK(r2_period(window(corpus_spec("torus_fib"), 24)) == 3);
  CHECK(r2_period(std::vector<Integer>(12, Integer(0))) == 1);
  try {
    r2_period(window(corpus_spec("torus_fib"), 5), 3);
    FAIL("expected window error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WindowExhausted);
  }
}

TEST_CASE("r2_period agrees with direct period search and is odd") {
  std::mt19937_64 rng(71);
  testkit::SpecRequest req;
  req.crystallographic = false;
  req.finite_through = 200;
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = testkit::random_spec(rng, req);
    const auto seq = window(s.spec, 200);
    const auto alpha = r2_period(seq);
    CHECK(alpha % 2 == 1);
    if (alpha <= 60) CHECK_MESSAGE(brute_period(seq) == alpha, s.name);
  }
}

TEST_CASE("parity_check examples") {
  const ParityReport three = parity_check(scalar_spec(2), 3);
  CHECK(three.alpha2 == 1);
  CHECK(three.irreducible == 6);
  CHECK(three.verdict == ParityVerdict::Holds);
  CHECK_THROWS_AS(parity_check(scalar_spec(2), 4), Error);
  for (std::uint64_t k : {5ULL, 7ULL, 9ULL, 15ULL}) CHECK(parity_check(scalar_spec(3), k).verdict != ParityVerdict::Inapplicable);
  CHECK(parity_check(scalar_spec(2), 1).verdict == ParityVerdict::Inapplicable);
  try {
    parity_check(scalar_spec(1), 3);
    FAIL("expected an infinite-value error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InfiniteValue);
  }
}

TEST_CASE("parity verdicts on random specs are never violated") {
  std::mt19937_64 rng(72);
  testkit::SpecRequest req;
  req.finite_through = 74;
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = testkit::random_spec(rng, req);
    const std::uint64_t window_len = std::max<std::uint64_t>(15, 3 * default_degree_bound(s.spec));
    const SpectrumSeq seq = reidemeister_sequence(s.spec, window_len);
    const auto alpha = r2_period(seq.finite_prefix(window_len));
    for (std::uint64_t k = 1; k <= 15; k += 2) CHECK(parity_check(seq, alpha, k).verdict != ParityVerdict::Violated);
  }
}

TEST_CASE("density_estimates examples") {
  const auto two = scalar_spec(2);
  const auto d2 = decomposition(two);
  const DensityReport a = density_estimates(reidemeister_sequence(two, 24), classify_trichotomy(d2), d2, 24);
  CHECK(a.DA == 1);
  CHECK(a.DH == 1);
  CHECK(a.DA_lower == 1);

  const auto minus = scalar_spec(-2);
  const auto dm = decomposition(minus);
  const DensityReport b = density_estimates(reidemeister_sequence(minus, 24), classify_trichotomy(dm), dm, 24);
  CHECK(b.DH == Rational(23, 24));
  CHECK(b.DA_le_DH);

  SpectrumSeq zero;
  zero.kmax = 6;
  zero.values.assign(6, ExtNat(0));
  zero.essential.assign(6, Rational(0));
  const DensityReport c = density_estimates(zero, classify_trichotomy(SpectralDecomposition{}), SpectralDecomposition{}, 6);
  CHECK(c.DA == 0);
  CHECK(c.DH == 0);
}

TEST_CASE("height_corollaries examples") {
  const auto two = scalar_spec(2);
  const auto t2 = classify_trichotomy(decomposition(two));
  const HeightCorollaryReport a = height_corollaries(two, 24, 50, &t2);
  CHECK(a.strictly_increasing);
  CHECK(a.primes_checked.size() == 15);
  CHECK(a.primes_missing.empty());
  CHECK(a.ok());
  REQUIRE(a.progression);
  CHECK(a.progression->primes == std::vector<std::uint64_t>{2, 3, 5, 7, 11});

  const HeightCorollaryReport b = height_corollaries(scalar_spec(-2), 24, 24);
  CHECK_FALSE(b.strictly_increasing);
  CHECK(b.hal_violations.empty());
  CHECK(b.hal_applicable > 0);

  const HeightCorollaryReport c = height_corollaries(scalar_spec(1), 12, 12);
  CHECK(c.skipped);
}

TEST_CASE("height corollaries hold on random specs") {
  std::mt19937_64 rng(73);
  testkit::SpecRequest req;
  req.crystallographic = false;
  req.finite_through = 40;
  for (int trial = 0; trial < 25; ++trial) {
    const auto s = testkit::random_spec(rng, req);
    const auto d = decomposition(s.spec);
    const Trichotomy t = classify_trichotomy(d);
    const HeightCorollaryReport r = height_corollaries(s.spec, 24, 40, &t);
    CHECK_MESSAGE(r.ok(), s.name);
    const DensityReport dens = density_estimates(reidemeister_sequence(s.spec, 24), t, d, 24);
    CHECK(dens.DA_le_DH);
  }
}

TEST_CASE("essential_orbit_bounds examples") {
  const auto two = scalar_spec(2);
  const EssentialOrbitReport a = essential_orbit_bounds(decomposition(two), window(two, 24));
  CHECK(a.a_applicable);
  CHECK(a.a_witness == 1);
  CHECK(a.ok());

  const EssentialOrbitReport z = essential_orbit_bounds(SpectralDecomposition{}, std::vector<Integer>(8, Integer(0)));
  CHECK_FALSE(z.a_applicable);
  CHECK_FALSE(z.c_applicable);

  const auto torus = corpus_spec("torus_fib");
  const EssentialOrbitReport t = essential_orbit_bounds(decomposition(torus), window(torus, 24));
  CHECK(t.c_applicable);
  CHECK(t.gamma >= 0.3L);
  CHECK(t.ok());
}

TEST_CASE("lambda of an iterate is the power of lambda") {
  std::mt19937_64 rng(74);
  testkit::SpecRequest req;
  req.finite_through = 74;
  for (int trial = 0; trial < 12; ++trial) {
    const auto s = testkit::random_spec(rng, req);
    const long double lambda = decomposition(s.spec).lambda;
    for (unsigned m = 2; m <= 3; ++m) {
      const EndoSpec p = power_spec(s.spec, m);
      REQUIRE(validate_spec(p).ok());
      const long double lm = decomposition(p).lambda;
      CHECK_MESSAGE(std::abs(lm - std::pow(lambda, static_cast<long double>(m))) <= 1e-9L * std::max<long double>(1, lm), s.name);
    }
  }
}

TEST_CASE("orbit counts respect the linear lower bound") {
  for (const char* name : {"torus_fib", "klein_2_3", "z_d2", "z_dm3"}) {
    const auto s = corpus_spec(name);
    const auto seq = window(s, 24);
    const auto d = decomposition(s, 30);
    ClassOracle oracle(s);
    const std::uint64_t kmax = std::string(name) == "klein_2_3" ? 6 : 12;
    const OrbitBoundReport r = orbit_lower_bound(oracle, d, seq, kmax);
    CHECK(r.applicable);
    CHECK_MESSAGE(r.holds(), name);
    // #O([phi], k) = sum_{m <= k} I_m / m
    Integer expected = 0;
    for (std::uint64_t k = 1; k <= kmax; ++k) {
      expected += reidemeister_sequence(s, k).multiplicity(k)->dold / k;
      CHECK(Integer(r.orbit_counts[k - 1]) == expected);
    }
  }
  // levels beyond a small cap fall back to I_k / k and are listed
  const auto torus = corpus_spec("torus_fib");
  ClassOracle capped(torus, 200);
  const OrbitBoundReport c = orbit_lower_bound(capped, decomposition(torus, 30), window(torus, 24), 8);
  ClassOracle full(torus);
  const OrbitBoundReport f = orbit_lower_bound(full, decomposition(torus, 30), window(torus, 24), 8);
  CHECK(c.orbit_counts == f.orbit_counts);
  CHECK(f.derived_levels.empty());
  CHECK(c.derived_levels == std::vector<std::uint64_t>{6, 7, 8});  // coset counts 121 then 320

  ClassOracle constant(scalar_spec(0));
  CHECK_FALSE(orbit_lower_bound(constant, decomposition(scalar_spec(0)), window(scalar_spec(0), 24), 4).applicable);
}

TEST_CASE("asymptotic_report aggregates") {
  const auto torus = corpus_spec("torus_fib");
  const SpectrumSeq seq = reidemeister_sequence(torus, 24);
  const AsymptoticReport r = asymptotic_report(torus, seq, decomposition(torus), 50);
  CHECK(r.alpha2 == 3);
  CHECK(std::abs(r.R_infinity - (3 + std::sqrt(5.0L)) / 2) < 1e-15L);
  REQUIRE(r.entropy_bound);
  CHECK(std::abs(*r.entropy_bound - std::log((3 + std::sqrt(5.0L)) / 2)) < 1e-15L);
  CHECK(r.entropy_bound_applicable);
  CHECK(r.heights.ok());
}
