#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "random_specs.hpp"
#include "tspec/classes.hpp"

#include <random>

using namespace tspec;
using testkit::corpus_spec;
using testkit::scalar_spec;

namespace {

AffineElement elem(std::initializer_list<long> a, const IntMatrix& A) {
  AffineElement e;
  e.A = A;
  e.a = RatVector(static_cast<Eigen::Index>(a.size()));
  Eigen::Index i = 0;
  for (long x : a) e.a(i++) = x;
  return e;
}

IntMatrix id(int n) { return IntMatrix::Identity(n, n); }

std::vector<std::string> spectrum(const EndoSpec& s, std::uint64_t kmax) {
  std::vector<std::string> out;
  for (const auto& v : reidemeister_sequence(s, kmax).values) out.push_back(v.str());
  return out;
}

testkit::SpecRequest small_request(std::uint64_t k, std::uint64_t budget) {
  testkit::SpecRequest req;
  req.finite_through = k;
  req.budget_k = k;
  req.budget = budget;
  return req;
}

}  // namespace

TEST_CASE("endo_image examples") {
  CHECK(endo_image(scalar_spec(3), elem({0}, id(1))) == elem({0}, id(1)));
  CHECK(endo_image(scalar_spec(-2), elem({1}, id(1))) == elem({-2}, id(1)));
  CHECK(endo_image(corpus_spec("klein_2_3"), elem({1, 0}, id(2))) == elem({2, 0}, id(2)));
  // glide image: D (0, 1/2) = (0, 3/2) over the same reflection
  const auto klein = corpus_spec("klein_2_3");
  const AffineElement glide{klein.generators[0].translation, klein.generators[0].linear};
  const AffineElement image = endo_image(klein, glide);
  CHECK(image.A == glide.A);
  CHECK(image.a(1) == Rational(3, 2));
}

TEST_CASE("enumerate_classes examples") {
  const auto minus_two = scalar_spec(-2);
  const ClassTable k1 = enumerate_classes(minus_two, 1);
  REQUIRE(k1.size() == 3);
  for (long i = 0; i < 3; ++i) CHECK(k1.representative(static_cast<std::size_t>(i)) == elem({i}, id(1)));
  CHECK(enumerate_classes(minus_two, 2).size() == 3);
  CHECK(enumerate_classes(corpus_spec("torus_fib"), 2).size() == 5);
  CHECK(enumerate_classes(corpus_spec("klein_2_3"), 3).size() == 208);
  CHECK_THROWS_AS(enumerate_classes(scalar_spec(1), 1), Error);
}

TEST_CASE("boost examples") {
  const auto s = scalar_spec(-2);
  ClassOracle oracle(s);
  for (long n = 0; n < 3; ++n) {
    const ReidClass c = oracle.canonical(elem({n}, id(1)), 1);
    CHECK(oracle.boost(c, 2).index == oracle.canonical(elem({-n}, id(1)), 2).index);
    CHECK(oracle.boost(c, 1).index == c.index);
  }
  const ReidClass one = oracle.canonical(elem({1}, id(1)), 1);
  CHECK(oracle.boost(one, 3).rep == elem({3}, id(1)));
  CHECK_THROWS_AS(oracle.boost(oracle.canonical(elem({1}, id(1)), 2), 3), Error);
  // free-function form
  CHECK(tspec::boost(s, one, 3).rep == elem({3}, id(1)));
}

TEST_CASE("phi_action examples") {
  const auto s = scalar_spec(-2);
  ClassOracle oracle(s);
  const ReidClass one = oracle.canonical(elem({1}, id(1)), 1);
  CHECK(oracle.phi_action(one).index == one.index);
  CHECK(phi_action(s, one).rep == elem({1}, id(1)));

  const auto zero = scalar_spec(0);
  const ClassTable t = enumerate_classes(zero, 1);
  REQUIRE(t.size() == 1);
  CHECK(phi_action(zero, t.klass(0)).index == 0);

  ClassOracle torus(corpus_spec("torus_fib"));
  const ClassTable& k2 = torus.classes(2);
  for (std::size_t i = 0; i < k2.size(); ++i) {
    const ReidClass c = k2.klass(i);
    CHECK(torus.phi_action(torus.phi_action(c)).index == c.index);
  }
}

TEST_CASE("orbit_decomposition examples") {
  const auto s = scalar_spec(-2);
  const ClassTable k2 = orbit_decomposition(s, 2);
  REQUIRE(k2.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(k2.depth[i] == 1);
  CHECK(k2.height_count() == 0);

  const ClassTable k3 = orbit_decomposition(s, 3);
  CHECK(k3.size() == 9);
  CHECK(k3.height_count() == 6);

  const ClassTable k1 = orbit_decomposition(corpus_spec("torus_fib"), 1);
  for (std::size_t i = 0; i < k1.size(); ++i) {
    CHECK(k1.depth[i] == 1);
    CHECK(k1.is_height(i));
  }
}

TEST_CASE("conjugate_endo examples") {
  const auto two = scalar_spec(2);
  const EndoSpec same = conjugate_endo(two, elem({0}, id(1)));
  CHECK(same.D == two.D);
  CHECK(same.d == two.d);
  CHECK(spectrum(conjugate_endo(two, elem({1}, id(1))), 10) == spectrum(two, 10));

  const auto klein = corpus_spec("klein_2_3");
  const EndoSpec tau = conjugate_endo(klein, elem({0, 1}, id(2)));
  CHECK(heights_set(tau, 10).heights == heights_set(klein, 10).heights);
  CHECK(spectrum(tau, 10) == spectrum(klein, 10));
  CHECK_THROWS_AS(conjugate_endo(klein, elem({0, 0}, klein.holonomy[1])), Error);  // (0, A) is not in the group
}

TEST_CASE("oracle counts and heights agree with the averaging formula") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 25; ++trial) {
    const auto s = testkit::random_spec(rng, small_request(12, 30000));
    const auto seq = reidemeister_sequence(s.spec, 12);
    ClassOracle oracle(s.spec);
    for (std::uint64_t k = 1; k <= 12; ++k) {
      const ClassTable& t = oracle.orbits(k);
      CHECK_MESSAGE(seq.at(k) == ExtNat(Integer(t.size())), s.name << " k=" << k);
      CHECK_MESSAGE(Integer(t.height_count()) == seq.multiplicity(k)->dold, s.name << " k=" << k);
    }
  }
}

TEST_CASE("orbit structure invariants") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 15; ++trial) {
    const auto s = testkit::random_spec(rng, small_request(8, 20000));
    ClassOracle oracle(s.spec);
    for (std::uint64_t k = 1; k <= 8; ++k) {
      const ClassTable& t = oracle.orbits(k);
      std::size_t total = 0;
      for (auto leader : t.orbit_leaders) total += t.length[leader];
      CHECK(total == t.size());
      for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(k % t.length[i] == 0);
        CHECK(t.depth[i] == t.length[i]);
        if (t.is_height(i)) CHECK(t.length[i] == k);
      }
      // R(phi^k) = sum over d | k of #IR(phi^d)
      std::size_t irreducible = 0;
      for (auto d : divisors(k)) irreducible += oracle.orbits(d).height_count();
      CHECK(irreducible == t.size());
    }
  }
}

TEST_CASE("boosting commutes with the phi action") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = testkit::random_spec(rng, small_request(6, 5000));
    ClassOracle oracle(s.spec);
    for (std::uint64_t m : {1ULL, 2ULL, 3ULL})
      for (std::uint64_t n : {m, 2 * m}) {
        const ClassTable& t = oracle.classes(m);
        for (std::size_t i = 0; i < t.size() && i < 40; ++i) {
          const ReidClass c = t.klass(i);
          CHECK(oracle.phi_action(oracle.boost(c, n)).index == oracle.boost(oracle.phi_action(c), n).index);
        }
      }
  }
}

TEST_CASE("conjugated endomorphisms share spectra and heights") {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 15; ++trial) {
    const auto s = testkit::random_spec(rng, small_request(8, 1000000));
    const AffineElement beta = testkit::random_element(rng, s.spec);
    const EndoSpec tau = conjugate_endo(s.spec, beta);
    CHECK(validate_spec(tau).classes_supported);
    CHECK(spectrum(tau, 8) == spectrum(s.spec, 8));
    CHECK(heights_set(tau, 8).heights == heights_set(s.spec, 8).heights);
    ClassOracle a(s.spec), b(tau);
    for (std::uint64_t k = 1; k <= 4; ++k) CHECK(a.classes(k).size() == b.classes(k).size());
  }
}

TEST_CASE("enumeration cap is a capability error") {
  ClassOracle oracle(scalar_spec(3), 100);
  CHECK(oracle.classes(4).size() == 80);
  try {
    oracle.classes(5);
    FAIL("expected capability error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Capability);
  }
}
