#include "tspec/asymptotics.hpp"

#include "tspec/exactla.hpp"
#include "tspec/factor.hpp"
#include "tspec/numth.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

namespace tspec {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

struct DominantRoot {
  long double turn;  // angle / 2pi in [0, 1)
  Integer rho;
};

std::vector<DominantRoot> dominant_roots(const SpectralDecomposition& d) {
  std::vector<DominantRoot> out;
  if (d.lambda <= 0) return out;
  const long double tol = std::max<long double>(1e-9L * d.lambda, 2 * d.lambda_radius);
  for (const auto& f : d.factors)
    for (const auto& r : f.roots)
      if (std::abs(r.modulus() - d.lambda) <= tol) {
        long double t = r.angle() / (2 * std::numbers::pi_v<long double>);
        if (t < 0) t += 1;
        if (t >= 1) t -= 1;
        out.push_back({t, f.rho});
      }
  return out;
}

/// R(phi^k) / lambda^k in 50-digit arithmetic, so large iterates do not overflow.
long double scaled(const Integer& value, long double lambda, std::uint64_t k) {
  const Wide ratio = Wide(value.str()) / pow(Wide(lambda), static_cast<long>(k));
  return ratio.convert_to<long double>();
}

/// R(phi^k) = sum_alpha rho_alpha p_k(v_alpha) for k = 1..count.
std::vector<Integer> values_through(const SpectralDecomposition& d, std::size_t count) {
  std::vector<Integer> out(count, Integer(0));
  for (const auto& f : d.factors) {
    const auto sums = power_sums(f.poly, count);
    for (std::size_t k = 0; k < count; ++k) out[k] += f.rho * sums[k];
  }
  return out;
}

std::vector<Integer> dold_window(const std::vector<Integer>& seq) {
  IntSequence m;
  for (std::size_t k = 0; k < seq.size(); ++k) m[k + 1] = seq[k];
  std::vector<Integer> out;
  for (std::uint64_t k = 1; k <= seq.size(); ++k) out.push_back(dold_and_algebraic(m, k).dold);
  return out;
}

// ---- arithmetic over F_2 and 64-bit factoring for multiplicative orders ----

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, g = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (g == 1) {
      x = f(x);
      y = f(f(y));
      g = std::gcd(x > y ? x - y : y - x, n);
    }
    if (g != n) return g;
  }
}

void factor_u64(std::uint64_t n, std::set<std::uint64_t>& primes) {
  if (n == 1) return;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL})
    if (n % p == 0) {
      primes.insert(p);
      while (n % p == 0) n /= p;
    }
  if (n == 1) return;
  if (is_prime(n)) {
    primes.insert(n);
    return;
  }
  const std::uint64_t d = pollard_rho(n);
  factor_u64(d, primes);
  factor_u64(n / d, primes);
}

modp::Poly z_power_mod(std::uint64_t e, const modp::Poly& f) {
  modp::Poly result{1}, base = modp::rem({0, 1}, f, 2);
  while (e) {
    if (e & 1U) result = modp::rem(modp::mul(result, base, 2), f, 2);
    e >>= 1U;
    if (e) base = modp::rem(modp::mul(base, base, 2), f, 2);
  }
  return result;
}

std::uint64_t order_of_z(const modp::Poly& f) {
  const std::size_t m = f.size() - 1;
  if (m > 63) fail(ErrorKind::Capability, "r2_period: irreducible factor of degree " + std::to_string(m) + " over F_2");
  std::uint64_t order = (std::uint64_t{1} << m) - 1;
  std::set<std::uint64_t> primes;
  factor_u64(order, primes);
  for (auto p : primes)
    while (order % p == 0 && z_power_mod(order / p, f) == modp::Poly{1}) order /= p;
  return order;
}

/// Connection polynomial of the shortest LFSR generating s (Berlekamp-Massey over F_2).
std::vector<std::uint8_t> berlekamp_massey_f2(const std::vector<std::uint8_t>& s, std::size_t& complexity) {
  std::vector<std::uint8_t> c{1}, b{1};
  std::size_t L = 0, m = 1;
  for (std::size_t n = 0; n < s.size(); ++n) {
    std::uint8_t d = s[n];
    for (std::size_t i = 1; i <= L && i < c.size(); ++i) d ^= static_cast<std::uint8_t>(c[i] & s[n - i]);
    if (d == 0) {
      ++m;
      continue;
    }
    std::vector<std::uint8_t> t = c;
    if (c.size() < b.size() + m) c.resize(b.size() + m, 0);
    for (std::size_t i = 0; i < b.size(); ++i) c[i + m] ^= b[i];
    if (2 * L <= n) {
      L = n + 1 - L;
      b = std::move(t);
      m = 1;
    } else {
      ++m;
    }
  }
  c.resize(L + 1, 0);
  complexity = L;
  return c;
}

}  // namespace

std::string to_string(AsymptoticCase c) {
  switch (c) {
    case AsymptoticCase::TrivialZeta: return "trivial-zeta";
    case AsymptoticCase::Periodic: return "periodic";
    case AsymptoticCase::IntervalDense: return "interval-dense";
  }
  return "?";
}

std::string to_string(ParityVerdict v) {
  switch (v) {
    case ParityVerdict::Inapplicable: return "inapplicable";
    case ParityVerdict::Holds: return "holds";
    case ParityVerdict::Violated: return "violated";
  }
  return "?";
}

long double dominant_part(const SpectralDecomposition& decomp, std::uint64_t k) {
  long double sum = 0;
  for (const auto& r : dominant_roots(decomp))
    sum += to_long_double(r.rho) * std::cos(2 * std::numbers::pi_v<long double> * std::fmod(r.turn * static_cast<long double>(k), 1.0L));
  return sum;
}

Trichotomy classify_trichotomy(const SpectralDecomposition& decomp) {
  Trichotomy t;
  if (decomp.lambda == 0) {
    t.kind = AsymptoticCase::TrivialZeta;
    t.confidence = "exact";
    return t;
  }
  const auto dom = dominant_roots(decomp);
  std::uint64_t q = 1;
  bool rational = true;
  for (const auto& r : dom) {
    t.turns.push_back(r.turn);
    bool found = false;
    for (long den = 1; den <= kAngleDenominatorCap && !found; ++den) {
      const long num = std::lround(r.turn * static_cast<long double>(den));
      if (std::abs(r.turn - static_cast<long double>(num) / static_cast<long double>(den)) <= 1e-12L) {
        t.fractions.emplace_back(num % den, den);
        q = std::lcm(q, static_cast<std::uint64_t>(den));
        found = true;
      }
    }
    rational = rational && found;
  }
  if (!rational) {
    t.kind = AsymptoticCase::IntervalDense;
    t.confidence = "heuristic";
    t.fractions.clear();
    return t;
  }
  t.kind = AsymptoticCase::Periodic;
  t.q = q;
  for (std::uint64_t k = 1; k <= q; ++k) t.profile.push_back(dominant_part(decomp, k));

  // Start verifying once the subdominant roots contribute less than 1e-8.
  long double sub = 0, weight = 0;
  const long double tol = std::max<long double>(1e-9L * decomp.lambda, 2 * decomp.lambda_radius);
  for (const auto& f : decomp.factors)
    for (const auto& r : f.roots)
      if (std::abs(r.modulus() - decomp.lambda) > tol) {
        sub = std::max(sub, r.modulus());
        weight += std::abs(to_long_double(f.rho));
      }
  std::uint64_t start = 1;
  if (sub > 0 && weight > 0) {
    const long double need = std::log(1e-8L / weight) / std::log(sub / decomp.lambda);
    start = static_cast<std::uint64_t>(std::max<long double>(1, std::ceil(need)));
  }
  constexpr std::uint64_t kVerificationHorizon = 4000;
  t.verified_from = start;
  if (start > kVerificationHorizon) {
    t.confidence = "heuristic-unresolved";
    return t;
  }
  const auto values = values_through(decomp, start + 3 * q);
  for (std::uint64_t k = start; k < start + 3 * q; ++k) {
    const long double dev = std::abs(scaled(values[k - 1], decomp.lambda, k) - t.profile[(k - 1) % q]);
    t.max_deviation = std::max(t.max_deviation, dev);
  }
  t.confidence = t.max_deviation <= 1e-6L ? "certified-numeric" : "heuristic-unresolved";
  return t;
}

LimsupCheck limsup_check(const SpectralDecomposition& decomp, const std::vector<Integer>& seq) {
  LimsupCheck c;
  if (decomp.lambda == 0) {
    c.agrees = true;
    return c;
  }
  c.window_max = -std::numeric_limits<long double>::infinity();
  // Early terms carry the subdominant roots; compare on the second half only.
  for (std::size_t k = seq.size() / 2 + 1; k <= seq.size(); ++k) {
    c.window_max = std::max(c.window_max, scaled(seq[k - 1], decomp.lambda, k));
    c.dominant_max = std::max(c.dominant_max, std::abs(dominant_part(decomp, k)));
  }
  c.gap = std::abs(c.window_max - c.dominant_max);
  c.agrees = c.gap <= 1e-6L;
  return c;
}

std::uint64_t r2_period(const std::vector<Integer>& seq, std::optional<std::size_t> recurrence_degree) {
  std::vector<std::uint8_t> s;
  for (const auto& x : seq) s.push_back(static_cast<std::uint8_t>(mod_floor(x, 2) == 1));
  std::size_t complexity = 0;
  const auto c = berlekamp_massey_f2(s, complexity);
  const std::size_t degree = recurrence_degree.value_or(complexity);
  if (s.size() < 3 * std::max(degree, complexity))
    fail(ErrorKind::WindowExhausted, "r2_period: window of " + std::to_string(s.size()) + " terms is shorter than 3 x " +
                                         std::to_string(std::max(degree, complexity)) + "; increase kmax");
  if (complexity == 0) return 1;
  if (c[complexity] == 0) fail(ErrorKind::OracleMismatch, "r2_period: mod-2 sequence is not purely periodic");
  // Reversed connection polynomial is the minimal polynomial g with g(0) = 1.
  modp::Poly g(complexity + 1);
  for (std::size_t i = 0; i <= complexity; ++i) g[i] = c[complexity - i];
  if (!modp::is_squarefree(g, 2))
    fail(ErrorKind::OracleMismatch, "r2_period: mod-2 minimal polynomial has a repeated factor, so the period is even");
  std::uint64_t period = 1;
  for (const auto& f : modp::factor_squarefree(g, 2)) period = std::lcm(period, order_of_z(f));
  for (std::size_t i = 0; i + period < s.size(); ++i)
    if (s[i] != s[i + period]) fail(ErrorKind::OracleMismatch, "r2_period: period does not hold on the window");
  if (period % 2 == 0) fail(ErrorKind::OracleMismatch, "r2_period: even period " + std::to_string(period));
  return period;
}

ParityReport parity_check(const SpectrumSeq& seq, std::uint64_t alpha2, std::uint64_t k) {
  if (k % 2 == 0) fail(ErrorKind::Domain, "parity_check: k = " + std::to_string(k) + " is even");
  if (k > seq.kmax) fail(ErrorKind::Domain, "parity_check: k beyond the spectrum window");
  const auto mult = seq.multiplicity(k);
  if (!mult) fail(ErrorKind::InfiniteValue, "parity_check: infinite R at a divisor of k = " + std::to_string(k));
  ParityReport r;
  r.k = k;
  r.alpha2 = alpha2;
  r.irreducible = mult->dold;
  if (k == 1) {
    r.reason = "k = 1 is excluded";
    return r;
  }
  bool applicable = k % (alpha2 * alpha2) == 0;
  if (applicable) r.reason = "alpha2^2 divides k";
  if (!applicable) {
    if (alpha2 > 10'000'000) fail(ErrorKind::Capability, "parity_check: alpha2 too large");
    std::set<std::uint64_t> powers;
    for (std::uint64_t x = 1 % alpha2; powers.insert(x).second;) x = 2 * x % alpha2;
    for (auto p : prime_factors(k))
      if (powers.count(p % alpha2)) {
        applicable = true;
        r.reason = "prime " + std::to_string(p) + " divides k and is a power of 2 mod alpha2";
        break;
      }
  }
  if (!applicable) {
    r.reason = "no qualifying divisor";
    return r;
  }
  const bool even = r.irreducible % k == 0 && (r.irreducible / k) % 2 == 0;
  r.verdict = even ? ParityVerdict::Holds : ParityVerdict::Violated;
  return r;
}

ParityReport parity_check(const EndoSpec& spec, std::uint64_t k, std::size_t guard) {
  if (k % 2 == 0) fail(ErrorKind::Domain, "parity_check: k = " + std::to_string(k) + " is even");
  const std::size_t bound = default_degree_bound(spec);
  const std::uint64_t window = std::max<std::uint64_t>({k, 2 * bound + guard, 3 * bound});
  const SpectrumSeq seq = reidemeister_sequence(spec, window);
  const auto prefix = seq.finite_prefix(window);
  const IntPoly v = find_min_recurrence(prefix, guard, bound);
  return parity_check(seq, r2_period(prefix, static_cast<std::size_t>(v.degree())), k);
}

DensityReport density_estimates(const SpectrumSeq& seq, const Trichotomy& trichotomy,
                                const SpectralDecomposition& decomp, std::uint64_t kmax) {
  DensityReport r;
  r.kmax = kmax;
  if (kmax == 0) return r;
  const HeightSet h = heights_from_sequence(seq);
  long algebraic = 0, heights = 0;
  for (std::uint64_t k = 1; k <= kmax && k <= seq.kmax; ++k) {
    const auto m = seq.multiplicity(k);
    if (m && m->algebraic != 0) ++algebraic;
    if (h.heights.count(k)) ++heights;
  }
  r.DA = Rational(algebraic, static_cast<long>(kmax));
  r.DH = Rational(heights, static_cast<long>(kmax));
  r.DA_le_DH = r.DA <= r.DH;
  switch (trichotomy.kind) {
    case AsymptoticCase::TrivialZeta:
      r.DA_lower = 0;
      r.bound_reason = "lambda = 0";
      break;
    case AsymptoticCase::IntervalDense:
      r.DA_lower = 1;
      r.bound_reason = "interval-dense case";
      break;
    case AsymptoticCase::Periodic: {
      r.DA_lower = Rational(1, static_cast<long>(trichotomy.q));
      r.bound_reason = "1/q in the periodic case";
      if (decomp.lambda > 1 + 1e-9L && decomp.n_phi > 0 && Rational(1, decomp.n_phi) > r.DA_lower) {
        r.DA_lower = Rational(1, decomp.n_phi);
        r.bound_reason = "1/n(phi) since lambda > 1";
      }
      break;
    }
  }
  return r;
}

HeightCorollaryReport height_corollaries(const EndoSpec& spec, std::uint64_t kmax, std::uint64_t prime_horizon,
                                         const Trichotomy* trichotomy) {
  HeightCorollaryReport r;
  r.horizon = std::max(kmax, prime_horizon);
  const SpectrumSeq seq = reidemeister_sequence(spec, r.horizon);
  if (!seq.all_finite()) {
    r.skipped = true;
    r.reason = "infinite Reidemeister numbers on the window";
    return r;
  }
  const auto R = seq.finite_prefix(r.horizon);
  const auto I = dold_window(R);
  const auto H = heights_from_sequence(seq).heights;
  const std::uint64_t K = r.horizon;

  r.strictly_increasing = true;
  for (std::size_t k = 1; k < R.size(); ++k) r.strictly_increasing = r.strictly_increasing && R[k] > R[k - 1];
  if (r.strictly_increasing) {
    for (std::uint64_t p = 2; p <= prime_horizon; ++p)
      if (is_prime(p)) {
        r.primes_checked.push_back(p);
        if (!H.count(p)) r.primes_missing.push_back(p);
      }
    for (std::uint64_t k = 1; k <= K; ++k)
      if (I[k - 1] <= 0) r.N = k;
    for (std::uint64_t p = r.N + 1; p * p <= K; ++p) {
      if (!is_prime(p)) continue;
      for (std::uint64_t q = p * p; q <= K; q *= p) {
        r.prime_powers_checked.push_back(q);
        if (!H.count(q)) r.prime_powers_missing.push_back(q);
      }
    }
  }

  for (std::uint64_t m = 1; m <= K; ++m) {
    Integer lower = 0;
    for (auto p : prime_factors(m)) lower += R[m / p - 1];
    if (lower < R[m - 1]) {
      ++r.hal_applicable;
      if (!H.count(m)) r.hal_violations.push_back(m);
    }
  }

  if (trichotomy && trichotomy->kind == AsymptoticCase::Periodic) {
    ProgressionWitness w;
    w.q = trichotomy->q;
    for (std::uint64_t m = 1; m <= w.q; ++m)
      if (std::abs(trichotomy->profile[m - 1]) > 1e-9L) {
        w.m = m;
        break;
      }
    if (w.m > 0) {
      std::map<std::uint64_t, Integer> cache;
      auto value = [&](std::uint64_t k) -> Integer {
        if (k <= K) return R[k - 1];
        auto it = cache.find(k);
        if (it == cache.end()) it = cache.emplace(k, reidemeister_number(spec, k).value()).first;
        return it->second;
      };
      auto dold = [&](std::uint64_t k) {
        Integer total = 0;
        for (auto d : divisors(k)) total += mobius(k / d) * value(d);
        return total;
      };
      constexpr std::uint64_t kLevelCap = 2000;
      for (auto p : primes_in_progression(1, w.q, 40)) {
        if (w.primes.size() >= 5 || w.m * p > kLevelCap) break;
        if (value(w.m * p) - value(w.m) == 0) continue;  // I_p(phi^m) = 0
        w.primes.push_back(p);
        std::uint64_t witness = 0;
        for (auto m0 : divisors(w.m))
          if (dold(m0 * p) != 0) {
            witness = m0 * p;
            break;
          }
        if (witness) w.heights.push_back(witness);
        else w.unverified.push_back(p);
      }
    }
    r.progression = w;
  }
  return r;
}

EssentialOrbitReport essential_orbit_bounds(const SpectralDecomposition& decomp, const std::vector<Integer>& seq) {
  EssentialOrbitReport r;
  const std::size_t L = seq.size();
  if (decomp.r_phi > 0) {
    const std::uint64_t M = decomp.M_phi.convert_to<std::uint64_t>();
    for (std::uint64_t i = 1; i <= std::min<std::uint64_t>(M, L) && !r.a_witness; ++i)
      if (seq[i - 1] != 0) r.a_witness = i;
    r.a_applicable = r.a_witness > 0 || M <= L;
    r.a_holds = r.a_witness > 0 || M > L;
  }
  if (decomp.rho_phi == 0 && decomp.r_phi >= 1) {
    r.b_applicable = true;
    for (std::uint64_t i = 1; i < static_cast<std::uint64_t>(decomp.r_phi) && i <= L && !r.b_witness; ++i)
      if (seq[i - 1] != 0) r.b_witness = i;
    r.b_holds = decomp.r_phi >= 2 && r.b_witness > 0;
  }
  if (decomp.lambda > 1 + 1e-9L && L > 0) {
    r.c_applicable = true;
    const std::size_t n = static_cast<std::size_t>(std::max(1, decomp.n_phi));
    std::vector<long double> x(L);
    for (std::size_t k = 1; k <= L; ++k) x[k - 1] = scaled(seq[k - 1], decomp.lambda, k);
    // gamma(N): least over m > N of the best ratio among m, ..., m + n - 1
    auto gamma_from = [&](std::size_t N) {
      long double g = std::numeric_limits<long double>::infinity();
      for (std::size_t m = N + 1; m + n - 1 <= L; ++m) {
        long double best = -std::numeric_limits<long double>::infinity();
        for (std::size_t l = 0; l < n; ++l) best = std::max(best, x[m + l - 1]);
        g = std::min(g, best);
      }
      return g;
    };
    const long double tail = gamma_from(L / 2);
    r.N = L / 2;
    r.gamma = tail;
    for (std::size_t N = 0; N <= L / 2; ++N) {
      const long double g = gamma_from(N);
      if (g >= tail / 2) {
        r.N = N;
        r.gamma = g;
        break;
      }
    }
    r.c_holds = r.gamma > 0;
    if (r.c_holds) {
      const auto I = dold_window(seq);
      for (std::size_t m = r.N + 1; m <= L; ++m) {
        if (x[m - 1] < r.gamma) continue;
        ++r.flagged;
        if (scaled(abs(I[m - 1]), decomp.lambda, m) < r.gamma / 2) r.flagged_failures.push_back(m);
      }
      r.c_holds = r.flagged_failures.empty();
    }
  }
  return r;
}

std::uint64_t empirical_n0(const SpectralDecomposition& decomp, const std::vector<Integer>& seq) {
  const std::size_t n = static_cast<std::size_t>(std::max(1, decomp.n_phi));
  const auto I = dold_window(seq);
  std::uint64_t n0 = 1;
  for (std::size_t s = 1; s + n - 1 <= I.size(); ++s) {
    bool hit = false;
    for (std::size_t l = 0; l < n; ++l) hit = hit || I[s + l - 1] != 0;
    if (!hit) n0 = s + 1;
  }
  return n0;
}

OrbitBoundReport orbit_lower_bound(ClassOracle& oracle, const SpectralDecomposition& decomp,
                                   const std::vector<Integer>& seq, std::uint64_t kmax) {
  OrbitBoundReport r;
  r.r_phi = decomp.r_phi;
  if (!(decomp.lambda > 1 + 1e-9L)) {
    r.reason = "bounded spectrum (lambda <= 1)";
    return r;
  }
  if (seq.size() < kmax) fail(ErrorKind::Domain, "orbit_lower_bound: spectrum window shorter than kmax");
  r.applicable = true;
  r.N0 = empirical_n0(decomp, seq);
  const auto I = dold_window(seq);
  std::uint64_t total = 0;
  for (std::uint64_t k = 1; k <= kmax; ++k) {
    if (oracle.coset_count(k) > Integer(oracle.coset_cap())) {
      // height-k classes fill orbits of length exactly k
      if (I[k - 1] % k != 0) fail(ErrorKind::OracleMismatch, "orbit_lower_bound: I_" + std::to_string(k) + " not divisible by k");
      total += static_cast<std::uint64_t>(I[k - 1] / k);
      r.derived_levels.push_back(k);
    } else {
      const ClassTable& t = oracle.orbits(k);
      if (Integer(t.height_count()) != I[k - 1])
        fail(ErrorKind::OracleMismatch, "orbit_lower_bound: height-" + std::to_string(k) + " classes differ from I_k");
      for (auto leader : t.orbit_leaders)
        if (t.is_height(leader)) ++total;
    }
    r.orbit_counts.push_back(total);
    if (k >= r.N0 && total * static_cast<std::uint64_t>(r.r_phi) < k - r.N0) r.failures.push_back(k);
  }
  return r;
}

AsymptoticReport asymptotic_report(const EndoSpec& spec, const SpectrumSeq& seq, const SpectralDecomposition& decomp,
                                   std::uint64_t prime_horizon) {
  AsymptoticReport r;
  const auto prefix = seq.finite_prefix(seq.kmax);
  r.trichotomy = classify_trichotomy(decomp);
  r.alpha2 = r2_period(prefix, static_cast<std::size_t>(std::max(0, decomp.recurrence.degree())));
  r.density = density_estimates(seq, r.trichotomy, decomp, seq.kmax);
  if (decomp.lambda > 0) r.entropy_bound = std::log(decomp.lambda);
  r.entropy_bound_applicable = charpoly(spec.D)(Rational(1)) != 0;
  r.R_infinity = std::max<long double>(1, decomp.lambda);
  r.heights = height_corollaries(spec, seq.kmax, prime_horizon, &r.trichotomy);
  r.limsup = limsup_check(decomp, prefix);
  return r;
}

}  // namespace tspec
