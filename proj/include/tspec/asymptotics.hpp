#pragma once

#include "tspec/classes.hpp"
#include "tspec/zeta.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tspec {

enum class AsymptoticCase { TrivialZeta, Periodic, IntervalDense };

std::string to_string(AsymptoticCase c);

struct Trichotomy {
  AsymptoticCase kind = AsymptoticCase::TrivialZeta;
  std::uint64_t q = 0;                       // period of the dominant part (Periodic only)
  std::vector<long double> profile;          // dominant part at k = 1..q
  std::vector<long double> turns;            // dominant angles as fractions of a turn, in [0, 1)
  std::vector<std::pair<long, long>> fractions;  // their rational forms (Periodic only)
  /// "exact" for the trivial zeta function, "certified-numeric" when the profile matched
  /// R(phi^k)/lambda^k on 3q consecutive terms, "heuristic" for the interval-dense
  /// verdict, "heuristic-unresolved" when the verification failed.
  std::string confidence;
  std::uint64_t verified_from = 0;  // first k of the verification run
  long double max_deviation = 0;
};

/// Sum of rho_i (lambda_i / lambda)^k over the roots of modulus lambda.
long double dominant_part(const SpectralDecomposition& decomp, std::uint64_t k);

inline constexpr long kAngleDenominatorCap = 720;

Trichotomy classify_trichotomy(const SpectralDecomposition& decomp);

struct LimsupCheck {
  long double window_max = 0;    // max of R(phi^k)/lambda^k over the second half of the window
  long double dominant_max = 0;  // max of |dominant part| over the same k
  long double gap = 0;
  bool agrees = false;           // gap <= 1e-6
};

/// Compares the late-window maximum of R(phi^k)/lambda^k with the dominant-part maximum.
LimsupCheck limsup_check(const SpectralDecomposition& decomp, const std::vector<Integer>& seq);

/// Minimal R2-period: the multiplicative order of z modulo the minimal polynomial of
/// the mod-2 sequence over F_2. WindowExhausted when the window is shorter than
/// 3 * recurrence_degree (or 3 * the mod-2 linear complexity); OracleMismatch if the
/// period is even or the mod-2 sequence is not purely periodic.
std::uint64_t r2_period(const std::vector<Integer>& seq, std::optional<std::size_t> recurrence_degree = std::nullopt);

enum class ParityVerdict { Inapplicable, Holds, Violated };
std::string to_string(ParityVerdict v);

struct ParityReport {
  std::uint64_t k = 0;
  std::uint64_t alpha2 = 0;
  ParityVerdict verdict = ParityVerdict::Inapplicable;
  std::string reason;
  Integer irreducible{0};  // #IR(phi^k) = I_k
};

/// Parity of #IR(phi^k)/k for odd k > 1 when alpha2^2 | k or some prime p | k has
/// p = 2^i mod alpha2. Domain error for even k; InfiniteValue if a divisor level is infinite.
ParityReport parity_check(const SpectrumSeq& seq, std::uint64_t alpha2, std::uint64_t k);
ParityReport parity_check(const EndoSpec& spec, std::uint64_t k, std::size_t guard = 10);

struct DensityReport {
  std::uint64_t kmax = 0;
  Rational DA{0};  // #(A cap [1,kmax]) / kmax
  Rational DH{0};  // #(H cap [1,kmax]) / kmax
  Rational DA_lower{0};  // theoretical lower bound for the lower density of A
  std::string bound_reason;
  bool DA_le_DH = true;
};

DensityReport density_estimates(const SpectrumSeq& seq, const Trichotomy& trichotomy,
                                const SpectralDecomposition& decomp, std::uint64_t kmax);

struct ProgressionWitness {
  std::uint64_t q = 0;
  std::uint64_t m = 0;  // least m <= q with nonzero dominant part
  std::vector<std::uint64_t> primes;       // first primes p = 1 mod q with I_p(phi^m) != 0
  std::vector<std::uint64_t> heights;      // m0 * p in H(phi) with m0 | m, one per prime
  std::vector<std::uint64_t> unverified;   // primes in the progression where no witness was found
};

struct HeightCorollaryReport {
  bool skipped = false;
  std::string reason;
  std::uint64_t horizon = 0;
  bool strictly_increasing = false;
  std::vector<std::uint64_t> primes_checked, primes_missing;
  std::uint64_t N = 0;  // I_k > 0 for every k in (N, horizon]
  std::vector<std::uint64_t> prime_powers_checked, prime_powers_missing;
  std::size_t hal_applicable = 0;
  std::vector<std::uint64_t> hal_violations;
  std::optional<ProgressionWitness> progression;

  bool ok() const {
    return primes_missing.empty() && prime_powers_missing.empty() && hal_violations.empty() &&
           (!progression || progression->unverified.empty());
  }
};

/// Finite-horizon checks of the height corollaries on the window [1, max(kmax, prime_horizon)].
/// The progression witness is produced when `trichotomy` is Periodic with lambda >= 1.
HeightCorollaryReport height_corollaries(const EndoSpec& spec, std::uint64_t kmax, std::uint64_t prime_horizon,
                                         const Trichotomy* trichotomy = nullptr);

struct EssentialOrbitReport {
  bool a_applicable = false, a_holds = true;
  std::uint64_t a_witness = 0;
  bool b_applicable = false, b_holds = true;
  std::uint64_t b_witness = 0;
  bool c_applicable = false, c_holds = true;
  long double gamma = 0;
  std::uint64_t N = 0;
  std::size_t flagged = 0;
  std::vector<std::uint64_t> flagged_failures;
  bool ok() const { return a_holds && b_holds && c_holds; }
};

EssentialOrbitReport essential_orbit_bounds(const SpectralDecomposition& decomp, const std::vector<Integer>& seq);

/// Least N0 such that every run of n(phi) consecutive indices >= N0 inside the window
/// contains some k with I_k != 0.
std::uint64_t empirical_n0(const SpectralDecomposition& decomp, const std::vector<Integer>& seq);

struct OrbitBoundReport {
  bool applicable = false;
  std::string reason;
  std::uint64_t N0 = 0;
  int r_phi = 0;
  std::vector<std::uint64_t> orbit_counts;  // #O([phi], k) for k = 1..kmax
  std::vector<std::uint64_t> derived_levels;  // above the enumeration cap, counted as I_k / k
  std::vector<std::uint64_t> failures;
  bool holds() const { return failures.empty(); }
};

/// #O([phi], k) >= (k - N0) / r(phi) for N0 <= k <= kmax, orbit counts from the class oracle
/// wherever its enumeration cap allows.
OrbitBoundReport orbit_lower_bound(ClassOracle& oracle, const SpectralDecomposition& decomp,
                                   const std::vector<Integer>& seq, std::uint64_t kmax);

struct AsymptoticReport {
  Trichotomy trichotomy;
  std::uint64_t alpha2 = 1;
  DensityReport density;
  std::optional<long double> entropy_bound;  // log lambda when lambda > 0
  bool entropy_bound_applicable = false;     // 1 is not an eigenvalue of D
  long double R_infinity = 1;                // max(1, lambda)
  HeightCorollaryReport heights;
  LimsupCheck limsup;
};

AsymptoticReport asymptotic_report(const EndoSpec& spec, const SpectrumSeq& seq, const SpectralDecomposition& decomp,
                                   std::uint64_t prime_horizon);

}  // namespace tspec
