#pragma once

#include "tspec/spectrum.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace tspec {

/// x -> A x + a. Composition (a, A)(b, B) = (a + A b, A B).
struct AffineElement {
  RatVector a;
  IntMatrix A;

  bool operator==(const AffineElement& o) const { return A == o.A && a == o.a; }
};

/// A twisted conjugacy class of phi^k, carried by its canonical representative.
struct ReidClass {
  std::uint64_t k = 0;
  AffineElement rep;
  bool essential = true;
  std::size_t index = 0;  // position in the level-k class table
};

namespace detail {
struct Level;
}

/// The classes of phi^k. Classes are indexed 0..size()-1 in increasing order of
/// their canonical keys. The per-class annotations are filled by orbit_decomposition.
struct ClassTable {
  std::uint64_t k = 0;

  std::size_t size() const;
  AffineElement representative(std::size_t i) const;
  ReidClass klass(std::size_t i) const;

  std::vector<std::uint32_t> phi;            // [phi] as a permutation of class indices
  std::vector<std::uint32_t> orbit;          // orbit id per class
  std::vector<std::uint32_t> orbit_leaders;  // smallest class index of each orbit, ascending
  std::vector<std::uint32_t> length;         // orbit size
  std::vector<std::uint32_t> depth;          // least level the class boosts up from

  bool annotated() const { return !depth.empty(); }
  bool is_height(std::size_t i) const { return depth[i] == k; }
  std::size_t height_count() const;

  std::shared_ptr<const detail::Level> level;
};

/// Upper bound on lattice-level cosets (sum over holonomy of |det(I - A D^k)|)
/// materialized for one iterate.
inline constexpr std::uint64_t kDefaultCosetCap = std::uint64_t{1} << 25;

/// Explicit twisted-conjugacy computations for one crystallographic spec. Tables
/// are built on demand and cached per iterate.
class ClassOracle {
public:
  explicit ClassOracle(const EndoSpec& spec, std::uint64_t coset_cap = kDefaultCosetCap);
  ~ClassOracle();
  ClassOracle(const ClassOracle&) = delete;
  ClassOracle& operator=(const ClassOracle&) = delete;

  const EndoSpec& spec() const { return spec_; }
  const ValidationReport& validation() const { return report_; }
  std::uint64_t coset_cap() const { return cap_; }

  AffineElement identity() const;
  AffineElement compose(const AffineElement& x, const AffineElement& y) const;
  AffineElement inverse(const AffineElement& x) const;
  bool contains(const AffineElement& x) const;
  AffineElement endo_image(const AffineElement& x) const;
  AffineElement endo_power(AffineElement x, std::uint64_t k) const;

  /// Number of lattice-level cosets at iterate k (Capability error above the cap is
  /// raised only when a table is built).
  Integer coset_count(std::uint64_t k);

  const ClassTable& classes(std::uint64_t k);
  const ClassTable& orbits(std::uint64_t k);

  std::size_t index_of(const AffineElement& x, std::uint64_t k);
  ReidClass canonical(const AffineElement& x, std::uint64_t k);
  ReidClass phi_action(const ReidClass& c);
  ReidClass boost(const ReidClass& c, std::uint64_t n);

  void release(std::uint64_t k);

private:
  std::shared_ptr<detail::Level> build_level(std::uint64_t k);
  std::shared_ptr<const detail::Level> level(std::uint64_t k);
  std::size_t holonomy_of(const IntMatrix& m) const;
  const IntMatrix& d_power(std::uint64_t k);

  EndoSpec spec_;
  ValidationReport report_;
  std::uint64_t cap_;
  std::vector<IntMatrix> d_powers_;
  std::map<std::uint64_t, ClassTable> tables_;
};

AffineElement endo_image(const EndoSpec& spec, const AffineElement& alpha);

/// Every class of phi^k; OracleMismatch if the count differs from the averaging formula.
ClassTable enumerate_classes(const EndoSpec& spec, std::uint64_t k);

ReidClass boost(const EndoSpec& spec, const ReidClass& c, std::uint64_t n);
ReidClass phi_action(const EndoSpec& spec, const ReidClass& c);

/// Classes of phi^k annotated with [phi]-orbits, lengths, depths and height flags.
ClassTable orbit_decomposition(const EndoSpec& spec, std::uint64_t k);

/// The spec of tau_beta phi : x -> beta phi(x) beta^{-1}, linearized by beta (d, D).
EndoSpec conjugate_endo(const EndoSpec& spec, const AffineElement& beta);

}  // namespace tspec
