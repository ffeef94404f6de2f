#pragma once

#include "tspec/numth.hpp"
#include "tspec/scalar.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tspec {

/// An affine map x -> linear * x + translation, used as a group generator.
struct AffineGenerator {
  RatVector translation;
  IntMatrix linear;
};

/// A group presented by the lattice Z^n, a finite holonomy group of linear parts
/// and (optionally) affine generators, together with the affine linearization
/// (d, D) of an endomorphism.
struct EndoSpec {
  int n = 0;
  std::vector<IntMatrix> holonomy;
  std::vector<AffineGenerator> generators;
  RatMatrix D;
  RatVector d;
  /// holonomy_map[i] = j means holonomy[j] * D == D * holonomy[i].
  std::optional<std::vector<std::size_t>> holonomy_map;

  std::size_t order() const { return holonomy.size(); }
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;

  /// Resolved holonomy image A -> A' (indices), empty when unresolvable.
  std::vector<std::size_t> holonomy_image;
  /// Translation class s(A) in [0,1)^n of the elements with linear part A,
  /// present when affine data is available and consistent.
  std::vector<RatVector> cocycle;
  /// Explicit class enumeration is possible (crystallographic presentation,
  /// integral D, generator images inside the group).
  bool classes_supported = false;
  std::string classes_reason;

  bool ok() const { return errors.empty(); }
};

ValidationReport validate_spec(const EndoSpec& spec);

/// Throws InvalidSpec listing every validation error.
ValidationReport require_valid(const EndoSpec& spec);

/// Index of m in the holonomy list, or -1.
long holonomy_index(const EndoSpec& spec, const IntMatrix& m);

/// R(phi^k) for k = 1..kmax together with the averaged |det| that counts
/// essential classes when some determinant vanishes.
struct SpectrumSeq {
  std::uint64_t kmax = 0;
  std::vector<ExtNat> values;      // R(phi^k) at index k-1
  std::vector<Rational> essential;  // (1/#Phi) sum |det(I - A D^k)|

  const ExtNat& at(std::uint64_t k) const;
  bool finite_through(std::uint64_t k) const;
  bool all_finite() const { return finite_through(kmax); }
  ExtSequence as_map() const;
  /// Integer values for k = 1..count; InfiniteValue error if one is infinite.
  std::vector<Integer> finite_prefix(std::uint64_t count) const;
  /// I_k and A_k, or nullopt when some divisor value is infinite.
  std::optional<Multiplicity> multiplicity(std::uint64_t k) const;
};

/// Averaging formula R(phi^k) = (1/#Phi) sum_A sigma(det(I - A D^k)), sigma(0) = inf.
SpectrumSeq reidemeister_sequence(const EndoSpec& spec, std::uint64_t kmax);

/// R(phi^k) at a single iterate, with D^k by binary powering.
ExtNat reidemeister_number(const EndoSpec& spec, std::uint64_t k);

/// NP_k = I_k; InfiniteValue error if some divisor level is infinite.
ExtNat np_k(const EndoSpec& spec, std::uint64_t k);

struct NFValue {
  ExtNat value;
  bool from_orbits = false;
  std::string note;
};

/// NF_k as the sum of orbit depths over R[phi^k] when classes can be enumerated,
/// otherwise from sum_{d|k} NP_d.
NFValue nf_k(const EndoSpec& spec, std::uint64_t k);

struct HeightSet {
  std::set<std::uint64_t> heights;
  /// Levels where the answer depends on infinitely many classes.
  std::vector<std::uint64_t> undetermined;
  /// Levels with R infinite but no essential class, hence no heights.
  std::vector<std::uint64_t> inessential;
  bool all_infinite = false;

  bool complete() const { return undetermined.empty(); }
};

HeightSet heights_from_sequence(const SpectrumSeq& seq);
HeightSet heights_set(const EndoSpec& spec, std::uint64_t kmax);

}  // namespace tspec
