#include "tspec/spectrum.hpp"

#include "tspec/classes.hpp"
#include "tspec/errors.hpp"
#include "tspec/exactla.hpp"
#include "tspec/parallel.hpp"

#include <deque>
#include <functional>
#include <sstream>

namespace tspec {

namespace {

Rational frac(const Rational& q) { return q - Rational(floor_div(numerator(q), denominator(q))); }

RatVector frac(const RatVector& v) {
  RatVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = frac(v(i));
  return out;
}

bool is_integral(const RatVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!tspec::is_integral(v(i))) return false;
  return true;
}

std::string label(std::size_t i) { return "holonomy[" + std::to_string(i) + "]"; }

// Group axioms on the holonomy list; fills the multiplication table on success.
bool check_group(const EndoSpec& spec, ValidationReport& r, std::vector<std::vector<long>>& table) {
  const std::size_t m = spec.order();
  if (m == 0) {
    r.errors.push_back("holonomy is empty; it must contain at least the identity");
    return false;
  }
  bool shapes_ok = true;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = spec.holonomy[i];
    if (a.rows() != spec.n || a.cols() != spec.n) {
      r.errors.push_back(label(i) + " is not " + std::to_string(spec.n) + "x" + std::to_string(spec.n));
      shapes_ok = false;
    } else if (abs(determinant(a)) != 1) {
      r.errors.push_back(label(i) + " is not invertible over the integers");
      shapes_ok = false;
    }
  }
  if (!shapes_ok) return false;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (spec.holonomy[i] == spec.holonomy[j]) r.errors.push_back(label(j) + " duplicates " + label(i));
  if (holonomy_index(spec, IntMatrix::Identity(spec.n, spec.n)) < 0)
    r.errors.push_back("holonomy does not contain the identity");

  table.assign(m, std::vector<long>(m, -1));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      table[i][j] = holonomy_index(spec, spec.holonomy[i] * spec.holonomy[j]);
      if (table[i][j] < 0)
        r.errors.push_back("holonomy is not closed: " + label(i) + " * " + label(j) + " is missing");
    }
  for (std::size_t i = 0; i < m; ++i)
    if (holonomy_index(spec, unimodular_inverse(spec.holonomy[i])) < 0)
      r.errors.push_back("holonomy is not closed under inverses: inverse of " + label(i) + " is missing");
  return r.errors.empty();
}

bool is_homomorphism(const std::vector<std::size_t>& h, const std::vector<std::vector<long>>& table) {
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = 0; j < h.size(); ++j)
      if (static_cast<long>(h[static_cast<std::size_t>(table[i][j])]) != table[h[i]][h[j]]) return false;
  return true;
}

// Chooses A' for every A. The first candidate in list order is taken unless that
// fails to be multiplicative, in which case the lexicographically first
// multiplicative assignment is searched for.
void resolve_image(const EndoSpec& spec, const std::vector<std::vector<long>>& table, ValidationReport& r) {
  const std::size_t m = spec.order();
  const RatMatrix& D = spec.D;
  std::vector<std::vector<std::size_t>> candidates(m);
  for (std::size_t i = 0; i < m; ++i) {
    const RatMatrix da = D * to_rational(spec.holonomy[i]);
    for (std::size_t j = 0; j < m; ++j)
      if (to_rational(spec.holonomy[j]) * D == da) candidates[i].push_back(j);
  }

  if (spec.holonomy_map) {
    const auto& h = *spec.holonomy_map;
    if (h.size() != m) {
      r.errors.push_back("holonomy_map has " + std::to_string(h.size()) + " entries, expected " + std::to_string(m));
      return;
    }
    bool ok = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (h[i] >= m) {
        r.errors.push_back("holonomy_map[" + std::to_string(i) + "] is out of range");
        ok = false;
      } else if (std::find(candidates[i].begin(), candidates[i].end(), h[i]) == candidates[i].end()) {
        r.errors.push_back("holonomy_map sends " + label(i) + " to " + label(h[i]) + " but A'D != DA");
        ok = false;
      }
    }
    if (!ok) return;
    if (!is_homomorphism(h, table)) {
      r.errors.push_back("holonomy_map is not multiplicative");
      return;
    }
    r.holonomy_image = h;
    return;
  }

  for (std::size_t i = 0; i < m; ++i) {
    if (candidates[i].empty()) {
      r.errors.push_back("no holonomy element A' satisfies A'D = DA for " + label(i));
      return;
    }
    if (candidates[i].size() > 1)
      r.warnings.push_back(label(i) + " has " + std::to_string(candidates[i].size()) +
                           " admissible images; the first in list order is used");
  }
  std::vector<std::size_t> first(m);
  for (std::size_t i = 0; i < m; ++i) first[i] = candidates[i].front();
  if (is_homomorphism(first, table)) {
    r.holonomy_image = first;
    return;
  }
  std::vector<std::size_t> pick(m);
  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (i == m) return is_homomorphism(pick, table);
    for (std::size_t c : candidates[i]) {
      pick[i] = c;
      if (search(i + 1)) return true;
    }
    return false;
  };
  if (search(0)) {
    r.holonomy_image = pick;
    r.warnings.push_back("the first admissible images are not multiplicative; a multiplicative choice was substituted");
  } else {
    r.warnings.push_back("no multiplicative choice of holonomy images exists; explicit class enumeration is disabled");
    r.holonomy_image = first;
  }
}

// Translation classes s(A) mod Z^n reached from the generators, with consistency checks.
bool compute_cocycle(const EndoSpec& spec, const std::vector<std::vector<long>>& table, ValidationReport& r) {
  const std::size_t m = spec.order();
  const auto id = static_cast<std::size_t>(holonomy_index(spec, IntMatrix::Identity(spec.n, spec.n)));
  std::vector<std::optional<RatVector>> s(m);
  s[id] = RatVector::Zero(spec.n);

  std::vector<std::size_t> gens;
  for (std::size_t g = 0; g < spec.generators.size(); ++g) {
    const auto& gen = spec.generators[g];
    const std::string name = "generator[" + std::to_string(g) + "]";
    if (gen.translation.size() != spec.n || gen.linear.rows() != spec.n || gen.linear.cols() != spec.n) {
      r.errors.push_back(name + " has the wrong dimension");
      return false;
    }
    const long idx = holonomy_index(spec, gen.linear);
    if (idx < 0) {
      r.errors.push_back(name + " has a linear part outside the holonomy");
      return false;
    }
    gens.push_back(static_cast<std::size_t>(idx));
  }

  std::deque<std::size_t> queue{id};
  while (!queue.empty()) {
    const std::size_t a = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const auto& gen = spec.generators[g];
      const auto ga = static_cast<std::size_t>(table[gens[g]][a]);
      const RatVector t = frac(RatVector(gen.translation + to_rational(gen.linear) * *s[a]));
      if (!s[ga]) {
        s[ga] = t;
        queue.push_back(ga);
      } else if (*s[ga] != t) {
        r.errors.push_back("affine generators are inconsistent: two translation classes over " + label(ga) +
                           " (the translation subgroup would exceed the lattice)");
        return false;
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    if (!s[i]) {
      r.errors.push_back("affine generators do not generate the holonomy: " + label(i) + " is not reached");
      return false;
    }
  r.cocycle.clear();
  for (auto& v : s) r.cocycle.push_back(*v);
  return true;
}

}  // namespace

long holonomy_index(const EndoSpec& spec, const IntMatrix& m) {
  for (std::size_t i = 0; i < spec.holonomy.size(); ++i)
    if (spec.holonomy[i].rows() == m.rows() && spec.holonomy[i].cols() == m.cols() && spec.holonomy[i] == m)
      return static_cast<long>(i);
  return -1;
}

ValidationReport validate_spec(const EndoSpec& spec) {
  ValidationReport r;
  if (spec.n < 1) {
    r.errors.push_back("lattice rank must be positive");
    return r;
  }
  if (spec.D.rows() != spec.n || spec.D.cols() != spec.n)
    r.errors.push_back("D must be " + std::to_string(spec.n) + "x" + std::to_string(spec.n));
  if (spec.d.size() != spec.n) r.errors.push_back("d must have length " + std::to_string(spec.n));
  if (!r.errors.empty()) return r;

  std::vector<std::vector<long>> table;
  if (!check_group(spec, r, table)) return r;
  resolve_image(spec, table, r);
  if (!r.ok()) return r;
  const bool multiplicative = is_homomorphism(r.holonomy_image, table);

  const bool trivial = spec.order() == 1;
  if (spec.generators.empty() && !trivial) {
    r.classes_reason = "no affine generators given for a nontrivial holonomy";
    r.notes.push_back("affine data absent: the spectrum is available, explicit classes are not");
    return r;
  }
  if (!compute_cocycle(spec, table, r)) return r;

  // The endomorphism must send the lattice and each generator back into the group.
  const bool explicit_affine = !spec.generators.empty();
  if (!tspec::is_integral(spec.D)) {
    if (explicit_affine) r.errors.push_back("D does not map the lattice Z^n into itself");
    r.classes_reason = "D is not integral";
    return r;
  }
  const RatMatrix& D = spec.D;
  for (std::size_t g = 0; g < spec.generators.size(); ++g) {
    const auto& gen = spec.generators[g];
    const auto a = static_cast<std::size_t>(holonomy_index(spec, gen.linear));
    const std::size_t image = r.holonomy_image[a];
    const RatVector t = spec.d + D * gen.translation - to_rational(spec.holonomy[image]) * spec.d;
    if (!is_integral(RatVector(t - r.cocycle[image])))
      r.errors.push_back("the image of generator[" + std::to_string(g) + "] lies outside the group");
  }
  if (!r.ok()) return r;
  if (!multiplicative) {
    r.classes_reason = "holonomy images are not multiplicative";
    return r;
  }
  r.classes_supported = true;
  return r;
}

ValidationReport require_valid(const EndoSpec& spec) {
  ValidationReport r = validate_spec(spec);
  if (!r.ok()) {
    std::ostringstream msg;
    msg << "invalid spec:";
    for (const auto& e : r.errors) msg << "\n  - " << e;
    fail(ErrorKind::InvalidSpec, msg.str());
  }
  return r;
}

const ExtNat& SpectrumSeq::at(std::uint64_t k) const {
  if (k < 1 || k > kmax) fail(ErrorKind::Domain, "spectrum index " + std::to_string(k) + " outside 1.." + std::to_string(kmax));
  return values[k - 1];
}

bool SpectrumSeq::finite_through(std::uint64_t k) const {
  for (std::uint64_t i = 1; i <= k && i <= kmax; ++i)
    if (values[i - 1].is_infinite()) return false;
  return true;
}

ExtSequence SpectrumSeq::as_map() const {
  ExtSequence out;
  for (std::uint64_t k = 1; k <= kmax; ++k) out[k] = values[k - 1];
  return out;
}

std::vector<Integer> SpectrumSeq::finite_prefix(std::uint64_t count) const {
  std::vector<Integer> out;
  out.reserve(count);
  for (std::uint64_t k = 1; k <= count; ++k) {
    if (at(k).is_infinite()) fail(ErrorKind::InfiniteValue, "R(phi^" + std::to_string(k) + ") is infinite");
    out.push_back(at(k).value());
  }
  return out;
}

std::optional<Multiplicity> SpectrumSeq::multiplicity(std::uint64_t k) const {
  IntSequence finite;
  for (auto d : divisors(k)) {
    const ExtNat& v = at(d);
    if (v.is_infinite()) return std::nullopt;
    finite[d] = v.value();
  }
  return dold_and_algebraic(finite, k);
}

namespace {

struct LevelValue {
  ExtNat value;
  Rational essential;
};

LevelValue average_at(const std::vector<RatMatrix>& hol, const RatMatrix& power, std::uint64_t k) {
  const std::size_t m = hol.size();
  const RatMatrix id = RatMatrix::Identity(power.rows(), power.cols());
  std::vector<Rational> dets(m);
  parallel_for(m, [&](std::size_t i) { dets[i] = determinant(RatMatrix(id - hol[i] * power)); });
  Rational sum = 0;
  bool infinite = false;
  for (const auto& x : dets) {
    if (x == 0) infinite = true;
    sum += abs(x);
  }
  LevelValue out{ExtNat::infinite(), sum / Rational(Integer(m))};
  if (infinite) return out;
  if (!tspec::is_integral(out.essential))
    fail(ErrorKind::InvalidSpec, "averaging formula gives the non-integer " + out.essential.str() + " at k=" +
                                     std::to_string(k) + "; the spec is inconsistent");
  out.value = ExtNat(numerator(out.essential));
  return out;
}

std::vector<RatMatrix> rational_holonomy(const EndoSpec& spec) {
  std::vector<RatMatrix> hol;
  hol.reserve(spec.order());
  for (const auto& a : spec.holonomy) hol.push_back(to_rational(a));
  return hol;
}

}  // namespace

SpectrumSeq reidemeister_sequence(const EndoSpec& spec, std::uint64_t kmax) {
  require_valid(spec);
  const auto hol = rational_holonomy(spec);
  SpectrumSeq seq;
  seq.kmax = kmax;
  seq.values.reserve(kmax);
  seq.essential.reserve(kmax);
  RatMatrix power = RatMatrix::Identity(spec.n, spec.n);
  for (std::uint64_t k = 1; k <= kmax; ++k) {
    power = power * spec.D;
    LevelValue v = average_at(hol, power, k);
    seq.values.push_back(std::move(v.value));
    seq.essential.push_back(std::move(v.essential));
  }
  return seq;
}

ExtNat reidemeister_number(const EndoSpec& spec, std::uint64_t k) {
  if (k == 0) fail(ErrorKind::Domain, "reidemeister_number: k must be positive");
  require_valid(spec);
  return average_at(rational_holonomy(spec), mat_pow(spec.D, k), k).value;
}

ExtNat np_k(const EndoSpec& spec, std::uint64_t k) {
  const SpectrumSeq seq = reidemeister_sequence(spec, k);
  const auto mult = seq.multiplicity(k);
  if (!mult) fail(ErrorKind::InfiniteValue, "NP_" + std::to_string(k) + " needs finite R at every divisor of k");
  if (mult->dold < 0)
    fail(ErrorKind::InvalidSpec, "negative Dold multiplicity " + mult->dold.str() + " at k=" + std::to_string(k));
  return ExtNat(mult->dold);
}

NFValue nf_k(const EndoSpec& spec, std::uint64_t k) {
  const ValidationReport report = require_valid(spec);
  const SpectrumSeq seq = reidemeister_sequence(spec, k);
  for (auto d : divisors(k))
    if (seq.at(d).is_infinite())
      fail(ErrorKind::InfiniteValue, "NF_" + std::to_string(k) + " needs finite R at every divisor of k");

  NFValue out;
  if (report.classes_supported) {
    const ClassTable table = orbit_decomposition(spec, k);
    Integer total = 0;
    for (auto leader : table.orbit_leaders) total += table.depth[leader];
    out.value = ExtNat(total);
    out.from_orbits = true;
    out.note = "sum of orbit depths over the enumerated classes";
    return out;
  }
  Integer total = 0;
  for (auto d : divisors(k)) total += seq.multiplicity(d)->dold;
  out.value = ExtNat(total);
  out.note = "sum of NP_d over d | k (" + report.classes_reason + ")";
  return out;
}

HeightSet heights_from_sequence(const SpectrumSeq& seq) {
  HeightSet h;
  h.all_infinite = seq.kmax > 0;
  for (std::uint64_t k = 1; k <= seq.kmax; ++k) {
    const ExtNat& v = seq.at(k);
    if (v.is_finite()) h.all_infinite = false;
    if (v.is_infinite()) {
      // Without essential classes there is nothing to be irreducible.
      if (seq.essential[k - 1] == 0)
        h.inessential.push_back(k);
      else
        h.undetermined.push_back(k);
      continue;
    }
    const auto mult = seq.multiplicity(k);
    if (!mult)
      h.undetermined.push_back(k);
    else if (mult->dold != 0)
      h.heights.insert(k);
  }
  return h;
}

HeightSet heights_set(const EndoSpec& spec, std::uint64_t kmax) {
  return heights_from_sequence(reidemeister_sequence(spec, kmax));
}

}  // namespace tspec
