#include "tspec/classes.hpp"

#include "tspec/errors.hpp"
#include "tspec/exactla.hpp"
#include "tspec/numth.hpp"

#include <algorithm>
#include <numeric>

namespace tspec {

namespace detail {

// One holonomy fiber at a fixed iterate: lattice cosets x + (I - A D^k) Z^n are
// addressed by y = U x reduced into the box [0, mod_0) x ... x [0, mod_{n-1}).
struct Fiber {
  IntMatrix U, Uinv;
  std::vector<std::int64_t> mod;
  std::vector<std::uint64_t> stride;
  std::uint64_t offset = 0, size = 0;
};

// An affine map between box coordinates, already reduced row-wise modulo the target box.
struct CoordMap {
  std::size_t target = 0;
  std::vector<std::int64_t> M, v;
};

struct Level {
  std::uint64_t k = 0;
  int n = 0;
  std::vector<Fiber> fibers;
  std::uint64_t total = 0;
  std::vector<std::uint32_t> class_of;  // coset id -> class index
  std::vector<std::uint64_t> rep_id;    // class index -> least coset id
  std::vector<CoordMap> phi_maps;       // per source fiber
  std::vector<IntMatrix> holonomy;
  std::vector<RatVector> cocycle;

  std::size_t fiber_of(std::uint64_t id) const {
    std::size_t f = 0;
    while (f + 1 < fibers.size() && fibers[f + 1].offset <= id) ++f;
    return f;
  }

  void decode(std::uint64_t id, std::size_t& f, std::int64_t* y) const {
    f = fiber_of(id);
    std::uint64_t rest = id - fibers[f].offset;
    for (int r = 0; r < n; ++r) {
      const auto s = fibers[f].stride[static_cast<std::size_t>(r)];
      y[r] = static_cast<std::int64_t>(rest / s);
      rest %= s;
    }
  }

  std::uint64_t encode(std::size_t f, const std::int64_t* y) const {
    std::uint64_t id = fibers[f].offset;
    for (int r = 0; r < n; ++r) id += static_cast<std::uint64_t>(y[r]) * fibers[f].stride[static_cast<std::size_t>(r)];
    return id;
  }

  std::uint64_t apply(const CoordMap& m, const std::int64_t* y) const {
    const Fiber& t = fibers[m.target];
    std::uint64_t id = t.offset;
    for (int r = 0; r < n; ++r) {
      __int128 acc = m.v[static_cast<std::size_t>(r)];
      for (int c = 0; c < n; ++c) acc += static_cast<__int128>(m.M[static_cast<std::size_t>(r * n + c)]) * y[c];
      const std::int64_t md = t.mod[static_cast<std::size_t>(r)];
      auto yr = static_cast<std::int64_t>(acc % md);
      if (yr < 0) yr += md;
      id += static_cast<std::uint64_t>(yr) * t.stride[static_cast<std::size_t>(r)];
    }
    return id;
  }

  std::uint64_t id_of(std::size_t f, const IntVector& x) const {
    const IntVector y = fibers[f].U * x;
    std::uint64_t id = fibers[f].offset;
    for (int r = 0; r < n; ++r) {
      const auto i = static_cast<std::size_t>(r);
      id += mod_floor(y(r), Integer(fibers[f].mod[i])).convert_to<std::uint64_t>() * fibers[f].stride[i];
    }
    return id;
  }

  AffineElement element(std::uint64_t id) const {
    std::size_t f = 0;
    std::vector<std::int64_t> y(static_cast<std::size_t>(n));
    decode(id, f, y.data());
    IntVector yv(n);
    for (int r = 0; r < n; ++r) yv(r) = y[static_cast<std::size_t>(r)];
    const IntVector x = fibers[f].Uinv * yv;
    AffineElement e;
    e.A = holonomy[f];
    e.a = cocycle[f] + to_rational(IntMatrix(x));
    return e;
  }
};

}  // namespace detail

namespace {

using detail::CoordMap;
using detail::Level;

bool integral(const RatVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_integral(v(i))) return false;
  return true;
}

IntVector to_int(const RatVector& v) {
  IntVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = numerator(v(i));
  return out;
}

CoordMap make_map(const Level& lvl, std::size_t target, const IntMatrix& M, const IntVector& v) {
  CoordMap m;
  m.target = target;
  const int n = lvl.n;
  m.M.resize(static_cast<std::size_t>(n * n));
  m.v.resize(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    const Integer md(lvl.fibers[target].mod[static_cast<std::size_t>(r)]);
    for (int c = 0; c < n; ++c) m.M[static_cast<std::size_t>(r * n + c)] = mod_floor(M(r, c), md).convert_to<std::int64_t>();
    m.v[static_cast<std::size_t>(r)] = mod_floor(v(r), md).convert_to<std::int64_t>();
  }
  return m;
}

std::uint32_t find(std::vector<std::uint32_t>& parent, std::uint32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Links the larger root under the smaller one, so every root is the least id of
// its component and parent[x] < x for every non-root.
void unite(std::vector<std::uint32_t>& parent, std::uint32_t a, std::uint32_t b) {
  a = find(parent, a);
  b = find(parent, b);
  if (a == b) return;
  if (a < b) std::swap(a, b);
  parent[a] = b;
}

}  // namespace

std::size_t ClassTable::size() const { return level ? level->rep_id.size() : 0; }

AffineElement ClassTable::representative(std::size_t i) const { return level->element(level->rep_id.at(i)); }

ReidClass ClassTable::klass(std::size_t i) const {
  ReidClass c;
  c.k = k;
  c.rep = representative(i);
  c.index = i;
  return c;
}

std::size_t ClassTable::height_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < depth.size(); ++i)
    if (depth[i] == k) ++count;
  return count;
}

ClassOracle::ClassOracle(const EndoSpec& spec, std::uint64_t coset_cap)
    : spec_(spec), report_(require_valid(spec)), cap_(coset_cap) {
  if (!report_.classes_supported)
    fail(ErrorKind::Capability, "explicit classes are unavailable for this spec: " + report_.classes_reason);
  d_powers_.push_back(IntMatrix::Identity(spec.n, spec.n));
}

ClassOracle::~ClassOracle() = default;

std::size_t ClassOracle::holonomy_of(const IntMatrix& m) const {
  const long i = holonomy_index(spec_, m);
  if (i < 0) fail(ErrorKind::Domain, "linear part is not a holonomy element");
  return static_cast<std::size_t>(i);
}

const IntMatrix& ClassOracle::d_power(std::uint64_t k) {
  const IntMatrix D = to_integer(spec_.D);
  while (d_powers_.size() <= k) d_powers_.push_back(d_powers_.back() * D);
  return d_powers_[k];
}

AffineElement ClassOracle::identity() const { return {RatVector::Zero(spec_.n), IntMatrix::Identity(spec_.n, spec_.n)}; }

AffineElement ClassOracle::compose(const AffineElement& x, const AffineElement& y) const {
  return {RatVector(x.a + to_rational(x.A) * y.a), IntMatrix(x.A * y.A)};
}

AffineElement ClassOracle::inverse(const AffineElement& x) const {
  const IntMatrix inv = unimodular_inverse(x.A);
  return {RatVector(-(to_rational(inv) * x.a)), inv};
}

bool ClassOracle::contains(const AffineElement& x) const {
  if (x.a.size() != spec_.n) return false;
  const long i = holonomy_index(spec_, x.A);
  if (i < 0) return false;
  return integral(RatVector(x.a - report_.cocycle[static_cast<std::size_t>(i)]));
}

AffineElement ClassOracle::endo_image(const AffineElement& x) const {
  const std::size_t image = report_.holonomy_image[holonomy_of(x.A)];
  AffineElement out;
  out.A = spec_.holonomy[image];
  out.a = spec_.d + spec_.D * x.a - to_rational(out.A) * spec_.d;
  // phi(x) o (d, D) == (d, D) o x as affine maps
  const RatMatrix lhs_linear = to_rational(out.A) * spec_.D, rhs_linear = spec_.D * to_rational(x.A);
  const RatVector lhs_shift = out.a + to_rational(out.A) * spec_.d, rhs_shift = spec_.d + spec_.D * x.a;
  if (lhs_linear != rhs_linear || lhs_shift != rhs_shift)
    fail(ErrorKind::OracleMismatch, "endomorphism image does not intertwine with (d, D)");
  return out;
}

AffineElement ClassOracle::endo_power(AffineElement x, std::uint64_t k) const {
  for (std::uint64_t i = 0; i < k; ++i) x = endo_image(x);
  return x;
}

Integer ClassOracle::coset_count(std::uint64_t k) {
  const IntMatrix& Dk = d_power(k);
  Integer total = 0;
  for (const auto& A : spec_.holonomy) total += abs(determinant(IntMatrix(IntMatrix::Identity(spec_.n, spec_.n) - A * Dk)));
  return total;
}

std::shared_ptr<detail::Level> ClassOracle::build_level(std::uint64_t k) {
  const int n = spec_.n;
  const std::size_t m = spec_.order();
  auto lvl = std::make_shared<Level>();
  lvl->k = k;
  lvl->n = n;
  lvl->holonomy = spec_.holonomy;
  lvl->cocycle = report_.cocycle;

  const IntMatrix& Dk = d_power(k);
  const IntMatrix id = IntMatrix::Identity(n, n);
  Integer total = 0;
  lvl->fibers.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const SNFResult snf = smith_normal_form(IntMatrix(id - spec_.holonomy[i] * Dk));
    auto& f = lvl->fibers[i];
    Integer size = 1;
    for (const auto& di : snf.diagonal) {
      if (di == 0)
        fail(ErrorKind::InfiniteValue, "R(phi^" + std::to_string(k) + ") is infinite; classes cannot be enumerated");
      size *= di;
    }
    total += size;
    if (total > Integer(cap_))
      fail(ErrorKind::Capability, "iterate " + std::to_string(k) + " needs more than " + std::to_string(cap_) +
                                      " lattice cosets; raise the enumeration cap");
    f.U = snf.U;
    f.Uinv = unimodular_inverse(snf.U);
    for (const auto& di : snf.diagonal) f.mod.push_back(di.convert_to<std::int64_t>());
    f.stride.assign(static_cast<std::size_t>(n), 1);
    for (int r = n - 2; r >= 0; --r)
      f.stride[static_cast<std::size_t>(r)] =
          f.stride[static_cast<std::size_t>(r + 1)] * static_cast<std::uint64_t>(f.mod[static_cast<std::size_t>(r + 1)]);
    f.size = size.convert_to<std::uint64_t>();
  }
  std::uint64_t offset = 0;
  for (auto& f : lvl->fibers) {
    f.offset = offset;
    offset += f.size;
  }
  lvl->total = offset;

  const IntMatrix D = to_integer(spec_.D);
  const auto& s = report_.cocycle;
  auto translation_map = [&](std::size_t from, std::size_t to, const IntMatrix& linear, const RatVector& shift) {
    if (!integral(shift)) fail(ErrorKind::OracleMismatch, "affine action leaves the group");
    return make_map(*lvl, to, IntMatrix(lvl->fibers[to].U * linear * lvl->fibers[from].Uinv),
                    IntVector(lvl->fibers[to].U * to_int(shift)));
  };

  // [phi]: x -> D x + (d + D s_i - A_j d - s_j) from fiber i to fiber j = h(i).
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = report_.holonomy_image[i];
    const RatVector shift = spec_.d + spec_.D * s[i] - to_rational(spec_.holonomy[j]) * spec_.d - s[j];
    lvl->phi_maps.push_back(translation_map(i, j, D, shift));
  }

  // Twisted action of the lift g = (s_c, C) of each holonomy element:
  // x -> g x psi(g)^{-1} with psi = phi^k.
  std::vector<std::vector<CoordMap>> lifts;
  for (std::size_t c = 0; c < m; ++c) {
    if (spec_.holonomy[c] == id) continue;
    const AffineElement g{s[c], spec_.holonomy[c]};
    const AffineElement pg = inverse(endo_power(g, k));
    std::vector<CoordMap> maps;
    for (std::size_t i = 0; i < m; ++i) {
      const IntMatrix CA = spec_.holonomy[c] * spec_.holonomy[i];
      const std::size_t j = holonomy_of(IntMatrix(CA * pg.A));
      const RatVector shift = s[c] + to_rational(spec_.holonomy[c]) * s[i] + to_rational(CA) * pg.a - s[j];
      maps.push_back(translation_map(i, j, spec_.holonomy[c], shift));
    }
    lifts.push_back(std::move(maps));
  }

  std::vector<std::uint32_t> parent(lvl->total);
  std::iota(parent.begin(), parent.end(), 0U);
  std::vector<std::int64_t> y(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < m && !lifts.empty(); ++i) {
    const auto& f = lvl->fibers[i];
    std::fill(y.begin(), y.end(), 0);
    for (std::uint64_t t = 0; t < f.size; ++t) {
      const auto here = static_cast<std::uint32_t>(f.offset + t);
      for (const auto& maps : lifts) unite(parent, here, static_cast<std::uint32_t>(lvl->apply(maps[i], y.data())));
      for (int r = n - 1; r >= 0; --r) {  // odometer, last coordinate fastest
        const auto ri = static_cast<std::size_t>(r);
        if (++y[ri] < f.mod[ri]) break;
        y[ri] = 0;
      }
    }
  }
  // Roots are component minima and parent[x] < x elsewhere, so one ascending pass
  // can overwrite parents by class indices in place.
  for (std::uint64_t x = 0; x < lvl->total; ++x) {
    if (parent[x] == x) {
      parent[x] = static_cast<std::uint32_t>(lvl->rep_id.size());
      lvl->rep_id.push_back(x);
    } else {
      parent[x] = parent[parent[x]];
    }
  }
  lvl->class_of = std::move(parent);
  return lvl;
}

std::shared_ptr<const detail::Level> ClassOracle::level(std::uint64_t k) { return classes(k).level; }

const ClassTable& ClassOracle::classes(std::uint64_t k) {
  if (k < 1) fail(ErrorKind::Domain, "iterate must be positive");
  auto it = tables_.find(k);
  if (it != tables_.end()) return it->second;
  ClassTable table;
  table.k = k;
  table.level = build_level(k);
  return tables_.emplace(k, std::move(table)).first->second;
}

const ClassTable& ClassOracle::orbits(std::uint64_t k) {
  classes(k);
  ClassTable& table = tables_.at(k);
  if (table.annotated()) return table;
  const Level& lvl = *table.level;
  const std::size_t count = table.size();

  table.phi.resize(count);
  std::vector<std::int64_t> y(static_cast<std::size_t>(lvl.n));
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t f = 0;
    lvl.decode(lvl.rep_id[c], f, y.data());
    table.phi[c] = lvl.class_of[lvl.apply(lvl.phi_maps[f], y.data())];
  }

  constexpr std::uint32_t unset = ~std::uint32_t{0};
  table.orbit.assign(count, unset);
  table.length.assign(count, 0);
  std::vector<std::uint32_t> cycle;
  for (std::size_t c = 0; c < count; ++c) {
    if (table.orbit[c] != unset) continue;
    const auto id = static_cast<std::uint32_t>(table.orbit_leaders.size());
    table.orbit_leaders.push_back(static_cast<std::uint32_t>(c));
    cycle.clear();
    auto x = static_cast<std::uint32_t>(c);
    while (table.orbit[x] == unset) {
      table.orbit[x] = id;
      cycle.push_back(x);
      x = table.phi[x];
    }
    if (x != c) fail(ErrorKind::OracleMismatch, "[phi] is not a permutation of the classes");
    for (auto e : cycle) table.length[e] = static_cast<std::uint32_t>(cycle.size());
  }

  // Depth: the least divisor level some class boosts up from.
  table.depth.assign(count, 0);
  for (auto d : divisors(k)) {
    if (d == k) break;
    const ClassTable& lower = classes(d);
    for (std::size_t c = 0; c < lower.size(); ++c) {
      const std::size_t target = boost(lower.klass(c), k).index;
      if (table.depth[target] == 0) table.depth[target] = static_cast<std::uint32_t>(d);
    }
  }
  for (std::size_t c = 0; c < count; ++c) {
    if (table.depth[c] == 0) table.depth[c] = static_cast<std::uint32_t>(k);
    if (k % table.length[c] != 0)
      fail(ErrorKind::OracleMismatch, "orbit length " + std::to_string(table.length[c]) + " does not divide " + std::to_string(k));
    if (table.depth[c] != table.length[c])
      fail(ErrorKind::OracleMismatch, "class " + std::to_string(c) + " at k=" + std::to_string(k) + " has depth " +
                                          std::to_string(table.depth[c]) + " but orbit length " + std::to_string(table.length[c]));
  }
  return table;
}

std::size_t ClassOracle::index_of(const AffineElement& x, std::uint64_t k) {
  if (!contains(x)) fail(ErrorKind::Domain, "element is not in the group");
  const auto lvl = level(k);
  const std::size_t f = holonomy_of(x.A);
  const IntVector shift = to_int(RatVector(x.a - report_.cocycle[f]));
  return lvl->class_of[lvl->id_of(f, shift)];
}

ReidClass ClassOracle::canonical(const AffineElement& x, std::uint64_t k) { return classes(k).klass(index_of(x, k)); }

ReidClass ClassOracle::phi_action(const ReidClass& c) { return canonical(endo_image(c.rep), c.k); }

ReidClass ClassOracle::boost(const ReidClass& c, std::uint64_t n) {
  if (c.k == 0 || n % c.k != 0)
    fail(ErrorKind::Domain, "boost: " + std::to_string(n) + " is not a multiple of " + std::to_string(c.k));
  AffineElement product = c.rep, step = c.rep;
  for (std::uint64_t j = 1; j < n / c.k; ++j) {
    step = endo_power(step, c.k);
    product = compose(product, step);
  }
  return canonical(product, n);
}

void ClassOracle::release(std::uint64_t k) { tables_.erase(k); }

AffineElement endo_image(const EndoSpec& spec, const AffineElement& alpha) {
  return ClassOracle(spec).endo_image(alpha);
}

ClassTable enumerate_classes(const EndoSpec& spec, std::uint64_t k) {
  ClassOracle oracle(spec);
  const ClassTable table = oracle.classes(k);
  const ExtNat expected = reidemeister_sequence(spec, k).at(k);
  if (expected != ExtNat(Integer(table.size())))
    fail(ErrorKind::OracleMismatch, "enumerated " + std::to_string(table.size()) + " classes at k=" + std::to_string(k) +
                                        " but the averaging formula gives " + expected.str());
  return table;
}

ReidClass boost(const EndoSpec& spec, const ReidClass& c, std::uint64_t n) { return ClassOracle(spec).boost(c, n); }

ReidClass phi_action(const EndoSpec& spec, const ReidClass& c) { return ClassOracle(spec).phi_action(c); }

ClassTable orbit_decomposition(const EndoSpec& spec, std::uint64_t k) {
  ClassOracle oracle(spec);
  return oracle.orbits(k);
}

EndoSpec conjugate_endo(const EndoSpec& spec, const AffineElement& beta) {
  ClassOracle oracle(spec);
  if (!oracle.contains(beta)) fail(ErrorKind::Domain, "conjugating element is not in the group");
  const auto& image = oracle.validation().holonomy_image;
  const IntMatrix binv = unimodular_inverse(beta.A);
  EndoSpec out = spec;
  out.D = to_rational(beta.A) * spec.D;
  out.d = beta.a + to_rational(beta.A) * spec.d;
  std::vector<std::size_t> map(spec.order());
  for (std::size_t i = 0; i < spec.order(); ++i) {
    const long j = holonomy_index(spec, IntMatrix(beta.A * spec.holonomy[image[i]] * binv));
    if (j < 0) fail(ErrorKind::Domain, "conjugated holonomy image leaves the holonomy");
    map[i] = static_cast<std::size_t>(j);
  }
  out.holonomy_map = map;
  return out;
}

}  // namespace tspec
