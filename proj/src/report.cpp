#include "tspec/report.hpp"

#include "tspec/asymptotics.hpp"
#include "tspec/classes.hpp"
#include "tspec/numth.hpp"
#include "tspec/zeta.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>

namespace tspec {

namespace {

using Json = nlohmann::ordered_json;

Json jint(const Integer& x) { return x.str(); }

Json jrat(const Rational& x) { return x.str(); }

Json jreal(long double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return static_cast<double>(x);
}

Json jpoly(const IntPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coefficients()) a.push_back(jint(c));
  return a;
}

template <typename Scalar>
Json jmatrix(const Matrix<Scalar>& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

Json jvector(const RatVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(jrat(v(i)));
  return a;
}

template <typename T>
Json jlist(const T& items) {
  Json a = Json::array();
  for (const auto& x : items) a.push_back(x);
  return a;
}

// Per-level enumeration budget for verify; larger levels are reported as skipped.
constexpr std::uint64_t kVerifyCosetBudget = std::uint64_t{1} << 20;

struct Context {
  const SpecFile& file;
  const CommandOptions& options;
  ValidationReport validation;
  std::uint64_t guard;
  std::size_t bound;

  /// Window for plain spectrum work.
  std::uint64_t kmax() const { return options.kmax.value_or(file.run.kmax.value_or(24)); }

  /// Window for recurrence reconstruction; explicit kmax is honored as given.
  std::uint64_t spectral_window() const {
    if (options.kmax) return *options.kmax;
    return padded_window(file.run.kmax.value_or(24));
  }

  std::uint64_t padded_window(std::uint64_t base) const {
    return std::max<std::uint64_t>({base, 2 * bound + guard, 3 * bound});
  }
};

Json spectrum_block(const SpectrumSeq& seq) {
  Json values = Json::array(), mult = Json::array();
  for (std::uint64_t k = 1; k <= seq.kmax; ++k) {
    values.push_back(seq.at(k).str());
    const auto m = seq.multiplicity(k);
    Json row;
    row["k"] = k;
    row["R"] = seq.at(k).str();
    row["dold"] = m ? jint(m->dold) : Json(nullptr);
    row["algebraic"] = m ? jrat(m->algebraic) : Json(nullptr);
    mult.push_back(row);
  }
  Json j;
  j["kmax"] = seq.kmax;
  j["spectrum"] = values;
  j["multiplicities"] = mult;
  return j;
}

Json heights_block(const HeightSet& h) {
  Json j;
  j["heights"] = jlist(h.heights);
  j["undetermined"] = jlist(h.undetermined);
  j["inessential"] = jlist(h.inessential);
  j["all_infinite"] = h.all_infinite;
  j["complete"] = h.complete();
  return j;
}

Json decomposition_block(const SpectralDecomposition& d) {
  Json factors = Json::array();
  for (const auto& f : d.factors) {
    Json roots = Json::array();
    for (const auto& r : f.roots) {
      Json root;
      root["re"] = jreal(r.value.real());
      root["im"] = jreal(r.value.imag());
      root["modulus"] = jreal(r.modulus());
      root["radius"] = jreal(r.radius);
      roots.push_back(root);
    }
    Json jf;
    jf["poly"] = jpoly(f.poly);
    jf["rho"] = jint(f.rho);
    jf["roots"] = roots;
    factors.push_back(jf);
  }
  const RadiusReport radius = radius_and_lambda(d);
  Json j;
  j["window"] = d.window;
  j["recurrence"] = jpoly(d.recurrence);
  j["factors"] = factors;
  j["lambda"] = jreal(radius.lambda);
  j["radius"] = jreal(radius.radius);
  j["n_phi"] = d.n_phi;
  j["r_phi"] = d.r_phi;
  j["rho_phi"] = jint(d.rho_phi);
  j["M_phi"] = jint(d.M_phi);
  return j;
}

Json zeta_block(const EndoSpec& spec, const SpectralDecomposition& d) {
  const RationalFunction z = zeta_rational(d);
  const CompanionPair pair = companion_pair(d);
  const ExteriorBoundReport ext = verify_exterior_bound(spec, d);
  Json j;
  j["zeta"] = {{"numerator", jpoly(z.numerator)}, {"denominator", jpoly(z.denominator)}};
  j["spectral"] = decomposition_block(d);
  j["companion"] = {{"plus", jmatrix(pair.plus)}, {"minus", jmatrix(pair.minus)}};
  Json e;
  e["applicable"] = ext.applicable;
  e["exterior_radius"] = jreal(ext.exterior_radius);
  e["relative_error"] = jreal(ext.relative_error);
  e["match"] = ext.match;
  e["reason"] = ext.reason;
  j["exterior_bound"] = e;
  return j;
}

SpectralDecomposition decompose_window(const Context& ctx, const SpectrumSeq& seq) {
  for (std::uint64_t k = 1; k <= seq.kmax; ++k)
    if (seq.at(k).is_infinite())
      fail(ErrorKind::InfiniteValue, "R(phi^" + std::to_string(k) + ") is infinite; the zeta function is undefined");
  const auto prefix = seq.finite_prefix(seq.kmax);
  const IntPoly v = find_min_recurrence(prefix, ctx.guard, ctx.bound);
  return residues(v, prefix, ctx.file.run.degree_cap);
}

Json rep_json(const AffineElement& e) { return {{"a", jvector(e.a)}, {"A", jmatrix(e.A)}}; }

Json orbits_block(const EndoSpec& spec, std::uint64_t k) {
  const ClassTable t = orbit_decomposition(spec, k);
  Json classes = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    Json c;
    c["index"] = i;
    c["rep"] = rep_json(t.representative(i));
    c["orbit"] = t.orbit[i];
    c["length"] = t.length[i];
    c["depth"] = t.depth[i];
    c["height"] = t.is_height(i);
    classes.push_back(c);
  }
  Json orbits = Json::array();
  for (auto leader : t.orbit_leaders) {
    Json members = Json::array();
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t.orbit[i] == t.orbit[leader]) members.push_back(i);
    orbits.push_back({{"leader", leader}, {"length", t.length[leader]}, {"depth", t.depth[leader]},
                      {"height", t.is_height(leader)}, {"members", members}});
  }
  Json j;
  j["k"] = k;
  j["class_count"] = t.size();
  j["orbit_count"] = t.orbit_leaders.size();
  j["height_count"] = t.height_count();
  j["orbits"] = orbits;
  j["classes"] = classes;
  return j;
}

Json classify_block(const EndoSpec& spec, const SpectrumSeq& seq, const SpectralDecomposition& d, std::uint64_t horizon) {
  const AsymptoticReport a = asymptotic_report(spec, seq, d, horizon);
  Json tri;
  tri["case"] = to_string(a.trichotomy.kind);
  tri["confidence"] = a.trichotomy.confidence;
  if (a.trichotomy.kind == AsymptoticCase::Periodic) {
    tri["q"] = a.trichotomy.q;
    Json profile = Json::array();
    for (auto x : a.trichotomy.profile) profile.push_back(jreal(x));
    tri["profile"] = profile;
    Json fr = Json::array();
    for (auto [p, q] : a.trichotomy.fractions) fr.push_back(std::to_string(p) + "/" + std::to_string(q));
    tri["angles"] = fr;
    tri["verified_from"] = a.trichotomy.verified_from;
    tri["max_deviation"] = jreal(a.trichotomy.max_deviation);
  } else if (a.trichotomy.kind == AsymptoticCase::IntervalDense) {
    Json turns = Json::array();
    for (auto x : a.trichotomy.turns) turns.push_back(jreal(x));
    tri["turns"] = turns;
  }
  Json dens;
  dens["kmax"] = a.density.kmax;
  dens["DA"] = jrat(a.density.DA);
  dens["DH"] = jrat(a.density.DH);
  dens["DA_lower"] = jrat(a.density.DA_lower);
  dens["bound_reason"] = a.density.bound_reason;
  dens["DA_le_DH"] = a.density.DA_le_DH;

  const HeightCorollaryReport& h = a.heights;
  Json hc;
  hc["skipped"] = h.skipped;
  if (h.skipped) hc["reason"] = h.reason;
  hc["horizon"] = h.horizon;
  hc["strictly_increasing"] = h.strictly_increasing;
  hc["primes_checked"] = h.primes_checked.size();
  hc["primes_missing"] = jlist(h.primes_missing);
  hc["N"] = h.N;
  hc["prime_powers_checked"] = jlist(h.prime_powers_checked);
  hc["prime_powers_missing"] = jlist(h.prime_powers_missing);
  hc["hal_levels_checked"] = h.hal_applicable;
  hc["hal_violations"] = jlist(h.hal_violations);
  if (h.progression) {
    hc["progression"] = {{"q", h.progression->q},
                         {"m", h.progression->m},
                         {"primes", jlist(h.progression->primes)},
                         {"heights", jlist(h.progression->heights)},
                         {"unverified", jlist(h.progression->unverified)}};
  }
  hc["ok"] = h.ok();

  const auto prefix = seq.finite_prefix(seq.kmax);
  const EssentialOrbitReport e = essential_orbit_bounds(d, prefix);
  Json eo;
  eo["M_phi_witness"] = {{"applicable", e.a_applicable}, {"holds", e.a_holds}, {"i", e.a_witness}};
  eo["zero_rho_witness"] = {{"applicable", e.b_applicable}, {"holds", e.b_holds}, {"i", e.b_witness}};
  eo["dense_growth"] = {{"applicable", e.c_applicable}, {"holds", e.c_holds}, {"gamma", jreal(e.gamma)},
                        {"N", e.N}, {"flagged", e.flagged}, {"failures", jlist(e.flagged_failures)}};
  eo["N0"] = empirical_n0(d, prefix);

  Json parity = Json::array();
  for (std::uint64_t k = 1; k <= std::min<std::uint64_t>(15, seq.kmax); k += 2) {
    const ParityReport p = parity_check(seq, a.alpha2, k);
    parity.push_back({{"k", k}, {"verdict", to_string(p.verdict)}, {"irreducible", jint(p.irreducible)}, {"reason", p.reason}});
  }

  Json j;
  j["trichotomy"] = tri;
  j["alpha2"] = a.alpha2;
  j["parity"] = parity;
  j["densities"] = dens;
  j["entropy_bound"] = a.entropy_bound ? jreal(*a.entropy_bound) : Json(nullptr);
  j["entropy_bound_applicable"] = a.entropy_bound_applicable;
  j["R_infinity"] = jreal(a.R_infinity);
  j["limsup"] = {{"window_max", jreal(a.limsup.window_max)}, {"dominant_max", jreal(a.limsup.dominant_max)},
                 {"agrees", a.limsup.agrees}};
  j["height_corollaries"] = hc;
  j["essential_orbits"] = eo;
  return j;
}

void merge(Json& out, const Json& block) {
  for (const auto& [key, value] : block.items()) out[key] = value;
}

struct Tally {
  int passed = 0, failed = 0;
  bool record(bool ok) {
    (ok ? passed : failed)++;
    return ok;
  }
};

Json verify_block(const Context& ctx, std::vector<std::string>& diagnostics, Tally& tally) {
  const EndoSpec& spec = ctx.file.spec;
  const std::uint64_t kmax = ctx.kmax();
  const SpectrumSeq seq = reidemeister_sequence(spec, kmax);
  Json j;
  j["kmax"] = kmax;

  const CongruenceReport cong = gauss_congruence_check(seq.as_map(), kmax);
  Json violations = Json::array();
  for (const auto& v : cong.violations)
    violations.push_back({{"k", v.k}, {"dold", jint(v.dold)}, {"not_divisible", v.not_divisible}, {"negative", v.negative}});
  j["congruences"] = {{"checked", kmax - cong.undefined.size()},
                      {"undefined", jlist(cong.undefined)},
                      {"violations", violations},
                      {"pass", tally.record(cong.ok())}};

  Json oracle;
  oracle["supported"] = ctx.validation.classes_supported;
  if (!ctx.validation.classes_supported) {
    oracle["reason"] = ctx.validation.classes_reason;
  } else {
    ClassOracle classes(spec);
    std::vector<std::uint64_t> skipped;
    Json levels = Json::array();
    bool all = true;
    for (std::uint64_t k = 1; k <= kmax; ++k) {
      Json level;
      level["k"] = k;
      level["averaging"] = seq.at(k).str();
      if (seq.at(k).is_infinite()) {
        level["status"] = "infinite";
        levels.push_back(level);
        continue;
      }
      if (classes.coset_count(k) > Integer(kVerifyCosetBudget)) {
        level["status"] = "over-budget";
        skipped.push_back(k);
        levels.push_back(level);
        continue;
      }
      const ClassTable& t = classes.orbits(k);
      const auto m = seq.multiplicity(k);
      const bool count_ok = Integer(t.size()) == seq.at(k).value();
      const bool height_ok = !m || Integer(t.height_count()) == m->dold;
      level["status"] = "checked";
      level["classes"] = t.size();
      level["height_classes"] = t.height_count();
      level["dold"] = m ? jint(m->dold) : Json(nullptr);
      level["match"] = count_ok && height_ok;
      all = all && count_ok && height_ok;
      levels.push_back(level);
      classes.release(k);
    }
    if (!skipped.empty()) {
      std::string list;
      for (auto k : skipped) list += (list.empty() ? "" : ",") + std::to_string(k);
      diagnostics.push_back("note: class enumeration skipped above the verification budget at k=" + list);
    }
    oracle["levels"] = levels;
    oracle["pass"] = tally.record(all);
  }
  j["oracle"] = oracle;

  const std::uint64_t window = ctx.padded_window(kmax);
  const SpectrumSeq wide = reidemeister_sequence(spec, window);
  if (!wide.all_finite()) {
    j["zeta"] = {{"skipped", "infinite Reidemeister numbers"}};
    return j;
  }
  const auto prefix = wide.finite_prefix(window);
  const SpectralDecomposition d = decompose_window(ctx, wide);
  const auto series = exp_log_series(prefix, window);
  const auto taylor = zeta_rational(d).taylor(window);
  bool round_trip = true;
  for (std::size_t m = 0; m <= window; ++m) round_trip = round_trip && series[m] == Rational(taylor[m]);
  const CompanionPair pair = companion_pair(d);
  const auto tp = power_traces(pair.plus, window), tm = power_traces(pair.minus, window);
  bool traces = true;
  for (std::size_t k = 0; k < window; ++k) traces = traces && tp[k] - tm[k] == prefix[k];
  const bool dichotomy = d.lambda == 0 || d.lambda >= 1 - 1e-12L;
  const ExteriorBoundReport ext = verify_exterior_bound(spec, d);
  const std::uint64_t alpha2 = r2_period(prefix, static_cast<std::size_t>(std::max(0, d.recurrence.degree())));
  Json z;
  z["window"] = window;
  z["round_trip"] = tally.record(round_trip);
  z["trace_identity"] = tally.record(traces);
  z["lambda_dichotomy"] = tally.record(dichotomy);
  z["exterior_bound"] = ext.applicable ? Json(tally.record(ext.match)) : Json("inapplicable");
  z["alpha2_odd"] = tally.record(alpha2 % 2 == 1);
  j["zeta"] = z;
  return j;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "spectrum") return Command::Spectrum;
  if (name == "zeta") return Command::Zeta;
  if (name == "heights") return Command::Heights;
  if (name == "orbits") return Command::Orbits;
  if (name == "classify") return Command::Classify;
  if (name == "verify") return Command::Verify;
  return std::nullopt;
}

std::string to_string(Command c) {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Zeta: return "zeta";
    case Command::Heights: return "heights";
    case Command::Orbits: return "orbits";
    case Command::Classify: return "classify";
    case Command::Verify: return "verify";
  }
  return "?";
}

int exit_code(const Error& e) { return e.exit_code(); }

CommandResult run_command(Command command, const SpecFile& file, const CommandOptions& options) {
  Context ctx{file, options, require_valid(file.spec), options.guard.value_or(file.run.guard),
              default_degree_bound(file.spec)};
  CommandResult result;
  for (const auto& w : ctx.validation.warnings) result.diagnostics.push_back("warning: " + w);
  for (const auto& n : ctx.validation.notes) result.diagnostics.push_back("note: " + n);

  const EndoSpec& spec = file.spec;
  Json out;
  out["command"] = to_string(command);
  out["source"] = file.source;
  out["n"] = spec.n;
  out["holonomy_order"] = spec.order();
  out["classes_supported"] = ctx.validation.classes_supported;

  switch (command) {
    case Command::Spectrum: {
      merge(out, spectrum_block(reidemeister_sequence(spec, ctx.kmax())));
      break;
    }
    case Command::Zeta: {
      const SpectrumSeq seq = reidemeister_sequence(spec, ctx.spectral_window());
      const SpectralDecomposition d = decompose_window(ctx, seq);
      merge(out, zeta_block(spec, d));
      break;
    }
    case Command::Heights: {
      const SpectrumSeq seq = reidemeister_sequence(spec, ctx.kmax());
      out["kmax"] = ctx.kmax();
      merge(out, heights_block(heights_from_sequence(seq)));
      break;
    }
    case Command::Orbits: {
      if (!ctx.validation.classes_supported)
        fail(ErrorKind::Capability, "orbits: classes cannot be enumerated: " + ctx.validation.classes_reason);
      const std::uint64_t k = options.k.value_or(file.run.k.value_or(1));
      if (k == 0) fail(ErrorKind::Domain, "orbits: k must be positive");
      merge(out, orbits_block(spec, k));
      break;
    }
    case Command::Classify: {
      const SpectrumSeq seq = reidemeister_sequence(spec, ctx.spectral_window());
      const SpectralDecomposition d = decompose_window(ctx, seq);
      out["window"] = seq.kmax;
      out["lambda"] = jreal(d.lambda);
      out["n_phi"] = d.n_phi;
      merge(out, classify_block(spec, seq, d, file.run.prime_horizon));
      break;
    }
    case Command::Verify: {
      Tally tally;
      merge(out, verify_block(ctx, result.diagnostics, tally));
      out["summary"] = {{"passed", tally.passed}, {"failed", tally.failed}};
      if (tally.failed > 0) result.status = static_cast<int>(ErrorKind::OracleMismatch);
      break;
    }
  }
  result.json = out.dump(2) + "\n";
  return result;
}

}  // namespace tspec
