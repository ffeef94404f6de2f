#include "tspec/specfile.hpp"

#include "tspec/errors.hpp"

#include <toml.hpp>

#include <fstream>
#include <regex>
#include <sstream>

namespace tspec {

namespace {

class Reader {
public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void error(const toml::node* node, const std::string& field, const std::string& what) const {
    std::ostringstream msg;
    msg << source_;
    if (node) msg << ":" << node->source().begin.line << ":" << node->source().begin.column;
    msg << ": " << field << ": " << what;
    fail(ErrorKind::Parse, msg.str());
  }

  Integer integer(const toml::node& node, const std::string& field) const {
    if (auto v = node.as_integer()) return Integer(v->get());
    if (auto s = node.as_string()) {
      const Rational q = rational(node, field);
      if (!is_integral(q)) error(&node, field, "expected an integer, got " + s->get());
      return numerator(q);
    }
    error(&node, field, "expected an integer");
  }

  Rational rational(const toml::node& node, const std::string& field) const {
    if (auto v = node.as_integer()) return Rational(Integer(v->get()));
    if (auto s = node.as_string()) {
      try {
        return parse_rational(s->get());
      } catch (const Error& e) {
        error(&node, field, e.what());
      }
    }
    error(&node, field, "expected an integer or a \"p/q\" string (floating point is not accepted)");
  }

  const toml::array& array(const toml::node& node, const std::string& field) const {
    if (auto a = node.as_array()) return *a;
    error(&node, field, "expected an array");
  }

  template <typename Scalar, typename Convert>
  Matrix<Scalar> matrix(const toml::node& node, const std::string& field, int n, Convert convert) const {
    const auto& rows = array(node, field);
    if (static_cast<int>(rows.size()) != n) error(&node, field, "expected " + std::to_string(n) + " rows");
    Matrix<Scalar> m(n, n);
    for (int i = 0; i < n; ++i) {
      const std::string rf = field + "[" + std::to_string(i) + "]";
      const auto& row = array(*rows.get(static_cast<std::size_t>(i)), rf);
      if (static_cast<int>(row.size()) != n) error(row.get(0) ? row.get(0) : &node, rf, "expected " + std::to_string(n) + " entries");
      for (int j = 0; j < n; ++j) m(i, j) = convert(*row.get(static_cast<std::size_t>(j)), rf + "[" + std::to_string(j) + "]");
    }
    return m;
  }

  IntMatrix int_matrix(const toml::node& node, const std::string& field, int n) const {
    return matrix<Integer>(node, field, n, [this](const toml::node& x, const std::string& f) { return integer(x, f); });
  }

  RatMatrix rat_matrix(const toml::node& node, const std::string& field, int n) const {
    return matrix<Rational>(node, field, n, [this](const toml::node& x, const std::string& f) { return rational(x, f); });
  }

  RatVector rat_vector(const toml::node& node, const std::string& field, int n) const {
    const auto& a = array(node, field);
    if (static_cast<int>(a.size()) != n) error(&node, field, "expected " + std::to_string(n) + " entries");
    RatVector v(n);
    for (int i = 0; i < n; ++i) v(i) = rational(*a.get(static_cast<std::size_t>(i)), field + "[" + std::to_string(i) + "]");
    return v;
  }

  std::uint64_t positive(const toml::node& node, const std::string& field) const {
    const auto v = node.as_integer();
    if (!v || v->get() < 1) error(&node, field, "expected a positive integer");
    return static_cast<std::uint64_t>(v->get());
  }

  std::uint64_t non_negative(const toml::node& node, const std::string& field) const {
    const auto v = node.as_integer();
    if (!v || v->get() < 0) error(&node, field, "expected a non-negative integer");
    return static_cast<std::uint64_t>(v->get());
  }

  const std::string& source() const { return source_; }

private:
  std::string source_;
};

const toml::table* section(const toml::table& doc, const char* name, const Reader& r, bool required) {
  const toml::node* node = doc.get(name);
  if (!node) {
    if (required) r.error(nullptr, name, "missing section");
    return nullptr;
  }
  if (!node->is_table()) r.error(node, name, "expected a table");
  return node->as_table();
}

void reject_unknown(const toml::table& t, const std::string& where, std::initializer_list<const char*> known, const Reader& r) {
  for (const auto& [key, value] : t) {
    bool ok = false;
    for (const char* k : known) ok = ok || key.str() == k;
    if (!ok) r.error(&value, where + "." + std::string(key.str()), "unknown key");
  }
}

}  // namespace

Rational parse_rational(const std::string& text) {
  static const std::regex form(R"(\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?)");
  std::smatch m;
  if (!std::regex_match(text, m, form)) fail(ErrorKind::Parse, "malformed rational \"" + text + "\"");
  const Integer num(m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str());
  const Integer den(m[2].matched ? m[2].str() : std::string("1"));
  if (den == 0) fail(ErrorKind::Parse, "zero denominator in \"" + text + "\"");
  return Rational(num, den);
}

SpecFile parse_spec_string(const std::string& text, const std::string& source) {
  Reader r(source);
  toml::table doc;
  try {
    doc = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": " << e.description();
    fail(ErrorKind::Parse, msg.str());
  }
  reject_unknown(doc, "document", {"group", "endo", "run", "name", "description"}, r);

  SpecFile out;
  out.source = source;
  EndoSpec& spec = out.spec;

  const toml::table* group = section(doc, "group", r, true);
  reject_unknown(*group, "group", {"n", "holonomy", "generators"}, r);
  const toml::node* n_node = group->get("n");
  if (!n_node) r.error(group, "group.n", "missing lattice rank");
  spec.n = static_cast<int>(r.positive(*n_node, "group.n"));
  const int n = spec.n;

  if (const toml::node* hol = group->get("holonomy")) {
    const auto& list = r.array(*hol, "group.holonomy");
    for (std::size_t i = 0; i < list.size(); ++i)
      spec.holonomy.push_back(r.int_matrix(*list.get(i), "group.holonomy[" + std::to_string(i) + "]", n));
  } else {
    spec.holonomy.push_back(IntMatrix::Identity(n, n));
  }
  if (const toml::node* gens = group->get("generators")) {
    const auto& list = r.array(*gens, "group.generators");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string field = "group.generators[" + std::to_string(i) + "]";
      const toml::table* g = list.get(i)->as_table();
      if (!g) r.error(list.get(i), field, "expected a table with translation and linear");
      reject_unknown(*g, field, {"translation", "linear"}, r);
      const toml::node* t = g->get("translation");
      const toml::node* l = g->get("linear");
      if (!t || !l) r.error(list.get(i), field, "needs both translation and linear");
      spec.generators.push_back({r.rat_vector(*t, field + ".translation", n), r.int_matrix(*l, field + ".linear", n)});
    }
  }

  const toml::table* endo = section(doc, "endo", r, true);
  reject_unknown(*endo, "endo", {"D", "d", "holonomy_map"}, r);
  const toml::node* D = endo->get("D");
  if (!D) r.error(endo, "endo.D", "missing linearization");
  spec.D = r.rat_matrix(*D, "endo.D", n);
  if (const toml::node* d = endo->get("d"))
    spec.d = r.rat_vector(*d, "endo.d", n);
  else
    spec.d = RatVector::Zero(n);
  if (const toml::node* h = endo->get("holonomy_map")) {
    const auto& list = r.array(*h, "endo.holonomy_map");
    std::vector<std::size_t> map;
    for (std::size_t i = 0; i < list.size(); ++i)
      map.push_back(static_cast<std::size_t>(r.non_negative(*list.get(i), "endo.holonomy_map[" + std::to_string(i) + "]")));
    spec.holonomy_map = map;
  }

  if (const toml::table* run = section(doc, "run", r, false)) {
    reject_unknown(*run, "run", {"kmax", "guard", "prime_horizon", "degree_cap", "k"}, r);
    if (const toml::node* x = run->get("kmax")) out.run.kmax = r.positive(*x, "run.kmax");
    if (const toml::node* x = run->get("guard")) out.run.guard = r.positive(*x, "run.guard");
    if (const toml::node* x = run->get("prime_horizon")) out.run.prime_horizon = r.positive(*x, "run.prime_horizon");
    if (const toml::node* x = run->get("degree_cap")) out.run.degree_cap = static_cast<int>(r.positive(*x, "run.degree_cap"));
    if (const toml::node* x = run->get("k")) out.run.k = r.positive(*x, "run.k");
  }
  return out;
}

SpecFile parse_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, path.string() + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_spec_string(text.str(), path.string());
}

}  // namespace tspec
