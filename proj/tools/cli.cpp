#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ncx/acceptance.hpp"
#include "ncx/cohomology.hpp"
#include "ncx/error.hpp"
#include "ncx/fixture.hpp"
#include "ncx/generators.hpp"
#include "ncx/homotopy.hpp"
#include "ncx/model.hpp"
#include "ncx/monoidal.hpp"
#include "ncx/qcombinat.hpp"
#include "ncx/resolutions.hpp"

namespace ncx::cli {

namespace {

// An input problem detected after parsing; exit code 2.
struct InputError : Error {
  using Error::Error;
};

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  bool structured = false;
  Json doc;

  void line(const std::string& s) {
    if (!structured) out << s << "\n";
  }
};

NComplex read_complex(const std::string& path) {
  try {
    return load_complex(path);
  } catch (const SchemaError& e) {
    throw SchemaError(path + (e.path().empty() || e.path() == path ? "" : ":" + e.path()), e.message());
  }
}

GradedMap read_map(const std::string& path, bool require_chain = true) {
  GradedMap f;
  try {
    f = load_map(path);
  } catch (const SchemaError& e) {
    throw SchemaError(path + (e.path().empty() || e.path() == path ? "" : ":" + e.path()), e.message());
  }
  if (require_chain) {
    if (f.degree != 0) throw InputError(path + ": expected a degree-0 chain map");
    if (auto i = f.first_defect()) throw InputError(path + ": map does not commute with d at degree " + std::to_string(*i));
  }
  return f;
}

Scalar parse_scalar(Domain d, const std::string& text, const std::string& what) {
  std::string s = text;
  bool neg = false;
  if (!s.empty() && s[0] == '-') {
    neg = true;
    s = s.substr(1);
  }
  try {
    if (d.kind() == DomainKind::Cyclotomic && !s.empty() && s[0] == 'x') {
      long k = 1;
      if (s.size() > 1) {
        if (s[1] != '^') throw std::invalid_argument(s);
        k = std::stol(s.substr(2));
      }
      Scalar v = Scalar::cyclotomic_generator(d).pow(k);
      return neg ? -v : v;
    }
    if (s.empty() || s.find_first_not_of("0123456789/") != std::string::npos) throw std::invalid_argument(s);
    mpq_class q(s, 10);
    q.canonicalize();
    if (neg) q = -q;
    if (d.kind() == DomainKind::Rationals || d.kind() == DomainKind::Cyclotomic) return Scalar::from_rational(d, q);
    if (q.get_den() != 1) throw std::invalid_argument(s);
    return Scalar::from_mpz(d, q.get_num());
  } catch (const std::invalid_argument&) {
    throw SchemaError(what, "cannot read \"" + text + "\" as an element of " + d.name());
  } catch (const std::out_of_range&) {
    throw SchemaError(what, "exponent out of range in \"" + text + "\"");
  }
}

TwistParams twist_for(const NComplex& x, const std::string& xi_text) {
  Domain d = x.domain();
  Scalar xi = Scalar::one(d);
  if (!xi_text.empty()) xi = parse_scalar(d, xi_text, "--xi");
  else if (auto root = find_primitive_root(d, x.N())) xi = *root;
  return TwistParams::make(xi, x.N());
}

std::string describe(const NComplex& x) {
  std::ostringstream s;
  s << "N=" << x.N() << ", " << x.domain().name();
  if (x.is_translation_invariant()) s << ", translation invariant, rank " << x.rank(0);
  else s << ", window [" << x.lo() << "," << x.hi() << "], total rank " << x.total_rank();
  return s.str();
}

// "F.json" + ".layout.json" -> "F.layout.json".
std::string sidecar_path(const std::string& out, const std::string& suffix) {
  const std::string ext = ".json";
  if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0)
    return out.substr(0, out.size() - ext.size()) + suffix;
  return out + suffix;
}

void emit_json(Ctx& c, const std::string& key, const Json& value, const std::string& out_path,
               const std::string& summary) {
  if (!out_path.empty()) {
    write_file(out_path, dump(value));
    c.doc["out"] = out_path;
    c.line("wrote " + out_path + " (" + summary + ")");
  } else if (!c.structured) {
    c.out << dump(value);
  }
  c.doc[key] = value;
}

void emit_complex(Ctx& c, const std::string& key, const NComplex& x, const std::string& out_path) {
  emit_json(c, key, complex_to_json(x), out_path, describe(x));
}

Json cohomology_json(const CohomologyReport& h) {
  Json j;
  j["N"] = h.N;
  j["by_enumeration"] = h.by_enumeration;
  Json entries = Json::array();
  for (const auto& e : h.entries) {
    Json o;
    o["r"] = e.r;
    o["i"] = e.i;
    if (h.by_enumeration) {
      o["ker_card"] = e.ker_card.get_str();
      o["im_card"] = e.im_card.get_str();
    } else {
      o["ker_dim"] = e.ker_dim;
      o["im_dim"] = e.im_dim;
      o["dim"] = e.dim;
    }
    entries.push_back(std::move(o));
  }
  j["entries"] = std::move(entries);
  j["zero"] = h.is_zero();
  return j;
}

Json resolution_json(const SemifreeResolution& res) {
  Json j;
  j["floor"] = res.floor;
  j["window"] = {res.verify_lo(), res.verify_hi()};
  j["stages"] = res.stages.size();
  Json gens = Json::array();
  for (const auto& stage : res.stages) {
    Json s = Json::array();
    for (const auto& g : stage) {
      Json o;
      o["degree"] = g.degree;
      o["boundary"] = Json::array();
      for (std::size_t k = 0; k < g.boundary.rows(); ++k) o["boundary"].push_back(scalar_to_json(g.boundary(k, 0)));
      o["image"] = Json::array();
      for (std::size_t k = 0; k < g.image.rows(); ++k) o["image"].push_back(scalar_to_json(g.image(k, 0)));
      s.push_back(std::move(o));
    }
    gens.push_back(std::move(s));
  }
  j["generators"] = std::move(gens);
  Json rep;
  rep["surjective"] = res.report.surjective;
  rep["kernel_surjective"] = res.report.kernel_surjective;
  rep["cohomology_injective"] = res.report.cohomology_injective;
  rep["quasi_iso"] = res.report.quasi_iso();
  rep["failures"] = res.report.failures;
  j["report"] = std::move(rep);
  j["verified"] = res.verified;
  return j;
}

GeneratingMap parse_left(const std::string& text, int N, Domain d) {
  auto bad = [&]() { return SchemaError("--left", "expected J:i or I:i,r, got \"" + text + "\""); };
  if (text.size() < 3 || text[1] != ':') throw bad();
  std::string rest = text.substr(2);
  try {
    std::size_t used = 0;
    if (text[0] == 'J') {
      int i = std::stoi(rest, &used);
      if (used != rest.size()) throw bad();
      return GeneratingMap::J(N, i, d);
    }
    if (text[0] == 'I') {
      auto comma = rest.find(',');
      if (comma == std::string::npos) throw bad();
      std::string a = rest.substr(0, comma), b = rest.substr(comma + 1);
      int i = std::stoi(a, &used);
      if (used != a.size()) throw bad();
      int r = std::stoi(b, &used);
      if (used != b.size()) throw bad();
      return GeneratingMap::I(N, i, r, d);
    }
  } catch (const std::logic_error&) {
    throw bad();
  }
  throw bad();
}

struct Options {
  std::string format = "text";
  // qbinom
  unsigned n = 0, k = 0;
  std::vector<std::string> eval;
  // shared
  std::string input, input2, out, xi;
  std::optional<int> r;
  // mu
  int N = 2, j = 1, i = 0;
  std::size_t rank = 1;
  std::string domain = "rationals";
  // suspend
  bool inverse = false;
  // resolve
  std::optional<int> stages, floor;
  // lift
  std::string left, right, top, bottom;
  // gen
  std::string kind = "complex";
  int lo = 0, hi = 3, max_blocks = 4;
  std::size_t max_rank = 3;
  std::optional<std::uint64_t> seed;
  // accept
  std::vector<int> only;
  bool timing = false;
};

int cmd_qbinom(Ctx& c, const Options& o) {
  if (o.k > o.n) throw InputError("qbinom needs k <= n");
  QPolynomial p = gaussian_binomial(o.n, o.k);
  c.doc["n"] = o.n;
  c.doc["k"] = o.k;
  Json coeffs = Json::array();
  for (int e = 0; e <= p.degree(); ++e) {
    mpz_class v = p.coefficient(e);
    if (v.fits_slong_p()) coeffs.push_back(v.get_si());
    else coeffs.push_back(v.get_str());
  }
  c.doc["coefficients"] = coeffs;
  c.doc["polynomial"] = p.to_string("q");
  if (!o.eval.empty()) {
    Domain d = Domain::parse(o.eval.at(0));
    Scalar xi = parse_scalar(d, o.eval.at(1), "--eval");
    Scalar v = eval_at(p, xi);
    c.doc["domain"] = domain_to_json(d);
    c.doc["xi"] = scalar_to_json(xi);
    c.doc["value"] = scalar_to_json(v);
    c.line(v.to_string());
  } else {
    c.line(p.coefficient_string());
  }
  return kOk;
}

int cmd_validate(Ctx& c, const Options& o) {
  NComplex x = read_complex(o.input);
  auto v = validate(x);
  c.doc["complex"] = describe(x);
  c.doc["valid"] = !v;
  if (v) {
    c.doc["violation"] = {{"degree", v->degree}, {"row", v->row}, {"col", v->col}, {"entry", scalar_to_json(v->entry)}};
    c.line("invalid: " + v->describe());
    return kFalse;
  }
  c.line("ok: d^" + std::to_string(x.N()) + " = 0 (" + describe(x) + ")");
  return kOk;
}

int cmd_mu(Ctx& c, const Options& o) {
  NComplex x = mu(o.N, o.j, o.i, o.rank, Domain::parse(o.domain));
  emit_complex(c, "complex", x, o.out);
  return kOk;
}

int cmd_tensor_hom(Ctx& c, const Options& o, bool tensor) {
  NComplex a = read_complex(o.input), b = read_complex(o.input2);
  if (!(a.domain() == b.domain())) throw InputError("inputs live over different domains");
  if (a.N() != b.N()) throw InputError("inputs have different N");
  if (a.is_translation_invariant() || b.is_translation_invariant())
    throw InputError("tensor and hom need bounded complexes");
  TwistParams tw = twist_for(a, o.xi);
  NComplex res = tensor ? tensor_xi(a, b, tw) : hom_xi(a, b, tw);
  Json layout = tensor ? tensor_layout_json(a, b, res) : hom_layout_json(a, b, res);
  c.doc["xi"] = scalar_to_json(tw.xi);
  c.doc["regime"] = regime_name(tw.regime);
  emit_complex(c, "complex", res, o.out);
  if (!o.out.empty()) {
    std::string side = sidecar_path(o.out, ".layout.json");
    write_file(side, dump(layout));
    c.doc["layout_file"] = side;
    c.line("wrote " + side + " (block layout)");
  }
  c.doc["layout"] = layout;
  return kOk;
}

int cmd_cohomology(Ctx& c, const Options& o) {
  NComplex x = read_complex(o.input);
  if (o.r && (*o.r < 1 || *o.r > x.N() - 1)) throw InputError("--r must lie in 1..N-1");
  CohomologyReport h = cohomology(x, o.r);
  c.doc["report"] = cohomology_json(h);
  if (!c.structured) c.out << h.to_text();
  return kOk;
}

int cmd_quasiiso(Ctx& c, const Options& o) {
  ChainMap f = read_map(o.input);
  bool q = is_quasi_iso(f);
  c.doc["quasi_iso"] = q;
  c.line(q ? "quasi-isomorphism: yes" : "quasi-isomorphism: no");
  return q ? kOk : kFalse;
}

int cmd_nullhomotopy(Ctx& c, const Options& o) {
  ChainMap f = read_map(o.input);
  auto s = nullhomotopy(f);
  c.doc["nullhomotopic"] = s.has_value();
  if (!s) {
    c.line("not nullhomotopic");
    return kFalse;
  }
  c.line("nullhomotopic");
  emit_json(c, "homotopy", map_to_json(*s), o.out, "homotopy of degree " + std::to_string(s->degree));
  return kOk;
}

int cmd_cone(Ctx& c, const Options& o) {
  ChainMap f = read_map(o.input);
  ConeData cd = cone(f);
  emit_complex(c, "complex", cd.cone, o.out);
  return kOk;
}

int cmd_suspend(Ctx& c, const Options& o) {
  NComplex x = read_complex(o.input);
  if (x.is_translation_invariant()) throw InputError("suspend needs a bounded complex");
  NComplex s = o.inverse ? desuspension(x) : suspension(x);
  c.doc["inverse"] = o.inverse;
  emit_complex(c, "complex", s, o.out);
  return kOk;
}

int cmd_resolve(Ctx& c, const Options& o) {
  NComplex m = read_complex(o.input);
  if (m.is_translation_invariant()) throw InputError("resolve needs a bounded complex");
  SemifreeResolution res = semifree_resolve(m, o.stages, o.floor);
  Json rj = resolution_json(res);
  c.doc["resolution"] = rj;
  if (!o.out.empty()) {
    write_file(o.out, dump(complex_to_json(res.complex)));
    std::string map_path = sidecar_path(o.out, ".map.json");
    write_file(map_path, dump(map_to_json(res.map)));
    c.doc["out"] = o.out;
    c.doc["map_file"] = map_path;
  } else {
    c.doc["complex"] = complex_to_json(res.complex);
  }
  if (!c.structured) {
    std::ostringstream s;
    s << "stages: " << res.stages.size() << " (generators:";
    for (const auto& st : res.stages) s << " " << st.size();
    s << ")\n";
    s << "floor: " << res.floor << " (generators admitted only in degrees >= floor)\n";
    s << "verified window: [" << res.verify_lo() << "," << res.verify_hi() << "]\n";
    s << "f surjective: " << (res.report.surjective ? "pass" : "FAIL") << "\n";
    s << "f surjective on ker d^r: " << (res.report.kernel_surjective ? "pass" : "FAIL") << "\n";
    s << "f injective on cohomology: " << (res.report.cohomology_injective ? "pass" : "FAIL") << "\n";
    for (const auto& f : res.report.failures) s << "  " << f << "\n";
    if (!o.out.empty()) s << "wrote " << o.out << " and " << c.doc["map_file"].get<std::string>() << "\n";
    s << "verified: " << (res.verified ? "yes" : "no");
    c.line(s.str());
  }
  return res.verified ? kOk : kFalse;
}

int cmd_decompose(Ctx& c, const Options& o) {
  NComplex x = read_complex(o.input);
  if (x.is_translation_invariant()) throw InputError("decompose needs a bounded complex");
  if (!x.domain().is_field()) throw InputError("decompose needs a field");
  if (!is_acyclic(x)) {
    c.doc["acyclic"] = false;
    c.line("not acyclic: no decomposition into mu_N blocks");
    return kFalse;
  }
  AcyclicDecomposition dec = contract_acyclic(x);
  c.doc["acyclic"] = true;
  Json blocks = Json::array();
  for (const auto& [t, k] : dec.blocks) {
    blocks.push_back({{"top", t}, {"multiplicity", k}});
    c.line("mu_" + std::to_string(x.N()) + "^" + std::to_string(t) + " x " + std::to_string(k));
  }
  c.doc["blocks"] = blocks;
  c.doc["contraction"] = map_to_json(dec.contraction);
  return kOk;
}

int cmd_fib(Ctx& c, const Options& o, bool trivial) {
  ChainMap p = read_map(o.input);
  bool v = trivial ? is_trivial_fibration(p) : is_fibration(p);
  c.doc[trivial ? "trivial_fibration" : "fibration"] = v;
  c.line(std::string(trivial ? "trivial fibration: " : "fibration: ") + (v ? "yes" : "no"));
  return v ? kOk : kFalse;
}

int cmd_lift(Ctx& c, const Options& o) {
  ChainMap p = read_map(o.right);
  Domain d = p.source.domain();
  GeneratingMap left = parse_left(o.left, p.source.N(), d);
  LiftingProblem prob;
  prob.left = left;
  prob.p = p;
  prob.bottom = read_map(o.bottom);
  if (!o.top.empty()) prob.top = read_map(o.top);
  else if (left.kind == GeneratingMap::Kind::J) prob.top = GradedMap::zero(left.source(), p.source, 0);
  else throw InputError("--top is required for I generators");
  try {
    prob.check();
  } catch (const PreconditionError& e) {
    throw InputError(std::string("malformed square: ") + e.what());
  }
  auto h = solve_lift(prob);
  c.doc["left"] = left.label();
  c.doc["lift_found"] = h.has_value();
  if (!h) {
    c.line("no lift");
    return kFalse;
  }
  c.line("lift found");
  emit_json(c, "lift", map_to_json(*h), o.out, "lift " + left.label());
  return kOk;
}

int cmd_gen(Ctx& c, const Options& o, std::uint64_t seed) {
  Domain d = Domain::parse(o.domain);
  Rng rng(seed);
  RandomComplexOptions opt;
  opt.N = o.N;
  opt.lo = o.lo;
  opt.hi = o.hi;
  opt.max_rank = o.max_rank;
  opt.max_blocks = o.max_blocks;
  if (o.N < 1) throw InputError("--N must be positive");
  if (o.hi < o.lo) throw InputError("--hi must be >= --lo");
  c.doc["seed"] = seed;
  c.doc["kind"] = o.kind;
  if (o.kind == "complex") {
    emit_complex(c, "complex", random_complex(rng, opt, d), o.out);
  } else if (o.kind == "acyclic") {
    PlantedAcyclic pa = random_acyclic(rng, o.N, o.lo, o.hi, o.max_blocks, d);
    Json blocks = Json::array();
    for (const auto& [t, k] : pa.blocks) blocks.push_back({{"top", t}, {"multiplicity", k}});
    c.doc["planted_blocks"] = blocks;
    emit_complex(c, "complex", pa.complex, o.out);
  } else if (o.kind == "map") {
    NComplex x = random_complex(rng, opt, d), y = random_complex(rng, opt, d);
    ChainMap f = random_chain_map(rng, x, y);
    emit_json(c, "map", map_to_json(f), o.out, "chain map");
  } else if (o.kind == "epi") {
    NComplex y = random_complex(rng, opt, d), k = random_complex(rng, opt, d);
    ChainMap p = random_epimorphism(rng, y, k);
    emit_json(c, "map", map_to_json(p), o.out, "levelwise surjective chain map");
  } else {
    throw InputError("unknown --kind " + o.kind);
  }
  return kOk;
}

int cmd_accept(Ctx& c, const Options& o, std::uint64_t seed) {
  auto results = acceptance::run_all(seed, o.only);
  std::size_t passed = 0;
  Json arr = Json::array();
  for (const auto& r : results) {
    passed += r.pass;
    c.line(acceptance::format_line(r, o.timing));
    Json e = {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"tolerance", r.tolerance}, {"detail", r.detail}};
    if (o.timing) e["seconds"] = r.seconds;
    arr.push_back(std::move(e));
  }
  c.line(std::to_string(passed) + "/" + std::to_string(results.size()) + " criteria passed (seed " +
         std::to_string(seed) + ")");
  c.doc["seed"] = seed;
  c.doc["results"] = arr;
  c.doc["passed"] = passed;
  c.doc["total"] = results.size();
  return passed == results.size() ? kOk : kFalse;
}

void error_out(Ctx& c, const std::string& kind, const std::string& message, const std::string& path = "") {
  if (c.structured) {
    c.doc["status"] = "error";
    Json e = {{"kind", kind}, {"message", message}};
    if (!path.empty()) e["path"] = path;
    c.doc["error"] = e;
  } else {
    c.err << "error: " << message << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::uint64_t> env_seed) {
  CLI::App app{"Exact computations with N-complexes", "ncx"};
  app.require_subcommand(1);
  Options o;
  auto fmt = [&](CLI::App* s) {
    s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
    return s;
  };
  auto in = [&](CLI::App* s, const char* what) { s->add_option("input", o.input, what)->required(); };

  auto* qb = fmt(app.add_subcommand("qbinom", "Gaussian binomial coefficients"));
  qb->add_option("n", o.n)->required();
  qb->add_option("k", o.k)->required();
  qb->add_option("--eval", o.eval, "DOMAIN XI: evaluate at xi")->expected(2);

  auto* va = fmt(app.add_subcommand("validate", "Check d^N = 0"));
  in(va, "complex fixture");

  auto* mu_ = fmt(app.add_subcommand("mu", "Standard complex mu_j^i(R^rank)"));
  mu_->add_option("N", o.N)->required();
  mu_->add_option("j", o.j)->required();
  mu_->add_option("i", o.i)->required();
  mu_->add_option("--rank", o.rank);
  mu_->add_option("--domain", o.domain);
  mu_->add_option("--out", o.out);

  CLI::App* th[2];
  const char* th_names[2] = {"tensor", "hom"};
  for (int t = 0; t < 2; ++t) {
    th[t] = fmt(app.add_subcommand(th_names[t], t == 0 ? "Twisted tensor product" : "Internal hom"));
    th[t]->add_option("A", o.input)->required();
    th[t]->add_option("B", o.input2)->required();
    th[t]->add_option("--xi", o.xi, "twist (default: a primitive N-th root, else 1)");
    th[t]->add_option("--out", o.out, "output fixture; the block layout goes to a .layout.json sidecar");
  }

  auto* co = fmt(app.add_subcommand("cohomology", "Amplitude cohomology table"));
  in(co, "complex fixture");
  co->add_option("--r", o.r);

  auto* qi = fmt(app.add_subcommand("quasiiso", "Is the chain map a quasi-isomorphism"));
  in(qi, "chain map file");

  auto* nh = fmt(app.add_subcommand("nullhomotopy", "Solve for a nullhomotopy"));
  in(nh, "chain map file");
  nh->add_option("--out", o.out);

  auto* cn = fmt(app.add_subcommand("cone", "Mapping cone"));
  in(cn, "chain map file");
  cn->add_option("--out", o.out);

  auto* su = fmt(app.add_subcommand("suspend", "Suspension (or desuspension with --inverse)"));
  in(su, "complex fixture");
  su->add_flag("--inverse", o.inverse);
  su->add_option("--out", o.out);

  auto* rs = fmt(app.add_subcommand("resolve", "Semifree resolution"));
  in(rs, "complex fixture");
  rs->add_option("--stages", o.stages);
  rs->add_option("--floor", o.floor);
  rs->add_option("--out", o.out, "resolution fixture; the map F -> M goes to a .map.json sidecar");

  auto* de = fmt(app.add_subcommand("decompose", "Split an acyclic complex into mu_N blocks"));
  in(de, "complex fixture");

  auto* fi = fmt(app.add_subcommand("fib", "Is the chain map a fibration"));
  in(fi, "chain map file");
  auto* tf = fmt(app.add_subcommand("trivfib", "Is the chain map a trivial fibration"));
  in(tf, "chain map file");

  auto* li = fmt(app.add_subcommand("lift", "Solve a lifting problem against a generator"));
  li->add_option("--left", o.left, "J:i or I:i,r")->required();
  li->add_option("--right", o.right, "p: X -> Y")->required();
  li->add_option("--top", o.top, "A -> X (optional for J)");
  li->add_option("--bottom", o.bottom, "B -> Y")->required();
  li->add_option("--out", o.out);

  auto* ge = fmt(app.add_subcommand("gen", "Random fixtures"));
  ge->add_option("--kind", o.kind)->check(CLI::IsMember({"complex", "acyclic", "map", "epi"}));
  ge->add_option("--N", o.N);
  ge->add_option("--lo", o.lo);
  ge->add_option("--hi", o.hi);
  ge->add_option("--max-rank", o.max_rank);
  ge->add_option("--max-blocks", o.max_blocks);
  ge->add_option("--domain", o.domain);
  ge->add_option("--seed", o.seed);
  ge->add_option("--out", o.out);

  auto* ac = fmt(app.add_subcommand("accept", "Run the acceptance suite"));
  ac->add_option("--seed", o.seed);
  ac->add_option("--only", o.only, "criterion ids")->delimiter(',');
  ac->add_flag("--timing", o.timing);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  Ctx c{out, err, false, Json::object()};
  c.structured = o.format == "structured";
  CLI::App* sub = app.get_subcommands().front();
  c.doc["command"] = sub->get_name();
  int code = kInputError;
  try {
    const std::string name = sub->get_name();
    if (name == "qbinom") code = cmd_qbinom(c, o);
    else if (name == "validate") code = cmd_validate(c, o);
    else if (name == "mu") code = cmd_mu(c, o);
    else if (name == "tensor") code = cmd_tensor_hom(c, o, true);
    else if (name == "hom") code = cmd_tensor_hom(c, o, false);
    else if (name == "cohomology") code = cmd_cohomology(c, o);
    else if (name == "quasiiso") code = cmd_quasiiso(c, o);
    else if (name == "nullhomotopy") code = cmd_nullhomotopy(c, o);
    else if (name == "cone") code = cmd_cone(c, o);
    else if (name == "suspend") code = cmd_suspend(c, o);
    else if (name == "resolve") code = cmd_resolve(c, o);
    else if (name == "decompose") code = cmd_decompose(c, o);
    else if (name == "fib") code = cmd_fib(c, o, false);
    else if (name == "trivfib") code = cmd_fib(c, o, true);
    else if (name == "lift") code = cmd_lift(c, o);
    else if (name == "gen") code = cmd_gen(c, o, o.seed.value_or(env_seed.value_or(0)));
    else if (name == "accept") code = cmd_accept(c, o, o.seed.value_or(env_seed.value_or(1)));
    c.doc["status"] = code == kOk ? "ok" : "false";
    c.doc["exit_code"] = code;
  } catch (const SchemaError& e) {
    error_out(c, "schema", e.what(), e.path());
    code = kInputError;
  } catch (const RegimeError& e) {
    error_out(c, "regime", e.what());
    code = kInputError;
  } catch (const DomainError& e) {
    error_out(c, "domain", e.what());
    code = kInputError;
  } catch (const Error& e) {
    error_out(c, "input", e.what());
    code = kInputError;
  } catch (const std::exception& e) {
    error_out(c, "internal", e.what());
    code = kInputError;
  }
  if (c.structured) {
    c.doc["exit_code"] = code;
    out << dump(c.doc);
  }
  return code;
}

}  // namespace ncx::cli
