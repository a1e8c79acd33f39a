#include "ncx/fixture.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ncx/error.hpp"

namespace ncx {

namespace {

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "/" + key, "missing field");
  return *it;
}

void only_fields(const Json& j, const std::set<std::string>& allowed, const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw SchemaError(path + "/" + it.key(), "unknown field");
}

long get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<long>();
}

std::size_t get_size(const Json& j, const std::string& path) {
  long v = get_int(j, path);
  if (v < 0) throw SchemaError(path, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

mpq_class get_rational(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a rational string \"a/b\"");
  const std::string s = j.get<std::string>();
  mpq_class q;
  try {
    if (s.empty() || s.find_first_not_of("+-0123456789/") != std::string::npos) throw std::invalid_argument(s);
    q = mpq_class(s, 10);
  } catch (const std::invalid_argument&) {
    throw SchemaError(path, "not a rational: \"" + s + "\"");
  }
  if (q.get_den() == 0) throw SchemaError(path, "zero denominator");
  q.canonicalize();
  return q;
}

std::string rational_string(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

Json matrix_entries(const Matrix& m) {
  Json arr = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) arr.push_back(scalar_to_json(m(r, c)));
  return arr;
}

Matrix matrix_from_entries(const Json& j, Domain d, std::size_t rows, std::size_t cols,
                           const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of entries");
  if (j.size() != rows * cols)
    throw SchemaError(path, "expected " + std::to_string(rows * cols) + " entries (" + std::to_string(rows) +
                                " x " + std::to_string(cols) + "), got " + std::to_string(j.size()));
  Matrix m(d, rows, cols);
  for (std::size_t k = 0; k < j.size(); ++k)
    m(k / cols, k % cols) = scalar_from_json(j[k], d, path + "/" + std::to_string(k));
  return m;
}

Json layout_entry(int degree, const std::vector<IndexedSummand>& blocks, const char* left, const char* right) {
  Json e;
  e["degree"] = degree;
  Json arr = Json::array();
  for (const auto& b : blocks) {
    Json o;
    o[left] = b.i;
    o[right] = b.j;
    o["offset"] = b.offset;
    o["size"] = b.size;
    arr.push_back(std::move(o));
  }
  e["blocks"] = std::move(arr);
  return e;
}

}  // namespace

Json scalar_to_json(const Scalar& s) {
  switch (s.domain().kind()) {
    case DomainKind::Rationals: return rational_string(s.rational());
    case DomainKind::PrimeField:
    case DomainKind::ResidueRing: return s.residue();
    case DomainKind::Cyclotomic: {
      Json arr = Json::array();
      for (const auto& c : s.coefficients()) arr.push_back(rational_string(c));
      return arr;
    }
  }
  throw Error("unreachable");
}

Scalar scalar_from_json(const Json& j, Domain d, const std::string& path) {
  switch (d.kind()) {
    case DomainKind::Rationals: return Scalar::from_rational(d, get_rational(j, path));
    case DomainKind::PrimeField:
    case DomainKind::ResidueRing: return Scalar::from_int(d, get_int(j, path));
    case DomainKind::Cyclotomic: {
      if (!j.is_array()) throw SchemaError(path, "expected an array of rational coefficients");
      if (j.size() != static_cast<std::size_t>(d.degree()))
        throw SchemaError(path, "expected " + std::to_string(d.degree()) + " coefficients");
      std::vector<mpq_class> cs;
      for (std::size_t k = 0; k < j.size(); ++k) cs.push_back(get_rational(j[k], path + "/" + std::to_string(k)));
      return Scalar::from_coefficients(d, std::move(cs));
    }
  }
  throw Error("unreachable");
}

Json domain_to_json(Domain d) {
  Json j;
  switch (d.kind()) {
    case DomainKind::Rationals: j["kind"] = "rationals"; break;
    case DomainKind::PrimeField: j["kind"] = "prime_field"; j["p"] = d.parameter(); break;
    case DomainKind::Cyclotomic: j["kind"] = "cyclotomic"; j["n"] = d.parameter(); break;
    case DomainKind::ResidueRing: j["kind"] = "residue_ring"; j["m"] = d.parameter(); break;
  }
  return j;
}

Domain domain_from_json(const Json& j, const std::string& path) {
  const Json& k = field(j, "kind", path);
  if (!k.is_string()) throw SchemaError(path + "/kind", "expected a string");
  const std::string kind = k.get<std::string>();
  try {
    if (kind == "rationals") {
      only_fields(j, {"kind"}, path);
      return Domain::rationals();
    }
    if (kind == "prime_field") {
      only_fields(j, {"kind", "p"}, path);
      return Domain::prime_field(get_int(field(j, "p", path), path + "/p"));
    }
    if (kind == "cyclotomic") {
      only_fields(j, {"kind", "n"}, path);
      return Domain::cyclotomic(get_int(field(j, "n", path), path + "/n"));
    }
    if (kind == "residue_ring") {
      only_fields(j, {"kind", "m"}, path);
      return Domain::residue_ring(get_int(field(j, "m", path), path + "/m"));
    }
  } catch (const DomainError& e) {
    throw SchemaError(path, e.what());
  } catch (const PreconditionError& e) {
    throw SchemaError(path, e.what());
  }
  throw SchemaError(path + "/kind", "unknown domain kind \"" + kind + "\"");
}

Json complex_to_json(const NComplex& x) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["domain"] = domain_to_json(x.domain());
  j["N"] = x.N();
  j["shape"] = x.is_translation_invariant() ? "translation_invariant" : "bounded";
  j["lo"] = x.lo();
  j["hi"] = x.hi();
  j["ranks"] = x.ranks();
  Json diffs = Json::array();
  for (const Matrix& m : x.diffs()) diffs.push_back(matrix_entries(m));
  j["diffs"] = std::move(diffs);
  return j;
}

NComplex complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
  only_fields(j, {"format_version", "domain", "N", "shape", "lo", "hi", "ranks", "diffs"}, path);
  long version = get_int(field(j, "format_version", path), path + "/format_version");
  if (version != kFormatVersion)
    throw SchemaError(path + "/format_version", "unsupported version " + std::to_string(version));
  Domain d = domain_from_json(field(j, "domain", path), path + "/domain");
  long N = get_int(field(j, "N", path), path + "/N");
  if (N < 1) throw SchemaError(path + "/N", "N must be at least 1");
  const Json& shape = field(j, "shape", path);
  if (!shape.is_string()) throw SchemaError(path + "/shape", "expected a string");
  const std::string sh = shape.get<std::string>();
  int lo = static_cast<int>(get_int(field(j, "lo", path), path + "/lo"));
  int hi = static_cast<int>(get_int(field(j, "hi", path), path + "/hi"));
  const Json& rj = field(j, "ranks", path);
  const Json& dj = field(j, "diffs", path);
  if (!rj.is_array()) throw SchemaError(path + "/ranks", "expected an array");
  if (!dj.is_array()) throw SchemaError(path + "/diffs", "expected an array");
  std::vector<std::size_t> ranks;
  for (std::size_t k = 0; k < rj.size(); ++k) ranks.push_back(get_size(rj[k], path + "/ranks/" + std::to_string(k)));
  if (sh == "translation_invariant") {
    if (lo != 0 || hi != 0) throw SchemaError(path + "/lo", "translation-invariant complexes use lo = hi = 0");
    if (ranks.size() != 1) throw SchemaError(path + "/ranks", "expected exactly one rank");
    if (dj.size() != 1) throw SchemaError(path + "/diffs", "expected exactly one differential");
    Matrix m = matrix_from_entries(dj[0], d, ranks[0], ranks[0], path + "/diffs/0");
    return NComplex::translation_invariant(static_cast<int>(N), d, ranks[0], std::move(m));
  }
  if (sh != "bounded") throw SchemaError(path + "/shape", "expected \"bounded\" or \"translation_invariant\"");
  if (hi < lo) throw SchemaError(path + "/hi", "hi < lo");
  if (ranks.size() != static_cast<std::size_t>(hi - lo + 1))
    throw SchemaError(path + "/ranks", "expected " + std::to_string(hi - lo + 1) + " ranks");
  if (dj.size() != static_cast<std::size_t>(hi - lo))
    throw SchemaError(path + "/diffs", "expected " + std::to_string(hi - lo) + " differentials");
  std::vector<Matrix> diffs;
  for (std::size_t k = 0; k < dj.size(); ++k)
    diffs.push_back(matrix_from_entries(dj[k], d, ranks[k + 1], ranks[k], path + "/diffs/" + std::to_string(k)));
  return NComplex::bounded(static_cast<int>(N), d, lo, std::move(ranks), std::move(diffs));
}

Json map_to_json(const GradedMap& f) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["degree"] = f.degree;
  j["source"] = complex_to_json(f.source);
  j["target"] = complex_to_json(f.target);
  Json levels = Json::array();
  for (const Matrix& m : f.levels) levels.push_back(matrix_entries(m));
  j["levels"] = std::move(levels);
  return j;
}

GradedMap map_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
  only_fields(j, {"format_version", "degree", "source", "target", "levels"}, path);
  long version = get_int(field(j, "format_version", path), path + "/format_version");
  if (version != kFormatVersion)
    throw SchemaError(path + "/format_version", "unsupported version " + std::to_string(version));
  int degree = static_cast<int>(get_int(field(j, "degree", path), path + "/degree"));
  NComplex src = complex_from_json(field(j, "source", path), path + "/source");
  NComplex tgt = complex_from_json(field(j, "target", path), path + "/target");
  if (!(src.domain() == tgt.domain())) throw SchemaError(path + "/target/domain", "source and target domains differ");
  if (src.N() != tgt.N()) throw SchemaError(path + "/target/N", "source and target have different N");
  const Json& lj = field(j, "levels", path);
  if (!lj.is_array()) throw SchemaError(path + "/levels", "expected an array");
  GradedMap f = GradedMap::zero(src, tgt, degree);
  if (lj.size() != f.levels.size())
    throw SchemaError(path + "/levels", "expected " + std::to_string(f.levels.size()) + " levels");
  const int base = src.is_translation_invariant() ? 0 : src.lo();
  for (std::size_t k = 0; k < lj.size(); ++k) {
    int i = base + static_cast<int>(k);
    f.levels[k] = matrix_from_entries(lj[k], src.domain(), tgt.rank(i + degree), src.rank(i),
                                      path + "/levels/" + std::to_string(k));
  }
  return f;
}

Json tensor_layout_json(const NComplex& x, const NComplex& y, const NComplex& product) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["layout"] = "tensor";
  Json degrees = Json::array();
  for (int n = product.lo(); n <= product.hi(); ++n) degrees.push_back(layout_entry(n, tensor_layout(x, y, n), "i", "j"));
  j["degrees"] = std::move(degrees);
  return j;
}

Json hom_layout_json(const NComplex& x, const NComplex& y, const NComplex& hom) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["layout"] = "hom";
  Json degrees = Json::array();
  for (int n = hom.lo(); n <= hom.hi(); ++n) degrees.push_back(layout_entry(n, hom_layout(x, y, n), "degree", "source_degree"));
  j["degrees"] = std::move(degrees);
  return j;
}

namespace {

bool is_flat(const Json& j) {
  if (!j.is_array()) return !j.is_object();
  for (const auto& e : j)
    if (e.is_object() || (e.is_array() && !is_flat(e))) return false;
  return true;
}

void dump_into(std::string& out, const Json& j, int indent) {
  const std::string pad(indent * 2, ' '), inner((indent + 1) * 2, ' ');
  if (is_flat(j)) {
    if (!j.is_array()) {
      out += j.dump();
      return;
    }
    out += "[";
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (k) out += ", ";
      dump_into(out, j[k], 0);
    }
    out += "]";
    return;
  }
  if (j.is_array()) {
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out += inner;
      dump_into(out, j[k], indent + 1);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "]";
    return;
  }
  if (j.empty()) {
    out += "{}";
    return;
  }
  out += "{\n";
  std::size_t k = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++k) {
    out += inner + Json(it.key()).dump() + ": ";
    dump_into(out, it.value(), indent + 1);
    out += k + 1 < j.size() ? ",\n" : "\n";
  }
  out += pad + "}";
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  dump_into(out, j, 0);
  return out + "\n";
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

NComplex load_complex(const std::string& path) { return complex_from_json(parse_json(read_file(path))); }

GradedMap load_map(const std::string& path) { return map_from_json(parse_json(read_file(path))); }

}  // namespace ncx
