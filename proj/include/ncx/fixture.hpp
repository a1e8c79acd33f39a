#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "ncx/monoidal.hpp"
#include "ncx/ncomplex.hpp"

namespace ncx {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Rationals as "a/b", modular values as integers, cyclotomic values as an
/// array of "a/b" coefficients, lowest degree first.
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, Domain d, const std::string& path);

Json domain_to_json(Domain d);
Domain domain_from_json(const Json& j, const std::string& path);

/// {format_version, domain, N, shape, lo, hi, ranks, diffs}. A
/// translation-invariant complex is stored with lo = hi = 0, one rank and
/// one differential. d^N = 0 is not checked on read.
Json complex_to_json(const NComplex& x);
NComplex complex_from_json(const Json& j, const std::string& path = "");

/// {format_version, degree, source, target, levels}; levels[k] is the
/// row-major matrix at source degree lo + k. Commutation is not checked.
Json map_to_json(const GradedMap& f);
GradedMap map_from_json(const Json& j, const std::string& path = "");

/// Block layout of every degree of a tensor or hom complex.
Json tensor_layout_json(const NComplex& x, const NComplex& y, const NComplex& product);
Json hom_layout_json(const NComplex& x, const NComplex& y, const NComplex& hom);

/// Canonical text form: two-space indentation, arrays of plain values on
/// one line, and a trailing newline.
std::string dump(const Json& j);
/// Throws SchemaError with path "" on malformed JSON.
Json parse_json(const std::string& text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

NComplex load_complex(const std::string& path);
GradedMap load_map(const std::string& path);

}  // namespace ncx
