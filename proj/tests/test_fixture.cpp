#include <gtest/gtest.h>

#include "ncx/error.hpp"
#include "ncx/fixture.hpp"
#include "ncx/generators.hpp"

using namespace ncx;

namespace {

std::string path_of_error(const Json& j) {
  try {
    complex_from_json(j);
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<none>";
}

}  // namespace

TEST(Fixture, ScalarEncoding) {
  Domain q = Domain::rationals();
  EXPECT_EQ(scalar_to_json(Scalar::from_int(q, 3)), Json("3/1"));
  EXPECT_EQ(scalar_to_json(Scalar::from_rational(q, mpq_class(-2, 4))), Json("-1/2"));
  EXPECT_EQ(scalar_to_json(Scalar::from_int(Domain::prime_field(7), -1)), Json(6));
  Domain c = Domain::cyclotomic(3);
  Json cj = scalar_to_json(Scalar::cyclotomic_generator(c));
  EXPECT_EQ(cj, Json::parse(R"(["0/1", "1/1"])"));
  EXPECT_EQ(scalar_from_json(cj, c, ""), Scalar::cyclotomic_generator(c));
  // rationals must be written as "a/b"
  EXPECT_THROW(scalar_from_json(Json(5), q, "/a"), SchemaError);
  EXPECT_EQ(scalar_from_json(Json("6/4"), q, ""), Scalar::from_rational(q, mpq_class(3, 2)));
  EXPECT_THROW(scalar_from_json(Json("x"), q, "/a"), SchemaError);
}

TEST(Fixture, RoundTripAllDomains) {
  Rng rng(61);
  for (Domain d : {Domain::rationals(), Domain::prime_field(5), Domain::cyclotomic(4)}) {
    auto x = random_complex(rng, RandomComplexOptions{}, d);
    Json j = complex_to_json(x);
    EXPECT_TRUE(complex_from_json(j) == x);
    EXPECT_TRUE(complex_from_json(parse_json(dump(j))) == x);
    EXPECT_EQ(dump(complex_to_json(complex_from_json(j))), dump(j));
    auto f = random_chain_map(rng, x, x);
    EXPECT_TRUE(map_from_json(map_to_json(f)) == f);
  }
  Domain z = Domain::residue_ring(8);
  auto ti = NComplex::translation_invariant(3, z, 1, Matrix::from_ints(z, 1, 1, {2}));
  Json tj = complex_to_json(ti);
  EXPECT_EQ(tj["shape"], "translation_invariant");
  EXPECT_TRUE(complex_from_json(tj) == ti);
}

TEST(Fixture, SchemaErrors) {
  Json good = complex_to_json(mu(2, 2, 1, 1, Domain::rationals()));
  Json j = good;
  j["format_version"] = 2;
  EXPECT_EQ(path_of_error(j), "/format_version");
  j = good;
  j.erase("N");
  EXPECT_EQ(path_of_error(j), "/N");
  j = good;
  j["extra"] = 1;
  EXPECT_EQ(path_of_error(j), "/extra");
  j = good;
  j["ranks"] = Json::array({1, 2});
  EXPECT_NE(path_of_error(j), "<none>");
  j = good;
  j["diffs"][0] = Json::array({"1/1", "1/1"});
  EXPECT_NE(path_of_error(j), "<none>");
  j = good;
  j["domain"] = Json::object({{"kind", "prime_field"}, {"p", 4}});
  EXPECT_NE(path_of_error(j), "<none>");
  EXPECT_THROW(parse_json("{not json"), SchemaError);
}

TEST(Fixture, CanonicalDump) {
  std::string s = dump(complex_to_json(mu(2, 2, 1, 1, Domain::prime_field(3))));
  EXPECT_EQ(s.back(), '\n');
  EXPECT_NE(s.find("\"ranks\": [1, 1]"), std::string::npos);
}

TEST(Fixture, Layouts) {
  Domain d = Domain::prime_field(2);
  auto x = mu(4, 2, 1, 1, d), y = mu(4, 3, 2, 1, d);
  auto tw = TwistParams::make(Scalar::one(d), 4);
  auto t = tensor_xi(x, y, tw);
  Json lj = tensor_layout_json(x, y, t);
  EXPECT_EQ(lj["layout"], "tensor");
  for (const auto& deg : lj["degrees"]) {
    std::size_t total = 0;
    for (const auto& b : deg["blocks"]) total += b["size"].get<std::size_t>();
    EXPECT_EQ(total, t.rank(deg["degree"].get<int>()));
  }
  EXPECT_EQ(hom_layout_json(x, y, hom_xi(x, y, tw))["layout"], "hom");
}
