#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "ncx/fixture.hpp"
#include "ncx/model.hpp"

namespace fs = std::filesystem;
using ncx::Json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run ncx_run(std::vector<std::string> args, std::optional<std::uint64_t> seed = std::nullopt) {
  std::ostringstream out, err;
  int code = ncx::cli::run(args, out, err, seed);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ncx_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string file(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, Qbinom) {
  auto r = ncx_run({"qbinom", "4", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1 1 2 1 1"), std::string::npos);
  auto s = ncx_run({"qbinom", "4", "2", "--format", "structured"});
  Json j = Json::parse(s.out);
  EXPECT_EQ(j["command"], "qbinom");
  EXPECT_EQ(j["exit_code"], 0);
  auto e = ncx_run({"qbinom", "5", "2", "--eval", "cyclotomic:5", "x"});
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("0"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(ncx_run({"qbinom", "2", "5"}).code, 2);
  EXPECT_EQ(ncx_run({"nosuch"}).code, 2);
  EXPECT_EQ(ncx_run({"validate", file("missing.json")}).code, 2);
  EXPECT_EQ(ncx_run({"mu", "3", "2", "0", "--bogus"}).code, 2);
  auto r = ncx_run({"validate", file("missing.json"), "--format", "structured"});
  EXPECT_TRUE(Json::parse(r.out).contains("error"));
}

TEST_F(Cli, SchemaErrorHasPath) {
  ncx::write_file(file("bad.json"), R"({"format_version": 1})");
  auto r = ncx_run({"validate", file("bad.json"), "--format", "structured"});
  EXPECT_EQ(r.code, 2);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["error"]["kind"], "schema");
  EXPECT_FALSE(j["error"]["path"].get<std::string>().empty());
}

TEST_F(Cli, GenIsDeterministic) {
  auto a = ncx_run({"gen", "--kind", "complex", "--seed", "5"});
  auto b = ncx_run({"gen", "--kind", "complex", "--seed", "5"});
  auto c = ncx_run({"gen", "--kind", "complex"}, 5);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_NE(a.out, ncx_run({"gen", "--kind", "complex", "--seed", "6"}).out);
  EXPECT_TRUE(ncx::complex_from_json(Json::parse(a.out)).N() > 0);
}

TEST_F(Cli, ComplexPipeline) {
  ASSERT_EQ(ncx_run({"gen", "--kind", "complex", "--N", "3", "--domain", "prime:3", "--seed", "2", "--out",
                     file("x.json")})
                .code,
            0);
  EXPECT_EQ(ncx_run({"validate", file("x.json")}).code, 0);
  auto h = ncx_run({"cohomology", file("x.json"), "--format", "structured"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NO_THROW(Json::parse(h.out));
  EXPECT_EQ(ncx_run({"tensor", file("x.json"), file("x.json"), "--out", file("t.json")}).code, 0);
  EXPECT_TRUE(fs::exists(file("t.layout.json")));
  EXPECT_EQ(ncx_run({"validate", file("t.json")}).code, 0);
  EXPECT_EQ(ncx_run({"hom", file("x.json"), file("x.json"), "--out", file("h.json")}).code, 0);
  EXPECT_EQ(ncx_run({"validate", file("h.json")}).code, 0);
  EXPECT_EQ(ncx_run({"suspend", file("x.json"), "--out", file("s.json")}).code, 0);
  EXPECT_EQ(ncx_run({"validate", file("s.json")}).code, 0);
  auto res = ncx_run({"resolve", file("x.json"), "--out", file("f.json")});
  EXPECT_EQ(res.code, 0);
  EXPECT_TRUE(fs::exists(file("f.map.json")));
  EXPECT_EQ(ncx_run({"quasiiso", file("f.map.json")}).code, 0);
  EXPECT_EQ(ncx_run({"fib", file("f.map.json")}).code == 0,
            ncx_run({"trivfib", file("f.map.json")}).code == 0);
}

TEST_F(Cli, ValidateViolation) {
  ncx::write_file(file("bad.json"), ncx::dump(ncx::complex_to_json(ncx::NComplex::bounded(
                                        2, ncx::Domain::rationals(), 0, {1, 1, 1},
                                        {ncx::Matrix::identity(ncx::Domain::rationals(), 1),
                                         ncx::Matrix::identity(ncx::Domain::rationals(), 1)}))));
  EXPECT_EQ(ncx_run({"validate", file("bad.json")}).code, 1);
}

TEST_F(Cli, AcyclicDecomposition) {
  ASSERT_EQ(ncx_run({"gen", "--kind", "acyclic", "--N", "3", "--seed", "4", "--out", file("a.json")}).code, 0);
  auto r = ncx_run({"decompose", file("a.json"), "--format", "structured"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NO_THROW(Json::parse(r.out));
  ASSERT_EQ(ncx_run({"mu", "3", "1", "0", "--out", file("m.json")}).code, 0);
  EXPECT_EQ(ncx_run({"decompose", file("m.json")}).code, 1);
  ASSERT_EQ(ncx_run({"mu", "3", "3", "2", "--out", file("c.json")}).code, 0);
  EXPECT_EQ(ncx_run({"decompose", file("c.json")}).code, 0);
}

TEST_F(Cli, Nullhomotopy) {
  ASSERT_EQ(ncx_run({"mu", "3", "1", "0", "--out", file("m.json")}).code, 0);
  ncx::NComplex m = ncx::load_complex(file("m.json"));
  ncx::write_file(file("id.json"), ncx::dump(ncx::map_to_json(ncx::identity_map(m))));
  EXPECT_EQ(ncx_run({"nullhomotopy", file("id.json")}).code, 1);
  EXPECT_EQ(ncx_run({"quasiiso", file("id.json")}).code, 0);
  EXPECT_EQ(ncx_run({"cone", file("id.json"), "--out", file("cone.json")}).code, 0);
  EXPECT_EQ(ncx_run({"validate", file("cone.json")}).code, 0);
}

TEST_F(Cli, Lift) {
  ASSERT_EQ(ncx_run({"gen", "--kind", "epi", "--N", "3", "--domain", "prime:3", "--seed", "3", "--out",
                     file("p.json")})
                .code,
            0);
  EXPECT_EQ(ncx_run({"fib", file("p.json")}).code, 0);
  auto p = ncx::load_map(file("p.json"));
  // bottom: J-square with B = mu_3^1, y = 0
  auto b = ncx::GeneratingMap::J(3, 1, p.source.domain());
  ncx::write_file(file("bottom.json"), ncx::dump(ncx::map_to_json(ncx::GradedMap::zero(b.target(), p.target))));
  auto r = ncx_run({"lift", "--left", "J:1", "--right", file("p.json"), "--bottom", file("bottom.json"), "--out",
                    file("h.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(file("h.json")));
}

TEST_F(Cli, AcceptSubset) {
  auto r = ncx_run({"accept", "--only", "1,3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[PASS] 01"), std::string::npos);
  EXPECT_NE(r.out.find("[PASS] 03"), std::string::npos);
  EXPECT_EQ(r.out.find("[PASS] 02"), std::string::npos);
  EXPECT_EQ(r.out, ncx_run({"accept", "--only", "1,3"}).out);
}
