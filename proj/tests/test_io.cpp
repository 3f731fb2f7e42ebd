#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "dgbdt/io.hpp"
#include "fixtures.hpp"
#include "json.hpp"

using namespace dgbdt;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Io, FixtureFilesAreCanonical) {
  for (const char* name : {"t1.json", "t2.json"}) {
    const auto path = std::filesystem::path(DGBDT_TEST_DATA) / name;
    const ParameterTriple t = load_triple(path);
    EXPECT_EQ(triple_to_json(t), read_file(path)) << name;
  }
  const ParameterTriple t1 = load_triple(std::filesystem::path(DGBDT_TEST_DATA) / "t1.json");
  EXPECT_EQ(t1.a, fixtures::t1().a);
  EXPECT_EQ(t1.s0, fixtures::t1().s0);
  EXPECT_EQ(t1.pi0, fixtures::t1().pi0);
}

TEST(Io, RoundTripIsByteIdentical) {
  const auto dir = std::filesystem::temp_directory_path() / "dgbdt_io_roundtrip";
  std::filesystem::create_directories(dir);
  for (const auto kind : {SystemKind::SelfAdjoint, SystemKind::SkewSelfAdjoint}) {
    const ParameterTriple t = generate(kind, 5, {2, 3}, 12);
    save_triple(t, dir / "a.json");
    const ParameterTriple back = load_triple(dir / "a.json");
    EXPECT_EQ(back.a, t.a);
    EXPECT_EQ(back.s0, t.s0);
    EXPECT_EQ(back.pi0, t.pi0);
    save_triple(back, dir / "b.json");
    EXPECT_EQ(read_file(dir / "a.json"), read_file(dir / "b.json"));
  }
}

TEST(Io, FieldOrderIsFixed) {
  const std::string text = triple_to_json(fixtures::t2());
  EXPECT_EQ(text.rfind("{\"kind\":\"skew\",\"n\":1,\"m1\":1,\"m2\":1,\"A\":", 0), 0u);
  EXPECT_LT(text.find("\"S0\""), text.find("\"Pi0\""));
  EXPECT_EQ(text.back(), '\n');
}

TEST(Io, MalformedInputIsRejected) {
  EXPECT_THROW(triple_from_json("{not json"), IoError);
  EXPECT_THROW(triple_from_json("[]"), IoError);
  EXPECT_THROW(triple_from_json(R"({"kind":"other","n":1,"m1":1,"m2":1,"A":[[[0,2]]],"S0":[[[1,0]]],"Pi0":[[[1,0],[1,0]]]})"),
               IoError);
  EXPECT_THROW(triple_from_json(R"({"kind":"skew","n":0,"m1":1,"m2":1,"A":[],"S0":[],"Pi0":[]})"), IoError);
  EXPECT_THROW(triple_from_json(R"({"kind":"skew","n":1,"m1":1,"m2":1,"A":[[[0,2]]],"S0":[[[1,0]]]})"), IoError);
  EXPECT_THROW(triple_from_json(R"({"kind":"skew","n":1,"m1":1,"m2":1,"A":[[[0,2]]],"S0":[[[1,0]]],"Pi0":[[[1,0]]]})"),
               IoError);
  EXPECT_THROW(triple_from_json(R"({"kind":"skew","n":1,"m1":1,"m2":1,"A":[[[0,2,3]]],"S0":[[[1,0]]],"Pi0":[[[1,0],[1,0]]]})"),
               IoError);
  EXPECT_THROW(load_triple("/nonexistent/dir/t.json"), IoError);
  EXPECT_THROW(save_triple(fixtures::t1(), "/nonexistent/dir/t.json"), IoError);
}

TEST(Io, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Io, GridParsing) {
  const GridSpec real = GridSpec::parse("re=-5:5:101");
  EXPECT_TRUE(real.has_re);
  EXPECT_FALSE(real.has_im);
  const auto pts = real.points();
  ASSERT_EQ(pts.size(), 101u);
  EXPECT_EQ(pts.front(), Complex(-5, 0));
  EXPECT_EQ(pts.back(), Complex(5, 0));
  EXPECT_NEAR(pts[50].real(), 0.0, 1e-15);

  const auto imag = GridSpec::parse("im=2:10:9").points();
  ASSERT_EQ(imag.size(), 9u);
  EXPECT_EQ(imag[1], Complex(0, 3));

  const auto rect = GridSpec::parse("re=0:1:2,im=-1:1:3").points();
  ASSERT_EQ(rect.size(), 6u);
  EXPECT_EQ(rect[0], Complex(0, -1));
  EXPECT_EQ(rect[5], Complex(1, 1));

  EXPECT_EQ(GridSpec::parse("re=0.5:0.5:1").points(), std::vector<Complex>{Complex(0.5, 0)});
}

TEST(Io, GridRejectsBadSpecs) {
  for (const char* bad : {"re=1:0:3", "re=0:1:0", "re=0:1:2.5", "xx=0:1:2", "re=0:1", "re=a:1:2",
                          "re=0:1:2,re=0:1:2", ""}) {
    EXPECT_THROW(GridSpec::parse(bad), Error) << bad;
  }
}

TEST(Io, CsvLongFormat) {
  std::ostringstream out;
  write_csv(out, {{"weyl", 0, Complex(0, 2), 0, 0, Complex(-0.5, 0)},
                  {"potential", 3, Complex(0, 0), 1, 0, Complex(0.1, -2)}});
  EXPECT_EQ(out.str(),
            "what,k,z_re,z_im,row,col,val_re,val_im\n"
            "weyl,0,0,2,0,0,-0.5,0\n"
            "potential,3,0,0,1,0,0.1,-2\n");
}

TEST(Io, ShortestRoundTripNumbers) {
  for (const double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 233.0 / 105.0}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

TEST(Io, ReportOverallPassIsConjunction) {
  ReportDocument doc;
  doc.finalize();
  EXPECT_FALSE(doc.pass);
  doc.checks = {{"a", 1e-12, 1e-10, true}, {"b", 0.5, 1e-3, true}};
  doc.finalize();
  EXPECT_TRUE(doc.pass);
  doc.checks.push_back({"c", std::nan(""), 1.0, false});
  doc.finalize();
  EXPECT_FALSE(doc.pass);

  doc.version = "x";
  doc.triple_sha256 = "ab";
  const auto j = nlohmann::ordered_json::parse(doc.to_json());
  std::vector<std::string> keys;
  for (const auto& [key, value] : j.items()) keys.push_back(key);
  EXPECT_EQ(keys, (std::vector<std::string>{"version", "triple_sha256", "checks", "pass", "seconds"}));
  EXPECT_TRUE(j["checks"][2]["value"].is_null());
  EXPECT_EQ(j["checks"][0]["name"], "a");
  EXPECT_FALSE(j["pass"].get<bool>());
}
