#include "riesz/errors.hpp"
#include "riesz/field_io.hpp"
#include "riesz/random.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

namespace riesz {
namespace {

std::size_t parseErrorLine(const std::string& text) {
  std::istringstream in(text);
  try {
    readField(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return 0;
}

const char* kHeader2 = R"({"grid":{"nx":2,"ny":1,"nz":1,"lx":1,"ly":1,"lz":1},"kind":"scalar"})";

TEST(FieldIo, ReadsScalarWithBlankLines) {
  std::istringstream in(std::string(kHeader2) + "\n0.25\n\n-0.25\n");
  const FieldData d = readField(in);
  const auto& s = std::get<ScalarField>(d);
  EXPECT_EQ(s.values(), (Vector(2) << 0.25, -0.25).finished());
  EXPECT_EQ(s.grid(), Grid::line(2));
}

TEST(FieldIo, ReadsShippedTwoCellForce) {
  const FieldData d = readFieldFile(std::string(RIESZ_TEST_DATA_DIR) + "/two_cell_force.field");
  const auto& v = std::get<VectorField>(d);
  EXPECT_EQ(v.at(Axis::X, 1, 0, 0), 1.0);
  EXPECT_TRUE(v.isBorderNull());
}

TEST(FieldIo, ReportsLineNumbers) {
  EXPECT_EQ(parseErrorLine("{not json\n1\n2\n"), 1u);
  EXPECT_EQ(parseErrorLine(std::string(kHeader2) + "\n1\nabc\n"), 3u);
  EXPECT_EQ(parseErrorLine(std::string(kHeader2) + "\n1\n2\n3\n"), 4u);
  EXPECT_EQ(parseErrorLine(std::string(kHeader2) + "\n\n1\n"), 4u);  // truncated payload
  EXPECT_EQ(parseErrorLine(R"({"grid":{"nx":1,"ny":1,"nz":1},"kind":"scalar"})" "\n1\n"), 1u);
  EXPECT_EQ(parseErrorLine(R"({"grid":{"nx":2,"ny":1,"nz":1},"kind":"tensor"})" "\n1\n2\n"), 1u);
  EXPECT_EQ(parseErrorLine(R"({"grid":{"nx":2,"ny":1,"nz":1},"kind":"vector"})" "\nv\n"), 2u);
  EXPECT_EQ(parseErrorLine(std::string(kHeader2) + "\n1\nnan\n"), 3u);
  EXPECT_EQ(parseErrorLine(""), 0u);
}

TEST(FieldIo, ShippedMalformedFile) {
  try {
    readFieldFile(std::string(RIESZ_TEST_DATA_DIR) + "/malformed.field");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
}

TEST(FieldIo, MissingFileIsAnError) {
  EXPECT_THROW(readFieldFile("/nonexistent/dir/field.txt"), Error);
  EXPECT_THROW(writeFieldFile("/nonexistent/dir/field.txt", ScalarField(Grid::line(2))), Error);
}

TEST(FieldIoProperty, RoundTripIsBitExact) {
  Rng rng(77);
  for (int t = 0; t < 20; ++t) {
    const Grid g(rng.uniformInt(2, 5), rng.uniformInt(1, 4), rng.uniformInt(1, 3), 0.1 + rng.uniform(),
                 0.1 + rng.uniform(), 0.1 + rng.uniform());
    const ScalarField s(g, rng.gaussianVector(g.cellCount()) * 1e3);
    const VectorField v(g, rng.gaussianVector(g.faceCount(Axis::X)), rng.gaussianVector(g.faceCount(Axis::Y)),
                        rng.gaussianVector(g.faceCount(Axis::Z)) * 1e-7);
    std::stringstream a, b;
    writeField(a, s);
    writeField(b, v);
    const auto s2 = std::get<ScalarField>(readField(a));
    const auto v2 = std::get<VectorField>(readField(b));
    EXPECT_EQ(s2.grid(), g);
    EXPECT_EQ(s2.values(), s.values());
    EXPECT_EQ(v2.grid(), g);
    for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) EXPECT_EQ(v2.component(ax), v.component(ax));
  }
}

TEST(FieldIoProperty, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "riesz_field_io_roundtrip.field";
  const ScalarField s(Grid(2, 2, 1), (Vector(4) << 1, -2, 3.5, 1e-300).finished());
  writeFieldFile(path.string(), s);
  EXPECT_EQ(std::get<ScalarField>(readFieldFile(path.string())).values(), s.values());
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace riesz
