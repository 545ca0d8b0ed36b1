#include <gtest/gtest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "gerbe/error.hpp"
#include "gerbe/mesh_io.hpp"

namespace gerbe {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::InvalidInput;
}

TEST(MeshIo, RoundTripThroughText) {
  const SimplicialComplex& k = testing::fixture("T2r4").k();
  const MeshData m = k.to_mesh_data();
  const MeshData again = parse_mesh(serialize_mesh(m));
  EXPECT_EQ(again.dimension, m.dimension);
  EXPECT_EQ(again.vertices, m.vertices);
  EXPECT_EQ(again.top_simplices, m.top_simplices);
  EXPECT_EQ(again.periods, m.periods);
  EXPECT_EQ(again.cell_coordinates, m.cell_coordinates);
}

TEST(MeshIo, RoundTripThroughFile) {
  const SimplicialComplex& k = testing::fixture("G2").k();
  const auto path = std::filesystem::temp_directory_path() / "gerbe_mesh_io_test.json";
  write_mesh(path, k.to_mesh_data());
  const SimplicialComplex again = build_complex(read_mesh(path));
  std::filesystem::remove(path);
  EXPECT_EQ(again.euler_characteristic(), -2);
  EXPECT_NEAR(again.total_volume(), k.total_volume(), 1e-12);
}

TEST(MeshIo, ChainParityIsApplied) {
  const SimplicialComplex& k = testing::fixture("T2r4").k();
  const Chain c = parse_chain(k, R"({"degree": 1, "terms": [[[1, 0], 2], [[0, 4], 1]]})");
  EXPECT_EQ(c, Chain::elementary(k, {0, 1}, -2) + Chain::elementary(k, {0, 4}));
  EXPECT_EQ(parse_chain(k, serialize_chain(k, c)), c);
}

TEST(MeshIo, ChainTermsAccumulate) {
  const SimplicialComplex& k = testing::fixture("T2r4").k();
  const Chain c = parse_chain(k, R"({"degree": 0, "terms": [[[3], 1], [[3], -1]]})");
  EXPECT_TRUE(c.is_zero());
}

TEST(MeshIo, Errors) {
  const SimplicialComplex& k = testing::fixture("T2r4").k();
  EXPECT_EQ(code_of([] { parse_mesh("{not json"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_mesh(R"({"dimension": 2, "vertices": []})"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_mesh(R"({"dimension": "two", "vertices": [], "top_simplices": []})"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { parse_chain(k, R"({"degree": 1, "terms": [[[0, 1, 2], 1]]})"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { parse_chain(k, R"({"degree": 5, "terms": []})"); }), ErrorCode::DegreeOutOfRange);
  EXPECT_EQ(code_of([&] { parse_chain(k, R"({"degree": 1, "terms": [[[0, 10], 1]]})"); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] { read_text("/nonexistent/gerbe.json"); }), ErrorCode::ParseError);
}

}  // namespace
}  // namespace gerbe
