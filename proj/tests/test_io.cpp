#include <gtest/gtest.h>

#include <filesystem>

#include "opineq/io/json.hpp"
#include "opineq/linops/compress.hpp"

using namespace opineq;
using io::Json;

TEST(Json, MatrixRoundTrip) {
  ComplexMatrix m(2, 3);
  m << 1.0, Complex(0.5, -2.0), 0.0, 3.0, 4.0, Complex(0.0, 1e-300);
  const Json j = io::matrix_to_json(m);
  EXPECT_EQ(j.dump(), R"({"rows":2,"cols":3,"data":[[1.0,0.0],[0.5,-2.0],[0.0,0.0],[3.0,0.0],[4.0,0.0],[0.0,1e-300]]})");
  EXPECT_EQ(io::matrix_from_json(j), m);
}

TEST(Json, MatrixErrors) {
  EXPECT_THROW(io::matrix_from_json(Json::parse(R"({"rows":2,"cols":2,"data":[[1,0]]})")), IoError);
  EXPECT_THROW(io::matrix_from_json(Json::parse(R"([1,2])")), IoError);
}

TEST(Json, OperatorRoundTrip) {
  const OperatorExpr e = OperatorExpr::tensor(
      {OperatorExpr::weighted_shift(SequenceRule::dirichlet()),
       OperatorExpr::toeplitz(ToeplitzSymbol::blaschke({Complex(0.5, 0.0)}))});
  const Json j = io::expr_to_json(e);
  EXPECT_EQ(j["kind"], "tensor");
  EXPECT_EQ(j["children"][0]["weights"]["rule"], "dirichlet");
  const OperatorExpr back = io::expr_from_json(j);
  EXPECT_EQ(io::expr_to_json(back), j);
  EXPECT_LT((compress(back, 16) - compress(e, 16)).norm(), 1e-15);
}

TEST(Json, SpecExamplesParse) {
  for (const char* text : {R"({"kind":"weighted_shift","weights":{"rule":"dirichlet"}})",
                           R"({"kind":"toeplitz","blaschke_zeros":[[0.5,0.0]]})",
                           R"({"kind":"tensor","children":[{"kind":"shift"},{"kind":"identity"}]})"})
    EXPECT_NO_THROW(io::expr_from_json(Json::parse(text))) << text;
  EXPECT_THROW(io::expr_from_json(Json::parse(R"({"kind":"nope"})")), IoError);
}

TEST(Files, ReadWrite) {
  const auto dir = std::filesystem::temp_directory_path() / "opineq_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "m.json").string();
  io::write_text(path, io::matrix_to_json(identity(2)).dump());
  EXPECT_EQ(io::read_matrix(path), identity(2));
  EXPECT_THROW(io::read_matrix((dir / "missing.json").string()), IoError);
  io::write_text(path, "{not json");
  EXPECT_THROW(io::read_json(path), IoError);
  std::filesystem::remove_all(dir);
}
