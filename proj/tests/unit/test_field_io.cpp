#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "nlslab/field_io.hpp"

using namespace nlslab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "nlslab_field_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(FieldIo, RealRoundTripIsBitExact) {
  const GridSpec g({5, 6, 7}, {2.0, 2.5, 3.5});
  const RealField u = RealField::sample(g, [](double a, double b, double c) { return a - 0.1 * b * c + 1e-300; });
  const fs::path base = scratch("real");
  const FieldFiles f = write_field(u, base);
  EXPECT_EQ(fs::file_size(f.data), g.size() * 8);

  const RealField v = read_real_field(base);
  EXPECT_EQ(v.grid(), g);
  for (std::size_t i = 0; i < u.size(); ++i) ASSERT_EQ(u[i], v[i]);

  std::ifstream in(f.header);
  const auto h = nlohmann::json::parse(in);
  EXPECT_EQ(h.at("dtype"), "f64");
  EXPECT_EQ(h.at("n3"), 7);
  EXPECT_EQ(h.at("order"), "(i1*n2+i2)*n3+i3");
}

TEST(FieldIo, ComplexRoundTripAndPromotion) {
  const GridSpec g = GridSpec::plane({4, 8}, {1.0, 2.0});
  ComplexField u(g);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = Complex(0.5 * i, -1.0 / (i + 1.0));
  const fs::path base = scratch("complex");
  const FieldFiles f = write_field(u, base);
  EXPECT_EQ(fs::file_size(f.data), g.size() * 16);
  const ComplexField v = read_complex_field(base);
  EXPECT_TRUE(v.grid().planar());
  for (std::size_t i = 0; i < u.size(); ++i) ASSERT_EQ(u[i], v[i]);

  // f64 data read as complex.
  const RealField r = RealField::sample(g, [](double a, double b, double) { return a * b; });
  write_field(r, scratch("promote"));
  const ComplexField pr = read_complex_field(scratch("promote"));
  for (std::size_t i = 0; i < r.size(); ++i) ASSERT_EQ(pr[i], Complex(r[i], 0.0));
  EXPECT_THROW(read_real_field(base), std::runtime_error);  // c128 is not f64
}

TEST(FieldIo, TruncatedDataRejected) {
  const GridSpec g({4, 4, 4}, {1.0, 1.0, 1.0});
  const fs::path base = scratch("trunc");
  const FieldFiles f = write_field(RealField(g), base);
  fs::resize_file(f.data, 8 * 10);
  EXPECT_THROW(read_real_field(base), std::runtime_error);
  EXPECT_THROW(read_real_field(scratch("missing")), std::runtime_error);
}
