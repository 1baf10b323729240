#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <algorithm>
#include <cstring>
#include <numeric>

#include "beltrami/field.hpp"
#include "beltrami/field_io.hpp"

using namespace beltrami;
constexpr double kPi = std::numbers::pi;

namespace {

ComplexField disk_indicator(const Grid& g, double r = 1.0) {
  return ComplexField::from_function(g, [r](complex z) { return std::abs(z) < r ? 1.0 : 0.0; });
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("beltrami_test_" + name);
}

}  // namespace

TEST(Grid, RejectsBadSizes) {
  EXPECT_THROW(Grid(100, 2.0), InvalidArgument);
  EXPECT_THROW(Grid(32, 2.0), InvalidArgument);
  EXPECT_THROW(Grid(64, 1.5), InvalidArgument);
  EXPECT_NO_THROW(Grid(64, 2.0));
}

TEST(Grid, CellCentredLayout) {
  Grid g(64, 2.0);
  EXPECT_DOUBLE_EQ(g.spacing(), 4.0 / 64);
  EXPECT_EQ(g.point(g.index(0, 0)), complex(-2.0 + g.spacing() / 2, -2.0 + g.spacing() / 2));
  EXPECT_EQ(g.point(g.index(3, 5)).real(), g.coordinate(3));
  EXPECT_EQ(g.point(g.index(3, 5)).imag(), g.coordinate(5));
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NE(g.point(k), complex{});
}

TEST(Field, RejectsNonFiniteSamples) {
  Grid g(64, 2.0);
  std::vector<complex> s(g.size());
  s[7] = complex{NAN, 0};
  EXPECT_THROW(ComplexField(g, s), InvalidField);
  std::vector<double> r(g.size());
  r[3] = INFINITY;
  EXPECT_THROW(RealField(g, r), InvalidField);
}

TEST(L2Norm, Examples) {
  Grid g(512, 2.0);
  EXPECT_EQ(l2_norm(ComplexField(g)), 0.0);
  EXPECT_NEAR(l2_norm(disk_indicator(g)), std::sqrt(kPi), 2 * g.spacing());
  ComplexField one = ComplexField::from_function(g, [](complex) { return 1.0; });
  EXPECT_NEAR(l2_norm(one), 2 * g.half_width(), 1e-12);
}

TEST(Restrict, Examples) {
  Grid g(512, 2.0);
  ComplexField chi = disk_indicator(g);
  ComplexField full = restrict(chi, RegionMask::full(g));
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(full[k], chi[k]);
  EXPECT_EQ(l2_norm(restrict(chi, RegionMask::empty(g))), 0.0);
  double annulus = std::pow(l2_norm(restrict(chi, RegionMask::annulus(g, 0.5, 1.0))), 2);
  // Boundary quantization: perimeter 2 pi (1 + 1/2) times h.
  EXPECT_NEAR(annulus, kPi * 0.75, 3 * kPi * g.spacing());
  EXPECT_LE(l2_norm(restrict(chi, RegionMask::disk(g, 0.3))), l2_norm(chi));
}

TEST(Restrict, GridMismatch) {
  EXPECT_THROW(restrict(ComplexField(Grid(64, 2.0)), RegionMask::full(Grid(128, 2.0))), GridMismatch);
  EXPECT_THROW(ComplexField(Grid(64, 2.0)) + ComplexField(Grid(64, 3.0)), GridMismatch);
}

TEST(Measure, Examples) {
  Grid g(512, 2.0);
  EXPECT_EQ(measure(RegionMask::empty(g)), 0.0);
  EXPECT_NEAR(measure(RegionMask::disk(g, 0.5)), kPi / 4, kPi * g.spacing());
  EXPECT_DOUBLE_EQ(measure(RegionMask::full(g)), 16.0);
}

TEST(ImageMeasure, Examples) {
  Grid g(512, 2.0);
  const double h = g.spacing();
  RealField one(g, std::vector<double>(g.size(), 1.0));
  for (double r : {0.25, 0.5, 1.0}) EXPECT_NEAR(image_measure(one, RegionMask::disk(g, r)), kPi * r * r, 2 * kPi * r * h);
  // f(z) = z |z|^{-1/2}: J = 1/(2|z|), image of D_r has area pi r.
  RealField J = RealField::from_function(g, [](complex z) { return 0.5 / std::abs(z); });
  for (double r : {0.5, 1.0}) EXPECT_NEAR(image_measure(J, RegionMask::disk(g, r)), kPi * r, 10 * h);
  EXPECT_EQ(image_measure(RealField(g), RegionMask::disk(g, 1.0)), 0.0);
}

TEST(ImageMeasure, NegativeJacobianIsInvalid) {
  Grid g(64, 2.0);
  std::vector<double> J(g.size(), 1.0);
  J[g.index(32, 32)] = -1e-6;
  EXPECT_THROW(image_measure(RealField(g, J), RegionMask::disk(g, 1.0)), InvalidField);
  J[g.index(32, 32)] = -1e-10;
  EXPECT_NO_THROW(image_measure(RealField(g, J), RegionMask::disk(g, 1.0)));
}

TEST(FieldProperties, PythagoreanSplit) {
  Grid g(256, 2.0);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  std::vector<complex> s(g.size());
  for (auto& v : s) v = {n01(rng), n01(rng)};
  ComplexField f(g, s);
  for (double r : {0.1, 0.7, 1.9}) {
    RegionMask E = RegionMask::disk(g, r);
    double a = std::pow(l2_norm(restrict(f, E)), 2);
    double b = std::pow(l2_norm(restrict(f, E.complement())), 2);
    double c = std::pow(l2_norm(f), 2);
    EXPECT_NEAR(a + b, c, 1e-12 * c);
  }
}

TEST(FieldProperties, MeasureAdditiveOverDisjointMasks) {
  Grid g(256, 2.0);
  RegionMask a = RegionMask::disk(g, 0.5);
  RegionMask b = RegionMask::annulus(g, 0.7, 1.2);
  RegionMask c = RegionMask::from_predicate(g, [](complex z) { return z.real() > 1.5; });
  EXPECT_EQ(measure(a | b | c), measure(a) + measure(b) + measure(c));
  EXPECT_EQ(measure(a & b), 0.0);
}

TEST(FieldProperties, ImageMeasureOfConstant) {
  Grid g(256, 2.0);
  RegionMask E = RegionMask::disk(g, 0.8);
  EXPECT_EQ(image_measure(RealField(g, std::vector<double>(g.size(), 2.0)), E), 2.0 * measure(E));
  EXPECT_DOUBLE_EQ(image_measure(RealField(g, std::vector<double>(g.size(), 3.0)), E), 3.0 * measure(E));
}

TEST(FieldProperties, NormInvariantUnderMatchedPermutation) {
  Grid g(128, 2.0);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  std::vector<complex> s(g.size());
  for (auto& v : s) v = {n01(rng), n01(rng)};
  RegionMask E = RegionMask::disk(g, 1.0);
  std::vector<std::size_t> perm(g.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<complex> ps(g.size());
  std::vector<std::uint8_t> pb(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    ps[k] = s[perm[k]];
    pb[k] = E.contains(perm[k]);
  }
  double a = l2_norm(restrict(ComplexField(g, s), E));
  double b = l2_norm(restrict(ComplexField(g, ps), RegionMask(g, pb)));
  EXPECT_NEAR(a, b, 1e-12 * a);
}

TEST(Gradient, ExactOnQuadratics) {
  Grid g(64, 2.0);
  RealField f = RealField::from_function(g, [](complex z) {
    double x = z.real(), y = z.imag();
    return x * x + 3 * x * y - 2 * y;
  });
  Gradient d = gradient(f);
  for (std::size_t k = 0; k < g.size(); ++k) {
    complex z = g.point(k);
    EXPECT_NEAR(d.dx[k], 2 * z.real() + 3 * z.imag(), 1e-11);
    EXPECT_NEAR(d.dy[k], 3 * z.real() - 2, 1e-11);
  }
}

TEST(SampleBilinear, ExactForAffine) {
  Grid g(64, 2.0);
  RealField f = RealField::from_function(g, [](complex z) { return 2 * z.real() - z.imag() + 0.5; });
  for (complex z : {complex{0.1, -0.3}, complex{0.77, 0.01}, complex{-1.2, 1.5}})
    EXPECT_NEAR(sample_bilinear(f, z), 2 * z.real() - z.imag() + 0.5, 1e-12);
}

TEST(FieldIo, Cf1RoundTripAndLayout) {
  Grid g(64, 2.5);
  ComplexField f = ComplexField::from_function(g, [](complex z) { return z * z; });
  auto path = temp_path("field.cf1");
  write_cf1(path, f);
  EXPECT_EQ(std::filesystem::file_size(path), 16 + 16 * g.size());
  std::ifstream in(path, std::ios::binary);
  char head[16];
  in.read(head, 16);
  EXPECT_EQ(std::string(head, 4), std::string("CF1\0", 4));
  std::uint32_t n;
  double L;
  std::memcpy(&n, head + 4, 4);
  std::memcpy(&L, head + 8, 8);
  EXPECT_EQ(n, 64u);
  EXPECT_EQ(L, 2.5);
  ComplexField back = read_cf1(path);
  EXPECT_TRUE(back.grid() == g);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(back[k], f[k]);
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".partial"));
}

TEST(FieldIo, Rm1RoundTripAndErrors) {
  Grid g(64, 2.0);
  RegionMask E = RegionMask::annulus(g, 0.2, 0.9);
  auto path = temp_path("mask.rm1");
  write_rm1(path, E);
  RegionMask back = read_rm1(path);
  EXPECT_EQ(back.count(), E.count());
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(back.contains(k), E.contains(k));
  EXPECT_THROW(read_cf1(path), FormatError);
  EXPECT_THROW(read_cf1(temp_path("missing.cf1")), FormatError);
}
