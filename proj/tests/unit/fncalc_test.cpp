#include <gtest/gtest.h>

#include <random>

#include "finsler/fncalc.hpp"
#include "finsler/geometry.hpp"
#include "finsler/metrics.hpp"
#include "random_fields.hpp"

namespace finsler {
namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

VectorFieldTM random_affine(std::mt19937_64& rng, const TangentPoint& p) {
  const int m = 2 * p.dim();
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(m));
  for (auto& v : c) v = u(rng);
  Tensor<double> D(m, 2);
  for (auto& v : D.flat()) v = u(rng);
  std::vector<double> center(p.x().begin(), p.x().end());
  center.insert(center.end(), p.y().begin(), p.y().end());
  return affine_field(c, D, center);
}

TEST(NaturalStructures, JAndLiouville) {
  const auto s = natural_structures(2);
  const TangentPoint p({1, 2}, {3, 4});
  const auto J = values(s.J(p, 0));
  int nonzero = 0;
  for (double v : J.flat()) nonzero += v != 0.0;
  EXPECT_EQ(nonzero, 2);
  const auto C = values(s.C(p, 0));
  EXPECT_EQ(C, (std::vector<double>{0, 0, 3, 4}));
  const auto JC = values(apply_form(s.J(p, 0), s.C(p, 0)));
  EXPECT_EQ(max_abs(JC), 0.0);
}

TEST(FnBracket, JJSuite) {
  std::mt19937_64 rng(21);
  const auto s = natural_structures(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = testing::random_point(rng, 3);
    const auto zeta = random_affine(rng, p);
    const auto eta = random_affine(rng, p);
    EXPECT_LT(max_abs(fn_bracket_forms(s.J, s.J, zeta, eta, p)), 1e-13);
    EXPECT_LT(max_abs(nijenhuis(s.J, zeta, eta, p)), 1e-13);
    const auto CJ = fn_bracket_vf_form(s.C, s.J, p);
    const auto J = values(s.J(p, 0));
    for (std::size_t k = 0; k < J.size(); ++k) EXPECT_NEAR(CJ.flat()[k], -J.flat()[k], 1e-14);
  }
}

TEST(FnBracket, ConstantsCommute) {
  const TangentPoint p({0.1, 0.2}, {1, 1});
  Tensor<double> L(4, 2);
  for (std::size_t k = 0; k < L.size(); ++k) L.flat()[k] = static_cast<double>(k);
  const auto b = fn_bracket_vf_form(constant_field({1, 2, 3, 4}), constant_form(L), p);
  EXPECT_EQ(finsler::max_abs(b), 0.0);
}

TEST(FnBracket, IdentityFormsCancel) {
  std::mt19937_64 rng(22);
  const auto p = testing::random_point(rng, 2);
  const auto I = identity_form(2);
  EXPECT_LT(max_abs(fn_bracket_forms(I, I, random_affine(rng, p), random_affine(rng, p), p)), 1e-13);
  EXPECT_LT(max_abs(nijenhuis(I, random_affine(rng, p), random_affine(rng, p), p)), 1e-13);
}

TEST(FnBracket, BarthelIsJS) {
  std::mt19937_64 rng(23);
  for (const char* name : {"randers", "riem-diag", "quartic"}) {
    const auto E = builtin_metric(name, {}, 3).energy;
    const auto p = testing::random_point(rng, 3);
    const auto SJ = fn_bracket_vf_form(spray_field(E), natural_structures(3).J, p);
    const auto Gamma = values(barthel_form(E)(p, 0));
    for (std::size_t k = 0; k < SJ.size(); ++k) EXPECT_NEAR(-SJ.flat()[k], Gamma.flat()[k], 1e-10) << name;
  }
}

TEST(FnBracket, LiouvilleCommutesWithH) {
  std::mt19937_64 rng(24);
  const auto E = builtin_metric("randers", {}, 2).energy;
  const auto p = testing::random_point(rng, 2);
  EXPECT_LT(finsler::max_abs(fn_bracket_vf_form(natural_structures(2).C, horizontal_projector(E), p)), 1e-12);
}

TEST(FnBracket, BarthelTorsionFree) {
  std::mt19937_64 rng(25);
  const auto E = builtin_metric("randers", {}, 3).energy;
  const auto J = natural_structures(3).J;
  const auto p = testing::random_point(rng, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto t = fn_bracket_forms(J, barthel_form(E), natural_frame_field(3, i), natural_frame_field(3, j), p);
      EXPECT_LT(max_abs(t), 1e-12);
    }
  }
}

TEST(FnBracket, NijenhuisIsHalfSelfBracket) {
  std::mt19937_64 rng(26);
  const auto E = builtin_metric("polar", {}, 2).energy;
  const TangentPoint p({1.3, 0.4}, {0.7, -1.1});
  const auto F = almost_complex_form(E);
  const auto zeta = random_affine(rng, p);
  const auto eta = random_affine(rng, p);
  const auto a = nijenhuis(F, zeta, eta, p);
  const auto b = fn_bracket_forms(F, F, zeta, eta, p);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], 0.5 * b[k], 1e-12);
}

TEST(FnBracket, CurvatureFromHorizontalBrackets) {
  std::mt19937_64 rng(27);
  const auto E = builtin_metric("randers", {}, 3).energy;
  const auto p = testing::random_point(rng, 3);
  const auto R = barthel_curvature(E, p).R;
  const auto h = horizontal_projector(E);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      // R(d_j, d_k) = -1/2 [h, h](d_j, d_k) = -N_h(d_j, d_k) = -R^i_jk d.i
      const auto curv = nijenhuis(h, natural_frame_field(3, j), natural_frame_field(3, k), p);
      for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(curv[static_cast<std::size_t>(i)], 0.0, 1e-12);
        EXPECT_NEAR(-curv[static_cast<std::size_t>(3 + i)], -R(i, j, k), 1e-10);
      }
    }
  }
}

TEST(LieScalar, HomogeneityOfEnergy) {
  std::mt19937_64 rng(28);
  for (const auto& name : builtin_names()) {
    const auto m = builtin_metric(name, {}, 2);
    const auto p = name == "polar" ? TangentPoint({1.5, 0.1}, {0.3, 0.9}) : testing::random_point(rng, 2);
    EXPECT_NEAR(lie_scalar(natural_structures(2).C, m.energy, p), 2.0 * m.energy(p), 1e-12) << name;
    EXPECT_EQ(lie_scalar(constant_field({1, 0, 0, 0}), ScalarField::generic(2, [](auto, auto) { return 3.0; }), p),
              0.0);
  }
}

TEST(Spray, HomogeneousOfDegreeTwo) {
  std::mt19937_64 rng(29);
  const auto E = builtin_metric("randers", {}, 2).energy;
  const auto p = testing::random_point(rng, 2);
  const auto CS = bracket(natural_structures(2).C, spray_field(E), p);
  const auto S = values(spray_field(E)(p, 0));
  for (std::size_t a = 0; a < S.size(); ++a) EXPECT_NEAR(CS[a], S[a], 1e-12);
}

}  // namespace
}  // namespace finsler
