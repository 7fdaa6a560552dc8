#include <gtest/gtest.h>

#include <random>

#include "finsler/connections.hpp"
#include "finsler/errors.hpp"
#include "finsler/fd.hpp"
#include "finsler/metrics.hpp"
#include "random_fields.hpp"

namespace finsler {
namespace {

ScalarField energy(const char* name, int n = 2) { return builtin_metric(name, {}, n).energy; }

double max_abs_taylor(const Tensor<Taylor>& t) {
  double m = 0.0;
  for (const auto& v : t.flat()) m = std::max(m, std::abs(v.value()));
  return m;
}

TEST(ConnectionKind, RoundTrip) {
  for (auto k : kAllConnections) EXPECT_EQ(parse_connection_kind(to_string(k)), k);
  EXPECT_EQ(parse_connection_kind("Cartan"), ConnectionKind::Cartan);
  EXPECT_THROW(parse_connection_kind("shen"), BadParams);
}

TEST(CartanTensor, RiemannianVanishes) {
  const auto c = cartan_tensor_first(energy("polar"), TangentPoint({2, 0.3}, {1, -1}));
  EXPECT_LT(max_abs(c.upper), 1e-12);
}

TEST(CartanTensor, RandersAgainstFiniteDifferences) {
  const auto E = energy("randers");
  // At y = (1, 0) C(S, ., .) = 0 and the reflection y2 -> -y2 kill every
  // component, so compare at a generic fiber point.
  EXPECT_LT(max_abs(cartan_tensor_first(E, TangentPoint({0, 0}, {1, 0})).lowered), 1e-12);
  const TangentPoint p({0, 0}, {1, 0.5});
  const auto c = cartan_tensor_first(E, p);
  const double g11y = fd_partial(E, p, multi_index(2, {y_var(2, 0), y_var(2, 0), y_var(2, 0)}));
  EXPECT_GT(std::abs(c.lowered(0, 0, 0)), 1e-3);
  EXPECT_NEAR(c.lowered(0, 0, 0), 0.5 * g11y, 1e-6);
}

TEST(CartanTensor, LoweredSymmetricAndKillsY) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = testing::random_point(rng, 3);
    const auto c = cartan_tensor_first(energy("randers", 3), p);
    const auto cp = cartan_tensor_second(energy("randers", 3), p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          EXPECT_NEAR(c.lowered(i, j, k), c.lowered(j, i, k), 1e-12);
          EXPECT_NEAR(c.lowered(i, j, k), c.lowered(k, j, i), 1e-12);
        }
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0, sp = 0.0;
        for (int i = 0; i < 3; ++i) {
          s += c.upper(k, i, j) * p.y()[static_cast<std::size_t>(i)];
          sp += cp(k, i, j) * p.y()[static_cast<std::size_t>(i)];
        }
        EXPECT_NEAR(s, 0.0, 1e-12);
        EXPECT_NEAR(sp, 0.0, 1e-10);
      }
  }
}

TEST(CartanCoeffs, PolarChristoffel) {
  const auto G = cartan_coeffs(energy("polar"), TangentPoint({2, 0}, {1, 1}));
  EXPECT_NEAR(G(0, 1, 1), -2.0, 1e-12);
  EXPECT_NEAR(G(1, 0, 1), 0.5, 1e-12);
  EXPECT_NEAR(G(1, 1, 0), 0.5, 1e-12);
}

TEST(Coefficients, ProcessDifferences) {
  const auto E = energy("randers", 3);
  const TangentPoint p({0.2, -0.1, 0.4}, {1, -0.5, 0.25});
  const auto b = coefficients(ConnectionKind::Berwald, E, p);
  const auto h = coefficients(ConnectionKind::Hashiguchi, E, p);
  const auto c = coefficients(ConnectionKind::Cartan, E, p);
  const auto ch = coefficients(ConnectionKind::Chern, E, p);
  const auto C = cartan_tensor_first(E, p).upper;
  const auto Cp = cartan_tensor_second(E, p);
  Tensor<double> d(3, 3, 0.0);
  for (std::size_t a = 0; a < d.size(); ++a) {
    EXPECT_NEAR(h.V.flat()[a] - b.V.flat()[a], C.flat()[a], 1e-12);
    EXPECT_NEAR(h.H.flat()[a] - b.H.flat()[a], 0.0, 1e-12);
    EXPECT_NEAR(c.H.flat()[a] - h.H.flat()[a], Cp.flat()[a], 1e-12);
    EXPECT_NEAR(c.V.flat()[a] - ch.V.flat()[a], C.flat()[a], 1e-12);
    EXPECT_NEAR(ch.H.flat()[a] - b.H.flat()[a], Cp.flat()[a], 1e-12);
  }
  EXPECT_GT(max_abs(Cp), 1e-3);
}

TEST(Coefficients, RiemannianCoincide) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = testing::random_point(rng, 3);
    const auto E = energy("riem-diag", 3);
    const auto ref = coefficients(ConnectionKind::Berwald, E, p);
    for (auto k : kAllConnections) {
      const auto c = coefficients(k, E, p);
      EXPECT_LT(max_abs_diff(c.H, ref.H), 1e-8);
      EXPECT_LT(max_abs(c.V), 1e-8);
    }
  }
}

TEST(Torsion, TableOne) {
  const auto E = energy("randers", 3);
  const TangentPoint p({0.1, 0.5, -0.3}, {0.7, 1, -0.2});
  const auto C = cartan_tensor_first(E, p).upper;
  const auto Cp = cartan_tensor_second(E, p);
  const auto b = torsion(ConnectionKind::Berwald, E, p);
  EXPECT_LT(max_abs(b.hv_vertical), 1e-12);
  EXPECT_LT(max_abs(b.hv_horizontal), 1e-12);
  const auto ch = torsion(ConnectionKind::Chern, E, p);
  EXPECT_LT(max_abs_diff(ch.hv_vertical, Cp), 1e-12);
  const auto h = torsion(ConnectionKind::Hashiguchi, E, p);
  EXPECT_LT(max_abs(h.hv_vertical), 1e-12);
  EXPECT_LT(max_abs_diff(h.hv_horizontal, C.map([](double v) { return -v; })), 1e-12);
  for (auto k : kAllConnections) {
    const auto t = torsion(k, E, p);
    EXPECT_LT(max_abs(t.vv), 1e-15);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) EXPECT_NEAR(t.hh(i, j, l), -t.hh(i, l, j), 1e-12);
  }
}

// The definitional torsion/curvature of the frame engine against the component
// formulas: X^i_hjk d.i = K(e_k, e_j) d.h.
class FrameAgreement : public ::testing::TestWithParam<ConnectionKind> {};

TEST_P(FrameAgreement, CurvatureBlocksMatchLocalFormulas) {
  const auto kind = GetParam();
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 3; ++trial) {
    const auto p = testing::random_point(rng, 3);
    const GeometryJets jets(energy("randers", 3), p, 6);
    const FrameConnection D(kind, jets);
    const auto K = D.curvature();
    const auto local = local_curvature(kind, jets);
    const int n = 3;
    double err[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i)
      for (int h = 0; h < n; ++h)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            err[0] = std::max(err[0], std::abs(K(n + i, n + h, k, j).value() - local.Rh(i, h, j, k).value()));
            err[1] = std::max(err[1], std::abs(K(n + i, n + h, n + k, j).value() - local.Phv(i, h, j, k).value()));
            err[2] = std::max(err[2], std::abs(K(n + i, n + h, n + k, n + j).value() - local.Qv(i, h, j, k).value()));
            // horizontal and vertical blocks act identically
            EXPECT_NEAR(K(i, h, k, j).value(), K(n + i, n + h, k, j).value(), 1e-10);
            EXPECT_NEAR(K(n + i, h, k, j).value(), 0.0, 1e-12);
          }
    EXPECT_LT(err[0], 1e-9) << to_string(kind) << " Rh";
    EXPECT_LT(err[1], 1e-9) << to_string(kind) << " Phv";
    EXPECT_LT(err[2], 1e-9) << to_string(kind) << " Qv";
  }
}

TEST_P(FrameAgreement, TorsionBlocks) {
  const auto kind = GetParam();
  const TangentPoint p({0.3, -0.2, 0.1}, {1, 0.4, -0.6});
  const auto E = energy("randers", 3);
  const GeometryJets jets(E, p, 5);
  const auto T = FrameConnection(kind, jets).torsion();
  const auto t = torsion(kind, E, p);
  const int n = 3;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        EXPECT_NEAR(T(n + i, j, k).value(), -t.hh(i, j, k), 1e-12);
        EXPECT_NEAR(T(i, j, k).value(), 0.0, 1e-12);
        EXPECT_NEAR(T(n + i, j, n + k).value(), t.hv_vertical(i, j, k), 1e-12);
        EXPECT_NEAR(T(i, j, n + k).value(), t.hv_horizontal(i, j, k), 1e-12);
        EXPECT_NEAR(T(n + i, n + j, n + k).value(), t.vv(i, j, k), 1e-12);
      }
}

INSTANTIATE_TEST_SUITE_P(AllKinds, FrameAgreement, ::testing::ValuesIn(kAllConnections),
                         [](const auto& info) { return to_string(info.param); });

TEST(Curvature, EuclidVanishes) {
  for (auto k : kAllConnections) {
    const auto c = curvature(k, energy("euclid", 3), TangentPoint({0.1, 0.2, 0.3}, {1, 2, 3}));
    EXPECT_LT(max_abs(c.Rh) + max_abs(c.Phv) + max_abs(c.Qv), 1e-12);
  }
}

TEST(Curvature, QuarticLocallyMinkowski) {
  // v-curvature vanishes identically in dimension 2, so use n = 3.
  const TangentPoint p({0.3, -0.4, 0.2}, {1, 0.7, -0.5});
  for (auto k : kAllConnections) {
    const auto c = curvature(k, energy("quartic", 3), p);
    EXPECT_LT(max_abs(c.Rh), 1e-10);
    EXPECT_LT(max_abs(c.Phv), 1e-10);
    if (k == ConnectionKind::Cartan || k == ConnectionKind::Hashiguchi) EXPECT_GT(max_abs(c.Qv), 1e-3);
  }
}

TEST(Curvature, CartanAndHashiguchiShareQ) {
  const auto E = energy("randers", 3);
  const TangentPoint p({0.5, 0.1, -0.2}, {-0.3, 1, 0.8});
  EXPECT_LT(max_abs_diff(curvature(ConnectionKind::Cartan, E, p).Qv, curvature(ConnectionKind::Hashiguchi, E, p).Qv),
            1e-12);
}

TEST(CovariantDerivative, TableTwoExamples) {
  const auto E = energy("randers", 3);
  const TangentPoint p({0.2, 0.2, -0.1}, {1, -0.6, 0.3});
  const int n = 3;
  const AdaptedFieldTM dot1 = [](const GeometryJets&) {
    std::vector<Taylor> v(6, Taylor(0.0));
    v[3] = Taylor(1.0);
    return v;
  };
  for (double c : covariant_derivative(ConnectionKind::Berwald, E, dot1, n + 1, p)) EXPECT_EQ(c, 0.0);
  const AdaptedFieldTM liouville = [](const GeometryJets& jets) {
    std::vector<Taylor> v(6, Taylor(0.0));
    for (int i = 0; i < 3; ++i) v[static_cast<std::size_t>(3 + i)] = jets.y(i);
    return v;
  };
  for (int j = 0; j < n; ++j) {
    for (double c : covariant_derivative(ConnectionKind::Hashiguchi, E, liouville, j, p)) EXPECT_NEAR(c, 0.0, 1e-12);
    const auto v = covariant_derivative(ConnectionKind::Hashiguchi, E, liouville, n + j, p);
    for (int a = 0; a < 2 * n; ++a) EXPECT_NEAR(v[static_cast<std::size_t>(a)], a == n + j ? 1.0 : 0.0, 1e-12);
  }
}

TEST(CovariantDerivative, HorizontalDerivativeOfCOnlyForCartanTypes) {
  const auto E = energy("randers");
  const TangentPoint p({0.1, 0.1}, {1, 0.5});
  EXPECT_THROW(horizontal_cov_deriv_C(ConnectionKind::Berwald, E, p), BadParams);
  EXPECT_LT(max_abs(horizontal_cov_deriv_C(ConnectionKind::Cartan, energy("polar"), TangentPoint({1, 0}, {1, 1}))),
            1e-12);
}

TEST(CovariantDerivative, LiouvilleOnHashiguchiCurvature) {
  const auto E = energy("randers", 3);
  const TangentPoint p({0.2, -0.3, 0.1}, {0.8, 0.3, -1});
  const GeometryJets jets(E, p, 6);
  const auto c = local_coefficients(ConnectionKind::Hashiguchi, jets);
  const auto k = local_curvature(ConnectionKind::Hashiguchi, jets);
  const auto dR = values(component_cov_deriv_liouville(k.Rh, c, jets));
  const auto dQ = values(component_cov_deriv_liouville(k.Qv, c, jets));
  const auto dP = values(component_cov_deriv_liouville(k.Phv, c, jets));
  const auto Q = values(k.Qv);
  const auto P = values(k.Phv);
  EXPECT_LT(max_abs(dR), 1e-9);
  for (std::size_t a = 0; a < Q.size(); ++a) {
    EXPECT_NEAR(dQ.flat()[a], -2.0 * Q.flat()[a], 1e-9);
    EXPECT_NEAR(dP.flat()[a], -P.flat()[a], 1e-9);
  }
}

}  // namespace
}  // namespace finsler
