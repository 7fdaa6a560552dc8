#include "finsler/geometry.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "finsler/errors.hpp"

namespace finsler {

namespace {

constexpr double kMaxCondition = 1e12;

Eigen::MatrixXd to_eigen(const Tensor<double>& m) {
  const int n = m.extent();
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = m(i, j);
  }
  return out;
}

Tensor<double> from_eigen(const Eigen::MatrixXd& m) {
  Tensor<double> out(static_cast<int>(m.rows()), 2);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  }
  return out;
}

}  // namespace

Tensor<double> values(const Tensor<Taylor>& t) {
  return t.map([](const Taylor& v) { return v.value(); });
}

double condition_number(const Tensor<double>& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  return smin == 0.0 ? INFINITY : s(0) / smin;
}

Tensor<Taylor> invert_metric(const Tensor<Taylor>& g) {
  const int n = g.extent();
  const double cond = condition_number(values(g));
  if (!(cond <= kMaxCondition)) {
    throw SingularMetric("fundamental tensor is singular (condition " + std::to_string(cond) + ")");
  }
  Tensor<Taylor> a = g;
  Tensor<Taylor> inv(n, 2, Taylor(0.0));
  for (int i = 0; i < n; ++i) inv(i, i) = Taylor(1.0);
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a(r, c).value()) > std::abs(a(pivot, c).value())) pivot = r;
    }
    if (pivot != c) {
      for (int k = 0; k < n; ++k) {
        std::swap(a(c, k), a(pivot, k));
        std::swap(inv(c, k), inv(pivot, k));
      }
    }
    const Taylor scale = 1.0 / a(c, c);
    for (int k = 0; k < n; ++k) {
      a(c, k) = a(c, k) * scale;
      inv(c, k) = inv(c, k) * scale;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const Taylor f = a(r, c);
      for (int k = 0; k < n; ++k) {
        a(r, k) -= f * a(c, k);
        inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

GeometryJets::GeometryJets(const ScalarField& energy, const TangentPoint& p, int order)
    : n_(p.dim()), order_(order), p_(p), coords_(coordinate_jets(p, order)) {
  const int n = n_;
  E = energy.expand(p, order);
  if (order < 2) return;

  std::vector<Taylor> Ey(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) Ey[static_cast<std::size_t>(i)] = dy(E, i);

  g = Tensor<Taylor>(n, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // Symmetric by construction: compute once and mirror.
      g(i, j) = j < i ? g(j, i) : dy(Ey[static_cast<std::size_t>(i)], j);
    }
  }
  g_inv = invert_metric(g);

  // G^h = 1/2 g^hr (y^s d_s d.r E - d_r E)
  std::vector<Taylor> rhs(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    Taylor s = -dx(E, r);
    for (int k = 0; k < n; ++k) s += y(k) * dx(Ey[static_cast<std::size_t>(r)], k);
    rhs[static_cast<std::size_t>(r)] = s;
  }
  G = Tensor<Taylor>(n, 1);
  for (int h = 0; h < n; ++h) {
    Taylor s(0.0);
    for (int r = 0; r < n; ++r) s += g_inv(h, r) * rhs[static_cast<std::size_t>(r)];
    G(h) = 0.5 * s;
  }
  if (order < 3) return;

  N = Tensor<Taylor>(n, 2);
  for (int h = 0; h < n; ++h) {
    for (int i = 0; i < n; ++i) N(h, i) = dy(G(h), i);
  }

  C = Tensor<Taylor>(n, 3);
  Gamma = Tensor<Taylor>(n, 3);
  {
    Tensor<Taylor> dg(n, 3);    // (l, j, i) = d.i g_lj
    Tensor<Taylor> deltag(n, 3);  // (l, j, i) = delta_i g_lj
    for (int l = 0; l < n; ++l) {
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
          dg(l, j, i) = dy(g(l, j), i);
          deltag(l, j, i) = delta(g(l, j), i);
        }
      }
    }
    for (int h = 0; h < n; ++h) {
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          Taylor c(0.0);
          Taylor gamma(0.0);
          for (int l = 0; l < n; ++l) {
            c += g_inv(h, l) * dg(l, j, i);
            gamma += g_inv(h, l) * (deltag(l, j, i) + deltag(i, l, j) - deltag(i, j, l));
          }
          C(h, i, j) = C(h, j, i) = 0.5 * c;
          Gamma(h, i, j) = Gamma(h, j, i) = 0.5 * gamma;
        }
      }
    }
  }
  if (order < 4) return;

  Gc = Tensor<Taylor>(n, 3);
  for (int h = 0; h < n; ++h) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) Gc(h, i, j) = dy(N(h, i), j);
    }
  }
  R = Tensor<Taylor>(n, 3);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) R(i, j, k) = delta(N(i, j), k) - delta(N(i, k), j);
    }
  }
  Cprime = Tensor<Taylor>(n, 3);
  for (std::size_t a = 0; a < Cprime.size(); ++a) Cprime.flat()[a] = Gamma.flat()[a] - Gc.flat()[a];
  if (order < 5) return;

  Gc3 = Tensor<Taylor>(n, 4);
  for (int i = 0; i < n; ++i) {
    for (int h = 0; h < n; ++h) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) Gc3(i, h, j, k) = dy(Gc(i, h, j), k);
      }
    }
  }
}

Taylor GeometryJets::delta(const Taylor& f, int i) const {
  Taylor out = dx(f, i);
  for (int h = 0; h < n_; ++h) out -= N(h, i) * dy(f, h);
  return out;
}

MetricData metric(const ScalarField& E, const TangentPoint& p) {
  const GeometryJets jets(E, p, 2);
  return {values(jets.g), values(jets.g_inv), p};
}

Tensor<double> fundamental_form(const ScalarField& E, const TangentPoint& p) {
  const int n = p.dim();
  const Jet jet = eval_jet(E, p, 2);
  Tensor<double> omega(2 * n, 2, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      omega(j, i) = jet.partial({x_var(j), y_var(n, i)}) - jet.partial({x_var(i), y_var(n, j)});
      const double gji = jet.partial({y_var(n, j), y_var(n, i)});
      omega(n + j, i) = gji;
      omega(i, n + j) = -gji;
    }
  }
  return omega;
}

SprayData spray(const ScalarField& E, const TangentPoint& p) {
  const GeometryJets jets(E, p, 2);
  const auto G = values(jets.G);
  return {std::vector<double>(G.flat().begin(), G.flat().end()), {}, {}, {}};
}

SprayData nonlinear_connection(const ScalarField& E, const TangentPoint& p) {
  const GeometryJets jets(E, p, 5);
  const auto G = values(jets.G);
  return {std::vector<double>(G.flat().begin(), G.flat().end()), values(jets.N), values(jets.Gc),
          values(jets.Gc3)};
}

FrameData frame(const ScalarField& E, const TangentPoint& p) {
  const int n = p.dim();
  const GeometryJets jets(E, p, 3);
  const auto N = values(jets.N);

  FrameData out;
  out.delta.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(2 * n), 0.0));
  // Columns of P: the adapted frame (delta_i, d.i) in natural components.
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    auto& d = out.delta[static_cast<std::size_t>(i)];
    d[static_cast<std::size_t>(i)] = 1.0;
    for (int h = 0; h < n; ++h) {
      d[static_cast<std::size_t>(n + h)] = -N(h, i);
      P(n + h, i) = -N(h, i);
    }
  }
  // In the adapted frame h, v and F have constant block form.
  Eigen::MatrixXd h_ad = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  Eigen::MatrixXd F_ad = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    h_ad(i, i) = 1.0;
    F_ad(n + i, i) = -1.0;  // F delta_i = -d.i
    F_ad(i, n + i) = 1.0;   // F d.i = delta_i
  }
  const Eigen::MatrixXd P_inv = P.inverse();
  const Eigen::MatrixXd h = P * h_ad * P_inv;
  out.h = from_eigen(h);
  out.v = from_eigen(Eigen::MatrixXd::Identity(2 * n, 2 * n) - h);
  out.F = from_eigen(P * F_ad * P_inv);
  return out;
}

Tensor<double> coordinate_almost_complex(const Tensor<double>& N) {
  const int n = N.extent();
  Tensor<double> F(2 * n, 2, 0.0);
  for (int i = 0; i < n; ++i) {
    // Column d_i.
    for (int j = 0; j < n; ++j) {
      F(j, i) = N(j, i);
      double nn = 0.0;
      for (int h = 0; h < n; ++h) nn += N(h, i) * N(j, h);
      F(n + j, i) = -nn;
    }
    F(n + i, i) -= 1.0;
    // Column d.i.
    F(i, n + i) = 1.0;
    for (int h = 0; h < n; ++h) F(n + h, n + i) = -N(h, i);
  }
  return F;
}

BarthelCurvature barthel_curvature(const ScalarField& E, const TangentPoint& p) {
  const GeometryJets jets(E, p, 4);
  return {values(jets.R)};
}

}  // namespace finsler
