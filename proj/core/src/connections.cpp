#include "finsler/connections.hpp"

#include <algorithm>
#include <cctype>

#include "finsler/errors.hpp"

namespace finsler {

namespace {

bool is_zero(const Taylor& t) { return t.is_constant() && t.value() == 0.0; }

// a * b skipping structural zeros, which dominate the frame tensors.
void add_product(Taylor& acc, const Taylor& a, const Taylor& b, double s = 1.0) {
  if (is_zero(a) || is_zero(b)) return;
  if (s == 1.0) {
    acc += a * b;
  } else {
    acc += s * (a * b);
  }
}

Tensor<Taylor> zero_tensor(int n, int rank) { return Tensor<Taylor>(n, rank, Taylor(0.0)); }

// Anti-symmetrization in the last two indices of a rank-4 tensor.
Tensor<Taylor> alternate_jk(const Tensor<Taylor>& t) {
  const int n = t.extent();
  auto out = zero_tensor(n, 4);
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < n; ++h)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) out(i, h, j, k) = t(i, h, j, k) - t(i, h, k, j);
  return out;
}

// A{delta_k H^i_hj + H^m_hj H^i_mk}
Tensor<Taylor> horizontal_curvature_core(const GeometryJets& jets, const Tensor<Taylor>& H) {
  const int n = jets.dim();
  auto t = zero_tensor(n, 4);
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < n; ++h)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Taylor s = jets.delta(H(i, h, j), k);
          for (int m = 0; m < n; ++m) add_product(s, H(m, h, j), H(i, m, k));
          t(i, h, j, k) = s;
        }
  return alternate_jk(t);
}

// C^i_hm R^m_jk
Tensor<Taylor> c_times_r(const GeometryJets& jets) {
  const int n = jets.dim();
  auto t = zero_tensor(n, 4);
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < n; ++h)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int m = 0; m < n; ++m) add_product(t(i, h, j, k), jets.C(i, h, m), jets.R(m, j, k));
  return t;
}

// A{C^m_hk C^i_mj}
Tensor<Taylor> vertical_curvature(const GeometryJets& jets) {
  const int n = jets.dim();
  auto t = zero_tensor(n, 4);
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < n; ++h)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int m = 0; m < n; ++m) add_product(t(i, h, j, k), jets.C(m, h, k), jets.C(i, m, j));
  return alternate_jk(t);
}

Tensor<double> tensor_values(const Tensor<Taylor>& t) { return values(t); }

}  // namespace

std::string to_string(ConnectionKind kind) {
  switch (kind) {
    case ConnectionKind::Berwald:
      return "berwald";
    case ConnectionKind::Cartan:
      return "cartan";
    case ConnectionKind::Chern:
      return "chern";
    case ConnectionKind::Hashiguchi:
      return "hashiguchi";
  }
  return "unknown";
}

ConnectionKind parse_connection_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (auto kind : kAllConnections) {
    if (to_string(kind) == lower) return kind;
  }
  throw BadParams("unknown connection '" + std::string(name) + "'");
}

LocalCoefficients local_coefficients(ConnectionKind kind, const GeometryJets& jets) {
  const int n = jets.dim();
  const bool vertical = kind == ConnectionKind::Cartan || kind == ConnectionKind::Hashiguchi;
  const bool gamma = kind == ConnectionKind::Cartan || kind == ConnectionKind::Chern;
  return {vertical ? jets.C : zero_tensor(n, 3), gamma ? jets.Gamma : jets.Gc};
}

Tensor<Taylor> component_cov_deriv(const Tensor<Taylor>& A, const LocalCoefficients& c, const GeometryJets& jets,
                                   int direction) {
  const int n = jets.dim();
  if (direction < 0 || direction >= 2 * n) throw BadParams("adapted frame index out of range");
  const bool horizontal = direction < n;
  const int e = horizontal ? direction : direction - n;
  const Tensor<Taylor>& w = horizontal ? c.H : c.V;
  const int rank = A.rank();
  Tensor<Taylor> out(n, rank);
  std::vector<int> idx(static_cast<std::size_t>(rank));
  std::vector<int> tmp(static_cast<std::size_t>(rank));
  for (std::size_t pos = 0; pos < A.size(); ++pos) {
    A.unflatten(pos, idx);
    Taylor s = horizontal ? jets.delta(A.flat()[pos], e) : jets.dy(A.flat()[pos], e);
    for (int m = 0; m < n; ++m) {
      tmp = idx;
      tmp[0] = m;
      add_product(s, w(idx[0], m, e), A.at(tmp));
      for (int slot = 1; slot < rank; ++slot) {
        tmp = idx;
        tmp[static_cast<std::size_t>(slot)] = m;
        add_product(s, w(m, idx[static_cast<std::size_t>(slot)], e), A.at(tmp), -1.0);
      }
    }
    out.flat()[pos] = s;
  }
  return out;
}

Tensor<Taylor> component_cov_deriv_liouville(const Tensor<Taylor>& A, const LocalCoefficients& c,
                                             const GeometryJets& jets) {
  const int n = jets.dim();
  Tensor<Taylor> out(n, A.rank(), Taylor(0.0));
  for (int m = 0; m < n; ++m) {
    const auto d = component_cov_deriv(A, c, jets, n + m);
    for (std::size_t pos = 0; pos < out.size(); ++pos) out.flat()[pos] += jets.y(m) * d.flat()[pos];
  }
  return out;
}

Tensor<Taylor> local_horizontal_cov_deriv_C(const GeometryJets& jets, const Tensor<Taylor>& H) {
  const int n = jets.dim();
  const LocalCoefficients c{zero_tensor(n, 3), H};
  Tensor<Taylor> out(n, 4);
  for (int j = 0; j < n; ++j) {
    const auto d = component_cov_deriv(jets.C, c, jets, j);
    for (int i = 0; i < n; ++i)
      for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k) out(i, h, k, j) = d(i, h, k);
  }
  return out;
}

LocalCurvature local_curvature(ConnectionKind kind, const GeometryJets& jets) {
  const int n = jets.dim();
  LocalCurvature out{zero_tensor(n, 4), zero_tensor(n, 4), zero_tensor(n, 4)};
  switch (kind) {
    case ConnectionKind::Berwald:
      out.Rh = horizontal_curvature_core(jets, jets.Gc);
      out.Phv = jets.Gc3;
      break;
    case ConnectionKind::Chern: {
      out.Rh = horizontal_curvature_core(jets, jets.Gamma);
      for (int i = 0; i < n; ++i)
        for (int h = 0; h < n; ++h)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) out.Phv(i, h, j, k) = jets.dy(jets.Gamma(i, h, j), k);
      break;
    }
    case ConnectionKind::Hashiguchi: {
      out.Rh = horizontal_curvature_core(jets, jets.Gc);
      const auto cr = c_times_r(jets);
      for (std::size_t a = 0; a < cr.size(); ++a) out.Rh.flat()[a] += cr.flat()[a];
      const auto cd = local_horizontal_cov_deriv_C(jets, jets.Gc);
      for (int i = 0; i < n; ++i)
        for (int h = 0; h < n; ++h)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) out.Phv(i, h, j, k) = jets.Gc3(i, h, j, k) - cd(i, h, k, j);
      out.Qv = vertical_curvature(jets);
      break;
    }
    case ConnectionKind::Cartan: {
      out.Rh = horizontal_curvature_core(jets, jets.Gamma);
      const auto cr = c_times_r(jets);
      for (std::size_t a = 0; a < cr.size(); ++a) out.Rh.flat()[a] += kCartanCurvatureSign * cr.flat()[a];
      const auto cd = local_horizontal_cov_deriv_C(jets, jets.Gamma);
      // P^m_jk = G^m_jk - Gamma^m_jk
      for (int i = 0; i < n; ++i)
        for (int h = 0; h < n; ++h)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
              Taylor s = jets.dy(jets.Gamma(i, h, j), k) - cd(i, h, k, j);
              for (int m = 0; m < n; ++m) add_product(s, jets.C(i, h, m), -1.0 * jets.Cprime(m, j, k));
              out.Phv(i, h, j, k) = s;
            }
      out.Qv = vertical_curvature(jets);
      break;
    }
  }
  return out;
}

// --- FrameConnection -------------------------------------------------------------

FrameConnection::FrameConnection(ConnectionKind kind, const GeometryJets& jets)
    : n_(jets.dim()), jets_(&jets), coeffs_(local_coefficients(kind, jets)) {
  const int n = n_;
  omega_ = zero_tensor(2 * n, 3);
  structure_ = zero_tensor(2 * n, 3);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        omega_(k, i, j) = coeffs_.H(k, i, j);
        omega_(n + k, n + i, j) = coeffs_.H(k, i, j);
        omega_(n + k, n + i, n + j) = coeffs_.V(k, i, j);
        omega_(k, i, n + j) = coeffs_.V(k, i, j);
      }
  for (int h = 0; h < n; ++h)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // [delta_j, delta_k] = R^h_jk d.h,   [delta_j, d.k] = G^h_jk d.h
        structure_(n + h, j, k) = jets.R(h, j, k);
        structure_(n + h, j, n + k) = jets.Gc(h, j, k);
        structure_(n + h, n + k, j) = -jets.Gc(h, j, k);
      }
}

Taylor FrameConnection::frame_derivative(const Taylor& f, int A) const {
  return A < n_ ? jets_->delta(f, A) : jets_->dy(f, A - n_);
}

Tensor<Taylor> FrameConnection::torsion() const {
  const int m = 2 * n_;
  auto T = zero_tensor(m, 3);
  for (int C = 0; C < m; ++C)
    for (int A = 0; A < m; ++A)
      for (int B = 0; B < m; ++B) T(C, A, B) = omega_(C, B, A) - omega_(C, A, B) - structure_(C, A, B);
  return T;
}

Tensor<Taylor> FrameConnection::curvature() const {
  const int m = 2 * n_;
  auto K = zero_tensor(m, 4);
  for (int F = 0; F < m; ++F)
    for (int C = 0; C < m; ++C)
      for (int A = 0; A < m; ++A)
        for (int B = 0; B < m; ++B) {
          Taylor s(0.0);
          if (!is_zero(omega_(F, C, B))) s += frame_derivative(omega_(F, C, B), A);
          if (!is_zero(omega_(F, C, A))) s -= frame_derivative(omega_(F, C, A), B);
          for (int E = 0; E < m; ++E) {
            add_product(s, omega_(E, C, B), omega_(F, E, A));
            add_product(s, omega_(E, C, A), omega_(F, E, B), -1.0);
            add_product(s, structure_(E, A, B), omega_(F, C, E), -1.0);
          }
          K(F, C, A, B) = s;
        }
  return K;
}

Tensor<Taylor> FrameConnection::covariant_derivative(const Tensor<Taylor>& t, int upper, int direction) const {
  const int m = 2 * n_;
  if (direction < 0 || direction >= m) throw BadParams("adapted frame index out of range");
  const int rank = t.rank();
  Tensor<Taylor> out(m, rank);
  std::vector<int> idx(static_cast<std::size_t>(rank));
  std::vector<int> tmp(static_cast<std::size_t>(rank));
  for (std::size_t pos = 0; pos < t.size(); ++pos) {
    t.unflatten(pos, idx);
    Taylor s = is_zero(t.flat()[pos]) ? Taylor(0.0) : frame_derivative(t.flat()[pos], direction);
    for (int M = 0; M < m; ++M) {
      for (int slot = 0; slot < rank; ++slot) {
        tmp = idx;
        tmp[static_cast<std::size_t>(slot)] = M;
        if (slot < upper) {
          add_product(s, omega_(idx[static_cast<std::size_t>(slot)], M, direction), t.at(tmp));
        } else {
          add_product(s, omega_(M, idx[static_cast<std::size_t>(slot)], direction), t.at(tmp), -1.0);
        }
      }
    }
    out.flat()[pos] = s;
  }
  return out;
}

std::vector<Taylor> FrameConnection::covariant_derivative(const std::vector<Taylor>& X, int direction) const {
  const int m = 2 * n_;
  if (static_cast<int>(X.size()) != m) throw BadParams("adapted field of wrong dimension");
  Tensor<Taylor> t(m, 1);
  for (int a = 0; a < m; ++a) t(a) = X[static_cast<std::size_t>(a)];
  const auto d = covariant_derivative(t, 1, direction);
  return {d.flat().begin(), d.flat().end()};
}

Tensor<Taylor> FrameConnection::frame_metric() const {
  auto G = zero_tensor(2 * n_, 2);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      G(i, j) = jets_->g(i, j);
      G(n_ + i, n_ + j) = jets_->g(i, j);
    }
  return G;
}

// --- per-point operations -------------------------------------------------------------

CartanTensor cartan_tensor_first(const ScalarField& E, const TangentPoint& p) {
  const GeometryJets jets(E, p, 3);
  const int n = jets.dim();
  CartanTensor out{tensor_values(jets.C), Tensor<double>(n, 3, 0.0)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out.lowered(i, j, k) += jets.g(k, l).value() * out.upper(l, i, j);
  return out;
}

Tensor<double> cartan_coeffs(const ScalarField& E, const TangentPoint& p) {
  return tensor_values(GeometryJets(E, p, 4).Gamma);
}

Tensor<double> cartan_tensor_second(const ScalarField& E, const TangentPoint& p) {
  return tensor_values(GeometryJets(E, p, 4).Cprime);
}

ConnectionCoefficients coefficients(ConnectionKind kind, const ScalarField& E, const TangentPoint& p) {
  const GeometryJets jets(E, p, 4);
  const auto c = local_coefficients(kind, jets);
  return {kind, tensor_values(c.V), tensor_values(c.H), p};
}

std::vector<double> covariant_derivative(ConnectionKind kind, const ScalarField& E, const AdaptedFieldTM& X,
                                         int direction, const TangentPoint& at) {
  const GeometryJets jets(E, at, 5);
  const FrameConnection D(kind, jets);
  const auto d = D.covariant_derivative(X(jets), direction);
  std::vector<double> out(d.size());
  for (std::size_t a = 0; a < d.size(); ++a) out[a] = d[a].value();
  return out;
}

TorsionComponents torsion(ConnectionKind kind, const ScalarField& E, const TangentPoint& p) {
  const GeometryJets jets(E, p, 4);
  const int n = jets.dim();
  const auto c = local_coefficients(kind, jets);
  TorsionComponents out{tensor_values(jets.R), Tensor<double>(n, 3, 0.0), Tensor<double>(n, 3, 0.0),
                        Tensor<double>(n, 3, 0.0)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        out.hv_vertical(i, j, k) = c.H(i, k, j).value() - jets.Gc(i, k, j).value();
        out.hv_horizontal(i, j, k) = -c.V(i, j, k).value();
      }
  return out;
}

CurvatureComponents curvature(ConnectionKind kind, const ScalarField& E, const TangentPoint& p) {
  const GeometryJets jets(E, p, 5);
  const auto k = local_curvature(kind, jets);
  return {tensor_values(k.Rh), tensor_values(k.Phv), tensor_values(k.Qv)};
}

Tensor<double> horizontal_cov_deriv_C(ConnectionKind kind, const ScalarField& E, const TangentPoint& p) {
  if (kind != ConnectionKind::Cartan && kind != ConnectionKind::Hashiguchi) {
    throw BadParams("the horizontal derivative of C is defined for cartan and hashiguchi only");
  }
  const GeometryJets jets(E, p, 5);
  return tensor_values(local_horizontal_cov_deriv_C(jets, local_coefficients(kind, jets).H));
}

Tensor<double> cov_deriv_curvature(ConnectionKind kind, CurvatureBlock which, int direction, const ScalarField& E,
                                   const TangentPoint& p) {
  const GeometryJets jets(E, p, 6);
  const auto k = local_curvature(kind, jets);
  const Tensor<Taylor>& block = which == CurvatureBlock::Rh ? k.Rh : which == CurvatureBlock::Phv ? k.Phv : k.Qv;
  return tensor_values(component_cov_deriv(block, local_coefficients(kind, jets), jets, direction));
}

}  // namespace finsler
