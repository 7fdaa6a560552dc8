#pragma once

#include <vector>

#include "finsler/jets.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

struct MetricData {
  Tensor<double> g;      // g_ij = d.i d.j E
  Tensor<double> g_inv;  // g^ij
  TangentPoint at;
};

struct SprayData {
  std::vector<double> G;  // G^h
  Tensor<double> N;       // N^h_i   (h, i)
  Tensor<double> Gc;      // G^h_ij  (h, i, j)
  Tensor<double> Gc3;     // G^i_hjk (i, h, j, k)
};

/// Natural-frame matrices over (d_1..d_n, d.1..d.n); entry (a, b) is the a-th
/// component of the image of the b-th frame vector.
struct FrameData {
  std::vector<std::vector<double>> delta;  // delta[i] = components of delta_i
  Tensor<double> h;
  Tensor<double> v;
  Tensor<double> F;
};

struct BarthelCurvature {
  Tensor<double> R;  // R^i_jk (i, j, k)
};

/// Taylor expansions at a point of every object derived from the energy. The
/// energy is expanded to `order`; each later stage loses the derivatives it
/// consumes, so with order K:
///
///   g, g_inv, G  K-2    N  K-3    Gc, C, Gamma  K-3 / K-4 / K-3
///   Gc3  K-5    R, C'  K-4
///
/// Stages whose order would drop below zero are left empty. The default
/// order 6 leaves first derivatives on every curvature assembled from these.
class GeometryJets {
 public:
  /// Throws SingularMetric when cond(g) > 1e12 at the point.
  GeometryJets(const ScalarField& energy, const TangentPoint& p, int order = kMaxTableOrder);

  int dim() const noexcept { return n_; }
  int order() const noexcept { return order_; }
  const TangentPoint& point() const noexcept { return p_; }

  /// Exact derivative along d_i (x) and d.i (y).
  Taylor dx(const Taylor& f, int i) const { return f.derivative(x_var(i)); }
  Taylor dy(const Taylor& f, int i) const { return f.derivative(y_var(n_, i)); }
  /// delta_i f = d_i f - N^h_i d.h f.
  Taylor delta(const Taylor& f, int i) const;

  /// The coordinate function y^i as a jet.
  const Taylor& y(int i) const { return coords_[static_cast<std::size_t>(n_ + i)]; }
  const Taylor& x(int i) const { return coords_[static_cast<std::size_t>(i)]; }

  Taylor E;
  Tensor<Taylor> g;      // (i, j)
  Tensor<Taylor> g_inv;  // (i, j)
  Tensor<Taylor> G;      // (h)
  Tensor<Taylor> N;      // (h, i)
  Tensor<Taylor> Gc;     // (h, i, j)
  Tensor<Taylor> Gc3;    // (i, h, j, k) = d.k G^i_hj
  Tensor<Taylor> R;      // (i, j, k)
  Tensor<Taylor> C;      // (h, i, j) = 1/2 g^hl d.i g_lj
  Tensor<Taylor> Gamma;  // (h, i, j)
  Tensor<Taylor> Cprime; // (h, i, j) = Gamma - Gc

 private:
  int n_;
  int order_;
  TangentPoint p_;
  std::vector<Taylor> coords_;
};

/// Values (order-0 coefficients) of a jet-valued tensor.
Tensor<double> values(const Tensor<Taylor>& t);

/// Inverse of a symmetric jet matrix by Gauss-Jordan elimination with
/// pivoting on the values. Throws SingularMetric above condition 1e12.
Tensor<Taylor> invert_metric(const Tensor<Taylor>& g);

/// 2-norm condition number of a square matrix.
double condition_number(const Tensor<double>& m);

MetricData metric(const ScalarField& E, const TangentPoint& p);

/// Omega over the natural frame: entry (a, b) = Omega(e_a, e_b).
Tensor<double> fundamental_form(const ScalarField& E, const TangentPoint& p);

/// Spray data with only G filled.
SprayData spray(const ScalarField& E, const TangentPoint& p);

/// Spray data with G, N, Gc and Gc3 filled.
SprayData nonlinear_connection(const ScalarField& E, const TangentPoint& p);

FrameData frame(const ScalarField& E, const TangentPoint& p);

/// F in the natural frame from its closed coordinate form:
///   F(d_i) = N^j_i d_j - N^h_i N^j_h d.j - d.i,   F(d.i) = d_i - N^h_i d.h.
Tensor<double> coordinate_almost_complex(const Tensor<double>& N);

BarthelCurvature barthel_curvature(const ScalarField& E, const TangentPoint& p);

}  // namespace finsler
