#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "finsler/geometry.hpp"

namespace finsler {

enum class ConnectionKind { Berwald, Cartan, Chern, Hashiguchi };

inline constexpr std::array<ConnectionKind, 4> kAllConnections = {
    ConnectionKind::Berwald, ConnectionKind::Cartan, ConnectionKind::Chern, ConnectionKind::Hashiguchi};

std::string to_string(ConnectionKind kind);
/// "berwald", "cartan", "chern" or "hashiguchi"; throws BadParams otherwise.
ConnectionKind parse_connection_kind(std::string_view name);

/// Sign of the C^i_hm R^m_jk term in the Cartan h-curvature local formula.
/// +1 agrees with the curvature computed from the frame connection; the suite
/// checks this choice against that definition.
inline constexpr double kCartanCurvatureSign = +1.0;

/// Coefficients in the adapted frame:
///   D_{delta_j} delta_i = H^k_ij delta_k,   D_{delta_j} d.i = H^k_ij d.k,
///   D_{d.j} d.i = V^k_ij d.k,               D_{d.j} delta_i = V^k_ij delta_k.
/// (V, H) = (0, Gc) Berwald, (C, Gc) Hashiguchi, (0, Gamma) Chern, (C, Gamma) Cartan.
struct ConnectionCoefficients {
  ConnectionKind kind;
  Tensor<double> V;  // (k, i, j)
  Tensor<double> H;  // (k, i, j)
  TangentPoint at;
};

/// Torsion in the adapted frame:
///   T(delta_j, delta_k) = -hh^i_jk d.i                      (hh = R^i_jk)
///   T(delta_j, d.k)     = hv_vertical^i_jk d.i + hv_horizontal^i_jk delta_i
///   T(d.j, d.k)         = vv^i_jk d.i
/// so hv is 0 (Berwald), C' - FC (Cartan), C' (Chern), -FC (Hashiguchi).
struct TorsionComponents {
  Tensor<double> hh;             // (i, j, k)
  Tensor<double> hv_vertical;    // (i, j, k) = (H - Gc)^i_kj
  Tensor<double> hv_horizontal;  // (i, j, k) = -V^i_jk
  Tensor<double> vv;             // (i, j, k)
};

/// Curvature blocks with X^i_hjk d.i = K(e_k, e_j) d.h, where (e_k, e_j) is
/// (delta_k, delta_j) for Rh, (d.k, delta_j) for Phv and (d.k, d.j) for Qv.
/// Storage order (i, h, j, k).
struct CurvatureComponents {
  Tensor<double> Rh;
  Tensor<double> Phv;
  Tensor<double> Qv;
};

enum class CurvatureBlock { Rh, Phv, Qv };

// --- jet-level building blocks ------------------------------------------------

struct LocalCoefficients {
  Tensor<Taylor> V;
  Tensor<Taylor> H;
};

struct LocalCurvature {
  Tensor<Taylor> Rh;
  Tensor<Taylor> Phv;
  Tensor<Taylor> Qv;
};

LocalCoefficients local_coefficients(ConnectionKind kind, const GeometryJets& jets);

/// Covariant derivative of a component tensor whose first index is
/// contravariant and the rest covariant, along adapted frame vector
/// `direction` (0..n-1: delta, n..2n-1: d.):
///   (D_e A)^i_{a..} = e A^i_{a..} + w^i_{m e} A^m_{a..} - sum_slots w^m_{a e} A^i_{..m..}
/// with w = H along delta and w = V along d.
Tensor<Taylor> component_cov_deriv(const Tensor<Taylor>& A, const LocalCoefficients& c, const GeometryJets& jets,
                                   int direction);

/// D along the Liouville field: y^m D_{d.m}.
Tensor<Taylor> component_cov_deriv_liouville(const Tensor<Taylor>& A, const LocalCoefficients& c,
                                             const GeometryJets& jets);

/// C^i_hk|j stored (i, h, k, j), horizontal derivative with coefficients H.
Tensor<Taylor> local_horizontal_cov_deriv_C(const GeometryJets& jets, const Tensor<Taylor>& H);

/// Local coordinate formulas for each kind.
LocalCurvature local_curvature(ConnectionKind kind, const GeometryJets& jets);

/// The definitional connection on T(TM) in the adapted frame
/// e = (delta_1..delta_n, d.1..d.n).
class FrameConnection {
 public:
  FrameConnection(ConnectionKind kind, const GeometryJets& jets);

  int dim() const noexcept { return n_; }
  const GeometryJets& jets() const noexcept { return *jets_; }
  const LocalCoefficients& coefficients() const noexcept { return coeffs_; }

  /// (C, A, B): D_{e_B} e_A = omega(C, A, B) e_C.
  const Tensor<Taylor>& omega() const noexcept { return omega_; }
  /// (C, A, B): [e_A, e_B] = c(C, A, B) e_C.
  const Tensor<Taylor>& structure() const noexcept { return structure_; }

  Taylor frame_derivative(const Taylor& f, int A) const;

  /// (C, A, B): T(e_A, e_B) = D_A e_B - D_B e_A - [e_A, e_B].
  Tensor<Taylor> torsion() const;
  /// (F, C, A, B): K(e_A, e_B) e_C = D_A D_B e_C - D_B D_A e_C - D_[A,B] e_C.
  Tensor<Taylor> curvature() const;

  /// Covariant derivative along e_direction of a frame tensor with `upper`
  /// leading contravariant indices (0 or 1) followed by covariant ones.
  Tensor<Taylor> covariant_derivative(const Tensor<Taylor>& t, int upper, int direction) const;

  /// D_{e_direction} X for adapted components X^A.
  std::vector<Taylor> covariant_derivative(const std::vector<Taylor>& X, int direction) const;

  /// The metric diag(g_ij, g_ij) as a (0,2) frame tensor.
  Tensor<Taylor> frame_metric() const;

 private:
  int n_;
  const GeometryJets* jets_;
  LocalCoefficients coeffs_;
  Tensor<Taylor> omega_;
  Tensor<Taylor> structure_;
};

// --- per-point operations ------------------------------------------------------

struct CartanTensor {
  Tensor<double> upper;    // C^k_ij (k, i, j)
  Tensor<double> lowered;  // C_ijk = g_kl C^l_ij... totally symmetric
};

CartanTensor cartan_tensor_first(const ScalarField& E, const TangentPoint& p);
Tensor<double> cartan_coeffs(const ScalarField& E, const TangentPoint& p);
Tensor<double> cartan_tensor_second(const ScalarField& E, const TangentPoint& p);

ConnectionCoefficients coefficients(ConnectionKind kind, const ScalarField& E, const TangentPoint& p);

/// A vector field given by adapted-frame components (a^i against delta_i,
/// b^i against d.i), expanded at a point.
using AdaptedFieldTM = std::function<std::vector<Taylor>(const GeometryJets& jets)>;

/// D_{e_direction} X in adapted components.
std::vector<double> covariant_derivative(ConnectionKind kind, const ScalarField& E, const AdaptedFieldTM& X,
                                         int direction, const TangentPoint& at);

TorsionComponents torsion(ConnectionKind kind, const ScalarField& E, const TangentPoint& p);
CurvatureComponents curvature(ConnectionKind kind, const ScalarField& E, const TangentPoint& p);

/// C^i_hk|j (Cartan, H = Gamma) or C^i_hk*|j (Hashiguchi, H = Gc), stored
/// (i, h, k, j). Throws BadParams for the other kinds.
Tensor<double> horizontal_cov_deriv_C(ConnectionKind kind, const ScalarField& E, const TangentPoint& p);

/// D along an adapted frame vector of one curvature block.
Tensor<double> cov_deriv_curvature(ConnectionKind kind, CurvatureBlock which, int direction, const ScalarField& E,
                                   const TangentPoint& p);

}  // namespace finsler
