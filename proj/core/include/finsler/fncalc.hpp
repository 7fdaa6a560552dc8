#pragma once

#include <functional>
#include <vector>

#include "finsler/jets.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

/// Components of a vector field on TM against the natural frame
/// (d_1..d_n, d.1..d.n), expanded as jets at one point.
using LocalField = std::vector<Taylor>;

/// A vector 1-form on TM at one point: entry (a, b) is the a-th component of
/// the image of the b-th natural frame vector.
using LocalForm = Tensor<Taylor>;

/// Fields and forms are functions of the point and a jet order; order 1 is
/// enough for every bracket below.
using VectorFieldTM = std::function<LocalField(const TangentPoint&, int order)>;
using VectorOneFormTM = std::function<LocalForm(const TangentPoint&, int order)>;

// --- jet-level primitives ---------------------------------------------------

/// [a, b]^c = a^d d_d b^c - b^d d_d a^c. The result has one order less.
LocalField bracket(const LocalField& a, const LocalField& b);
LocalField apply_form(const LocalForm& L, const LocalField& v);
LocalField operator+(const LocalField& a, const LocalField& b);
LocalField operator-(const LocalField& a, const LocalField& b);
std::vector<double> values(const LocalField& v);

// --- structures and fields --------------------------------------------------

struct NaturalStructures {
  VectorOneFormTM J;  // J(d_i) = d.i, J(d.i) = 0
  VectorFieldTM C;    // Liouville field y^i d.i
};

NaturalStructures natural_structures(int n);

VectorFieldTM constant_field(std::vector<double> components);
/// The a-th natural frame field (constant components).
VectorFieldTM natural_frame_field(int n, int a);
/// z -> c + D (z - center), with D a 2n x 2n matrix.
VectorFieldTM affine_field(std::vector<double> c, Tensor<double> D, std::vector<double> center);
VectorOneFormTM constant_form(Tensor<double> L);
VectorOneFormTM identity_form(int n);

/// Canonical spray S = y^i d_i - 2 G^h d.h.
VectorFieldTM spray_field(const ScalarField& E);
/// delta_i = d_i - N^h_i d.h.
VectorFieldTM horizontal_frame_field(const ScalarField& E, int i);
/// h, v, Gamma = h - v and F of the Barthel connection.
VectorOneFormTM horizontal_projector(const ScalarField& E);
VectorOneFormTM vertical_projector(const ScalarField& E);
VectorOneFormTM barthel_form(const ScalarField& E);
VectorOneFormTM almost_complex_form(const ScalarField& E);

// --- bracket operations at a point --------------------------------------------

std::vector<double> bracket(const VectorFieldTM& a, const VectorFieldTM& b, const TangentPoint& at);

/// [zeta, L] as a matrix: column b is [zeta, L e_b] - L[zeta, e_b].
Tensor<double> fn_bracket_vf_form(const VectorFieldTM& zeta, const VectorOneFormTM& L, const TangentPoint& at);

/// [K, L](zeta, eta) =  [K zeta, L eta] + [L zeta, K eta] + (KL + LK)[zeta, eta]
///                    - K[L zeta, eta] - K[zeta, L eta] - L[K zeta, eta] - L[zeta, K eta]
std::vector<double> fn_bracket_forms(const VectorOneFormTM& K, const VectorOneFormTM& L, const VectorFieldTM& zeta,
                                     const VectorFieldTM& eta, const TangentPoint& at);

/// N_K(zeta, eta) = [K zeta, K eta] + K^2 [zeta, eta] - K[K zeta, eta] - K[zeta, K eta].
std::vector<double> nijenhuis(const VectorOneFormTM& K, const VectorFieldTM& zeta, const VectorFieldTM& eta,
                              const TangentPoint& at);

/// L_zeta f = zeta^a d_a f.
double lie_scalar(const VectorFieldTM& zeta, const ScalarField& f, const TangentPoint& at);

}  // namespace finsler
