#pragma once

#include <span>

#include "finsler/jets.hpp"

namespace finsler {

struct FdOptions {
  /// Base step; 0 picks a default tuned to the derivative order.
  double step = 0.0;
  /// Richardson levels (steps h, h/2, ...); each level removes one even power of h.
  int levels = 0;
};

/// Central-difference oracle for a mixed partial d^alpha f at p, |alpha| <= 4.
///
/// The stencil is the tensor product of one-dimensional central differences
/// (offsets (m/2 - k) h, weights (-1)^k C(m, k)) over the variables in alpha.
/// Its error expands in even powers of h, so each Richardson level with step
/// halving raises the truncation order by two: with L levels the error is
/// O(h^(2L)) plus roundoff of order eps |f| / h^|alpha|.
///
/// Throws OrderTooHigh for |alpha| > 4 and DomainError when the stencil could
/// reach y = 0. Test oracle only; it shares no code with the jet engine.
double fd_partial(const ScalarField& f, const TangentPoint& p, std::span<const int> alpha,
                  const FdOptions& options = {});

}  // namespace finsler
