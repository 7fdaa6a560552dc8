#include "finsler/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <random>

#include "finsler/errors.hpp"
#include "finsler/fd.hpp"
#include "finsler/fncalc.hpp"

namespace finsler {

namespace {

using Kind = ConnectionKind;
using T3 = Tensor<double>;
using T4 = Tensor<double>;

constexpr std::array<Kind, 4> kKinds = kAllConnections;

int kind_index(Kind k) { return static_cast<int>(k); }

double v(const Taylor& t) { return t.value(); }

// Portable uniform in [0, 1): the top 53 bits of the generator output.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

double normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Running max of |value|.
struct MaxAbs {
  double m = 0.0;
  void operator()(double x) { m = std::max(m, std::abs(x)); }
  void operator()(const T3& t) {
    for (double x : t.flat()) (*this)(x);
  }
  void diff(const Tensor<double>& a, const Tensor<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) (*this)(a.flat()[i] - b.flat()[i]);
  }
};

// Vertical-valued semi-basic form of a curvature block: entry (i; j, k, h) is
// the d.i-component of X(delta_j, delta_k) delta_h, i.e. -X^i_hjk.
T4 semibasic(const Tensor<Taylor>& X) {
  const int n = X.extent();
  T4 out(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int h = 0; h < n; ++h) out(i, j, k, h) = -X(i, h, j, k).value();
  return out;
}

struct Blocks {
  T4 Rh, Phv, Qv;
};

// Curvature blocks read off the frame curvature:
// X^i_hjk d.i = K(e_k, e_j) d.h.
Blocks frame_blocks(const Tensor<Taylor>& K, int n) {
  Blocks b{T4(n, 4), T4(n, 4), T4(n, 4)};
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < n; ++h)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          b.Rh(i, h, j, k) = K(n + i, n + h, k, j).value();
          b.Phv(i, h, j, k) = K(n + i, n + h, n + k, j).value();
          b.Qv(i, h, j, k) = K(n + i, n + h, n + k, n + j).value();
        }
  return b;
}

// Semi-basic Hashiguchi data and the covariant derivatives the Bianchi-type
// identities consume. Indices: e = derivative direction, output index first.
struct HashiguchiAlgebra {
  T3 Rf, C;                   // Rfrak(i, a, b) = -R^i_ab, C(k, a, b)
  T4 Rs, Ps, Qs;
  std::vector<T3> DhRf, DvRf;
  std::vector<T4> DhR, DvR, DhP, DvP, DhQ, DvQ;
  T4 DcR, DcP, DcQ;           // along the Liouville field
};

class PointContext {
 public:
  PointContext(const Metric& metric, const TangentPoint& p, std::uint64_t seed, std::size_t index)
      : metric_(&metric), p_(p), n_(p.dim()), seed_(seed), index_(index) {}

  const ScalarField& E() const { return metric_->energy; }
  const TangentPoint& p() const { return p_; }
  int n() const { return n_; }

  std::mt19937_64 rng(std::uint64_t salt) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                      static_cast<std::uint32_t>(index_), static_cast<std::uint32_t>(salt)};
    return std::mt19937_64(seq);
  }

  const GeometryJets& jets() {
    if (!jets_) jets_ = std::make_unique<GeometryJets>(E(), p_, kMaxTableOrder);
    return *jets_;
  }

  const FrameConnection& frame(Kind k) {
    auto& slot = frames_[static_cast<std::size_t>(kind_index(k))];
    if (!slot) slot = std::make_unique<FrameConnection>(k, jets());
    return *slot;
  }

  const Tensor<Taylor>& frame_curvature(Kind k) {
    auto& slot = K_[static_cast<std::size_t>(kind_index(k))];
    if (!slot) slot = frame(k).curvature();
    return *slot;
  }

  const Tensor<Taylor>& frame_torsion(Kind k) {
    auto& slot = T_[static_cast<std::size_t>(kind_index(k))];
    if (!slot) slot = frame(k).torsion();
    return *slot;
  }

  const Blocks& definitional(Kind k) {
    auto& slot = blocks_[static_cast<std::size_t>(kind_index(k))];
    if (!slot) slot = frame_blocks(frame_curvature(k), n_);
    return *slot;
  }

  const LocalCurvature& local(Kind k) {
    auto& slot = local_[static_cast<std::size_t>(kind_index(k))];
    if (!slot) slot = local_curvature(k, jets());
    return *slot;
  }

  const Blocks& local_values(Kind k) {
    auto& slot = local_values_[static_cast<std::size_t>(kind_index(k))];
    if (!slot) {
      const auto& l = local(k);
      slot = Blocks{values(l.Rh), values(l.Phv), values(l.Qv)};
    }
    return *slot;
  }

  const HashiguchiAlgebra& hashiguchi() {
    if (hashi_) return *hashi_;
    const auto& J = jets();
    const auto c = local_coefficients(Kind::Hashiguchi, J);
    const auto& L = local(Kind::Hashiguchi);
    Tensor<Taylor> Rf(n_, 3);
    for (std::size_t a = 0; a < Rf.size(); ++a) Rf.flat()[a] = -J.R.flat()[a];
    HashiguchiAlgebra h;
    h.Rf = values(Rf);
    h.C = values(J.C);
    h.Rs = semibasic(L.Rh);
    h.Ps = semibasic(L.Phv);
    h.Qs = semibasic(L.Qv);
    for (int e = 0; e < n_; ++e) {
      h.DhRf.push_back(values(component_cov_deriv(Rf, c, J, e)));
      h.DvRf.push_back(values(component_cov_deriv(Rf, c, J, n_ + e)));
      h.DhR.push_back(semibasic(component_cov_deriv(L.Rh, c, J, e)));
      h.DvR.push_back(semibasic(component_cov_deriv(L.Rh, c, J, n_ + e)));
      h.DhP.push_back(semibasic(component_cov_deriv(L.Phv, c, J, e)));
      h.DvP.push_back(semibasic(component_cov_deriv(L.Phv, c, J, n_ + e)));
      h.DhQ.push_back(semibasic(component_cov_deriv(L.Qv, c, J, e)));
      h.DvQ.push_back(semibasic(component_cov_deriv(L.Qv, c, J, n_ + e)));
    }
    h.DcR = semibasic(component_cov_deriv_liouville(L.Rh, c, J));
    h.DcP = semibasic(component_cov_deriv_liouville(L.Phv, c, J));
    h.DcQ = semibasic(component_cov_deriv_liouville(L.Qv, c, J));
    hashi_ = std::move(h);
    return *hashi_;
  }

  double y(int i) const { return p_.y()[static_cast<std::size_t>(i)]; }

 private:
  const Metric* metric_;
  TangentPoint p_;
  int n_;
  std::uint64_t seed_;
  std::size_t index_;
  std::unique_ptr<GeometryJets> jets_;
  std::array<std::unique_ptr<FrameConnection>, 4> frames_;
  std::array<std::optional<Tensor<Taylor>>, 4> K_;
  std::array<std::optional<Tensor<Taylor>>, 4> T_;
  std::array<std::optional<Blocks>, 4> blocks_;
  std::array<std::optional<LocalCurvature>, 4> local_;
  std::array<std::optional<Blocks>, 4> local_values_;
  std::optional<HashiguchiAlgebra> hashi_;
};

struct SuiteInput {
  const Metric& metric;
  std::span<const TangentPoint> points;
  std::uint64_t seed;
  int dim;
};

enum class Scope { Points, WitnessPoint, Suite };

using PointEval = std::function<double(PointContext&)>;
using SuiteEval = std::function<double(const SuiteInput&)>;
using SkipRule = std::function<std::optional<std::string>(const SuiteInput&)>;

struct Check {
  CheckSpec spec;
  Scope scope = Scope::Points;
  PointEval eval;
  SuiteEval suite_eval;
  SkipRule skip;
};

// --- skip rules -------------------------------------------------------------

std::optional<std::string> only_riemannian(const SuiteInput& in) {
  if (in.metric.riemannian == true) return std::nullopt;
  return "applies to Riemannian metrics only";
}

std::optional<std::string> only_minkowski(const SuiteInput& in) {
  if (in.metric.locally_minkowski == true) return std::nullopt;
  return "applies to locally Minkowski metrics only";
}

std::optional<std::string> only_non_riemannian_minkowski(const SuiteInput& in) {
  if (in.metric.locally_minkowski != true || in.metric.riemannian != false) {
    return "applies to non-Riemannian locally Minkowski metrics only";
  }
  if (in.dim < 3) return "the v-curvature vanishes identically in dimension 2";
  return std::nullopt;
}

std::optional<std::string> needs_witness(const SuiteInput& in) {
  if (in.metric.witness) return std::nullopt;
  return "metric has no documented witness point";
}

// --- helpers ----------------------------------------------------------------

VectorFieldTM random_affine(std::mt19937_64& rng, const TangentPoint& p) {
  const int m = 2 * p.dim();
  std::vector<double> c(static_cast<std::size_t>(m));
  for (auto& x : c) x = uniform(rng, -1.0, 1.0);
  Tensor<double> D(m, 2);
  for (auto& x : D.flat()) x = uniform(rng, -1.0, 1.0);
  std::vector<double> center(p.x().begin(), p.x().end());
  center.insert(center.end(), p.y().begin(), p.y().end());
  return affine_field(std::move(c), std::move(D), std::move(center));
}

double max_abs_vec(const std::vector<double>& x) {
  double m = 0.0;
  for (double a : x) m = std::max(m, std::abs(a));
  return m;
}

// Frame tensors of the structures every connection must preserve.
Tensor<Taylor> frame_J(int n) {
  Tensor<Taylor> t(2 * n, 2, Taylor(0.0));
  for (int i = 0; i < n; ++i) t(n + i, i) = Taylor(1.0);
  return t;
}
Tensor<Taylor> frame_h(int n) {
  Tensor<Taylor> t(2 * n, 2, Taylor(0.0));
  for (int i = 0; i < n; ++i) t(i, i) = Taylor(1.0);
  return t;
}
Tensor<Taylor> frame_F(int n) {
  Tensor<Taylor> t(2 * n, 2, Taylor(0.0));
  for (int i = 0; i < n; ++i) {
    t(i, n + i) = Taylor(1.0);
    t(n + i, i) = Taylor(-1.0);
  }
  return t;
}

// delta_k g_ij - H^m_ik g_mj - H^m_jk g_im (horizontal) or the same with d.k, V.
double metricity(PointContext& ctx, Kind kind, bool horizontal) {
  const auto& J = ctx.jets();
  const int n = ctx.n();
  const auto c = local_coefficients(kind, J);
  const auto& w = horizontal ? c.H : c.V;
  MaxAbs r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = horizontal ? v(J.delta(J.g(i, j), k)) : v(J.dy(J.g(i, j), k));
        for (int m = 0; m < n; ++m) s -= v(w(m, i, k)) * v(J.g(m, j)) + v(w(m, j, k)) * v(J.g(i, m));
        r(s);
      }
  return r.m;
}

double torsion_table(PointContext& ctx, Kind kind) {
  const auto& J = ctx.jets();
  const int n = ctx.n();
  const auto& T = ctx.frame_torsion(kind);
  const bool has_C = kind == Kind::Cartan || kind == Kind::Hashiguchi;
  const bool has_Cp = kind == Kind::Cartan || kind == Kind::Chern;
  MaxAbs r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // T(h, h) = Rfrak: vertical, -R^i_jk
        r(v(T(n + i, j, k)) + v(J.R(i, j, k)));
        r(v(T(i, j, k)));
        // T(h zeta, J xi) = C'(zeta, xi) - F C(zeta, xi)
        r(v(T(n + i, j, n + k)) - (has_Cp ? v(J.Cprime(i, j, k)) : 0.0));
        r(v(T(i, j, n + k)) + (has_C ? v(J.C(i, j, k)) : 0.0));
        // T(J, J) = 0
        r(v(T(i, n + j, n + k)));
        r(v(T(n + i, n + j, n + k)));
      }
  return r.m;
}

double first_bianchi(PointContext& ctx, Kind kind) {
  const int m = 2 * ctx.n();
  const auto& D = ctx.frame(kind);
  const auto& K = ctx.frame_curvature(kind);
  const auto& T = ctx.frame_torsion(kind);
  std::vector<T3> DT;
  for (int a = 0; a < m; ++a) DT.push_back(values(D.covariant_derivative(T, 1, a)));
  const auto Tv = values(T);
  const auto Kv = values(K);
  MaxAbs r;
  for (int F = 0; F < m; ++F)
    for (int A = 0; A < m; ++A)
      for (int B = 0; B < m; ++B)
        for (int C = 0; C < m; ++C) {
          const int cyc[3][3] = {{A, B, C}, {B, C, A}, {C, A, B}};
          double s = 0.0;
          for (const auto& q : cyc) {
            s += Kv(F, q[2], q[0], q[1]);
            s -= DT[static_cast<std::size_t>(q[0])](F, q[1], q[2]);
            for (int M = 0; M < m; ++M) s -= Tv(M, q[0], q[1]) * Tv(F, M, q[2]);
          }
          r(s);
        }
  return r.m;
}

double second_bianchi(PointContext& ctx, Kind kind) {
  const int m = 2 * ctx.n();
  const auto& D = ctx.frame(kind);
  const auto& K = ctx.frame_curvature(kind);
  std::vector<T4> DK;
  for (int a = 0; a < m; ++a) DK.push_back(values(D.covariant_derivative(K, 1, a)));
  const auto Tv = values(ctx.frame_torsion(kind));
  const auto Kv = values(K);
  MaxAbs r;
  for (int F = 0; F < m; ++F)
    for (int G = 0; G < m; ++G)
      for (int A = 0; A < m; ++A)
        for (int B = 0; B < m; ++B)
          for (int C = 0; C < m; ++C) {
            const int cyc[3][3] = {{A, B, C}, {B, C, A}, {C, A, B}};
            double s = 0.0;
            for (const auto& q : cyc) {
              s += DK[static_cast<std::size_t>(q[0])](F, G, q[1], q[2]);
              for (int M = 0; M < m; ++M) s += Tv(M, q[0], q[1]) * Kv(F, G, M, q[2]);
            }
            r(s);
          }
  return r.m;
}

double axioms(PointContext& ctx, Kind kind) {
  const int n = ctx.n();
  const int m = 2 * n;
  const auto& D = ctx.frame(kind);
  const auto& J = ctx.jets();
  MaxAbs r;
  for (const auto& t : {frame_J(n), frame_h(n), frame_F(n)}) {
    for (int a = 0; a < m; ++a) r(values(D.covariant_derivative(t, 1, a)));
  }
  // D C = v
  std::vector<Taylor> liouville(static_cast<std::size_t>(m), Taylor(0.0));
  for (int i = 0; i < n; ++i) liouville[static_cast<std::size_t>(n + i)] = J.y(i);
  for (int a = 0; a < m; ++a) {
    const auto d = D.covariant_derivative(liouville, a);
    for (int c = 0; c < m; ++c) r(v(d[static_cast<std::size_t>(c)]) - (a >= n && c == a ? 1.0 : 0.0));
  }
  const auto& T = ctx.frame_torsion(kind);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        r(v(T(i, n + j, n + k)));
        r(v(T(n + i, n + j, n + k)));
        switch (kind) {
          case Kind::Berwald:  // T(J zeta, xi) = 0
            r(v(T(i, n + j, k)));
            r(v(T(n + i, n + j, k)));
            break;
          case Kind::Cartan:
          case Kind::Chern:  // J T(h, h) = 0
            r(v(T(i, j, k)));
            break;
          case Kind::Hashiguchi:  // v T(h, J) = 0
            r(v(T(n + i, j, n + k)));
            break;
        }
      }
  return r.m;
}

double curvature_symmetry(PointContext& ctx, Kind kind) {
  const auto& b = ctx.local_values(kind);
  const int n = ctx.n();
  MaxAbs r;
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < n; ++h)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          r(b.Rh(i, h, j, k) + b.Rh(i, h, k, j));
          r(b.Qv(i, h, j, k) + b.Qv(i, h, k, j));
        }
  if (kind == Kind::Berwald || kind == Kind::Chern) r(b.Qv);
  return r.m;
}

double local_vs_definition(PointContext& ctx, Kind kind) {
  const auto& a = ctx.local_values(kind);
  const auto& b = ctx.definitional(kind);
  MaxAbs r;
  r.diff(a.Rh, b.Rh);
  r.diff(a.Phv, b.Phv);
  r.diff(a.Qv, b.Qv);
  return r.m;
}

// Spray contraction of slot `slot` (0, 1, 2) of a semi-basic rank-4 tensor.
T3 contract_y(PointContext& ctx, const T4& X, int slot) {
  const int n = ctx.n();
  T3 out(n, 3, 0.0);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int m = 0; m < n; ++m) {
          const double y = ctx.y(m);
          out(i, a, b) += y * (slot == 0 ? X(i, m, a, b) : slot == 1 ? X(i, a, m, b) : X(i, a, b, m));
        }
  return out;
}

// Checks on the Hashiguchi Bianchi identities, in semi-basic components with
// zeta = delta_a, eta = delta_b, xi = delta_c and the curvature acting on delta_d.
enum class HashiBianchi { AStatement, AProof, B, C, CVertical, D, E, F, G, H };

double hashiguchi_bianchi(PointContext& ctx, HashiBianchi which) {
  const auto& h = ctx.hashiguchi();
  const int n = ctx.n();
  MaxAbs r;
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          const int cyc[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
          switch (which) {
            case HashiBianchi::AStatement:
            case HashiBianchi::AProof: {
              double s = 0.0;
              for (const auto& q : cyc) {
                s += h.Rs(i, q[0], q[1], q[2]);
                if (which == HashiBianchi::AStatement) {
                  for (int m = 0; m < n; ++m) s -= h.Rf(m, q[0], q[1]) * h.C(i, m, q[2]);
                }
              }
              r(s);
              break;
            }
            case HashiBianchi::B: {
              double s = 0.0;
              for (const auto& q : cyc) s += h.Qs(i, q[0], q[1], q[2]);
              r(s);
              break;
            }
            case HashiBianchi::C:
            case HashiBianchi::CVertical: {
              double rhs = 0.0;
              for (int m = 0; m < n; ++m) rhs += h.C(m, a, c) * h.Rf(i, m, b) - h.C(m, b, c) * h.Rf(i, m, a);
              if (which == HashiBianchi::C) {
                double lhs = 0.0;
                for (int m = 0; m < n; ++m) lhs += h.Rf(m, a, b) * h.C(i, m, c);
                r(lhs - rhs);
              } else {
                r(h.Rs(i, a, b, c) - rhs - h.DvRf[static_cast<std::size_t>(c)](i, a, b));
              }
              break;
            }
            case HashiBianchi::D: {
              double s = 0.0;
              for (const auto& q : cyc) s += h.DhRf[static_cast<std::size_t>(q[0])](i, q[1], q[2]);
              r(s);
              break;
            }
            case HashiBianchi::E:
            case HashiBianchi::F:
            case HashiBianchi::G:
            case HashiBianchi::H:
              for (int d = 0; d < n; ++d) {
                const auto ua = static_cast<std::size_t>(a);
                const auto ub = static_cast<std::size_t>(b);
                const auto uc = static_cast<std::size_t>(c);
                double s = 0.0;
                if (which == HashiBianchi::E) {
                  for (const auto& q : cyc) {
                    s += h.DhR[static_cast<std::size_t>(q[0])](i, q[1], q[2], d);
                    for (int m = 0; m < n; ++m) s -= h.Ps(i, q[0], m, d) * h.Rf(m, q[1], q[2]);
                  }
                } else if (which == HashiBianchi::F) {
                  s = h.DhP[ua](i, b, c, d) - h.DhP[ub](i, a, c, d) + h.DvR[uc](i, a, b, d);
                  for (int m = 0; m < n; ++m) {
                    s -= h.C(m, b, c) * h.Rs(i, m, a, d) - h.C(m, a, c) * h.Rs(i, m, b, d) -
                         h.Rf(m, a, b) * h.Qs(i, m, c, d);
                  }
                } else if (which == HashiBianchi::G) {
                  s = h.DhQ[ua](i, b, c, d) - h.DvP[ub](i, a, c, d) + h.DvP[uc](i, a, b, d);
                  for (int m = 0; m < n; ++m) s -= h.C(m, a, b) * h.Ps(i, m, c, d) - h.C(m, c, a) * h.Ps(i, m, b, d);
                } else {
                  for (const auto& q : cyc) s += h.DvQ[static_cast<std::size_t>(q[0])](i, q[1], q[2], d);
                }
                r(s);
              }
              break;
          }
        }
  return r.m;
}

// (D P)(eta, S) along delta_e / d.e; `sign` is the sign in front of P(eta, zeta)
// expected for the vertical direction.
double spray_derivative(PointContext& ctx, bool horizontal, double sign) {
  const auto& h = ctx.hashiguchi();
  const int n = ctx.n();
  MaxAbs r;
  for (int e = 0; e < n; ++e) {
    const auto ue = static_cast<std::size_t>(e);
    const auto P = contract_y(ctx, horizontal ? h.DhP[ue] : h.DvP[ue], 1);
    const auto Q = contract_y(ctx, horizontal ? h.DhQ[ue] : h.DvQ[ue], 1);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
          r(P(i, a, c) - (horizontal ? 0.0 : sign * h.Ps(i, a, e, c)));
          r(Q(i, a, c) - (horizontal ? 0.0 : sign * h.Qs(i, a, e, c)));
        }
  }
  return r.m;
}

double cartan_intrinsic(PointContext& ctx) {
  const auto& J = ctx.jets();
  const int n = ctx.n();
  const auto c = local_coefficients(Kind::Cartan, J);
  const auto Rc = semibasic(ctx.local(Kind::Cartan).Rh);
  const auto Pc = semibasic(ctx.local(Kind::Cartan).Phv);
  const auto Qc = semibasic(ctx.local(Kind::Cartan).Qv);
  const auto Rb = semibasic(ctx.local(Kind::Berwald).Rh);
  const auto Pb = semibasic(ctx.local(Kind::Berwald).Phv);
  const auto C = values(J.C);
  const auto Cp = values(J.Cprime);
  std::vector<T3> DhCp, DhC, DvCp;
  for (int e = 0; e < n; ++e) {
    DhCp.push_back(values(component_cov_deriv(J.Cprime, c, J, e)));
    DhC.push_back(values(component_cov_deriv(J.C, c, J, e)));
    DvCp.push_back(values(component_cov_deriv(J.Cprime, c, J, n + e)));
  }
  MaxAbs r;
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int k = 0; k < n; ++k) {
          const auto ua = static_cast<std::size_t>(a);
          const auto ub = static_cast<std::size_t>(b);
          double R = Rb(i, a, b, k) + DhCp[ua](i, b, k) - DhCp[ub](i, a, k);
          double P = Pb(i, a, b, k) + DhC[ua](i, b, k) - DvCp[ub](i, a, k);
          double Q = 0.0;
          for (int m = 0; m < n; ++m) {
            R += Cp(m, a, k) * Cp(i, m, b) - Cp(m, b, k) * Cp(i, m, a) - J.R(m, a, b).value() * C(i, m, k);
            P += Cp(m, a, k) * C(i, m, b) + Cp(m, a, b) * C(i, m, k) - C(m, b, k) * Cp(i, m, a) -
                 C(m, a, b) * Cp(i, m, k);
            Q += C(m, a, k) * C(i, m, b) - C(m, b, k) * C(i, m, a);
          }
          r(R - Rc(i, a, b, k));
          r(P - Pc(i, a, b, k));
          r(Q - Qc(i, a, b, k));
        }
  return r.m;
}

double cartan_spray(PointContext& ctx) {
  const auto& J = ctx.jets();
  const auto Rc = semibasic(ctx.local(Kind::Cartan).Rh);
  const auto Pc = semibasic(ctx.local(Kind::Cartan).Phv);
  const auto Qc = semibasic(ctx.local(Kind::Cartan).Qv);
  const int n = ctx.n();
  MaxAbs r;
  const auto RS = contract_y(ctx, Rc, 2);
  const auto PS = contract_y(ctx, Pc, 2);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        r(RS(i, a, b) + v(J.R(i, a, b)));
        r(PS(i, a, b) - v(J.Cprime(i, a, b)));
      }
  r(contract_y(ctx, Pc, 0));
  r(contract_y(ctx, Pc, 1));
  for (int s = 0; s < 3; ++s) r(contract_y(ctx, Qc, s));
  return r.m;
}

double hashiguchi_spray(PointContext& ctx) {
  const auto& h = ctx.hashiguchi();
  const int n = ctx.n();
  MaxAbs r;
  const auto RS = contract_y(ctx, h.Rs, 2);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) r(RS(i, a, b) - h.Rf(i, a, b));
  r(contract_y(ctx, h.Ps, 1));
  r(contract_y(ctx, h.Ps, 2));
  for (int s = 0; s < 3; ++s) r(contract_y(ctx, h.Qs, s));
  return r.m;
}

// P<>(S, e)x against `sign` C'(e, x).
double hashiguchi_hv_spray_first(PointContext& ctx, double sign) {
  const auto& h = ctx.hashiguchi();
  const auto& J = ctx.jets();
  const auto PS = contract_y(ctx, h.Ps, 0);
  const int n = ctx.n();
  MaxAbs r;
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) r(PS(i, a, b) - sign * v(J.Cprime(i, a, b)));
  return r.m;
}

// The Lie bracket formulas for the Hashiguchi connection on eta = delta_a,
// xi = delta_b, compared with the frame brackets.
double hashiguchi_brackets(PointContext& ctx) {
  const int n = ctx.n();
  const int m = 2 * n;
  const auto& D = ctx.frame(Kind::Hashiguchi);
  const auto& w = D.omega();
  const auto& c = D.structure();
  const auto& J = ctx.jets();
  MaxAbs r;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<double> ra(static_cast<std::size_t>(m), 0.0), rb = ra, rc = ra;
      for (int k = 0; k < n; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        ra[uk + static_cast<std::size_t>(n)] = v(w(k, b, n + a)) - v(w(k, a, n + b));
        rb[uk + static_cast<std::size_t>(n)] = v(w(k, b, a));
        rb[uk] = -v(w(k, a, n + b)) + v(J.C(k, a, b));
        rc[uk] = v(w(k, b, a)) - v(w(k, a, b));
        rc[uk + static_cast<std::size_t>(n)] = v(J.R(k, a, b));
      }
      for (int C = 0; C < m; ++C) {
        const auto uC = static_cast<std::size_t>(C);
        r(v(c(C, n + a, n + b)) - ra[uC]);
        r(v(c(C, a, n + b)) - rb[uC]);
        r(v(c(C, a, b)) - rc[uC]);
      }
    }
  return r.m;
}

double fd_oracle(const SuiteInput& in) {
  constexpr int kQueries = 100;
  std::mt19937_64 rng(in.seed ^ 0x9e3779b97f4a7c15ULL);
  const int n = in.dim;
  double worst = 0.0;
  for (int q = 0; q < kQueries; ++q) {
    const auto& p = in.points[static_cast<std::size_t>(q) % in.points.size()];
    const int order = 1 + static_cast<int>(rng() % 3);
    MultiIndex alpha(static_cast<std::size_t>(2 * n), 0);
    for (int k = 0; k < order; ++k) ++alpha[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(2 * n))];
    const double jet = eval_jet(in.metric.energy, p, order).partial(alpha);
    const double fd = fd_partial(in.metric.energy, p, alpha);
    worst = std::max(worst, std::abs(jet - fd) / std::max(1.0, std::abs(fd)));
  }
  return worst;
}

// --- registry ----------------------------------------------------------------

std::string kid(const char* prefix, Kind k, const char* suffix) {
  return std::string(prefix) + to_string(k) + suffix;
}

// Stable storage for generated ids/anchors referenced by CheckSpec views.
std::vector<std::unique_ptr<std::string>>& string_pool() {
  static std::vector<std::unique_ptr<std::string>> pool;
  return pool;
}
std::string_view intern(std::string s) {
  string_pool().push_back(std::make_unique<std::string>(std::move(s)));
  return *string_pool().back();
}

std::vector<Check> build_checks() {
  using TC = ToleranceClass;
  using CK = CheckKind;
  std::vector<Check> out;
  auto add = [&](std::string id, std::string anchor, TC tol, PointEval eval, SkipRule skip = {},
                 CK kind = CK::Identity, Scope scope = Scope::Points) {
    out.push_back(Check{{intern(std::move(id)), intern(std::move(anchor)), tol, kind}, scope, std::move(eval), {},
                        std::move(skip)});
  };

  // Natural structures and the spray.
  add("jj.bracket", "[J,J] = 0", TC::Exact, [](PointContext& ctx) {
    auto rng = ctx.rng(1);
    const auto J = natural_structures(ctx.n()).J;
    const auto z = random_affine(rng, ctx.p());
    const auto e = random_affine(rng, ctx.p());
    return std::max(max_abs_vec(fn_bracket_forms(J, J, z, e, ctx.p())), max_abs_vec(nijenhuis(J, z, e, ctx.p())));
  });
  add("jj.nilpotent", "J o J = 0, J C = 0", TC::Strict, [](PointContext& ctx) {
    const auto s = natural_structures(ctx.n());
    const auto J = values(s.J(ctx.p(), 0));
    const int m = J.extent();
    MaxAbs r;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double x = 0.0;
        for (int c = 0; c < m; ++c) x += J(a, c) * J(c, b);
        r(x);
      }
    r(max_abs_vec(values(apply_form(s.J(ctx.p(), 0), s.C(ctx.p(), 0)))));
    return r.m;
  });
  add("jj.liouville", "[C,J] = -J", TC::Exact, [](PointContext& ctx) {
    const auto s = natural_structures(ctx.n());
    auto CJ = fn_bracket_vf_form(s.C, s.J, ctx.p());
    const auto J = values(s.J(ctx.p(), 0));
    MaxAbs r;
    for (std::size_t k = 0; k < J.size(); ++k) r(CJ.flat()[k] + J.flat()[k]);
    return r.m;
  });
  add("barthel.bracket", "Gamma = [J,S]", TC::Oracle, [](PointContext& ctx) {
    const auto SJ = fn_bracket_vf_form(spray_field(ctx.E()), natural_structures(ctx.n()).J, ctx.p());
    // Gamma = 2h - 1 from the nonlinear connection coefficients
    const auto& J = ctx.jets();
    const int n = ctx.n();
    Tensor<double> G(2 * n, 2, 0.0);
    for (int i = 0; i < n; ++i) {
      G(i, i) = 1.0;
      G(n + i, n + i) = -1.0;
      for (int k = 0; k < n; ++k) G(n + k, i) = -2.0 * v(J.N(k, i));
    }
    MaxAbs r;
    for (std::size_t k = 0; k < G.size(); ++k) r(-SJ.flat()[k] - G.flat()[k]);
    return r.m;
  });
  add("spray.semispray", "J[J eta, S] = J eta", TC::Exact, [](PointContext& ctx) {
    auto rng = ctx.rng(2);
    const auto Jl = natural_structures(ctx.n()).J(ctx.p(), 1);
    const auto eta = random_affine(rng, ctx.p())(ctx.p(), 1);
    const auto Jeta = apply_form(Jl, eta);
    const auto lhs = values(apply_form(Jl, bracket(Jeta, spray_field(ctx.E())(ctx.p(), 1))));
    const auto rhs = values(Jeta);
    MaxAbs r;
    for (std::size_t a = 0; a < lhs.size(); ++a) r(lhs[a] - rhs[a]);
    return r.m;
  });
  add("spray.homogeneous", "[C,S] = S", TC::Exact, [](PointContext& ctx) {
    const auto S = spray_field(ctx.E());
    const auto CS = bracket(natural_structures(ctx.n()).C, S, ctx.p());
    const auto s = values(S(ctx.p(), 0));
    MaxAbs r;
    for (std::size_t a = 0; a < s.size(); ++a) r(CS[a] - s[a]);
    return r.m;
  });
  add("spray.euler_lagrange", "i_S Omega = -dE", TC::Exact, [](PointContext& ctx) {
    const auto omega = fundamental_form(ctx.E(), ctx.p());
    const auto S = values(spray_field(ctx.E())(ctx.p(), 0));
    const Jet dE = eval_jet(ctx.E(), ctx.p(), 1);
    const int m = 2 * ctx.n();
    MaxAbs r;
    for (int b = 0; b < m; ++b) {
      double s = dE.partial({b});
      for (int a = 0; a < m; ++a) s += S[static_cast<std::size_t>(a)] * omega(a, b);
      r(s);
    }
    return r.m;
  });

  // Metric and Cartan tensors.
  add("metric.symmetric", "g_ij = g_ji", TC::Strict, [](PointContext& ctx) {
    const auto g = values(ctx.jets().g);
    MaxAbs r;
    for (int i = 0; i < ctx.n(); ++i)
      for (int j = 0; j < ctx.n(); ++j) r(g(i, j) - g(j, i));
    return r.m;
  });
  add("metric.homogeneous", "L_C g_ij = 0", TC::Exact, [](PointContext& ctx) {
    const auto& J = ctx.jets();
    MaxAbs r;
    for (int i = 0; i < ctx.n(); ++i)
      for (int j = 0; j < ctx.n(); ++j) {
        double s = 0.0;
        for (int k = 0; k < ctx.n(); ++k) s += ctx.y(k) * v(J.dy(J.g(i, j), k));
        r(s);
      }
    return r.m;
  });
  for (int second = 0; second < 2; ++second) {
    const std::string name = second ? "cartan.second" : "cartan.first";
    const std::string sym = second ? "C'" : "C";
    add(name + ".symmetric", sym + "_ijk totally symmetric", TC::Exact, [second](PointContext& ctx) {
      const auto& J = ctx.jets();
      const int n = ctx.n();
      const auto& U = second ? J.Cprime : J.C;
      T3 low(n, 3, 0.0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) low(i, j, k) += v(J.g(k, l)) * v(U(l, i, j));
      MaxAbs r;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            r(low(i, j, k) - low(j, i, k));
            r(low(i, j, k) - low(k, j, i));
          }
      return r.m;
    });
    add(name + ".spray", sym + "(eta, S) = 0", TC::Exact, [second](PointContext& ctx) {
      const auto& J = ctx.jets();
      const auto& U = second ? J.Cprime : J.C;
      MaxAbs r;
      for (int k = 0; k < ctx.n(); ++k)
        for (int i = 0; i < ctx.n(); ++i) {
          double s = 0.0;
          for (int j = 0; j < ctx.n(); ++j) s += v(U(k, i, j)) * ctx.y(j);
          r(s);
        }
      return r.m;
    });
  }

  // Barthel connection.
  add("barthel.dhE", "d_h E = 0", TC::Exact, [](PointContext& ctx) {
    const auto& J = ctx.jets();
    MaxAbs r;
    for (int i = 0; i < ctx.n(); ++i) r(v(J.delta(J.E, i)));
    return r.m;
  });
  add("barthel.torsion", "G^h_ij = G^h_ji", TC::Strict, [](PointContext& ctx) {
    const auto Gc = values(ctx.jets().Gc);
    MaxAbs r;
    for (int h = 0; h < ctx.n(); ++h)
      for (int i = 0; i < ctx.n(); ++i)
        for (int j = 0; j < ctx.n(); ++j) r(Gc(h, i, j) - Gc(h, j, i));
    return r.m;
  });
  add("barthel.weak_torsion", "t = [J, Gamma] = 0", TC::Exact, [](PointContext& ctx) {
    const auto J = natural_structures(ctx.n()).J;
    const auto G = barthel_form(ctx.E());
    MaxAbs r;
    for (int a = 0; a < 2 * ctx.n(); ++a)
      for (int b = 0; b < 2 * ctx.n(); ++b)
        r(max_abs_vec(fn_bracket_forms(J, G, natural_frame_field(ctx.n(), a), natural_frame_field(ctx.n(), b),
                                       ctx.p())));
    return r.m;
  });
  add("barthel.homogeneous", "N(x, 2y) = 2 N(x, y)", TC::Exact, [](PointContext& ctx) {
    const auto a = values(ctx.jets().N);
    const auto b = nonlinear_connection(ctx.E(), ctx.p().scaled_fiber(2.0)).N;
    MaxAbs r;
    for (std::size_t k = 0; k < a.size(); ++k) r(b.flat()[k] - 2.0 * a.flat()[k]);
    return r.m;
  });
  add("barthel.homogeneous_bracket", "[C, h] = 0", TC::Exact, [](PointContext& ctx) {
    return max_abs(fn_bracket_vf_form(natural_structures(ctx.n()).C, horizontal_projector(ctx.E()), ctx.p()));
  });
  add("barthel.curvature", "Rfrak = -1/2 [h,h]", TC::Oracle, [](PointContext& ctx) {
    const auto h = horizontal_projector(ctx.E());
    const int n = ctx.n();
    const auto& J = ctx.jets();
    MaxAbs r;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const auto N = nijenhuis(h, natural_frame_field(n, j), natural_frame_field(n, k), ctx.p());
        for (int i = 0; i < n; ++i) {
          r(N[static_cast<std::size_t>(i)]);
          r(N[static_cast<std::size_t>(n + i)] - v(J.R(i, j, k)));
        }
      }
    return r.m;
  });
  add("barthel.curvature_antisymmetric", "R^i_jk = -R^i_kj", TC::Exact, [](PointContext& ctx) {
    const auto R = values(ctx.jets().R);
    MaxAbs r;
    for (int i = 0; i < ctx.n(); ++i)
      for (int j = 0; j < ctx.n(); ++j)
        for (int k = 0; k < ctx.n(); ++k) r(R(i, j, k) + R(i, k, j));
    return r.m;
  });
  add("barthel.almost_complex", "F^2 = -1, F(d.i) = delta_i", TC::Exact, [](PointContext& ctx) {
    const auto fr = frame(ctx.E(), ctx.p());
    const auto closed = coordinate_almost_complex(values(ctx.jets().N));
    MaxAbs r;
    r.diff(fr.F, closed);
    const int m = fr.F.extent();
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double s = a == b ? 1.0 : 0.0;
        for (int c = 0; c < m; ++c) s += fr.F(a, c) * fr.F(c, b);
        r(s);
      }
    return r.m;
  });
  add("minkowski.flat", "Rfrak = 0, R = 0, P = 0", TC::Exact, [](PointContext& ctx) {
    MaxAbs r;
    r(values(ctx.jets().R));
    for (auto k : kKinds) {
      r(ctx.local_values(k).Rh);
      r(ctx.local_values(k).Phv);
    }
    return r.m;
  }, only_minkowski);
  add("minkowski.v_curvature", "Q != 0 for Cartan and Hashiguchi", TC::Witness, [](PointContext& ctx) {
    MaxAbs a, b;
    a(ctx.local_values(Kind::Cartan).Qv);
    b(ctx.local_values(Kind::Hashiguchi).Qv);
    return std::min(a.m, b.m);
  }, only_non_riemannian_minkowski, CK::Witness);

  // Linear connections.
  add("connections.coincidence", "C = C' = 0 collapses the four connections", TC::Exact, [](PointContext& ctx) {
    MaxAbs r;
    const auto& ref = ctx.local_values(Kind::Berwald);
    const auto refT = values(ctx.frame_torsion(Kind::Berwald));
    const auto refc = local_coefficients(Kind::Berwald, ctx.jets());
    for (auto k : kKinds) {
      const auto c = local_coefficients(k, ctx.jets());
      r.diff(values(c.V), values(refc.V));
      r.diff(values(c.H), values(refc.H));
      r.diff(values(ctx.frame_torsion(k)), refT);
      r.diff(ctx.local_values(k).Rh, ref.Rh);
      r.diff(ctx.local_values(k).Phv, ref.Phv);
      r.diff(ctx.local_values(k).Qv, ref.Qv);
    }
    return r.m;
  }, only_riemannian);
  struct Process {
    Kind from, to;
    bool vertical;  // (C, 0) if true, (0, C') otherwise
  };
  for (const Process pr : {Process{Kind::Berwald, Kind::Hashiguchi, true}, Process{Kind::Hashiguchi, Kind::Cartan, false},
                           Process{Kind::Berwald, Kind::Chern, false}, Process{Kind::Chern, Kind::Cartan, true}}) {
    add("process." + to_string(pr.to) + "_" + to_string(pr.from),
        to_string(pr.to) + " - " + to_string(pr.from) + (pr.vertical ? " = (C, 0)" : " = (0, C')"), TC::Exact,
        [pr](PointContext& ctx) {
          const auto a = local_coefficients(pr.from, ctx.jets());
          const auto b = local_coefficients(pr.to, ctx.jets());
          const auto C = cartan_tensor_first(ctx.E(), ctx.p()).upper;
          const auto Cp = cartan_tensor_second(ctx.E(), ctx.p());
          MaxAbs r;
          for (std::size_t k = 0; k < C.size(); ++k) {
            r(v(b.V.flat()[k]) - v(a.V.flat()[k]) - (pr.vertical ? C.flat()[k] : 0.0));
            r(v(b.H.flat()[k]) - v(a.H.flat()[k]) - (pr.vertical ? 0.0 : Cp.flat()[k]));
          }
          return r.m;
        });
  }
  for (auto k : kKinds) {
    add(kid("torsion.", k, ".table"), "T(h,h) = Rfrak, T(h,J) = C' - FC, T(J,J) = 0 per connection", TC::Exact,
        [k](PointContext& ctx) { return torsion_table(ctx, k); });
    add(kid("axioms.", k, ""), "DJ = 0, D Gamma = 0, DF = 0, DC = v and the torsion axioms", TC::Exact,
        [k](PointContext& ctx) { return axioms(ctx, k); });
    add(kid("curvature.", k, ".local_formula"), "local curvature formulas = K(e_k, e_j) in the adapted frame",
        TC::Oracle, [k](PointContext& ctx) { return local_vs_definition(ctx, k); });
    add(kid("curvature.", k, ".symmetry"), "R, Q antisymmetric in (j,k); Q = 0 without vertical coefficients",
        TC::Exact, [k](PointContext& ctx) { return curvature_symmetry(ctx, k); });
  }
  add("curvature.hashiguchi.h_relation", "R<> = R + C(F Rfrak(z,e), x)", TC::Oracle, [](PointContext& ctx) {
    const auto& def = ctx.definitional(Kind::Hashiguchi);
    const auto& B = ctx.local_values(Kind::Berwald);
    const auto& J = ctx.jets();
    const int n = ctx.n();
    MaxAbs r;
    for (int i = 0; i < n; ++i)
      for (int h = 0; h < n; ++h)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            double s = B.Rh(i, h, j, k);
            for (int m = 0; m < n; ++m) s += v(J.C(i, h, m)) * v(J.R(m, j, k));
            r(def.Rh(i, h, j, k) - s);
          }
    return r.m;
  });
  add("curvature.hashiguchi.hv_relation", "P<> = P + (D<>_hz C)(e, x)", TC::Oracle, [](PointContext& ctx) {
    const auto& def = ctx.definitional(Kind::Hashiguchi);
    const auto& B = ctx.local_values(Kind::Berwald);
    const auto& J = ctx.jets();
    const auto c = local_coefficients(Kind::Hashiguchi, J);
    const int n = ctx.n();
    MaxAbs r;
    for (int j = 0; j < n; ++j) {
      const auto DC = values(component_cov_deriv(J.C, c, J, j));
      for (int i = 0; i < n; ++i)
        for (int h = 0; h < n; ++h)
          for (int k = 0; k < n; ++k) r(def.Phv(i, h, j, k) - (B.Phv(i, h, j, k) - DC(i, h, k)));
    }
    return r.m;
  });
  add("curvature.hashiguchi.v_relation", "Q<> = Q", TC::Exact, [](PointContext& ctx) {
    MaxAbs r;
    r.diff(ctx.definitional(Kind::Hashiguchi).Qv, ctx.local_values(Kind::Cartan).Qv);
    return r.m;
  });
  add("curvature.chern.h_relation", "R* = R - C(F Rfrak, .)", TC::Oracle, [](PointContext& ctx) {
    const auto& def = ctx.definitional(Kind::Chern);
    const auto& Ca = ctx.local_values(Kind::Cartan);
    const auto& J = ctx.jets();
    const int n = ctx.n();
    MaxAbs r;
    for (int i = 0; i < n; ++i)
      for (int h = 0; h < n; ++h)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            double s = Ca.Rh(i, h, j, k);
            for (int m = 0; m < n; ++m) s -= v(J.C(i, h, m)) * v(J.R(m, j, k));
            r(def.Rh(i, h, j, k) - s);
          }
    return r.m;
  });
  add("curvature.cartan.intrinsic", "Cartan R, P, Q from the Berwald curvatures and C, C'", TC::Oracle,
      cartan_intrinsic);
  add("curvature.cartan.spray", "R(e,k)S = Rfrak, P(e,k)S = C', P(S,.) = P(.,S) = 0, Q with S = 0", TC::Exact,
      cartan_spray);
  add("curvature.hashiguchi.spray", "R<>(e,x)S = Rfrak, P<>(e,x)S = P<>(e,S)x = 0, Q<> with S = 0", TC::Exact,
      hashiguchi_spray);
  add("curvature.hashiguchi.hv_spray_first", "P<>(S,e)x = -C'(e,x)", TC::Exact,
      [](PointContext& ctx) { return hashiguchi_hv_spray_first(ctx, -1.0); });
  add("curvature.hashiguchi.hv_spray_first_zero", "P<>(S,e)x = 0", TC::Exact,
      [](PointContext& ctx) { return hashiguchi_hv_spray_first(ctx, 0.0); }, {}, CK::Info);
  add("curvature.hashiguchi.hv_symmetry", "P<>(z,k)x = P<>(z,x)k", TC::Exact, [](PointContext& ctx) {
    const auto& h = ctx.hashiguchi();
    MaxAbs r;
    for (int i = 0; i < ctx.n(); ++i)
      for (int a = 0; a < ctx.n(); ++a)
        for (int b = 0; b < ctx.n(); ++b)
          for (int c = 0; c < ctx.n(); ++c) r(h.Ps(i, a, b, c) - h.Ps(i, a, c, b));
    return r.m;
  });

  // Metricity matrix: identities where the connection is metrical, witnesses
  // at the documented point where it is not.
  struct Metricity {
    Kind kind;
    bool horizontal;
    bool metric;
  };
  for (const Metricity mt : {Metricity{Kind::Cartan, true, true}, Metricity{Kind::Cartan, false, true},
                             Metricity{Kind::Chern, true, true}, Metricity{Kind::Hashiguchi, false, true},
                             Metricity{Kind::Berwald, true, false}, Metricity{Kind::Berwald, false, false},
                             Metricity{Kind::Chern, false, false}, Metricity{Kind::Hashiguchi, true, false}}) {
    const std::string dir = mt.horizontal ? "horizontal" : "vertical";
    const auto eval = [mt](PointContext& ctx) { return metricity(ctx, mt.kind, mt.horizontal); };
    if (mt.metric) {
      add("metricity." + to_string(mt.kind) + "." + dir, "D_" + std::string(mt.horizontal ? "h" : "J") + " g = 0",
          TC::Exact, eval);
    } else {
      add("metricity." + to_string(mt.kind) + "." + dir,
          "D_" + std::string(mt.horizontal ? "h" : "J") + " g != 0 (not " + (mt.horizontal ? "h" : "v") +
              "-metrical)",
          TC::Witness, eval, needs_witness, CK::Witness, Scope::WitnessPoint);
    }
  }

  // Bianchi identities.
  for (auto k : kKinds) {
    add(kid("bianchi.", k, ".first"), "S{K(z,e)x} = S{T(T(z,e),x) + (D_z T)(e,x)}", TC::Oracle,
        [k](PointContext& ctx) { return first_bianchi(ctx, k); });
    add(kid("bianchi.", k, ".second"), "S{K(T(z,e),x) + (D_z K)(e,x)} = 0", TC::Oracle,
        [k](PointContext& ctx) { return second_bianchi(ctx, k); });
  }
  struct HB {
    const char* id;
    const char* anchor;
    HashiBianchi which;
    CK kind;
  };
  for (const HB& hb : {
           HB{"hashiguchi.bianchi.a", "S{R<>(z,e)x} = S{C(F Rfrak(z,e),x)}", HashiBianchi::AStatement, CK::Identity},
           HB{"hashiguchi.bianchi.a_zero", "S{R<>(z,e)x} = 0", HashiBianchi::AProof, CK::Info},
           HB{"hashiguchi.bianchi.b", "S{Q<>(z,e)x} = 0", HashiBianchi::B, CK::Identity},
           HB{"hashiguchi.bianchi.c", "C(F Rfrak(z,e),x) = Rfrak(F C(z,x),e) - Rfrak(F C(e,x),z)", HashiBianchi::C,
              CK::Identity},
           HB{"hashiguchi.bianchi.c_vertical",
              "R<>(z,e)x = Rfrak(F C(z,x),e) - Rfrak(F C(e,x),z) + (D<>_Jx Rfrak)(z,e)", HashiBianchi::CVertical,
              CK::Identity},
           HB{"hashiguchi.bianchi.d", "S{(D<>_hz Rfrak)(e,x)} = 0", HashiBianchi::D, CK::Identity},
           HB{"hashiguchi.bianchi.e", "S{(D<>_hz R<>)(e,x)} = S{P<>(z, F Rfrak(e,x))}", HashiBianchi::E,
              CK::Identity},
           HB{"hashiguchi.bianchi.f",
              "(D_hz P)(e,x) - (D_he P)(z,x) + (D_Jx R)(z,e) = R(FC(e,x),z) - R(FC(z,x),e) - Q(F Rfrak(z,e),x)",
              HashiBianchi::F, CK::Identity},
           HB{"hashiguchi.bianchi.g",
              "(D_hz Q)(e,x) - (D_Je P)(z,x) + (D_Jx P)(z,e) = P(FC(z,e),x) - P(FC(x,z),e)", HashiBianchi::G,
              CK::Identity},
           HB{"hashiguchi.bianchi.h", "S{(D<>_Jz Q<>)(e,x)} = 0", HashiBianchi::H, CK::Identity},
       }) {
    add(hb.id, hb.anchor, TC::Oracle, [w = hb.which](PointContext& ctx) { return hashiguchi_bianchi(ctx, w); }, {},
        hb.kind);
  }
  add("hashiguchi.liouville.h", "D<>_C R<> = 0", TC::Oracle, [](PointContext& ctx) {
    MaxAbs r;
    r(ctx.hashiguchi().DcR);
    return r.m;
  });
  add("hashiguchi.liouville.hv", "D<>_C P<> = -P<>", TC::Oracle, [](PointContext& ctx) {
    const auto& h = ctx.hashiguchi();
    MaxAbs r;
    for (std::size_t a = 0; a < h.Ps.size(); ++a) r(h.DcP.flat()[a] + h.Ps.flat()[a]);
    return r.m;
  });
  add("hashiguchi.liouville.v", "D<>_C Q<> = -2 Q<>", TC::Oracle, [](PointContext& ctx) {
    const auto& h = ctx.hashiguchi();
    MaxAbs r;
    for (std::size_t a = 0; a < h.Qs.size(); ++a) r(h.DcQ.flat()[a] + 2.0 * h.Qs.flat()[a]);
    return r.m;
  });
  add("hashiguchi.spray_derivative.horizontal", "(D<>_hz P<>)(e,S) = (D<>_hz Q<>)(e,S) = 0", TC::Oracle,
      [](PointContext& ctx) { return spray_derivative(ctx, true, 0.0); });
  add("hashiguchi.spray_derivative.vertical", "(D<>_Jz P<>)(e,S) = -P<>(e,z), same for Q<>", TC::Oracle,
      [](PointContext& ctx) { return spray_derivative(ctx, false, -1.0); });
  add("hashiguchi.spray_derivative.vertical_plus", "(D<>_Jz P<>)(e,S) = P<>(e,z), same for Q<>", TC::Oracle,
      [](PointContext& ctx) { return spray_derivative(ctx, false, 1.0); }, {}, CK::Info);
  add("hashiguchi.brackets", "[Je,Jx], [he,Jx], [he,hx] through D<>", TC::Exact, hashiguchi_brackets);

  out.push_back(Check{{"oracle.fd_jets", "jets agree with finite differences on 100 random partials",
                       ToleranceClass::Oracle, CheckKind::Identity},
                      Scope::Suite, {}, fd_oracle, {}});
  return out;
}

const std::vector<Check>& checks() {
  static const std::vector<Check> all = build_checks();
  return all;
}

struct Accumulator {
  double residual = 0.0;
  bool evaluated = false;
  std::string error;
};

}  // namespace

std::string to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::Identity:
      return "identity";
    case CheckKind::Witness:
      return "witness";
    case CheckKind::Info:
      return "info";
  }
  return "unknown";
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Error:
      return "error";
    case CheckStatus::Skipped:
      return "skipped";
    case CheckStatus::Info:
      return "info";
  }
  return "unknown";
}

double Tolerances::get(ToleranceClass c) const {
  switch (c) {
    case ToleranceClass::Strict:
      return strict;
    case ToleranceClass::Exact:
      return exact;
    case ToleranceClass::Oracle:
      return oracle;
    case ToleranceClass::Witness:
      return witness;
  }
  return exact;
}

std::span<const CheckSpec> registry() {
  static const std::vector<CheckSpec> specs = [] {
    std::vector<CheckSpec> s;
    for (const auto& c : checks()) s.push_back(c.spec);
    return s;
  }();
  return specs;
}

ReportSummary ResidualReport::summary() const {
  ReportSummary s;
  for (const auto& c : checks) {
    switch (c.status) {
      case CheckStatus::Pass:
        ++s.pass;
        break;
      case CheckStatus::Fail:
        ++s.fail;
        break;
      case CheckStatus::Error:
        ++s.error;
        break;
      case CheckStatus::Skipped:
        ++s.skipped;
        break;
      case CheckStatus::Info:
        ++s.info;
        break;
    }
  }
  return s;
}

bool ResidualReport::ok() const { return summary().fail == 0; }

const IdentityCheck* ResidualReport::find(std::string_view id) const {
  for (const auto& c : checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::vector<TangentPoint> sample_points(const Metric& metric, int count, std::uint64_t seed) {
  const int n = static_cast<int>(metric.base_lo.size());
  std::mt19937_64 rng(seed);
  std::vector<TangentPoint> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  constexpr double lo = 0.5;
  constexpr double hi = 2.0;
  for (int k = 0; k < count; ++k) {
    std::vector<double> x(static_cast<std::size_t>(n));
    std::vector<double> y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      x[ui] = uniform(rng, metric.base_lo[ui], metric.base_hi[ui]);
    }
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& c : y) {
        c = normal(rng);
        norm += c * c;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    // radius with density proportional to r^(n-1) on [lo, hi]
    const double r = std::pow(std::pow(lo, n) + uniform01(rng) * (std::pow(hi, n) - std::pow(lo, n)), 1.0 / n);
    for (auto& c : y) c *= r / norm;
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

ResidualReport run_suite(const Metric& metric, std::span<const TangentPoint> points, std::uint64_t seed,
                         const Tolerances& tolerances, const std::vector<std::string>& only) {
  if (points.empty()) throw BadParams("the suite needs at least one sample point");
  const int dim = points.front().dim();
  const SuiteInput input{metric, points, seed, dim};
  const auto& all = checks();
  std::vector<bool> selected(all.size(), only.empty());
  for (const auto& id : only) {
    const auto it = std::find_if(all.begin(), all.end(), [&](const Check& c) { return c.spec.id == id; });
    if (it == all.end()) throw BadParams("no registered check '" + id + "'");
    selected[static_cast<std::size_t>(it - all.begin())] = true;
  }
  std::vector<Accumulator> acc(all.size());
  std::vector<std::optional<std::string>> skipped(all.size());
  for (std::size_t c = 0; c < all.size(); ++c) {
    if (selected[c] && all[c].skip) skipped[c] = all[c].skip(input);
  }

  auto run_at = [&](const TangentPoint& p, std::size_t index, Scope scope) {
    PointContext ctx(metric, p, seed, index);
    for (std::size_t c = 0; c < all.size(); ++c) {
      if (!selected[c] || all[c].scope != scope || skipped[c]) continue;
      try {
        acc[c].residual = std::max(acc[c].residual, all[c].eval(ctx));
        acc[c].evaluated = true;
      } catch (const Error& e) {
        if (acc[c].error.empty()) acc[c].error = "at " + p.to_string() + ": " + e.what();
      }
    }
  };
  for (std::size_t k = 0; k < points.size(); ++k) run_at(points[k], k, Scope::Points);
  if (metric.witness) run_at(*metric.witness, points.size(), Scope::WitnessPoint);
  for (std::size_t c = 0; c < all.size(); ++c) {
    if (!selected[c] || all[c].scope != Scope::Suite || skipped[c]) continue;
    try {
      acc[c].residual = all[c].suite_eval(input);
      acc[c].evaluated = true;
    } catch (const Error& e) {
      acc[c].error = e.what();
    }
  }

  ResidualReport report{metric.name, dim, seed, static_cast<int>(points.size()), {}};
  for (std::size_t c = 0; c < all.size(); ++c) {
    if (!selected[c]) continue;
    const auto& spec = all[c].spec;
    IdentityCheck out;
    out.id = std::string(spec.id);
    out.anchor = std::string(spec.anchor);
    out.kind = spec.kind;
    out.tolerance = tolerances.get(spec.tolerance);
    out.residual = acc[c].residual;
    if (skipped[c]) {
      out.status = CheckStatus::Skipped;
      out.note = *skipped[c];
    } else if (spec.kind == CheckKind::Info) {
      out.status = CheckStatus::Info;
      out.note = acc[c].error;
    } else {
      const bool ok = spec.kind == CheckKind::Witness ? out.residual > out.tolerance : out.residual <= out.tolerance;
      if (!std::isfinite(out.residual)) {
        out.status = CheckStatus::Fail;
      } else if (!acc[c].error.empty()) {
        out.status = ok || !acc[c].evaluated ? CheckStatus::Error : CheckStatus::Fail;
        out.note = acc[c].error;
      } else {
        out.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
      }
    }
    report.checks.push_back(std::move(out));
  }
  return report;
}

ResidualReport run_suite(const Metric& metric, int count, std::uint64_t seed, const Tolerances& tolerances,
                         const std::vector<std::string>& only) {
  const auto points = sample_points(metric, count, seed);
  return run_suite(metric, points, seed, tolerances, only);
}

std::vector<ConnectionDiff> compare_connections(const ScalarField& E, const TangentPoint& p) {
  const auto C = cartan_tensor_first(E, p).upper;
  const auto Cp = cartan_tensor_second(E, p);
  struct Edge {
    Kind from, to;
    bool vertical;
  };
  std::vector<ConnectionDiff> out;
  for (const Edge e : {Edge{Kind::Berwald, Kind::Hashiguchi, true}, Edge{Kind::Hashiguchi, Kind::Cartan, false},
                       Edge{Kind::Berwald, Kind::Chern, false}, Edge{Kind::Chern, Kind::Cartan, true}}) {
    const auto a = coefficients(e.from, E, p);
    const auto b = coefficients(e.to, E, p);
    ConnectionDiff d{e.from, e.to, b.V, b.H, e.vertical ? "(C, 0)" : "(0, C')", 0.0};
    MaxAbs r;
    for (std::size_t k = 0; k < C.size(); ++k) {
      d.dV.flat()[k] -= a.V.flat()[k];
      d.dH.flat()[k] -= a.H.flat()[k];
      r(d.dV.flat()[k] - (e.vertical ? C.flat()[k] : 0.0));
      r(d.dH.flat()[k] - (e.vertical ? 0.0 : Cp.flat()[k]));
    }
    d.residual = r.m;
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace finsler
