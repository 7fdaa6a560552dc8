#include "finsler/fncalc.hpp"

#include <stdexcept>

#include "finsler/geometry.hpp"

namespace finsler {

namespace {

void require_same_size(const LocalField& a, const LocalField& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector fields of different dimension");
}

// Jets of E deep enough that N carries `order` derivatives.
GeometryJets jets_for_N(const ScalarField& E, const TangentPoint& p, int order) {
  return GeometryJets(E, p, order + 3);
}

LocalForm horizontal_local(const ScalarField& E, const TangentPoint& p, int order) {
  const int n = p.dim();
  const auto jets = jets_for_N(E, p, order);
  LocalForm h(2 * n, 2, Taylor(0.0));
  for (int i = 0; i < n; ++i) {
    h(i, i) = Taylor(1.0);
    for (int k = 0; k < n; ++k) h(n + k, i) = -jets.N(k, i);
  }
  return h;
}

}  // namespace

LocalField bracket(const LocalField& a, const LocalField& b) {
  require_same_size(a, b);
  const std::size_t m = a.size();
  LocalField out(m, Taylor(0.0));
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t d = 0; d < m; ++d) {
      out[c] += a[d] * b[c].derivative(static_cast<int>(d)) - b[d] * a[c].derivative(static_cast<int>(d));
    }
  }
  return out;
}

LocalField apply_form(const LocalForm& L, const LocalField& v) {
  const auto m = static_cast<std::size_t>(L.extent());
  if (v.size() != m) throw std::invalid_argument("form and field of different dimension");
  LocalField out(m, Taylor(0.0));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) out[a] += L(a, b) * v[b];
  }
  return out;
}

LocalField operator+(const LocalField& a, const LocalField& b) {
  require_same_size(a, b);
  LocalField out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

LocalField operator-(const LocalField& a, const LocalField& b) {
  require_same_size(a, b);
  LocalField out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

std::vector<double> values(const LocalField& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].value();
  return out;
}

NaturalStructures natural_structures(int n) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  Tensor<double> J(2 * n, 2, 0.0);
  for (int i = 0; i < n; ++i) J(n + i, i) = 1.0;
  VectorFieldTM C = [n](const TangentPoint& p, int order) {
    auto coords = coordinate_jets(p, order);
    LocalField out(static_cast<std::size_t>(2 * n), Taylor(0.0));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(n + i)] = coords[static_cast<std::size_t>(n + i)];
    return out;
  };
  return {constant_form(J), C};
}

VectorFieldTM constant_field(std::vector<double> components) {
  return [c = std::move(components)](const TangentPoint&, int) {
    return LocalField(c.begin(), c.end());
  };
}

VectorFieldTM natural_frame_field(int n, int a) {
  std::vector<double> c(static_cast<std::size_t>(2 * n), 0.0);
  c.at(static_cast<std::size_t>(a)) = 1.0;
  return constant_field(std::move(c));
}

VectorFieldTM affine_field(std::vector<double> c, Tensor<double> D, std::vector<double> center) {
  return [c = std::move(c), D = std::move(D), center = std::move(center)](const TangentPoint& p, int order) {
    const auto coords = coordinate_jets(p, order);
    const std::size_t m = c.size();
    LocalField out(m);
    for (std::size_t a = 0; a < m; ++a) {
      Taylor s(c[a]);
      for (std::size_t b = 0; b < m; ++b) s += D(a, b) * (coords[b] - center[b]);
      out[a] = s;
    }
    return out;
  };
}

VectorOneFormTM constant_form(Tensor<double> L) {
  return [L = std::move(L)](const TangentPoint&, int) { return L.map([](double v) { return Taylor(v); }); };
}

VectorOneFormTM identity_form(int n) {
  Tensor<double> I(2 * n, 2, 0.0);
  for (int a = 0; a < 2 * n; ++a) I(a, a) = 1.0;
  return constant_form(std::move(I));
}

VectorFieldTM spray_field(const ScalarField& E) {
  return [E](const TangentPoint& p, int order) {
    const int n = p.dim();
    const GeometryJets jets(E, p, order + 2);
    LocalField out(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] = jets.y(i).truncated(order);
      out[static_cast<std::size_t>(n + i)] = -2.0 * jets.G(i);
    }
    return out;
  };
}

VectorFieldTM horizontal_frame_field(const ScalarField& E, int i) {
  return [E, i](const TangentPoint& p, int order) {
    const int n = p.dim();
    const auto jets = jets_for_N(E, p, order);
    LocalField out(static_cast<std::size_t>(2 * n), Taylor(0.0));
    out[static_cast<std::size_t>(i)] = Taylor(1.0);
    for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(n + k)] = -jets.N(k, i);
    return out;
  };
}

VectorOneFormTM horizontal_projector(const ScalarField& E) {
  return [E](const TangentPoint& p, int order) { return horizontal_local(E, p, order); };
}

VectorOneFormTM vertical_projector(const ScalarField& E) {
  return [E](const TangentPoint& p, int order) {
    auto v = horizontal_local(E, p, order);
    for (std::size_t k = 0; k < v.size(); ++k) v.flat()[k] = -v.flat()[k];
    for (int a = 0; a < v.extent(); ++a) v(a, a) += Taylor(1.0);
    return v;
  };
}

VectorOneFormTM barthel_form(const ScalarField& E) {
  return [E](const TangentPoint& p, int order) {
    auto g = horizontal_local(E, p, order);
    for (std::size_t k = 0; k < g.size(); ++k) g.flat()[k] = 2.0 * g.flat()[k];
    for (int a = 0; a < g.extent(); ++a) g(a, a) -= Taylor(1.0);
    return g;
  };
}

VectorOneFormTM almost_complex_form(const ScalarField& E) {
  // F(d_i) = N^j_i d_j - N^h_i N^j_h d.j - d.i,  F(d.i) = d_i - N^h_i d.h
  return [E](const TangentPoint& p, int order) {
    const int n = p.dim();
    const auto jets = jets_for_N(E, p, order);
    LocalForm F(2 * n, 2, Taylor(0.0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        F(j, i) = jets.N(j, i);
        Taylor nn(0.0);
        for (int h = 0; h < n; ++h) nn += jets.N(h, i) * jets.N(j, h);
        F(n + j, i) = -nn;
        F(n + j, n + i) = -jets.N(j, i);
      }
      F(n + i, i) -= Taylor(1.0);
      F(i, n + i) = Taylor(1.0);
    }
    return F;
  };
}

std::vector<double> bracket(const VectorFieldTM& a, const VectorFieldTM& b, const TangentPoint& at) {
  return values(bracket(a(at, 1), b(at, 1)));
}

Tensor<double> fn_bracket_vf_form(const VectorFieldTM& zeta, const VectorOneFormTM& L, const TangentPoint& at) {
  const int m = 2 * at.dim();
  const LocalField z = zeta(at, 1);
  const LocalForm l = L(at, 1);
  Tensor<double> out(m, 2, 0.0);
  for (int b = 0; b < m; ++b) {
    LocalField e(static_cast<std::size_t>(m), Taylor(0.0));
    e[static_cast<std::size_t>(b)] = Taylor(1.0);
    const auto col = values(bracket(z, apply_form(l, e)) - apply_form(l, bracket(z, e)));
    for (int a = 0; a < m; ++a) out(a, b) = col[static_cast<std::size_t>(a)];
  }
  return out;
}

std::vector<double> fn_bracket_forms(const VectorOneFormTM& K, const VectorOneFormTM& L, const VectorFieldTM& zeta,
                                     const VectorFieldTM& eta, const TangentPoint& at) {
  const LocalForm k = K(at, 1);
  const LocalForm l = L(at, 1);
  const LocalField z = zeta(at, 1);
  const LocalField e = eta(at, 1);
  const LocalField ze = bracket(z, e);
  const LocalField sum = bracket(apply_form(k, z), apply_form(l, e)) + bracket(apply_form(l, z), apply_form(k, e)) +
                         apply_form(k, apply_form(l, ze)) + apply_form(l, apply_form(k, ze)) - apply_form(k, bracket(apply_form(l, z), e)) -
                         apply_form(k, bracket(z, apply_form(l, e))) - apply_form(l, bracket(apply_form(k, z), e)) -
                         apply_form(l, bracket(z, apply_form(k, e)));
  return values(sum);
}

std::vector<double> nijenhuis(const VectorOneFormTM& K, const VectorFieldTM& zeta, const VectorFieldTM& eta,
                              const TangentPoint& at) {
  const LocalForm k = K(at, 1);
  const LocalField z = zeta(at, 1);
  const LocalField e = eta(at, 1);
  const LocalField sum = bracket(apply_form(k, z), apply_form(k, e)) + apply_form(k, apply_form(k, bracket(z, e))) -
                         apply_form(k, bracket(apply_form(k, z), e)) - apply_form(k, bracket(z, apply_form(k, e)));
  return values(sum);
}

double lie_scalar(const VectorFieldTM& zeta, const ScalarField& f, const TangentPoint& at) {
  const LocalField z = zeta(at, 1);
  const Taylor jet = f.expand(at, 1);
  double out = 0.0;
  for (std::size_t a = 0; a < z.size(); ++a) out += z[a].value() * jet.derivative(static_cast<int>(a)).value();
  return out;
}

}  // namespace finsler
