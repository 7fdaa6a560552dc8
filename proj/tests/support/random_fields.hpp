#pragma once

#include <random>
#include <vector>

#include "finsler/jets.hpp"

namespace finsler::testing {

/// A random polynomial in (x, y) with integer exponents, evaluable on jets.
struct RandomPolynomial {
  struct Term {
    double coeff;
    std::vector<int> exps;  // over 2n variables
  };
  int n = 2;
  std::vector<Term> terms;

  static RandomPolynomial make(std::mt19937_64& rng, int n, int max_degree, int n_terms) {
    RandomPolynomial p;
    p.n = n;
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> var(0, 2 * n - 1);
    std::uniform_int_distribution<int> deg(0, max_degree);
    for (int t = 0; t < n_terms; ++t) {
      Term term{coeff(rng), std::vector<int>(static_cast<std::size_t>(2 * n), 0)};
      const int d = deg(rng);
      for (int k = 0; k < d; ++k) ++term.exps[static_cast<std::size_t>(var(rng))];
      p.terms.push_back(std::move(term));
    }
    return p;
  }

  template <class Span>
  auto operator()(Span x, Span y) const {
    using T = std::remove_cvref_t<decltype(x[0])>;
    T sum(0.0);
    for (const auto& term : terms) {
      T m(term.coeff);
      for (int v = 0; v < 2 * n; ++v) {
        const auto& c = v < n ? x[static_cast<std::size_t>(v)] : y[static_cast<std::size_t>(v - n)];
        for (int k = 0; k < term.exps[static_cast<std::size_t>(v)]; ++k) m = m * c;
      }
      sum = sum + m;
    }
    return sum;
  }

  ScalarField field() const {
    auto self = *this;
    return ScalarField::generic(n, [self](auto x, auto y) { return self(x, y); });
  }
};

inline TangentPoint random_point(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> y(static_cast<std::size_t>(n));
  for (auto& v : x) v = u(rng);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& v : y) {
      v = u(rng);
      norm += v * v;
    }
  } while (norm < 0.25);
  return TangentPoint(x, y);
}

}  // namespace finsler::testing
