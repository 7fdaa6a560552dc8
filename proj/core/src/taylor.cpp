#include "finsler/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "finsler/errors.hpp"

namespace finsler {

namespace {

constexpr int kBitsPerExponent = 3;
constexpr int kMaxVars = 64 / kBitsPerExponent;

std::uint64_t pack(std::span<const std::uint8_t> exps) {
  std::uint64_t key = 0;
  for (std::size_t v = 0; v < exps.size(); ++v) {
    key |= static_cast<std::uint64_t>(exps[v]) << (kBitsPerExponent * v);
  }
  return key;
}

void enumerate_degree(int nvars, int degree, int var, std::vector<std::uint8_t>& current,
                      std::vector<std::uint8_t>& out) {
  if (var == nvars - 1) {
    current[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(degree);
    out.insert(out.end(), current.begin(), current.end());
    return;
  }
  for (int e = degree; e >= 0; --e) {
    current[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(e);
    enumerate_degree(nvars, degree - e, var + 1, current, out);
  }
}

void require_same_table(const MultiIndexTable* a, const MultiIndexTable* b) {
  if (a != nullptr && b != nullptr && a != b) {
    throw std::logic_error("Taylor arithmetic across different variable counts");
  }
}

}  // namespace

MultiIndexTable::MultiIndexTable(int nvars) : nvars_(nvars) {
  if (nvars < 1 || nvars > kMaxVars) {
    throw std::invalid_argument("unsupported number of jet variables");
  }
  std::vector<std::uint8_t> current(static_cast<std::size_t>(nvars), 0);
  prefix_.reserve(kMaxTableOrder + 1);
  for (int d = 0; d <= kMaxTableOrder; ++d) {
    enumerate_degree(nvars, d, 0, current, exps_);
    prefix_.push_back(exps_.size() / static_cast<std::size_t>(nvars));
  }
  const std::size_t count = prefix_.back();

  std::unordered_map<std::uint64_t, std::uint32_t> lookup;
  lookup.reserve(count);
  degree_.resize(count);
  factorial_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto e = exponents(i);
    lookup.emplace(pack(e), static_cast<std::uint32_t>(i));
    int deg = 0;
    double fact = 1.0;
    for (auto k : e) {
      deg += k;
      for (int j = 2; j <= k; ++j) fact *= j;
    }
    degree_[i] = deg;
    factorial_[i] = fact;
  }

  raise_.assign(count * static_cast<std::size_t>(nvars), npos);
  for (std::size_t i = 0; i < count; ++i) {
    if (degree_[i] == kMaxTableOrder) continue;
    const std::uint64_t key = pack(exponents(i));
    for (int v = 0; v < nvars; ++v) {
      raise_[i * static_cast<std::size_t>(nvars) + static_cast<std::size_t>(v)] =
          lookup.at(key + (std::uint64_t{1} << (kBitsPerExponent * v)));
    }
  }

  std::vector<std::uint64_t> keys(count);
  for (std::size_t i = 0; i < count; ++i) keys[i] = pack(exponents(i));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      if (degree_[i] + degree_[j] > kMaxTableOrder) break;  // graded layout
      products_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                           lookup.at(keys[i] + keys[j])});
    }
  }
  std::stable_sort(products_.begin(), products_.end(), [this](const Product& a, const Product& b) {
    return degree_[a.out] < degree_[b.out];
  });
  product_prefix_.assign(kMaxTableOrder + 1, 0);
  for (const auto& p : products_) {
    for (int k = degree_[p.out]; k <= kMaxTableOrder; ++k) ++product_prefix_[static_cast<std::size_t>(k)];
  }
}

const MultiIndexTable& MultiIndexTable::get(int nvars) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const MultiIndexTable>> tables;
  std::lock_guard lock(mutex);
  auto& slot = tables[nvars];
  if (!slot) slot.reset(new MultiIndexTable(nvars));
  return *slot;
}

std::size_t MultiIndexTable::index(std::span<const int> alpha) const {
  if (alpha.size() != static_cast<std::size_t>(nvars_)) {
    throw std::invalid_argument("multi-index length does not match the number of variables");
  }
  int deg = 0;
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("negative exponent in multi-index");
    deg += a;
  }
  if (deg > kMaxTableOrder) throw OrderTooHigh("multi-index order exceeds the jet table");
  std::size_t idx = 0;
  for (int v = 0; v < nvars_; ++v) {
    for (int k = 0; k < alpha[static_cast<std::size_t>(v)]; ++k) idx = raise(idx, v);
  }
  return idx;
}

Taylor::Taylor(const MultiIndexTable& table, int order)
    : table_(&table), order_(order), coeffs_(table.size(order), 0.0) {
  if (order < 0 || order > kMaxTableOrder) throw OrderTooHigh("jet order out of range");
}

Taylor Taylor::variable(const MultiIndexTable& table, int order, int var, double center) {
  Taylor t(table, order);
  t.coeffs_[0] = center;
  if (order >= 1) t.coeffs_[table.raise(0, var)] = 1.0;
  return t;
}

int Taylor::nvars() const noexcept { return table_ ? table_->nvars() : 0; }

double Taylor::partial(std::span<const int> alpha) const {
  if (!table_) {
    return std::all_of(alpha.begin(), alpha.end(), [](int a) { return a == 0; }) ? value() : 0.0;
  }
  const std::size_t idx = table_->index(alpha);
  if (table_->degree(idx) > order_) throw OrderTooHigh("partial derivative beyond jet order");
  return coeffs_[idx] * table_->factorial(idx);
}

Taylor Taylor::derivative(int var) const {
  if (!table_) return Taylor(0.0);
  if (order_ == 0) throw OrderTooHigh("cannot differentiate an order-0 jet");
  Taylor out(*table_, order_ - 1);
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) {
    const auto r = table_->raise(i, var);
    out.coeffs_[i] = coeffs_[r] * (table_->exponents(i)[static_cast<std::size_t>(var)] + 1);
  }
  return out;
}

Taylor Taylor::truncated(int order) const {
  if (!table_ || order >= order_) return *this;
  Taylor out = *this;
  out.order_ = order;
  out.coeffs_.resize(table_->size(order));
  return out;
}

Taylor& Taylor::operator+=(const Taylor& rhs) {
  require_same_table(table_, rhs.table_);
  if (!rhs.table_) {
    coeffs_[0] += rhs.coeffs_[0];
    return *this;
  }
  if (!table_) {
    const double c = coeffs_[0];
    *this = rhs;
    coeffs_[0] += c;
    return *this;
  }
  if (rhs.order_ < order_) *this = truncated(rhs.order_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

Taylor& Taylor::operator-=(const Taylor& rhs) { return *this += -rhs; }

Taylor& Taylor::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Taylor& Taylor::operator*=(const Taylor& rhs) { return *this = *this * rhs; }
Taylor& Taylor::operator/=(const Taylor& rhs) { return *this = *this / rhs; }

Taylor Taylor::operator-() const {
  Taylor out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Taylor operator*(const Taylor& a, const Taylor& b) {
  require_same_table(a.table_, b.table_);
  if (!a.table_) return b * a.coeffs_[0];
  if (!b.table_) return a * b.coeffs_[0];
  const int order = std::min(a.order_, b.order_);
  Taylor out(*a.table_, order);
  const double* pa = a.coeffs_.data();
  const double* pb = b.coeffs_.data();
  double* po = out.coeffs_.data();
  for (const auto& p : a.table_->products(order)) po[p.out] += pa[p.lhs] * pb[p.rhs];
  return out;
}

Taylor compose(const Taylor& a, std::span<const double> derivatives) {
  if (!a.table_) return Taylor(derivatives[0]);
  const int order = a.order_;
  if (derivatives.size() < static_cast<std::size_t>(order) + 1) {
    throw std::invalid_argument("compose needs one derivative per jet order");
  }
  Taylor u = a;
  u.coeffs_[0] = 0.0;
  double fact = 1.0;
  for (int m = 2; m <= order; ++m) fact *= m;
  Taylor r(derivatives[static_cast<std::size_t>(order)] / fact);
  for (int m = order - 1; m >= 0; --m) {
    fact /= (m + 1);
    r = r * u + derivatives[static_cast<std::size_t>(m)] / fact;
  }
  if (r.table_ == nullptr) {
    Taylor out(*a.table_, order);
    out.coeffs_[0] = r.coeffs_[0];
    return out;
  }
  return r;
}

Taylor operator/(const Taylor& a, const Taylor& b) {
  const double v = b.value();
  if (v == 0.0) throw DomainError("division by a jet with zero value");
  if (!b.table_) return a * (1.0 / v);
  std::vector<double> d(static_cast<std::size_t>(b.order_) + 1);
  double p = 1.0 / v;
  for (std::size_t m = 0; m < d.size(); ++m) {
    d[m] = p;
    p *= -static_cast<double>(m + 1) / v;
  }
  return a * compose(b, d);
}

Taylor pow(const Taylor& a, double exponent) {
  const double v = a.value();
  const bool integral = exponent == std::floor(exponent);
  if (!a.table_) return Taylor(std::pow(v, exponent));
  if (!integral && v <= 0.0) throw DomainError("non-integer power of a non-positive jet");
  if (integral && exponent < 0.0 && v == 0.0) throw DomainError("negative power of a zero jet");
  std::vector<double> d(static_cast<std::size_t>(a.order_) + 1);
  double coeff = 1.0;
  for (std::size_t m = 0; m < d.size(); ++m) {
    const double e = exponent - static_cast<double>(m);
    d[m] = coeff == 0.0 ? 0.0 : coeff * std::pow(v, e);
    coeff *= e;
  }
  return compose(a, d);
}

Taylor sqrt(const Taylor& a) {
  if (!a.table_) return Taylor(std::sqrt(a.value()));
  if (a.value() <= 0.0) throw DomainError("square root of a non-positive jet");
  return pow(a, 0.5);
}

}  // namespace finsler
