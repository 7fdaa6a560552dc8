#include "finsler/tangent_point.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "finsler/errors.hpp"

namespace finsler {

TangentPoint::TangentPoint(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) throw DomainError("base and fiber coordinates differ in length");
  if (x_.size() < 2) throw DomainError("dimension must be at least 2");
  double norm2 = 0.0;
  for (double v : y_) norm2 += v * v;
  if (!(norm2 > 0.0)) throw DomainError("fiber coordinate y = 0 lies off the slit tangent bundle");
}

TangentPoint TangentPoint::scaled_fiber(double lambda) const {
  std::vector<double> y = y_;
  for (auto& v : y) v *= lambda;
  return TangentPoint(x_, std::move(y));
}

std::string TangentPoint::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < x_.size(); ++i) os << (i ? "," : "") << x_[i];
  os << ';';
  for (std::size_t i = 0; i < y_.size(); ++i) os << (i ? "," : "") << y_[i];
  return os.str();
}

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str()) throw DomainError("malformed coordinate '" + item + "'");
    while (*end == ' ') ++end;
    if (*end != '\0') throw DomainError("malformed coordinate '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

TangentPoint TangentPoint::parse(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos || text.find(';', semi + 1) != std::string::npos) {
    throw DomainError("point must be written as x1,..,xn;y1,..,yn");
  }
  return TangentPoint(parse_list(text.substr(0, semi)), parse_list(text.substr(semi + 1)));
}

}  // namespace finsler
