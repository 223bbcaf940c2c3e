#include "cqed/spaces.hpp"

#include <cmath>

namespace cqed {

SpinSpace make_spin_space(double spin) {
  if (spin < 0.0) throw std::invalid_argument("spin must be non-negative");
  const double two_s = 2.0 * spin;
  if (std::abs(two_s - std::round(two_s)) > 1e-12)
    throw std::invalid_argument("2S must be an integer");
  SpinSpace s;
  s.spin = std::round(two_s) / 2.0;
  s.dim = static_cast<int>(std::round(two_s)) + 1;
  return s;
}

FockSpace make_fock_space(int n_max) {
  if (n_max < 1) throw std::invalid_argument("Fock cutoff n_max must be >= 1");
  return FockSpace{n_max, n_max + 1};
}

int SpinSpace::index_of(double m) const {
  const double idx = spin - m;
  const int i = static_cast<int>(std::round(idx));
  if (std::abs(idx - i) > 1e-9 || i < 0 || i >= dim)
    throw std::invalid_argument("m out of range or not of the form S - k");
  return i;
}

CompositeSpace::CompositeSpace(std::vector<SpaceFactor> factors)
    : factors_(std::move(factors)) {
  dim_ = 1;
  for (const auto& f : factors_) {
    dim_ *= std::visit([](const auto& s) { return s.dim; }, f);
  }
}

int CompositeSpace::factor_dim(std::size_t k) const {
  return std::visit([](const auto& s) { return s.dim; }, factors_.at(k));
}

bool CompositeSpace::operator==(const CompositeSpace& other) const {
  if (factors_.size() != other.factors_.size()) return false;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (factor_dim(k) != other.factor_dim(k)) return false;
  }
  return dim_ == other.dim_;
}

}  // namespace cqed
