#pragma once

#include <cstddef>
#include <stdexcept>
#include <variant>
#include <vector>

namespace cqed {

/// Spin-S Hilbert space with basis |S,m>, m = S, S-1, ..., -S.
/// Basis index i corresponds to m = S - i, so the north pole |S,S> is the
/// first basis vector.
struct SpinSpace {
  double spin = 0.0;  // S, a non-negative half-integer
  int dim = 1;        // 2S + 1

  /// Magnetic quantum number of basis index i.
  double m_of(int i) const { return spin - static_cast<double>(i); }
  /// Basis index of magnetic quantum number m.
  int index_of(double m) const;
  /// Atom number N = 2S for a collective spin of N two-level atoms.
  int atom_number() const { return static_cast<int>(2.0 * spin + 0.5); }
};

/// Truncated bosonic mode with number states |0>, ..., |n_max>.
struct FockSpace {
  int n_max = 1;
  int dim = 2;  // n_max + 1
};

SpinSpace make_spin_space(double spin);
FockSpace make_fock_space(int n_max);

using SpaceFactor = std::variant<SpinSpace, FockSpace>;

/// Ordered tensor product of spin and Fock factors; the leftmost factor is
/// the slowest-varying index of the flattened basis.
class CompositeSpace {
 public:
  CompositeSpace() = default;
  explicit CompositeSpace(std::vector<SpaceFactor> factors);

  static CompositeSpace single(SpaceFactor f) { return CompositeSpace({std::move(f)}); }

  int dim() const { return dim_; }
  std::size_t n_factors() const { return factors_.size(); }
  const SpaceFactor& factor(std::size_t k) const { return factors_.at(k); }
  int factor_dim(std::size_t k) const;

  bool operator==(const CompositeSpace& other) const;

 private:
  std::vector<SpaceFactor> factors_;
  int dim_ = 1;
};

}  // namespace cqed
