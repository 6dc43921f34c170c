#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "qbi/errors.hpp"
#include "qbi/gate.hpp"

namespace qbi {

inline constexpr int kMaxQubits = 24;

/// Dense pure state over `n` qubits. Qubit k is bit k of the basis index
/// (qubit 0 least significant).
template <typename Scalar>
class BasicStatevector {
 public:
  using Complex = std::complex<Scalar>;
  using Amplitudes = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  /// |0...0> on `n_qubits` qubits.
  explicit BasicStatevector(int n_qubits) : n_qubits_(checked_qubits(n_qubits)) {
    amplitudes_ = Amplitudes::Zero(Eigen::Index{1} << n_qubits_);
    amplitudes_(0) = Complex(1, 0);
  }

  /// Wraps an arbitrary amplitude vector. The length must be a power of two
  /// within the qubit cap; normalization is the caller's business.
  static BasicStatevector from_amplitudes(Amplitudes amplitudes) {
    const auto size = static_cast<std::uint64_t>(amplitudes.size());
    if (size < 2 || (size & (size - 1)) != 0) {
      throw CapacityError("amplitude count " + std::to_string(size) + " is not a power of two >= 2");
    }
    int n = 0;
    while ((std::uint64_t{1} << n) < size) ++n;
    BasicStatevector sv(n);
    sv.amplitudes_ = std::move(amplitudes);
    return sv;
  }

  int n_qubits() const noexcept { return n_qubits_; }
  Eigen::Index size() const noexcept { return amplitudes_.size(); }

  const Amplitudes& amplitudes() const noexcept { return amplitudes_; }
  Amplitudes& amplitudes() noexcept { return amplitudes_; }

  const Complex& operator[](Eigen::Index i) const { return amplitudes_(i); }

  /// Sum of squared moduli.
  Scalar norm_squared() const { return amplitudes_.squaredNorm(); }

 private:
  static int checked_qubits(int n) {
    if (n < 1 || n > kMaxQubits) {
      throw CapacityError("qubit count " + std::to_string(n) + " outside [1, " +
                          std::to_string(kMaxQubits) + "]");
    }
    return n;
  }

  int n_qubits_;
  Amplitudes amplitudes_;
};

using Statevector = BasicStatevector<double>;

template <typename Scalar = double>
BasicStatevector<Scalar> new_zero_state(int n_qubits) {
  return BasicStatevector<Scalar>(n_qubits);
}

namespace detail {

/// Spreads the bits of `free` over the positions not listed in `fixed`
/// (ascending), leaving zeros at the fixed positions.
inline std::uint64_t deposit_bits(std::uint64_t free, std::span<const int> fixed) {
  for (int pos : fixed) {
    const std::uint64_t low = free & ((std::uint64_t{1} << pos) - 1);
    free = low | ((free ^ low) << 1);
  }
  return free;
}

/// Mixes every amplitude pair (i, i | target_bit) where i ranges over the
/// indices whose `fixed` bits equal `pattern` and whose target bit is 0.
template <typename Scalar>
void rotate_pairs(typename BasicStatevector<Scalar>::Amplitudes& amps, int n_qubits,
                  std::vector<int> fixed, std::uint64_t pattern, int target, double theta) {
  std::sort(fixed.begin(), fixed.end());
  double cos_half = std::cos(theta / 2);
  // cos of the double nearest pi/2 is 6.1e-17, not 0. Snap it so RY(pi) is an
  // exact flip and deterministic CPT rows leave exact zeros behind. The
  // neighbouring doubles already give cosines above 1.6e-16.
  if (std::abs(cos_half) < 1e-16) cos_half = 0.0;
  const Scalar c = static_cast<Scalar>(cos_half);
  const Scalar s = static_cast<Scalar>(std::sin(theta / 2));
  const std::uint64_t target_bit = std::uint64_t{1} << target;
  const std::uint64_t count = std::uint64_t{1} << (n_qubits - static_cast<int>(fixed.size()));
  for (std::uint64_t j = 0; j < count; ++j) {
    const std::uint64_t i0 = deposit_bits(j, fixed) | pattern;
    const std::uint64_t i1 = i0 | target_bit;
    const auto a0 = amps(static_cast<Eigen::Index>(i0));
    const auto a1 = amps(static_cast<Eigen::Index>(i1));
    amps(static_cast<Eigen::Index>(i0)) = c * a0 - s * a1;
    amps(static_cast<Eigen::Index>(i1)) = s * a0 + c * a1;
  }
}

}  // namespace detail

template <typename Scalar>
void apply_ry_inplace(BasicStatevector<Scalar>& sv, int target, double theta) {
  validate_gate(RyGate{target, theta}, sv.n_qubits());
  detail::rotate_pairs<Scalar>(sv.amplitudes(), sv.n_qubits(), {target}, 0, target, theta);
}

/// RY(theta) on `target`: (a0, a1) -> (c a0 - s a1, s a0 + c a1) with
/// c = cos(theta/2), s = sin(theta/2).
template <typename Scalar>
BasicStatevector<Scalar> apply_ry(BasicStatevector<Scalar> sv, int target, double theta) {
  apply_ry_inplace(sv, target, theta);
  return sv;
}

template <typename Scalar>
void apply_controlled_ry_inplace(BasicStatevector<Scalar>& sv, std::span<const Control> controls,
                                 int target, double theta) {
  const ControlledRyGate gate{{controls.begin(), controls.end()}, target, theta};
  validate_gate(gate, sv.n_qubits());
  std::vector<int> fixed{target};
  std::uint64_t pattern = 0;
  for (const auto& c : controls) {
    fixed.push_back(c.qubit);
    if (c.polarity == Polarity::positive) pattern |= std::uint64_t{1} << c.qubit;
  }
  // Amplitudes outside the matching subspace are never read or written.
  detail::rotate_pairs<Scalar>(sv.amplitudes(), sv.n_qubits(), std::move(fixed), pattern, target,
                               theta);
}

/// RY(theta) on `target` restricted to the subspace where every control
/// matches its polarity.
template <typename Scalar>
BasicStatevector<Scalar> apply_controlled_ry(BasicStatevector<Scalar> sv,
                                             std::span<const Control> controls, int target,
                                             double theta) {
  apply_controlled_ry_inplace(sv, controls, target, theta);
  return sv;
}

template <typename Scalar>
void apply_inplace(BasicStatevector<Scalar>& sv, const Gate& gate) {
  if (const auto* ry = std::get_if<RyGate>(&gate)) {
    apply_ry_inplace(sv, ry->target, ry->theta);
  } else {
    const auto& cry = std::get<ControlledRyGate>(gate);
    apply_controlled_ry_inplace(sv, std::span<const Control>(cry.controls), cry.target, cry.theta);
  }
}

/// Born probabilities |c_i|^2.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> probabilities(const BasicStatevector<Scalar>& sv) {
  return sv.amplitudes().cwiseAbs2();
}

}  // namespace qbi
