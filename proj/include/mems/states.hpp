#pragma once

// Named states. Ket labels such as |0011> are read with the leftmost symbol
// on site 0, so |0011> has sites 2 and 3 excited (flat index 12).

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mems/error.hpp"
#include "mems/state.hpp"

namespace mems {

// Flat index of a qubit ket label, leftmost character = site 0.
inline std::size_t ket_index(std::string_view bits) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1') {
      index |= std::size_t{1} << k;
    } else if (bits[k] != '0') {
      fail(ErrorKind::ParseError, "ket label must contain only 0 and 1");
    }
  }
  return index;
}

inline constexpr std::size_t kMaxDenseQubits = 30;

namespace detail {

inline void check_qubit_count(std::size_t n, std::size_t min_n, std::string_view what) {
  if (n < min_n || n > kMaxDenseQubits) {
    fail(ErrorKind::SizeOutOfRange, std::string(what) + " needs between " + std::to_string(min_n) + " and " +
                                        std::to_string(kMaxDenseQubits) + " qubits, got " + std::to_string(n));
  }
}

}  // namespace detail

inline PureState product_state(Dims dims) {
  validate_dims(dims);
  std::vector<Complex> amps(dims_product(dims));
  amps[0] = 1.0;
  return make_state(std::move(dims), std::move(amps), "product");
}

inline PureState ghz(std::size_t n) {
  detail::check_qubit_count(n, 2, "ghz");
  std::vector<Complex> amps(std::size_t{1} << n);
  amps.front() = amps.back() = 1.0 / std::sqrt(2.0);
  return make_state(Dims(n, 2), std::move(amps), "ghz(" + std::to_string(n) + ")");
}

inline PureState w(std::size_t n) {
  detail::check_qubit_count(n, 2, "w");
  std::vector<Complex> amps(std::size_t{1} << n);
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) amps[std::size_t{1} << k] = a;
  return make_state(Dims(n, 2), std::move(amps), "w(" + std::to_string(n) + ")");
}

// Controlled-Z on every neighbouring pair of a chain prepared in |+>^n.
inline PureState linear_cluster(std::size_t n) {
  detail::check_qubit_count(n, 2, "cluster");
  const std::size_t size = std::size_t{1} << n;
  const double a = std::pow(2.0, -0.5 * static_cast<double>(n));
  std::vector<Complex> amps(size);
  for (std::size_t x = 0; x < size; ++x) {
    // Sign is (-1)^(number of adjacent 11 pairs).
    const int pairs = std::popcount(x & (x >> 1));
    amps[x] = (pairs % 2 == 0) ? a : -a;
  }
  return make_state(Dims(n, 2), std::move(amps), "cluster(" + std::to_string(n) + ")");
}

// (|0000> + |0011> + |1100> - |1111>) / 2
inline PureState phi4_literal() {
  std::vector<Complex> amps(16);
  amps[ket_index("0000")] = 0.5;
  amps[ket_index("0011")] = 0.5;
  amps[ket_index("1100")] = 0.5;
  amps[ket_index("1111")] = -0.5;
  return make_state(Dims(4, 2), std::move(amps), "phi4");
}

// Bell pairs on sites (0,1), (2,3), ...
inline PureState bell_product(std::size_t pairs) {
  if (pairs < 1 || 2 * pairs > kMaxDenseQubits) fail(ErrorKind::SizeOutOfRange, "bell_product needs 1..15 pairs");
  const std::size_t n = 2 * pairs;
  std::vector<Complex> amps(std::size_t{1} << n);
  const double a = std::pow(2.0, -0.5 * static_cast<double>(pairs));
  // Each pair contributes |00> or |11>, i.e. bits 2p and 2p+1 set together.
  for (std::size_t choice = 0; choice < (std::size_t{1} << pairs); ++choice) {
    std::size_t x = 0;
    for (std::size_t p = 0; p < pairs; ++p) {
      if (choice >> p & 1u) x |= std::size_t{3} << (2 * p);
    }
    amps[x] = a;
  }
  return make_state(Dims(n, 2), std::move(amps), "bell-product(" + std::to_string(pairs) + ")");
}

// Higuchi-Sudbery state:
// (|0011> + |1100> + w(|1010> + |0101>) + w^2(|1001> + |0110>)) / sqrt(6), w = e^{2 pi i / 3}.
inline PureState m4() {
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const Complex omega2 = omega * omega;
  const double a = 1.0 / std::sqrt(6.0);
  std::vector<Complex> amps(16);
  amps[ket_index("0011")] = a;
  amps[ket_index("1100")] = a;
  amps[ket_index("1010")] = a * omega;
  amps[ket_index("0101")] = a * omega;
  amps[ket_index("1001")] = a * omega2;
  amps[ket_index("0110")] = a * omega2;
  return make_state(Dims(4, 2), std::move(amps), "m4");
}

// Four four-level sites with every two-site marginal maximally mixed:
// (1/4) sum_{a,b in GF(4)} |a, b, a+b, a+w*b>.
inline PureState ame_four_ququarts() {
  // GF(4) = {0, 1, w, w^2} encoded 0..3; addition is XOR.
  constexpr std::size_t mul_w[4] = {0, 2, 3, 1};
  const Dims dims(4, 4);
  std::vector<Complex> amps(256);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const Digits digits{a, b, a ^ b, a ^ mul_w[b]};
      amps[mixed_radix_index(dims, digits)] = 0.25;
    }
  return make_state(dims, std::move(amps), "ame(4,4)");
}

// Unitarily invariant random state from i.i.d. complex Gaussian amplitudes.
inline PureState haar_random(Dims dims, std::uint64_t seed) {
  validate_dims(dims);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> amps(dims_product(dims));
  for (Complex& a : amps) {
    const double re = normal(rng);
    const double im = normal(rng);
    a = Complex(re, im);
  }
  return make_state(std::move(dims), std::move(amps), "haar(seed=" + std::to_string(seed) + ")");
}

// Tensor product of single-site pure states, each given by its amplitudes.
inline PureState product_of(const std::vector<std::vector<Complex>>& sites) {
  Dims dims;
  std::vector<Complex> amps{1.0};
  // Site 0 is least significant, so each new site becomes the slow index.
  for (const auto& site : sites) {
    dims.push_back(site.size());
    std::vector<Complex> next;
    next.reserve(amps.size() * site.size());
    for (const Complex& s : site)
      for (const Complex& a : amps) next.push_back(a * s);
    amps = std::move(next);
  }
  return make_state(std::move(dims), std::move(amps), "product");
}

}  // namespace mems
