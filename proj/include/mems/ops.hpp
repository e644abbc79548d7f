#pragma once

// Local operations on pure states: single-site unitaries and site relabeling.

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "mems/error.hpp"
#include "mems/linalg.hpp"
#include "mems/state.hpp"

namespace mems {

// Haar-distributed d x d unitary: QR of a complex Ginibre matrix with the
// phases of R's diagonal folded back into Q (modified Gram-Schmidt on columns).
template <typename Rng>
ComplexMatrix haar_unitary(std::size_t d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix q(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) q(r, c) = Complex(normal(rng), normal(rng));
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      Complex proj{};
      for (std::size_t r = 0; r < d; ++r) proj += std::conj(q(r, prev)) * q(r, c);
      for (std::size_t r = 0; r < d; ++r) q(r, c) -= proj * q(r, prev);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < d; ++r) norm += std::norm(q(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < d; ++r) q(r, c) /= norm;
  }
  return q;
}

// Applies u to one site; u must be dims[site] x dims[site].
inline PureState apply_site_unitary(const PureState& state, std::size_t site, const ComplexMatrix& u) {
  const auto& dims = state.dims();
  if (site >= dims.size()) fail(ErrorKind::SubsetInvalid, "site out of range");
  const std::size_t d = dims[site];
  if (u.rows() != d || u.cols() != d) fail(ErrorKind::DimensionMismatch, "unitary does not match site dimension");
  std::size_t stride = 1;
  for (std::size_t k = 0; k < site; ++k) stride *= dims[k];
  std::vector<Complex> out(state.size());
  const std::size_t block = stride * d;
  for (std::size_t base = 0; base < state.size(); base += block) {
    for (std::size_t low = 0; low < stride; ++low) {
      for (std::size_t r = 0; r < d; ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < d; ++c) acc += u(r, c) * state[base + low + c * stride];
        out[base + low + r * stride] = acc;
      }
    }
  }
  return make_state(dims, std::move(out), state.label());
}

// New state whose site k is old site perm[k].
inline PureState permute_sites(const PureState& state, const std::vector<std::size_t>& perm) {
  const auto& dims = state.dims();
  const std::size_t n = dims.size();
  if (perm.size() != n) fail(ErrorKind::DimensionMismatch, "permutation length differs from site count");
  std::vector<bool> seen(n, false);
  Dims new_dims(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (perm[k] >= n || seen[perm[k]]) fail(ErrorKind::InvalidSize, "not a permutation");
    seen[perm[k]] = true;
    new_dims[k] = dims[perm[k]];
  }
  std::vector<Complex> out(state.size());
  for (std::size_t flat = 0; flat < state.size(); ++flat) {
    const Digits old_digits = mixed_radix_digits(dims, flat);
    Digits new_digits(n);
    for (std::size_t k = 0; k < n; ++k) new_digits[k] = old_digits[perm[k]];
    out[mixed_radix_index(new_dims, new_digits)] = state[flat];
  }
  return make_state(std::move(new_dims), std::move(out), state.label());
}

}  // namespace mems
