#pragma once

// Reduced density matrices of pure states and their von Neumann entropies.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "mems/error.hpp"
#include "mems/linalg.hpp"
#include "mems/state.hpp"

namespace mems {

inline constexpr double kEigenClampWindow = 1e-9;
inline constexpr double kSpectrumTraceTolerance = 1e-7;
inline constexpr double kTraceTolerance = 1e-9;

class DensityMatrix {
 public:
  // Checks Hermiticity and unit trace; positivity is checked by the entropy.
  static DensityMatrix from_matrix(ComplexMatrix m) {
    if (!m.square()) fail(ErrorKind::NotHermitian, "density matrix must be square");
    if (hermiticity_defect(m) > kHermitianTolerance) fail(ErrorKind::NotHermitian, "density matrix is not Hermitian");
    const auto tr = m.trace();
    if (std::abs(tr - 1.0) > kTraceTolerance) fail(ErrorKind::NotNormalized, "density matrix trace differs from 1");
    return DensityMatrix(std::move(m));
  }

  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  const std::complex<double>& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

struct EntropyValue {
  double bits;
  SiteSubset subset;
};

namespace detail {

// Positional weights that turn a flat state index into (row, col) of the
// subset x complement reshaping. Digit order within each side follows site
// order, so the row index is the mixed-radix index of the subset digits.
struct Reshaper {
  std::vector<std::size_t> row_weight;
  std::vector<std::size_t> col_weight;
  std::size_t rows = 1;
  std::size_t cols = 1;

  Reshaper(std::span<const std::size_t> dims, const SiteSubset& subset)
      : row_weight(dims.size(), 0), col_weight(dims.size(), 0) {
    for (std::size_t site = 0; site < dims.size(); ++site) {
      if (subset.contains(site)) {
        row_weight[site] = rows;
        rows *= dims[site];
      } else {
        col_weight[site] = cols;
        cols *= dims[site];
      }
    }
  }

  template <typename Fn>
  void for_each_nonzero(const PureState& state, Fn&& fn) const {
    const auto& dims = state.dims();
    const std::size_t n = dims.size();
    std::vector<std::size_t> digit(n, 0);
    std::size_t row = 0;
    std::size_t col = 0;
    for (std::size_t flat = 0; flat < state.size(); ++flat) {
      const Complex a = state[flat];
      if (a != Complex{}) fn(row, col, a);
      // Odometer increment, least significant site first.
      for (std::size_t k = 0; k < n; ++k) {
        row += row_weight[k];
        col += col_weight[k];
        if (++digit[k] < dims[k]) break;
        row -= row_weight[k] * dims[k];
        col -= col_weight[k] * dims[k];
        digit[k] = 0;
      }
    }
  }
};

}  // namespace detail

// Amplitudes arranged as a d_A x d_{A^c} matrix.
inline ComplexMatrix bipartition_matrix(const PureState& state, const SiteSubset& subset) {
  check_subset_for(subset, state);
  detail::Reshaper shape(state.dims(), subset);
  ComplexMatrix m(shape.rows, shape.cols);
  shape.for_each_nonzero(state, [&](std::size_t r, std::size_t c, Complex a) { m(r, c) = a; });
  return m;
}

// rho_A = Tr_{A^c} |psi><psi| computed as M M^dagger.
inline DensityMatrix reduced_density_matrix(const PureState& state, const SiteSubset& subset) {
  return DensityMatrix::from_matrix(gram(bipartition_matrix(state, subset)));
}

// -sum lambda log2 lambda with the clamp rules for round-off.
inline double spectrum_entropy(std::span<const double> eigenvalues) {
  double total = 0.0;
  double entropy = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda < -kEigenClampWindow) fail(ErrorKind::NotPSD, "eigenvalue " + std::to_string(lambda) + " below -1e-9");
    total += lambda;
    if (lambda > 0.0) entropy -= lambda * std::log2(lambda);
  }
  if (std::abs(total - 1.0) > kSpectrumTraceTolerance) {
    fail(ErrorKind::NotNormalized, "eigenvalues sum to " + std::to_string(total));
  }
  return std::max(entropy, 0.0);
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
  const auto eig = hermitian_eigenvalues(rho.matrix());
  return spectrum_entropy(eig);
}

// Entropy of the marginal on `subset`, evaluated on whichever side of the cut
// is smaller. Rows and columns of the reshaped amplitude matrix that are
// identically zero only add zero eigenvalues, so they are dropped first.
inline double subset_entropy(const PureState& state, const SiteSubset& subset) {
  check_subset_for(subset, state);
  if (subset.is_full()) return 0.0;
  const auto& dims = state.dims();
  const SiteSubset side = subset.dimension(dims) <= dims_product(dims) / subset.dimension(dims) ? subset : subset.complement();

  detail::Reshaper shape(dims, side);
  std::vector<std::ptrdiff_t> row_slot(shape.rows, -1);
  std::vector<std::ptrdiff_t> col_slot(shape.cols, -1);
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  shape.for_each_nonzero(state, [&](std::size_t r, std::size_t c, Complex) {
    if (row_slot[r] < 0) row_slot[r] = static_cast<std::ptrdiff_t>(n_rows++);
    if (col_slot[c] < 0) col_slot[c] = static_cast<std::ptrdiff_t>(n_cols++);
  });

  const bool by_rows = n_rows <= n_cols;
  ComplexMatrix m(by_rows ? n_rows : n_cols, by_rows ? n_cols : n_rows);
  shape.for_each_nonzero(state, [&](std::size_t r, std::size_t c, Complex a) {
    const auto i = static_cast<std::size_t>(row_slot[r]);
    const auto j = static_cast<std::size_t>(col_slot[c]);
    // Using the conjugate transpose on the column side gives M^dagger M.
    if (by_rows) {
      m(i, j) = a;
    } else {
      m(j, i) = std::conj(a);
    }
  });
  if (m.rows() == 1) return 0.0;
  return spectrum_entropy(hermitian_eigenvalues(gram(m)));
}

// Reference route without the complement or compression shortcuts.
inline double subset_entropy_direct(const PureState& state, const SiteSubset& subset) {
  return von_neumann_entropy(reduced_density_matrix(state, subset));
}

// log2 min(d_A, d_{A^c}): the largest entropy any pure state can give `subset`.
inline double subset_entropy_bound(std::span<const std::size_t> dims, const SiteSubset& subset) {
  const std::size_t d_a = subset.dimension(dims);
  const std::size_t d_c = dims_product(dims) / d_a;
  return std::log2(static_cast<double>(std::min(d_a, d_c)));
}

}  // namespace mems
