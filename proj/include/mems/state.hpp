#pragma once

// Pure multipartite states over sites of arbitrary finite dimension.
//
// Basis ordering: a flat amplitude index is a mixed-radix number whose least
// significant digit is site 0, i.e. index = x0 + d0*(x1 + d1*(x2 + ...)).

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mems/error.hpp"

namespace mems {

using Complex = std::complex<double>;
using Dims = std::vector<std::size_t>;
using Digits = std::vector<std::size_t>;

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kZeroNormThreshold = 1e-12;
// Inputs whose norm deviates from 1 by less than this are kept bit-for-bit.
inline constexpr double kRenormalizeThreshold = 1e-12;

inline std::size_t dims_product(std::span<const std::size_t> dims) {
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  return total;
}

inline void validate_dims(std::span<const std::size_t> dims) {
  if (dims.empty()) fail(ErrorKind::DimensionMismatch, "state needs at least one site");
  for (std::size_t d : dims) {
    if (d < 2) fail(ErrorKind::DimensionMismatch, "site dimension must be >= 2, got " + std::to_string(d));
  }
}

inline std::size_t mixed_radix_index(std::span<const std::size_t> dims, std::span<const std::size_t> digits) {
  if (digits.size() != dims.size()) {
    fail(ErrorKind::DimensionMismatch, "digit count " + std::to_string(digits.size()) +
                                           " does not match site count " + std::to_string(dims.size()));
  }
  std::size_t index = 0;
  for (std::size_t k = dims.size(); k-- > 0;) {
    if (digits[k] >= dims[k]) {
      fail(ErrorKind::DigitOutOfRange, "digit " + std::to_string(digits[k]) + " at site " + std::to_string(k) +
                                           " exceeds dimension " + std::to_string(dims[k]));
    }
    index = index * dims[k] + digits[k];
  }
  return index;
}

inline Digits mixed_radix_digits(std::span<const std::size_t> dims, std::size_t index) {
  if (index >= dims_product(dims)) {
    fail(ErrorKind::DigitOutOfRange, "flat index " + std::to_string(index) + " out of range");
  }
  Digits digits(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
  return digits;
}

class PureState {
 public:
  // Normalizes the amplitudes unless they are already unit norm.
  static PureState make(Dims dims, std::vector<Complex> amps, std::string label = {}) {
    validate_dims(dims);
    const std::size_t expected = dims_product(dims);
    if (amps.size() != expected) {
      fail(ErrorKind::DimensionMismatch, "expected " + std::to_string(expected) + " amplitudes for the given dims, got " +
                                             std::to_string(amps.size()));
    }
    double sq = 0.0;
    for (const Complex& a : amps) sq += std::norm(a);
    const double norm = std::sqrt(sq);
    if (!(norm >= kZeroNormThreshold)) fail(ErrorKind::ZeroNorm, "amplitude vector has (near) zero norm");
    bool renormalized = false;
    if (std::abs(norm - 1.0) > kRenormalizeThreshold) {
      for (Complex& a : amps) a /= norm;
      renormalized = true;
    }
    return PureState(std::move(dims), std::move(amps), std::move(label), renormalized);
  }

  const Dims& dims() const noexcept { return dims_; }
  std::span<const Complex> amps() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  const std::string& label() const noexcept { return label_; }
  bool renormalized() const noexcept { return renormalized_; }
  std::size_t n_sites() const noexcept { return dims_.size(); }
  std::size_t size() const noexcept { return amps_.size(); }

  bool all_qubits() const noexcept {
    for (std::size_t d : dims_) {
      if (d != 2) return false;
    }
    return true;
  }

  PureState with_label(std::string label) const {
    PureState copy = *this;
    copy.label_ = std::move(label);
    return copy;
  }

  friend bool operator==(const PureState& a, const PureState& b) {
    return a.dims_ == b.dims_ && a.amps_ == b.amps_;
  }

 private:
  PureState(Dims dims, std::vector<Complex> amps, std::string label, bool renormalized)
      : dims_(std::move(dims)), amps_(std::move(amps)), label_(std::move(label)), renormalized_(renormalized) {}

  Dims dims_;
  std::vector<Complex> amps_;
  std::string label_;
  bool renormalized_ = false;
};

inline PureState make_state(Dims dims, std::vector<Complex> amps, std::string label = {}) {
  return PureState::make(std::move(dims), std::move(amps), std::move(label));
}

inline double inner_product_abs(const PureState& a, const PureState& b) {
  if (a.dims() != b.dims()) fail(ErrorKind::ShapeMismatch, "overlap of states with different dims");
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return std::abs(acc);
}

// A strictly increasing, non-empty list of site indices below n_sites.
class SiteSubset {
 public:
  SiteSubset(std::vector<std::size_t> indices, std::size_t n_sites) : indices_(std::move(indices)), n_sites_(n_sites) {
    if (indices_.empty()) fail(ErrorKind::SubsetInvalid, "subset is empty");
    for (std::size_t k = 0; k < indices_.size(); ++k) {
      if (indices_[k] >= n_sites_) {
        fail(ErrorKind::SubsetInvalid, "site " + std::to_string(indices_[k]) + " out of range for " +
                                           std::to_string(n_sites_) + " sites");
      }
      if (k > 0 && indices_[k] <= indices_[k - 1]) {
        fail(ErrorKind::SubsetInvalid, "subset indices must be strictly increasing");
      }
    }
  }

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  std::size_t n_sites() const noexcept { return n_sites_; }
  bool is_full() const noexcept { return indices_.size() == n_sites_; }

  bool contains(std::size_t site) const {
    for (std::size_t s : indices_) {
      if (s == site) return true;
    }
    return false;
  }

  // Sites not in the subset; empty when the subset covers every site.
  std::vector<std::size_t> complement_indices() const {
    std::vector<std::size_t> out;
    out.reserve(n_sites_ - indices_.size());
    std::size_t next = 0;
    for (std::size_t site = 0; site < n_sites_; ++site) {
      if (next < indices_.size() && indices_[next] == site) {
        ++next;
      } else {
        out.push_back(site);
      }
    }
    return out;
  }

  SiteSubset complement() const {
    if (is_full()) fail(ErrorKind::SubsetInvalid, "complement of the full site set is empty");
    return SiteSubset(complement_indices(), n_sites_);
  }

  std::size_t dimension(std::span<const std::size_t> dims) const {
    std::size_t d = 1;
    for (std::size_t s : indices_) d *= dims[s];
    return d;
  }

  friend bool operator==(const SiteSubset&, const SiteSubset&) = default;
  friend auto operator<=>(const SiteSubset& a, const SiteSubset& b) { return a.indices_ <=> b.indices_; }

 private:
  std::vector<std::size_t> indices_;
  std::size_t n_sites_;
};

inline void check_subset_for(const SiteSubset& subset, const PureState& state) {
  if (subset.n_sites() != state.n_sites()) {
    fail(ErrorKind::SubsetInvalid, "subset built for " + std::to_string(subset.n_sites()) + " sites used on a " +
                                       std::to_string(state.n_sites()) + "-site state");
  }
}

struct EnsembleMember {
  double weight;
  PureState state;
};

// Proper mixed state: a classical mixture of pure states with common dims.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
    if (members_.empty()) fail(ErrorKind::WeightInvalid, "ensemble has no members");
    double total = 0.0;
    for (const auto& m : members_) {
      if (!(m.weight >= 0.0) || !std::isfinite(m.weight)) {
        fail(ErrorKind::WeightInvalid, "ensemble weight must be finite and non-negative");
      }
      if (m.state.dims() != members_.front().state.dims()) {
        fail(ErrorKind::ShapeMismatch, "ensemble members have different dims");
      }
      total += m.weight;
    }
    if (std::abs(total - 1.0) > kNormTolerance) {
      fail(ErrorKind::WeightInvalid, "ensemble weights sum to " + std::to_string(total) + ", expected 1");
    }
  }

  const std::vector<EnsembleMember>& members() const noexcept { return members_; }
  const Dims& dims() const noexcept { return members_.front().state.dims(); }

 private:
  std::vector<EnsembleMember> members_;
};

}  // namespace mems
