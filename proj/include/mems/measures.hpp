#pragma once

// The multiple-entropy vector [S_1, ..., S_m], m = floor(N/2), where S_i is
// the geometric mean of the entropies of all i-site marginals.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mems/entropy.hpp"
#include "mems/error.hpp"
#include "mems/parallel.hpp"
#include "mems/state.hpp"
#include "mems/subsets.hpp"

namespace mems {

// Marginal entropies below this many bits count as exactly zero.
inline constexpr double kZeroEntropyThreshold = 1e-12;
inline constexpr double kDefaultCompareTolerance = 1e-9;

struct MemsOptions {
  bool keep_per_subset = false;
  unsigned threads = 1;
  // For states known to be invariant under site permutations (GHZ, W) every
  // i-subset has the same entropy; only the first subset is evaluated.
  bool assume_permutation_symmetric = false;
};

struct MemsVector {
  std::size_t n_sites = 0;
  Dims dims;
  std::vector<double> values;
  std::vector<EntropyValue> per_subset;

  std::size_t size() const noexcept { return values.size(); }
  // 1-based component access, S_i.
  double s(std::size_t i) const { return values.at(i - 1); }
};

struct ComparisonVerdict {
  bool forbidden = false;
  std::optional<std::size_t> witness;  // 1-based component index
  double source_value = 0.0;
  double target_value = 0.0;
};

inline std::size_t component_count(std::size_t n_sites) { return n_sites / 2; }

// Geometric mean in the log2 domain; any factor below the zero threshold
// annihilates the mean exactly.
inline double geometric_mean_bits(std::span<const double> entropies) {
  if (entropies.empty()) return 0.0;
  double log_sum = 0.0;
  for (double e : entropies) {
    if (e < kZeroEntropyThreshold) return 0.0;
    log_sum += std::log2(e);
  }
  return std::exp2(log_sum / static_cast<double>(entropies.size()));
}

namespace detail {

inline void check_component(std::size_t n_sites, std::size_t i) {
  if (n_sites < 2) fail(ErrorKind::SizeOutOfRange, "measure needs at least 2 sites");
  if (i < 1 || i > component_count(n_sites)) {
    fail(ErrorKind::SizeOutOfRange, "component " + std::to_string(i) + " not in [1, " +
                                        std::to_string(component_count(n_sites)) + "]");
  }
}

inline std::vector<double> component_entropies(const PureState& state, std::size_t i, const MemsOptions& opt,
                                               std::vector<SiteSubset>& subsets) {
  subsets = collect_subsets(state.n_sites(), i);
  if (opt.assume_permutation_symmetric) {
    return std::vector<double>(subsets.size(), subset_entropy(state, subsets.front()));
  }
  return parallel_map<double>(subsets.size(), opt.threads,
                              [&](std::size_t k) { return subset_entropy(state, subsets[k]); });
}

}  // namespace detail

inline double s_component(const PureState& state, std::size_t i, const MemsOptions& opt = {}) {
  detail::check_component(state.n_sites(), i);
  std::vector<SiteSubset> subsets;
  const auto entropies = detail::component_entropies(state, i, opt, subsets);
  return geometric_mean_bits(entropies);
}

inline MemsVector mems_vector(const PureState& state, const MemsOptions& opt = {}) {
  const std::size_t n = state.n_sites();
  if (n < 2) fail(ErrorKind::SizeOutOfRange, "measure needs at least 2 sites");
  MemsVector out;
  out.n_sites = n;
  out.dims = state.dims();
  for (std::size_t i = 1; i <= component_count(n); ++i) {
    std::vector<SiteSubset> subsets;
    const auto entropies = detail::component_entropies(state, i, opt, subsets);
    out.values.push_back(geometric_mean_bits(entropies));
    if (opt.keep_per_subset) {
      for (std::size_t k = 0; k < subsets.size(); ++k) out.per_subset.push_back({entropies[k], subsets[k]});
    }
  }
  return out;
}

// Product of the single-site entropies, S_1^N.
inline double entropy_product(const PureState& state, const MemsOptions& opt = {}) {
  const std::size_t n = state.n_sites();
  if (n < 2) fail(ErrorKind::SizeOutOfRange, "entropy product needs at least 2 sites");
  std::vector<SiteSubset> sites;
  const auto entropies = detail::component_entropies(state, 1, opt, sites);
  double product = 1.0;
  for (double e : entropies) product *= e < kZeroEntropyThreshold ? 0.0 : e;
  return product;
}

// Necessary condition for an LOCC conversion source -> target: every
// component must satisfy S_i >= S_i'. A verdict of "not forbidden" does not
// imply the conversion exists.
inline ComparisonVerdict transform_forbidden(const MemsVector& source, const MemsVector& target,
                                             double tol = kDefaultCompareTolerance) {
  if (source.n_sites != target.n_sites || source.dims != target.dims || source.size() != target.size()) {
    fail(ErrorKind::ShapeMismatch, "cannot compare measures of systems with different shapes");
  }
  ComparisonVerdict verdict;
  for (std::size_t k = 0; k < source.size(); ++k) {
    if (source.values[k] < target.values[k] - tol) {
      verdict.forbidden = true;
      verdict.witness = k + 1;
      verdict.source_value = source.values[k];
      verdict.target_value = target.values[k];
      break;
    }
  }
  return verdict;
}

// Proper mixed state: the weight-average of the members' vectors.
inline MemsVector ensemble_mems(const Ensemble& ensemble, const MemsOptions& opt = {}) {
  MemsOptions member_opt = opt;
  member_opt.keep_per_subset = false;
  MemsVector out;
  out.dims = ensemble.dims();
  out.n_sites = out.dims.size();
  out.values.assign(component_count(out.n_sites), 0.0);
  for (const auto& member : ensemble.members()) {
    if (member.weight == 0.0) continue;
    const MemsVector v = mems_vector(member.state, member_opt);
    for (std::size_t k = 0; k < v.size(); ++k) out.values[k] += member.weight * v.values[k];
  }
  return out;
}

// Closed form of S_i for the n-qubit W state: the binary entropy of i/n.
inline double w_state_closed_form(std::size_t n, std::size_t i) {
  detail::check_component(n, i);
  const double p = static_cast<double>(i) / static_cast<double>(n);
  const double q = static_cast<double>(n - i) / static_cast<double>(n);
  return -q * std::log2(q) - p * std::log2(p);
}

// 2^{(C(n,2) - 2) / C(n,2)}, the published two-site value for cluster states.
inline double cluster_s2_closed_form(std::size_t n) {
  if (n < 4) fail(ErrorKind::SizeOutOfRange, "cluster closed form needs n >= 4");
  const double pairs = static_cast<double>(binomial(n, 2));
  return std::exp2((pairs - 2.0) / pairs);
}

// Largest S_i any pure state on `dims` could have: the geometric mean of the
// per-subset Schmidt bounds log2 min(d_A, d_{A^c}). Equals i for qubits.
inline double component_ceiling(std::span<const std::size_t> dims, std::size_t i) {
  detail::check_component(dims.size(), i);
  std::vector<double> bounds;
  for (SiteSubset s : subsets_of_size(dims.size(), i)) bounds.push_back(subset_entropy_bound(dims, s));
  return geometric_mean_bits(bounds);
}

}  // namespace mems
