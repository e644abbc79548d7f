#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mems/entropy.hpp"
#include "mems/ops.hpp"
#include "mems/states.hpp"
#include "mems/subsets.hpp"
#include "oracles.hpp"

using namespace mems;

namespace {

DensityMatrix diag(std::vector<double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t k = 0; k < d.size(); ++k) m(k, k) = d[k];
  return DensityMatrix::from_matrix(m);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected mems::Error";
  return ErrorKind::IoError;
}

}  // namespace

TEST(ReducedDensityMatrix, BellMarginalIsMaximallyMixed) {
  const auto rho = reduced_density_matrix(ghz(2), SiteSubset({0}, 2));
  EXPECT_NEAR(rho(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(rho(1, 1).real(), 0.5, 1e-15);
  EXPECT_EQ(rho(0, 1), Complex{});
}

TEST(ReducedDensityMatrix, ProductMarginalIsPure) {
  const auto rho = reduced_density_matrix(product_state({2, 2}), SiteSubset({0}, 2));
  EXPECT_EQ(rho(0, 0), Complex(1.0));
  EXPECT_EQ(rho(1, 1), Complex{});
}

TEST(ReducedDensityMatrix, Ghz3PairMatchesBruteForce) {
  const auto state = ghz(3);
  const SiteSubset pair({0, 1}, 3);
  const auto rho = reduced_density_matrix(state, pair);
  const auto ref = oracle::brute_force_partial_trace(state, pair);
  EXPECT_LT(oracle::max_abs_diff(rho.matrix(), ref), 1e-15);
  // diag(1/2, 0, 0, 1/2)
  EXPECT_NEAR(ref(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(ref(3, 3).real(), 0.5, 1e-15);
  EXPECT_EQ(ref(1, 1), Complex{});
  EXPECT_EQ(ref(2, 2), Complex{});
  EXPECT_EQ(ref(0, 3), Complex{});
}

// Oracle equivalence over random states of mixed dimensions, every subset.
TEST(ReducedDensityMatrix, MatchesBruteForceOnRandomStates) {
  const std::vector<Dims> shapes = {{2, 2}, {2, 3}, {3, 2, 2}, {2, 2, 2, 2}, {2, 3, 2, 2}, Dims(5, 2), Dims(6, 2)};
  std::uint64_t seed = 1;
  for (const auto& dims : shapes) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto state = haar_random(dims, seed++);
      for (std::size_t k = 1; k <= dims.size(); ++k) {
        for (SiteSubset s : subsets_of_size(dims.size(), k)) {
          const auto rho = reduced_density_matrix(state, s);
          ASSERT_LT(oracle::max_abs_diff(rho.matrix(), oracle::brute_force_partial_trace(state, s)), 1e-9);
        }
      }
    }
  }
}

TEST(ReducedDensityMatrix, RejectsForeignSubset) {
  EXPECT_EQ(kind_of([] { reduced_density_matrix(ghz(3), SiteSubset({0}, 4)); }), ErrorKind::SubsetInvalid);
}

TEST(VonNeumannEntropy, Examples) {
  EXPECT_DOUBLE_EQ(von_neumann_entropy(diag({0.5, 0.5})), 1.0);
  EXPECT_EQ(von_neumann_entropy(diag({1.0, 0.0})), 0.0);
  // -3/4 log2 3/4 - 1/4 log2 1/4, evaluated to 30 digits offline.
  EXPECT_NEAR(von_neumann_entropy(diag({0.75, 0.25})), 0.811278124459132863909695792039, 1e-14);
}

TEST(VonNeumannEntropy, ClampWindow) {
  // A tiny negative eigenvalue from round-off is treated as zero.
  EXPECT_NEAR(von_neumann_entropy(diag({1.0 + 5e-10, -5e-10})), 0.0, 1e-8);
  EXPECT_EQ(kind_of([] { von_neumann_entropy(diag({1.1, -0.1})); }), ErrorKind::NotPSD);
  EXPECT_EQ(kind_of([] { diag({0.5, 0.4}); }), ErrorKind::NotNormalized);
  const std::vector<double> bad_sum = {0.5, 0.4};
  EXPECT_EQ(kind_of([&] { spectrum_entropy(bad_sum); }), ErrorKind::NotNormalized);
}

TEST(SubsetEntropy, GhzAndPhi4Examples) {
  const auto g4 = ghz(4);
  for (SiteSubset s : subsets_of_size(4, 2)) EXPECT_NEAR(subset_entropy(g4, s), 1.0, 1e-12);
  const auto phi = phi4_literal();
  EXPECT_NEAR(subset_entropy(phi, SiteSubset({0, 1}, 4)), 1.0, 1e-12);
  EXPECT_NEAR(subset_entropy(phi, SiteSubset({2, 3}, 4)), 1.0, 1e-12);
  EXPECT_NEAR(subset_entropy(phi, SiteSubset({0, 2}, 4)), 2.0, 1e-12);
  EXPECT_NEAR(subset_entropy(phi, SiteSubset({1, 3}, 4)), 2.0, 1e-12);
  EXPECT_EQ(subset_entropy(phi, SiteSubset({0, 1, 2, 3}, 4)), 0.0);
}

TEST(SubsetEntropy, AgreesWithDirectRoute) {
  const auto state = haar_random({2, 3, 2, 4}, 5);
  for (std::size_t k = 1; k <= 4; ++k)
    for (SiteSubset s : subsets_of_size(4, k))
      EXPECT_NEAR(subset_entropy(state, s), subset_entropy_direct(state, s), 1e-10);
}

// Both sides computed through the full reduced density matrix.
TEST(SubsetEntropy, SchmidtSymmetryBothSidesDirect) {
  std::uint64_t seed = 40;
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto state = haar_random(Dims(n, 2), seed++);
    for (std::size_t k = 1; k < n; ++k)
      for (SiteSubset s : subsets_of_size(n, k))
        ASSERT_NEAR(subset_entropy_direct(state, s), subset_entropy_direct(state, s.complement()), 1e-9);
  }
  const auto qudits = haar_random({3, 2, 4}, 77);
  for (SiteSubset s : subsets_of_size(3, 1))
    EXPECT_NEAR(subset_entropy_direct(qudits, s), subset_entropy_direct(qudits, s.complement()), 1e-9);
}

TEST(SubsetEntropy, WithinSchmidtBound) {
  const std::vector<Dims> shapes = {Dims(6, 2), {2, 3, 4}, {3, 3, 3}, {4, 2, 2, 2}};
  std::uint64_t seed = 900;
  for (const auto& dims : shapes) {
    const auto state = haar_random(dims, seed++);
    for (std::size_t k = 1; k < dims.size(); ++k)
      for (SiteSubset s : subsets_of_size(dims.size(), k)) {
        const double e = subset_entropy(state, s);
        EXPECT_GE(e, 0.0);
        EXPECT_LE(e, subset_entropy_bound(dims, s) + 1e-9);
      }
  }
}

TEST(SubsetEntropy, LocalUnitaryInvariance) {
  std::mt19937_64 rng(2024);
  const std::vector<Dims> shapes = {Dims(5, 2), {2, 3, 2, 3}};
  std::uint64_t seed = 300;
  for (const auto& dims : shapes) {
    const auto state = haar_random(dims, seed++);
    PureState rotated = state;
    for (std::size_t site = 0; site < dims.size(); ++site)
      rotated = apply_site_unitary(rotated, site, haar_unitary(dims[site], rng));
    for (std::size_t k = 1; k < dims.size(); ++k)
      for (SiteSubset s : subsets_of_size(dims.size(), k))
        EXPECT_NEAR(subset_entropy(state, s), subset_entropy(rotated, s), 1e-8);
  }
}

// Sparse states exercise the zero row/column compression.
TEST(SubsetEntropy, SparseStatesAtTwentyQubits) {
  const auto w20 = w(20);
  std::vector<std::size_t> half(10);
  for (std::size_t k = 0; k < 10; ++k) half[k] = k;
  EXPECT_NEAR(subset_entropy(w20, SiteSubset(half, 20)), 1.0, 1e-12);
  EXPECT_NEAR(subset_entropy(w20, SiteSubset({3}, 20)), oracle::binary_entropy(0.05), 1e-12);
  EXPECT_NEAR(subset_entropy(ghz(20), SiteSubset(half, 20)), 1.0, 1e-12);
}
