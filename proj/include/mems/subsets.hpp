#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <vector>

#include "mems/error.hpp"
#include "mems/state.hpp"

namespace mems {

// Exact binomial coefficient; throws InvalidSize on 64-bit overflow.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    // After this step result == C(n - k + j, j), so the division is exact.
    const unsigned __int128 wide = static_cast<unsigned __int128>(result) * (n - k + j) / j;
    if (wide > std::numeric_limits<std::uint64_t>::max()) fail(ErrorKind::InvalidSize, "binomial overflow");
    result = static_cast<std::uint64_t>(wide);
  }
  return result;
}

// Lexicographic walk over the k-element subsets of {0, ..., n-1}.
class SubsetRange {
 public:
  SubsetRange(std::size_t n_sites, std::size_t k) : n_(n_sites), k_(k) {
    if (k < 1 || k > n_sites) {
      fail(ErrorKind::InvalidSize, "subset size " + std::to_string(k) + " not in [1, " + std::to_string(n_sites) + "]");
    }
  }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = SiteSubset;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = SiteSubset;

    iterator() = default;
    iterator(std::size_t n, std::size_t k) : n_(n), combo_(k), done_(false) {
      for (std::size_t j = 0; j < k; ++j) combo_[j] = j;
    }

    SiteSubset operator*() const { return SiteSubset(combo_, n_); }

    iterator& operator++() {
      const std::size_t k = combo_.size();
      std::size_t j = k;
      while (j > 0 && combo_[j - 1] == n_ - k + (j - 1)) --j;
      if (j == 0) {
        done_ = true;
        return *this;
      }
      ++combo_[j - 1];
      for (std::size_t t = j; t < k; ++t) combo_[t] = combo_[t - 1] + 1;
      return *this;
    }

    void operator++(int) { ++*this; }

    friend bool operator==(const iterator& a, const iterator& b) {
      if (a.done_ || b.done_) return a.done_ == b.done_;
      return a.combo_ == b.combo_;
    }

   private:
    std::size_t n_ = 0;
    std::vector<std::size_t> combo_;
    bool done_ = true;
  };

  iterator begin() const { return iterator(n_, k_); }
  iterator end() const { return iterator(); }
  std::uint64_t count() const { return binomial(n_, k_); }

 private:
  std::size_t n_;
  std::size_t k_;
};

inline SubsetRange subsets_of_size(std::size_t n_sites, std::size_t k) { return SubsetRange(n_sites, k); }

inline std::vector<SiteSubset> collect_subsets(std::size_t n_sites, std::size_t k) {
  std::vector<SiteSubset> out;
  SubsetRange range(n_sites, k);
  out.reserve(static_cast<std::size_t>(range.count()));
  for (SiteSubset s : range) out.push_back(std::move(s));
  return out;
}

}  // namespace mems
