#pragma once

// Derivative-free hill climbing for states that locally maximize one S_i.
//
// Each restart starts from a seeded random state, proposes Gaussian moves of
// the real and imaginary amplitude parts, renormalizes, and keeps a move only
// if it raises S_i by more than kAcceptMargin. After kRejectionWindow
// consecutive rejections the step is halved; a restart ends when the step
// falls below step_min or max_iters proposals have been made.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mems/error.hpp"
#include "mems/measures.hpp"
#include "mems/parallel.hpp"
#include "mems/state.hpp"
#include "mems/states.hpp"

namespace mems {

struct SearchConfig {
  Dims dims;                 // one entry per site
  std::size_t component = 1; // i in S_i
  std::size_t restarts = 20;
  std::size_t max_iters = 20000;
  double step_init = 0.1;
  double step_min = 1e-6;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  static SearchConfig qubits(std::size_t n, std::size_t component) {
    SearchConfig cfg;
    cfg.dims = Dims(n, 2);
    cfg.component = component;
    return cfg;
  }

  std::size_t n_sites() const noexcept { return dims.size(); }
};

struct TracePoint {
  std::size_t iteration;
  double value;
};

struct SearchResult {
  PureState best_state;
  double best_value = 0.0;
  std::vector<TracePoint> trace;     // accepted moves of the winning restart
  std::size_t restart_index = 0;
  std::vector<double> restart_values; // best value reached by each restart
};

inline constexpr double kAcceptMargin = 1e-12;
inline constexpr std::size_t kRejectionWindow = 50;
inline constexpr double kStepShrink = 0.5;

inline void validate(const SearchConfig& cfg) {
  auto bad = [](const std::string& what) { fail(ErrorKind::ConfigInvalid, what); };
  if (cfg.dims.size() < 2) bad("search needs at least 2 sites");
  for (std::size_t d : cfg.dims) {
    if (d < 2) bad("site dimensions must be >= 2");
  }
  if (cfg.component < 1 || cfg.component > cfg.dims.size() / 2) {
    bad("component must lie in [1, " + std::to_string(cfg.dims.size() / 2) + "]");
  }
  if (cfg.restarts < 1) bad("restarts must be >= 1");
  if (!(cfg.step_init > 0.0) || !(cfg.step_min > 0.0) || !(cfg.step_min < cfg.step_init)) {
    bad("need 0 < step_min < step_init");
  }
  if (dims_product(cfg.dims) > (std::size_t{1} << 20)) bad("state space too large for a dense search");
}

namespace detail {

struct RestartOutcome {
  std::vector<Complex> amps;
  double value = 0.0;
  std::vector<TracePoint> trace;
};

inline RestartOutcome climb(const SearchConfig& cfg, std::size_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t size = dims_product(cfg.dims);

  auto normalize = [](std::vector<Complex>& v) {
    double sq = 0.0;
    for (const Complex& a : v) sq += std::norm(a);
    const double norm = std::sqrt(sq);
    for (Complex& a : v) a /= norm;
  };
  auto objective = [&](const std::vector<Complex>& v) {
    return s_component(make_state(cfg.dims, v), cfg.component);
  };

  RestartOutcome out;
  out.amps.resize(size);
  for (Complex& a : out.amps) {
    const double re = normal(rng);
    const double im = normal(rng);
    a = Complex(re, im);
  }
  normalize(out.amps);
  out.value = objective(out.amps);
  out.trace.push_back({0, out.value});

  double step = cfg.step_init;
  std::size_t rejections = 0;
  std::vector<Complex> candidate(size);
  for (std::size_t iter = 1; iter <= cfg.max_iters && step >= cfg.step_min; ++iter) {
    for (std::size_t k = 0; k < size; ++k) {
      const double re = normal(rng);
      const double im = normal(rng);
      candidate[k] = out.amps[k] + step * Complex(re, im);
    }
    normalize(candidate);
    const double value = objective(candidate);
    if (value > out.value + kAcceptMargin) {
      out.amps.swap(candidate);
      out.value = value;
      out.trace.push_back({iter, value});
      rejections = 0;
    } else if (++rejections >= kRejectionWindow) {
      step *= kStepShrink;
      rejections = 0;
    }
  }
  return out;
}

}  // namespace detail

inline SearchResult maximize_component(const SearchConfig& cfg) {
  validate(cfg);
  auto outcomes = parallel_map<detail::RestartOutcome>(cfg.restarts, cfg.threads,
                                                       [&](std::size_t r) { return detail::climb(cfg, r); });
  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r) {
    if (outcomes[r].value > outcomes[best].value) best = r;
  }
  std::vector<double> values;
  for (const auto& o : outcomes) values.push_back(o.value);
  auto& winner = outcomes[best];
  const std::string label = "search(S_" + std::to_string(cfg.component) + ", seed=" + std::to_string(cfg.seed) +
                            ", restart=" + std::to_string(best) + ")";
  return SearchResult{make_state(cfg.dims, std::move(winner.amps), label), winner.value, std::move(winner.trace), best,
                      std::move(values)};
}

struct SaturationReport {
  double ceiling = 0.0;
  double observed = 0.0;
  double gap = 0.0;  // ceiling - observed
  std::optional<std::string> reference_label;
  std::optional<double> reference_value;
  SearchResult search;
};

// Known constructions that the search can be checked against.
inline std::optional<PureState> reference_state(const Dims& dims, std::size_t component) {
  const bool qubits = std::all_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 2; });
  if (qubits && component == 1 && (dims.size() == 2 || dims.size() == 3)) return ghz(dims.size());
  if (qubits && component == 2 && dims.size() == 4) return m4();
  if (dims == Dims(4, 4) && component == 2) return ame_four_ququarts();
  return std::nullopt;
}

inline SaturationReport saturation_report(const SearchConfig& cfg) {
  validate(cfg);
  SearchResult search = maximize_component(cfg);
  const double ceiling = component_ceiling(cfg.dims, cfg.component);
  SaturationReport report{ceiling, search.best_value, ceiling - search.best_value, std::nullopt, std::nullopt,
                          std::move(search)};
  if (auto ref = reference_state(cfg.dims, cfg.component)) {
    report.reference_label = ref->label();
    report.reference_value = s_component(*ref, cfg.component);
  }
  return report;
}

}  // namespace mems
