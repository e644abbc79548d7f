// Command-line front end for the multiple-entropy measures.
//
//   mems compute   --state NAME --n N | --state-file PATH  [--detail] [--entropy-product] [--json]
//   mems sweep     --state w|ghz|cluster --n RANGE --components LIST [--out PATH]
//   mems compare   SPEC_A SPEC_B [--tol T] [--json]
//   mems ensemble  PATH [--json]
//   mems search    --n N | --dims LIST  --component I [--restarts R] [--seed S] [--out PATH] [--trace PATH]
//   mems saturation --n N | --dims LIST --component I [...search flags]
//
// Exit codes: 0 ok, 2 parse/input error, 3 size out of range, 4 numerical
// failure, 5 unwritable output, 6 shape mismatch, 7 invalid search config.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mems/mems.hpp"

namespace {

using namespace mems;

enum ExitCode : int {
  kOk = 0,
  kParse = 2,
  kSize = 3,
  kNumeric = 4,
  kWrite = 5,
  kShape = 6,
  kConfig = 7,
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::DigitOutOfRange:
    case ErrorKind::WeightInvalid:
      return kParse;
    case ErrorKind::InvalidSize:
    case ErrorKind::SizeOutOfRange:
    case ErrorKind::SubsetInvalid:
      return kSize;
    case ErrorKind::ZeroNorm:
    case ErrorKind::NotHermitian:
    case ErrorKind::NotPSD:
    case ErrorKind::NotNormalized:
      return kNumeric;
    case ErrorKind::IoError:
      return kWrite;
    case ErrorKind::ShapeMismatch:
      return kShape;
    case ErrorKind::ConfigInvalid:
      return kConfig;
  }
  return 1;
}

// 12 significant digits, C locale.
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string join_dims(const Dims& dims) {
  std::string out = "[";
  for (std::size_t k = 0; k < dims.size(); ++k) out += (k ? "," : "") + std::to_string(dims[k]);
  return out + "]";
}

std::string join_sites(const std::vector<std::size_t>& sites) {
  std::string out = "{";
  for (std::size_t k = 0; k < sites.size(); ++k) out += (k ? "," : "") + std::to_string(sites[k]);
  return out + "}";
}

// "3:20", "7", "1,2,3", "1:3,8" -> expanded list.
std::vector<std::size_t> parse_index_list(const std::string& text, const std::string& flag) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  auto number = [&](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      fail(ErrorKind::ParseError, flag + ": '" + text + "' is not a list of non-negative integers or ranges");
    }
    return std::stoul(s);
  };
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      out.push_back(number(item));
      continue;
    }
    const std::size_t lo = number(item.substr(0, colon));
    const std::size_t hi = number(item.substr(colon + 1));
    if (hi < lo) fail(ErrorKind::ParseError, flag + ": empty range '" + item + "'");
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) fail(ErrorKind::ParseError, flag + ": empty list");
  return out;
}

const std::vector<std::string> kRegistry = {"ghz", "w", "cluster", "phi4", "bell-product", "m4", "product"};

std::string registry_list() {
  std::string out;
  for (const auto& name : kRegistry) out += (out.empty() ? "" : ", ") + name;
  return out;
}

bool in_registry(const std::string& name) {
  return std::find(kRegistry.begin(), kRegistry.end(), name) != kRegistry.end();
}

PureState named_state(const std::string& name, std::optional<std::size_t> n) {
  auto need_n = [&]() -> std::size_t {
    if (!n) fail(ErrorKind::ParseError, "state '" + name + "' needs a site count (--n)");
    return *n;
  };
  if (name == "ghz") return ghz(need_n());
  if (name == "w") return w(need_n());
  if (name == "cluster") return linear_cluster(need_n());
  if (name == "product") {
    const std::size_t count = need_n();
    if (count < 1 || count > kMaxDenseQubits) fail(ErrorKind::SizeOutOfRange, "product needs 1..30 qubits");
    return product_state(Dims(count, 2));
  }
  if (name == "bell-product") {
    const std::size_t count = need_n();
    if (count % 2 != 0) fail(ErrorKind::SizeOutOfRange, "bell-product needs an even qubit count");
    return bell_product(count / 2);
  }
  if (name == "phi4" || name == "m4") {
    if (n && *n != 4) fail(ErrorKind::SizeOutOfRange, name + " is a 4-qubit state");
    return name == "phi4" ? phi4_literal() : m4();
  }
  fail(ErrorKind::ParseError, "unknown state '" + name + "'; known states: " + registry_list());
}

PureState read_state_file(const std::string& path) {
  try {
    return load_state(path);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::IoError) fail(ErrorKind::ParseError, e.what());
    throw;
  }
}

// NAME, NAME:N, or a path to a state file.
PureState state_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  if (in_registry(head)) {
    std::optional<std::size_t> n;
    if (colon != std::string::npos) {
      const auto list = parse_index_list(spec.substr(colon + 1), spec);
      if (list.size() != 1) fail(ErrorKind::ParseError, "state spec '" + spec + "' needs a single size");
      n = list.front();
    }
    return named_state(head, n);
  }
  return read_state_file(spec);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write '" + path + "'");
  out << content;
  if (!out) fail(ErrorKind::IoError, "write to '" + path + "' failed");
}

struct Common {
  unsigned threads = 1;
  bool strict = false;
  std::string command_echo;
};

// Large marginal counts get a warning, or an error under --strict.
void check_cost(const Common& common, std::size_t n_sites, bool symmetric = false) {
  if (symmetric) return;
  const std::uint64_t marginals = n_sites >= 2 ? binomial(n_sites, n_sites / 2) : 0;
  if (n_sites > 16 || marginals > 100000) {
    const std::string msg = std::to_string(n_sites) + " sites needs " + std::to_string(marginals) +
                            " marginals for the middle component";
    if (common.strict) fail(ErrorKind::SizeOutOfRange, msg + " (refused under --strict)");
    std::cerr << "warning: " << msg << "; this may be slow\n";
  }
}

json report_header(const Common& common) {
  return json{{"tool", "mems"}, {"version", kVersion}, {"command", common.command_echo}};
}

json mems_json(const MemsVector& v) {
  json j = json::array();
  for (double s : v.values) j.push_back(s);
  return j;
}

// ---------------------------------------------------------------- compute

struct ComputeArgs {
  std::string state;
  std::optional<std::size_t> n;
  std::string state_file;
  bool detail = false;
  bool entropy_product = false;
  bool json = false;
  bool timing = false;
};

int run_compute(const ComputeArgs& args, const Common& common) {
  if (args.state.empty() == args.state_file.empty()) {
    fail(ErrorKind::ParseError, "give exactly one of --state or --state-file");
  }
  const PureState state = args.state.empty() ? read_state_file(args.state_file) : named_state(args.state, args.n);
  check_cost(common, state.n_sites());
  const auto start = std::chrono::steady_clock::now();
  MemsOptions opt;
  opt.threads = common.threads;
  opt.keep_per_subset = args.detail;
  const MemsVector v = mems_vector(state, opt);
  std::optional<double> product;
  if (args.entropy_product) product = entropy_product(state, opt);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (args.json) {
    json j = report_header(common);
    j["state"] = {{"label", state.label()}, {"dims", state.dims()}};
    j["mems"] = mems_json(v);
    if (product) j["entropy_product"] = *product;
    if (args.detail) {
      json rows = json::array();
      for (const auto& e : v.per_subset) rows.push_back({{"sites", e.subset.indices()}, {"bits", e.bits}});
      j["per_subset"] = std::move(rows);
    }
    j["seed"] = nullptr;
    if (args.timing) j["wall_time_s"] = seconds;
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << "state " << (state.label().empty() ? "<unlabeled>" : state.label()) << '\n';
  std::cout << "dims " << join_dims(state.dims()) << '\n';
  for (std::size_t i = 1; i <= v.size(); ++i) std::cout << "S_" << i << " " << fmt(v.s(i)) << '\n';
  if (product) std::cout << "S_E " << fmt(*product) << '\n';
  if (args.detail) {
    for (const auto& e : v.per_subset) std::cout << "E" << join_sites(e.subset.indices()) << " " << fmt(e.bits) << '\n';
  }
  if (args.timing) std::cerr << "wall time " << fmt(seconds) << " s\n";
  return kOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string family;
  std::string n_range;
  std::string components;
  std::string out;
};

std::optional<double> published_value(const std::string& family, std::size_t n, std::size_t i) {
  if (family == "w") return w_state_closed_form(n, i);
  if (family == "ghz") return 1.0;
  if (family == "cluster") {
    if (i == 1) return 1.0;
    if (i == 2 && n >= 4) return cluster_s2_closed_form(n);
    if (i == 3 && n == 6) return std::pow(std::pow(2.0, 10) * std::pow(3.0, 8), 1.0 / 20.0);
  }
  return std::nullopt;
}

int run_sweep(const SweepArgs& args, const Common& common) {
  if (args.family != "w" && args.family != "ghz" && args.family != "cluster") {
    fail(ErrorKind::ParseError, "sweep supports w, ghz and cluster, got '" + args.family + "'");
  }
  const auto ns = parse_index_list(args.n_range, "--n");
  const auto is = parse_index_list(args.components, "--components");
  const bool symmetric = args.family != "cluster";
  std::string csv = "n,i,s_i,closed_form\n";
  for (std::size_t n : ns) {
    const PureState state = named_state(args.family, n);
    check_cost(common, n, symmetric);
    MemsOptions opt;
    opt.threads = common.threads;
    opt.assume_permutation_symmetric = symmetric;
    for (std::size_t i : is) {
      if (i < 1 || i > n / 2) continue;
      const double s = s_component(state, i, opt);
      const auto closed = published_value(args.family, n, i);
      csv += std::to_string(n) + "," + std::to_string(i) + "," + fmt(s) + "," + (closed ? fmt(*closed) : "") + "\n";
    }
  }
  if (args.out.empty()) {
    std::cout << csv;
  } else {
    write_text_file(args.out, csv);
  }
  return kOk;
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
  std::string a;
  std::string b;
  double tol = kDefaultCompareTolerance;
  bool json = false;
};

std::string describe(const std::string& from, const std::string& to, const ComparisonVerdict& v) {
  std::string line = from + " -> " + to + ": ";
  if (!v.forbidden) return line + "not forbidden";
  return line + "FORBIDDEN (S_" + std::to_string(*v.witness) + " " + fmt(v.source_value) + " < " +
         fmt(v.target_value) + ")";
}

json verdict_json(const ComparisonVerdict& v) {
  json j = {{"forbidden", v.forbidden}};
  j["witness"] = v.witness ? json(*v.witness) : json(nullptr);
  return j;
}

int run_compare(const CompareArgs& args, const Common& common) {
  const PureState a = state_from_spec(args.a);
  const PureState b = state_from_spec(args.b);
  if (a.dims() != b.dims()) {
    fail(ErrorKind::ShapeMismatch, "states have dims " + join_dims(a.dims()) + " and " + join_dims(b.dims()));
  }
  check_cost(common, a.n_sites());
  MemsOptions opt;
  opt.threads = common.threads;
  const MemsVector va = mems_vector(a, opt);
  const MemsVector vb = mems_vector(b, opt);
  const auto ab = transform_forbidden(va, vb, args.tol);
  const auto ba = transform_forbidden(vb, va, args.tol);
  const std::string la = a.label().empty() ? "A" : a.label();
  const std::string lb = b.label().empty() ? "B" : b.label();
  if (args.json) {
    json j = report_header(common);
    j["a"] = {{"label", la}, {"dims", a.dims()}, {"mems", mems_json(va)}};
    j["b"] = {{"label", lb}, {"dims", b.dims()}, {"mems", mems_json(vb)}};
    j["tolerance"] = args.tol;
    j["a_to_b"] = verdict_json(ab);
    j["b_to_a"] = verdict_json(ba);
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << describe(la, lb, ab) << '\n' << describe(lb, la, ba) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- ensemble

struct EnsembleArgs {
  std::string path;
  bool json = false;
};

int run_ensemble(const EnsembleArgs& args, const Common& common) {
  Ensemble ens = [&] {
    try {
      return load_ensemble(args.path);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::IoError) fail(ErrorKind::ParseError, e.what());
      throw;
    }
  }();
  check_cost(common, ens.dims().size());
  MemsOptions opt;
  opt.threads = common.threads;
  const MemsVector v = ensemble_mems(ens, opt);
  if (args.json) {
    json j = report_header(common);
    j["ensemble"] = {{"members", ens.members().size()}, {"dims", ens.dims()}};
    j["mems"] = mems_json(v);
    j["seed"] = nullptr;
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << "ensemble " << ens.members().size() << " members\n";
  std::cout << "dims " << join_dims(ens.dims()) << '\n';
  for (std::size_t i = 1; i <= v.size(); ++i) std::cout << "S_" << i << " " << fmt(v.s(i)) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- search

struct SearchArgs {
  std::optional<std::size_t> n;
  std::string dims;
  std::size_t component = 1;
  std::size_t restarts = 20;
  std::size_t max_iters = 20000;
  double step_init = 0.1;
  double step_min = 1e-6;
  std::uint64_t seed = 0;
  std::string out;
  std::string trace;
  bool json = false;
};

SearchConfig to_config(const SearchArgs& args, const Common& common) {
  SearchConfig cfg;
  if (args.n.has_value() == !args.dims.empty()) fail(ErrorKind::ConfigInvalid, "give exactly one of --n or --dims");
  if (args.n) {
    cfg.dims = Dims(*args.n, 2);
  } else {
    cfg.dims = parse_index_list(args.dims, "--dims");
  }
  cfg.component = args.component;
  cfg.restarts = args.restarts;
  cfg.max_iters = args.max_iters;
  cfg.step_init = args.step_init;
  cfg.step_min = args.step_min;
  cfg.seed = args.seed;
  cfg.threads = common.threads;
  validate(cfg);
  return cfg;
}

json config_json(const SearchConfig& cfg) {
  return {{"dims", cfg.dims},          {"component", cfg.component}, {"restarts", cfg.restarts},
          {"max_iters", cfg.max_iters}, {"step_init", cfg.step_init}, {"step_min", cfg.step_min}};
}

void write_search_outputs(const SearchArgs& args, const SearchResult& result) {
  if (!args.out.empty()) write_text_file(args.out, state_to_json(result.best_state).dump(2) + "\n");
  if (!args.trace.empty()) {
    std::string csv = "iteration,value\n";
    for (const auto& p : result.trace) csv += std::to_string(p.iteration) + "," + fmt(p.value) + "\n";
    write_text_file(args.trace, csv);
  }
}

int run_search(const SearchArgs& args, const Common& common) {
  const SearchConfig cfg = to_config(args, common);
  const SearchResult result = maximize_component(cfg);
  write_search_outputs(args, result);
  if (args.json) {
    json j = report_header(common);
    j["seed"] = cfg.seed;
    j["config"] = config_json(cfg);
    j["best_value"] = result.best_value;
    j["restart_index"] = result.restart_index;
    j["restart_values"] = result.restart_values;
    j["accepted_moves"] = result.trace.size() - 1;
    j["best_state"] = state_to_json(result.best_state);
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << "dims " << join_dims(cfg.dims) << '\n';
  std::cout << "seed " << cfg.seed << '\n';
  std::cout << "best S_" << cfg.component << " " << fmt(result.best_value) << '\n';
  std::cout << "restart " << result.restart_index << " of " << cfg.restarts << '\n';
  std::cout << "accepted moves " << result.trace.size() - 1 << '\n';
  return kOk;
}

int run_saturation(const SearchArgs& args, const Common& common) {
  const SearchConfig cfg = to_config(args, common);
  const SaturationReport report = saturation_report(cfg);
  write_search_outputs(args, report.search);
  if (args.json) {
    json j = report_header(common);
    j["seed"] = cfg.seed;
    j["config"] = config_json(cfg);
    j["ceiling"] = report.ceiling;
    j["observed"] = report.observed;
    j["gap"] = report.gap;
    if (report.reference_value) {
      j["reference"] = {{"label", *report.reference_label}, {"value", *report.reference_value}};
    }
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << "dims " << join_dims(cfg.dims) << '\n';
  std::cout << "ceiling S_" << cfg.component << " " << fmt(report.ceiling) << '\n';
  std::cout << "observed " << fmt(report.observed) << '\n';
  std::cout << "gap " << fmt(report.gap) << '\n';
  if (report.reference_value) {
    std::cout << "reference " << *report.reference_label << " " << fmt(*report.reference_value) << '\n';
  }
  return kOk;
}

unsigned default_threads() {
  if (const char* env = std::getenv("MEMS_THREADS")) {
    try {
      const unsigned long v = std::stoul(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (...) {
    }
    std::cerr << "warning: ignoring MEMS_THREADS='" << env << "'\n";
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple entropy measures for multipartite pure states"};
  app.set_version_flag("--version", std::string(mems::kVersion));
  app.require_subcommand(1);

  Common common;
  common.threads = default_threads();
  for (int k = 1; k < argc; ++k) common.command_echo += (k > 1 ? " " : "") + std::string(argv[k]);
  app.add_option("--threads", common.threads, "Worker threads (default: MEMS_THREADS or 1)")
      ->check(CLI::Range(1u, 1024u));
  app.add_flag("--strict", common.strict, "Refuse problem sizes that would only warn");

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Print the measure vector of one state");
  c->add_option("--state", compute.state, "Named state: " + registry_list());
  c->add_option("--n", compute.n, "Number of qubits for the named state");
  c->add_option("--state-file", compute.state_file, "JSON state file");
  c->add_flag("--detail", compute.detail, "Also print every subset entropy");
  c->add_flag("--entropy-product", compute.entropy_product, "Also print the single-site entropy product");
  c->add_flag("--json", compute.json, "JSON report on stdout");
  c->add_flag("--timing", compute.timing, "Report wall time");

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "CSV of S_i over a range of sizes");
  s->add_option("--state", sweep.family, "w, ghz or cluster")->required();
  s->add_option("--n", sweep.n_range, "Sizes, e.g. 3:20 or 4,6,8")->required();
  s->add_option("--components", sweep.components, "Components i, e.g. 1,2,3 or 1:10")->required();
  s->add_option("--out", sweep.out, "CSV output path (default stdout)");

  CompareArgs compare;
  auto* cmp = app.add_subcommand("compare", "Apply the LOCC no-go test in both directions");
  cmp->add_option("a", compare.a, "State: NAME[:N] or file")->required();
  cmp->add_option("b", compare.b, "State: NAME[:N] or file")->required();
  cmp->add_option("--tol", compare.tol, "Comparison tolerance")->check(CLI::NonNegativeNumber);
  cmp->add_flag("--json", compare.json, "JSON report on stdout");

  EnsembleArgs ensemble;
  auto* e = app.add_subcommand("ensemble", "Weight-averaged measure of a proper mixed state");
  e->add_option("path", ensemble.path, "JSON ensemble file")->required();
  e->add_flag("--json", ensemble.json, "JSON report on stdout");

  SearchArgs search;
  auto add_search_flags = [&](CLI::App* sub) {
    sub->add_option("--n", search.n, "Number of qubits");
    sub->add_option("--dims", search.dims, "Site dimensions, e.g. 4,4,4,4");
    sub->add_option("--component", search.component, "Component i to maximize")->required();
    sub->add_option("--restarts", search.restarts, "Independent restarts");
    sub->add_option("--max-iters", search.max_iters, "Proposals per restart");
    sub->add_option("--step-init", search.step_init, "Initial step");
    sub->add_option("--step-min", search.step_min, "Stop once the step falls below this");
    sub->add_option("--seed", search.seed, "Random seed");
    sub->add_option("--out", search.out, "Write the best state to this JSON file");
    sub->add_option("--trace", search.trace, "Write accepted moves of the best restart as CSV");
    sub->add_flag("--json", search.json, "JSON report on stdout");
  };
  auto* se = app.add_subcommand("search", "Hill-climb for a state maximizing S_i");
  add_search_flags(se);
  auto* sat = app.add_subcommand("saturation", "Compare the best found S_i with its ceiling");
  add_search_flags(sat);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForVersion& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kParse;
  }

  try {
    if (*c) return run_compute(compute, common);
    if (*s) return run_sweep(sweep, common);
    if (*cmp) return run_compare(compare, common);
    if (*e) return run_ensemble(ensemble, common);
    if (*se) return run_search(search, common);
    if (*sat) return run_saturation(search, common);
  } catch (const mems::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return exit_code_for(err.kind());
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return kOk;
}
