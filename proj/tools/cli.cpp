#include "cli.hpp"

#include "plval/integration.hpp"
#include "plval/json_io.hpp"
#include "plval/pl_function.hpp"
#include "plval/polytope.hpp"
#include "plval/valuation.hpp"
#include "plval/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace plval::cli {

namespace {

Error usage(const std::string& what) { return Error(ErrorCode::InvalidInput, what); }

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw usage("cannot write " + path);
  file << text;
}

const std::string& require(const std::string& value, const char* flag) {
  if (value.empty()) throw usage(std::string("missing ") + flag);
  return value;
}

Polytope centred_cube(int n) {
  std::vector<Vec> pts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1 ? 1.0 : -1.0;
    pts.push_back(x);
  }
  return hull_from_points(pts);
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  std::istringstream in(text);
  std::string a, b, c, extra;
  if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c, ':') || std::getline(in, extra))
    throw usage("--s-grid must be \"start:stop:step\"");
  GridSpec g{};
  try {
    std::size_t used = 0;
    g.start = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    g.stop = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    g.step = std::stod(c, &used);
    if (used != c.size()) throw std::invalid_argument(c);
  } catch (const std::logic_error&) {
    throw usage("--s-grid has a non-numeric field: " + text);
  }
  if (!(g.step > 0.0) || !(g.stop > g.start)) throw usage("--s-grid needs step > 0 and stop > start");
  return g;
}

int cmd_polytope(const RunConfig& config, std::ostream& out) {
  const Polytope p = polytope_from_json(read_json_file(require(config.input, "--input")));
  Json j = to_json(p);
  j["volume"] = volume(p);
  j["polar_volume"] = volume(polar(p));
  std::vector<double> exponents = config.q_list;
  if (config.p) exponents.insert(exponents.begin(), *config.p);
  if (exponents.empty()) exponents.push_back(1.0);
  j["p_surface_area"] = Json::array();
  for (double e : exponents) {
    if (!(e >= 1.0)) throw usage("surface-area exponents must be >= 1");
    j["p_surface_area"].push_back({{"p", e}, {"value", p_surface_area(p, e)}});
  }
  emit(config.output, dump_canonical(j) + "\n", out);
  return kOk;
}

int cmd_norms(const RunConfig& config, std::ostream& out) {
  const PLFunction f = pl_function_from_json(read_json_file(require(config.input, "--input")));
  const double p = config.p.value_or(1.0);
  if (!(p >= 1.0)) throw usage("--p must be >= 1");
  const std::vector<double> qs = config.q_list.empty() ? std::vector<double>{p} : config.q_list;
  Json j;
  j["p"] = p;
  j["lq_norms"] = Json::array();
  for (double q : qs) {
    if (!(q >= 1.0)) throw usage("every entry of --q-list must be >= 1");
    j["lq_norms"].push_back({{"q", q}, {"value", lq_norm(f, q)}});
  }
  j["gradient_norm"] = grad_p_norm(f, p);
  j["sobolev_norm"] = sobolev_norm(f, p);
  emit(config.output, dump_canonical(j) + "\n", out);
  return kOk;
}

int cmd_valuate(const RunConfig& config, std::ostream& out) {
  const ValuationKernel h = kernel_from_json(read_json_file(require(config.kernel, "--kernel")));
  if (config.input.empty() && config.s_grid.empty()) throw usage("valuate needs --input, --s-grid, or both");
  int n = config.n.value_or(2);
  if (!config.input.empty()) {
    const PLFunction f = pl_function_from_json(read_json_file(config.input));
    if (config.n && *config.n != f.dim()) throw usage("--n disagrees with the function dimension");
    n = f.dim();
    Json j;
    j["z"] = apply(h, f);
    emit(config.output, dump_canonical(j) + "\n", out);
  }
  if (!config.s_grid.empty()) {
    const GridSpec g = parse_grid(config.s_grid);
    const CProfile profile = c_profile(h, centred_cube(n), uniform_grid(g.start, g.stop, g.step));
    // Without a function the profile is the primary output.
    const std::string& path = config.input.empty() && config.profile_output.empty() ? config.output : config.profile_output;
    if (!config.input.empty() && path.empty()) throw usage("with --input, the profile needs --profile <path>");
    emit(path, profile_csv(profile), out);
  }
  return kOk;
}

int cmd_recover(const RunConfig& config, std::ostream& out) {
  if (!config.n) throw usage("recover needs --n");
  const CProfile profile = profile_from_csv(read_text_file(require(config.input, "--input")), *config.n);
  const TabulatedKernel kernel = recover_kernel(profile, *config.n);
  Json growth = nullptr;
  const double p = config.p.value_or(1.0);
  try {
    growth = to_json(growth_check(profile, p, *config.n));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InsufficientDecades) throw;
    growth = {{"note", e.what()}};
  }
  if (config.output.empty()) {
    emit("", dump_canonical(Json{{"kernel", to_json(ValuationKernel(kernel))}, {"growth", growth}}) + "\n", out);
  } else {
    emit(config.output, dump_canonical(to_json(ValuationKernel(kernel))) + "\n", out);
    out << dump_canonical(growth) << "\n";
  }
  return kOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto names = config.suites.empty() ? default_suite_names() : config.suites;
  const auto known = default_suite_names();
  for (const auto& name : names)
    if (std::find(known.begin(), known.end(), name) == known.end()) throw usage("unknown suite \"" + name + "\"");
  if (config.tolerance && !(*config.tolerance >= 0.0)) throw usage("--tolerance must be >= 0");
  SuiteOptions opts;
  opts.seed = config.seed;
  opts.threads = config.threads;
  opts.tolerance = config.tolerance;
  std::vector<PropertyReport> reports;
  for (const auto& name : names) {
    auto r = run_suite(name, opts);
    reports.insert(reports.end(), r.begin(), r.end());
  }
  emit(config.output, reports_jsonl(reports, config.timings), out);
  const std::string summary = summary_csv(summarize(reports));
  if (config.summary_output.empty())
    err << summary;
  else
    emit(config.summary_output, summary, out);
  return all_passed(reports) ? kOk : kVerifyFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Valuations on piecewise linear functions: construction, norms, kernels and verification."};
  app.require_subcommand(1);
  RunConfig config;
  std::string q_list;

  auto* polytope = app.add_subcommand("polytope", "polytope JSON -> facets, volume, polar volume, p-surface areas");
  auto* norms = app.add_subcommand("norms", "function JSON -> L^q norms, gradient norm, Sobolev norm");
  auto* valuate = app.add_subcommand("valuate", "kernel + function -> z(f); optional c-profile CSV over --s-grid");
  auto* recover = app.add_subcommand("recover", "c-profile CSV -> tabulated kernel JSON and growth report");
  auto* verify = app.add_subcommand("verify", "run property suites; exit 0 iff all pass");

  for (auto* sub : {polytope, norms, valuate, recover, verify}) {
    sub->add_option("--output", config.output, "output path (default stdout)");
    sub->add_option("--n", config.n, "dimension");
    sub->add_option("--p", config.p, "Sobolev exponent");
    sub->add_option("--seed", config.seed, "random seed")->capture_default_str();
    sub->add_option("--threads", config.threads, "worker threads")->check(CLI::PositiveNumber);
  }
  for (auto* sub : {polytope, norms, valuate, recover}) sub->add_option("--input", config.input, "input file");
  for (auto* sub : {polytope, norms}) sub->add_option("--q-list", q_list, "comma-separated exponents");
  valuate->add_option("--kernel", config.kernel, "kernel JSON");
  valuate->add_option("--s-grid", config.s_grid, "profile grid \"start:stop:step\"");
  valuate->add_option("--profile", config.profile_output, "profile CSV path when --input is also given");
  verify->add_option("--suite", config.suites, "suite name (repeatable; default all)")->delimiter(',');
  verify->add_option("--tolerance", config.tolerance, "override every identity tolerance");
  verify->add_flag("--timings", config.timings, "add per-case wall time to the reports");
  verify->add_option("--summary", config.summary_output, "summary CSV path (default stderr)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    for (auto* sub : app.get_subcommands()) config.subcommand = sub->get_name();
    if (!q_list.empty()) {
      std::istringstream in(q_list);
      std::string item;
      while (std::getline(in, item, ',')) {
        try {
          std::size_t used = 0;
          config.q_list.push_back(std::stod(item, &used));
          if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
          throw usage("--q-list entry is not a number: \"" + item + "\"");
        }
      }
    }
    if (config.n && *config.n < 1) throw usage("--n must be positive");
    if (config.n && config.p && !(*config.p < *config.n)) throw usage("--p must be smaller than --n");

    if (config.subcommand == "polytope") return cmd_polytope(config, out);
    if (config.subcommand == "norms") return cmd_norms(config, out);
    if (config.subcommand == "valuate") return cmd_valuate(config, out);
    if (config.subcommand == "recover") return cmd_recover(config, out);
    return cmd_verify(config, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace plval::cli
