// Property suites: each identity of the theory becomes a seeded numerical
// experiment that emits PropertyReports.
#pragma once

#include "plval/complex.hpp"
#include "plval/kernel.hpp"
#include "plval/polytope.hpp"
#include "plval/report.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plval {

struct SuiteOptions {
  std::uint64_t seed = 0;
  int threads = 1;
  /// Replaces the default tolerance of every identity check when set.
  std::optional<double> tolerance;
};

/// ||l_P||_p^p = c_{p,n} |P| and ||grad l_P||_p^p = S_p(P) / n for `count`
/// random polytopes per exponent.
std::vector<PropertyReport> norm_identity_suite(int n, int count, const std::vector<double>& exponents,
                                                const SuiteOptions& opts = {});

/// z(f v g) + z(f ^ g) = z(f) + z(g) on random pairs of nonnegative
/// functions, one report per pair and kernel. Overlay failures are skipped
/// cases.
std::vector<PropertyReport> valuation_identity_suite(const std::vector<ValuationKernel>& kernels, int n, int count,
                                                     const SuiteOptions& opts = {});

/// z(f o phi^-1) = z(f) for `count` random unimodular maps and `count`
/// random translations.
std::vector<PropertyReport> invariance_suite(const ValuationKernel& h, int n, int count,
                                             const SuiteOptions& opts = {});

/// z(s f) = |s|^q z(f) for s in {-2, -1, -1/2, 1/2, 1, 2}, the normalization
/// of homogeneous_kernel on l_P, and the growth classification of q against
/// [p, p*]: for q outside the range the report passes when the growth check
/// flags the violation.
std::vector<PropertyReport> homogeneity_suite(double q, double p, int n, const SuiteOptions& opts = {});

/// Round trip Power{1,q} -> c_profile -> recover_kernel at step 1e-2 on
/// [0, 2], the error drop when the step is halved, and polytope
/// independence of the profile.
std::vector<PropertyReport> kernel_recovery_suite(const std::vector<double>& exponents,
                                                  const SuiteOptions& opts = {});

/// psi_check for k = 1..n at the given points.
std::vector<PropertyReport> psi_suite(const ValuationKernel& h, int n, const std::vector<double>& points,
                                      const SuiteOptions& opts = {});

/// Disjoint join of k copies of l_P scaled by k^-i (i = 1..k), times s:
/// norm formulas for k = 1..k_max, decay of the Sobolev norm, and z for a
/// power kernel. Throws Error{PackingFailure} if copies overlap.
std::vector<PropertyReport> continuity_example_1(const Polytope& p, double s, int k_max, double exponent,
                                                 double q, const SuiteOptions& opts = {});

/// Growth families for the scaled-cone examples.
enum class GrowthFamily { Log, Sqrt };
GrowthFamily growth_family_from_string(const std::string& name);

/// l_{P_k} / k with P_k = P (k^p / f(1/k))^(1/n); f(x) = 1 + ln(1/x) or
/// x^(-1/2).
std::vector<PropertyReport> continuity_example_2(const Polytope& p, GrowthFamily family,
                                                 const std::vector<double>& ks, double exponent, double q,
                                                 const SuiteOptions& opts = {});
/// k l_{P_k} with P_k = P / (k^(p*) f(k))^(1/n); f(x) = 1 + ln x or x^(1/2).
std::vector<PropertyReport> continuity_example_3(const Polytope& p, GrowthFamily family,
                                                 const std::vector<double>& ks, double exponent, double q,
                                                 const SuiteOptions& opts = {});

/// z(f) = sum over nonempty J of (-1)^(|J|-1) z(meet of tents in J), for the
/// tent decomposition of f (at most 8 simplices).
std::vector<PropertyReport> inclusion_exclusion_suite(const ValuationKernel& h, const PLFunction& f,
                                                      const std::string& label, const SuiteOptions& opts = {});

/// Gradient outer-product matrix of l_{[-1,1]^2} against diag(2, 2), and its
/// transformation law under `count` random unimodular maps.
std::vector<PropertyReport> fisher_suite(int count, const SuiteOptions& opts = {});

/// Names of the suites in the default battery, in run order.
std::vector<std::string> default_suite_names();

/// Runs one battery suite by name with its default parameters. Throws
/// Error{InvalidInput} for an unknown name.
std::vector<PropertyReport> run_suite(const std::string& name, const SuiteOptions& opts = {});

struct SuiteSummary {
  std::string suite;
  int cases = 0;
  int passes = 0;
  int skipped = 0;
  double max_residual = 0.0;
};

std::vector<SuiteSummary> summarize(const std::vector<PropertyReport>& reports);
/// One canonical JSON object per line. Wall times are written only when
/// asked for, so that repeated single-threaded runs are byte-identical.
std::string reports_jsonl(const std::vector<PropertyReport>& reports, bool include_timings = false);
/// "suite,cases,passes,skipped,max_residual" rows.
std::string summary_csv(const std::vector<SuiteSummary>& summary);
/// True when no executed case failed.
bool all_passed(const std::vector<PropertyReport>& reports);

}  // namespace plval
