#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vobs/rational.hpp"

namespace vobs {
namespace stats {

// Nonparametric machinery for the analysis pipeline. Rank tests handle ties
// with midranks and run in exact mode (full enumeration of the permutation
// null) whenever the enumeration is small enough, falling back to the
// normal approximation with tie-corrected variance and a 0.5 continuity
// correction. Exact p-values are ratios of integer counts and are carried
// as exact rationals alongside the double.

enum class Tail { TwoSided, Greater, Less };
enum class TestMode { Exact, Approximate };
enum class ModePolicy { Auto, ForceExact, ForceApproximate };

const char* tail_token(Tail tail);
const char* mode_token(TestMode mode);

class StatError : public std::runtime_error {
 public:
  StatError(std::string code, const std::string& message);
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct TestResult {
  std::string method;
  double statistic = 0.0;
  double p_value = 1.0;
  Tail tail = Tail::TwoSided;
  int n = 0;
  std::optional<int> m;        // second sample size where applicable
  TestMode mode = TestMode::Exact;
  std::optional<Rat> p_count;  // exact mode: p as a ratio of counts
  int zeros_dropped = 0;       // signed-rank only
};

struct Summary {
  int n = 0;
  Rat mean;
  Rat median;
  double sd = 0.0;       // sample standard deviation, n-1 denominator
  bool degenerate = false;  // n < 2: sd reported as 0
};

Summary summarize(const std::vector<Rat>& sample);

// Wilcoxon rank-sum (Mann-Whitney). The statistic is the rank sum of x.
// Exact mode enumerates every way to assign the pooled ranks to the x group
// and counts assignments at least as extreme as the observed sum.
TestResult rank_sum(const std::vector<Rat>& x, const std::vector<Rat>& y, Tail tail,
                    ModePolicy policy = ModePolicy::Auto);

// Wilcoxon signed-rank on paired differences. Zeros are dropped (the count
// is reported); the statistic is the positive-rank sum W+. Exact mode
// enumerates all sign patterns.
TestResult signed_rank(const std::vector<Rat>& diffs, Tail tail,
                       ModePolicy policy = ModePolicy::Auto);

// One-sample and paired Student t tests.
TestResult t_test(const std::vector<Rat>& x, const Rat& mu0, Tail tail);
TestResult t_test_paired(const std::vector<Rat>& x, const std::vector<Rat>& y, Tail tail);

struct EcdfPoint {
  Rat value;
  Rat fraction;  // cumulative, exact; the last point carries exactly 1
};

std::vector<EcdfPoint> ecdf(const std::vector<Rat>& sample);

// First-order stochastic dominance: A dominates B when A's distribution
// function is below or equal to B's at every grid value and strictly below
// somewhere.
bool fosd_dominates(const std::vector<EcdfPoint>& a, const std::vector<EcdfPoint>& b);

// Numeric plumbing shared with the tests.
double normal_cdf(double z);
double regularized_incomplete_beta(double a, double b, double x);
double student_t_sf(double t, int df);  // P(T >= t)

// Doubled midranks of the pooled values (doubling keeps ties integral).
std::vector<long long> doubled_midranks(const std::vector<Rat>& pooled);

// Number of distinct rank assignments C(n+m, n), saturating above `cap`.
unsigned long long choose_capped(int n, int k, unsigned long long cap);

}  // namespace stats
}  // namespace vobs
