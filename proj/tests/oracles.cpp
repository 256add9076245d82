#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracles {

using vobs::Profile;
using vobs::Rat;
using vobs::TimedGame;

std::vector<Profile> literal_pure_nash(const TimedGame& game) {
  std::vector<Profile> out;
  for (std::size_t i = 0; i < game.n1(); ++i) {
    for (std::size_t j = 0; j < game.n2(); ++j) {
      bool deviates = false;
      for (std::size_t k = 0; k < game.n1() && !deviates; ++k) {
        if (game.u1[k][j] > game.u1[i][j]) deviates = true;
      }
      for (std::size_t k = 0; k < game.n2() && !deviates; ++k) {
        if (game.u2[i][k] > game.u2[i][j]) deviates = true;
      }
      if (!deviates) out.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  }
  return out;
}

namespace {

// Doubled midranks by pairwise counting: 2*(#less) + (#equal) + 1.
std::vector<long long> counting_midranks2(const std::vector<Rat>& values) {
  std::vector<long long> ranks2(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    long long less = 0;
    long long equal = 0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (values[j] < values[i]) ++less;
      if (values[j] == values[i]) ++equal;  // includes i itself
    }
    ranks2[i] = 2 * less + equal + 1;
  }
  return ranks2;
}

}  // namespace

RankTestP rank_sum_exact(const std::vector<Rat>& x, const std::vector<Rat>& y) {
  const int n = static_cast<int>(x.size());
  const int total = n + static_cast<int>(y.size());
  std::vector<Rat> pooled = x;
  pooled.insert(pooled.end(), y.begin(), y.end());
  const std::vector<long long> ranks2 = counting_midranks2(pooled);

  long long observed = 0;
  for (int i = 0; i < n; ++i) observed += ranks2[i];
  const long long mean_x2 = 2LL * n * (total + 1);  // twice E[doubled rank sum]
  const long long observed_dist = std::llabs(2 * observed - mean_x2);

  // Mask-based enumeration: every distinct 0/1 membership vector.
  std::vector<int> mask(total, 0);
  for (int i = 0; i < n; ++i) mask[i] = 1;
  std::sort(mask.begin(), mask.end());
  long long count = 0, ge = 0, le = 0, extreme = 0;
  do {
    long long sum = 0;
    for (int i = 0; i < total; ++i) {
      if (mask[i]) sum += ranks2[i];
    }
    ++count;
    if (sum >= observed) ++ge;
    if (sum <= observed) ++le;
    if (std::llabs(2 * sum - mean_x2) >= observed_dist) ++extreme;
  } while (std::next_permutation(mask.begin(), mask.end()));

  return {Rat(ge, count), Rat(le, count), Rat(extreme, count)};
}

RankTestP signed_rank_exact(const std::vector<Rat>& diffs) {
  std::vector<Rat> magnitudes;
  std::vector<bool> positive;
  for (const Rat& d : diffs) {
    if (d.is_zero()) continue;
    magnitudes.push_back(abs(d));
    positive.push_back(!d.is_negative());
  }
  const int n = static_cast<int>(magnitudes.size());
  if (n == 0) throw std::invalid_argument("signed_rank_exact: all differences are zero");
  const std::vector<long long> ranks2 = counting_midranks2(magnitudes);

  long long observed = 0;
  for (int i = 0; i < n; ++i) {
    if (positive[i]) observed += ranks2[i];
  }
  const long long mean_x2 = static_cast<long long>(n) * (n + 1);  // twice E[doubled W+]
  const long long observed_dist = std::llabs(2 * observed - mean_x2);

  long long count = 0, ge = 0, le = 0, extreme = 0;
  std::function<void(int, long long)> recurse = [&](int i, long long sum) {
    if (i == n) {
      ++count;
      if (sum >= observed) ++ge;
      if (sum <= observed) ++le;
      if (std::llabs(2 * sum - mean_x2) >= observed_dist) ++extreme;
      return;
    }
    recurse(i + 1, sum);
    recurse(i + 1, sum + ranks2[i]);
  };
  recurse(0, 0);

  return {Rat(ge, count), Rat(le, count), Rat(extreme, count)};
}

namespace {

double t_pdf(double x, double nu) {
  const double log_c =
      std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0) - 0.5 * std::log(nu * M_PI);
  return std::exp(log_c - (nu + 1.0) / 2.0 * std::log1p(x * x / nu));
}

double simpson(double nu, double a, double b) {
  const double c = (a + b) / 2.0;
  return (b - a) / 6.0 * (t_pdf(a, nu) + 4.0 * t_pdf(c, nu) + t_pdf(b, nu));
}

double adaptive(double nu, double a, double b, double whole, double tol, int depth) {
  const double c = (a + b) / 2.0;
  const double left = simpson(nu, a, c);
  const double right = simpson(nu, c, b);
  if (depth > 60 || std::fabs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive(nu, a, c, left, tol / 2.0, depth + 1) +
         adaptive(nu, c, b, right, tol / 2.0, depth + 1);
}

}  // namespace

double t_sf_quadrature(double t, int df) {
  if (t < 0.0) return 1.0 - t_sf_quadrature(-t, df);
  if (t == 0.0) return 0.5;
  const double nu = static_cast<double>(df);
  const double integral = adaptive(nu, 0.0, t, simpson(nu, 0.0, t), 1e-14, 0);
  return 0.5 - integral;
}

std::string fixture_path(const std::string& relative) {
  return std::string(VOBS_FIXTURE_DIR) + "/" + relative;
}

}  // namespace oracles
