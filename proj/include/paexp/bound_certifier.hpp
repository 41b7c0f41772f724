// Copyright 2026 The paexp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Numerical side conditions behind the expansion and modularity constants.
//
// Tail term of the union bound on poor expansion of k-sets:
//
//   f(k) = a k (e h / a)^{2 a k} (k / n)^{(h - 1 - 2a) k},  0 < a < (h-1)/2,
//
// and the finite grid minimization that turns expansion of small sets into
// the modularity upper bound
//
//   q* <= 1 - min_s [ d(u_s) / (2 + d(u_s)) + u_{s-1} / 2 ],
//
// where d(u) is the largest grid value below 1/4 with (e/(u d))^{4d} < 1/u.
//
// Every strict inequality is evaluated in natural-log space with zero slack;
// the powers involved overflow doubles long before n gets interesting.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace paexp {

struct TailParams {
  int h = 2;
  double alpha_hat = 0.1;
  std::int64_t n = 100;
  double u = 0.5;

  void validate() const {
    if (h < 2) throw std::domain_error("tail bound needs h >= 2");
    if (!(alpha_hat > 0.0) || !(alpha_hat < (h - 1) / 2.0))
      throw std::domain_error("tail bound needs 0 < alpha_hat < (h-1)/2");
    if (n < 2) throw std::domain_error("tail bound needs n >= 2");
    if (!(u > 0.0) || u > 0.5)
      throw std::domain_error("tail bound needs 0 < u <= 1/2");
  }
};

/// ln f(k) for 1 <= k <= n/2.
inline double log_f(const TailParams& p, std::int64_t k) {
  p.validate();
  if (k < 1 || 2 * k > p.n)
    throw std::domain_error("log_f needs 1 <= k <= n/2, got k = " +
                            std::to_string(k));
  const double a = p.alpha_hat;
  const double kd = static_cast<double>(k);
  return std::log(a * kd) + 2.0 * a * kd * std::log(std::numbers::e * p.h / a) +
         (p.h - 1 - 2.0 * a) * kd * std::log(kd / static_cast<double>(p.n));
}

struct UnionBound {
  double value = 0.0;      // min(sum, 1)
  double log_sum = 0.0;    // ln of the unclamped sum; -inf when empty
  std::int64_t terms = 0;  // floor(u n)
  bool clamped = false;
};

/// sum_{k=1}^{floor(un)} f(k), accumulated by log-sum-exp and clamped at 1.
inline UnionBound union_bound_sum(const TailParams& p) {
  p.validate();
  UnionBound out;
  out.terms = static_cast<std::int64_t>(
      std::floor(p.u * static_cast<double>(p.n) + 1e-9));
  out.terms = std::min(out.terms, p.n / 2);
  if (out.terms < 1) {
    out.log_sum = -std::numeric_limits<double>::infinity();
    return out;
  }
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(out.terms));
  for (std::int64_t k = 1; k <= out.terms; ++k) logs.push_back(log_f(p, k));
  const double peak = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - peak);
  out.log_sum = peak + std::log(acc);
  out.clamped = out.log_sum >= 0.0;
  out.value = out.clamped ? 1.0 : std::exp(out.log_sum);
  return out;
}

struct Unimodality {
  bool is_unimodal = false;
  std::int64_t trough = 0;  // argmin of f over 1..floor(n/2)
};

/// Scans ln f(k+1) - ln f(k) over k = 1..floor(n/2)-1. f is unimodal in the
/// "decreasing then increasing" sense iff no rise is followed by a fall.
inline Unimodality verify_unimodality(const TailParams& p) {
  const std::int64_t kmax = p.n / 2;
  if (kmax < 2) throw std::domain_error("unimodality scan needs n >= 4");
  Unimodality out{true, 1};
  double prev = log_f(p, 1);
  double lowest = prev;
  bool rising = false;
  for (std::int64_t k = 2; k <= kmax; ++k) {
    const double cur = log_f(p, k);
    if (cur > prev) {
      rising = true;
    } else if (cur < prev && rising) {
      out.is_unimodal = false;
    }
    if (cur < lowest) {
      lowest = cur;
      out.trough = k;
    }
    prev = cur;
  }
  return out;
}

/// (e/(u x))^{2hx} < (1/u)^{h-1}, as 2hx (1 - ln(ux)) < (h-1) ln(1/u).
inline bool check_xh_condition(int h, double u, double x) {
  if (h < 1) throw std::domain_error("check_xh_condition needs h >= 1");
  if (!(x > 0.0) || x > 1.0)
    throw std::domain_error("check_xh_condition needs 0 < x <= 1");
  if (!(u > 0.0) || u > 0.5)
    throw std::domain_error("check_xh_condition needs 0 < u <= 1/2");
  return 2.0 * h * x * (1.0 - std::log(u * x)) < (h - 1) * std::log(1.0 / u);
}

/// Precision must be 1/N for an integer N; returns N.
inline std::int64_t grid_resolution(double precision) {
  if (!(precision > 0.0) || precision > 0.25)
    throw std::domain_error("precision must be in (0, 1/4]");
  const double inv = 1.0 / precision;
  const auto r = static_cast<std::int64_t>(std::llround(inv));
  if (std::fabs(inv - static_cast<double>(r)) > 1e-6 * inv)
    throw std::domain_error("precision must be the reciprocal of an integer");
  return r;
}

/// Largest multiple d of `precision` with d < 1/4 and (e/(u d))^{4d} < 1/u.
///
/// y -> (e/(y u))^{4y} is increasing on 0 < y <= 1/u (its log has derivative
/// -4 ln(y u) > 0), so the admissible multiples form a prefix and binary
/// search finds the last one.
inline double delta_hat(double u, double precision = 1e-5) {
  if (!(u > 0.0) || u > 0.5)
    throw std::domain_error("delta_hat needs 0 < u <= 1/2");
  const std::int64_t scale = grid_resolution(precision);
  // Largest j with j/scale < 1/4.
  const std::int64_t top = (scale % 4 == 0) ? scale / 4 - 1 : scale / 4;
  auto ok = [&](std::int64_t j) {
    return check_xh_condition(
        2, u, static_cast<double>(j) / static_cast<double>(scale));
  };
  if (top < 1 || !ok(1)) return 0.0;
  if (ok(top)) return static_cast<double>(top) / static_cast<double>(scale);
  std::int64_t lo = 1;
  std::int64_t hi = top;
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? lo : hi) = mid;
  }
  return static_cast<double>(lo) / static_cast<double>(scale);
}

/// Smallest multiple of 10^-digits that is >= x.
inline double round_up(double x, int digits = 5) {
  const double scale = std::pow(10.0, digits);
  return std::ceil(x * scale) / scale;
}

struct TracePoint {
  double u = 0.0;          // u_s
  double delta_hat = 0.0;  // d(u_s)
  double term = 0.0;       // d/(2+d) + u_{s-1}/2
};

struct BoundCertificate {
  double bound = 0.0;      // rounded up at 5 decimals
  double raw_bound = 0.0;  // before rounding
  double minimizer_u = 0.0;
  double minimizer_delta = 0.0;
  double grid_step = 0.0;
  double delta_precision = 0.0;
  std::vector<TracePoint> trace;
};

/// Finite grid certification of the modularity upper bound. The grid is
/// u_0 = 0, u_s = s * grid_step up to u_t = 1/2.
inline BoundCertificate certify_modularity_bound(double grid_step = 1e-4,
                                                 double precision = 1e-5,
                                                 bool keep_trace = false) {
  if (!(grid_step > 0.0) || grid_step > 0.5)
    throw std::domain_error("grid_step must be in (0, 1/2]");
  const double ratio = 0.5 / grid_step;
  const auto steps = static_cast<std::int64_t>(std::llround(ratio));
  if (steps < 1 || std::fabs(ratio - static_cast<double>(steps)) > 1e-6 * ratio)
    throw std::domain_error("grid_step must divide 1/2");
  grid_resolution(precision);

  BoundCertificate cert;
  cert.grid_step = grid_step;
  cert.delta_precision = precision;
  std::optional<double> lowest;
  auto grid_u = [&](std::int64_t s) {
    return 0.5 * static_cast<double>(s) / static_cast<double>(steps);
  };
  for (std::int64_t s = 1; s <= steps; ++s) {
    const double u = grid_u(s);
    const double d = delta_hat(u, precision);
    const double term = d / (2.0 + d) + grid_u(s - 1) / 2.0;
    if (keep_trace) cert.trace.push_back({u, d, term});
    if (!lowest || term < *lowest) {
      lowest = term;
      cert.minimizer_u = u;
      cert.minimizer_delta = d;
    }
  }
  cert.raw_bound = 1.0 - *lowest;
  cert.bound = round_up(cert.raw_bound, 5);
  return cert;
}

/// d/(2+d) + u/2 <= d u/(2(1-u) + d u) + (1-u)/2, with 1e-12 slack.
inline bool check_lemma_dull(double u, double delta) {
  if (!(u > 0.0) || u > 0.5)
    throw std::domain_error("check_lemma_dull needs 0 < u <= 1/2");
  if (!(delta >= 0.0) || delta > 1.0)
    throw std::domain_error("check_lemma_dull needs 0 <= delta <= 1");
  const double lhs = delta / (2.0 + delta) + u / 2.0;
  const double rhs =
      delta * u / (2.0 * (1.0 - u) + delta * u) + (1.0 - u) / 2.0;
  return lhs <= rhs + 1e-12;
}

/// (2e/eta)^{4 eta}, the quantity that must stay below 2.
inline double corollary2_value(double eta) {
  if (!(eta > 0.0) || eta > 1.0)
    throw std::domain_error("eta must be in (0, 1]");
  return std::exp(4.0 * eta * std::log(2.0 * std::numbers::e / eta));
}

/// (2e/eta)^{4 eta} < 2, checked in log space. Since h/2 <= h-1, this gives
/// (2e/eta)^{2h eta} < 2^{h-1} for every h >= 2.
inline bool corollary2_constant_check(double eta = 0.03418) {
  if (!(eta > 0.0) || eta > 1.0)
    throw std::domain_error("eta must be in (0, 1]");
  return 4.0 * eta * std::log(2.0 * std::numbers::e / eta) < std::numbers::ln2;
}

/// Leading-order value of the h^{-1/2} modularity bound for the standard
/// model, 3 sqrt(2 ln 2) sqrt(ln h) / sqrt(h). The (1 + o(1)) factor is
/// dropped, so this is for comparison tables only.
inline double theorem5_comparator(int h) {
  if (h < 2) throw std::domain_error("theorem5_comparator needs h >= 2");
  return 3.0 * std::sqrt(2.0 * std::numbers::ln2) *
         std::sqrt(std::log(static_cast<double>(h))) /
         std::sqrt(static_cast<double>(h));
}

}  // namespace paexp
