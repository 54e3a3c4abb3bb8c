/* Copyright 2026 The causalforge Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "causalforge/notears.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "causalforge/acyclicity.hpp"
#include "causalforge/common.hpp"

namespace cforge {
namespace {

// Augmented Lagrangian of the split problem over the off-diagonal entries.
// x = [w_plus(k), w_minus(k)] for k enumerating (i, j) pairs with i != j.
class SplitObjective {
 public:
  SplitObjective(const Eigen::MatrixXd& gram, double lambda)
      : gram_(gram), d_(gram.rows()), lambda_(lambda) {}

  Eigen::Index size() const { return 2 * d_ * (d_ - 1); }

  Eigen::MatrixXd assemble(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d_, d_);
    const Eigen::Index half = d_ * (d_ - 1);
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < d_; ++j) {
      for (Eigen::Index i = 0; i < d_; ++i) {
        if (i == j) continue;
        w(i, j) = x(k) - x(k + half);
        ++k;
      }
    }
    return w;
  }

  void set_multipliers(double alpha, double rho) {
    alpha_ = alpha;
    rho_ = rho;
  }

  double operator()(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const {
    const Eigen::MatrixXd w = assemble(x);
    const Eigen::MatrixXd residual =
        Eigen::MatrixXd::Identity(d_, d_) - w;  // I - W
    const Eigen::MatrixXd gram_residual = gram_ * residual;
    const double loss = 0.5 * gram_residual.cwiseProduct(residual).sum();
    const Acyclicity h = acyclicity_h(w);
    const Eigen::MatrixXd smooth_grad =
        -gram_residual + (alpha_ + rho_ * h.value) * h.gradient;

    const Eigen::Index half = d_ * (d_ - 1);
    grad.resize(size());
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < d_; ++j) {
      for (Eigen::Index i = 0; i < d_; ++i) {
        if (i == j) continue;
        grad(k) = smooth_grad(i, j) + lambda_;
        grad(k + half) = -smooth_grad(i, j) + lambda_;
        ++k;
      }
    }
    return loss + lambda_ * x.sum() + alpha_ * h.value +
           0.5 * rho_ * h.value * h.value;
  }

 private:
  const Eigen::MatrixXd& gram_;
  Eigen::Index d_;
  double lambda_;
  double alpha_ = 0.0;
  double rho_ = 1.0;
};

double projected_grad_inf(const Eigen::VectorXd& x, const Eigen::VectorXd& g) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) <= 0.0 && g(i) > 0.0) continue;
    m = std::max(m, std::abs(g(i)));
  }
  return m;
}

struct InnerResult {
  double f = 0.0;
  double pg_inf = 0.0;
  int iterations = 0;
};

// Projected L-BFGS for min f(x) s.t. x >= 0 with an epsilon-active set:
// coordinates near the bound whose gradient points outward take plain
// gradient steps, the rest follow the two-loop direction restricted to them.
// Steps follow the projected path with Armijo backtracking.
InnerResult minimize_nonnegative(const SplitObjective& f, Eigen::VectorXd& x,
                                 int max_iters, double pg_tol, int memory,
                                 std::vector<double>* trace) {
  const Eigen::Index n = x.size();
  std::deque<Eigen::VectorXd> s_hist, y_hist;
  Eigen::VectorXd g(n), g_new(n), x_new(n), dir(n);
  std::vector<char> free(static_cast<std::size_t>(n));
  double fx = f(x, g);
  if (trace) trace->push_back(fx);
  InnerResult res;
  for (int it = 0; it < max_iters; ++it) {
    res.pg_inf = projected_grad_inf(x, g);
    if (res.pg_inf < pg_tol) break;
    res.iterations = it + 1;

    const double eps = std::min(1e-3, (x - (x - g).cwiseMax(0.0)).norm());
    for (Eigen::Index i = 0; i < n; ++i) {
      free[static_cast<std::size_t>(i)] = (x(i) > eps || g(i) <= 0.0) ? 1 : 0;
    }
    auto mask = [&](Eigen::VectorXd& v) {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!free[static_cast<std::size_t>(i)]) v(i) = 0.0;
      }
    };

    const std::size_t m = s_hist.size();
    Eigen::VectorXd q = g;
    mask(q);
    std::vector<Eigen::VectorXd> sm(m), ym(m);
    std::vector<double> rm(m, 0.0), a(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      sm[k] = s_hist[k];
      ym[k] = y_hist[k];
      mask(sm[k]);
      mask(ym[k]);
      const double sy = sm[k].dot(ym[k]);
      if (sy > 1e-10 * sm[k].norm() * ym[k].norm() && sy > 0.0) rm[k] = 1.0 / sy;
    }
    for (std::size_t k = m; k-- > 0;) {
      a[k] = rm[k] * sm[k].dot(q);
      q -= a[k] * ym[k];
    }
    for (std::size_t k = m; k-- > 0;) {
      if (rm[k] > 0.0) {
        q *= 1.0 / (rm[k] * ym[k].squaredNorm());
        break;
      }
    }
    for (std::size_t k = 0; k < m; ++k) {
      const double b = rm[k] * ym[k].dot(q);
      q += sm[k] * (a[k] - b);
    }
    dir = -q;
    mask(dir);
    bool quasi_newton = m > 0;
    if (quasi_newton) {
      double gd = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (free[static_cast<std::size_t>(i)]) gd += g(i) * dir(i);
      }
      if (!(gd < 0.0)) {
        s_hist.clear();
        y_hist.clear();
        quasi_newton = false;
      }
    }
    if (!quasi_newton) {
      dir = -g;
      const double gmax = dir.cwiseAbs().maxCoeff();
      if (gmax > 1.0) dir /= gmax;
    } else {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!free[static_cast<std::size_t>(i)]) dir(i) = -g(i);
      }
    }

    double step = 1.0;
    bool accepted = false;
    double f_new = fx;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = (x + step * dir).cwiseMax(0.0);
      f_new = f(x_new, g_new);
      if (!std::isfinite(f_new)) {
        step *= 0.5;
        continue;
      }
      const Eigen::VectorXd s = x_new - x;
      const double slope = g.dot(s);
      if (f_new <= fx + 1e-4 * slope) {
        accepted = true;
        break;
      }
      // Near the optimum f changes below its rounding error; fall back to an
      // approximate Wolfe test on the directional derivative.
      if (f_new <= fx + 1e-12 * std::abs(fx) && slope < 0.0 &&
          g_new.dot(s) <= -(1.0 - 2e-4) * slope) {
        accepted = true;
        break;
      }
      // Minimizer of the quadratic through f(x), slope and f_new, kept
      // within [0.1, 0.5] of the current step.
      const double curvature = f_new - fx - slope;
      const double ratio = curvature > 0.0 ? -slope / (2.0 * curvature) : 0.5;
      step *= std::clamp(ratio, 0.1, 0.5);
    }
    if (!accepted) break;

    Eigen::VectorXd s = x_new - x;
    Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-10 * s.norm() * y.norm() && sy > 0.0) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      if (static_cast<int>(s_hist.size()) > memory) {
        s_hist.pop_front();
        y_hist.pop_front();
      }
    }
    x = x_new;
    g = g_new;
    fx = f_new;
    if (trace) trace->push_back(fx);
  }
  res.f = fx;
  res.pg_inf = projected_grad_inf(x, g);
  return res;
}

}  // namespace

Eigen::MatrixXd standardize_columns(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd out = x;
  const auto n = static_cast<double>(x.rows());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double mean = x.col(j).mean();
    out.col(j).array() -= mean;
    const double sd = std::sqrt(out.col(j).squaredNorm() / n);
    if (sd > 1e-12) out.col(j) /= sd;
  }
  return out;
}

Eigen::MatrixXd prepare_columns(const Eigen::MatrixXd& x, const NotearsOptions& opts) {
  if (opts.scale_columns) return standardize_columns(x);
  return x.rowwise() - x.colwise().mean();
}

WeightedAdjacency notears_fit(const Eigen::MatrixXd& X, double lambda,
                              const NotearsOptions& opts) {
  if (!(lambda > 0.0)) throw ContractViolation("notears_fit: lambda must be positive");
  if (X.cols() < 2 || X.rows() < 2) {
    throw ContractViolation("notears_fit: need at least 2 rows and 2 columns");
  }
  if (!X.allFinite()) throw ContractViolation("notears_fit: non-finite data");
  const Eigen::MatrixXd xs = prepare_columns(X, opts);
  const Eigen::MatrixXd gram = xs.transpose() * xs / static_cast<double>(xs.rows());

  SplitObjective objective(gram, lambda);
  Eigen::VectorXd params = Eigen::VectorXd::Zero(objective.size());
  double rho = opts.rho_init;
  double alpha = 0.0;

  WeightedAdjacency out;
  out.lambda = lambda;
  for (int iter = 1; iter <= opts.max_dual_iters; ++iter) {
    objective.set_multipliers(alpha, rho);
    std::vector<double>* trace = nullptr;
    if (opts.inner_trace) {
      opts.inner_trace->emplace_back();
      trace = &opts.inner_trace->back();
    }
    const InnerResult inner = minimize_nonnegative(
        objective, params, opts.max_inner_iters, opts.grad_tol,
        opts.lbfgs_memory, trace);
    // Curvature of the penalty grows with rho, so the stopping test measures
    // stationarity per unit of rho once rho exceeds 1.
    const double pg_tol = opts.grad_tol * std::max(1.0, rho);
    out.W = objective.assemble(params);
    out.h = acyclicity_h(out.W).value;
    out.dual_iterations = iter;
    alpha += rho * out.h;
    rho = std::min(opts.rho_growth * rho, opts.rho_max);
    if (std::abs(out.h) < opts.h_tol && inner.pg_inf < pg_tol) {
      out.converged = true;
      break;
    }
  }
  for (Eigen::Index i = 0; i < X.cols(); ++i) {
    out.var_names.push_back("x" + std::to_string(i));
  }
  return out;
}

double bic_score(const Eigen::MatrixXd& x_prepared, const Eigen::MatrixXd& w,
                 double tau) {
  const Eigen::MatrixXd thresholded =
      (w.array().abs() > tau).select(w, Eigen::MatrixXd::Zero(w.rows(), w.cols()));
  const double n = static_cast<double>(x_prepared.rows());
  const double d = static_cast<double>(x_prepared.cols());
  const double rss = (x_prepared - x_prepared * thresholded).squaredNorm();
  const auto k = static_cast<double>((thresholded.array() != 0.0).count());
  return n * d * std::log(std::max(rss, 1e-300) / (n * d)) + k * std::log(n);
}

LambdaSelection select_lambda_bic(const Eigen::MatrixXd& X,
                                  std::span<const double> lambdas,
                                  const NotearsOptions& opts, double tau) {
  if (lambdas.empty()) throw ContractViolation("select_lambda_bic: empty lambda list");
  for (double l : lambdas) {
    if (!(l > 0.0)) throw ContractViolation("select_lambda_bic: lambdas must be positive");
  }
  const Eigen::MatrixXd xs = prepare_columns(X, opts);
  LambdaSelection out;
  out.lambdas.assign(lambdas.begin(), lambdas.end());
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  for (double lambda : lambdas) {
    WeightedAdjacency fit = notears_fit(X, lambda, opts);
    out.converged.push_back(fit.converged);
    if (!fit.converged) {
      out.bic.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const double bic = bic_score(xs, fit.W, tau);
    out.bic.push_back(bic);
    if (!found || bic < best || (bic == best && lambda < out.lambda)) {
      best = bic;
      out.lambda = lambda;
      out.fit = std::move(fit);
      found = true;
    }
  }
  if (!found) {
    std::string status;
    for (std::size_t i = 0; i < out.lambdas.size(); ++i) {
      status += " lambda=" + std::to_string(out.lambdas[i]) + ":non-converged";
    }
    throw Error("select_lambda_bic: no fit converged;" + status);
  }
  return out;
}

}  // namespace cforge
