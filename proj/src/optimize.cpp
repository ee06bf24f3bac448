// Copyright 2026 The rollsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rollsim/optimize.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "rollsim/error.hpp"

namespace rollsim {

namespace {

void check_config(const OptimizerConfig& cfg, bool momentum) {
  if (!(cfg.gamma > 0.0) || !std::isfinite(cfg.gamma)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  }
  if (momentum && !(cfg.beta >= 0.0 && cfg.beta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must lie in [0, 1)");
  }
  if (cfg.max_iters < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_iters must be >= 0");
  }
  if (!(cfg.grad_tol >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "grad_tol must be >= 0");
  }
  if (!(cfg.divergence_bound > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "divergence_bound must be positive");
  }
}

TraceEntry evaluate(const Objective& f, int iter, const Eigen::VectorXd& theta,
                    Eigen::VectorXd& gradient) {
  Evaluation e = f(theta);
  if (e.gradient.size() != theta.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "objective gradient has the wrong dimension");
  }
  gradient = std::move(e.gradient);
  return {iter, theta, e.value, gradient.norm()};
}

void check_divergence(const Eigen::VectorXd& theta, const OptimizerConfig& cfg,
                      int iter) {
  const double n = theta.norm();
  if (!std::isfinite(n) || n > cfg.divergence_bound) {
    std::ostringstream os;
    os << "iterate norm " << n << " exceeded " << cfg.divergence_bound
       << " at iteration " << iter;
    throw Error(ErrorCode::kDiverged, os.str());
  }
}

OptimizerTrace run(const Objective& f, const Eigen::VectorXd& theta0,
                   const OptimizerConfig& cfg, double beta) {
  OptimizerTrace trace;
  Eigen::VectorXd theta = theta0;
  Eigen::VectorXd previous = theta0;
  Eigen::VectorXd gradient;
  trace.entries.push_back(evaluate(f, 0, theta, gradient));
  for (int n = 1;; ++n) {
    if (trace.entries.back().grad_norm <= cfg.grad_tol) {
      trace.converged = true;
      break;
    }
    if (n > cfg.max_iters) break;
    Eigen::VectorXd next = theta - cfg.gamma * gradient;
    if (beta != 0.0) next += beta * (theta - previous);
    previous = std::move(theta);
    theta = std::move(next);
    check_divergence(theta, cfg, n);
    trace.entries.push_back(evaluate(f, n, theta, gradient));
  }
  return trace;
}

}  // namespace

OptimizerTrace gradient_descent(const Objective& f,
                                const Eigen::VectorXd& theta0,
                                const OptimizerConfig& cfg) {
  check_config(cfg, false);
  return run(f, theta0, cfg, 0.0);
}

OptimizerTrace heavy_ball(const Objective& f, const Eigen::VectorXd& theta0,
                          const OptimizerConfig& cfg) {
  check_config(cfg, true);
  return run(f, theta0, cfg, cfg.beta);
}

namespace objectives {

Objective quadratic(Eigen::VectorXd curvatures) {
  return [c = std::move(curvatures)](const Eigen::VectorXd& x) {
    if (x.size() != c.size()) {
      throw Error(ErrorCode::kInvalidArgument, "dimension mismatch");
    }
    Evaluation e;
    e.gradient = c.cwiseProduct(x);
    e.value = 0.5 * x.dot(e.gradient);
    return e;
  };
}

Objective tilted_double_well(double tilt) {
  return [tilt](const Eigen::VectorXd& v) {
    if (v.size() != 1) {
      throw Error(ErrorCode::kInvalidArgument, "objective is one-dimensional");
    }
    const double x = v[0];
    const double w = x * x - 1.0;
    Evaluation e;
    e.value = w * w + tilt * x;
    e.gradient = Eigen::VectorXd::Constant(1, 4.0 * x * w + tilt);
    return e;
  };
}

Objective rosenbrock(double a, double b) {
  return [a, b](const Eigen::VectorXd& v) {
    if (v.size() != 2) {
      throw Error(ErrorCode::kInvalidArgument, "objective is two-dimensional");
    }
    const double x = v[0];
    const double y = v[1];
    const double r = y - x * x;
    Evaluation e;
    e.value = (a - x) * (a - x) + b * r * r;
    e.gradient.resize(2);
    e.gradient[0] = -2.0 * (a - x) - 4.0 * b * x * r;
    e.gradient[1] = 2.0 * b * r;
    return e;
  };
}

}  // namespace objectives

void write_trace_csv(std::ostream& os, const OptimizerTrace& trace) {
  const Eigen::Index n =
      trace.entries.empty() ? 0 : trace.entries.front().theta.size();
  os << "iter";
  for (Eigen::Index i = 0; i < n; ++i) os << ",theta_" << i;
  os << ",f,grad_norm\n";
  os << std::setprecision(17);
  for (const TraceEntry& e : trace.entries) {
    os << e.iter;
    for (Eigen::Index i = 0; i < n; ++i) os << ',' << e.theta[i];
    os << ',' << e.value << ',' << e.grad_norm << '\n';
  }
}

}  // namespace rollsim
