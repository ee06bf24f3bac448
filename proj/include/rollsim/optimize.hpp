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

#ifndef ROLLSIM_OPTIMIZE_HPP
#define ROLLSIM_OPTIMIZE_HPP

#include <Eigen/Core>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace rollsim {

struct OptimizerConfig {
  double gamma = 0.1;  // step size, > 0
  double beta = 0.0;   // momentum in [0, 1); ignored by gradient_descent
  int max_iters = 1000;
  double grad_tol = 1e-8;
  // Iterate norm beyond which the run is declared diverged.
  double divergence_bound = 1e12;
};

struct Evaluation {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

using Objective = std::function<Evaluation(const Eigen::VectorXd&)>;

struct TraceEntry {
  int iter = 0;
  Eigen::VectorXd theta;
  double value = 0.0;
  double grad_norm = 0.0;
};

struct OptimizerTrace {
  std::vector<TraceEntry> entries;  // entry 0 is the start point
  bool converged = false;           // grad_norm <= grad_tol reached

  const TraceEntry& last() const { return entries.back(); }
  // Number of update steps taken.
  int iterations() const { return static_cast<int>(entries.size()) - 1; }
};

// theta_n = theta_{n-1} - gamma grad f(theta_{n-1}). Stops when the gradient
// norm at the current iterate is <= grad_tol or after max_iters steps.
// Throws kDiverged when the iterate norm exceeds divergence_bound or turns
// non-finite, and kInvalidArgument on a bad configuration.
OptimizerTrace gradient_descent(const Objective& f,
                                const Eigen::VectorXd& theta0,
                                const OptimizerConfig& cfg);

// theta_n = theta_{n-1} - gamma grad f(theta_{n-1})
//           + beta (theta_{n-1} - theta_{n-2}), theta_{-1} = theta_0.
// With beta == 0 the trace equals gradient_descent's bit for bit.
OptimizerTrace heavy_ball(const Objective& f, const Eigen::VectorXd& theta0,
                          const OptimizerConfig& cfg);

namespace objectives {

// 0.5 * sum_i c_i theta_i^2.
Objective quadratic(Eigen::VectorXd curvatures);

// 1-D double well with a tilt: (x^2 - 1)^2 + tilt * x. For 0 < tilt < ~0.77
// there is a shallow local minimum near x = +1 and the global one near -1.
Objective tilted_double_well(double tilt = 0.3);

// (a - x)^2 + b (y - x^2)^2.
Objective rosenbrock(double a = 1.0, double b = 100.0);

}  // namespace objectives

// Columns: iter, theta_0..theta_{n-1}, f, grad_norm.
void write_trace_csv(std::ostream& os, const OptimizerTrace& trace);

}  // namespace rollsim

#endif  // ROLLSIM_OPTIMIZE_HPP
