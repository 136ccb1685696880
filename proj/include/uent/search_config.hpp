#pragma once

#include <cstdint>
#include <stdexcept>

#include "uent/optimize.hpp"

namespace uent {

/// Budget and thresholds shared by counterexample searches and certifications.
struct SearchConfig {
  int restarts = 200;
  int max_iters = 500;
  double step_initial = 0.1;
  double step_decay = 0.7;
  double step_growth = 1.5;
  double step_min = 1e-10;
  double fd_step = 1e-6;
  double tolerance = 1e-8;          // residual below this: counterexample
  double certify_threshold = 1e-4;  // best residual at or above this: none found
  std::uint64_t seed = 42;
  int workers = 1;
  bool polish = true;  // Gauss-Newton refinement of near-collisions

  void validate() const {
    if (restarts < 1) throw std::invalid_argument("SearchConfig: restarts must be >= 1");
    if (max_iters < 1) throw std::invalid_argument("SearchConfig: max_iters must be >= 1");
    if (!(tolerance > 0.0) || !(tolerance < certify_threshold))
      throw std::invalid_argument("SearchConfig: need 0 < tolerance < certify_threshold");
    if (!(step_initial > 0.0) || !(step_decay > 0.0 && step_decay < 1.0) || !(step_growth >= 1.0) ||
        !(step_min > 0.0) || !(fd_step > 0.0))
      throw std::invalid_argument("SearchConfig: invalid step schedule");
    if (workers < 1) throw std::invalid_argument("SearchConfig: workers must be >= 1");
  }

  DescentOptions descent(double value_floor = 0.0) const {
    DescentOptions o;
    o.max_iters = max_iters;
    o.step_initial = step_initial;
    o.step_decay = step_decay;
    o.step_growth = step_growth;
    o.step_min = step_min;
    o.fd_step = fd_step;
    o.value_floor = value_floor;
    return o;
  }
};

}  // namespace uent
