#pragma once
//
// Multistart projected descent over products of complex unit spheres and over
// orthonormal pairs in C^d.
//
// A point is a complex vector split into equal-length blocks. Objectives are
// real functions of the real and imaginary parts; gradients use the packed
// convention grad = df/dRe + i df/dIm, so a descent step is x - t * grad.
//
// Each restart runs: gradient (analytic if supplied, else central finite
// differences), tangent projection, step, retraction. A step that lowers the
// objective is accepted and the step length grows; otherwise it shrinks by the
// decay factor. The restart stops when the step length falls below its floor,
// the objective falls below its floor, or the iteration budget runs out.
//

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "uent/random.hpp"
#include "uent/subspace.hpp"

namespace uent {

struct Manifold {
  enum class Kind { spheres, orthonormal_pair };
  Kind kind = Kind::spheres;
  std::vector<int> blocks;  // block lengths, in order

  static Manifold sphere(int n) { return {Kind::spheres, {n}}; }
  static Manifold sphere_pair(int n1, int n2) { return {Kind::spheres, {n1, n2}}; }
  static Manifold orthonormal_pair(int n) { return {Kind::orthonormal_pair, {n, n}}; }

  int size() const {
    int s = 0;
    for (int b : blocks) s += b;
    return s;
  }

  /// Pull an arbitrary point back onto the manifold.
  void retract(CVector& x) const {
    if (kind == Kind::spheres) {
      int off = 0;
      for (int b : blocks) {
        auto seg = x.segment(off, b);
        seg /= seg.norm();
        off += b;
      }
      return;
    }
    const int n = blocks[0];
    auto a = x.segment(0, n);
    auto v = x.segment(n, n);
    a /= a.norm();
    // twice is enough
    v -= a * a.dot(v);
    v -= a * a.dot(v);
    v /= v.norm();
  }

  /// Remove gradient components normal to the manifold at x.
  void project_tangent(const CVector& x, CVector& g) const {
    if (kind == Kind::spheres) {
      int off = 0;
      for (int b : blocks) {
        const auto xs = x.segment(off, b);
        auto gs = g.segment(off, b);
        gs -= xs * xs.dot(gs).real();
        off += b;
      }
      return;
    }
    // Stiefel tangent projection for X = [a b]: G - X sym(X^H G).
    const int n = blocks[0];
    CMatrix xm(n, 2), gm(n, 2);
    xm << x.segment(0, n), x.segment(n, n);
    gm << g.segment(0, n), g.segment(n, n);
    const CMatrix h = xm.adjoint() * gm;
    gm -= xm * (0.5 * (h + h.adjoint()));
    g.segment(0, n) = gm.col(0);
    g.segment(n, n) = gm.col(1);
  }

  CVector random_point(Rng& rng) const {
    CVector x = complex_gaussian(rng, size());
    retract(x);
    return x;
  }
};

struct DescentOptions {
  int max_iters = 500;
  double step_initial = 0.1;
  double step_decay = 0.7;
  double step_growth = 1.5;
  double step_min = 1e-10;
  double fd_step = 1e-6;
  double value_floor = -std::numeric_limits<double>::infinity();  // stop once the objective is at or below this
};

struct Objective {
  std::function<double(const CVector&)> value;
  // Optional: returns the value and writes the packed gradient.
  std::function<double(const CVector&, CVector&)> value_and_gradient;
};

/// Packed central-difference gradient of a real function of a complex vector.
inline CVector finite_difference_gradient(const std::function<double(const CVector&)>& f, const CVector& x,
                                          double h) {
  CVector g(x.size());
  CVector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const cplx xi = x(i);
    probe(i) = xi + cplx(h, 0.0);
    const double rp = f(probe);
    probe(i) = xi - cplx(h, 0.0);
    const double rm = f(probe);
    probe(i) = xi + cplx(0.0, h);
    const double ip = f(probe);
    probe(i) = xi - cplx(0.0, h);
    const double im = f(probe);
    probe(i) = xi;
    g(i) = cplx((rp - rm) / (2 * h), (ip - im) / (2 * h));
  }
  return g;
}

struct LocalResult {
  CVector point;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool hit_iteration_cap = false;
};

inline LocalResult projected_descent(const Objective& obj, const Manifold& m, CVector x, const DescentOptions& opt) {
  m.retract(x);
  auto eval_grad = [&](const CVector& p, CVector& g) {
    if (obj.value_and_gradient) return obj.value_and_gradient(p, g);
    g = finite_difference_gradient(obj.value, p, opt.fd_step);
    return obj.value(p);
  };

  LocalResult r;
  CVector g;
  double f = eval_grad(x, g);
  double step = opt.step_initial;
  int it = 0;
  for (; it < opt.max_iters; ++it) {
    if (f <= opt.value_floor || step < opt.step_min) break;
    m.project_tangent(x, g);
    if (g.squaredNorm() == 0.0) break;
    CVector cand = x - step * g;
    m.retract(cand);
    CVector gc;
    // The analytic path returns the gradient for free; finite differences are
    // only paid for on accepted steps.
    const double fc = obj.value_and_gradient ? obj.value_and_gradient(cand, gc) : obj.value(cand);
    if (fc < f) {
      if (!obj.value_and_gradient) gc = finite_difference_gradient(obj.value, cand, opt.fd_step);
      x = std::move(cand);
      f = fc;
      g = std::move(gc);
      step *= opt.step_growth;
    } else {
      step *= opt.step_decay;
    }
  }
  r.point = std::move(x);
  r.value = f;
  r.iterations = it;
  r.hit_iteration_cap = it >= opt.max_iters;
  return r;
}

/// Run fn(i) for i in [0, count) on up to `workers` threads. fn must only
/// write to slot i of caller-owned storage.
template <class Fn>
void parallel_for(int count, int workers, Fn&& fn) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
}

/// Independent descents from start points drawn with sub_seed(seed, k). Result
/// k depends only on (objective, seed, k).
inline std::vector<LocalResult> multistart_descent(const Objective& obj, const Manifold& m, int restarts,
                                                   std::uint64_t seed, const DescentOptions& opt, int workers = 1) {
  if (restarts < 1) throw std::invalid_argument("multistart_descent: restarts must be >= 1");
  std::vector<LocalResult> out(restarts);
  parallel_for(restarts, workers, [&](int k) {
    Rng rng(sub_seed(seed, static_cast<std::uint64_t>(k)));
    out[k] = projected_descent(obj, m, m.random_point(rng), opt);
  });
  return out;
}

/// Index of the lowest score; ties go to the lowest index.
inline std::size_t argmin_first(const std::vector<double>& scores) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < scores.size(); ++k)
    if (scores[k] < scores[best]) best = k;
  return best;
}

}  // namespace uent
