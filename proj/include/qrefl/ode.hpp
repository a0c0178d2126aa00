#pragma once

// Adaptive propagation of y'' = -w(x) y across a segment.
//
// The segment result is the real fundamental matrix mapping (y, y') at the
// segment start to (y, y') at its end, so segments can be chained and the
// complex boundary data applied afterwards. A second overload co-integrates
// one auxiliary real variable a(x) with a' = g(x, a) on which w may depend.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>

#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "qrefl/errors.hpp"

namespace qrefl::ode {

using cplx = std::complex<double>;

struct Mat2 {
  double a = 1.0, b = 0.0;  // row 1
  double c = 0.0, d = 1.0;  // row 2

  friend Mat2 operator*(const Mat2& l, const Mat2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
            l.c * r.b + l.d * r.d};
  }
  std::array<cplx, 2> apply(cplx y, cplx dy) const { return {a * y + b * dy, c * y + d * dy}; }
  double det() const { return a * d - b * c; }
};

struct Control {
  double rel_tol = 1e-12;
  std::size_t max_steps = 5'000'000;
};

struct SegmentResult {
  Mat2 m;
  double aux_end = 0.0;
  std::size_t steps = 0;
};

namespace detail {

template <std::size_t N, class Rhs>
std::size_t integrate(const Rhs& rhs, std::array<double, N>& state, double x0, double x1,
                      double dt, const Control& ctl) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, N>;
  auto stepper = odeint::make_controlled(0.0, ctl.rel_tol, odeint::runge_kutta_fehlberg78<State>());
  double x = x0;
  std::size_t steps = 0;
  const double span = x1 - x0;
  dt = std::min(dt, span);
  while (x < x1) {
    if (++steps > ctl.max_steps)
      throw ConvergenceError("ODE step budget exhausted on [" + std::to_string(x0) + ", " +
                             std::to_string(x1) + "]");
    const bool last = x + dt >= x1;
    if (last) dt = x1 - x;
    const double x_before = x;
    const auto res = stepper.try_step(rhs, state, x, dt);
    if (res == odeint::success) {
      if (last) x = x1;
      continue;
    }
    x = x_before;
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(x), std::abs(span));
    if (dt < floor)
      throw ConvergenceError("ODE step size underflow at x=" + std::to_string(x));
  }
  return steps;
}

}  // namespace detail

// Fundamental matrix of y'' = -w(x) y from x0 to x1 (x0 < x1).
template <class W>
SegmentResult propagate(const W& w, double x0, double x1, const Control& ctl) {
  using State = std::array<double, 4>;
  State s{1.0, 0.0, 0.0, 1.0};
  const auto rhs = [&w](const State& y, State& dy, double x) {
    const double f = w(x);
    dy[0] = y[1];
    dy[1] = -f * y[0];
    dy[2] = y[3];
    dy[3] = -f * y[2];
  };
  const double dt0 = 0.05 / std::sqrt(std::abs(w(x0)) + 1e-300);
  SegmentResult out;
  out.steps = detail::integrate<4>(rhs, s, x0, x1, dt0, ctl);
  out.m = {s[0], s[2], s[1], s[3]};
  return out;
}

// Same, with an auxiliary variable a(x0) = aux0, a' = g(x, a), and w = w(x, a).
template <class W, class G>
SegmentResult propagate_with_aux(const W& w, const G& g, double aux0, double x0, double x1,
                                 const Control& ctl) {
  using State = std::array<double, 5>;
  State s{1.0, 0.0, 0.0, 1.0, aux0};
  const auto rhs = [&w, &g](const State& y, State& dy, double x) {
    const double f = w(x, y[4]);
    dy[0] = y[1];
    dy[1] = -f * y[0];
    dy[2] = y[3];
    dy[3] = -f * y[2];
    dy[4] = g(x, y[4]);
  };
  const double dt0 = 0.05 / std::sqrt(std::abs(w(x0, aux0)) + 1e-300);
  SegmentResult out;
  out.steps = detail::integrate<5>(rhs, s, x0, x1, dt0, ctl);
  out.m = {s[0], s[2], s[1], s[3]};
  out.aux_end = s[4];
  return out;
}

}  // namespace qrefl::ode
