#pragma once

#include <cmath>

namespace thzsec {

struct ScalarMinimum {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

/// Golden-section search for the minimum of a unimodal `f` on the open interval (a, b).
///
/// `f` is only evaluated strictly inside the interval. Stops once the bracket is
/// narrower than `x_tolerance` or after `max_iterations` reductions.
template <typename F>
ScalarMinimum golden_section_minimize(F&& f, double a, double b, double x_tolerance, int max_iterations = 200) {
  constexpr double inv_phi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  for (; it < max_iterations && (b - a) > x_tolerance; ++it) {
    if (fc <= fd) {  // ties move toward the lower end
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (fc <= fd) return {c, fc, it};
  return {d, fd, it};
}

}  // namespace thzsec
