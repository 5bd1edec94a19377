#pragma once

#include <functional>
#include <vector>

#include "ptspec/types.hpp"

namespace ptspec::grid {

/// Rectangle in the complex k-plane.
struct Window {
  double k1min = 0.0, k1max = 0.0, k2min = 0.0, k2max = 0.0;

  bool contains(Complex k) const {
    return k.real() >= k1min && k.real() <= k1max && k.imag() >= k2min && k.imag() <= k2max;
  }
};

/// n1 x n2 nodes spanning the window, corners included.
struct GridSpec {
  Window window;
  int n1 = 64;
  int n2 = 32;

  double dk1() const { return (window.k1max - window.k1min) / (n1 - 1); }
  double dk2() const { return (window.k2max - window.k2min) / (n2 - 1); }
  double k1(int i) const { return window.k1min + dk1() * i; }
  double k2(int j) const { return window.k2min + dk2() * j; }
  Complex node(int i, int j) const { return {k1(i), k2(j)}; }
};

/// Function values on a grid; `ok` is 0 where evaluation threw.
struct GridValues {
  GridSpec spec;
  std::vector<Complex> f;
  std::vector<unsigned char> ok;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * spec.n1 + i; }
  Complex at(int i, int j) const { return f[index(i, j)]; }
  bool valid(int i, int j) const { return ok[index(i, j)] != 0; }
};

using ComplexFn = std::function<Complex(Complex)>;

/// Reference implementation, one node after another.
GridValues evaluate_grid_serial(const ComplexFn& fn, const GridSpec& spec);
/// OpenMP version; jobs = 0 uses the default worker count.
GridValues evaluate_grid(const ComplexFn& fn, const GridSpec& spec, int jobs = 0);

/// Evaluates fn at arbitrary points; failures leave ok[i] = 0.
void evaluate_points(const ComplexFn& fn, const std::vector<Complex>& points, std::vector<Complex>& values,
                     std::vector<unsigned char>& ok, int jobs = 0);

}  // namespace ptspec::grid
