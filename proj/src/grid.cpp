#include "ptspec/grid.hpp"

#include "ptspec/parallel.hpp"

namespace ptspec::grid {

namespace {

void check_spec(const GridSpec& spec) {
  if (spec.n1 < 2 || spec.n2 < 2) throw DomainError("grid: need at least 2 x 2 nodes");
  if (!(spec.window.k1max > spec.window.k1min) || !(spec.window.k2max > spec.window.k2min)) {
    throw DomainError("grid: empty window");
  }
}

void evaluate_node(const ComplexFn& fn, const GridSpec& spec, GridValues& out, std::size_t idx) {
  const int i = static_cast<int>(idx % spec.n1);
  const int j = static_cast<int>(idx / spec.n1);
  try {
    const Complex v = fn(spec.node(i, j));
    out.f[idx] = v;
    out.ok[idx] = is_finite(v) ? 1 : 0;
  } catch (const Error&) {
    out.ok[idx] = 0;
  }
}

GridValues blank(const GridSpec& spec) {
  check_spec(spec);
  GridValues out;
  out.spec = spec;
  const std::size_t n = static_cast<std::size_t>(spec.n1) * spec.n2;
  out.f.assign(n, Complex(0.0));
  out.ok.assign(n, 0);
  return out;
}

}  // namespace

GridValues evaluate_grid_serial(const ComplexFn& fn, const GridSpec& spec) {
  GridValues out = blank(spec);
  for (std::size_t idx = 0; idx < out.f.size(); ++idx) evaluate_node(fn, spec, out, idx);
  return out;
}

GridValues evaluate_grid(const ComplexFn& fn, const GridSpec& spec, int jobs) {
  GridValues out = blank(spec);
  parallel::for_each_index(out.f.size(), [&](std::size_t idx) { evaluate_node(fn, spec, out, idx); }, jobs);
  return out;
}

void evaluate_points(const ComplexFn& fn, const std::vector<Complex>& points, std::vector<Complex>& values,
                     std::vector<unsigned char>& ok, int jobs) {
  values.assign(points.size(), Complex(0.0));
  ok.assign(points.size(), 0);
  parallel::for_each_index(
      points.size(),
      [&](std::size_t i) {
        try {
          values[i] = fn(points[i]);
          ok[i] = is_finite(values[i]) ? 1 : 0;
        } catch (const Error&) {
          ok[i] = 0;
        }
      },
      jobs);
}

}  // namespace ptspec::grid
