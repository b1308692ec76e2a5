// Benchmark: OpenMP-parallel radius_curve against the serial reference.
// Grid points are independent solves, so the two paths must agree bitwise;
// the benchmark checks that while timing them.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bohrfrac/radius.hpp"

using bohrfrac::CurvePoint;
using bohrfrac::Family;
using bohrfrac::Variant;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Case {
  Family family;
  double alpha_min, alpha_max;
};

}  // namespace

int main(int argc, char** argv) {
  int points = 96;
  if (argc > 1) points = std::atoi(argv[1]);
  if (points < 2) points = 2;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif
  std::printf("grid points per family: %d\n\n", points);
  std::printf("%-10s %12s %12s %9s %s\n", "family", "serial[s]", "parallel[s]",
              "speedup", "identical");

  const Case cases[] = {
      {Family::analytic_R, 0.0, 0.95},
      {Family::shifted_rho, 0.0, 1.0},
      {Family::squared_N, 0.0, 0.95},
      {Family::convex_P, 0.0, 0.9},
      {Family::bloch_M, 0.0, 0.95},
  };

  bool all_ok = true;
  for (const Case& c : cases) {
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) {
      grid[i] = c.alpha_min + (c.alpha_max - c.alpha_min) * i / (points - 1.0);
    }

    auto t0 = clock_type::now();
    std::vector<CurvePoint> serial =
        bohrfrac::radius_curve_serial(c.family, Variant::as_stated, grid);
    double ts = seconds_since(t0);

    t0 = clock_type::now();
    std::vector<CurvePoint> parallel =
        bohrfrac::radius_curve(c.family, Variant::as_stated, grid);
    double tp = seconds_since(t0);

    bool same = serial.size() == parallel.size();
    for (size_t i = 0; same && i < serial.size(); ++i) {
      bool a = serial[i].result.has_value();
      bool b = parallel[i].result.has_value();
      same = (a == b) &&
             (!a || serial[i].result->root == parallel[i].result->root) &&
             serial[i].error == parallel[i].error;
    }
    all_ok = all_ok && same;

    std::printf("%-10s %12.4f %12.4f %8.2fx %s\n",
                bohrfrac::family_name(c.family), ts, tp, ts / tp,
                same ? "yes" : "NO");
  }
  return all_ok ? 0 : 1;
}
