// Benchmark comparing the OpenMP grid kernels against their serial reference
// implementations. Build target only; not registered with ctest.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "cqnd/core.hpp"
#include "cqnd/maxconf.hpp"
#include "cqnd/oracle.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_seconds(F&& f, int repeats, double& checksum) {
  const auto t0 = clock_type::now();
  for (int i = 0; i < repeats; ++i) checksum += f();
  return std::chrono::duration<double>(clock_type::now() - t0).count() / repeats;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx\n", name,
              serial * 1e3, parallel * 1e3, serial / parallel);
}

}  // namespace

int main() {
  double checksum = 0.0;

  {
    auto objective = [](const std::vector<double>& x) {
      if ((1.0 - x[0]) * (1.0 - x[1]) < 0.25) return -1.0;
      return 0.4 * x[0] + 0.6 * x[1] + 0.05 * std::sin(40.0 * x[0] * x[1]);
    };
    const std::vector<cqnd::Interval> box{{0.0, 1.0}, {0.0, 1.0}};
    const double s = time_seconds(
        [&] { return cqnd::grid_refine_max_serial(objective, box, 501, 3).max; }, 3,
        checksum);
    const double p = time_seconds(
        [&] { return cqnd::grid_refine_max(objective, box, 501, 3).max; }, 3, checksum);
    report("grid_refine_max 501^2 x4", s, p);
  }

  {
    const cqnd::maxconf::QubitEnsemble ens(0.42 * M_PI, 0.58, 0.65);
    const double s = time_seconds(
        [&] { return cqnd::oracle::confidence_oracle_serial(ens, 1); }, 3, checksum);
    const double p = time_seconds(
        [&] { return cqnd::oracle::confidence_oracle(ens, 1); }, 3, checksum);
    report("confidence_oracle 721x1441", s, p);
  }

  std::printf("checksum %.12f\n", checksum);
  return 0;
}
