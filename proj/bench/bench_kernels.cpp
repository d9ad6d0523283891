// Times the serial reference kernels against the OpenMP ones on the
// largest bundled group (19683 elements) and prints one line per kernel.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "pgw/config.hpp"
#include "pgw/families.hpp"
#include "pgw/kernels.hpp"

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  using clock = std::chrono::steady_clock;
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = clock::now();
    fn();
    auto t1 = clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const std::string& name, double serial_ms, double parallel_ms) {
  std::printf("%-24s %10.2f ms %10.2f ms %8.2fx\n", name.c_str(), serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
  using namespace pgw;
  std::printf("building lm_example(3,2): 19683 elements...\n");
  BuiltFamily big = build_family(FamilySpec::make_lm_example(3, 2));
  const GroupTable& g = *big.table;
  BuiltFamily small = build_family(FamilySpec::make_lm_example(3, 1));
  const GroupTable& g729 = *small.table;

  SubgroupSet full = full_subgroup(g);
  SubgroupSet om1 = agemo(g, 1);

  std::printf("threads: %d\n", threads());
  std::printf("%-24s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  row("order_exp_scan/19683",
      time_ms([&] { kernels::order_exp_scan_serial(g, full.members); }, 3),
      time_ms([&] { kernels::order_exp_scan_parallel(g, full.members); }, 3));

  row("power_map(p)/19683", time_ms([&] { kernels::power_map_serial(g, full.members, 3); }, 3),
      time_ms([&] { kernels::power_map_parallel(g, full.members, 3); }, 3));

  row("pair_commutators/729^2",
      time_ms([&] { kernels::pair_commutators_serial(g, om1.members, om1.members); }, 3),
      time_ms([&] { kernels::pair_commutators_parallel(g, om1.members, om1.members); }, 3));

  row("central_step/19683",
      time_ms([&] {
        kernels::central_step_serial(g, full.members, g.generators, trivial_subgroup(g).members);
      }, 3),
      time_ms([&] {
        kernels::central_step_parallel(g, full.members, g.generators, trivial_subgroup(g).members);
      }, 3));

  row("mult_table/729", time_ms([&] { kernels::mult_table_serial(g729); }, 3),
      time_ms([&] { kernels::mult_table_parallel(g729); }, 3));

  row("inverse_scan/19683", time_ms([&] { kernels::inverse_scan_serial(g); }, 3),
      time_ms([&] { kernels::inverse_scan_parallel(g); }, 3));

  return 0;
}
