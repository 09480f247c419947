// Times the serial reference kernels against their OpenMP counterparts on
// synthetic lattices large enough to matter, then the whole builtin corpus
// at two parallelism degrees. Results must agree exactly; timing is the
// only thing allowed to differ.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "dml/corpus.hpp"
#include "dml/kernels.hpp"
#include "dml/lattice.hpp"
#include "dml/report.hpp"

using namespace dml;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  // one warmup, then the best of reps
  fn();
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = Clock::now();
    fn();
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    if (ms < best) best = ms;
  }
  return best;
}

void row(const std::string& name, int n, double ref_ms, double omp_ms) {
  std::printf("%-28s n=%-5d serial %9.2f ms   omp %9.2f ms   speedup %.2fx\n",
              name.c_str(), n, ref_ms, omp_ms, ref_ms / omp_ms);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", kernels::hardware_threads());

  {
    FiniteLattice L = powerset(8);  // 256 elements, cubic scans
    const int n = L.size();
    double ref = time_ms(
        [&] {
          (void)kernels::modularity_violation_ref(L.leq_table(), L.meet_table(),
                                                  L.join_table(), n);
        },
        3);
    double omp = time_ms(
        [&] {
          (void)kernels::modularity_violation_omp(L.leq_table(), L.meet_table(),
                                                  L.join_table(), n);
        },
        3);
    row("modularity scan", n, ref, omp);

    ref = time_ms(
        [&] {
          (void)kernels::distributivity_violation_ref(L.meet_table(),
                                                      L.join_table(), n);
        },
        3);
    omp = time_ms(
        [&] {
          (void)kernels::distributivity_violation_omp(L.meet_table(),
                                                      L.join_table(), n);
        },
        3);
    row("distributivity scan", n, ref, omp);

    ref = time_ms(
        [&] { (void)kernels::associativity_violation_ref(L.meet_table(), n); }, 3);
    omp = time_ms(
        [&] { (void)kernels::associativity_violation_omp(L.meet_table(), n); }, 3);
    row("associativity scan", n, ref, omp);

    ref = time_ms(
        [&] {
          (void)kernels::join_distributivity_violation_ref(
              L.meet_table(), L.join_table(), n, L.bottom());
        },
        3);
    omp = time_ms(
        [&] {
          (void)kernels::join_distributivity_violation_omp(
              L.meet_table(), L.join_table(), n, L.bottom());
        },
        3);
    row("product/join distribution", n, ref, omp);
  }

  {
    FiniteLattice L = lattice_product(chain(20), chain(20));  // 400 elements
    const int n = L.size();
    double ref = time_ms(
        [&] {
          (void)kernels::heyting_table_ref(L.meet_table(), L.join_table(),
                                           L.leq_table(), n, L.bottom());
        },
        3);
    double omp = time_ms(
        [&] {
          (void)kernels::heyting_table_omp(L.meet_table(), L.join_table(),
                                           L.leq_table(), n, L.bottom());
        },
        3);
    row("heyting table", n, ref, omp);

    ref = time_ms(
        [&] {
          (void)kernels::residual_table_ref(L.meet_table(), L.join_table(),
                                            L.leq_table(), n, L.bottom(), true);
        },
        3);
    omp = time_ms(
        [&] {
          (void)kernels::residual_table_omp(L.meet_table(), L.join_table(),
                                            L.leq_table(), n, L.bottom(), true);
        },
        3);
    row("residual table", n, ref, omp);

    ref = time_ms(
        [&] {
          (void)kernels::normality_violation_ref(L.join_table(), L.meet_table(), n,
                                                 L.top(), L.bottom());
        },
        3);
    omp = time_ms(
        [&] {
          (void)kernels::normality_violation_omp(L.join_table(), L.meet_table(), n,
                                                 L.top(), L.bottom());
        },
        3);
    row("normality search", n, ref, omp);
  }

  {
    FiniteLattice L = lattice_product(chain(48), chain(48));  // 2304 elements
    const int n = L.size();
    double ref = time_ms(
        [&] {
          (void)kernels::annihilator_table_ref(L.meet_table(), L.join_table(), n,
                                               L.bottom(), true);
        },
        5);
    double omp = time_ms(
        [&] {
          (void)kernels::annihilator_table_omp(L.meet_table(), L.join_table(), n,
                                               L.bottom(), true);
        },
        5);
    row("annihilator table", n, ref, omp);
  }

  {
    const auto& entries = builtin_corpus();
    kernels::set_parallelism(1);
    double serial = time_ms(
        [&] { (void)run_harnesses(entries, Bounds{}, HarnessSelection{}, 1, "."); },
        1);
    kernels::set_parallelism(0);
    double par = time_ms(
        [&] { (void)run_harnesses(entries, Bounds{}, HarnessSelection{}, 0, "."); },
        1);
    std::printf("\nbuiltin corpus               jobs=1 %9.2f ms   jobs=auto %6.2f ms   speedup %.2fx\n",
                serial, par, serial / par);
  }
  return 0;
}
