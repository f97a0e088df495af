// Times INAR path simulation across tau and the direct/FFT crossover.
//   bench_cdq [paths] [seed]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <initializer_list>

#include "rhinar/inar.hpp"
#include "rhinar/params.hpp"

int main(int argc, char** argv) {
  const std::size_t paths = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2000;
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 7;
  const rhinar::ModelConfig config;

  std::printf("%8s %10s %12s\n", "tau", "crossover", "us_per_path");
  for (double tau : {40.0, 80.0, 160.0, 320.0, 640.0, 1280.0, 2560.0}) {
    const auto d = rhinar::derive(config, tau);
    const auto table = rhinar::build_kernel_table(d);
    for (std::size_t cross : {16u, 32u, 64u, 128u, 256u, 512u, 1024u, 1u << 30}) {
      const rhinar::InarSimulator sim(d, table, cross);
      rhinar::PathRecord rec;
      auto scratch = sim.convolver().make_scratch();
      double checksum = 0.0;
      const auto t0 = std::chrono::steady_clock::now();
      for (std::size_t p = 0; p < paths; ++p) {
        sim.simulate(rhinar::PathRng(seed, p), rec, scratch);
        checksum += rec.s.back();
      }
      const double us =
          1e6 * std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() /
          static_cast<double>(paths);
      std::printf("%8.0f %10zu %12.2f   (mean S_T %.4f)\n", tau, cross, us,
                  checksum / static_cast<double>(paths));
    }
  }
  return 0;
}
