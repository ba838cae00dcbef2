// Times the elimination kernel on the largest interpolation matrices.
// Usage: bench_rank [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "phantom/interpolation_oracle.hpp"

using namespace phantom;

int main(int argc, char** argv) {
  int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  const std::pair<const char*, DivisorClass> cases[] = {
      {"57H-18E", DivisorClass::homogeneous(57, 18)},
      {"57H-19E", DivisorClass::homogeneous(57, 19)},
      {"57H-18E-E1", DivisorClass::homogeneous(57, 18) - DivisorClass::exceptional(1)},
  };
  for (std::uint64_t p : {kDefaultPrime, kSecondPrime}) {
    for (const auto& [name, cls] : cases) {
      ModMatrix base = interpolation_matrix(FatPointProblem::from_class(cls, p, kDefaultSeed));
      double best = 1e300;
      std::int64_t rank = 0;
      for (int r = 0; r < repeats; ++r) {
        ModMatrix a = base;
        auto t0 = std::chrono::steady_clock::now();
        rank = rank_mod_p(a);
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      }
      std::printf("%-11s p=%-10llu %zux%zu rank %lld  best %.3f s\n", name, static_cast<unsigned long long>(p),
                  base.rows, base.cols, static_cast<long long>(rank), best);
    }
  }
}
