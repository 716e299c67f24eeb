#include <atomic>
#include <thread>
#include <vector>

#include "doctest.h"
#include "treeverb/constructions.hpp"
#include "treeverb/parity.hpp"
#include "treeverb/random.hpp"

using namespace treeverb;

TEST_SUITE("concurrency") {

// shared caches (permutation tables, factorization prechecks) under load
TEST_CASE("parallel use of shared tables") {
  const auto t3 = adding_machine(3);
  const auto baseline = parity_sequence(compose(t3, inverse(t3)));
  std::atomic<int> failures{0};

  std::vector<std::thread> workers;
  for (int w = 0; w < 8; ++w) {
    workers.emplace_back([&, w] {
      Rng rng(static_cast<uint64_t>(500 + w));
      for (int it = 0; it < 25; ++it) {
        const auto g = random_machine(3, rng);
        const auto round = compose(g, inverse(g));
        if (!round.is_identity()) ++failures;
        if (parity_sequence(round) != baseline) ++failures;
        const auto sigma = random_even_permutation(5, rng);
        const auto [a, b] = two_dcycle_factorization(sigma);
        if (a * a.conjugated_by(b) != sigma) ++failures;
        if (all_permutations(6).size() != 720) ++failures;
      }
    });
  }
  for (auto& t : workers) t.join();
  CHECK(failures.load() == 0);
}

}  // TEST_SUITE
