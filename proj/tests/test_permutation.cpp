#include "doctest.h"
#include "treeverb/errors.hpp"
#include "treeverb/permutation.hpp"

using namespace treeverb;

namespace {

// independent sign oracle: parity of the inversion count
int sign_by_inversions(const Permutation& p) {
  int inv = 0;
  for (int i = 0; i < p.degree(); ++i)
    for (int j = i + 1; j < p.degree(); ++j)
      if (p(i) > p(j)) ++inv;
  return inv & 1;
}

}  // namespace

TEST_SUITE("permutation") {

TEST_CASE("identity and validation") {
  const Permutation id(4);
  CHECK(id.is_identity());
  CHECK(id.degree() == 4);
  for (int i = 0; i < 4; ++i) CHECK(id(i) == i);
  CHECK_THROWS_AS(Permutation::from_images({0, 0, 1}), domain_error);
  CHECK_THROWS_AS(Permutation::from_images({0, 3, 1}), domain_error);
  CHECK_THROWS_AS(Permutation::from_one_based({1, 2, 4}), domain_error);
  CHECK_THROWS_AS(Permutation(0), domain_error);
}

TEST_CASE("product applies the left factor first") {
  const Permutation a = Permutation::cycle(3, std::vector<int>{0, 1});
  const Permutation b = Permutation::full_cycle(3);
  const Permutation ab = a * b;
  for (int i = 0; i < 3; ++i) CHECK(ab(i) == b(a(i)));
  CHECK(ab.to_string() == "[3 2 1]");
}

TEST_CASE("inverse and powers") {
  for (const auto& p : all_permutations(4)) {
    CHECK((p * p.inverse()).is_identity());
    CHECK((p.inverse() * p).is_identity());
    CHECK(p.pow(p.order()).is_identity());
    CHECK(p.pow(-1) == p.inverse());
    CHECK(p.pow(5) == p * p * p * p * p);
  }
}

TEST_CASE("conjugation relabels points") {
  // a^x sends x(i) to x(a(i))
  for (const auto& a : all_permutations(3))
    for (const auto& x : all_permutations(3)) {
      const Permutation c = a.conjugated_by(x);
      for (int i = 0; i < 3; ++i) CHECK(c(x(i)) == x(a(i)));
    }
}

TEST_CASE("sign matches the inversion count") {
  for (int d = 2; d <= 5; ++d)
    for (const auto& p : all_permutations(d)) CHECK(p.sign_bit() == sign_by_inversions(p));
}

TEST_CASE("order") {
  CHECK(Permutation::full_cycle(5).order() == 5);
  CHECK(Permutation::from_one_based({2, 1, 4, 5, 3}).order() == 6);
  CHECK(Permutation(3).order() == 1);
}

TEST_CASE("cycle constructor") {
  const Permutation c = Permutation::cycle(5, std::vector<int>{1, 3, 4});
  CHECK(c(1) == 3);
  CHECK(c(3) == 4);
  CHECK(c(4) == 1);
  CHECK(c(0) == 0);
  CHECK(c(2) == 2);
  CHECK_THROWS_AS(Permutation::cycle(3, std::vector<int>{0, 0}), domain_error);
}

TEST_CASE("full cycle recognition") {
  int cycles = 0;
  for (const auto& p : all_permutations(4))
    if (p.is_full_cycle()) ++cycles;
  CHECK(cycles == 6);  // (4-1)!
  CHECK(Permutation::full_cycle(4).is_full_cycle());
  CHECK_FALSE(Permutation(4).is_full_cycle());
}

TEST_CASE("text form round trips") {
  CHECK(Permutation(3).to_string() == "id");
  CHECK(Permutation::full_cycle(3).to_string() == "[2 3 1]");
  for (const auto& p : all_permutations(4)) {
    std::vector<int> images;
    for (int i = 0; i < 4; ++i) images.push_back(p(i) + 1);
    CHECK(Permutation::from_one_based(images) == p);
  }
}

TEST_CASE("permutation tables") {
  CHECK(all_permutations(3).size() == 6);
  CHECK(all_permutations(5).size() == 120);
  CHECK(all_permutations(3).front().is_identity());
  const auto& perms = all_permutations(4);
  for (size_t i = 1; i < perms.size(); ++i) CHECK(perms[i - 1] < perms[i]);
  CHECK(all_full_cycles(5).size() == 24);
  for (const auto& c : all_full_cycles(4)) CHECK(c.is_full_cycle());
  CHECK_THROWS_AS(all_permutations(10), domain_error);
}

TEST_CASE("hash is equality consistent") {
  const Permutation p = Permutation::full_cycle(4);
  const Permutation q = Permutation::from_one_based({2, 3, 4, 1});
  CHECK(p == q);
  CHECK(p.hash() == q.hash());
}

}  // TEST_SUITE
