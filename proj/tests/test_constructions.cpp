#include <vector>

#include "doctest.h"
#include "treeverb/constructions.hpp"
#include "treeverb/dsl.hpp"
#include "treeverb/errors.hpp"
#include "treeverb/parity.hpp"
#include "treeverb/random.hpp"

using namespace treeverb;

namespace {

bool congruent(const TreeAutomorphism& g, const TreeAutomorphism& h, int depth) {
  return truncate(g, depth) == truncate(h, depth);
}

SpineSpec random_spine(int degree, int n_pre, int n_per, Rng& rng) {
  SpineSpec spec;
  spec.degree = degree;
  for (int i = 0; i < n_pre; ++i) spec.pre.push_back(random_full_cycle(degree, rng));
  for (int i = 0; i < n_per; ++i) spec.per.push_back(random_full_cycle(degree, rng));
  return spec;
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("spine machines round trip through their specs") {
  Rng rng(201);
  for (int it = 0; it < 20; ++it) {
    const int d = it % 2 ? 5 : 3;
    const auto spec = random_spine(d, it % 3, 1 + it % 2, rng);
    const auto m = spine_automaton(spec);
    CHECK(is_level_transitive(m, 4));
    const auto rec = spine_spec_of(m);
    CHECK(spine_automaton(rec) == m);
  }
  const auto odo = spine_spec_of(adding_machine(3));
  CHECK(odo.pre.empty());
  CHECK(odo.per == std::vector<Permutation>{Permutation::full_cycle(3)});
}

TEST_CASE("spine recovery rejects non-spine machines") {
  CHECK_THROWS_AS(spine_spec_of(rooted(Permutation::cycle(3, std::vector<int>{0, 1}))),
                  domain_error);
  const auto t3 = adding_machine(3);
  CHECK_THROWS_AS(spine_spec_of(from_sections({t3, t3, t3}, Permutation::full_cycle(3))),
                  domain_error);
}

TEST_CASE("odometer conjugators") {
  // the odometer itself needs no conjugation
  SpineSpec triv;
  triv.degree = 3;
  triv.per.push_back(Permutation::full_cycle(3));
  CHECK(conjugator_to_odometer(triv).is_identity());

  Rng rng(202);
  for (int it = 0; it < 10; ++it) {
    const int d = it % 2 ? 5 : 3;
    const auto spec = random_spine(d, it % 2 ? 2 : 0, 1 + it % 3, rng);
    const auto x = conjugator_to_odometer(spec);
    CHECK(equals(conjugate(spine_automaton(spec), x), adding_machine(d)));
  }
}

TEST_CASE("order two representatives") {
  CHECK(order_two_rep(ParitySequence::zero(), 3).is_identity());

  const auto flip = ParitySequence::parse("pre=1;per=0");
  const auto a = order_two_rep(flip, 3);
  CHECK_FALSE(a.is_identity());
  CHECK(compose(a, a).is_identity());
  CHECK(parity_sequence(a) == flip);
  CHECK(classify_chain(a) == 0);

  const auto ones = order_two_rep(ParitySequence::parse("pre=;per=1"), 5);
  CHECK(compose(ones, ones).is_identity());
  CHECK(parity_sequence(ones).to_string() == "pre=;per=1");

  CHECK_THROWS_AS(order_two_rep(flip, 2), domain_error);
}

TEST_CASE("even permutations factor into two conjugate full cycles") {
  const auto [alpha, beta] = two_dcycle_factorization(Permutation(3));
  CHECK(alpha.to_string() == "[2 3 1]");
  CHECK(beta.to_string() == "[1 3 2]");

  for (int d : {3, 5}) {
    for (const auto& sigma : all_permutations(d)) {
      if (sigma.sign_bit()) continue;
      const auto [a, b] = two_dcycle_factorization(sigma);
      CHECK(a.is_full_cycle());
      CHECK(a * a.conjugated_by(b) == sigma);
      // a is the first full cycle (image order) with a full-cycle complement
      for (const auto& c : all_full_cycles(d)) {
        if (c == a) break;
        CHECK_FALSE((c.inverse() * sigma).is_full_cycle());
      }
    }
  }
  CHECK_THROWS_AS(two_dcycle_factorization(Permutation::cycle(3, std::vector<int>{0, 1})),
                  domain_error);
  CHECK_THROWS_AS(two_dcycle_factorization(Permutation(4)), domain_error);
}

TEST_CASE("transitive pair decompositions") {
  Rng rng(203);
  for (int it = 0; it < 10; ++it) {
    const auto g = from_portrait(random_kernel_portrait(3, 3, rng));
    const auto w = decompose_transitive_pair(g, 3);
    CHECK(w.depth == 3);
    CHECK(congruent(compose(w.u, conjugate(w.u, w.y)), g, 3));
    CHECK(is_level_transitive(w.u, 3));
    const auto spec = spine_spec_of(w.u);  // u must be in spine form
    CHECK(spec.degree == 3);
  }
  const auto g5 = from_portrait(random_kernel_portrait(5, 2, rng));
  const auto w5 = decompose_transitive_pair(g5, 2);
  CHECK(congruent(compose(w5.u, conjugate(w5.u, w5.y)), g5, 2));

  CHECK_THROWS_AS(decompose_transitive_pair(rooted(Permutation::cycle(3, std::vector<int>{0, 1})), 2),
                  domain_error);
  CHECK_THROWS_AS(decompose_transitive_pair(adding_machine(2), 2), domain_error);
  CHECK_THROWS_AS(decompose_transitive_pair(adding_machine(3), 0), domain_error);
}

TEST_CASE("conjugacy solving") {
  Rng rng(204);
  for (int it = 0; it < 12; ++it) {
    const int d = it % 3 ? 3 : 2;
    const auto g = from_portrait(random_portrait(d, 3, rng));
    const auto x = from_portrait(random_portrait(d, 3, rng));
    const auto h = conjugate(g, x);
    const auto found = solve_conjugacy(g, h, 3);
    CHECK(congruent(conjugate(g, found), h, 3));
  }
  CHECK(solve_conjugacy(adding_machine(3), adding_machine(3), 4).is_identity());
  CHECK_THROWS_AS(
      solve_conjugacy(rooted(Permutation::cycle(3, std::vector<int>{0, 1})),
                      TreeAutomorphism::identity(3), 1),
      domain_error);
}

TEST_CASE("commutator forms against the odometer") {
  Rng rng(205);
  const auto t3 = adding_machine(3);
  for (int it = 0; it < 6; ++it) {
    const auto g = from_portrait(random_kernel_portrait(3, 2, rng));
    const auto form = commutator_form(g, 2);
    CHECK(congruent(commutator(conjugate(t3, form.a), form.b), g, 2));
  }
  const auto g5 = from_portrait(random_kernel_portrait(5, 1, rng));
  const auto f5 = commutator_form(g5, 1);
  CHECK(congruent(commutator(conjugate(adding_machine(5), f5.a), f5.b), g5, 1));

  CHECK_THROWS_AS(commutator_form(rooted(Permutation::cycle(3, std::vector<int>{0, 1})), 2),
                  domain_error);
}

TEST_CASE("binary commutator forms") {
  Rng rng(206);
  const auto t2 = adding_machine(2);
  for (int it = 0; it < 8; ++it) {
    const auto g = from_portrait(random_kernel_portrait(2, 3, rng));
    const auto h = binary_commutator_form(g, 3);
    CHECK(congruent(commutator(inverse(t2), h), g, 3));
  }
  CHECK_THROWS_AS(binary_commutator_form(adding_machine(2), 2), domain_error);
  CHECK_THROWS_AS(binary_commutator_form(adding_machine(3), 2), domain_error);
}

TEST_CASE("section shift is multiplicative") {
  Rng rng(207);
  for (int it = 0; it < 8; ++it) {
    const int d = 2 + it % 3;
    const auto g = random_machine(d, rng);
    const auto h = random_machine(d, rng);
    CHECK(equals(shift_endo(compose(g, h)), compose(shift_endo(g), shift_endo(h))));
    for (int i = 0; i < d; ++i)
      CHECK(section_at(shift_endo(g), {static_cast<uint8_t>(i)}) ==
            section_at(g, {static_cast<uint8_t>((i + 1) % d)}));
  }
}

TEST_CASE("registered endomorphisms are multiplicative") {
  Rng rng(208);
  const auto a = order_two_rep(ParitySequence::parse("pre=1;per=0"), 3);
  const std::vector<Endomorphism> maps = {
      Endomorphism::identity_map(),    Endomorphism::shift(),
      Endomorphism::level_floor(),     Endomorphism::indicator(a, 0),
      Endomorphism::indicator(a, 2),   Endomorphism::lifted(Endomorphism::level_floor()),
      Endomorphism::lifted(Endomorphism::shift())};
  for (int it = 0; it < 6; ++it) {
    const auto g = random_machine(3, rng);
    const auto h = random_machine(3, rng);
    for (const auto& phi : maps) CHECK(equals(phi(compose(g, h)), compose(phi(g), phi(h))));
  }
  CHECK(equals(level_floor(adding_machine(3)), rooted(Permutation::full_cycle(3))));
  CHECK_THROWS_AS(Endomorphism::indicator(adding_machine(3), 0), domain_error);
}

TEST_CASE("stabilizer elements split into adjacent inverse pairs") {
  Rng rng(209);
  for (int it = 0; it < 8; ++it) {
    const int d = it % 2 ? 5 : 3;
    const auto h = from_portrait(random_stabilizer_kernel_portrait(d, 3, rng));
    REQUIRE(in_chain(h, 2));
    const auto factors = split_factorization(h, 3);
    CHECK(factors.size() == static_cast<size_t>(d));
    auto prod = TreeAutomorphism::identity(d);
    for (const auto& f : factors) {
      prod = compose(prod, f);
      CHECK(in_stabilizer(f, 1));
    }
    CHECK(prod == h);
    for (int j = 0; j + 1 < d; ++j) {
      const auto& f = factors[static_cast<size_t>(j)];
      CHECK(section_at(f, {static_cast<uint8_t>(j + 1)}) ==
            inverse(section_at(f, {static_cast<uint8_t>(j)})));
      for (int i = 0; i < d; ++i)
        if (i != j && i != j + 1) CHECK(section_at(f, {static_cast<uint8_t>(i)}).is_identity());
    }
  }
  CHECK_THROWS_AS(split_factorization(adding_machine(3), 2), domain_error);
}

TEST_CASE("signed section conjugates") {
  Rng rng(210);
  for (int it = 0; it < 6; ++it) {
    const auto g = from_portrait(random_stabilizer_portrait(3, 3, rng));
    const std::vector<int> signs = {1, -1, -1};
    const auto r = signed_section_conjugate(g, signs, 3);
    CHECK(in_stabilizer(r, 1));
    for (int i = 0; i < 3; ++i) {
      const auto want = power(section_at(g, {static_cast<uint8_t>(i)}), signs[static_cast<size_t>(i)]);
      CHECK(congruent(section_at(r, {static_cast<uint8_t>(i)}), want, 2));
    }
  }
  CHECK_THROWS_AS(signed_section_conjugate(adding_machine(3), {1, 1, 1}, 2), domain_error);
  CHECK_THROWS_AS(
      signed_section_conjugate(from_portrait(random_stabilizer_portrait(3, 2, rng)), {1, 1}, 2),
      domain_error);
}

}  // TEST_SUITE
