#include <vector>

#include "doctest.h"
#include "treeverb/automorphism.hpp"
#include "treeverb/constructions.hpp"
#include "treeverb/errors.hpp"
#include "treeverb/portrait.hpp"
#include "treeverb/random.hpp"

using namespace treeverb;

namespace {

std::vector<Vertex> all_vertices(int degree, int max_depth) {
  std::vector<Vertex> out{{}};
  size_t level_begin = 0;
  for (int n = 0; n < max_depth; ++n) {
    const size_t level_end = out.size();
    for (size_t i = level_begin; i < level_end; ++i)
      for (uint8_t c = 0; c < degree; ++c) {
        Vertex v = out[i];
        v.push_back(c);
        out.push_back(std::move(v));
      }
    level_begin = level_end;
  }
  return out;
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("vertex text form") {
  CHECK(parse_vertex("3,1", 3) == Vertex{2, 0});
  CHECK(parse_vertex("", 3).empty());
  CHECK(format_vertex(Vertex{2, 0}) == "3,1");
  CHECK(format_vertex(Vertex{}) == "");
  CHECK_THROWS_AS(parse_vertex("0,1", 3), parse_error);
  CHECK_THROWS_AS(parse_vertex("4", 3), parse_error);
  CHECK_THROWS_AS(parse_vertex("1,x", 3), parse_error);
}

TEST_CASE("odometer acts as +1 with carry") {
  const auto t2 = adding_machine(2);
  CHECK(format_vertex(treeverb::apply(t2, parse_vertex("1", 2))) == "2");
  CHECK(format_vertex(treeverb::apply(t2, parse_vertex("2,1", 2))) == "1,2");
  CHECK(format_vertex(treeverb::apply(t2, parse_vertex("2,2", 2))) == "1,1");
  CHECK(format_vertex(treeverb::apply(t2, parse_vertex("1,2,2", 2))) == "2,2,2");

  const auto t3 = adding_machine(3);
  CHECK(format_vertex(treeverb::apply(t3, parse_vertex("1", 3))) == "2");
  CHECK(format_vertex(treeverb::apply(t3, parse_vertex("3,1", 3))) == "1,2");
  CHECK(format_vertex(treeverb::apply(t3, parse_vertex("3,3,2", 3))) == "1,1,3");
  CHECK(t3.state_count() == 2);
  CHECK(t3.root_label() == Permutation::full_cycle(3));
  CHECK(is_level_transitive(t3, 5));
}

TEST_CASE("rooted permutations act on the first letter") {
  const Permutation s = Permutation::cycle(3, std::vector<int>{0, 1});
  const auto g = rooted(s);
  CHECK(treeverb::apply(g, Vertex{0, 2}) == Vertex{1, 2});
  CHECK(treeverb::apply(g, Vertex{2, 0}) == Vertex{2, 0});
  CHECK(is_level_transitive(rooted(Permutation::full_cycle(3)), 1));
  CHECK_FALSE(is_level_transitive(rooted(Permutation::full_cycle(3)), 2));
}

TEST_CASE("composition applies the left factor first") {
  Rng rng(42);
  for (int it = 0; it < 12; ++it) {
    const int d = 2 + it % 2;
    const auto f = random_machine(d, rng);
    const auto g = random_machine(d, rng);
    const auto fg = compose(f, g);
    for (const auto& v : all_vertices(d, 3)) CHECK(treeverb::apply(fg, v) == treeverb::apply(g, treeverb::apply(f, v)));
  }
}

TEST_CASE("inverse") {
  Rng rng(43);
  for (int it = 0; it < 12; ++it) {
    const int d = 2 + it % 3;
    const auto g = random_machine(d, rng);
    const auto gi = inverse(g);
    CHECK(compose(g, gi).is_identity());
    CHECK(compose(gi, g) == TreeAutomorphism::identity(d));
    CHECK(inverse(gi) == g);
    for (const auto& v : all_vertices(d, 3)) CHECK(treeverb::apply(gi, treeverb::apply(g, v)) == v);
  }
}

TEST_CASE("label and section walks") {
  const auto t3 = adding_machine(3);
  CHECK(label_at(t3, Vertex{}) == Permutation::full_cycle(3));
  CHECK(label_at(t3, Vertex{0}).is_identity());
  CHECK(section_at(t3, Vertex{2}) == t3);
  CHECK(section_at(t3, Vertex{0}).is_identity());
  CHECK(section_at(t3, Vertex{2, 2}) == t3);
}

TEST_CASE("sections assemble") {
  const auto t3 = adding_machine(3);
  const Permutation s = Permutation::full_cycle(3);
  const auto g = from_sections({t3, inverse(t3), TreeAutomorphism::identity(3)}, s);
  CHECK(g.root_label() == s);
  CHECK(section_at(g, Vertex{0}) == t3);
  CHECK(section_at(g, Vertex{1}) == inverse(t3));
  CHECK(section_at(g, Vertex{2}).is_identity());
  CHECK_THROWS_AS(from_sections({t3}, s), domain_error);
}

TEST_CASE("odometer power lands in the stabilizer") {
  const auto t3 = adding_machine(3);
  const auto cube = power(t3, 3);
  CHECK(in_stabilizer(cube, 1));
  CHECK_FALSE(in_stabilizer(cube, 2));
  for (uint8_t i = 0; i < 3; ++i) CHECK(section_at(cube, Vertex{i}) == t3);

  const auto t2 = adding_machine(2);
  CHECK(in_stabilizer(power(t2, 8), 3));
  CHECK_FALSE(in_stabilizer(power(t2, 8), 4));
  CHECK_FALSE(in_stabilizer(t2, 1));
}

TEST_CASE("powers agree across implementations") {
  Rng rng(44);
  for (int it = 0; it < 8; ++it) {
    const int d = 2 + it % 2;
    const auto g = random_machine(d, rng);
    auto acc = TreeAutomorphism::identity(d);
    for (int n = 1; n <= 6; ++n) {
      acc = compose(acc, g);
      CHECK(power(g, n) == acc);
      CHECK(power_closed_form(g, n) == acc);
    }
    CHECK(power(g, 0).is_identity());
    CHECK(power(g, -3) == inverse(power(g, 3)));
  }
  CHECK_THROWS_AS(power_closed_form(adding_machine(2), 0), domain_error);
}

TEST_CASE("conjugation and commutators match their composition chains") {
  Rng rng(45);
  for (int it = 0; it < 10; ++it) {
    const int d = 2 + it % 3;
    const auto g = random_machine(d, rng);
    const auto x = random_machine(d, rng);
    CHECK(conjugate(g, x) == conjugate_by_composition(g, x));
    CHECK(commutator(g, x) == commutator_by_composition(g, x));
    const auto r = random_permutation(d, rng);
    CHECK(conjugate_rooted(g, r) == conjugate(g, rooted(r)));
  }
}

TEST_CASE("equality is exact and matches truncations") {
  Rng rng(46);
  for (int it = 0; it < 10; ++it) {
    const int d = 2 + it % 2;
    const auto g = random_machine(d, rng);
    const auto same = compose(compose(g, adding_machine(d)), inverse(adding_machine(d)));
    CHECK(equals(g, same));
    CHECK(g == same);  // canonical forms are structurally equal
    for (int k = 1; k <= 4; ++k) CHECK(truncate(g, k) == truncate(same, k));

    const auto other = compose(g, rooted(Permutation::cycle(d, std::vector<int>{0, 1})));
    CHECK_FALSE(equals(g, other));
    CHECK(truncate(g, 1) != truncate(other, 1));
  }
}

TEST_CASE("canonicalization folds duplicate and unreachable states") {
  // padded description of the degree-3 odometer: two copies of the cycling
  // state, two copies of the identity, one unreachable extra
  using State = TreeAutomorphism::State;
  const Permutation s = Permutation::full_cycle(3);
  std::vector<State> states;
  states.push_back({s, {2, 3, 1}});                       // s0
  states.push_back({s, {3, 2, 0}});                       // s1, equivalent to s0
  states.push_back({Permutation(3), {2, 2, 2}});          // id copy a
  states.push_back({Permutation(3), {3, 3, 3}});          // id copy b
  states.push_back({Permutation::cycle(3, std::vector<int>{0, 1}), {4, 4, 4}});  // unreachable
  const auto g = TreeAutomorphism::from_states(3, states, 0);
  CHECK(g == adding_machine(3));
  CHECK(g.state_count() == 2);

  std::vector<State> bad;
  bad.push_back({s, {0, 0}});
  CHECK_THROWS_AS(TreeAutomorphism::from_states(3, bad, 0), domain_error);
  CHECK_THROWS_AS(TreeAutomorphism::from_states(3, {{s, {0, 0, 7}}}, 0), domain_error);
}

TEST_CASE("portrait truncation round trips") {
  Rng rng(47);
  for (int it = 0; it < 10; ++it) {
    const int d = 2 + it % 2;
    const Portrait p = random_portrait(d, 3, rng);
    const auto g = from_portrait(p);
    CHECK(truncate(g, 3) == p);
    CHECK(in_stabilizer(g, 3) == p.is_identity());
    for (const auto& v : all_vertices(d, 3))
      if (static_cast<int>(v.size()) == 3) CHECK(p.apply(v) == treeverb::apply(g, v));

    const auto m = random_machine(d, rng);
    const auto q = truncate(m, 3);
    // the lift agrees with m on the first three levels and is trivial below
    CHECK(truncate(from_portrait(q), 3) == q);
    CHECK(in_stabilizer(compose(inverse(from_portrait(q)), m), 3));
  }
}

TEST_CASE("portrait encoding round trips") {
  Rng rng(48);
  for (int it = 0; it < 10; ++it) {
    const Portrait p = random_portrait(3, 3, rng);
    CHECK(Portrait::decode(3, 3, p.encode()) == p);
  }
  CHECK(Portrait::identity(3, 2).size() == 4);
  CHECK(Portrait::vertex_count(3, 3) == 13);
  CHECK_THROWS_AS(Portrait::decode(3, 2, "xx"), domain_error);
}

TEST_CASE("portrait sections") {
  Rng rng(49);
  const Portrait p = random_portrait(3, 3, rng);
  const auto g = from_portrait(p);
  for (int i = 0; i < 3; ++i)
    CHECK(p.section(i) == truncate(section_at(g, Vertex{static_cast<uint8_t>(i)}), 2));
}

}  // TEST_SUITE
