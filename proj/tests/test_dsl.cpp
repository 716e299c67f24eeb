#include <string>

#include "doctest.h"
#include "treeverb/constructions.hpp"
#include "treeverb/dsl.hpp"
#include "treeverb/errors.hpp"
#include "treeverb/random.hpp"

using namespace treeverb;

TEST_SUITE("dsl") {

TEST_CASE("statedef text parses") {
  const std::string text =
      "# degree-3 odometer\n"
      "degree 3\n"
      "state t = (1, 1, t) [2 3 1]\n"
      "root t\n";
  CHECK(parse_automaton(text) == adding_machine(3));

  CHECK(parse_automaton("degree 4\nroot 1\n").is_identity());
  CHECK(parse_automaton("degree 2\nstate a = (1, a) id\nroot a\n").is_identity());

  const std::string two =
      "degree 3\n"
      "state g = (t, s, 1) id\n"
      "state t = (1, 1, t) [2 3 1]\n"
      "state s = (s, 1, 1) [3 1 2]\n"
      "root g\n";
  const auto t3 = adding_machine(3);
  CHECK(parse_automaton(two) ==
        from_sections({t3, inverse(t3), TreeAutomorphism::identity(3)}, Permutation(3)));
}

TEST_CASE("serialization round trips") {
  Rng rng(401);
  for (int it = 0; it < 40; ++it) {
    const int d = 2 + it % 4;
    const auto g = random_machine(d, rng);
    CHECK(parse_automaton(serialize_automaton(g)) == g);
  }
  const auto id2 = TreeAutomorphism::identity(2);
  CHECK(parse_automaton(serialize_automaton(id2)) == id2);
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_automaton(text);
    } catch (const parse_error& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("state a = (1, 1) id\n") == 1);  // degree must come first
  CHECK(line_of("degree 3\nstate a = (1, 1) id\nroot a\n") == 2);  // arity
  CHECK(line_of("degree 2\nstate a = (1, 1) id\nstate a = (1, 1) id\nroot a\n") == 3);
  CHECK(line_of("degree 2\nstate a = (1, b) id\nroot a\n") == 2);  // undefined child
  CHECK(line_of("degree 2\nstate a = (1, 1) [1 1]\nroot a\n") == 2);
  CHECK(line_of("degree 2\nstate a = (1, 1) id junk\nroot a\n") == 2);
  CHECK(line_of("degree 2\nwibble\n") == 2);
  CHECK(line_of("degree 66\n") == 1);
  CHECK_THROWS_AS(parse_automaton("degree 2\nstate a = (1, 1) id\n"), parse_error);  // no root
  CHECK_THROWS_AS(parse_automaton("degree 2\nroot b\n"), parse_error);
  CHECK_THROWS_AS(parse_automaton(""), parse_error);
}

TEST_CASE("spine spec text round trips") {
  Rng rng(402);
  for (int it = 0; it < 15; ++it) {
    SpineSpec spec;
    spec.degree = it % 2 ? 5 : 3;
    for (int i = 0; i < it % 3; ++i) spec.pre.push_back(random_full_cycle(spec.degree, rng));
    for (int i = 0; i < 1 + it % 2; ++i) spec.per.push_back(random_full_cycle(spec.degree, rng));
    const auto parsed = parse_spine_spec(serialize_spine_spec(spec));
    CHECK(parsed.degree == spec.degree);
    CHECK(parsed.pre == spec.pre);
    CHECK(parsed.per == spec.per);
  }

  const auto spec = parse_spine_spec("degree 3\npre [2 3 1]\nper [3 1 2]\n");
  CHECK(spec.pre.size() == 1);
  CHECK(spec.per.size() == 1);
  CHECK(spec.per[0] == Permutation::full_cycle(3).inverse());

  CHECK_THROWS_AS(parse_spine_spec("degree 3\nper [2 3 1]\npre [3 1 2]\n"), parse_error);
  CHECK_THROWS_AS(parse_spine_spec("degree 3\npre [2 3 1]\n"), parse_error);
  CHECK_THROWS_AS(parse_spine_spec("degree 3\nper [2 1 3]\n"), parse_error);  // not a 3-cycle
  CHECK_THROWS_AS(parse_spine_spec("per [2 3 1]\n"), parse_error);
}

}  // TEST_SUITE
