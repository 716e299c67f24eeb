#include "treeverb/selftest.hpp"

#include <array>
#include <chrono>
#include <ostream>
#include <sstream>

#include "treeverb/constructions.hpp"
#include "treeverb/parity.hpp"
#include "treeverb/portrait.hpp"
#include "treeverb/quotient.hpp"
#include "treeverb/random.hpp"

namespace treeverb {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool congruent(const TreeAutomorphism& g, const TreeAutomorphism& h, int depth) {
  return truncate(g, depth) == truncate(h, depth);
}

CriterionResult chain_identities() {
  CriterionResult r{"quotient-chain-identities", false, ""};
  const auto start = Clock::now();
  const ChainReport main_report = verify_chain(3, 2);
  bool ok = main_report.all_pass() && main_report.group_order == 1296;
  const size_t expected[4][2] = {{324, 324}, {324, 324}, {108, 108}, {27, 27}};
  ok = ok && main_report.checks.size() == 4;
  for (size_t i = 0; ok && i < 4; ++i)
    ok = main_report.checks[i].lhs == expected[i][0] && main_report.checks[i].rhs == expected[i][1];
  ok = ok && verify_chain(3, 1).all_pass() && verify_chain(5, 1).all_pass();
  const double dt = seconds_since(start);
  ok = ok && dt < 10.0;
  std::ostringstream os;
  os << "d=3 n=2 order=" << main_report.group_order;
  for (const auto& c : main_report.checks) os << ' ' << c.lhs << '/' << c.rhs;
  os << ", d=3 n=1 and d=5 n=1 pass, " << dt << "s";
  r.pass = ok;
  r.detail = os.str();
  return r;
}

CriterionResult alternating_exponents() {
  CriterionResult r{"alternating-exponents", false, ""};
  const auto start = Clock::now();
  bool ok = alt_exponent(3) == 3 && alt_exponent(5) == 30 && alt_exponent(7) == 420;
  for (int d = 3; ok && d <= 15; d += 2) {
    // independent restatement of the expected 2-adic valuation
    int k = 0;
    while ((1 << (k + 1)) < d) ++k;
    const int expected = (d == (1 << k) + 1) ? k - 1 : k;
    int v = 0;
    for (uint64_t e = alt_exponent(d); e % 2 == 0; e /= 2) ++v;
    ok = v == expected;
  }
  const double dt = seconds_since(start);
  ok = ok && dt < 1.0;
  std::ostringstream os;
  os << "e(3)=" << alt_exponent(3) << " e(5)=" << alt_exponent(5) << " e(7)=" << alt_exponent(7)
     << ", 2-adic valuations agree for odd d<=15, " << dt << "s";
  r.pass = ok;
  r.detail = os.str();
  return r;
}

CriterionResult transitive_pair_decompositions() {
  CriterionResult r{"transitive-pair-decompositions", false, ""};
  const auto start = Clock::now();
  Rng rng(0x5eed0003);
  bool ok = true;
  int checked = 0;
  auto run = [&](int degree, int count, int depth) {
    for (int k = 0; ok && k < count; ++k) {
      const TreeAutomorphism g = from_portrait(random_kernel_portrait(degree, depth, rng));
      const DecompositionWitness w = decompose_transitive_pair(g, depth);
      ok = ok && w.depth == depth;
      ok = ok && congruent(compose(w.u, conjugate(w.u, w.y)), g, depth);
      const SpineSpec spec = spine_spec_of(w.u);  // throws if not spine form
      for (const auto& p : spec.pre) ok = ok && p.is_full_cycle();
      for (const auto& p : spec.per) ok = ok && p.is_full_cycle();
      ok = ok && is_level_transitive(w.u, 4);
      ++checked;
    }
  };
  run(3, 100, 4);
  run(5, 25, 4);
  const double dt = seconds_since(start);
  ok = ok && dt < 30.0;
  std::ostringstream os;
  os << checked << " witnesses at depth 4 (100 at d=3, 25 at d=5), " << dt << "s";
  r.pass = ok;
  r.detail = os.str();
  return r;
}

CriterionResult commutator_forms() {
  CriterionResult r{"commutator-forms", false, ""};
  Rng rng(0x5eed0004);
  bool ok = true;
  const TreeAutomorphism t3 = adding_machine(3);
  for (int k = 0; ok && k < 50; ++k) {
    const TreeAutomorphism g = from_portrait(random_kernel_portrait(3, 3, rng));
    const CommutatorForm form = commutator_form(g, 3);
    ok = congruent(commutator(conjugate(t3, form.a), form.b), g, 3);
  }
  const TreeAutomorphism t2 = adding_machine(2);
  for (int k = 0; ok && k < 50; ++k) {
    const TreeAutomorphism g = from_portrait(random_kernel_portrait(2, 4, rng));
    const TreeAutomorphism h = binary_commutator_form(g, 4);
    ok = congruent(commutator(inverse(t2), h), g, 4);
  }
  r.pass = ok;
  r.detail = "50 targets mod level-3 stabilizer at d=3, 50 mod level-4 at d=2";
  return r;
}

CriterionResult odometer_conjugators() {
  CriterionResult r{"odometer-conjugators", false, ""};
  Rng rng(0x5eed0005);
  bool ok = true;
  for (int k = 0; ok && k < 20; ++k) {
    const int degree = k < 10 ? 3 : 5;
    SpineSpec spec;
    spec.degree = degree;
    const int n_pre = static_cast<int>(rng() % 3);
    const int n_per = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < n_pre; ++j) spec.pre.push_back(random_full_cycle(degree, rng));
    for (int j = 0; j < n_per; ++j) spec.per.push_back(random_full_cycle(degree, rng));
    const TreeAutomorphism spine = spine_automaton(spec);
    const TreeAutomorphism x = conjugator_to_odometer(spec);
    ok = equals(conjugate(spine, x), adding_machine(degree)) && is_level_transitive(spine, 4);
  }
  r.pass = ok;
  r.detail = "20 spines (10 at d=3, 10 at d=5): exact conjugation to the odometer, transitive";
  return r;
}

CriterionResult order_two_representatives() {
  CriterionResult r{"order-two-representatives", false, ""};
  Rng rng(0x5eed0006);
  std::vector<ParitySequence> targets;
  targets.emplace_back(std::vector<uint8_t>{1}, std::vector<uint8_t>{0});
  targets.emplace_back(std::vector<uint8_t>{}, std::vector<uint8_t>{1});
  for (int k = 0; k < 8; ++k) {
    std::vector<uint8_t> pre(rng() % 4), per(1 + rng() % 4);
    for (auto& b : pre) b = rng() % 2;
    for (auto& b : per) b = rng() % 2;
    targets.emplace_back(std::move(pre), std::move(per));
  }
  bool ok = true;
  for (const auto& target : targets) {
    const TreeAutomorphism a = order_two_rep(target, 3);
    ok = ok && equals(compose(a, a), TreeAutomorphism::identity(3));
    ok = ok && parity_sequence(a) == target;
  }
  r.pass = ok;
  r.detail = "10 parity targets at d=3: involutions with prescribed parity sequence";
  return r;
}

CriterionResult parity_properties() {
  CriterionResult r{"parity-homomorphism-properties", false, ""};
  Rng rng(0x5eed0007);
  const TreeAutomorphism a = order_two_rep(ParitySequence({1}, {0}), 3);
  const std::vector<Endomorphism> endos = {
      Endomorphism::shift(), Endomorphism::level_floor(), Endomorphism::indicator(a, 0),
      Endomorphism::indicator(a, 1), Endomorphism::lifted(Endomorphism::level_floor())};
  bool ok = true;
  for (int k = 0; ok && k < 200; ++k) {
    const TreeAutomorphism g = k % 4 == 0 ? from_portrait(random_kernel_portrait(3, 3, rng))
                                          : random_machine(3, rng);
    const TreeAutomorphism h = random_machine(3, rng);
    const TreeAutomorphism gh = compose(g, h);
    for (int n = 0; ok && n <= 8; ++n)
      ok = epsilon(gh, n) == (epsilon(g, n) ^ epsilon(h, n));
    ok = ok && parity_sequence(inverse(g)) == parity_sequence(g);
    ok = ok && parity_sequence(conjugate(g, h)) == parity_sequence(g);
    for (int j = 1; ok && j <= 6; ++j)
      if (in_chain(g, j + 1)) ok = in_chain(g, j);
    for (const auto& phi : endos) {
      if (!ok) break;
      ok = equals(phi(gh), compose(phi(g), phi(h)));
    }
    // chain membership is preserved by the registered endomorphisms
    for (int j = 1; ok && j <= 3; ++j)
      if (in_chain(g, j))
        ok = in_chain(shift_endo(g), j) && in_chain(level_floor(g), j) &&
             in_chain(lift_endo(Endomorphism::identity_map(), g), j);
  }
  r.pass = ok;
  r.detail = "200 seeded pairs at d=3: level parity additivity (n<=8), inverse/conjugation "
             "invariance, chain monotonicity, endomorphism checks";
  return r;
}

CriterionResult formula_consistency() {
  CriterionResult r{"section-formula-consistency", false, ""};
  Rng rng(0x5eed0008);
  bool ok = true;
  for (int k = 0; ok && k < 200; ++k) {
    const TreeAutomorphism g = random_machine(3, rng);
    const TreeAutomorphism h = random_machine(3, rng);
    ok = equals(conjugate(g, h), conjugate_by_composition(g, h));
    ok = ok && equals(commutator(g, h), commutator_by_composition(g, h));
    const int n = 1 + static_cast<int>(rng() % 8);
    ok = ok && equals(power_closed_form(g, n), power(g, n));
  }
  r.pass = ok;
  r.detail = "200 seeded inputs at d=3: tuple-machine conjugate/commutator/power equal the "
             "compose chains exactly";
  return r;
}

CriterionResult classification_regressions() {
  CriterionResult r{"classification-regressions", false, ""};
  const TreeAutomorphism t = adding_machine(3);
  const auto transposition = classify_chain(TreeAutomorphism::rooted(
      Permutation::cycle(3, std::array{0, 1})));
  const auto three_cycle = classify_chain(TreeAutomorphism::rooted(Permutation::full_cycle(3)));
  const auto stab = classify_chain(TreeAutomorphism::from_sections(
      {t, inverse(t), TreeAutomorphism::identity(3)}, Permutation(3)));
  const auto trivial = classify_chain(TreeAutomorphism::identity(3));
  const bool ok = transposition == 0 && three_cycle == 1 && stab == 3 && !trivial.has_value();
  r.pass = ok;
  r.detail = "rooted transposition -> 0, rooted 3-cycle -> 1, (t, t^{-1}, 1) -> 3, identity -> "
             "trivial";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_selftest_collect() {
  std::vector<CriterionResult> results;
  results.push_back(chain_identities());
  results.push_back(alternating_exponents());
  results.push_back(transitive_pair_decompositions());
  results.push_back(commutator_forms());
  results.push_back(odometer_conjugators());
  results.push_back(order_two_representatives());
  results.push_back(parity_properties());
  results.push_back(formula_consistency());
  results.push_back(classification_regressions());
  return results;
}

bool run_selftest(std::ostream& out) {
  bool all = true;
  const auto results = run_selftest_collect();
  for (size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    out << (r.pass ? "PASS" : "FAIL") << ' ' << (i + 1) << ' ' << r.name << " (" << r.detail
        << ")\n";
    all = all && r.pass;
  }
  return all;
}

}  // namespace treeverb
