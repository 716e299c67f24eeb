#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "treeverb/automorphism.hpp"
#include "treeverb/parity.hpp"

namespace treeverb {

// Eventually periodic list of child-d labels along the rightmost path: the
// element (1, ..., 1, next)sigma_k at each spine vertex. All labels must be
// single d-cycles.
struct SpineSpec {
  int degree = 0;
  std::vector<Permutation> pre;
  std::vector<Permutation> per;  // nonempty
};

// The odometer t = (1, ..., 1, t) (1 2 ... d).
TreeAutomorphism adding_machine(int degree);

// Automaton with label seq[k] at spine depth k (identity off the spine).
TreeAutomorphism spine_automaton(const SpineSpec& spec);
// Recover the spec from a spine-form machine; domain_error if the machine is
// not in spine form (rightmost-path states with d-cycle labels, all other
// children leading to the identity).
SpineSpec spine_spec_of(const TreeAutomorphism& g);

// x with conjugate(spine, x) exactly equal to the odometer: level k uses the
// unique intertwiner alpha_k fixing letter d with sigma_k^alpha_k = (1 2 ... d),
// and all children of each x-state continue with the next level's conjugator.
TreeAutomorphism conjugator_to_odometer(const SpineSpec& spec);

// Involution (or identity) with the prescribed parity sequence: at depth k the
// rightmost-path state carries (1 2)^{bit k} and continues right. Needs d >= 3
// so that the transposition fixes letter d.
TreeAutomorphism order_two_rep(const ParitySequence& target, int degree);

// Factor an even permutation as a product of two conjugate d-cycles:
// alpha * alpha.conjugated_by(beta) == sigma. alpha is the lexicographically
// first d-cycle whose complement alpha^{-1} * sigma is again a d-cycle; beta
// is the intertwiner between the two cycles anchored at letter 1. Odd degree
// only; the first call per degree d <= 9 checks every even permutation
// factors this way.
std::pair<Permutation, Permutation> two_dcycle_factorization(const Permutation& sigma);

// g = u * conjugate(u, y) mod St(depth) with u a spine automaton whose labels
// are all d-cycles (hence level transitive). Requires odd degree >= 3 and g in
// the parity kernel. Validated by portrait comparison before returning.
struct DecompositionWitness {
  TreeAutomorphism u, y;
  int depth = 0;
  TreeAutomorphism target;
};
DecompositionWitness decompose_transitive_pair(const TreeAutomorphism& g, int depth);

// x with conjugate(g, x) == h mod St(depth), found by backtracking over root
// intertwiners (lexicographic image order, first hit wins) and recursing into
// the cycle-product constraints. domain_error if no conjugator exists at this
// depth.
TreeAutomorphism solve_conjugacy(const TreeAutomorphism& g, const TreeAutomorphism& h, int depth);

// g = [conjugate(t, a), b] mod St(depth) for the odometer t; odd degree.
struct CommutatorForm {
  TreeAutomorphism a, b;
  int depth = 0;
};
CommutatorForm commutator_form(const TreeAutomorphism& g, int depth);

// Binary case: h with g = [inverse(t), h] mod St(depth), degree 2 only.
TreeAutomorphism binary_commutator_form(const TreeAutomorphism& g, int depth);

// Registered endomorphisms of the automorphism group, usable as test subjects
// for full invariance of the chain subgroups.
class Endomorphism {
 public:
  static Endomorphism identity_map();
  // Conjugation by the rooted cycle (1 2 ... d)^{-1}: sections shift one
  // place (section i picks up the old section i+1, wrapping), the root label
  // is conjugated accordingly.
  static Endomorphism shift();
  // g -> rooted(root label of g).
  static Endomorphism level_floor();
  // g -> identity if e_level(g) = 0, else the fixed involution a.
  static Endomorphism indicator(const TreeAutomorphism& involution, int level);
  // phi-bar: apply the inner map to every section, keep the root label.
  static Endomorphism lifted(Endomorphism inner);

  TreeAutomorphism operator()(const TreeAutomorphism& g) const;
  const std::string& name() const { return name_; }

 private:
  Endomorphism() = default;
  enum class Kind { kIdentity, kShift, kLevelFloor, kIndicator, kLifted };
  Kind kind_ = Kind::kIdentity;
  std::string name_;
  TreeAutomorphism involution_;
  int level_ = 0;
  std::shared_ptr<Endomorphism> inner_;
};

TreeAutomorphism shift_endo(const TreeAutomorphism& g);
TreeAutomorphism level_floor(const TreeAutomorphism& g);
TreeAutomorphism lift_endo(const Endomorphism& inner, const TreeAutomorphism& g);

// For h in the second chain subgroup (first-level stabilizer with trivial
// total section parity): d factors whose product is exactly h, the j-th
// supported on children {j, j+1} as (prefix_j, prefix_j^{-1}) and the last
// one carrying the full product (in the parity kernel) on the last child.
std::vector<TreeAutomorphism> split_factorization(const TreeAutomorphism& h, int depth);

// For g in the first level stabilizer and signs in {+1, -1}^d: a conjugate of
// g (by a first-level-stabilizer element built from per-child conjugators)
// whose i-th section is congruent to section i of g raised to signs[i]
// mod St(depth - 1).
TreeAutomorphism signed_section_conjugate(const TreeAutomorphism& g,
                                          const std::vector<int>& signs, int depth);

}  // namespace treeverb
