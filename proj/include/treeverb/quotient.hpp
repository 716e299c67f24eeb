#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treeverb/automorphism.hpp"
#include "treeverb/portrait.hpp"

namespace treeverb {

// Arithmetic in the finite quotient of the automorphism group by the level-n
// stabilizer: elements are depth-n portraits, the group is the n-fold
// iterated wreath product of Sym(d), of order (d!)^((d^n - 1)/(d - 1)).

inline Portrait project(const TreeAutomorphism& g, int n) { return truncate(g, n); }

// (ab)_(u) = a_(u) * b_(a(u)) vertex-wise.
Portrait q_op(const Portrait& a, const Portrait& b);
// (a^{-1})_(a(u)) = a_(u)^{-1}.
Portrait q_inv(const Portrait& a);
Portrait q_pow(const Portrait& a, long long m);

// Default dense-enumeration limit: TREEVERB_LIMIT from the environment, else
// 10^7 elements. Functions taking a limit treat 0 as "use the default".
size_t enumeration_limit(size_t requested = 0);

// All elements of the quotient in deterministic (label-lexicographic) order;
// domain_error if the group order exceeds the limit.
std::vector<Portrait> enumerate_group(int degree, int depth, size_t limit = 0);

// Subgroup generated by the seeds (Cayley-graph closure from the identity),
// returned sorted by encoding. Deterministic and idempotent.
std::vector<Portrait> closure(const std::vector<Portrait>& seeds, size_t limit = 0);

// Values of a word on a ground set: squares x^2, fixed powers x^m, or
// commutators [x, y] over all ordered pairs. Result is deduplicated + sorted.
struct Word {
  enum class Kind { kSquare, kPower, kCommutator };
  Kind kind = Kind::kSquare;
  long long exponent = 2;  // used by kPower
  static Word square() { return {Kind::kSquare, 2}; }
  static Word power(long long m) { return {Kind::kPower, m}; }
  static Word commutator() { return {Kind::kCommutator, 0}; }
};
std::vector<Portrait> word_values(const std::vector<Portrait>& ground, const Word& word,
                                  size_t limit = 0);

// parity of level j of the truncated element (j < depth)
int epsilon_level(const Portrait& p, int j);

// Projection of the verbal chain: k = 1 means every level parity vanishes;
// k = 2 adds a trivial root label; k >= 3 means trivial root label and every
// section in the (k-2)-nd set one level down.
bool in_chain_set(const Portrait& p, int k);
std::vector<Portrait> chain_member_set(int degree, int depth, int k, size_t limit = 0);

// The four generation identities checked inside the quotient: squares and
// commutators generate the k=1 set, alternating-exponent powers of it
// generate the k=2 set, squares of the k=2 set generate the k=3 set.
struct ChainCheck {
  std::string name;
  size_t lhs = 0, rhs = 0;
  bool pass = false;
};
struct ChainReport {
  int degree = 0, depth = 0;
  size_t group_order = 0;
  std::vector<ChainCheck> checks;
  bool all_pass() const;
  std::string to_string() const;  // one "CHECK ..." line per check
};
ChainReport verify_chain(int degree, int depth, size_t limit = 0);

}  // namespace treeverb
