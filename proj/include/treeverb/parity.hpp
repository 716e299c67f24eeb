#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treeverb/automorphism.hpp"

namespace treeverb {

// Eventually periodic bit sequence (e_0, e_1, ...), held in canonical form:
// the period is primitive and the preperiod is as short as possible. Text
// form "pre=10;per=01" (either bit list may be empty only for the preperiod).
class ParitySequence {
 public:
  ParitySequence() : per_{0} {}
  ParitySequence(std::vector<uint8_t> pre, std::vector<uint8_t> per);
  static ParitySequence zero() { return ParitySequence(); }
  static ParitySequence parse(const std::string& text);

  const std::vector<uint8_t>& preperiod() const { return pre_; }
  const std::vector<uint8_t>& period() const { return per_; }
  int bit(size_t n) const;
  bool is_zero() const;
  std::string to_string() const;

  friend bool operator==(const ParitySequence&, const ParitySequence&) = default;

 private:
  std::vector<uint8_t> pre_, per_;
};

// e_n(g): parity of the number of odd labels on level n (0 even, 1 odd).
int epsilon(const TreeAutomorphism& g, int n);

// The whole sequence (e_0, e_1, ...), computed from the GF(2) dynamics of
// state multiplicities per level; the level-to-level map is linear, so the
// multiplicity vector orbit is detected exactly and folded into (pre, per).
ParitySequence parity_sequence(const TreeAutomorphism& g);

// For every state q: whether the element with initial state q has all-zero
// parity sequence. Uses |Q| rounds of the backward recurrence
// e_n(q) = sum_i e_{n-1}(next(q, i)); by Cayley-Hamilton, vanishing for
// n < |Q| forces vanishing for all n. Total and polynomial in |Q|.
std::vector<bool> kernel_states(const TreeAutomorphism& g);

// g lies in the kernel of the parity map (= the derived subgroup of the full
// automorphism group); equivalent to parity_sequence(g).is_zero().
bool in_ker_parity(const TreeAutomorphism& g);

// Exponent of the alternating group Alt(d), d >= 3: lcm of lcm(parts) over
// partitions of d with an even number of even parts. The 2-part is
// cross-checked against the closed form for odd d (2^(k-1) when d = 2^k + 1,
// else 2^k with 2^k the largest power of two below d).
uint64_t alt_exponent(int d);

// Membership in the verbal chain M_0 > M_1 > M_2 > ...: M_0 is everything,
// M_1 the parity kernel, M_2 = M_1 restricted to the first level stabilizer,
// and M_{k+2} consists of first-level stabilizers all of whose sections lie
// in M_k. Decided per state, memoized, so it is total on finite-state input.
bool in_chain(const TreeAutomorphism& g, int k);

// Largest k with g in M_k, or nullopt for the identity (which lies in all).
std::optional<int> classify_chain(const TreeAutomorphism& g);

}  // namespace treeverb
