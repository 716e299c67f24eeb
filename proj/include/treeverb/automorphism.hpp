#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treeverb/permutation.hpp"

namespace treeverb {

class Portrait;

// Vertex of the d-adic tree: a word over {0, ..., d-1}, root = empty word.
// Text form is 1-based, comma separated ("3,1").
using Vertex = std::vector<uint8_t>;

Vertex parse_vertex(const std::string& text, int degree);
std::string format_vertex(const Vertex& v);

// Finite-state automorphism of the d-adic rooted tree.
//
// A state q carries an output permutation label(q) acting on the d children
// and, for each child letter i, the state next(q, i) governing the subtree
// below child i. The element g = (g_1, ..., g_d)sigma maps i.w to sigma(i).g_i(w);
// sigma is the root state's label and g_i the state next(root, i).
//
// Instances are always in canonical form: reachable states only, minimized by
// bisimulation, numbered in breadth-first order from the root (root = state 0,
// children scanned in letter order). Structural equality on canonical machines
// is semantic equality, and there is exactly one state per distinct section.
class TreeAutomorphism {
 public:
  struct State {
    Permutation label;
    std::vector<uint32_t> next;  // indexed by input letter
    friend bool operator==(const State&, const State&) = default;
  };

  TreeAutomorphism() = default;

  static TreeAutomorphism identity(int degree);
  static TreeAutomorphism rooted(const Permutation& label);
  static TreeAutomorphism from_sections(const std::vector<TreeAutomorphism>& sections,
                                        const Permutation& root_label);
  // Validates a raw machine (child arity, state references), prunes unreachable
  // states and canonicalizes. Set canonicalize = false only for machines that
  // are already canonical (skips the renumbering pass).
  static TreeAutomorphism from_states(int degree, std::vector<State> states, uint32_t root,
                                      bool canonicalize = true);

  int degree() const { return degree_; }
  size_t state_count() const { return states_.size(); }
  const State& state(uint32_t q) const { return states_[q]; }
  uint32_t root() const { return 0; }
  const Permutation& root_label() const { return states_[0].label; }

  bool is_identity() const;

  friend bool operator==(const TreeAutomorphism&, const TreeAutomorphism&) = default;

 private:
  int degree_ = 0;
  std::vector<State> states_;

  friend TreeAutomorphism canonical_from_raw(int, std::vector<State>&&, uint32_t, bool);
};

// --- action ---------------------------------------------------------------

inline TreeAutomorphism rooted(const Permutation& label) { return TreeAutomorphism::rooted(label); }
inline TreeAutomorphism from_sections(const std::vector<TreeAutomorphism>& sections,
                                      const Permutation& root_label) {
  return TreeAutomorphism::from_sections(sections, root_label);
}

Vertex apply(const TreeAutomorphism& g, const Vertex& v);
// Label / section of g at a vertex: walk the transitions along v's letters.
Permutation label_at(const TreeAutomorphism& g, const Vertex& v);
TreeAutomorphism section_at(const TreeAutomorphism& g, const Vertex& v);

// --- group operations ------------------------------------------------------
// Each builds a product machine over state tuples and canonicalizes. The
// section/letter flow for a product a1 a2 ... ak (left factor acts first) is:
// feed letter j into slot m, the slot contributes its section at j' and the
// letter leaves as label_m(j'), where j' = j for a forward slot and
// j' = label_m^{-1}(j) for an inverted slot (whose section is then inverted).

TreeAutomorphism compose(const TreeAutomorphism& g, const TreeAutomorphism& h,
                         bool canonicalize = true);
TreeAutomorphism inverse(const TreeAutomorphism& g);
// Conjugate g^x = x^{-1} g x as one three-slot machine.
TreeAutomorphism conjugate(const TreeAutomorphism& g, const TreeAutomorphism& x);
// Same value via nested compose/inverse calls; kept as an independent code
// path for consistency testing.
TreeAutomorphism conjugate_by_composition(const TreeAutomorphism& g, const TreeAutomorphism& x);
// Conjugation by a rooted permutation: sections permute, root label conjugates.
TreeAutomorphism conjugate_rooted(const TreeAutomorphism& g, const Permutation& x);
// Commutator [g, h] = g^{-1} h^{-1} g h as one four-slot machine.
TreeAutomorphism commutator(const TreeAutomorphism& g, const TreeAutomorphism& h);
TreeAutomorphism commutator_by_composition(const TreeAutomorphism& g, const TreeAutomorphism& h);
// Square-and-multiply; negative n through the inverse.
TreeAutomorphism power(const TreeAutomorphism& g, long long n);
// g^n (n >= 1) as one flat n-slot product machine, realizing the closed form
// (g^n)_i = g_i g_{sigma(i)} ... g_{sigma^{n-1}(i)} with root sigma^n.
TreeAutomorphism power_closed_form(const TreeAutomorphism& g, int n);

// --- predicates -------------------------------------------------------------

// Semantic equality; equivalent to structural equality of canonical forms and
// to "every reachable state of compose(g, inverse(h)) has identity label",
// checked here as one joint breadth-first scan over state pairs.
bool equals(const TreeAutomorphism& g, const TreeAutomorphism& h);
// g fixes every vertex up to depth n (g in St(n)).
bool in_stabilizer(const TreeAutomorphism& g, int n);
// The orbit of each level-n vertex (n <= max_level) under g is the whole level.
bool is_level_transitive(const TreeAutomorphism& g, int max_level);

// --- portraits ---------------------------------------------------------------

Portrait truncate(const TreeAutomorphism& g, int depth);
TreeAutomorphism from_portrait(const Portrait& p);

}  // namespace treeverb
