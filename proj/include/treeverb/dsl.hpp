#pragma once

#include <string>

#include "treeverb/automorphism.hpp"
#include "treeverb/constructions.hpp"

namespace treeverb {

// Line-oriented automaton text:
//
//   # adding machine
//   degree 3
//   state t = (1, 1, t) [2 3 1]
//   root t
//
// One statedef per state: children in letter order ("1" is the identity
// automorphism), then the output permutation as a 1-based image list in
// brackets, or "id". "#" starts a comment. "degree" must precede the
// statedefs; "root" names the initial state (or "1" for the identity).
TreeAutomorphism parse_automaton(const std::string& text);
std::string serialize_automaton(const TreeAutomorphism& g);

// Spine files: "degree d", then "pre [perm]" lines, then "per [perm]" lines
// (at least one; pre lines must precede per lines).
SpineSpec parse_spine_spec(const std::string& text);
std::string serialize_spine_spec(const SpineSpec& spec);

}  // namespace treeverb
