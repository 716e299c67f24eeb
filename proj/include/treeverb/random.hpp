#pragma once

#include <random>

#include "treeverb/automorphism.hpp"
#include "treeverb/portrait.hpp"

namespace treeverb {

using Rng = std::mt19937_64;

Permutation random_permutation(int degree, Rng& rng);
Permutation random_even_permutation(int degree, Rng& rng);
Permutation random_full_cycle(int degree, Rng& rng);

Portrait random_portrait(int degree, int depth, Rng& rng);
// every level carries an even number of odd labels (parity kernel member)
Portrait random_kernel_portrait(int degree, int depth, Rng& rng);
// identity root label, otherwise unconstrained
Portrait random_stabilizer_portrait(int degree, int depth, Rng& rng);
// identity root label and vanishing level parities
Portrait random_stabilizer_kernel_portrait(int degree, int depth, Rng& rng);

// Small machine mixing finitely supported portraits with genuinely recurrent
// pieces (odometer, spines) through products and rooted conjugates.
TreeAutomorphism random_machine(int degree, Rng& rng);

}  // namespace treeverb
