// Acceptance battery: one line per criterion, exit 0 iff all pass.

#include <iostream>

#include "treeverb/selftest.hpp"

int main() { return treeverb::run_selftest(std::cout) ? 0 : 1; }
