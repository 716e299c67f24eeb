#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace treeverb {

// Permutation of {0, ..., d-1}, stored as its image array.
//
// Products compose left to right: (a * b)(i) = b(a(i)), i.e. a acts first.
// This matches the composition convention for tree automorphisms used
// throughout ((fg)(u) = g(f(u))), so root permutations multiply by plain *.
// All text I/O is 1-based; everything in memory is 0-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int degree);  // identity

  static Permutation from_images(std::vector<uint8_t> images);        // 0-based
  static Permutation from_one_based(const std::vector<int>& images);  // validates
  // Cycle on the given 0-based points, identity elsewhere.
  static Permutation cycle(int degree, std::span<const int> points);
  static Permutation full_cycle(int degree);  // (0 1 ... d-1), "(1 2 ... d)" 1-based

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[static_cast<size_t>(i)]; }
  const std::vector<uint8_t>& images() const { return img_; }

  Permutation operator*(const Permutation& rhs) const;  // this first, then rhs
  Permutation inverse() const;
  Permutation conjugated_by(const Permutation& x) const;  // x^{-1} * (*this) * x
  Permutation pow(long long n) const;

  bool is_identity() const;
  bool is_even() const { return sign_bit() == 0; }
  int sign_bit() const;       // 0 even, 1 odd
  bool is_full_cycle() const; // a single d-cycle
  long long order() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  // Lexicographic on image arrays; the canonical enumeration order.
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.img_ <=> b.img_;
  }

  std::string to_string() const;  // "id" or "[2 3 1]" (1-based images)
  size_t hash() const;

 private:
  std::vector<uint8_t> img_;
};

// All permutations of degree d in lexicographic image order (cached per degree,
// thread-safe). d <= 9.
const std::vector<Permutation>& all_permutations(int degree);
// The d-cycles among them, same order.
const std::vector<Permutation>& all_full_cycles(int degree);

struct PermutationHash {
  size_t operator()(const Permutation& p) const { return p.hash(); }
};

}  // namespace treeverb
