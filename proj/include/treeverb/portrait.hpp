#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treeverb/permutation.hpp"

namespace treeverb {

// Depth-n truncation of a tree automorphism: one permutation label per vertex
// of depth < n, stored level-major in lexicographic vertex order. A portrait
// of depth n has (d^n - 1)/(d - 1) labels and represents an element of the
// finite quotient by the level-n stabilizer.
class Portrait {
 public:
  Portrait() = default;
  Portrait(int degree, int depth, std::vector<Permutation> labels);
  static Portrait identity(int degree, int depth);

  int degree() const { return degree_; }
  int depth() const { return depth_; }
  const std::vector<Permutation>& labels() const { return labels_; }
  const Permutation& label(size_t idx) const { return labels_[idx]; }
  const Permutation& root_label() const { return labels_[0]; }
  size_t size() const { return labels_.size(); }

  // Number of vertices of depth < depth (= label count).
  static size_t vertex_count(int degree, int depth);
  static size_t level_offset(int degree, int level);  // index of first level vertex
  // Index of the child (under letter) of the vertex at index idx on level.
  static size_t child_index(int degree, int level, size_t idx, int letter);

  // Image of a full-depth vertex (depth() letters) under the truncated action.
  std::vector<uint8_t> apply(const std::vector<uint8_t>& v) const;
  // Sub-portrait of depth depth()-1 below child i.
  Portrait section(int i) const;

  bool is_identity() const;

  // Byte encoding (concatenated image arrays); canonical sort/set key.
  std::string encode() const;
  static Portrait decode(int degree, int depth, const std::string& bytes);

  friend bool operator==(const Portrait&, const Portrait&) = default;

 private:
  int degree_ = 0;
  int depth_ = 0;
  std::vector<Permutation> labels_;
};

}  // namespace treeverb
