#include "treeverb/portrait.hpp"

#include "treeverb/errors.hpp"

namespace treeverb {

Portrait::Portrait(int degree, int depth, std::vector<Permutation> labels)
    : degree_(degree), depth_(depth), labels_(std::move(labels)) {
  if (degree < 2 || degree > 64) throw domain_error("tree degree must be in 2..64");
  if (depth < 0) throw domain_error("portrait depth must be >= 0");
  if (labels_.size() != vertex_count(degree, depth))
    throw domain_error("portrait label count does not match depth");
  for (const auto& p : labels_)
    if (p.degree() != degree) throw domain_error("portrait label degree mismatch");
}

Portrait Portrait::identity(int degree, int depth) {
  return Portrait(degree, depth,
                  std::vector<Permutation>(vertex_count(degree, depth), Permutation(degree)));
}

size_t Portrait::vertex_count(int degree, int depth) {
  size_t total = 0, level = 1;
  for (int ell = 0; ell < depth; ++ell) {
    if (level > (size_t{1} << 48)) throw domain_error("portrait too large");
    total += level;
    level *= static_cast<size_t>(degree);
  }
  return total;
}

size_t Portrait::level_offset(int degree, int level) { return vertex_count(degree, level); }

size_t Portrait::child_index(int degree, int level, size_t idx, int letter) {
  const size_t pos = idx - level_offset(degree, level);
  return level_offset(degree, level + 1) + pos * static_cast<size_t>(degree) +
         static_cast<size_t>(letter);
}

std::vector<uint8_t> Portrait::apply(const std::vector<uint8_t>& v) const {
  if (static_cast<int>(v.size()) != depth_)
    throw domain_error("portrait acts on vertices of exactly its depth");
  std::vector<uint8_t> out;
  out.reserve(v.size());
  size_t idx = 0;
  for (int ell = 0; ell < depth_; ++ell) {
    const uint8_t letter = v[static_cast<size_t>(ell)];
    if (letter >= degree_) throw domain_error("vertex letter outside alphabet");
    out.push_back(static_cast<uint8_t>(labels_[idx](letter)));
    if (ell + 1 < depth_) idx = child_index(degree_, ell, idx, letter);
  }
  return out;
}

Portrait Portrait::section(int i) const {
  if (depth_ < 1) throw domain_error("portrait of depth 0 has no sections");
  if (i < 0 || i >= degree_) throw domain_error("section index outside alphabet");
  std::vector<Permutation> labels;
  labels.reserve(vertex_count(degree_, depth_ - 1));
  size_t chunk = 1;
  for (int ell = 1; ell < depth_; ++ell) {
    // level ell of this portrait, entries whose first letter is i: one
    // contiguous chunk of size d^(ell-1)
    const size_t begin = level_offset(degree_, ell) + static_cast<size_t>(i) * chunk;
    for (size_t k = 0; k < chunk; ++k) labels.push_back(labels_[begin + k]);
    chunk *= static_cast<size_t>(degree_);
  }
  return Portrait(degree_, depth_ - 1, std::move(labels));
}

bool Portrait::is_identity() const {
  for (const auto& p : labels_)
    if (!p.is_identity()) return false;
  return true;
}

std::string Portrait::encode() const {
  std::string out;
  out.reserve(labels_.size() * static_cast<size_t>(degree_));
  for (const auto& p : labels_)
    out.append(reinterpret_cast<const char*>(p.images().data()), p.images().size());
  return out;
}

Portrait Portrait::decode(int degree, int depth, const std::string& bytes) {
  const size_t n = vertex_count(degree, depth);
  if (bytes.size() != n * static_cast<size_t>(degree))
    throw domain_error("encoded portrait has wrong length");
  std::vector<Permutation> labels;
  labels.reserve(n);
  for (size_t k = 0; k < n; ++k) {
    std::vector<uint8_t> img(bytes.begin() + static_cast<long>(k * degree),
                             bytes.begin() + static_cast<long>((k + 1) * degree));
    labels.push_back(Permutation::from_images(std::move(img)));
  }
  return Portrait(degree, depth, std::move(labels));
}

}  // namespace treeverb
