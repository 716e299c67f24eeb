#include "treeverb/random.hpp"

#include <numeric>

#include "treeverb/constructions.hpp"

namespace treeverb {

Permutation random_permutation(int degree, Rng& rng) {
  std::vector<uint8_t> img(static_cast<size_t>(degree));
  std::iota(img.begin(), img.end(), uint8_t{0});
  for (size_t i = img.size(); i > 1; --i)
    std::swap(img[i - 1], img[rng() % i]);
  return Permutation::from_images(std::move(img));
}

Permutation random_even_permutation(int degree, Rng& rng) {
  Permutation p = random_permutation(degree, rng);
  if (p.is_even()) return p;
  std::vector<uint8_t> img = p.images();
  std::swap(img[0], img[1]);
  return Permutation::from_images(std::move(img));
}

Permutation random_full_cycle(int degree, Rng& rng) {
  std::vector<int> rest(static_cast<size_t>(degree) - 1);
  std::iota(rest.begin(), rest.end(), 1);
  for (size_t i = rest.size(); i > 1; --i)
    std::swap(rest[i - 1], rest[rng() % i]);
  std::vector<int> points{0};
  points.insert(points.end(), rest.begin(), rest.end());
  return Permutation::cycle(degree, points);
}

Portrait random_portrait(int degree, int depth, Rng& rng) {
  std::vector<Permutation> labels;
  labels.reserve(Portrait::vertex_count(degree, depth));
  for (size_t k = 0; k < Portrait::vertex_count(degree, depth); ++k)
    labels.push_back(random_permutation(degree, rng));
  return Portrait(degree, depth, std::move(labels));
}

namespace {

// flip the sign of the label at index idx by swapping two image entries
void flip_label(std::vector<Permutation>& labels, size_t idx) {
  std::vector<uint8_t> img = labels[idx].images();
  std::swap(img[0], img[1]);
  labels[idx] = Permutation::from_images(std::move(img));
}

Portrait balance_levels(int degree, int depth, std::vector<Permutation> labels) {
  for (int ell = 0; ell < depth; ++ell) {
    const size_t begin = Portrait::level_offset(degree, ell);
    const size_t end = Portrait::level_offset(degree, ell + 1);
    int parity = 0;
    for (size_t u = begin; u < end; ++u) parity ^= labels[u].sign_bit();
    if (parity) flip_label(labels, end - 1);
  }
  return Portrait(degree, depth, std::move(labels));
}

}  // namespace

Portrait random_kernel_portrait(int degree, int depth, Rng& rng) {
  std::vector<Permutation> labels;
  labels.reserve(Portrait::vertex_count(degree, depth));
  for (size_t k = 0; k < Portrait::vertex_count(degree, depth); ++k)
    labels.push_back(random_permutation(degree, rng));
  if (depth >= 1) labels[0] = random_even_permutation(degree, rng);
  return balance_levels(degree, depth, std::move(labels));
}

Portrait random_stabilizer_portrait(int degree, int depth, Rng& rng) {
  Portrait p = random_portrait(degree, depth, rng);
  std::vector<Permutation> labels = p.labels();
  if (depth >= 1) labels[0] = Permutation(degree);
  return Portrait(degree, depth, std::move(labels));
}

Portrait random_stabilizer_kernel_portrait(int degree, int depth, Rng& rng) {
  Portrait p = random_kernel_portrait(degree, depth, rng);
  std::vector<Permutation> labels = p.labels();
  if (depth >= 1) labels[0] = Permutation(degree);
  return balance_levels(degree, depth, std::move(labels));
}

namespace {

TreeAutomorphism random_machine_impl(int degree, Rng& rng, int budget) {
  const uint64_t pick = rng() % (budget > 0 ? 5 : 3);
  switch (pick) {
    case 0:
      return from_portrait(random_portrait(degree, 1 + static_cast<int>(rng() % 3), rng));
    case 1:
      return rng() % 2 ? adding_machine(degree) : inverse(adding_machine(degree));
    case 2: {
      SpineSpec spec;
      spec.degree = degree;
      const int n_pre = static_cast<int>(rng() % 2);
      const int n_per = 1 + static_cast<int>(rng() % 2);
      for (int k = 0; k < n_pre; ++k) spec.pre.push_back(random_full_cycle(degree, rng));
      for (int k = 0; k < n_per; ++k) spec.per.push_back(random_full_cycle(degree, rng));
      return spine_automaton(spec);
    }
    case 3:
      return compose(random_machine_impl(degree, rng, budget - 1),
                     random_machine_impl(degree, rng, budget - 1));
    default:
      return conjugate_rooted(random_machine_impl(degree, rng, budget - 1),
                              random_permutation(degree, rng));
  }
}

}  // namespace

TreeAutomorphism random_machine(int degree, Rng& rng) {
  return random_machine_impl(degree, rng, 2);
}

}  // namespace treeverb
