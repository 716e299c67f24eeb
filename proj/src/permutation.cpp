#include "treeverb/permutation.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "treeverb/errors.hpp"

namespace treeverb {

Permutation::Permutation(int degree) {
  if (degree < 1 || degree > 255) throw domain_error("permutation degree out of range");
  img_.resize(static_cast<size_t>(degree));
  std::iota(img_.begin(), img_.end(), uint8_t{0});
}

Permutation Permutation::from_images(std::vector<uint8_t> images) {
  const size_t d = images.size();
  if (d < 1 || d > 255) throw domain_error("permutation degree out of range");
  std::vector<bool> seen(d, false);
  for (uint8_t v : images) {
    if (v >= d || seen[v]) throw domain_error("image array is not a bijection");
    seen[v] = true;
  }
  Permutation p;
  p.img_ = std::move(images);
  return p;
}

Permutation Permutation::from_one_based(const std::vector<int>& images) {
  std::vector<uint8_t> img;
  img.reserve(images.size());
  for (int v : images) {
    if (v < 1 || v > static_cast<int>(images.size()))
      throw domain_error("permutation image out of range");
    img.push_back(static_cast<uint8_t>(v - 1));
  }
  return from_images(std::move(img));
}

Permutation Permutation::cycle(int degree, std::span<const int> points) {
  Permutation p(degree);
  if (points.empty()) return p;
  std::vector<bool> seen(static_cast<size_t>(degree), false);
  for (size_t k = 0; k < points.size(); ++k) {
    int a = points[k];
    int b = points[(k + 1) % points.size()];
    if (a < 0 || a >= degree || b < 0 || b >= degree)
      throw domain_error("cycle point out of range");
    if (seen[static_cast<size_t>(a)]) throw domain_error("repeated point in cycle");
    seen[static_cast<size_t>(a)] = true;
    p.img_[static_cast<size_t>(a)] = static_cast<uint8_t>(b);
  }
  return p;
}

Permutation Permutation::full_cycle(int degree) {
  Permutation p(degree);
  for (int i = 0; i < degree; ++i)
    p.img_[static_cast<size_t>(i)] = static_cast<uint8_t>((i + 1) % degree);
  return p;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  Permutation r;
  r.img_.resize(img_.size());
  for (size_t i = 0; i < img_.size(); ++i) r.img_[i] = rhs.img_[img_[i]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.img_.resize(img_.size());
  for (size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<uint8_t>(i);
  return r;
}

Permutation Permutation::conjugated_by(const Permutation& x) const {
  return x.inverse() * (*this) * x;
}

Permutation Permutation::pow(long long n) const {
  if (n < 0) return inverse().pow(-n);
  Permutation acc(degree()), base = *this;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool Permutation::is_identity() const {
  for (size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

int Permutation::sign_bit() const {
  // parity = (degree - number of cycles) mod 2
  std::vector<bool> seen(img_.size(), false);
  int cycles = 0;
  for (size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (size_t j = i; !seen[j]; j = img_[j]) seen[j] = true;
  }
  return static_cast<int>(img_.size() - static_cast<size_t>(cycles)) & 1;
}

bool Permutation::is_full_cycle() const {
  size_t j = 0, steps = 0;
  do {
    j = img_[j];
    ++steps;
  } while (j != 0 && steps <= img_.size());
  return steps == img_.size();
}

long long Permutation::order() const {
  std::vector<bool> seen(img_.size(), false);
  long long ord = 1;
  for (size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    long long len = 0;
    for (size_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::string Permutation::to_string() const {
  if (is_identity()) return "id";
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < img_.size(); ++i) {
    if (i) os << ' ';
    os << static_cast<int>(img_[i]) + 1;
  }
  os << ']';
  return os.str();
}

size_t Permutation::hash() const {
  size_t h = img_.size();
  for (uint8_t v : img_) h = h * 1099511628211ULL + v + 1;
  return h;
}

namespace {
std::mutex table_mutex;
std::map<int, std::vector<Permutation>> perm_table;
std::map<int, std::vector<Permutation>> cycle_table;
}  // namespace

const std::vector<Permutation>& all_permutations(int degree) {
  if (degree < 1 || degree > 9) throw domain_error("permutation enumeration needs 1 <= d <= 9");
  std::scoped_lock lock(table_mutex);
  auto it = perm_table.find(degree);
  if (it != perm_table.end()) return it->second;
  std::vector<uint8_t> img(static_cast<size_t>(degree));
  std::iota(img.begin(), img.end(), uint8_t{0});
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return perm_table.emplace(degree, std::move(out)).first->second;
}

const std::vector<Permutation>& all_full_cycles(int degree) {
  {
    std::scoped_lock lock(table_mutex);
    auto it = cycle_table.find(degree);
    if (it != cycle_table.end()) return it->second;
  }
  const auto& all = all_permutations(degree);
  std::vector<Permutation> out;
  for (const auto& p : all)
    if (p.is_full_cycle()) out.push_back(p);
  std::scoped_lock lock(table_mutex);
  return cycle_table.emplace(degree, std::move(out)).first->second;
}

}  // namespace treeverb
