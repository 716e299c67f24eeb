#include "treeverb/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "treeverb/errors.hpp"
#include "treeverb/parity.hpp"

namespace treeverb {

namespace {

void require_compatible(const Portrait& a, const Portrait& b) {
  if (a.degree() != b.degree() || a.depth() != b.depth())
    throw domain_error("portrait shape mismatch");
}

// index of a(u) for every vertex index u, computed level by level:
// image(u.i) = image(u).(a_(u)(i))
std::vector<size_t> image_table(const Portrait& a) {
  const int d = a.degree();
  std::vector<size_t> img(a.size());
  if (a.size()) img[0] = 0;
  for (int ell = 0; ell + 1 < a.depth(); ++ell) {
    const size_t begin = Portrait::level_offset(d, ell);
    const size_t end = Portrait::level_offset(d, ell + 1);
    for (size_t u = begin; u < end; ++u)
      for (int i = 0; i < d; ++i)
        img[Portrait::child_index(d, ell, u, i)] =
            Portrait::child_index(d, ell, img[u], a.label(u)(i));
  }
  return img;
}

}  // namespace

Portrait q_op(const Portrait& a, const Portrait& b) {
  require_compatible(a, b);
  const std::vector<size_t> img = image_table(a);
  std::vector<Permutation> labels;
  labels.reserve(a.size());
  for (size_t u = 0; u < a.size(); ++u) labels.push_back(a.label(u) * b.label(img[u]));
  return Portrait(a.degree(), a.depth(), std::move(labels));
}

Portrait q_inv(const Portrait& a) {
  const std::vector<size_t> img = image_table(a);
  std::vector<Permutation> labels(a.size(), Permutation(a.degree()));
  for (size_t u = 0; u < a.size(); ++u) labels[img[u]] = a.label(u).inverse();
  return Portrait(a.degree(), a.depth(), std::move(labels));
}

Portrait q_pow(const Portrait& a, long long m) {
  if (m < 0) return q_pow(q_inv(a), -m);
  Portrait acc = Portrait::identity(a.degree(), a.depth());
  Portrait base = a;
  while (m > 0) {
    if (m & 1) acc = q_op(acc, base);
    if (m >>= 1) base = q_op(base, base);
  }
  return acc;
}

size_t enumeration_limit(size_t requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("TREEVERB_LIMIT")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
    throw domain_error("TREEVERB_LIMIT must be a positive integer");
  }
  return 10'000'000;
}

std::vector<Portrait> enumerate_group(int degree, int depth, size_t limit) {
  limit = enumeration_limit(limit);
  if (degree < 2) throw domain_error("tree degree must be >= 2");
  const size_t slots = Portrait::vertex_count(degree, depth);
  long double fact = 1;
  for (int k = 2; k <= degree; ++k) fact *= k;
  const long double approx = std::pow(fact, static_cast<long double>(slots));
  if (approx > static_cast<long double>(limit)) {
    std::ostringstream os;
    os << "group order ";
    if (approx < 1e18L)
      os << static_cast<unsigned long long>(approx);
    else
      os << "~10^" << static_cast<long long>(std::floor(std::log10(approx)));
    os << " exceeds enumeration limit " << limit;
    throw domain_error(os.str());
  }
  const auto& perms = all_permutations(degree);
  const size_t order = static_cast<size_t>(std::llroundl(approx));
  std::vector<Portrait> out;
  out.reserve(order);
  std::vector<size_t> digits(slots, 0);
  while (true) {
    std::vector<Permutation> labels;
    labels.reserve(slots);
    for (size_t v = 0; v < slots; ++v) labels.push_back(perms[digits[v]]);
    out.emplace_back(degree, depth, std::move(labels));
    size_t v = slots;
    while (v > 0) {
      --v;
      if (++digits[v] < perms.size()) break;
      digits[v] = 0;
      if (v == 0) return out;
    }
    if (slots == 0) return out;
  }
}

std::vector<Portrait> closure(const std::vector<Portrait>& seeds, size_t limit) {
  limit = enumeration_limit(limit);
  if (seeds.empty()) throw domain_error("closure needs at least one seed");
  const int d = seeds[0].degree();
  const int n = seeds[0].depth();
  for (const auto& s : seeds) require_compatible(seeds[0], s);

  std::unordered_set<std::string> seen;
  std::deque<Portrait> queue;
  auto push = [&](Portrait p) {
    if (seen.insert(p.encode()).second) {
      if (seen.size() > limit) throw domain_error("closure exceeds enumeration limit");
      queue.push_back(std::move(p));
    }
  };
  push(Portrait::identity(d, n));
  for (const auto& s : seeds) push(s);
  std::vector<Portrait> out;
  while (!queue.empty()) {
    Portrait x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : seeds) push(q_op(x, g));
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end(),
            [](const Portrait& a, const Portrait& b) { return a.encode() < b.encode(); });
  return out;
}

std::vector<Portrait> word_values(const std::vector<Portrait>& ground, const Word& word,
                                  size_t limit) {
  limit = enumeration_limit(limit);
  std::unordered_set<std::string> seen;
  std::vector<Portrait> out;
  auto emit = [&](Portrait p) {
    if (seen.insert(p.encode()).second) {
      if (seen.size() > limit) throw domain_error("word value set exceeds enumeration limit");
      out.push_back(std::move(p));
    }
  };
  switch (word.kind) {
    case Word::Kind::kSquare:
      for (const auto& x : ground) emit(q_op(x, x));
      break;
    case Word::Kind::kPower:
      for (const auto& x : ground) emit(q_pow(x, word.exponent));
      break;
    case Word::Kind::kCommutator:
      for (const auto& x : ground) {
        const Portrait xinv = q_inv(x);
        for (const auto& y : ground) emit(q_op(q_op(q_op(xinv, q_inv(y)), x), y));
      }
      break;
  }
  std::sort(out.begin(), out.end(),
            [](const Portrait& a, const Portrait& b) { return a.encode() < b.encode(); });
  return out;
}

int epsilon_level(const Portrait& p, int j) {
  if (j < 0 || j >= p.depth()) throw domain_error("level outside portrait depth");
  const size_t begin = Portrait::level_offset(p.degree(), j);
  const size_t end = Portrait::level_offset(p.degree(), j + 1);
  int acc = 0;
  for (size_t u = begin; u < end; ++u) acc ^= p.label(u).sign_bit();
  return acc;
}

bool in_chain_set(const Portrait& p, int k) {
  if (k <= 0) return true;
  if (k == 1) {
    for (int j = 0; j < p.depth(); ++j)
      if (epsilon_level(p, j)) return false;
    return true;
  }
  if (p.depth() == 0) return true;
  if (!p.root_label().is_identity()) return false;
  if (k == 2) return in_chain_set(p, 1);
  for (int i = 0; i < p.degree(); ++i)
    if (!in_chain_set(p.section(i), k - 2)) return false;
  return true;
}

std::vector<Portrait> chain_member_set(int degree, int depth, int k, size_t limit) {
  std::vector<Portrait> out;
  for (auto& p : enumerate_group(degree, depth, limit))
    if (in_chain_set(p, k)) out.push_back(std::move(p));
  std::sort(out.begin(), out.end(),
            [](const Portrait& a, const Portrait& b) { return a.encode() < b.encode(); });
  return out;
}

bool ChainReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ChainCheck& c) { return c.pass; });
}

std::string ChainReport::to_string() const {
  std::ostringstream os;
  for (const auto& c : checks)
    os << "CHECK " << c.name << " d=" << degree << " n=" << depth << " lhs=" << c.lhs
       << " rhs=" << c.rhs << ' ' << (c.pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

ChainReport verify_chain(int degree, int depth, size_t limit) {
  if (depth < 1) throw domain_error("chain verification needs depth >= 1");
  ChainReport report;
  report.degree = degree;
  report.depth = depth;

  const std::vector<Portrait> group = enumerate_group(degree, depth, limit);
  report.group_order = group.size();
  const std::vector<Portrait> m1 = chain_member_set(degree, depth, 1, limit);
  const std::vector<Portrait> m2 = chain_member_set(degree, depth, 2, limit);
  const std::vector<Portrait> m3 = chain_member_set(degree, depth, 3, limit);

  auto add = [&](std::string name, const std::vector<Portrait>& lhs,
                 const std::vector<Portrait>& rhs) {
    report.checks.push_back(
        {std::move(name), lhs.size(), rhs.size(), lhs == rhs});
  };
  add("squares-generate-k1", closure(word_values(group, Word::square(), limit), limit), m1);
  add("commutators-generate-k1", closure(word_values(group, Word::commutator(), limit), limit),
      m1);
  if (degree >= 3) {
    const auto e = static_cast<long long>(alt_exponent(degree));
    add("exponent-powers-generate-k2",
        closure(word_values(m1, Word::power(e), limit), limit), m2);
    add("k2-squares-generate-k3", closure(word_values(m2, Word::square(), limit), limit), m3);
  }
  return report;
}

}  // namespace treeverb
