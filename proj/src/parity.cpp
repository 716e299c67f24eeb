#include "treeverb/parity.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "treeverb/errors.hpp"

namespace treeverb {

namespace {

std::vector<uint8_t> parse_bits(const std::string& s) {
  std::vector<uint8_t> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c == '0')
      bits.push_back(0);
    else if (c == '1')
      bits.push_back(1);
    else
      throw parse_error(std::string("bad parity bit '") + c + "'");
  }
  return bits;
}

std::string format_bits(const std::vector<uint8_t>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (uint8_t b : bits) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace

ParitySequence::ParitySequence(std::vector<uint8_t> pre, std::vector<uint8_t> per)
    : pre_(std::move(pre)), per_(std::move(per)) {
  if (per_.empty()) throw domain_error("parity sequence period must be nonempty");
  for (uint8_t b : pre_)
    if (b > 1) throw domain_error("parity bits must be 0 or 1");
  for (uint8_t b : per_)
    if (b > 1) throw domain_error("parity bits must be 0 or 1");
  // shrink the period to its primitive root
  for (size_t len = 1; len < per_.size(); ++len) {
    if (per_.size() % len) continue;
    bool ok = true;
    for (size_t i = len; i < per_.size() && ok; ++i) ok = per_[i] == per_[i % len];
    if (ok) {
      per_.resize(len);
      break;
    }
  }
  // absorb preperiod bits that already agree with the rotated period
  while (!pre_.empty() && pre_.back() == per_.back()) {
    pre_.pop_back();
    std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
  }
}

ParitySequence ParitySequence::parse(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos || text.rfind("pre=", 0) != 0 ||
      text.compare(semi + 1, 4, "per=") != 0)
    throw parse_error("parity sequence must look like pre=<bits>;per=<bits>");
  std::vector<uint8_t> per = parse_bits(text.substr(semi + 5));
  if (per.empty()) throw parse_error("parity sequence period must be nonempty");
  return ParitySequence(parse_bits(text.substr(4, semi - 4)), std::move(per));
}

int ParitySequence::bit(size_t n) const {
  if (n < pre_.size()) return pre_[n];
  return per_[(n - pre_.size()) % per_.size()];
}

bool ParitySequence::is_zero() const {
  return pre_.empty() && per_.size() == 1 && per_[0] == 0;
}

std::string ParitySequence::to_string() const {
  return "pre=" + format_bits(pre_) + ";per=" + format_bits(per_);
}

namespace {

// one backward step: e_n(q) = XOR_i e_{n-1}(next(q, i))
std::vector<uint8_t> backward_step(const TreeAutomorphism& g, const std::vector<uint8_t>& w) {
  std::vector<uint8_t> out(w.size(), 0);
  for (size_t q = 0; q < w.size(); ++q) {
    uint8_t acc = 0;
    for (uint32_t t : g.state(static_cast<uint32_t>(q)).next) acc ^= w[t];
    out[q] = acc;
  }
  return out;
}

std::vector<uint8_t> sign_vector(const TreeAutomorphism& g) {
  std::vector<uint8_t> w(g.state_count());
  for (size_t q = 0; q < w.size(); ++q)
    w[q] = static_cast<uint8_t>(g.state(static_cast<uint32_t>(q)).label.sign_bit());
  return w;
}

}  // namespace

int epsilon(const TreeAutomorphism& g, int n) {
  if (n < 0) throw domain_error("parity level must be >= 0");
  std::vector<uint8_t> w = sign_vector(g);
  for (int k = 0; k < n; ++k) w = backward_step(g, w);
  return w[g.root()];
}

ParitySequence parity_sequence(const TreeAutomorphism& g) {
  // forward multiplicity vector per level: v_0 = e_root,
  // v_{n+1}[q'] = XOR of v_n[q] over transitions q -> q'
  const size_t n_states = g.state_count();
  const std::vector<uint8_t> sgn = sign_vector(g);
  std::vector<uint8_t> v(n_states, 0);
  v[g.root()] = 1;
  std::map<std::vector<uint8_t>, size_t> seen;
  std::vector<uint8_t> bits;
  constexpr size_t kMaxLevels = size_t{1} << 20;
  while (true) {
    auto [it, fresh] = seen.emplace(v, bits.size());
    if (!fresh) {
      const size_t start = it->second;
      std::vector<uint8_t> pre(bits.begin(), bits.begin() + static_cast<long>(start));
      std::vector<uint8_t> per(bits.begin() + static_cast<long>(start), bits.end());
      return ParitySequence(std::move(pre), std::move(per));
    }
    uint8_t e = 0;
    for (size_t q = 0; q < n_states; ++q) e ^= static_cast<uint8_t>(v[q] & sgn[q]);
    bits.push_back(e);
    if (bits.size() > kMaxLevels)
      throw domain_error("parity sequence cycle exceeds iteration bound");
    std::vector<uint8_t> nv(n_states, 0);
    for (size_t q = 0; q < n_states; ++q) {
      if (!v[q]) continue;
      for (uint32_t t : g.state(static_cast<uint32_t>(q)).next) nv[t] ^= 1;
    }
    v.swap(nv);
  }
}

std::vector<bool> kernel_states(const TreeAutomorphism& g) {
  const size_t n_states = g.state_count();
  std::vector<bool> nonzero(n_states, false);
  std::vector<uint8_t> w = sign_vector(g);
  for (size_t round = 0; round < n_states; ++round) {
    for (size_t q = 0; q < n_states; ++q)
      if (w[q]) nonzero[q] = true;
    if (round + 1 < n_states) w = backward_step(g, w);
  }
  std::vector<bool> kernel(n_states);
  for (size_t q = 0; q < n_states; ++q) kernel[q] = !nonzero[q];
  return kernel;
}

bool in_ker_parity(const TreeAutomorphism& g) { return kernel_states(g)[g.root()]; }

uint64_t alt_exponent(int d) {
  if (d < 3) throw domain_error("alternating exponent needs d >= 3");
  if (d > 40) throw domain_error("alternating exponent supported for d <= 40");
  uint64_t exponent = 1;
  // partitions of d, parts descending; even permutation <=> d - #parts even
  std::vector<int> parts;
  auto recurse = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      if ((d - static_cast<int>(parts.size())) % 2 == 0) {
        uint64_t cycle_lcm = 1;
        for (int p : parts) cycle_lcm = std::lcm(cycle_lcm, static_cast<uint64_t>(p));
        exponent = std::lcm(exponent, cycle_lcm);
      }
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  recurse(recurse, d, d);
  if (d % 2 == 1) {
    // cross-check the 2-part: 2^(k-1) if d = 2^k + 1, else 2^k, where
    // 2^k is the largest power of two below d
    int k = 0;
    while ((1 << (k + 1)) < d) ++k;
    const int expected = (d == (1 << k) + 1) ? k - 1 : k;
    int actual = 0;
    for (uint64_t e = exponent; e % 2 == 0; e /= 2) ++actual;
    if (actual != expected) throw std::logic_error("alternating exponent 2-part mismatch");
  }
  return exponent;
}

namespace {

bool in_chain_state(const TreeAutomorphism& g, uint32_t q, int k, const std::vector<bool>& kernel,
                    std::map<std::pair<uint32_t, int>, bool>& memo) {
  if (k <= 0) return true;
  if (k == 1) return kernel[q];
  if (k == 2) return kernel[q] && g.state(q).label.is_identity();
  const auto key = std::make_pair(q, k);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  bool ok = g.state(q).label.is_identity();
  for (uint32_t t : g.state(q).next) {
    if (!ok) break;
    ok = in_chain_state(g, t, k - 2, kernel, memo);
  }
  memo.emplace(key, ok);
  return ok;
}

}  // namespace

bool in_chain(const TreeAutomorphism& g, int k) {
  if (k < 0) throw domain_error("chain index must be >= 0");
  const std::vector<bool> kernel = kernel_states(g);
  std::map<std::pair<uint32_t, int>, bool> memo;
  return in_chain_state(g, g.root(), k, kernel, memo);
}

std::optional<int> classify_chain(const TreeAutomorphism& g) {
  if (g.is_identity()) return std::nullopt;
  const std::vector<bool> kernel = kernel_states(g);
  std::map<std::pair<uint32_t, int>, bool> memo;
  const int cap = static_cast<int>(4 * g.state_count() + 8);
  int k = 0;
  while (k < cap && in_chain_state(g, g.root(), k + 1, kernel, memo)) ++k;
  if (k >= cap) throw std::logic_error("chain classification failed to terminate");
  return k;
}

}  // namespace treeverb
