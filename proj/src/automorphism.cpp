#include "treeverb/automorphism.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "treeverb/errors.hpp"
#include "treeverb/portrait.hpp"

namespace treeverb {

Vertex parse_vertex(const std::string& text, int degree) {
  Vertex v;
  size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == ',')) ++pos;
    if (pos >= text.size()) break;
    size_t end = pos;
    while (end < text.size() && text[end] != ',' && text[end] != ' ') ++end;
    int letter;
    try {
      letter = std::stoi(text.substr(pos, end - pos));
    } catch (const std::exception&) {
      throw parse_error("bad vertex letter '" + text.substr(pos, end - pos) + "'");
    }
    if (letter < 1 || letter > degree)
      throw parse_error("vertex letter " + std::to_string(letter) + " outside 1.." +
                        std::to_string(degree));
    v.push_back(static_cast<uint8_t>(letter - 1));
    pos = end;
  }
  return v;
}

std::string format_vertex(const Vertex& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << static_cast<int>(v[i]) + 1;
  }
  return os.str();
}

// --- canonical form ----------------------------------------------------------

TreeAutomorphism canonical_from_raw(int degree, std::vector<TreeAutomorphism::State>&& states,
                                    uint32_t root, bool canonicalize) {
  if (degree < 2 || degree > 64) throw domain_error("tree degree must be in 2..64");
  if (states.empty() || root >= states.size()) throw domain_error("dangling root state");
  for (const auto& s : states) {
    if (s.label.degree() != degree) throw domain_error("state label degree mismatch");
    if (s.next.size() != static_cast<size_t>(degree))
      throw domain_error("state child arity differs from degree");
    for (uint32_t t : s.next)
      if (t >= states.size()) throw domain_error("dangling state reference");
  }

  TreeAutomorphism g;
  g.degree_ = degree;
  if (!canonicalize) {
    if (root != 0) throw domain_error("non-canonical machine passed with canonicalize=false");
    g.states_ = std::move(states);
    return g;
  }

  // reachable states, breadth-first
  std::vector<uint32_t> order;
  std::vector<int32_t> seen(states.size(), -1);
  order.push_back(root);
  seen[root] = 0;
  for (size_t k = 0; k < order.size(); ++k)
    for (uint32_t t : states[order[k]].next)
      if (seen[t] < 0) {
        seen[t] = static_cast<int32_t>(order.size());
        order.push_back(t);
      }

  // minimize: refine classes by (label, child classes) until stable
  std::unordered_map<Permutation, uint32_t, PermutationHash> label_ids;
  std::vector<uint32_t> cls(states.size(), 0);
  for (uint32_t q : order)
    cls[q] = label_ids.emplace(states[q].label, static_cast<uint32_t>(label_ids.size()))
                 .first->second;
  size_t n_classes = label_ids.size();
  while (true) {
    std::map<std::vector<uint32_t>, uint32_t> sig_ids;
    std::vector<uint32_t> next_cls(states.size(), 0);
    for (uint32_t q : order) {
      std::vector<uint32_t> sig;
      sig.reserve(states[q].next.size() + 1);
      sig.push_back(cls[q]);
      for (uint32_t t : states[q].next) sig.push_back(cls[t]);
      next_cls[q] =
          sig_ids.emplace(std::move(sig), static_cast<uint32_t>(sig_ids.size())).first->second;
    }
    cls.swap(next_cls);
    if (sig_ids.size() == n_classes) break;
    n_classes = sig_ids.size();
  }

  // renumber classes in breadth-first order from the root class
  std::vector<uint32_t> rep(n_classes, UINT32_MAX);
  for (uint32_t q : order)
    if (rep[cls[q]] == UINT32_MAX) rep[cls[q]] = q;
  std::vector<uint32_t> new_id(n_classes, UINT32_MAX);
  std::vector<uint32_t> bfs;
  new_id[cls[root]] = 0;
  bfs.push_back(cls[root]);
  for (size_t k = 0; k < bfs.size(); ++k)
    for (uint32_t t : states[rep[bfs[k]]].next)
      if (new_id[cls[t]] == UINT32_MAX) {
        new_id[cls[t]] = static_cast<uint32_t>(bfs.size());
        bfs.push_back(cls[t]);
      }

  g.states_.resize(bfs.size());
  for (uint32_t c : bfs) {
    const auto& src = states[rep[c]];
    TreeAutomorphism::State s;
    s.label = src.label;
    s.next.reserve(src.next.size());
    for (uint32_t t : src.next) s.next.push_back(new_id[cls[t]]);
    g.states_[new_id[c]] = std::move(s);
  }
  return g;
}

TreeAutomorphism TreeAutomorphism::identity(int degree) {
  std::vector<State> st(1);
  st[0].label = Permutation(degree);
  st[0].next.assign(static_cast<size_t>(degree), 0);
  return canonical_from_raw(degree, std::move(st), 0, false);
}

TreeAutomorphism TreeAutomorphism::rooted(const Permutation& label) {
  const int d = label.degree();
  std::vector<State> st(2);
  st[0].label = label;
  st[0].next.assign(static_cast<size_t>(d), 1);
  st[1].label = Permutation(d);
  st[1].next.assign(static_cast<size_t>(d), 1);
  return canonical_from_raw(d, std::move(st), 0, true);
}

TreeAutomorphism TreeAutomorphism::from_sections(const std::vector<TreeAutomorphism>& sections,
                                                 const Permutation& root_label) {
  const int d = root_label.degree();
  if (static_cast<int>(sections.size()) != d)
    throw domain_error("from_sections needs exactly d sections");
  std::vector<State> st(1);
  st[0].label = root_label;
  uint32_t offset = 1;
  for (const auto& sec : sections) {
    if (sec.degree() != d) throw domain_error("section degree mismatch");
    st[0].next.push_back(offset + sec.root());
    offset += static_cast<uint32_t>(sec.state_count());
  }
  offset = 1;
  for (const auto& sec : sections) {
    for (size_t q = 0; q < sec.state_count(); ++q) {
      State s;
      s.label = sec.state(static_cast<uint32_t>(q)).label;
      for (uint32_t t : sec.state(static_cast<uint32_t>(q)).next) s.next.push_back(offset + t);
      st.push_back(std::move(s));
    }
    offset += static_cast<uint32_t>(sec.state_count());
  }
  return canonical_from_raw(d, std::move(st), 0, true);
}

TreeAutomorphism TreeAutomorphism::from_states(int degree, std::vector<State> states,
                                               uint32_t root, bool canonicalize) {
  return canonical_from_raw(degree, std::move(states), root, canonicalize);
}

bool TreeAutomorphism::is_identity() const {
  return states_.size() == 1 && states_[0].label.is_identity();
}

// --- action -------------------------------------------------------------------

Vertex apply(const TreeAutomorphism& g, const Vertex& v) {
  Vertex out;
  out.reserve(v.size());
  uint32_t q = g.root();
  for (uint8_t letter : v) {
    if (letter >= g.degree()) throw domain_error("vertex letter outside alphabet");
    out.push_back(static_cast<uint8_t>(g.state(q).label(letter)));
    q = g.state(q).next[letter];
  }
  return out;
}

Permutation label_at(const TreeAutomorphism& g, const Vertex& v) {
  uint32_t q = g.root();
  for (uint8_t letter : v) {
    if (letter >= g.degree()) throw domain_error("vertex letter outside alphabet");
    q = g.state(q).next[letter];
  }
  return g.state(q).label;
}

TreeAutomorphism section_at(const TreeAutomorphism& g, const Vertex& v) {
  uint32_t q = g.root();
  for (uint8_t letter : v) {
    if (letter >= g.degree()) throw domain_error("vertex letter outside alphabet");
    q = g.state(q).next[letter];
  }
  if (q == g.root()) return g;
  // reuse the state table with a different root
  std::vector<TreeAutomorphism::State> st;
  st.reserve(g.state_count());
  for (size_t i = 0; i < g.state_count(); ++i) st.push_back(g.state(static_cast<uint32_t>(i)));
  return canonical_from_raw(g.degree(), std::move(st), q, true);
}

// --- product machines -----------------------------------------------------------

namespace {

inline uint64_t pair_key(uint32_t a, uint32_t b) { return (uint64_t(a) << 32) | b; }

void require_same_degree(const TreeAutomorphism& g, const TreeAutomorphism& h) {
  if (g.degree() != h.degree()) throw domain_error("degree mismatch");
}

}  // namespace

TreeAutomorphism compose(const TreeAutomorphism& g, const TreeAutomorphism& h, bool canonicalize) {
  require_same_degree(g, h);
  const int d = g.degree();
  std::unordered_map<uint64_t, uint32_t> ids;
  std::vector<std::pair<uint32_t, uint32_t>> todo;
  auto intern = [&](uint32_t a, uint32_t b) {
    auto [it, fresh] = ids.emplace(pair_key(a, b), static_cast<uint32_t>(todo.size()));
    if (fresh) todo.emplace_back(a, b);
    return it->second;
  };
  intern(g.root(), h.root());
  std::vector<TreeAutomorphism::State> st;
  for (size_t k = 0; k < todo.size(); ++k) {
    auto [a, b] = todo[k];
    const Permutation& la = g.state(a).label;
    TreeAutomorphism::State s;
    s.label = la * h.state(b).label;
    s.next.reserve(static_cast<size_t>(d));
    // (gh)_i = g_i h_{la(i)}
    for (int i = 0; i < d; ++i)
      s.next.push_back(intern(g.state(a).next[static_cast<size_t>(i)],
                              h.state(b).next[static_cast<size_t>(la(i))]));
    st.push_back(std::move(s));
  }
  return canonical_from_raw(d, std::move(st), 0, canonicalize);
}

TreeAutomorphism inverse(const TreeAutomorphism& g) {
  const int d = g.degree();
  // mirror: (g^{-1})_i = (g_{sigma^{-1}(i)})^{-1}
  std::vector<TreeAutomorphism::State> st;
  st.reserve(g.state_count());
  for (size_t q = 0; q < g.state_count(); ++q) {
    const auto& src = g.state(static_cast<uint32_t>(q));
    Permutation inv = src.label.inverse();
    TreeAutomorphism::State s;
    s.next.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) s.next.push_back(src.next[static_cast<size_t>(inv(i))]);
    s.label = std::move(inv);
    st.push_back(std::move(s));
  }
  return canonical_from_raw(d, std::move(st), g.root(), true);
}

TreeAutomorphism conjugate(const TreeAutomorphism& g, const TreeAutomorphism& x) {
  require_same_degree(g, x);
  const int d = g.degree();
  // state (a, b, c) = a^{-1} b c with a, c states of x and b a state of g;
  // section at i: ((a^{-1})_i, b_{j0}, c_{beta(j0)}) for j0 = alpha^{-1}(i)
  std::map<std::array<uint32_t, 3>, uint32_t> ids;
  std::vector<std::array<uint32_t, 3>> todo;
  auto intern = [&](std::array<uint32_t, 3> t) {
    auto [it, fresh] = ids.emplace(t, static_cast<uint32_t>(todo.size()));
    if (fresh) todo.push_back(t);
    return it->second;
  };
  intern({x.root(), g.root(), x.root()});
  std::vector<TreeAutomorphism::State> st;
  for (size_t k = 0; k < todo.size(); ++k) {
    auto [a, b, c] = todo[k];
    const Permutation alpha_inv = x.state(a).label.inverse();
    const Permutation& beta = g.state(b).label;
    TreeAutomorphism::State s;
    s.label = alpha_inv * beta * x.state(c).label;
    s.next.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
      const int j0 = alpha_inv(i);
      s.next.push_back(intern({x.state(a).next[static_cast<size_t>(j0)],
                               g.state(b).next[static_cast<size_t>(j0)],
                               x.state(c).next[static_cast<size_t>(beta(j0))]}));
    }
    st.push_back(std::move(s));
  }
  return canonical_from_raw(d, std::move(st), 0, true);
}

TreeAutomorphism conjugate_by_composition(const TreeAutomorphism& g, const TreeAutomorphism& x) {
  return compose(compose(inverse(x), g), x);
}

TreeAutomorphism conjugate_rooted(const TreeAutomorphism& g, const Permutation& x) {
  if (x.degree() != g.degree()) throw domain_error("degree mismatch");
  // (g^x)_i = g_{x^{-1}(i)}, root label conjugated; deeper states untouched
  const int d = g.degree();
  std::vector<TreeAutomorphism::State> st;
  st.reserve(g.state_count() + 1);
  TreeAutomorphism::State root;
  root.label = g.root_label().conjugated_by(x);
  const Permutation xinv = x.inverse();
  for (int i = 0; i < d; ++i)
    root.next.push_back(1 + g.state(g.root()).next[static_cast<size_t>(xinv(i))]);
  st.push_back(std::move(root));
  for (size_t q = 0; q < g.state_count(); ++q) {
    TreeAutomorphism::State s = g.state(static_cast<uint32_t>(q));
    for (auto& t : s.next) t += 1;
    st.push_back(std::move(s));
  }
  return canonical_from_raw(d, std::move(st), 0, true);
}

TreeAutomorphism commutator(const TreeAutomorphism& g, const TreeAutomorphism& h) {
  require_same_degree(g, h);
  const int d = g.degree();
  // state (p, q, r, s) = p^{-1} q^{-1} r s with p, r states of g and q, s of h;
  // letter flow j1 = alpha^{-1}(i), j2 = beta^{-1}(j1), j3 = gamma(j2)
  std::map<std::array<uint32_t, 4>, uint32_t> ids;
  std::vector<std::array<uint32_t, 4>> todo;
  auto intern = [&](std::array<uint32_t, 4> t) {
    auto [it, fresh] = ids.emplace(t, static_cast<uint32_t>(todo.size()));
    if (fresh) todo.push_back(t);
    return it->second;
  };
  intern({g.root(), h.root(), g.root(), h.root()});
  std::vector<TreeAutomorphism::State> st;
  for (size_t k = 0; k < todo.size(); ++k) {
    auto [p, q, r, s0] = todo[k];
    const Permutation alpha_inv = g.state(p).label.inverse();
    const Permutation beta_inv = h.state(q).label.inverse();
    const Permutation& gamma = g.state(r).label;
    TreeAutomorphism::State s;
    s.label = alpha_inv * beta_inv * gamma * h.state(s0).label;
    s.next.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
      const int j1 = alpha_inv(i);
      const int j2 = beta_inv(j1);
      const int j3 = gamma(j2);
      s.next.push_back(intern({g.state(p).next[static_cast<size_t>(j1)],
                               h.state(q).next[static_cast<size_t>(j2)],
                               g.state(r).next[static_cast<size_t>(j2)],
                               h.state(s0).next[static_cast<size_t>(j3)]}));
    }
    st.push_back(std::move(s));
  }
  return canonical_from_raw(d, std::move(st), 0, true);
}

TreeAutomorphism commutator_by_composition(const TreeAutomorphism& g, const TreeAutomorphism& h) {
  return compose(compose(compose(inverse(g), inverse(h)), g), h);
}

TreeAutomorphism power(const TreeAutomorphism& g, long long n) {
  if (n < 0) return power(inverse(g), -n);
  TreeAutomorphism acc = TreeAutomorphism::identity(g.degree());
  TreeAutomorphism base = g;
  while (n > 0) {
    if (n & 1) acc = compose(acc, base);
    if (n >>= 1) base = compose(base, base);
  }
  return acc;
}

TreeAutomorphism power_closed_form(const TreeAutomorphism& g, int n) {
  if (n < 1) throw domain_error("closed-form power needs n >= 1");
  const int d = g.degree();
  std::map<std::vector<uint32_t>, uint32_t> ids;
  std::vector<std::vector<uint32_t>> todo;
  auto intern = [&](std::vector<uint32_t> t) {
    auto [it, fresh] = ids.emplace(std::move(t), static_cast<uint32_t>(todo.size()));
    if (fresh) todo.push_back(it->first);
    return it->second;
  };
  intern(std::vector<uint32_t>(static_cast<size_t>(n), g.root()));
  std::vector<TreeAutomorphism::State> st;
  for (size_t k = 0; k < todo.size(); ++k) {
    const std::vector<uint32_t> tuple = todo[k];
    TreeAutomorphism::State s;
    Permutation total(d);
    for (uint32_t q : tuple) total = total * g.state(q).label;
    s.label = std::move(total);
    s.next.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
      std::vector<uint32_t> child(tuple.size());
      int j = i;
      for (size_t m = 0; m < tuple.size(); ++m) {
        child[m] = g.state(tuple[m]).next[static_cast<size_t>(j)];
        j = g.state(tuple[m]).label(j);
      }
      s.next.push_back(intern(std::move(child)));
    }
    st.push_back(std::move(s));
  }
  return canonical_from_raw(d, std::move(st), 0, true);
}

// --- predicates ------------------------------------------------------------------

bool equals(const TreeAutomorphism& g, const TreeAutomorphism& h) {
  if (g.degree() != h.degree()) return false;
  std::unordered_set<uint64_t> seen;
  std::deque<std::pair<uint32_t, uint32_t>> queue;
  queue.emplace_back(g.root(), h.root());
  seen.insert(pair_key(g.root(), h.root()));
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    if (!(g.state(a).label == h.state(b).label)) return false;
    for (int i = 0; i < g.degree(); ++i) {
      uint32_t ta = g.state(a).next[static_cast<size_t>(i)];
      uint32_t tb = h.state(b).next[static_cast<size_t>(i)];
      if (seen.insert(pair_key(ta, tb)).second) queue.emplace_back(ta, tb);
    }
  }
  return true;
}

bool in_stabilizer(const TreeAutomorphism& g, int n) {
  if (n < 0) throw domain_error("stabilizer level must be >= 0");
  std::vector<uint32_t> level{g.root()};
  for (int depth = 0; depth < n; ++depth) {
    std::vector<uint32_t> next_level;
    std::unordered_set<uint32_t> dedup;
    for (uint32_t q : level) {
      if (!g.state(q).label.is_identity()) return false;
      for (uint32_t t : g.state(q).next)
        if (dedup.insert(t).second) next_level.push_back(t);
    }
    level.swap(next_level);
  }
  return true;
}

bool is_level_transitive(const TreeAutomorphism& g, int max_level) {
  if (max_level < 0) throw domain_error("level must be >= 0");
  double size = 1;
  for (int n = 1; n <= max_level; ++n) {
    size *= g.degree();
    if (size > 1e8) throw domain_error("transitivity check level too deep");
    const size_t want = static_cast<size_t>(size);
    Vertex start(static_cast<size_t>(n), 0);
    Vertex v = treeverb::apply(g, start);
    size_t orbit = 1;
    while (v != start) {
      v = treeverb::apply(g, v);
      if (++orbit > want) break;
    }
    if (orbit != want) return false;
  }
  return true;
}

// --- portraits ----------------------------------------------------------------------

Portrait truncate(const TreeAutomorphism& g, int depth) {
  if (depth < 0) throw domain_error("portrait depth must be >= 0");
  const int d = g.degree();
  std::vector<Permutation> labels;
  labels.reserve(Portrait::vertex_count(d, depth));
  std::vector<uint32_t> level{g.root()};
  for (int ell = 0; ell < depth; ++ell) {
    std::vector<uint32_t> next_level;
    next_level.reserve(level.size() * static_cast<size_t>(d));
    for (uint32_t q : level) {
      labels.push_back(g.state(q).label);
      for (int i = 0; i < d; ++i) next_level.push_back(g.state(q).next[static_cast<size_t>(i)]);
    }
    level.swap(next_level);
  }
  return Portrait(d, depth, std::move(labels));
}

TreeAutomorphism from_portrait(const Portrait& p) {
  const int d = p.degree();
  const size_t n_vertices = p.size();
  std::vector<TreeAutomorphism::State> st(n_vertices + 1);
  const uint32_t id_state = static_cast<uint32_t>(n_vertices);
  st[id_state].label = Permutation(d);
  st[id_state].next.assign(static_cast<size_t>(d), id_state);
  size_t idx = 0;
  for (int ell = 0; ell + 1 < p.depth(); ++ell) {
    const size_t level_begin = Portrait::level_offset(d, ell);
    const size_t level_end = Portrait::level_offset(d, ell + 1);
    for (idx = level_begin; idx < level_end; ++idx) {
      st[idx].label = p.label(idx);
      for (int i = 0; i < d; ++i)
        st[idx].next.push_back(static_cast<uint32_t>(Portrait::child_index(d, ell, idx, i)));
    }
  }
  if (p.depth() >= 1) {
    for (idx = Portrait::level_offset(d, p.depth() - 1); idx < n_vertices; ++idx) {
      st[idx].label = p.label(idx);
      st[idx].next.assign(static_cast<size_t>(d), id_state);
    }
  }
  if (n_vertices == 0) return TreeAutomorphism::identity(d);
  return canonical_from_raw(d, std::move(st), 0, true);
}

}  // namespace treeverb
