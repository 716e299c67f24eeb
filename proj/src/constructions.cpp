#include "treeverb/constructions.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>

#include "treeverb/errors.hpp"
#include "treeverb/portrait.hpp"

namespace treeverb {

namespace {

void require_spec(const SpineSpec& spec) {
  if (spec.degree < 2 || spec.degree > 64) throw domain_error("tree degree must be in 2..64");
  if (spec.per.empty()) throw domain_error("spine period must be nonempty");
  for (const auto& lists : {&spec.pre, &spec.per})
    for (const auto& p : *lists) {
      if (p.degree() != spec.degree) throw domain_error("spine label degree mismatch");
      if (!p.is_full_cycle()) throw domain_error("spine labels must be d-cycles");
    }
}

bool congruent(const TreeAutomorphism& g, const TreeAutomorphism& h, int depth) {
  return truncate(g, depth) == truncate(h, depth);
}

}  // namespace

TreeAutomorphism adding_machine(int degree) {
  if (degree < 2) throw domain_error("tree degree must be >= 2");
  std::vector<TreeAutomorphism::State> st(2);
  st[0].label = Permutation::full_cycle(degree);
  st[0].next.assign(static_cast<size_t>(degree), 1);
  st[0].next.back() = 0;
  st[1].label = Permutation(degree);
  st[1].next.assign(static_cast<size_t>(degree), 1);
  return TreeAutomorphism::from_states(degree, std::move(st), 0);
}

TreeAutomorphism spine_automaton(const SpineSpec& spec) {
  require_spec(spec);
  const int d = spec.degree;
  const size_t n_pre = spec.pre.size(), n_per = spec.per.size();
  const size_t n_spine = n_pre + n_per;
  std::vector<TreeAutomorphism::State> st(n_spine + 1);
  const uint32_t id_state = static_cast<uint32_t>(n_spine);
  for (size_t k = 0; k < n_spine; ++k) {
    st[k].label = k < n_pre ? spec.pre[k] : spec.per[k - n_pre];
    st[k].next.assign(static_cast<size_t>(d), id_state);
    st[k].next.back() = static_cast<uint32_t>(k + 1 < n_spine ? k + 1 : n_pre);
  }
  st[id_state].label = Permutation(d);
  st[id_state].next.assign(static_cast<size_t>(d), id_state);
  return TreeAutomorphism::from_states(d, std::move(st), 0);
}

SpineSpec spine_spec_of(const TreeAutomorphism& g) {
  const int d = g.degree();
  // locate the identity state, if any
  uint32_t id_state = UINT32_MAX;
  for (uint32_t q = 0; q < g.state_count(); ++q) {
    const auto& s = g.state(q);
    if (!s.label.is_identity()) continue;
    if (std::all_of(s.next.begin(), s.next.end(), [&](uint32_t t) { return t == q; }))
      id_state = q;
  }
  std::vector<uint32_t> path;
  std::map<uint32_t, size_t> seen;
  uint32_t q = g.root();
  while (!seen.contains(q)) {
    seen.emplace(q, path.size());
    path.push_back(q);
    const auto& s = g.state(q);
    if (!s.label.is_full_cycle()) throw domain_error("not in spine form: label not a d-cycle");
    for (int i = 0; i + 1 < d; ++i)
      if (s.next[static_cast<size_t>(i)] != id_state)
        throw domain_error("not in spine form: off-spine section not identity");
    q = s.next.back();
  }
  const size_t cut = seen.at(q);
  SpineSpec spec;
  spec.degree = d;
  for (size_t k = 0; k < cut; ++k) spec.pre.push_back(g.state(path[k]).label);
  for (size_t k = cut; k < path.size(); ++k) spec.per.push_back(g.state(path[k]).label);
  return spec;
}

TreeAutomorphism conjugator_to_odometer(const SpineSpec& spec) {
  require_spec(spec);
  const int d = spec.degree;
  const Permutation target = Permutation::full_cycle(d);
  // alpha fixes d-1 and intertwines sigma with (1 2 ... d):
  // alpha(sigma^m(d-1)) = target^m(d-1) = (d-1+m) mod d
  auto intertwiner = [&](const Permutation& sigma) {
    std::vector<uint8_t> img(static_cast<size_t>(d));
    int p = d - 1;
    for (int m = 0; m < d; ++m) {
      img[static_cast<size_t>(p)] = static_cast<uint8_t>((d - 1 + m) % d);
      p = sigma(p);
    }
    return Permutation::from_images(std::move(img));
  };
  const size_t n_pre = spec.pre.size(), n_spine = n_pre + spec.per.size();
  std::vector<TreeAutomorphism::State> st(n_spine);
  for (size_t k = 0; k < n_spine; ++k) {
    st[k].label = intertwiner(k < n_pre ? spec.pre[k] : spec.per[k - n_pre]);
    st[k].next.assign(static_cast<size_t>(d),
                      static_cast<uint32_t>(k + 1 < n_spine ? k + 1 : n_pre));
  }
  TreeAutomorphism x = TreeAutomorphism::from_states(d, std::move(st), 0);
  if (!equals(conjugate(spine_automaton(spec), x), adding_machine(d)))
    throw std::logic_error("odometer conjugator failed self-check");
  return x;
}

TreeAutomorphism order_two_rep(const ParitySequence& target, int degree) {
  if (degree < 3) throw domain_error("order-two representative needs degree >= 3");
  if (target.is_zero()) return TreeAutomorphism::identity(degree);
  const Permutation swap01 = Permutation::cycle(degree, std::array{0, 1});
  const size_t n_pre = target.preperiod().size();
  const size_t n_spine = n_pre + target.period().size();
  std::vector<TreeAutomorphism::State> st(n_spine + 1);
  const uint32_t id_state = static_cast<uint32_t>(n_spine);
  for (size_t k = 0; k < n_spine; ++k) {
    st[k].label = target.bit(k) ? swap01 : Permutation(degree);
    st[k].next.assign(static_cast<size_t>(degree), id_state);
    st[k].next.back() = static_cast<uint32_t>(k + 1 < n_spine ? k + 1 : n_pre);
  }
  st[id_state].label = Permutation(degree);
  st[id_state].next.assign(static_cast<size_t>(degree), id_state);
  TreeAutomorphism a = TreeAutomorphism::from_states(degree, std::move(st), 0);
  if (!equals(compose(a, a), TreeAutomorphism::identity(degree)) || parity_sequence(a) != target)
    throw std::logic_error("order-two representative failed self-check");
  return a;
}

namespace {

std::mutex factor_check_mutex;
std::set<int> factor_checked;

Permutation first_dcycle_complement(const Permutation& sigma) {
  for (const Permutation& alpha : all_full_cycles(sigma.degree()))
    if ((alpha.inverse() * sigma).is_full_cycle()) return alpha;
  throw domain_error("even permutation admits no two-d-cycle factorization");
}

}  // namespace

std::pair<Permutation, Permutation> two_dcycle_factorization(const Permutation& sigma) {
  const int d = sigma.degree();
  if (d < 3 || d % 2 == 0) throw domain_error("two-d-cycle factorization needs odd degree >= 3");
  if (!sigma.is_even()) throw domain_error("only even permutations factor into two d-cycles");
  if (d <= 9) {
    std::scoped_lock lock(factor_check_mutex);
    if (!factor_checked.contains(d)) {
      for (const Permutation& p : all_permutations(d))
        if (p.is_even()) first_dcycle_complement(p);
      factor_checked.insert(d);
    }
  }
  const Permutation alpha = first_dcycle_complement(sigma);
  const Permutation target = alpha.inverse() * sigma;
  // beta maps the alpha-cycle through 0 onto the target-cycle through 0
  std::vector<uint8_t> img(static_cast<size_t>(d));
  int a = 0, b = 0;
  for (int m = 0; m < d; ++m) {
    img[static_cast<size_t>(a)] = static_cast<uint8_t>(b);
    a = alpha(a);
    b = target(b);
  }
  const Permutation beta = Permutation::from_images(std::move(img));
  if (!(alpha * alpha.conjugated_by(beta) == sigma))
    throw std::logic_error("two-d-cycle factorization failed self-check");
  return {alpha, beta};
}

namespace {

// One level of the transitive-pair recursion. Returns the spine labels of u
// (outermost first) and the conjugator y with u * u^y = g mod St(levels).
//
// With u = (1, ..., 1, u_1)alpha and y = (x_1, ..., x_d)beta:
//   (u u^y)_i = u_i * x_{m(i)}^{-1} * u_{m(i)} * x_{nu(i)'s m-image...}
// written in the z-variables z_i = x_{m(i)} with m(i) = beta^{-1}(alpha(i)),
// nu(i) = m^{-1}(alpha(m(i))):
//   E_i:  g_i = u_1^[i = d-1] * z_i^{-1} * u_1^[m(i) = d-1] * z_{nu(i)}
// Traversing the nu-orbit from i = d-1 and multiplying the E_i telescopes to
//   u_1 * u_1^{z_{d-1}} = g_{d-1} g_{nu(d-1)} ... g_{nu^{d-1}(d-1)} =: g'
// which is the same problem one level down; the remaining E_i define the z's
// exactly by back-substitution (the final equation holds mod St(levels - 1)).
std::pair<std::vector<Permutation>, TreeAutomorphism> decompose_levels(const TreeAutomorphism& g,
                                                                       int levels) {
  const int d = g.degree();
  if (levels == 0) return {{}, TreeAutomorphism::identity(d)};
  const Permutation sigma = g.root_label();
  const auto [alpha, beta] = two_dcycle_factorization(sigma);
  const Permutation m = alpha * beta.inverse();           // m(i) = beta^{-1}(alpha(i))
  const Permutation nu = m * alpha * m.inverse();         // nu(i) = m^{-1}(alpha(m(i)))

  std::vector<TreeAutomorphism> sec;
  sec.reserve(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) sec.push_back(section_at(g, Vertex{static_cast<uint8_t>(i)}));

  std::vector<int> orbit{d - 1};
  for (int j = 1; j < d; ++j) orbit.push_back(nu(orbit.back()));

  TreeAutomorphism g_next = sec[static_cast<size_t>(orbit[0])];
  for (int j = 1; j < d; ++j) g_next = compose(g_next, sec[static_cast<size_t>(orbit[j])]);

  auto [tail, z] = decompose_levels(g_next, levels - 1);

  SpineSpec u1_spec{d, tail, {Permutation::full_cycle(d)}};
  const TreeAutomorphism u1 = spine_automaton(u1_spec);
  const TreeAutomorphism u1_inv = inverse(u1);

  std::vector<TreeAutomorphism> x(static_cast<size_t>(d), TreeAutomorphism::identity(d));
  for (int j = 0; j < d; ++j) {
    x[static_cast<size_t>(m(orbit[static_cast<size_t>(j)]))] = z;
    if (j + 1 == d) break;
    const int i = orbit[static_cast<size_t>(j)];
    TreeAutomorphism next_z = m(i) == d - 1 ? compose(u1_inv, z) : z;
    if (i == d - 1) next_z = compose(next_z, u1_inv);
    z = compose(next_z, sec[static_cast<size_t>(i)]);
  }

  std::vector<Permutation> labels{alpha};
  labels.insert(labels.end(), tail.begin(), tail.end());
  return {std::move(labels), TreeAutomorphism::from_sections(x, beta)};
}

}  // namespace

DecompositionWitness decompose_transitive_pair(const TreeAutomorphism& g, int depth) {
  const int d = g.degree();
  if (d < 3 || d % 2 == 0) throw domain_error("transitive-pair decomposition needs odd degree");
  if (depth < 1) throw domain_error("decomposition depth must be >= 1");
  if (!in_ker_parity(g)) throw domain_error("element is outside the parity kernel");
  auto [labels, y] = decompose_levels(g, depth);
  const TreeAutomorphism u = spine_automaton({d, labels, {Permutation::full_cycle(d)}});
  if (!congruent(compose(u, conjugate(u, y)), g, depth))
    throw std::logic_error("transitive-pair decomposition failed self-check");
  return {u, y, depth, g};
}

namespace {

std::optional<TreeAutomorphism> try_solve_conjugacy(const TreeAutomorphism& g,
                                                    const TreeAutomorphism& h, int depth) {
  const int d = g.degree();
  if (depth <= 0) return TreeAutomorphism::identity(d);
  const Permutation sigma = g.root_label();
  const Permutation rho = h.root_label();

  std::vector<TreeAutomorphism> gsec, hsec;
  for (int i = 0; i < d; ++i) {
    gsec.push_back(section_at(g, Vertex{static_cast<uint8_t>(i)}));
    hsec.push_back(section_at(h, Vertex{static_cast<uint8_t>(i)}));
  }

  // cycles of sigma, each listed from its smallest point
  std::vector<std::vector<int>> cycles;
  std::vector<bool> used(static_cast<size_t>(d), false);
  for (int j = 0; j < d; ++j) {
    if (used[static_cast<size_t>(j)]) continue;
    std::vector<int> cyc;
    for (int p = j; !used[static_cast<size_t>(p)]; p = sigma(p)) {
      used[static_cast<size_t>(p)] = true;
      cyc.push_back(p);
    }
    cycles.push_back(std::move(cyc));
  }

  for (const Permutation& xi : all_permutations(d)) {
    if (!(sigma.conjugated_by(xi) == rho)) continue;
    // per cycle: x_{sigma(j)} = g_j^{-1} x_j h_{xi(j)} chains the unknowns;
    // closing the cycle needs x_{j0} to conjugate the g-product to the
    // h-product one level down. Cycles touch disjoint unknowns, so each is
    // decided independently.
    std::vector<TreeAutomorphism> x(static_cast<size_t>(d), TreeAutomorphism::identity(d));
    bool ok = true;
    for (const auto& cyc : cycles) {
      TreeAutomorphism gprod = gsec[static_cast<size_t>(cyc[0])];
      TreeAutomorphism hprod = hsec[static_cast<size_t>(xi(cyc[0]))];
      for (size_t k = 1; k < cyc.size(); ++k) {
        gprod = compose(gprod, gsec[static_cast<size_t>(cyc[k])]);
        hprod = compose(hprod, hsec[static_cast<size_t>(xi(cyc[k]))]);
      }
      auto anchor = try_solve_conjugacy(gprod, hprod, depth - 1);
      if (!anchor) {
        ok = false;
        break;
      }
      x[static_cast<size_t>(cyc[0])] = *anchor;
      for (size_t k = 0; k + 1 < cyc.size(); ++k) {
        const int j = cyc[k];
        x[static_cast<size_t>(cyc[k + 1])] =
            compose(compose(inverse(gsec[static_cast<size_t>(j)]), x[static_cast<size_t>(j)]),
                    hsec[static_cast<size_t>(xi(j))]);
      }
    }
    if (ok) return TreeAutomorphism::from_sections(x, xi);
  }
  return std::nullopt;
}

}  // namespace

TreeAutomorphism solve_conjugacy(const TreeAutomorphism& g, const TreeAutomorphism& h, int depth) {
  if (g.degree() != h.degree()) throw domain_error("degree mismatch");
  if (depth < 0) throw domain_error("depth must be >= 0");
  if (g.degree() > 9) throw domain_error("conjugacy search supported for degree <= 9");
  auto x = try_solve_conjugacy(g, h, depth);
  if (!x) throw domain_error("elements are not conjugate at this depth");
  if (!congruent(conjugate(g, *x), h, depth))
    throw std::logic_error("conjugacy solver failed self-check");
  return *x;
}

CommutatorForm commutator_form(const TreeAutomorphism& g, int depth) {
  const int d = g.degree();
  const DecompositionWitness w = decompose_transitive_pair(g, depth);
  const TreeAutomorphism t = adding_machine(d);
  // u = t^x for x = inverse(conjugator_to_odometer(spine of u)), so
  // g = t^x * t^{x y} and [t^{zx}, x^{-1} z^{-1} x y] = g mod St(depth)
  // where z conjugates t^{-1} to t at this depth.
  const TreeAutomorphism x = inverse(conjugator_to_odometer(spine_spec_of(w.u)));
  const TreeAutomorphism z = solve_conjugacy(inverse(t), t, depth);
  CommutatorForm form;
  form.a = compose(z, x);
  form.b = compose(compose(compose(inverse(x), inverse(z)), x), w.y);
  form.depth = depth;
  if (!congruent(commutator(conjugate(t, form.a), form.b), g, depth))
    throw std::logic_error("commutator form failed self-check");
  return form;
}

namespace {

// x with t * t^x = g mod St(levels) on the binary tree, recursing on
// t * t^{x_0} = g_1 g_0 mod St(levels - 1), x_1 = x_0 t^{-1} g_1.
TreeAutomorphism binary_product_conjugator(const TreeAutomorphism& g,
                                           const TreeAutomorphism& t, int levels) {
  if (levels == 0) return TreeAutomorphism::identity(2);
  const TreeAutomorphism g0 = section_at(g, Vertex{0});
  const TreeAutomorphism g1 = section_at(g, Vertex{1});
  const TreeAutomorphism x0 = binary_product_conjugator(compose(g1, g0), t, levels - 1);
  const TreeAutomorphism x1 = compose(compose(x0, inverse(t)), g1);
  return TreeAutomorphism::from_sections({x0, x1}, Permutation(2));
}

}  // namespace

TreeAutomorphism binary_commutator_form(const TreeAutomorphism& g, int depth) {
  if (g.degree() != 2) throw domain_error("binary commutator form needs degree 2");
  if (depth < 1) throw domain_error("depth must be >= 1");
  if (!in_ker_parity(g)) throw domain_error("element is outside the parity kernel");
  const TreeAutomorphism t = adding_machine(2);
  const TreeAutomorphism x = binary_product_conjugator(g, t, depth);
  const TreeAutomorphism y = solve_conjugacy(inverse(t), t, depth);
  // [t^{-1}, yx] = t * (t^{-1})^{yx} = t * t^{x} ... mod St(depth)
  const TreeAutomorphism h = compose(y, x);
  if (!congruent(commutator(inverse(t), h), g, depth))
    throw std::logic_error("binary commutator form failed self-check");
  return h;
}

// --- endomorphisms ------------------------------------------------------------

Endomorphism Endomorphism::identity_map() {
  Endomorphism e;
  e.kind_ = Kind::kIdentity;
  e.name_ = "identity";
  return e;
}

Endomorphism Endomorphism::shift() {
  Endomorphism e;
  e.kind_ = Kind::kShift;
  e.name_ = "shift";
  return e;
}

Endomorphism Endomorphism::level_floor() {
  Endomorphism e;
  e.kind_ = Kind::kLevelFloor;
  e.name_ = "level-floor";
  return e;
}

Endomorphism Endomorphism::indicator(const TreeAutomorphism& involution, int level) {
  if (level < 0) throw domain_error("indicator level must be >= 0");
  if (!equals(compose(involution, involution), TreeAutomorphism::identity(involution.degree())))
    throw domain_error("indicator target must square to the identity");
  Endomorphism e;
  e.kind_ = Kind::kIndicator;
  e.name_ = "indicator-" + std::to_string(level);
  e.involution_ = involution;
  e.level_ = level;
  return e;
}

Endomorphism Endomorphism::lifted(Endomorphism inner) {
  Endomorphism e;
  e.kind_ = Kind::kLifted;
  e.name_ = "lifted-" + inner.name_;
  e.inner_ = std::make_shared<Endomorphism>(std::move(inner));
  return e;
}

TreeAutomorphism Endomorphism::operator()(const TreeAutomorphism& g) const {
  switch (kind_) {
    case Kind::kIdentity:
      return g;
    case Kind::kShift:
      return shift_endo(g);
    case Kind::kLevelFloor:
      return treeverb::level_floor(g);
    case Kind::kIndicator: {
      if (involution_.degree() != g.degree()) throw domain_error("degree mismatch");
      return epsilon(g, level_) == 0 ? TreeAutomorphism::identity(g.degree()) : involution_;
    }
    case Kind::kLifted:
      return lift_endo(*inner_, g);
  }
  throw std::logic_error("unreachable");
}

TreeAutomorphism shift_endo(const TreeAutomorphism& g) {
  return conjugate_rooted(g, Permutation::full_cycle(g.degree()).inverse());
}

TreeAutomorphism level_floor(const TreeAutomorphism& g) {
  return TreeAutomorphism::rooted(g.root_label());
}

TreeAutomorphism lift_endo(const Endomorphism& inner, const TreeAutomorphism& g) {
  const int d = g.degree();
  std::vector<TreeAutomorphism> sections;
  sections.reserve(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i)
    sections.push_back(inner(section_at(g, Vertex{static_cast<uint8_t>(i)})));
  return TreeAutomorphism::from_sections(sections, g.root_label());
}

// --- section-wise tools ----------------------------------------------------------

std::vector<TreeAutomorphism> split_factorization(const TreeAutomorphism& h, int depth) {
  const int d = h.degree();
  if (!in_chain(h, 2)) throw domain_error("split factorization needs a chain-2 element");
  std::vector<TreeAutomorphism> prefix;  // prefix[j] = h_0 h_1 ... h_j
  for (int i = 0; i < d; ++i) {
    const TreeAutomorphism sec = section_at(h, Vertex{static_cast<uint8_t>(i)});
    prefix.push_back(i == 0 ? sec : compose(prefix.back(), sec));
  }
  std::vector<TreeAutomorphism> factors;
  const TreeAutomorphism one = TreeAutomorphism::identity(d);
  for (int j = 0; j + 1 < d; ++j) {
    std::vector<TreeAutomorphism> sections(static_cast<size_t>(d), one);
    sections[static_cast<size_t>(j)] = prefix[static_cast<size_t>(j)];
    sections[static_cast<size_t>(j) + 1] = inverse(prefix[static_cast<size_t>(j)]);
    factors.push_back(TreeAutomorphism::from_sections(sections, Permutation(d)));
  }
  std::vector<TreeAutomorphism> last(static_cast<size_t>(d), one);
  last.back() = prefix.back();
  factors.push_back(TreeAutomorphism::from_sections(last, Permutation(d)));

  TreeAutomorphism product = factors[0];
  for (size_t k = 1; k < factors.size(); ++k) product = compose(product, factors[k]);
  if (!congruent(product, h, depth)) throw std::logic_error("split factorization failed self-check");
  return factors;
}

TreeAutomorphism signed_section_conjugate(const TreeAutomorphism& g, const std::vector<int>& signs,
                                          int depth) {
  const int d = g.degree();
  if (static_cast<int>(signs.size()) != d) throw domain_error("need one sign per child");
  if (depth < 1) throw domain_error("depth must be >= 1");
  if (!in_stabilizer(g, 1)) throw domain_error("element must fix the first level");
  std::vector<TreeAutomorphism> conjugators;
  conjugators.reserve(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    const int s = signs[static_cast<size_t>(i)];
    if (s != 1 && s != -1) throw domain_error("signs must be +1 or -1");
    const TreeAutomorphism sec = section_at(g, Vertex{static_cast<uint8_t>(i)});
    conjugators.push_back(s == 1 ? TreeAutomorphism::identity(d)
                                 : solve_conjugacy(sec, inverse(sec), depth - 1));
  }
  const TreeAutomorphism x = TreeAutomorphism::from_sections(conjugators, Permutation(d));
  const TreeAutomorphism result = conjugate(g, x);
  for (int i = 0; i < d; ++i) {
    const Vertex v{static_cast<uint8_t>(i)};
    if (!congruent(section_at(result, v),
                   power(section_at(g, v), signs[static_cast<size_t>(i)]), depth - 1))
      throw std::logic_error("signed section conjugate failed self-check");
  }
  return result;
}

}  // namespace treeverb
