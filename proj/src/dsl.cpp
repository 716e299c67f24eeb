#include "treeverb/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <vector>

#include "treeverb/errors.hpp"

namespace treeverb {

namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;
  int line;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw parse_error(std::string("expected '") + c + "'", line);
  }
  std::string word() {
    skip_ws();
    const size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
           s[pos] != ',' && s[pos] != '(' && s[pos] != ')' && s[pos] != '=' && s[pos] != '[' &&
           s[pos] != ']')
      ++pos;
    if (pos == start) throw parse_error("expected a token", line);
    return s.substr(start, pos - start);
  }
  int integer() {
    const std::string w = word();
    try {
      size_t used = 0;
      const int v = std::stoi(w, &used);
      if (used != w.size()) throw std::invalid_argument(w);
      return v;
    } catch (const std::exception&) {
      throw parse_error("expected an integer, got '" + w + "'", line);
    }
  }
};

Permutation parse_perm(Cursor& c, int degree) {
  c.skip_ws();
  if (c.eat('[')) {
    std::vector<int> images;
    while (!c.eat(']')) {
      if (c.done()) throw parse_error("unterminated permutation", c.line);
      images.push_back(c.integer());
    }
    if (static_cast<int>(images.size()) != degree)
      throw parse_error("permutation has " + std::to_string(images.size()) +
                            " images, degree is " + std::to_string(degree),
                        c.line);
    for (int v : images)
      if (v < 1 || v > degree) throw parse_error("permutation image out of range", c.line);
    try {
      return Permutation::from_one_based(images);
    } catch (const domain_error& e) {
      throw parse_error(e.what(), c.line);
    }
  }
  if (c.word() == "id") return Permutation(degree);
  throw parse_error("expected a permutation ('id' or '[i j ...]')", c.line);
}

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  for (char ch : name)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  return true;
}

std::string strip_comment(const std::string& line) {
  const size_t hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

TreeAutomorphism parse_automaton(const std::string& text) {
  struct RawState {
    std::string name;
    std::vector<std::string> children;
    Permutation label;
    int line;
  };
  int degree = 0;
  std::string root_name;
  bool have_root = false;
  std::vector<RawState> raw;
  std::map<std::string, uint32_t> names;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = strip_comment(line);
    Cursor c{stripped, 0, line_no};
    if (c.done()) continue;
    const std::string head = c.word();
    if (head == "degree") {
      if (degree) throw parse_error("duplicate degree line", line_no);
      const int d = c.integer();
      if (d < 2 || d > 64) throw parse_error("degree must be in 2..64", line_no);
      degree = d;
    } else if (head == "state") {
      if (!degree) throw parse_error("degree must come before statedefs", line_no);
      RawState st;
      st.line = line_no;
      st.name = c.word();
      if (!valid_name(st.name)) throw parse_error("bad state name '" + st.name + "'", line_no);
      if (names.contains(st.name))
        throw parse_error("duplicate state '" + st.name + "'", line_no);
      c.expect('=');
      c.expect('(');
      while (!c.eat(')')) {
        if (c.done()) throw parse_error("unterminated child list", line_no);
        st.children.push_back(c.word());
        c.eat(',');
      }
      if (static_cast<int>(st.children.size()) != degree)
        throw parse_error("state has " + std::to_string(st.children.size()) +
                              " children, degree is " + std::to_string(degree),
                          line_no);
      st.label = parse_perm(c, degree);
      if (!c.done()) throw parse_error("trailing text after statedef", line_no);
      names.emplace(st.name, static_cast<uint32_t>(raw.size()));
      raw.push_back(std::move(st));
    } else if (head == "root") {
      if (have_root) throw parse_error("duplicate root line", line_no);
      if (!degree) throw parse_error("degree must come before root", line_no);
      root_name = c.word();
      have_root = true;
      if (!c.done()) throw parse_error("trailing text after root", line_no);
    } else {
      throw parse_error("unknown directive '" + head + "'", line_no);
    }
  }
  if (!degree) throw parse_error("missing degree line");
  if (!have_root) throw parse_error("missing root line");

  std::vector<TreeAutomorphism::State> states;
  const uint32_t id_state = static_cast<uint32_t>(raw.size());
  for (const auto& st : raw) {
    TreeAutomorphism::State s;
    s.label = st.label;
    for (const auto& child : st.children) {
      if (child == "1") {
        s.next.push_back(id_state);
      } else {
        auto it = names.find(child);
        if (it == names.end())
          throw parse_error("reference to undefined state '" + child + "'", st.line);
        s.next.push_back(it->second);
      }
    }
    states.push_back(std::move(s));
  }
  TreeAutomorphism::State id;
  id.label = Permutation(degree);
  id.next.assign(static_cast<size_t>(degree), id_state);
  states.push_back(std::move(id));

  uint32_t root;
  if (root_name == "1") {
    root = id_state;
  } else {
    auto it = names.find(root_name);
    if (it == names.end()) throw parse_error("root references undefined state '" + root_name + "'");
    root = it->second;
  }
  return TreeAutomorphism::from_states(degree, std::move(states), root);
}

std::string serialize_automaton(const TreeAutomorphism& g) {
  // the canonical identity state, if present, is referenced as "1"
  uint32_t id_state = UINT32_MAX;
  if (!g.is_identity()) {
    for (uint32_t q = 0; q < g.state_count(); ++q) {
      const auto& s = g.state(q);
      if (s.label.is_identity() &&
          std::all_of(s.next.begin(), s.next.end(), [&](uint32_t t) { return t == q; })) {
        id_state = q;
        break;
      }
    }
  }
  std::ostringstream os;
  os << "degree " << g.degree() << '\n';
  for (uint32_t q = 0; q < g.state_count(); ++q) {
    if (q == id_state) continue;
    os << "state s" << q << " = (";
    const auto& s = g.state(q);
    for (size_t i = 0; i < s.next.size(); ++i) {
      if (i) os << ", ";
      if (s.next[i] == id_state)
        os << '1';
      else
        os << 's' << s.next[i];
    }
    os << ") " << s.label.to_string() << '\n';
  }
  os << "root s" << g.root() << '\n';
  return os.str();
}

SpineSpec parse_spine_spec(const std::string& text) {
  SpineSpec spec;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool in_period = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = strip_comment(line);
    Cursor c{stripped, 0, line_no};
    if (c.done()) continue;
    const std::string head = c.word();
    if (head == "degree") {
      if (spec.degree) throw parse_error("duplicate degree line", line_no);
      const int d = c.integer();
      if (d < 2 || d > 64) throw parse_error("degree must be in 2..64", line_no);
      spec.degree = d;
    } else if (head == "pre" || head == "per") {
      if (!spec.degree) throw parse_error("degree must come first", line_no);
      if (head == "pre" && in_period)
        throw parse_error("pre lines must precede per lines", line_no);
      if (head == "per") in_period = true;
      Permutation p = parse_perm(c, spec.degree);
      if (!p.is_full_cycle()) throw parse_error("spine labels must be d-cycles", line_no);
      (head == "pre" ? spec.pre : spec.per).push_back(std::move(p));
      if (!c.done()) throw parse_error("trailing text after permutation", line_no);
    } else {
      throw parse_error("unknown directive '" + head + "'", line_no);
    }
  }
  if (!spec.degree) throw parse_error("missing degree line");
  if (spec.per.empty()) throw parse_error("spine needs at least one per line");
  return spec;
}

std::string serialize_spine_spec(const SpineSpec& spec) {
  std::ostringstream os;
  os << "degree " << spec.degree << '\n';
  for (const auto& p : spec.pre) os << "pre " << p.to_string() << '\n';
  for (const auto& p : spec.per) os << "per " << p.to_string() << '\n';
  return os.str();
}

}  // namespace treeverb
