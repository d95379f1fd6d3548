#include "flagnest/dynkin.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <queue>

#include "flagnest/errors.hpp"

namespace flagnest {

char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
    case Family::G2: return 'G';
  }
  return '?';
}

namespace {

void validate(Family f, int r) {
  bool ok = false;
  switch (f) {
    case Family::A: ok = r >= 1; break;
    case Family::B:
    case Family::C: ok = r >= 2; break;
    case Family::D: ok = r >= 3; break;
    case Family::G2: ok = r == 2; break;
  }
  if (!ok)
    throw UnsupportedInput(std::string("invalid diagram ") + family_letter(f) + std::to_string(r));
}

}  // namespace

CanonicalForm canonical_form(Family family, int rank) {
  validate(family, rank);
  std::vector<int> id(static_cast<std::size_t>(rank));
  std::iota(id.begin(), id.end(), 1);
  if (family == Family::C && rank == 2) return {DynkinDiagram::make(Family::B, 2), {2, 1}};
  if (family == Family::D && rank == 3) return {DynkinDiagram::make(Family::A, 3), {2, 1, 3}};
  return {DynkinDiagram::make(family, rank), id};
}

DynkinDiagram DynkinDiagram::make(Family family, int rank) {
  validate(family, rank);
  if (family == Family::C && rank == 2) return DynkinDiagram(Family::B, 2);
  if (family == Family::D && rank == 3) return DynkinDiagram(Family::A, 3);
  return DynkinDiagram(family, rank);
}

std::string DynkinDiagram::name() const {
  if (family_ == Family::G2) return "G2";
  return std::string(1, family_letter(family_)) + std::to_string(rank_);
}

namespace {

std::pair<Family, int> parse_family_rank(std::string_view text) {
  if (text.size() < 2) throw ParseError("malformed diagram: " + std::string(text));
  char letter = text[0];
  std::string_view digits = text.substr(1);
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("malformed diagram: " + std::string(text));
  if (digits.size() > 4) throw UnsupportedInput("diagram rank too large: " + std::string(text));
  int rank = std::stoi(std::string(digits));
  switch (letter) {
    case 'A': return {Family::A, rank};
    case 'B': return {Family::B, rank};
    case 'C': return {Family::C, rank};
    case 'D': return {Family::D, rank};
    case 'G':
      if (rank != 2) throw UnsupportedInput("only G2 is supported among G diagrams");
      return {Family::G2, 2};
    case 'E':
    case 'F': throw UnsupportedInput("exceptional diagram not supported: " + std::string(text));
    default: throw ParseError("malformed diagram: " + std::string(text));
  }
}

}  // namespace

DynkinDiagram DynkinDiagram::parse(std::string_view text) {
  auto [f, r] = parse_family_rank(text);
  return make(f, r);
}

std::string node_set_string(const NodeSet& s) {
  std::string out = "(";
  bool first = true;
  for (int v : s) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(v);
  }
  return out + ")";
}

NodeSet parse_node_set(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw ParseError("unbalanced node list: " + s);
    s = s.substr(1, s.size() - 2);
  }
  if (s.empty()) throw ParseError("empty node list");
  NodeSet out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item.empty() || item.size() > 6 ||
        !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError("malformed node label: '" + item + "'");
    int v = std::stoi(item);
    if (v < 1) throw ParseError("node labels start at 1");
    if (!out.insert(v).second) throw ParseError("repeated node label " + item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string MarkedDiagram::to_string() const { return diagram.name() + node_set_string(marked); }

MarkedDiagram MarkedDiagram::parse(std::string_view text) {
  std::size_t open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    throw ParseError("marked diagram must look like D5(4,5): " + std::string(text));
  auto [f, r] = parse_family_rank(text.substr(0, open));
  NodeSet raw = parse_node_set(text.substr(open));
  CanonicalForm cf = canonical_form(f, r);
  NodeSet marks;
  for (int v : raw) {
    if (v > r) throw UnsupportedInput("node " + std::to_string(v) + " outside " + std::string(text.substr(0, open)));
    marks.insert(cf.relabel[static_cast<std::size_t>(v - 1)]);
  }
  return {cf.diagram, marks};
}

std::string Tag::to_string() const {
  std::string out = diagram.name() + "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out + "]";
}

IntMatrix cartan_matrix(const DynkinDiagram& d) {
  int n = d.rank();
  IntMatrix c(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  if (d.family() == Family::G2) {
    c[0][1] = -3;
    c[1][0] = -1;
    return c;
  }
  int path_end = d.family() == Family::D ? n - 1 : n;
  for (int i = 0; i + 1 < path_end; ++i) c[i][i + 1] = c[i + 1][i] = -1;
  switch (d.family()) {
    case Family::B: c[n - 1][n - 2] = -2; break;
    case Family::C: c[n - 2][n - 1] = -2; break;
    case Family::D: c[n - 1][n - 3] = c[n - 3][n - 1] = -1; break;
    default: break;
  }
  return c;
}

std::vector<int> fundamental_degrees(const DynkinDiagram& d) {
  int n = d.rank();
  std::vector<int> out;
  switch (d.family()) {
    case Family::A:
      for (int i = 2; i <= n + 1; ++i) out.push_back(i);
      break;
    case Family::B:
    case Family::C:
      for (int i = 1; i <= n; ++i) out.push_back(2 * i);
      break;
    case Family::D:
      for (int i = 1; i <= n - 1; ++i) out.push_back(2 * i);
      out.push_back(n);
      break;
    case Family::G2: out = {2, 6}; break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

int coxeter_number(const DynkinDiagram& d) {
  auto deg = fundamental_degrees(d);
  return *std::max_element(deg.begin(), deg.end());
}

RootSystem positive_roots(const DynkinDiagram& d) {
  const int n = d.rank();
  RootSystem rs;
  auto root = [&](auto&& fill) {
    std::vector<int> v(static_cast<std::size_t>(n), 0);
    fill(v);
    rs.positive_roots.push_back(std::move(v));
  };
  // v is 0-based; span(v, a, b, c) sets coefficient c on simple roots a..b (1-based, inclusive).
  auto span = [](std::vector<int>& v, int a, int b, int c) {
    for (int k = a; k <= b; ++k) v[static_cast<std::size_t>(k - 1)] += c;
  };
  switch (d.family()) {
    case Family::A:
      for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) root([&](auto& v) { span(v, i, j, 1); });
      break;
    case Family::B:
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) root([&](auto& v) { span(v, i, j - 1, 1); });
        root([&](auto& v) { span(v, i, n, 1); });
        for (int j = i + 1; j <= n; ++j) root([&](auto& v) { span(v, i, j - 1, 1); span(v, j, n, 2); });
      }
      break;
    case Family::C:
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) root([&](auto& v) { span(v, i, j - 1, 1); });
        root([&](auto& v) { span(v, i, n - 1, 2); span(v, n, n, 1); });
        for (int j = i + 1; j <= n; ++j)
          root([&](auto& v) { span(v, i, j - 1, 1); span(v, j, n - 1, 2); span(v, n, n, 1); });
      }
      break;
    case Family::D:
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) root([&](auto& v) { span(v, i, j - 1, 1); });
        if (i < n) root([&](auto& v) { span(v, i, n - 2, 1); span(v, n, n, 1); });
        for (int j = i + 1; j <= n - 1; ++j)
          root([&](auto& v) { span(v, i, j - 1, 1); span(v, j, n - 2, 2); span(v, n - 1, n, 1); });
      }
      break;
    case Family::G2:
      rs.positive_roots = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}};
      break;
  }
  std::sort(rs.positive_roots.begin(), rs.positive_roots.end());
  return rs;
}

int variety_dimension(const MarkedDiagram& m) {
  if (m.marked.empty()) throw PreconditionError("variety needs at least one marked node");
  for (int v : m.marked)
    if (v < 1 || v > m.diagram.rank()) throw PreconditionError("marked node out of range");
  int count = 0;
  for (const auto& r : positive_roots(m.diagram).positive_roots) {
    bool meets = std::any_of(m.marked.begin(), m.marked.end(),
                             [&](int i) { return r[static_cast<std::size_t>(i - 1)] != 0; });
    if (meets) ++count;
  }
  return count;
}

std::vector<Permutation> diagram_automorphisms(const DynkinDiagram& d) {
  int n = d.rank();
  Permutation id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 1);
  std::vector<Permutation> out{id};
  if (d.family() == Family::A && n >= 2) {
    Permutation flip(id.rbegin(), id.rend());
    out.push_back(flip);
  } else if (d.family() == Family::D && n == 4) {
    std::vector<int> legs{1, 3, 4};
    std::vector<int> img = legs;
    while (std::next_permutation(img.begin(), img.end())) {
      Permutation p = id;
      for (std::size_t k = 0; k < 3; ++k) p[static_cast<std::size_t>(legs[k] - 1)] = img[k];
      out.push_back(p);
    }
  } else if (d.family() == Family::D) {
    Permutation sw = id;
    std::swap(sw[static_cast<std::size_t>(n - 2)], sw[static_cast<std::size_t>(n - 1)]);
    out.push_back(sw);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation r(inner.size());
  for (std::size_t k = 0; k < inner.size(); ++k) r[k] = outer[static_cast<std::size_t>(inner[k] - 1)];
  return r;
}

Permutation inverse(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) r[static_cast<std::size_t>(p[k] - 1)] = static_cast<int>(k) + 1;
  return r;
}

NodeSet apply(const Permutation& p, const NodeSet& s) {
  NodeSet r;
  for (int v : s) r.insert(p[static_cast<std::size_t>(v - 1)]);
  return r;
}

NodeSet Component::parent_nodes() const { return NodeSet(to_parent.begin(), to_parent.end()); }

int Component::local_of(int parent_node) const {
  for (std::size_t k = 0; k < to_parent.size(); ++k)
    if (to_parent[k] == parent_node) return static_cast<int>(k) + 1;
  return 0;
}

bool adjacent(const DynkinDiagram& d, int a, int b) {
  if (a == b) return false;
  return cartan_matrix(d)[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] != 0;
}

NodeSet neighbors(const DynkinDiagram& d, int node) {
  NodeSet r;
  auto c = cartan_matrix(d);
  for (int k = 1; k <= d.rank(); ++k)
    if (k != node && c[static_cast<std::size_t>(node - 1)][static_cast<std::size_t>(k - 1)] != 0) r.insert(k);
  return r;
}

Component identify_subdiagram(const DynkinDiagram& parent, const NodeSet& nodes) {
  if (nodes.empty()) throw PreconditionError("empty subdiagram");
  const IntMatrix c = cartan_matrix(parent);
  auto C = [&](int a, int b) { return c[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)]; };
  std::map<int, std::vector<int>> adj;
  for (int a : nodes) {
    if (a < 1 || a > parent.rank()) throw PreconditionError("node out of range");
    adj[a];
    for (int b : nodes)
      if (a != b && C(a, b) != 0) adj[a].push_back(b);
  }
  {
    std::set<int> seen{*nodes.begin()};
    std::queue<int> q;
    q.push(*nodes.begin());
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (int b : adj[a])
        if (seen.insert(b).second) q.push(b);
    }
    if (seen.size() != nodes.size()) throw PreconditionError("subdiagram is not connected");
  }
  const int k = static_cast<int>(nodes.size());
  std::vector<int> order;
  Family fam = Family::A;

  auto walk = [&](int start, int prev) {
    std::vector<int> path{start};
    int cur = start;
    while (true) {
      int next = 0;
      for (int b : adj[cur])
        if (b != prev) next = b;
      if (next == 0) break;
      path.push_back(next);
      prev = cur;
      cur = next;
    }
    return path;
  };

  int branch = 0;
  for (const auto& [a, nb] : adj)
    if (nb.size() >= 3) branch = a;

  if (k == 1) {
    order = {*nodes.begin()};
  } else if (branch != 0) {
    fam = Family::D;
    std::vector<std::vector<int>> legs;
    for (int b : adj[branch]) legs.push_back(walk(b, branch));
    if (legs.size() != 3) throw InternalInconsistency("unsupported branching subdiagram");
    std::sort(legs.begin(), legs.end(), [](const auto& x, const auto& y) {
      if (x.size() != y.size()) return x.size() > y.size();
      return x.front() < y.front();
    });
    if (legs[1].size() != 1 || legs[2].size() != 1) throw InternalInconsistency("non-classical branching subdiagram");
    order.assign(legs[0].rbegin(), legs[0].rend());
    order.push_back(branch);
    order.push_back(std::min(legs[1][0], legs[2][0]));
    order.push_back(std::max(legs[1][0], legs[2][0]));
  } else {
    std::vector<int> ends;
    for (const auto& [a, nb] : adj)
      if (nb.size() <= 1) ends.push_back(a);
    int multi_a = 0, multi_b = 0, product = 1;
    for (int a : nodes)
      for (int b : adj[a])
        if (C(a, b) * C(b, a) > 1) {
          multi_a = a;
          multi_b = b;
          product = C(a, b) * C(b, a);
        }
    if (product == 1) {
      order = walk(ends.front(), 0);
    } else if (product == 3) {
      fam = Family::G2;
      order = C(multi_a, multi_b) == -3 ? std::vector<int>{multi_a, multi_b} : std::vector<int>{multi_b, multi_a};
    } else {
      if (k == 2) {
        order = C(multi_a, multi_b) == -1 ? std::vector<int>{multi_a, multi_b} : std::vector<int>{multi_b, multi_a};
        fam = Family::B;
      } else {
        int start = 0;
        for (int e : ends) {
          bool incident = e == multi_a || e == multi_b;
          bool other_incident = false;
          for (int e2 : ends)
            if (e2 != e && (e2 == multi_a || e2 == multi_b)) other_incident = true;
          if (!incident && other_incident) start = e;
        }
        if (start == 0) throw InternalInconsistency("double edge not at the end of a subdiagram");
        order = walk(start, 0);
        fam = C(order[static_cast<std::size_t>(k - 2)], order[static_cast<std::size_t>(k - 1)]) == -1 ? Family::B : Family::C;
      }
    }
  }
  Component comp{DynkinDiagram::make(fam, k), order};
  IntMatrix expect = cartan_matrix(comp.diagram);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (expect[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
          C(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]))
        throw InternalInconsistency("subdiagram identification produced a wrong Cartan matrix");
  return comp;
}

std::vector<Component> delete_nodes(const DynkinDiagram& d, const NodeSet& s) {
  for (int v : s)
    if (v < 1 || v > d.rank()) throw PreconditionError("deleted node out of range");
  NodeSet remaining;
  for (int v = 1; v <= d.rank(); ++v)
    if (!s.count(v)) remaining.insert(v);
  std::vector<Component> out;
  while (!remaining.empty()) {
    NodeSet comp{*remaining.begin()};
    std::queue<int> q;
    q.push(*remaining.begin());
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (int b : neighbors(d, a))
        if (remaining.count(b) && comp.insert(b).second) q.push(b);
    }
    for (int v : comp) remaining.erase(v);
    out.push_back(identify_subdiagram(d, comp));
  }
  return out;
}

std::vector<NodeSet> Folding::fibers() const {
  std::map<int, NodeSet> by_target;
  for (std::size_t k = 0; k < node_map.size(); ++k) by_target[node_map[k]].insert(static_cast<int>(k) + 1);
  std::vector<NodeSet> out;
  for (auto& [t, f] : by_target) out.push_back(f);
  return out;
}

Folding make_folding(FoldingKind kind, int n) {
  switch (kind) {
    case FoldingKind::AtoC: {
      if (n < 2) throw PreconditionError("A_{2n-1} -> C_n needs n >= 2");
      std::vector<int> map;
      for (int i = 1; i <= 2 * n - 1; ++i) map.push_back(std::min(i, 2 * n - i));
      return {kind, "A" + std::to_string(2 * n - 1), "C" + std::to_string(n),
              DynkinDiagram::make(Family::A, 2 * n - 1), map, true};
    }
    case FoldingKind::DtoB: {
      if (n < 4) throw PreconditionError("D_n -> B_{n-1} needs n >= 4");
      std::vector<int> map;
      for (int i = 1; i <= n; ++i) map.push_back(std::min(i, n - 1));
      return {kind, "D" + std::to_string(n), "B" + std::to_string(n - 1), DynkinDiagram::make(Family::D, n), map, true};
    }
    case FoldingKind::E6toF4:
      return {kind, "E6", "F4", std::nullopt, {4, 1, 3, 2, 3, 4}, false};
    case FoldingKind::D4toG2:
      return {kind, "D4", "G2", DynkinDiagram::make(Family::D, 4), {1, 2, 1, 1}, false};
    case FoldingKind::B3toG2:
      return {kind, "B3", "G2", DynkinDiagram::make(Family::B, 3), {1, 2, 1}, true};
  }
  throw PreconditionError("unknown folding kind");
}

std::vector<Folding> foldings() {
  return {make_folding(FoldingKind::AtoC, 2), make_folding(FoldingKind::DtoB, 4),
          make_folding(FoldingKind::E6toF4, 0), make_folding(FoldingKind::D4toG2, 0),
          make_folding(FoldingKind::B3toG2, 0)};
}

Tag restriction_tag(const DynkinDiagram& parent, const Component& sub, int external_node) {
  if (external_node < 1 || external_node > parent.rank()) throw PreconditionError("external node out of range");
  if (sub.local_of(external_node) != 0) throw PreconditionError("external node lies in the subdiagram");
  IntMatrix c = cartan_matrix(parent);
  Tag t{sub.diagram, {}};
  for (int p : sub.to_parent)
    t.values.push_back(-c[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(external_node - 1)]);
  return t;
}

bool tag_constant_on(const std::vector<NodeSet>& fibers, const Tag& t) {
  for (const auto& f : fibers) {
    std::set<long> vals;
    for (int v : f) {
      if (v < 1 || v > static_cast<int>(t.values.size())) throw PreconditionError("fiber node outside tag");
      vals.insert(t.values[static_cast<std::size_t>(v - 1)]);
    }
    if (vals.size() > 1) return false;
  }
  return true;
}

bool folding_tag_condition(const Folding& f, const Tag& t) {
  if (!f.usable) throw UnsupportedFolding(f.source_name + " -> " + f.target_name + " carries metadata only");
  if (!f.source || !(*f.source == t.diagram) || t.values.size() != f.node_map.size())
    throw PreconditionError("tag " + t.to_string() + " is not indexed by the nodes of " + f.source_name);
  return tag_constant_on(f.fibers(), t);
}

}  // namespace flagnest
