#include "flagnest/cohomology.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "flagnest/errors.hpp"
#include "flagnest/linalg.hpp"

namespace flagnest {

namespace {

std::string gen(const std::string& stem, int i) { return stem + std::to_string(i); }

bool is_bcd(Family f) { return f == Family::B || f == Family::C || f == Family::D; }

std::optional<VarietyShape> match_with(const DynkinDiagram& d, const NodeSet& m, Shape shape,
                                       const Permutation& sigma) {
  int n = d.rank();
  Family f = d.family();
  if (!d.is_classical()) return std::nullopt;
  switch (shape) {
    case Shape::First:
      if (m == NodeSet{1}) return VarietyShape{shape, d, 0, sigma};
      break;
    case Shape::Last:
      if (is_bcd(f) && m == NodeSet{n}) return VarietyShape{shape, d, 0, sigma};
      break;
    case Shape::FirstR: {
      if (m.size() != 2 || *m.begin() != 1) break;
      int r = *m.rbegin();
      bool ok = f == Family::D ? r <= n - 2 : true;
      if (ok) return VarietyShape{shape, d, r, sigma};
      break;
    }
    case Shape::RLast: {
      if (!is_bcd(f) || m.size() != 2 || *m.rbegin() != n) break;
      return VarietyShape{shape, d, *m.begin(), sigma};
    }
  }
  return std::nullopt;
}

TablePtr first_table(Family f, int n) {
  std::vector<std::pair<std::string, int>> g{{"H", 1}};
  if (f == Family::A) {
    for (int i = 1; i <= n; ++i) g.emplace_back(gen("A", i), i);
  } else {
    int top = f == Family::D ? n - 2 : n - 1;
    for (int i = 1; i <= top; ++i) g.emplace_back(gen("K", 2 * i), 2 * i);
    if (f == Family::D) g.emplace_back("eta", n - 1);
  }
  return make_table(g);
}

TablePtr last_table(int n) {
  std::vector<std::pair<std::string, int>> g;
  for (int i = 1; i <= n; ++i) g.emplace_back(gen("Q", i), i);
  return make_table(g);
}

TablePtr first_r_table(Family f, int n, int r) {
  std::vector<std::pair<std::string, int>> g{{"h", 1}};
  for (int i = 1; i <= r - 1; ++i) g.emplace_back(gen("a", i), i);
  if (f == Family::A) {
    for (int i = 1; i <= n - r + 1; ++i) g.emplace_back(gen("s", i), i);
  } else {
    for (int i = 1; i <= n - r; ++i) g.emplace_back(gen("k", 2 * i), 2 * i);
    if (f == Family::D) g.emplace_back(gen("eta", n - r), n - r);
  }
  return make_table(g);
}

TablePtr r_last_table(int n, int r) {
  std::vector<std::pair<std::string, int>> g;
  for (int i = 1; i <= r; ++i) g.emplace_back(gen("q", i), i);
  for (int i = 1; i <= n - r; ++i) g.emplace_back(gen("b", i), i);
  return make_table(g);
}

std::vector<std::string> names(const std::string& stem, int from, int to, int step = 1) {
  std::vector<std::string> out;
  for (int i = from; i <= to; i += step) out.push_back(gen(stem, i));
  return out;
}

// a(t), s(t), k(t), q(t), b(t), Q(t) over a table.
GradedUniPoly a_poly(const TablePtr& t, int r) { return GradedUniPoly::from_generators(t, names("a", 1, r - 1)); }
GradedUniPoly s_poly(const TablePtr& t, int n, int r) {
  return GradedUniPoly::from_generators(t, names("s", 1, n - r + 1));
}
GradedUniPoly k_poly(const TablePtr& t, int n, int r) {
  return GradedUniPoly::from_generators(t, names("k", 2, 2 * (n - r), 2), 2);
}
GradedUniPoly q_poly(const TablePtr& t, int r) { return GradedUniPoly::from_generators(t, names("q", 1, r)); }
GradedUniPoly b_poly(const TablePtr& t, int n, int r) {
  return GradedUniPoly::from_generators(t, names("b", 1, n - r));
}
GradedUniPoly big_q_poly(const TablePtr& t, int n) { return GradedUniPoly::from_generators(t, names("Q", 1, n)); }

void add_coeff_plus(GradedPresentation& p, const GradedUniPoly& poly, const std::string& expr) {
  for (auto& [deg, c] : poly.coeff_plus()) {
    p.relations.push_back(c);
    p.labels.push_back("Coeff_" + std::to_string(deg) + "(" + expr + ")");
  }
}

void add_relation(GradedPresentation& p, GradedPoly rel) {
  p.labels.push_back(rel.to_string());
  p.relations.push_back(std::move(rel));
}

GradedPresentation build(const VarietyShape& vs) {
  const DynkinDiagram& d = vs.diagram;
  int n = d.rank(), r = vs.r;
  Family f = d.family();
  GradedPresentation p;
  switch (vs.shape) {
    case Shape::First: {
      p.variety = {d, {1}};
      p.generators = first_table(f, n);
      auto H = GradedPoly::generator(p.generators, "H");
      if (f == Family::A) {
        for (int i = 1; i <= n; ++i)
          add_relation(p, GradedPoly::generator(p.generators, gen("A", i)) - H.pow(i) * Rational(i % 2 ? -1 : 1));
        add_relation(p, H.pow(n + 1));
      } else {
        int top = f == Family::D ? n - 2 : n - 1;
        for (int i = 1; i <= top; ++i)
          add_relation(p, GradedPoly::generator(p.generators, gen("K", 2 * i)) - H.pow(2 * i));
        if (f == Family::D) {
          add_relation(p, H.pow(2 * n - 1));
          add_relation(p, H * GradedPoly::generator(p.generators, "eta"));
        } else {
          add_relation(p, H.pow(2 * n));
        }
      }
      break;
    }
    case Shape::Last: {
      p.variety = {d, {n}};
      p.generators = last_table(n);
      auto Q = big_q_poly(p.generators, n);
      add_coeff_plus(p, Q * substitute_neg(Q), "Q(t)Q(-t)");
      if (f == Family::D) add_relation(p, GradedPoly::generator(p.generators, gen("Q", n)));
      break;
    }
    case Shape::FirstR: {
      p.variety = {d, {1, r}};
      p.generators = first_r_table(f, n, r);
      int h = p.generators->index_of("h");
      auto a = a_poly(p.generators, r);
      if (f == Family::A) {
        auto lead = scaled_by_generator(p.generators, UniPoly::from_ints({1, 1}), h);
        add_coeff_plus(p, lead * a * s_poly(p.generators, n, r), "(1+ht)a(t)s(t)");
      } else {
        auto lead = scaled_by_generator(p.generators, UniPoly::from_ints({1, 0, -1}), h);
        add_coeff_plus(p, lead * a * substitute_neg(a) * k_poly(p.generators, n, r), "(1-h^2t^2)a(t)a(-t)k(t)");
        if (f == Family::D) {
          auto rel = GradedPoly::generator(p.generators, h) * GradedPoly::generator(p.generators, gen("eta", n - r));
          if (r >= 2) rel = rel * GradedPoly::generator(p.generators, gen("a", r - 1));
          add_relation(p, rel);
        }
      }
      break;
    }
    case Shape::RLast: {
      p.variety = {d, {r, n}};
      p.generators = r_last_table(n, r);
      auto q = q_poly(p.generators, r);
      auto b = b_poly(p.generators, n, r);
      add_coeff_plus(p, q * substitute_neg(q) * b * substitute_neg(b), "q(t)q(-t)b(t)b(-t)");
      if (f == Family::D)
        add_relation(p, GradedPoly::generator(p.generators, gen("q", r)) *
                            GradedPoly::generator(p.generators, gen("b", n - r)));
      break;
    }
  }
  return p;
}

std::vector<std::vector<Rational>> slice_rows(const GradedPresentation& p, int degree,
                                              const std::map<Exponents, std::size_t>& column) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& rel : p.relations) {
    auto rd = rel.degree();
    if (!rd || *rd > degree) continue;
    for (const auto& m : monomials_of_degree(*p.generators, degree - *rd)) {
      GradedPoly mono(p.generators);
      mono.add_term(m, Rational(1));
      GradedPoly prod = mono * rel;
      std::vector<Rational> row(column.size(), Rational(0));
      for (const auto& [e, c] : prod.terms()) row[column.at(e)] = c;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::map<Exponents, std::size_t> slice_columns(const GradedPresentation& p, int degree) {
  std::map<Exponents, std::size_t> column;
  for (const auto& m : monomials_of_degree(*p.generators, degree)) column.emplace(m, column.size());
  return column;
}

struct ElimKey {
  bool d_type;
  int n;
  auto operator<=>(const ElimKey&) const = default;
};

std::shared_mutex elim_mutex;
std::map<ElimKey, GradedPresentation> elim_memo;

GradedPresentation eliminate_uncached(const GradedPresentation& p, bool d_type, int n) {
  const TablePtr& t = p.generators;
  auto Q = big_q_poly(t, n);
  auto QQ = Q * substitute_neg(Q);
  std::vector<std::optional<GradedPoly>> value(static_cast<std::size_t>(n) + 1);
  auto apply_all = [&](GradedPoly g) {
    for (int j = n; j >= 1; --j)
      if (value[static_cast<std::size_t>(j)]) g = g.substitute(j - 1, *value[static_cast<std::size_t>(j)]);
    return g;
  };
  if (d_type) value[static_cast<std::size_t>(n)] = GradedPoly(t);
  int last_solved = d_type ? (n - 1) / 2 : n / 2;
  for (int i = 1; i <= last_solved; ++i) {
    GradedPoly rel = apply_all(QQ.coeff(2 * i));
    int idx = 2 * i - 1;
    Exponents e(t->size(), 0);
    e[static_cast<std::size_t>(idx)] = 1;
    Rational c = rel.coefficient(e);
    GradedPoly lin(t);
    lin.add_term(e, c);
    GradedPoly rest = rel - lin;
    if (c != 2 || rest.uses(idx)) throw InternalInconsistency("degree-" + std::to_string(2 * i) + " relation is not linear in Q" + std::to_string(2 * i));
    value[static_cast<std::size_t>(2 * i)] = rest * Rational(-1, 2);
  }
  std::vector<std::pair<std::string, int>> odd;
  std::vector<int> index_map(t->size(), -1);
  for (int j = 1; j <= n; j += 2) {
    if (value[static_cast<std::size_t>(j)]) continue;
    index_map[static_cast<std::size_t>(j - 1)] = static_cast<int>(odd.size());
    odd.emplace_back(gen("Q", j), j);
  }
  GradedPresentation out;
  out.variety = p.variety;
  out.generators = make_table(odd);
  int from = d_type ? (n + 1) / 2 : n / 2 + 1;
  int to = d_type ? n - 1 : n;
  for (int i = from; i <= to; ++i) {
    GradedPoly rel = apply_all(QQ.coeff(2 * i));
    if (rel.is_zero()) throw InternalInconsistency("relation C" + std::to_string(2 * i) + " vanishes after substitution");
    out.relations.push_back(rel.retable(out.generators, index_map));
    out.labels.push_back("C" + std::to_string(2 * i));
  }
  return out;
}

std::vector<int> positions(int from, int to) {
  std::vector<int> v;
  for (int i = from; i <= to; ++i) v.push_back(i);
  return v;
}

}  // namespace

std::string to_string(Shape s) {
  switch (s) {
    case Shape::First: return "D(1)";
    case Shape::Last: return "D(n)";
    case Shape::FirstR: return "D(1,r)";
    case Shape::RLast: return "D(r,n)";
  }
  return "?";
}

std::string to_string(Bundle b) {
  switch (b) {
    case Bundle::Q: return "Q";
    case Bundle::SDual: return "S_dual";
    case Bundle::K: return "K";
    case Bundle::PullbackQ: return "pullback-Q";
    case Bundle::PullbackSDual: return "pullback-S_dual";
    case Bundle::PullbackK: return "pullback-K";
  }
  return "?";
}

VarietyShape match_shape(const MarkedDiagram& v) {
  if (!v.diagram.is_classical()) throw UnsupportedInput("no presentation for " + v.to_string());
  for (const auto& sigma : diagram_automorphisms(v.diagram))
    for (Shape s : {Shape::First, Shape::Last, Shape::FirstR, Shape::RLast})
      if (auto m = match_with(v.diagram, apply(sigma, v.marked), s, sigma)) return *m;
  throw UnsupportedInput("no presentation for " + v.to_string());
}

nlohmann::json GradedPresentation::to_json() const {
  nlohmann::json j;
  j["variety"] = variety.to_string();
  j["generators"] = nlohmann::json::array();
  for (std::size_t i = 0; i < generators->size(); ++i)
    j["generators"].push_back({{"name", generators->names[i]}, {"degree", generators->degrees[i]}});
  j["relations"] = nlohmann::json::array();
  for (const auto& r : relations) j["relations"].push_back(r.to_json());
  j["labels"] = labels;
  return j;
}

GradedPresentation GradedPresentation::from_json(const nlohmann::json& j) {
  try {
    GradedPresentation p;
    p.variety = MarkedDiagram::parse(j.at("variety").get<std::string>());
    std::vector<std::pair<std::string, int>> g;
    for (const auto& e : j.at("generators")) g.emplace_back(e.at("name").get<std::string>(), e.at("degree").get<int>());
    p.generators = make_table(g);
    for (const auto& r : j.at("relations")) p.relations.push_back(GradedPoly::from_json(p.generators, r));
    p.labels = j.at("labels").get<std::vector<std::string>>();
    if (p.labels.size() != p.relations.size()) throw ParseError("label count mismatch");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("presentation json: ") + e.what());
  }
}

bool GradedPresentation::operator==(const GradedPresentation& o) const {
  return variety == o.variety && *generators == *o.generators && relations == o.relations && labels == o.labels;
}

GradedPresentation presentation(const MarkedDiagram& v) { return build(match_shape(v)); }

BundleChernData universal_chern(const MarkedDiagram& v, Bundle b) {
  VarietyShape vs = match_shape(v);
  GradedPresentation p = build(vs);
  const TablePtr& t = p.generators;
  int n = vs.diagram.rank(), r = vs.r;
  Family f = vs.diagram.family();
  int N = f == Family::A ? n + 1 : (f == Family::B ? 2 * n + 1 : 2 * n);
  BundleChernData out{b, p.variety, 0, GradedUniPoly(t)};
  auto unsupported = [&] { return UnsupportedInput(to_string(b) + " is not tabulated on " + v.to_string()); };
  switch (vs.shape) {
    case Shape::Last:
      if (b != Bundle::Q) throw unsupported();
      out.rank = n;
      out.chern_polynomial = big_q_poly(t, n);
      break;
    case Shape::FirstR: {
      int h = t->index_of("h");
      auto a = a_poly(t, r);
      if (b == Bundle::PullbackQ) {
        out.rank = r;
        out.chern_polynomial = scaled_by_generator(t, UniPoly::from_ints({1, 1}), h) * a;
      } else if (b == Bundle::PullbackSDual) {
        out.rank = N - r;
        out.chern_polynomial = f == Family::A ? s_poly(t, n, r)
                                              : scaled_by_generator(t, UniPoly::from_ints({1, -1}), h) *
                                                    substitute_neg(a) * k_poly(t, n, r);
      } else if (b == Bundle::PullbackK && f != Family::A) {
        out.rank = N - 2 * r;
        out.chern_polynomial = k_poly(t, n, r);
      } else {
        throw unsupported();
      }
      break;
    }
    case Shape::RLast: {
      auto q = q_poly(t, r);
      if (b == Bundle::PullbackQ) {
        out.rank = r;
        out.chern_polynomial = q;
      } else if (b == Bundle::PullbackSDual) {
        auto bb = b_poly(t, n, r);
        out.rank = N - r;
        out.chern_polynomial = substitute_neg(q) * bb * substitute_neg(bb);
      } else {
        throw unsupported();
      }
      break;
    }
    case Shape::First:
      throw unsupported();
  }
  if (!out.chern_polynomial.degree().is_neg_infinity() && out.chern_polynomial.degree().value() > out.rank)
    throw InternalInconsistency("Chern polynomial degree exceeds the rank");
  return out;
}

bool pullback_identities_check(Family family, int n, int r) {
  if (family == Family::G2 || r <= 1 || r > n) throw PreconditionError("pullback identities need 1 < r <= n");
  int vars = family == Family::A ? n + 1 : n;
  std::vector<std::pair<std::string, int>> g;
  for (int i = 1; i <= vars; ++i) g.emplace_back(gen("x", i), 1);
  TablePtr t = make_table(g);
  auto idx = [](const std::vector<int>& labels) {
    std::vector<int> out;
    for (int l : labels) out.push_back(l - 1);
    return out;
  };
  std::vector<GradedPoly> a_c;
  for (int j = 0; j <= r - 1; ++j) a_c.push_back(elementary_symmetric(t, idx(positions(2, r)), j));
  GradedUniPoly a(t, a_c);
  if (family == Family::A) {
    std::vector<GradedPoly> s_c;
    for (int j = 0; j <= n - r + 1; ++j) s_c.push_back(elementary_symmetric(t, idx(positions(r + 1, n + 1)), j));
    GradedUniPoly prod = a * GradedUniPoly(t, s_c);
    for (int i = 1; i <= n; ++i)
      if (prod.coeff(i) != elementary_symmetric(t, idx(positions(2, n + 1)), i)) return false;
    return true;
  }
  std::vector<GradedPoly> k_c(static_cast<std::size_t>(2 * (n - r)) + 1, GradedPoly(t));
  for (int j = 0; j <= n - r; ++j)
    k_c[static_cast<std::size_t>(2 * j)] =
        elementary_symmetric(t, idx(positions(r + 1, n)), j, 2) * Rational(j % 2 ? -1 : 1);
  GradedUniPoly prod = a * substitute_neg(a) * GradedUniPoly(t, k_c);
  int top = family == Family::D ? n - 2 : n - 1;
  for (int i = 1; i <= top; ++i) {
    GradedPoly K = elementary_symmetric(t, idx(positions(2, n)), i, 2) * Rational(i % 2 ? -1 : 1);
    if (prod.coeff(2 * i) != K) return false;
    if (!prod.coeff(2 * i - 1).is_zero()) return false;
  }
  return true;
}

GradedPresentation eliminate_even_generators(const GradedPresentation& p) {
  VarietyShape vs = match_shape(p.variety);
  Family f = vs.diagram.family();
  if (vs.shape != Shape::Last || !is_bcd(f) || p.generators->index_of("Q1") != 0)
    throw PreconditionError("even-generator elimination needs a D(n) presentation of type B, C or D");
  int n = vs.diagram.rank();
  ElimKey key{f == Family::D, n};
  {
    std::shared_lock lock(elim_mutex);
    auto it = elim_memo.find(key);
    if (it != elim_memo.end()) {
      GradedPresentation out = it->second;
      out.variety = p.variety;
      return out;
    }
  }
  GradedPresentation out = eliminate_uncached(p, key.d_type, n);
  std::unique_lock lock(elim_mutex);
  elim_memo.emplace(key, out);
  return out;
}

GradedPresentation reduce_linear_generators(const GradedPresentation& p) {
  GradedPresentation cur = p;
  for (;;) {
    std::vector<std::size_t> order(cur.relations.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto key = [&](std::size_t i) {
      return std::make_tuple(cur.relations[i].degree().value_or(0), cur.relations[i].terms().size(), i);
    };
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return key(x) < key(y); });
    std::optional<std::pair<std::size_t, int>> pick;
    for (std::size_t ri : order) {
      const GradedPoly& rel = cur.relations[ri];
      for (int g = static_cast<int>(cur.generators->size()) - 1; g >= 0 && !pick; --g) {
        Exponents e(cur.generators->size(), 0);
        e[static_cast<std::size_t>(g)] = 1;
        Rational c = rel.coefficient(e);
        if (c == 0) continue;
        GradedPoly lin(cur.generators);
        lin.add_term(e, c);
        if (!(rel - lin).uses(g)) pick = std::make_pair(ri, g);
      }
      if (pick) break;
    }
    if (!pick) return cur;
    auto [ri, g] = *pick;
    const GradedPoly& rel = cur.relations[ri];
    Exponents e(cur.generators->size(), 0);
    e[static_cast<std::size_t>(g)] = 1;
    Rational c = rel.coefficient(e);
    GradedPoly lin(cur.generators);
    lin.add_term(e, c);
    GradedPoly value = (rel - lin) * Rational(-1 / c);
    std::vector<std::pair<std::string, int>> kept;
    std::vector<int> index_map(cur.generators->size(), -1);
    for (std::size_t i = 0; i < cur.generators->size(); ++i) {
      if (static_cast<int>(i) == g) continue;
      index_map[i] = static_cast<int>(kept.size());
      kept.emplace_back(cur.generators->names[i], cur.generators->degrees[i]);
    }
    GradedPresentation next;
    next.variety = cur.variety;
    next.generators = make_table(kept);
    for (std::size_t i = 0; i < cur.relations.size(); ++i) {
      if (i == ri) continue;
      GradedPoly s = cur.relations[i].substitute(g, value);
      if (s.is_zero()) continue;
      next.relations.push_back(s.retable(next.generators, index_map));
      next.labels.push_back(cur.labels[i]);
    }
    cur = std::move(next);
  }
}

DegreeLedger degree_ledger(const GradedPresentation& p) {
  GradedPresentation red = reduce_linear_generators(p);
  DegreeLedger l;
  l.generator_degrees = red.generators->degrees;
  for (int d : l.generator_degrees) l.max_generator_degree = std::max(l.max_generator_degree, d);
  for (const auto& rel : red.relations) {
    int d = rel.degree().value_or(0);
    l.relation_degrees.push_back(d);
    if (!l.min_relation_degree || d < *l.min_relation_degree) l.min_relation_degree = d;
  }
  return l;
}

Rational coefficient_of_monomial(const GradedPoly& relation, const Exponents& monomial) {
  return relation.coefficient(monomial);
}

Rational coefficient_of_monomial(const GradedPoly& relation, std::string_view monomial) {
  return relation.coefficient(parse_monomial(*relation.table(), monomial));
}

bool in_ideal(const GradedPresentation& p, const GradedPoly& f) {
  if (f.is_zero()) return true;
  int d = *f.degree();
  auto column = slice_columns(p, d);
  auto rows = slice_rows(p, d, column);
  std::size_t base = linalg::rank(rows);
  std::vector<Rational> target(column.size(), Rational(0));
  for (const auto& [e, c] : f.terms()) target[column.at(e)] = c;
  rows.push_back(std::move(target));
  return linalg::rank(rows) == base;
}

std::size_t quotient_dimension(const GradedPresentation& p, int degree) {
  auto column = slice_columns(p, degree);
  auto rows = slice_rows(p, degree, column);
  return column.size() - (rows.empty() ? 0 : linalg::rank(rows));
}

bool first_node_series_check(Family family, int n, int r) {
  if (family != Family::B && family != Family::C) throw UnsupportedInput("series reduction is stated for B and C");
  auto d = DynkinDiagram::make(family, n);
  GradedPresentation p = presentation({d, {1, r}});
  const TablePtr& t = p.generators;
  auto a = a_poly(t, r);
  auto prod = a * substitute_neg(a) * k_poly(t, n, r);
  auto h = GradedPoly::generator(t, "h");
  int top = prod.degree().is_neg_infinity() ? 0 : prod.degree().value();
  for (int i = 1; 2 * i <= std::max(top, 2 * (n - 1)); ++i) {
    GradedPoly diff = prod.coeff(2 * i);
    if (i <= n - 1) diff -= h.pow(2 * i);
    if (!in_ideal(p, diff)) return false;
    if (!in_ideal(p, prod.coeff(2 * i - 1))) return false;
  }
  return true;
}

bool top_class_vanishes(const BundleChernData& data) {
  GradedPresentation p = presentation(data.variety);
  GradedPoly top = data.chern_polynomial.coeff(data.rank);
  if (top.is_zero()) return true;
  GradedPoly moved = top.retable(p.generators, [&] {
    std::vector<int> m;
    for (std::size_t i = 0; i < top.table()->size(); ++i) m.push_back(p.generators->index_of(top.table()->names[i]));
    return m;
  }());
  return in_ideal(p, moved);
}

}  // namespace flagnest
