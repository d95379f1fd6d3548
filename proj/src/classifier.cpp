#include "flagnest/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <thread>

#include "flagnest/cohomology.hpp"
#include "flagnest/constructions.hpp"
#include "flagnest/errors.hpp"

namespace flagnest {

using nlohmann::json;

namespace {

TraceStep make_step(std::string rule, std::string anchor, StepKind kind, json data = json::object()) {
  TraceStep s;
  s.rule = std::move(rule);
  s.anchor = std::move(anchor);
  s.kind = kind;
  s.data = std::move(data);
  return s;
}

void append_sub(std::vector<TraceStep>& out, const std::vector<TraceStep>& sub) {
  for (TraceStep s : sub) {
    s.depth += 1;
    out.push_back(std::move(s));
  }
}

json nodes_json(const NodeSet& s) { return json(std::vector<int>(s.begin(), s.end())); }

NodeSet nodes_from_json(const json& j) {
  NodeSet s;
  for (const auto& v : j) s.insert(v.get<int>());
  return s;
}

// Variety of `family` at raw rank n with raw marked nodes, on the canonical diagram.
MarkedDiagram marked(Family family, int n, const NodeSet& raw) {
  CanonicalForm cf = canonical_form(family, n);
  NodeSet m;
  for (int k : raw) m.insert(cf.relabel[static_cast<std::size_t>(k - 1)]);
  return {cf.diagram, m};
}

int dim_of(Family family, int n, const NodeSet& raw) { return variety_dimension(marked(family, n, raw)); }

std::string fam_name(Family f, int n) { return std::string(1, family_letter(f)) + std::to_string(n); }

void require_classical(Family family, int n) {
  if (family == Family::G2) throw PreconditionError("classical family required");
  int min_rank = family == Family::A ? 2 : (family == Family::D ? 4 : 2);
  if (n < min_rank) throw PreconditionError(fam_name(family, n) + " is below the supported rank");
}

UniPoly one_plus_t() { return UniPoly::from_ints({1, 1}); }
UniPoly one_minus_t() { return UniPoly::from_ints({1, -1}); }

bool even_support(const UniPoly& p) {
  const auto& c = p.coefficients();
  for (std::size_t i = 1; i < c.size(); i += 2)
    if (c[i] != 0) return false;
  return true;
}

int deg_or_zero(const UniPoly& p) { return p.is_zero() ? 0 : p.degree().value(); }

// ---------------------------------------------------------------------------
// Positive list

struct PositiveData {
  NestingQuery standard;
  Folding folding;
  ConstructionKind construction;
  int construction_n;
};

std::optional<PositiveData> positive_data(const DynkinDiagram& d) {
  int n = d.rank();
  switch (d.family()) {
    case Family::A:
      if (n >= 3 && n % 2 == 1)
        return PositiveData{NestingQuery::make(d, {1}, {n}), make_folding(FoldingKind::AtoC, (n + 1) / 2),
                            ConstructionKind::A, (n + 1) / 2};
      return std::nullopt;
    case Family::B:
      if (n == 3)
        return PositiveData{NestingQuery::make(d, {1}, {3}), make_folding(FoldingKind::B3toG2, 0),
                            ConstructionKind::B3, 3};
      return std::nullopt;
    case Family::D:
      return PositiveData{NestingQuery::make(d, {n - 1}, {n}), make_folding(FoldingKind::DtoB, n),
                          ConstructionKind::D, n};
    default:
      return std::nullopt;
  }
}

TraceStep construction_step(const DynkinDiagram& d) {
  auto pd = positive_data(d);
  if (!pd) throw InternalInconsistency("no construction for " + d.name());
  SectionReport check = verify_section(pd->construction, pd->construction_n, 1, 1);
  json data{{"construction", to_string(pd->construction)},
            {"standard_query", pd->standard.to_string()},
            {"sample_check", check.ok()}};
  std::string anchor;
  switch (pd->construction) {
    case ConstructionKind::A:
      anchor = "a point goes to its orthogonal hyperplane under a nondegenerate antisymmetric form";
      break;
    case ConstructionKind::B3: {
      anchor = "a null octonion x goes to the plane {y : x(ya) = 0, Re y = 0} for an invertible a";
      auto twist = nesting_B3_chern_solver();
      data["twist"] = twist.ell ? json(*twist.ell) : json(nullptr);
      break;
    }
    case ConstructionKind::D:
      anchor = "a maximal isotropic V_n goes to the isotropic (V_n + v)^perp inside it for a non-isotropic v";
      break;
  }
  if (!check.ok()) throw InternalInconsistency("construction sample failed for " + d.name());
  return make_step("construction", anchor, StepKind::Construction, std::move(data));
}

// ---------------------------------------------------------------------------
// Core classification on canonical queries

struct Core {
  Result result = Result::NotExists;
  std::vector<TraceStep> trace;
};

Core classify_core(const NestingQuery& q);

std::shared_mutex memo_mutex;
std::map<NestingQuery, Core> singleton_memo;

NestingDecision classify_full(const NestingQuery& q) {
  Permutation sigma;
  NestingQuery cq = canonical_query(q, &sigma);
  NestingDecision out{q, Result::NotExists, {}};
  out.trace.push_back(make_step("canonicalize", "nestings are preserved by diagram automorphisms",
                                StepKind::Reduction,
                                {{"automorphism", sigma}, {"canonical", cq.to_json()}}));
  Core core = classify_core(cq);
  out.result = core.result;
  for (auto& s : core.trace) out.trace.push_back(std::move(s));
  return out;
}

// Automorphism of d taking (from_i, from_j) to (to_i, to_j).
Permutation transport_to(const DynkinDiagram& d, int from_i, int from_j, int to_i, int to_j) {
  for (const auto& p : diagram_automorphisms(d))
    if (p[static_cast<std::size_t>(from_i - 1)] == to_i && p[static_cast<std::size_t>(from_j - 1)] == to_j) return p;
  throw InternalInconsistency("no automorphism of " + d.name() + " onto the standard pair");
}

// Tag of the P^1-bundle over the line through i2 restricted to the fibre diagram,
// transported to the standard positive pair and tested against its folding.
struct TagCheck {
  TraceStep step;
  bool symmetric;
};

TagCheck tag_check(const DynkinDiagram& parent, const Component& sub, int source_parent, int target_parent,
                   int i2) {
  auto pd = positive_data(sub.diagram);
  if (!pd) throw InternalInconsistency("fibre " + sub.diagram.name() + " has no positive pair");
  Tag tag = restriction_tag(parent, sub, i2);
  int si = sub.local_of(source_parent), sj = sub.local_of(target_parent);
  Permutation sigma =
      transport_to(sub.diagram, si, sj, *pd->standard.I.begin(), *pd->standard.J.begin());
  Tag moved{tag.diagram, std::vector<long>(tag.values.size(), 0)};
  for (std::size_t k = 0; k < tag.values.size(); ++k)
    moved.values[static_cast<std::size_t>(sigma[k] - 1)] = tag.values[k];
  bool ok = folding_tag_condition(pd->folding, moved);
  json data{{"fibre", sub.diagram.name()},
            {"fibre_nodes", sub.to_parent},
            {"line_node", i2},
            {"tag", tag.to_string()},
            {"transported_tag", moved.to_string()},
            {"folding", pd->folding.source_name + "->" + pd->folding.target_name},
            {"symmetric", ok}};
  return {make_step("tag_symmetry", "nestings over a P^1-bundle require a tag constant on the folding fibres",
                    StepKind::Computation, std::move(data)),
          ok};
}

Core split_targets(const NestingQuery& q) {
  Core out;
  json targets = json::array();
  for (int j : q.J) targets.push_back(j);
  out.trace.push_back(make_step("split_targets",
                                "a nesting of type (D,I,J) induces one of type (D,I,j) for every j in J",
                                StepKind::Reduction, {{"targets", targets}}));
  for (int j : q.J) {
    NestingDecision sub = classify_full(NestingQuery::make(q.diagram, q.I, {j}));
    if (sub.result == Result::NotExists) {
      out.trace.push_back(make_step("target_refuted", "the single-target nesting does not exist",
                                    StepKind::Reduction, {{"query", sub.query.to_string()}}));
      append_sub(out.trace, sub.trace);
      return out;
    }
  }
  if (q.diagram == DynkinDiagram::make(Family::D, 4) && q.I == NodeSet{1} && q.J == NodeSet{3, 4}) {
    out.trace.push_back(make_step(kFactTriality,
                                  "no nestings of types (D4,3,{1,4}) and (D4,{3,4},1)", StepKind::Fact,
                                  {{"query", q.to_string()}}));
    return out;
  }
  throw InternalInconsistency("every single-target nesting of " + q.to_string() + " exists");
}

// Which drawn configuration the surviving D4 query matches, read as (i1, i2, j) on D_n.
std::string drawn_case(const NestingQuery& q) {
  int n = q.diagram.rank();
  std::vector<int> I(q.I.begin(), q.I.end());
  int j = *q.J.begin();
  for (int a : I)
    for (int b : I) {
      if (a == b) continue;
      if (a == n - 3 && b == n - 1 && j == n) return "(n-3,n-1,n)";
      if (a == n && b == n - 1 && j < n - 1) return "(n,n-1,n-r)";
      if (a == n - 1 && b == n - 3 && j == n) return "(n-1,n-3,n)";
    }
  return "";
}

Core multi_source(const NestingQuery& q) {
  Core out;
  const DynkinDiagram& d = q.diagram;
  int j = *q.J.begin();
  out.trace.push_back(make_step(
      "fiber_restriction_search",
      "restricting to fibres over D(I minus i1) gives nestings of the fibre; a second source node gives a P^1-bundle",
      StepKind::Reduction, {{"sources", nodes_json(q.I)}, {"target", j}}));
  for (int i1 : q.I) {
    NodeSet rest = q.I;
    rest.erase(i1);
    std::optional<Component> fibre;
    for (const auto& c : delete_nodes(d, rest))
      if (c.local_of(j) != 0 && c.local_of(i1) != 0) fibre = c;
    if (!fibre) continue;
    NestingQuery sub_q = NestingQuery::make(fibre->diagram, {fibre->local_of(i1)}, {fibre->local_of(j)});
    NestingDecision sub = classify_full(sub_q);
    if (sub.result == Result::NotExists) {
      out.trace.push_back(make_step("fiber_restriction", "a nesting restricts to a nesting of every fibre",
                                    StepKind::Reduction,
                                    {{"i1", i1}, {"fibre_nodes", fibre->to_parent}, {"query", sub_q.to_string()}}));
      append_sub(out.trace, sub.trace);
      return out;
    }
    for (int i2 : rest) {
      bool touches = false;
      for (int nb : neighbors(d, i2))
        if (fibre->local_of(nb) != 0) touches = true;
      if (!touches) continue;
      TagCheck tc = tag_check(d, *fibre, i1, j, i2);
      tc.step.data["i1"] = i1;
      out.trace.push_back(tc.step);
      if (!tc.symmetric) return out;
    }
  }
  std::string pattern = drawn_case(q);
  if (q.diagram == DynkinDiagram::make(Family::D, 4) && q.I == NodeSet{1, 3} && q.J == NodeSet{4}) {
    TraceStep p = make_step("restrict_to_d4", "every fibre choice survives; the configuration restricts to D4",
                            StepKind::Reduction, {{"drawn_case", pattern}});
    p.proof_pattern = true;
    out.trace.push_back(p);
    out.trace.push_back(make_step(kFactTriality, "no nestings of types (D4,3,{1,4}) and (D4,{3,4},1)",
                                  StepKind::Fact, {{"query", q.to_string()}}));
    return out;
  }
  throw InternalInconsistency("every fibre choice survives for " + q.to_string());
}

int degree_in(const DynkinDiagram& d, int node) { return static_cast<int>(neighbors(d, node).size()); }

Core non_extremal(const NestingQuery& q) {
  Core out;
  const DynkinDiagram& d = q.diagram;
  int i = *q.I.begin(), j = *q.J.begin();
  std::optional<Component> bar;
  for (const auto& c : delete_nodes(d, {i}))
    if (c.local_of(j) != 0) bar = c;
  if (!bar) throw InternalInconsistency("target outside every component");
  NodeSet nodes = bar->parent_nodes();
  nodes.insert(i);
  Component sub = identify_subdiagram(d, nodes);
  int i2 = 0;
  for (int nb : neighbors(d, i))
    if (bar->local_of(nb) == 0) {
      i2 = nb;
      break;
    }
  NestingQuery sub_q = NestingQuery::make(sub.diagram, {sub.local_of(i)}, {sub.local_of(j)});
  out.trace.push_back(make_step(
      "nonextremal_source",
      "over D(I') with I' the nodes outside the target's component, the source becomes extremal in the fibre",
      StepKind::Reduction, {{"fibre_nodes", sub.to_parent}, {"line_node", i2}, {"query", sub_q.to_string()}}));
  NestingDecision sd = classify_full(sub_q);
  if (sd.result == Result::NotExists) {
    append_sub(out.trace, sd.trace);
    return out;
  }
  TagCheck tc = tag_check(d, sub, i, j, i2);
  out.trace.push_back(tc.step);
  if (tc.symmetric) throw InternalInconsistency("non-extremal source passes the tag test in " + q.to_string());
  return out;
}

bool is_extremal(const DynkinDiagram& d, int node) { return degree_in(d, node) <= 1; }

Core extremal(const NestingQuery& q) {
  Core out;
  const DynkinDiagram& d = q.diagram;
  Family f = d.family();
  int n = d.rank();
  int i = *q.I.begin(), j = *q.J.begin();
  Obstruction ob;
  std::string route;
  if (i == 1) {
    route = "first";
    ob = obstruct_first_node(f, n, j);
  } else if (f == Family::A && i == n) {
    route = "first";
    ob = obstruct_first_node(f, n, n + 1 - j);
  } else if ((f == Family::B || f == Family::C) && i == n) {
    route = "last";
    ob = obstruct_last_node(f, n, j);
  } else if (f == Family::D && (i == n || i == n - 1)) {
    route = "last";
    int jj = j;
    if (i == n - 1) jj = j == n ? n - 1 : j;
    ob = obstruct_last_node(f, n, jj);
  } else {
    throw InternalInconsistency("unexpected extremal source in " + q.to_string());
  }
  out.trace.push_back(make_step("extremal_dispatch", "a single extremal source node is a first or last node",
                                StepKind::Reduction, {{"route", route}}));
  append_sub(out.trace, ob.trace);
  bool positive = in_positive_list(q);
  if (positive == ob.obstructed)
    throw InternalInconsistency("positive list and obstruction disagree on " + q.to_string());
  if (f == Family::A && ((i == 1 && j == n) || (i == n && j == 1))) {
    TwistReport tr = nesting_A_cohomology_solver(n);
    out.trace.push_back(make_step("euler_twist", "T_{P^n} -> O(d) needs c_n(Omega(d)) = 0", StepKind::Computation,
                                  {{"top_class", tr.top_class.to_string('d')}, {"roots", tr.roots}}));
    if (tr.roots.empty() == positive)
      throw InternalInconsistency("twist solver disagrees on " + q.to_string());
  }
  if (positive) {
    out.result = Result::Exists;
    out.trace.push_back(construction_step(d));
  }
  return out;
}

Core singleton(const NestingQuery& q) {
  {
    std::shared_lock lock(memo_mutex);
    auto it = singleton_memo.find(q);
    if (it != singleton_memo.end()) return it->second;
  }
  int i = *q.I.begin();
  Core c = is_extremal(q.diagram, i) ? extremal(q) : non_extremal(q);
  std::unique_lock lock(memo_mutex);
  return singleton_memo.emplace(q, std::move(c)).first->second;
}

Core classify_core(const NestingQuery& q) {
  if (q.diagram.family() == Family::G2) {
    Core c;
    c.trace.push_back(make_step(kFactG2, "no nestings of homogeneous G2-varieties", StepKind::Fact,
                                {{"query", q.to_string()}}));
    return c;
  }
  if (q.J.size() >= 2) return split_targets(q);
  if (q.I.size() >= 2) return multi_source(q);
  return singleton(q);
}

// ---------------------------------------------------------------------------
// Last-node helpers

const GradedPoly& relation_by_label(const GradedPresentation& p, const std::string& label) {
  for (std::size_t k = 0; k < p.labels.size(); ++k)
    if (p.labels[k] == label) return p.relations[k];
  throw InternalInconsistency("relation " + label + " missing from " + p.variety.to_string());
}

// Generator `var` occurs in rel only through the monomial `mono`.
bool occurs_only_in(const GradedPoly& rel, int var, const Exponents& mono) {
  for (const auto& [e, c] : rel.terms())
    if (e[static_cast<std::size_t>(var)] > 0 && e != mono) return false;
  return true;
}

struct PairingCheck {
  Rational coefficient;
  bool isolated = false;
};

PairingCheck pairing_check(const GradedPoly& rel, int r) {
  const auto& t = *rel.table();
  std::string mono = "q1*q" + std::to_string(r);
  PairingCheck pc;
  pc.coefficient = coefficient_of_monomial(rel, mono);
  pc.isolated = occurs_only_in(rel, t.index_of("q" + std::to_string(r)), parse_monomial(t, mono));
  return pc;
}

std::optional<int> min_relation_degree(const GradedPresentation& p) {
  std::optional<int> m;
  for (const auto& r : p.relations)
    if (auto d = r.degree()) m = m ? std::min(*m, *d) : *d;
  return m;
}

bool slice_free(const GradedPresentation& p, int degree) {
  return quotient_dimension(p, degree) == monomials_of_degree(*p.generators, degree).size();
}

}  // namespace

// ---------------------------------------------------------------------------

NestingQuery NestingQuery::make(DynkinDiagram d, NodeSet I, NodeSet J) {
  if (I.empty() || J.empty()) throw PreconditionError("source and target node sets must be nonempty");
  for (int k : I)
    if (k < 1 || k > d.rank() || J.count(k)) throw PreconditionError("invalid source node " + std::to_string(k));
  for (int k : J)
    if (k < 1 || k > d.rank()) throw PreconditionError("invalid target node " + std::to_string(k));
  return {d, std::move(I), std::move(J)};
}

std::string NestingQuery::to_string() const {
  return "(" + diagram.name() + "," + node_set_string(I) + "," + node_set_string(J) + ")";
}

json NestingQuery::to_json() const { return {{"diagram", diagram.name()}, {"I", nodes_json(I)}, {"J", nodes_json(J)}}; }

NestingQuery NestingQuery::from_json(const json& j) {
  try {
    return make(DynkinDiagram::parse(j.at("diagram").get<std::string>()), nodes_from_json(j.at("I")),
                nodes_from_json(j.at("J")));
  } catch (const json::exception& e) {
    throw ParseError(std::string("query json: ") + e.what());
  }
}

NestingQuery canonical_query(const NestingQuery& q, Permutation* used) {
  std::optional<NestingQuery> best;
  Permutation best_p;
  for (const auto& p : diagram_automorphisms(q.diagram)) {
    NestingQuery c{q.diagram, apply(p, q.I), apply(p, q.J)};
    if (!best || std::tie(c.I, c.J) < std::tie(best->I, best->J)) {
      best = c;
      best_p = p;
    }
  }
  if (used) *used = best_p;
  return *best;
}

bool in_positive_list(const NestingQuery& q) {
  auto pd = positive_data(q.diagram);
  return pd && canonical_query(q) == canonical_query(pd->standard);
}

std::string to_string(Result r) { return r == Result::Exists ? "exists" : "not_exists"; }

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::Reduction: return "reduction";
    case StepKind::Computation: return "computation";
    case StepKind::Fact: return "fact";
    case StepKind::Construction: return "construction";
  }
  return "?";
}

namespace {
StepKind parse_kind(const std::string& s) {
  for (StepKind k : {StepKind::Reduction, StepKind::Computation, StepKind::Fact, StepKind::Construction})
    if (to_string(k) == s) return k;
  throw ParseError("unknown step kind " + s);
}
}  // namespace

json TraceStep::to_json() const {
  return {{"rule", rule},   {"anchor", anchor},       {"kind", to_string(kind)},
          {"depth", depth}, {"proof_pattern", proof_pattern}, {"data", data}};
}

TraceStep TraceStep::from_json(const json& j) {
  try {
    TraceStep s;
    s.rule = j.at("rule").get<std::string>();
    s.anchor = j.at("anchor").get<std::string>();
    s.kind = parse_kind(j.at("kind").get<std::string>());
    s.depth = j.value("depth", 0);
    s.proof_pattern = j.value("proof_pattern", false);
    s.data = j.value("data", json::object());
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("trace step json: ") + e.what());
  }
}

bool NestingDecision::terminal_ok() const {
  if (trace.empty()) return false;
  const TraceStep& last = trace.back();
  if (result == Result::Exists) return last.kind == StepKind::Construction;
  if (last.kind == StepKind::Computation) return true;
  return last.kind == StepKind::Fact &&
         (last.rule == kFactG2 || last.rule == kFactTriality || last.rule == kFactEvenA);
}

json NestingDecision::to_json() const {
  json t = json::array();
  for (const auto& s : trace) t.push_back(s.to_json());
  return {{"query", query.to_json()}, {"result", to_string(result)}, {"trace", t}};
}

NestingDecision NestingDecision::from_json(const json& j) {
  try {
    NestingDecision d;
    d.query = NestingQuery::from_json(j.at("query"));
    std::string r = j.at("result").get<std::string>();
    if (r == "exists") d.result = Result::Exists;
    else if (r == "not_exists") d.result = Result::NotExists;
    else throw ParseError("unknown result " + r);
    for (const auto& s : j.at("trace")) d.trace.push_back(TraceStep::from_json(s));
    return d;
  } catch (const json::exception& e) {
    throw ParseError(std::string("decision json: ") + e.what());
  }
}

NestingDecision classify(const NestingQuery& q) { return classify_full(q); }

// ---------------------------------------------------------------------------

Obstruction obstruct_first_node(Family family, int n, int r) {
  require_classical(family, n);
  if (r < 2 || r > n) throw PreconditionError("first-node obstruction needs 2 <= r <= n");
  Obstruction out;
  if (family == Family::D && r >= n - 1) {
    out.trace.push_back(make_step(
        "hyperplane_section",
        "a nesting of type (D_n,1,n) or (D_n,1,n-1) induces one of type (B_{n-1},1,n-1) on a hyperplane section",
        StepKind::Reduction, {{"from", fam_name(family, n)}, {"r", r}, {"to", fam_name(Family::B, n - 1)}}));
    Obstruction sub = obstruct_first_node(Family::B, n - 1, n - 1);
    append_sub(out.trace, sub.trace);
    out.obstructed = sub.obstructed;
    out.survivors = sub.survivors;
    return out;
  }
  int h = coxeter_number(DynkinDiagram::make(family, n));
  int dim1 = dim_of(family, n, {1});
  if (h % 2 == 1) {
    // P_Q'(1) P_S'(1) = 2 with P_Q' of degree r and all coefficients positive.
    Rational product = (UniPoly::constant(1) + UniPoly::monomial(1, h)).eval(1);
    int min_q = r + 1;
    out.obstructed = Rational(min_q) > product;
    out.trace.push_back(make_step("odd_coxeter_parity",
                                  "P_Q'(t) P_S'(t) = 1 + t^h forces P_Q'(1) P_S'(1) = 2 with P_Q'(1) >= r + 1",
                                  StepKind::Computation,
                                  {{"family", fam_name(family, n)}, {"h", h}, {"r", r},
                                   {"value_at_one", to_string(product)}, {"min_P_Q_at_one", min_q}}));
    if (!out.obstructed) throw InternalInconsistency("parity argument failed");
    return out;
  }
  int s_bound = family == Family::A ? n - r + 1 : 2 * n - r;
  bool use_s33 = (family == Family::A || family == Family::C) && r >= 3 && dim1 >= 3;
  json pairs = json::array();
  std::vector<std::string> s33_rejected;
  for (const FactorPair& fp : factor_unit_minus_tk(h, dim1)) {
    const UniPoly& pq = fp.pe;
    UniPoly ps = substitute_neg(fp.pf);
    std::string verdict;
    if (deg_or_zero(pq) > r) verdict = "deg P_Q' exceeds rank";
    else if (deg_or_zero(ps) > s_bound) verdict = "deg P_S' exceeds rank";
    std::optional<UniPoly> a;
    if (verdict.empty()) {
      a = exact_div(pq, one_plus_t());
      if (!a) verdict = "(1+t) does not divide P_Q'";
    }
    if (verdict.empty() && family != Family::A) {
      auto k = exact_div(ps, one_minus_t() * substitute_neg(*a));
      if (!k) verdict = "(1-t)a(-t) does not divide P_S'";
      else if (!even_support(*k)) verdict = "k has odd-degree terms";
      else if (family == Family::D && deg_or_zero(*a * substitute_neg(*a) * *k) > 2 * n - 4)
        verdict = "top Chern class of S' does not vanish";
    }
    if (verdict.empty() && use_s33) {
      std::vector<Rational> e = pq.coefficients();
      e.resize(static_cast<std::size_t>(r) + 1, Rational(0));
      if (!schwarzenberger_s33(ChernVector::make(e, dim1))) {
        verdict = "Schwarzenberger S_3^3";
        s33_rejected.push_back(pq.to_string());
      }
    }
    pairs.push_back({{"P_Q", pq.to_string()}, {"P_S", ps.to_string()}, {"rejected_by", verdict}});
    if (verdict.empty()) out.survivors.push_back(fp);
  }
  out.trace.push_back(make_step("first_node_factorization",
                                "P_Q'(t) P_S'(t) = 1 - t^h splits into Chern polynomials of nef bundles",
                                StepKind::Computation,
                                {{"family", fam_name(family, n)}, {"h", h}, {"dim", dim1}, {"r", r}, {"pairs", pairs}}));
  out.obstructed = out.survivors.empty();
  if (out.obstructed && !s33_rejected.empty())
    out.trace.push_back(make_step("schwarzenberger",
                                  "c1 c2 = c3 (mod 2) for bundles of rank >= 3 on projective space",
                                  StepKind::Computation, {{"dim", dim1}, {"rejected", s33_rejected}}));
  return out;
}

Obstruction obstruct_last_node(Family family, int n, int r) {
  if (family != Family::B && family != Family::C && family != Family::D)
    throw PreconditionError("last-node obstruction needs family B, C or D");
  require_classical(family, n);
  if (r < 1 || r > n - 1) throw PreconditionError("last-node obstruction needs 1 <= r <= n-1");
  Obstruction out;
  std::string name = fam_name(family, n);
  if (n == 2) {
    Family other = family == Family::B ? Family::C : Family::B;
    out.trace.push_back(make_step("rank_two_exchange", "B2 and C2 coincide with the two nodes exchanged",
                                  StepKind::Reduction, {{"from", name}, {"to", fam_name(other, 2)}}));
    Obstruction sub = obstruct_first_node(other, 2, 2);
    append_sub(out.trace, sub.trace);
    out.obstructed = sub.obstructed;
    return out;
  }

  GradedPresentation target = eliminate_even_generators(presentation(marked(family, n, {n})));
  DegreeLedger ledger = degree_ledger(target);
  GradedPresentation source = presentation(marked(family, n, {r, n}));
  int source_max = *std::max_element(source.generators->degrees.begin(), source.generators->degrees.end());
  if (!ledger.min_relation_degree || *ledger.min_relation_degree <= ledger.max_generator_degree)
    throw InternalInconsistency("relations of " + target.variety.to_string() + " do not exceed its generators");
  bool too_small = source_max < ledger.max_generator_degree;
  out.trace.push_back(make_step("generator_degrees",
                                "a surjection of graded rings needs source generators up to the target's largest one",
                                StepKind::Computation,
                                {{"source", source.variety.to_string()}, {"source_max", source_max},
                                 {"target_max", ledger.max_generator_degree},
                                 {"target_min_relation", *ledger.min_relation_degree}, {"obstructed", too_small}}));
  if (too_small) {
    out.obstructed = true;
    return out;
  }

  if (r == 1) {
    int d1 = dim_of(family, n, {1}), dn = dim_of(family, n, {n});
    bool smaller = d1 < dn;
    out.trace.push_back(make_step("picard_dimension",
                                  "D(n) has Picard number one, so a map to a smaller D(1) is constant",
                                  StepKind::Computation, {{"dim_first", d1}, {"dim_last", dn}, {"obstructed", smaller}}));
    if (smaller) {
      out.obstructed = true;
      return out;
    }
    if (family == Family::D && n == 4) {
      out.trace.push_back(make_step("triality_image", "(D4,4,1) is the triality image of (D4,4,3)",
                                    StepKind::Computation, {{"survives", true}}));
      return out;
    }
    throw InternalInconsistency("equal dimensions for " + name);
  }

  if (family == Family::D && r == n - 1) {
    out.trace.push_back(make_step("spin_pair", "(D_n,n,n-1) carries the non-isotropic vector construction",
                                  StepKind::Computation, {{"survives", true}}));
    return out;
  }

  auto coeff_label = [](int d) { return "Coeff_" + std::to_string(d) + "(q(t)q(-t)b(t)b(-t))"; };

  if (family != Family::D && r == n - 1 && n % 2 == 0) {
    const GradedPoly& rel = relation_by_label(source, coeff_label(n));
    PairingCheck pc = pairing_check(rel, n - 1);
    auto min_rel = min_relation_degree(target);
    bool free_slice = slice_free(target, n);
    bool ok = pc.coefficient != 0 && pc.isolated && free_slice && min_rel && *min_rel > n;
    out.trace.push_back(make_step(
        "degree_n_relation",
        "q1 q_{n-1} appears in the degree-n relation while the target has no relation in degree n",
        StepKind::Computation,
        {{"coefficient", to_string(pc.coefficient)}, {"isolated", pc.isolated}, {"target_slice_free", free_slice},
         {"target_min_relation", min_rel ? json(*min_rel) : json(nullptr)}, {"obstructed", ok}}));
    if (!ok) throw InternalInconsistency("degree-n argument fails for " + name);
    out.obstructed = true;
    return out;
  }

  if (family == Family::D && n % 2 == 1 && (r == 2 || r == n - 2)) {
    int rr = n - 2;
    GradedPresentation src = r == rr ? source : presentation(marked(family, n, {rr, n}));
    if (r != rr) {
      // q_i <-> b_i identifies D(2,n) with D(n-2,n).
      std::vector<int> map(source.generators->size(), -1);
      for (std::size_t k = 0; k < source.generators->size(); ++k) {
        std::string nm = source.generators->names[k];
        nm[0] = nm[0] == 'q' ? 'b' : 'q';
        map[k] = src.generators->index_of(nm);
      }
      bool iso = source.relations.size() == src.relations.size();
      for (const auto& rel : source.relations) {
        GradedPoly moved = rel.retable(src.generators, map);
        bool found = false;
        for (const auto& other : src.relations)
          if (other == moved || other == -moved) found = true;
        iso = iso && found;
      }
      out.trace.push_back(make_step("swap_isomorphism", "exchanging q and b identifies the rings of D(2,n) and D(n-2,n)",
                                    StepKind::Computation, {{"isomorphic", iso}}));
      if (!iso) throw InternalInconsistency("D(2,n) and D(n-2,n) presentations differ");
    }
    GradedPresentation full = presentation(marked(family, n, {n}));
    auto q1sq = GradedPoly::generator(full.generators, "Q1").pow(2);
    bool deg2_line = quotient_dimension(full, 2) == 1 && !in_ideal(full, q1sq);
    auto min_rel = min_relation_degree(target);
    bool free_n = slice_free(target, n) && min_rel && *min_rel > n;
    int b2 = src.generators->index_of("b2");
    GradedPoly rel = relation_by_label(src, coeff_label(n - 1)).substitute(b2, GradedPoly(src.generators));
    PairingCheck pc = pairing_check(rel, rr);
    bool killer_present = false;
    GradedPoly killer = GradedPoly::generator(src.generators, "q" + std::to_string(rr)) *
                        GradedPoly::generator(src.generators, b2);
    for (const auto& x : src.relations)
      if (x == killer) killer_present = true;
    bool ok = deg2_line && free_n && killer_present && pc.coefficient != 0 && pc.isolated;
    out.trace.push_back(make_step(
        "odd_spin_relation",
        "q_{n-2} b2 = 0 forces b2 to vanish, then q1 q_{n-2} appears in the degree n-1 relation",
        StepKind::Computation,
        {{"degree_two_is_Q1_squared", deg2_line}, {"target_free_in_degree_n", free_n},
         {"relation_q_b2", killer_present}, {"coefficient", to_string(pc.coefficient)},
         {"isolated", pc.isolated}, {"obstructed", ok}}));
    if (!ok) throw InternalInconsistency("odd spin argument fails for " + name);
    out.obstructed = true;
    return out;
  }
  throw InternalInconsistency("no last-node argument applies to " + name + " r=" + std::to_string(r));
}

// ---------------------------------------------------------------------------

bool reducibility_corollary(const MarkedDiagram& v, std::size_t component) {
  auto comps = delete_nodes(v.diagram, v.marked);
  if (component >= comps.size()) throw PreconditionError("component index out of range");
  for (int j : comps[component].parent_nodes())
    if (classify(NestingQuery::make(v.diagram, v.marked, {j})).result == Result::Exists) return true;
  return false;
}

SubbundleReport subbundle_corollary(const MarkedDiagram& v) {
  if (v.marked.size() != 1 || !v.diagram.is_classical())
    throw PreconditionError("subbundle test needs a classical diagram with one marked node");
  int r = *v.marked.begin();
  SubbundleReport out;
  if (r == 1) return out;
  const DynkinDiagram& d = v.diagram;
  int n = d.rank();
  for (const auto& c : delete_nodes(d, v.marked)) {
    if (c.local_of(1) == 0) continue;
    for (int j : c.parent_nodes()) {
      if (classify(NestingQuery::make(d, {r}, {j})).result != Result::Exists) continue;
      int rr = r, jj = j;
      if (d.family() == Family::D && r == n - 1) {
        rr = n;
        jj = j == n ? n - 1 : j;
      }
      if (rr - jj <= 0) throw InternalInconsistency("nonpositive subbundle rank on " + v.to_string());
      out.has_subbundle = true;
      out.rank = rr - jj;
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(EnumerationMode m) { return m == EnumerationMode::Singletons ? "singletons" : "all-subsets"; }

EnumerationMode parse_enumeration_mode(std::string_view text) {
  if (text == "singletons") return EnumerationMode::Singletons;
  if (text == "all-subsets") return EnumerationMode::AllSubsets;
  throw ParseError("unknown enumeration mode " + std::string(text));
}

std::vector<DynkinDiagram> classical_diagrams(int max_rank) {
  std::vector<DynkinDiagram> out;
  for (int n = 2; n <= max_rank; ++n) out.push_back(DynkinDiagram::make(Family::A, n));
  for (int n = 2; n <= max_rank; ++n) out.push_back(DynkinDiagram::make(Family::B, n));
  for (int n = 3; n <= max_rank; ++n) out.push_back(DynkinDiagram::make(Family::C, n));
  for (int n = 4; n <= max_rank; ++n) out.push_back(DynkinDiagram::make(Family::D, n));
  return out;
}

namespace {

std::vector<NestingQuery> queries_for(const DynkinDiagram& d, EnumerationMode mode) {
  std::vector<NestingQuery> out;
  int n = d.rank();
  if (mode == EnumerationMode::Singletons) {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (i != j) out.push_back(NestingQuery::make(d, {i}, {j}));
    return out;
  }
  // Assign each node to I, J or neither; keep |I u J| <= 4.
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int used) {
    if (pos == n) {
      NodeSet I, J;
      for (int k = 0; k < n; ++k) {
        if (label[static_cast<std::size_t>(k)] == 1) I.insert(k + 1);
        if (label[static_cast<std::size_t>(k)] == 2) J.insert(k + 1);
      }
      if (!I.empty() && !J.empty()) out.push_back(NestingQuery::make(d, I, J));
      return;
    }
    for (int l = 0; l <= 2; ++l) {
      if (l > 0 && used == 4) continue;
      label[static_cast<std::size_t>(pos)] = l;
      rec(pos + 1, used + (l > 0));
    }
    label[static_cast<std::size_t>(pos)] = 0;
  };
  rec(0, 0);
  return out;
}

}  // namespace

json EnumerationReport::to_json() const {
  json ex = json::array();
  for (const auto& q : exists_set) ex.push_back(q.to_string());
  return {{"max_rank", max_rank},       {"mode", flagnest::to_string(mode)},
          {"queries", queries},         {"exists", exists},
          {"not_exists", not_exists},   {"terminal_failures", terminal_failures},
          {"exists_set", ex},           {"terminal_rules", terminal_rules}};
}

EnumerationReport enumerate(int max_rank, EnumerationMode mode, unsigned threads) {
  if (max_rank < 2) throw PreconditionError("enumeration needs max_rank >= 2");
  std::vector<NestingQuery> all;
  for (const auto& d : classical_diagrams(max_rank)) {
    auto qs = queries_for(d, mode);
    all.insert(all.end(), qs.begin(), qs.end());
  }
  std::vector<std::optional<NestingDecision>> results(all.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    try {
      for (std::size_t k = next++; k < all.size(); k = next++) results[k] = classify(all[k]);
    } catch (...) {
      std::lock_guard lock(err_mu);
      if (!err) err = std::current_exception();
      next = all.size();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);

  EnumerationReport rep;
  rep.max_rank = max_rank;
  rep.mode = mode;
  rep.queries = all.size();
  std::set<NestingQuery> exists;
  for (const auto& res : results) {
    const NestingDecision& d = *res;
    if (d.result == Result::Exists) {
      ++rep.exists;
      exists.insert(canonical_query(d.query));
    } else {
      ++rep.not_exists;
    }
    if (!d.terminal_ok()) ++rep.terminal_failures;
    ++rep.terminal_rules[d.trace.back().rule];
  }
  rep.exists_set.assign(exists.begin(), exists.end());
  return rep;
}

}  // namespace flagnest
