#include "acceptance_suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>

#include "flagnest/chern.hpp"
#include "flagnest/classifier.hpp"
#include "flagnest/cohomology.hpp"
#include "flagnest/constructions.hpp"
#include "flagnest/dynkin.hpp"

namespace flagnest::acceptance {

namespace {

using IntPoly = std::vector<long>;
using Pair = std::pair<IntPoly, IntPoly>;

// ---- independent oracles ---------------------------------------------------

Rational det(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = 1; p <= std::min(n, max_part); ++p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

bool naive_nef(const IntPoly& e, int dim) {
  auto E = [&](int i) {
    return i < 0 || i >= static_cast<int>(e.size()) ? Rational(0) : Rational(e[static_cast<std::size_t>(i)]);
  };
  for (int w = 1; w <= dim; ++w) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(w, w, cur, parts);
    for (const auto& lam : parts) {
      std::size_t t = lam.size();
      std::vector<std::vector<Rational>> m(t, std::vector<Rational>(t));
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) m[i][j] = E(lam[i] - static_cast<int>(i) + static_cast<int>(j));
      if (det(m) < 0) return false;
    }
  }
  return true;
}

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::optional<IntPoly> int_div(IntPoly num, const IntPoly& den) {
  int dn = static_cast<int>(num.size()) - 1, dd = static_cast<int>(den.size()) - 1;
  if (dn < dd) return std::nullopt;
  IntPoly q(static_cast<std::size_t>(dn - dd) + 1, 0);
  for (int i = dn - dd; i >= 0; --i) {
    long lead = num[static_cast<std::size_t>(i + dd)];
    if (lead % den.back() != 0) return std::nullopt;
    long f = lead / den.back();
    q[static_cast<std::size_t>(i)] = f;
    for (int j = 0; j <= dd; ++j) num[static_cast<std::size_t>(i + j)] -= f * den[static_cast<std::size_t>(j)];
  }
  for (long r : num)
    if (r != 0) return std::nullopt;
  return q;
}

IntPoly flip_sign(IntPoly p) {
  for (std::size_t i = 1; i < p.size(); i += 2) p[i] = -p[i];
  return p;
}

// Coefficient search over the factor of degree m <= k/2 with 0 <= Q_i <= C(m,i); the cofactor by division.
std::vector<Pair> naive_factorizations(int k, int dim) {
  std::set<Pair> out;
  IntPoly unit(static_cast<std::size_t>(k) + 1, 0);
  unit[0] = 1;
  unit[static_cast<std::size_t>(k)] = -1;
  auto consider = [&](const IntPoly& pe, const IntPoly& pf) {
    if (static_cast<int>(pe.size()) - 1 > dim || static_cast<int>(pf.size()) - 1 > dim) return;
    if (std::any_of(pe.begin(), pe.end(), [](long v) { return v < 0; })) return;
    if (std::any_of(pf.begin(), pf.end(), [](long v) { return v < 0; })) return;
    if (!naive_nef(pe, dim) || !naive_nef(pf, dim)) return;
    out.insert({pe, pf});
  };
  for (int m = 0; 2 * m <= k; ++m) {
    IntPoly q(static_cast<std::size_t>(m) + 1, 0);
    q[0] = 1;
    q[static_cast<std::size_t>(m)] = 1;
    std::function<void(int)> dfs = [&](int i) {
      if (i >= m) {
        if (auto g = int_div(unit, q)) consider(q, flip_sign(*g));
        if (auto g = int_div(unit, flip_sign(q))) consider(*g, q);
        return;
      }
      for (long v = 0; v <= binom(m, i); ++v) {
        q[static_cast<std::size_t>(i)] = v;
        dfs(i + 1);
      }
    };
    dfs(1);
  }
  return {out.begin(), out.end()};
}

IntPoly ones(int k) { return IntPoly(static_cast<std::size_t>(k), 1); }

// Sum of t^i for i < k against 1 + t, both orders when k is even, and (1+2t+2t^2+t^3)^2 at k = 6.
std::vector<Pair> lemma_families(int k) {
  std::set<Pair> want;
  want.insert({ones(k), {1, 1}});
  if (k % 2 == 0) want.insert({{1, 1}, ones(k)});
  if (k == 6) want.insert({{1, 2, 2, 1}, {1, 2, 2, 1}});
  return {want.begin(), want.end()};
}

std::vector<Pair> library_pairs(int k, int dim) {
  std::vector<Pair> got;
  for (const auto& fp : factor_unit_minus_tk(k, dim)) {
    IntPoly a, b;
    for (const auto& c : fp.pe.coefficients()) a.push_back(c.get_num().get_si());
    for (const auto& c : fp.pf.coefficients()) b.push_back(c.get_num().get_si());
    got.push_back({a, b});
  }
  std::sort(got.begin(), got.end());
  return got;
}

// The classification list in report form, written out per family.
std::set<std::string> theorem_list(int max_rank) {
  std::set<std::string> s;
  for (int n = 3; n <= max_rank; n += 2)
    s.insert("(A" + std::to_string(n) + ",(1),(" + std::to_string(n) + "))");
  if (max_rank >= 3) s.insert("(B3,(1),(3))");
  if (max_rank >= 4) s.insert("(D4,(1),(3))");
  for (int n = 5; n <= max_rank; ++n)
    s.insert("(D" + std::to_string(n) + ",(" + std::to_string(n - 1) + "),(" + std::to_string(n) + "))");
  return s;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : " ") + x;
  return out;
}

template <class F>
CriterionResult timed(int id, std::string name, std::string tol, F&& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.tolerance = std::move(tol);
  auto t0 = std::chrono::steady_clock::now();
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto& doc = documented_failures();
  r.documented_failure = !r.passed && std::find(doc.begin(), doc.end(), id) != doc.end();
  return r;
}

// ---- criteria --------------------------------------------------------------

CriterionResult c1(unsigned threads) {
  return timed(1, "classification list, singletons to rank 12", "exact set equality; < 60 s", [&](auto& r) {
    auto rep = enumerate(12, EnumerationMode::Singletons, threads);
    std::set<std::string> got;
    for (const auto& q : rep.exists_set) got.insert(q.to_string());
    auto want = theorem_list(12);
    std::vector<std::string> extra, missing;
    for (const auto& g : got)
      if (!want.count(g)) extra.push_back(g);
    for (const auto& w : want)
      if (!got.count(w)) missing.push_back(w);
    r.passed = extra.empty() && missing.empty() && rep.terminal_failures == 0;
    std::ostringstream os;
    os << rep.queries << " queries, " << got.size() << " classes, extras=" << extra.size()
       << " omissions=" << missing.size() << " bad_terminals=" << rep.terminal_failures;
    if (!extra.empty()) os << " extra: " << join(extra);
    if (!missing.empty()) os << " missing: " << join(missing);
    r.detail = os.str();
  });
}

CriterionResult c2(unsigned threads) {
  return timed(2, "multi-node reduction, all subsets to rank 8", "exact set equality; < 5 min", [&](auto& r) {
    auto rep = enumerate(8, EnumerationMode::AllSubsets, threads);
    std::set<std::string> got;
    for (const auto& q : rep.exists_set) got.insert(q.to_string());
    r.passed = got == theorem_list(8) && rep.terminal_failures == 0;
    std::ostringstream os;
    os << rep.queries << " queries, " << got.size() << " classes, bad_terminals=" << rep.terminal_failures;
    r.detail = os.str();
  });
}

CriterionResult c3() {
  return timed(3, "factorizations of 1-t^k at ambient_dim = k are the three families",
               "exact, k in [2,30]; naive search cross-check k <= 12; < 30 s", [&](auto& r) {
                 std::vector<int> bad;
                 for (int k = 2; k <= 30; ++k)
                   if (library_pairs(k, k) != lemma_families(k)) bad.push_back(k);
                 std::vector<int> naive_bad;
                 for (int k = 2; k <= 12; ++k)
                   if (library_pairs(k, k) != naive_factorizations(k, k)) naive_bad.push_back(k);
                 std::vector<int> prev_bad;
                 for (int k = 2; k <= 30; ++k)
                   if (library_pairs(k, k - 1) != lemma_families(k)) prev_bad.push_back(k);
                 r.passed = bad.empty() && naive_bad.empty();
                 std::ostringstream os;
                 os << "k with family mismatch at dim k: " << bad.size() << "/29";
                 if (!bad.empty()) os << " (first k=" << bad.front() << ", library returns "
                                      << library_pairs(bad.front(), bad.front()).size() << " pairs)";
                 os << "; naive-search disagreements k<=12: " << naive_bad.size();
                 r.detail = os.str();
                 std::ostringstream d;
                 d << "diagnostic: at ambient_dim = k-1 the families match for "
                   << (29 - static_cast<int>(prev_bad.size())) << "/29 values of k";
                 r.diagnostics.push_back(d.str());
               });
}

CriterionResult c4() {
  return timed(4, "Schwarzenberger exclusion of (A5,1,3) and (C3,1,3)", "exact", [&](auto& r) {
    bool fails = !schwarzenberger_s33(ChernVector::from_ints({1, 2, 2, 1}, 5));
    auto cites = [](const NestingDecision& d) {
      return d.result == Result::NotExists &&
             std::any_of(d.trace.begin(), d.trace.end(), [](const TraceStep& s) { return s.rule == "schwarzenberger"; });
    };
    bool a5 = cites(classify(NestingQuery::make(DynkinDiagram::make(Family::A, 5), {1}, {3})));
    bool c3 = cites(classify(NestingQuery::make(DynkinDiagram::make(Family::C, 3), {1}, {3})));
    r.passed = fails && a5 && c3;
    r.detail = std::string("S33 fails on (1,2,2,1)@5: ") + (fails ? "yes" : "no") + "; A5 trace cites it: " +
               (a5 ? "yes" : "no") + "; C3 trace cites it: " + (c3 ? "yes" : "no");
  });
}

CriterionResult c5() {
  return timed(5, "construction verification", "zero failures over 100 seeded trials (1000 octonion pairs); < 30 s",
               [&](auto& r) {
                 std::vector<std::pair<ConstructionKind, int>> runs{
                     {ConstructionKind::A, 2}, {ConstructionKind::A, 3}, {ConstructionKind::A, 4},
                     {ConstructionKind::B3, 3}, {ConstructionKind::D, 4}, {ConstructionKind::D, 5},
                     {ConstructionKind::D, 6}};
                 int failures = 0, total = 0;
                 for (auto [kind, n] : runs) {
                   auto rep = verify_section(kind, n, 100, 7);
                   failures += rep.trials - rep.passed;
                   total += rep.trials;
                 }
                 auto oct = verify_octonion_laws(1000, 7);
                 int oct_fail = oct.composition_failures + oct.alternativity_failures + oct.conjugation_failures;
                 r.passed = failures == 0 && oct_fail == 0;
                 r.detail = std::to_string(total - failures) + "/" + std::to_string(total) +
                            " section trials, octonion failures " + std::to_string(oct_fail) + "/1000";
               });
}

CriterionResult c6() {
  return timed(6, "proof-equation solvers", "exact", [&](auto& r) {
    bool a_ok = true;
    for (int m = 2; m <= 20; ++m) {
      auto rep = nesting_A_cohomology_solver(m);
      std::vector<long> want = m % 2 == 1 ? std::vector<long>{2} : std::vector<long>{};
      a_ok = a_ok && rep.roots == want;
    }
    auto b3 = nesting_B3_chern_solver();
    std::set<long> roots;
    for (const auto& b : b3.branches) roots.insert(b.ell);
    bool b_ok = roots == std::set<long>{0, 1} && b3.ell == 1;
    bool d_ok = true;
    for (int n = 4; n <= 12; ++n) {
      auto rep = nesting_D_recursion_checker(n);
      d_ok = d_ok && rep.series_solutions.empty() && rep.contradiction;
    }
    r.passed = a_ok && b_ok && d_ok;
    r.detail = std::string("A twists {2} iff m odd (m<=20): ") + (a_ok ? "yes" : "no") + "; B3 roots {0,1}: " +
               (b_ok ? "yes" : "no") + "; D recursion empty (4<=n<=12): " + (d_ok ? "yes" : "no");
  });
}

CriterionResult c7() {
  return timed(7, "cohomology identities", "exact", [&](auto& r) {
    int pull_fail = 0, pull_total = 0;
    for (Family f : {Family::A, Family::B, Family::C, Family::D})
      for (int n = (f == Family::D ? 4 : 2); n <= 8; ++n)
        for (int rr = 2; rr <= n; ++rr) {
          ++pull_total;
          if (!pullback_identities_check(f, n, rr)) ++pull_fail;
        }
    int ledger_fail = 0, ledger_total = 0;
    for (Family f : {Family::B, Family::C, Family::D})
      for (int n = (f == Family::D ? 4 : 2); n <= 12; ++n) {
        if (f == Family::C && n == 2) continue;  // C2 is relabelled onto B2
        CanonicalForm cf = canonical_form(f, n);
        MarkedDiagram v{cf.diagram, {cf.relabel[static_cast<std::size_t>(n - 1)]}};
        auto led = degree_ledger(eliminate_even_generators(presentation(v)));
        ++ledger_total;
        if (!led.min_relation_degree || *led.min_relation_degree <= led.max_generator_degree) ++ledger_fail;
      }
    int series_fail = 0, series_total = 0;
    for (Family f : {Family::B, Family::C})
      for (int n = 2; n <= 6; ++n)
        for (int rr = 2; rr <= n; ++rr) {
          ++series_total;
          if (!first_node_series_check(f, n, rr)) ++series_fail;
        }
    r.passed = pull_fail == 0 && ledger_fail == 0 && series_fail == 0;
    r.detail = "pullback " + std::to_string(pull_total - pull_fail) + "/" + std::to_string(pull_total) + ", ledger " +
               std::to_string(ledger_total - ledger_fail) + "/" + std::to_string(ledger_total) + ", series " +
               std::to_string(series_total - series_fail) + "/" + std::to_string(series_total);
  });
}

CriterionResult c8() {
  return timed(8, "variety dimensions against closed forms", "exact, rank <= 16", [&](auto& r) {
    int fail = 0, total = 0;
    for (Family f : {Family::A, Family::B, Family::C, Family::D})
      for (int n = (f == Family::D ? 4 : 2); n <= 16; ++n) {
        CanonicalForm cf = canonical_form(f, n);
        auto dim = [&](int node) {
          return variety_dimension(MarkedDiagram{cf.diagram, {cf.relabel[static_cast<std::size_t>(node - 1)]}});
        };
        int first = f == Family::A ? n : (f == Family::D ? 2 * n - 2 : 2 * n - 1);
        int last = f == Family::A ? n : (f == Family::D ? n * (n - 1) / 2 : n * (n + 1) / 2);
        total += 2;
        fail += (dim(1) != first) + (dim(n) != last);
      }
    r.passed = fail == 0;
    r.detail = std::to_string(total - fail) + "/" + std::to_string(total) + " dimensions match";
  });
}

}  // namespace

const std::vector<int>& documented_failures() {
  static const std::vector<int> ids{3};
  return ids;
}

std::vector<CriterionResult> run_all(unsigned threads) {
  return {c1(threads), c2(threads), c3(), c4(), c5(), c6(), c7(), c8()};
}

void print(std::ostream& os, const std::vector<CriterionResult>& results, bool timings) {
  for (const auto& r : results) {
    os << "criterion " << r.id << " [" << r.tolerance << "] " << (r.passed ? "PASS" : "FAIL") << " " << r.name
       << ": " << r.detail;
    if (timings) os << " (" << std::fixed << std::setprecision(2) << r.seconds << " s)";
    if (r.documented_failure) os << " [documented]";
    os << "\n";
    for (const auto& d : r.diagnostics) os << "  " << d << "\n";
  }
}

int exit_status(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed && !r.documented_failure) return 1;
  return 0;
}

}  // namespace flagnest::acceptance
