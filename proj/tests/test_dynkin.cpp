#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "flagnest/dynkin.hpp"
#include "flagnest/errors.hpp"

using namespace flagnest;

namespace {

using RVec = std::vector<int>;

// Simple roots realized in Euclidean space; the Cartan oracle is computed from inner products.
std::vector<RVec> simple_roots_euclidean(Family f, int n) {
  std::vector<RVec> roots;
  int dim = f == Family::A ? n + 1 : (f == Family::G2 ? 3 : n);
  auto e = [&](int i) {
    RVec v(static_cast<std::size_t>(dim), 0);
    v[static_cast<std::size_t>(i - 1)] = 1;
    return v;
  };
  auto sub = [](RVec a, const RVec& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
    return a;
  };
  auto add = [](RVec a, const RVec& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    return a;
  };
  if (f == Family::G2) return {{1, -1, 0}, {-2, 1, 1}};
  int path = f == Family::A ? n : n - 1;
  for (int i = 1; i <= path; ++i) roots.push_back(sub(e(i), e(i + 1)));
  if (f == Family::B) roots.push_back(e(n));
  if (f == Family::C) roots.push_back(add(e(n), e(n)));
  if (f == Family::D) roots.push_back(add(e(n - 1), e(n)));
  return roots;
}

IntMatrix cartan_oracle(Family f, int n) {
  auto r = simple_roots_euclidean(f, n);
  auto ip = [](const RVec& a, const RVec& b) {
    int s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
  };
  IntMatrix c(r.size(), std::vector<int>(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) c[i][j] = 2 * ip(r[i], r[j]) / ip(r[i], r[i]);
  return c;
}

// Root strings: beta + alpha_i is a root iff q > 0 where p - q = <beta, alpha_i^vee>.
std::set<std::vector<int>> roots_by_strings(const IntMatrix& c) {
  const int n = static_cast<int>(c.size());
  std::set<std::vector<int>> all;
  std::vector<std::vector<int>> layer;
  for (int i = 0; i < n; ++i) {
    std::vector<int> v(static_cast<std::size_t>(n), 0);
    v[static_cast<std::size_t>(i)] = 1;
    layer.push_back(v);
    all.insert(v);
  }
  while (!layer.empty()) {
    std::set<std::vector<int>> next;
    for (const auto& b : layer) {
      for (int i = 0; i < n; ++i) {
        int pairing = 0;
        for (int j = 0; j < n; ++j) pairing += b[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        int p = 0;
        std::vector<int> down = b;
        while (true) {
          down[static_cast<std::size_t>(i)] -= 1;
          if (!all.count(down)) break;
          ++p;
        }
        if (p - pairing > 0) {
          std::vector<int> up = b;
          up[static_cast<std::size_t>(i)] += 1;
          if (!all.count(up)) next.insert(up);
        }
      }
    }
    layer.assign(next.begin(), next.end());
    all.insert(next.begin(), next.end());
  }
  return all;
}

int expected_root_count(Family f, int n) {
  switch (f) {
    case Family::A: return n * (n + 1) / 2;
    case Family::B:
    case Family::C: return n * n;
    case Family::D: return n * (n - 1);
    case Family::G2: return 6;
  }
  return -1;
}

std::vector<DynkinDiagram> all_diagrams(int max_rank) {
  std::vector<DynkinDiagram> out{DynkinDiagram::make(Family::G2, 2)};
  for (int n = 1; n <= max_rank; ++n) out.push_back(DynkinDiagram::make(Family::A, n));
  for (int n = 2; n <= max_rank; ++n) out.push_back(DynkinDiagram::make(Family::B, n));
  for (int n = 3; n <= max_rank; ++n) out.push_back(DynkinDiagram::make(Family::C, n));
  for (int n = 4; n <= max_rank; ++n) out.push_back(DynkinDiagram::make(Family::D, n));
  return out;
}

}  // namespace

TEST_CASE("cartan_matrix examples") {
  CHECK(cartan_matrix(DynkinDiagram::make(Family::A, 2)) == IntMatrix{{2, -1}, {-1, 2}});
  CHECK(cartan_matrix(DynkinDiagram::make(Family::B, 2)) == IntMatrix{{2, -1}, {-2, 2}});
  auto g = cartan_matrix(DynkinDiagram::make(Family::G2, 2));
  CHECK(g[0][1] * g[1][0] == 3);
}

TEST_CASE("cartan_matrix agrees with Euclidean realizations") {
  for (const auto& d : all_diagrams(12)) {
    INFO(d.name());
    CHECK(cartan_matrix(d) == cartan_oracle(d.family(), d.rank()));
  }
}

TEST_CASE("cartan_matrix structural properties") {
  for (const auto& d : all_diagrams(10)) {
    auto c = cartan_matrix(d);
    for (int i = 0; i < d.rank(); ++i) {
      CHECK(c[i][i] == 2);
      for (int j = 0; j < d.rank(); ++j) {
        if (i == j) continue;
        CHECK((c[i][j] == 0) == (c[j][i] == 0));
        CHECK(c[i][j] <= 0);
        CHECK(c[i][j] >= -3);
      }
    }
    for (const auto& s : diagram_automorphisms(d)) {
      for (int i = 0; i < d.rank(); ++i)
        for (int j = 0; j < d.rank(); ++j) CHECK(c[s[i] - 1][s[j] - 1] == c[i][j]);
    }
  }
}

TEST_CASE("fundamental degrees and Coxeter numbers") {
  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  CHECK(fundamental_degrees(DynkinDiagram::make(Family::A, 4)) == std::vector<int>{2, 3, 4, 5});
  CHECK(sorted(fundamental_degrees(DynkinDiagram::make(Family::D, 5))) == sorted({2, 4, 6, 8, 5}));
  CHECK(fundamental_degrees(DynkinDiagram::make(Family::G2, 2)) == std::vector<int>{2, 6});
  CHECK(coxeter_number(DynkinDiagram::make(Family::A, 5)) == 6);
  CHECK(coxeter_number(DynkinDiagram::make(Family::B, 3)) == 6);
  CHECK(coxeter_number(DynkinDiagram::make(Family::D, 4)) == 6);
  // Sum of (degree - 1) equals the number of positive roots.
  for (const auto& d : all_diagrams(12)) {
    int s = 0;
    for (int x : fundamental_degrees(d)) s += x - 1;
    CHECK(s == expected_root_count(d.family(), d.rank()));
  }
}

TEST_CASE("positive roots match the string-closure oracle") {
  CHECK(positive_roots(DynkinDiagram::make(Family::A, 2)).positive_roots ==
        std::vector<std::vector<int>>{{0, 1}, {1, 0}, {1, 1}});
  CHECK(positive_roots(DynkinDiagram::make(Family::B, 2)).positive_roots.size() == 4);
  CHECK(positive_roots(DynkinDiagram::make(Family::D, 4)).positive_roots.size() == 12);
  for (const auto& d : all_diagrams(16)) {
    INFO(d.name());
    auto roots = positive_roots(d).positive_roots;
    CHECK(static_cast<int>(roots.size()) == expected_root_count(d.family(), d.rank()));
    std::set<std::vector<int>> got(roots.begin(), roots.end());
    CHECK(got.size() == roots.size());
    for (const auto& r : roots) CHECK(std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; }));
    if (d.rank() <= 9) CHECK(got == roots_by_strings(cartan_oracle(d.family(), d.rank())));
  }
}

TEST_CASE("variety_dimension") {
  auto B3 = DynkinDiagram::make(Family::B, 3);
  CHECK(variety_dimension({B3, {1}}) == 5);
  CHECK(variety_dimension({B3, {3}}) == 6);
  for (int n = 1; n <= 16; ++n) {
    auto A = DynkinDiagram::make(Family::A, n);
    CHECK(variety_dimension({A, {1}}) == n);
    CHECK(variety_dimension({A, {n}}) == n);
  }
  for (int n = 2; n <= 16; ++n) {
    for (Family f : {Family::B, Family::C}) {
      auto d = DynkinDiagram::make(f, n);
      CHECK(variety_dimension({d, {1}}) == 2 * n - 1);
      CHECK(variety_dimension({d, {n}}) == n * (n + 1) / 2);
    }
  }
  for (int n = 4; n <= 16; ++n) {
    auto d = DynkinDiagram::make(Family::D, n);
    CHECK(variety_dimension({d, {1}}) == 2 * n - 2);
    CHECK(variety_dimension({d, {n}}) == n * (n - 1) / 2);
    CHECK(variety_dimension({d, {n - 1}}) == n * (n - 1) / 2);
  }
  // The full flag variety has dimension equal to the number of positive roots.
  auto C4 = DynkinDiagram::make(Family::C, 4);
  CHECK(variety_dimension({C4, {1, 2, 3, 4}}) == 16);
  CHECK_THROWS_AS(variety_dimension({C4, {}}), PreconditionError);
}

TEST_CASE("diagram automorphisms") {
  CHECK(diagram_automorphisms(DynkinDiagram::make(Family::A, 3)).size() == 2);
  CHECK(diagram_automorphisms(DynkinDiagram::make(Family::D, 4)).size() == 6);
  CHECK(diagram_automorphisms(DynkinDiagram::make(Family::B, 3)).size() == 1);
  CHECK(diagram_automorphisms(DynkinDiagram::make(Family::D, 6)).size() == 2);
  CHECK(diagram_automorphisms(DynkinDiagram::make(Family::A, 1)).size() == 1);
  CHECK(diagram_automorphisms(DynkinDiagram::make(Family::G2, 2)).size() == 1);
  // Oracle: every permutation preserving the Cartan matrix, by brute force on small ranks.
  for (const auto& d : all_diagrams(6)) {
    auto c = cartan_matrix(d);
    std::vector<int> p(static_cast<std::size_t>(d.rank()));
    for (int i = 0; i < d.rank(); ++i) p[i] = i + 1;
    std::set<Permutation> brute;
    do {
      bool ok = true;
      for (int i = 0; i < d.rank() && ok; ++i)
        for (int j = 0; j < d.rank() && ok; ++j) ok = c[p[i] - 1][p[j] - 1] == c[i][j];
      if (ok) brute.insert(p);
    } while (std::next_permutation(p.begin(), p.end()));
    auto got = diagram_automorphisms(d);
    CHECK(std::set<Permutation>(got.begin(), got.end()) == brute);
    CHECK(got.front() == *brute.begin());
  }
}

TEST_CASE("canonicalization of low-rank coincidences") {
  CHECK(DynkinDiagram::make(Family::C, 2) == DynkinDiagram::make(Family::B, 2));
  CHECK(DynkinDiagram::make(Family::D, 3) == DynkinDiagram::make(Family::A, 3));
  CHECK_THROWS_AS(DynkinDiagram::make(Family::D, 2), UnsupportedInput);
  CHECK_THROWS_AS(DynkinDiagram::make(Family::B, 1), UnsupportedInput);
  CHECK(MarkedDiagram::parse("C2(1)").to_string() == "B2(2)");
  CHECK(MarkedDiagram::parse("D3(1)").to_string() == "A3(2)");
  CHECK(MarkedDiagram::parse("D5(4,5)").to_string() == "D5(4,5)");
  CHECK(MarkedDiagram::parse("D5(4)").to_string() == "D5(4)");
  CHECK_THROWS_AS(MarkedDiagram::parse("D5[4]"), ParseError);
  CHECK_THROWS_AS(MarkedDiagram::parse("D5(9)"), UnsupportedInput);
  CHECK_THROWS_AS(DynkinDiagram::parse("E6"), UnsupportedInput);
  CHECK_THROWS_AS(DynkinDiagram::parse("X4"), ParseError);
  CHECK_THROWS_AS(DynkinDiagram::parse("A"), ParseError);
  CHECK(parse_node_set("(4,5)") == NodeSet{4, 5});
  CHECK(parse_node_set("4,5") == NodeSet{4, 5});
  CHECK_THROWS_AS(parse_node_set("4,,5"), ParseError);
  CHECK_THROWS_AS(parse_node_set("0"), ParseError);
}

TEST_CASE("delete_nodes") {
  auto A4 = DynkinDiagram::make(Family::A, 4);
  auto c = delete_nodes(A4, {1});
  REQUIRE(c.size() == 1);
  CHECK(c[0].diagram.name() == "A3");
  CHECK(c[0].to_parent == std::vector<int>{2, 3, 4});

  auto D5 = DynkinDiagram::make(Family::D, 5);
  c = delete_nodes(D5, {2});
  REQUIRE(c.size() == 2);
  CHECK(c[0].diagram.name() == "A1");
  CHECK(c[1].diagram.name() == "A3");  // D3 canonicalizes to A3

  for (int n = 5; n <= 9; ++n) {
    auto D = DynkinDiagram::make(Family::D, n);
    c = delete_nodes(D, {n - 2});
    REQUIRE(c.size() == 3);
    std::multiset<std::string> names;
    for (const auto& x : c) names.insert(x.diagram.name());
    CHECK(names == std::multiset<std::string>{"A" + std::to_string(n - 3), "A1", "A1"});
  }

  auto D6 = DynkinDiagram::make(Family::D, 6);
  c = delete_nodes(D6, {1});
  REQUIRE(c.size() == 1);
  CHECK(c[0].diagram.name() == "D5");
  CHECK(c[0].to_parent == std::vector<int>{2, 3, 4, 5, 6});

  auto C5 = DynkinDiagram::make(Family::C, 5);
  c = delete_nodes(C5, {2});
  REQUIRE(c.size() == 2);
  CHECK(c[1].diagram.name() == "C3");
  c = delete_nodes(C5, {3});
  CHECK(c[1].diagram.name() == "B2");
  CHECK(c[1].to_parent == std::vector<int>{5, 4});

  auto B4 = DynkinDiagram::make(Family::B, 4);
  c = delete_nodes(B4, {2});
  CHECK(c[1].diagram.name() == "B2");
  CHECK(c[1].to_parent == std::vector<int>{3, 4});

  // Every component's Cartan matrix is the induced submatrix of the parent.
  for (const auto& d : all_diagrams(7)) {
    auto pc = cartan_matrix(d);
    for (int mask = 1; mask < (1 << d.rank()) - 1; ++mask) {
      NodeSet s;
      for (int k = 0; k < d.rank(); ++k)
        if (mask & (1 << k)) s.insert(k + 1);
      int total = 0;
      for (const auto& comp : delete_nodes(d, s)) {
        auto cc = cartan_matrix(comp.diagram);
        total += comp.diagram.rank();
        for (int i = 0; i < comp.diagram.rank(); ++i)
          for (int j = 0; j < comp.diagram.rank(); ++j)
            REQUIRE(cc[i][j] == pc[comp.to_parent[i] - 1][comp.to_parent[j] - 1]);
      }
      CHECK(total == d.rank() - static_cast<int>(s.size()));
    }
  }
}

TEST_CASE("foldings") {
  auto fs = foldings();
  REQUIRE(fs.size() == 5);
  int usable = 0;
  for (const auto& f : fs) usable += f.usable;
  CHECK(usable == 3);
  auto a3 = make_folding(FoldingKind::AtoC, 2);
  CHECK(a3.fibers() == std::vector<NodeSet>{{1, 3}, {2}});
  for (int n = 4; n <= 8; ++n) {
    auto f = make_folding(FoldingKind::DtoB, n);
    auto fib = f.fibers();
    CHECK(fib.back() == NodeSet{n - 1, n});
    CHECK(static_cast<int>(fib.size()) == n - 1);
  }
  auto b3 = make_folding(FoldingKind::B3toG2, 0);
  CHECK(b3.usable);
  CHECK(b3.target_name == "G2");
}

TEST_CASE("restriction_tag") {
  auto A4 = DynkinDiagram::make(Family::A, 4);
  auto comp = delete_nodes(A4, {1})[0];
  CHECK(restriction_tag(A4, comp, 1).values == std::vector<long>{1, 0, 0});

  auto D5 = DynkinDiagram::make(Family::D, 5);
  auto sub = identify_subdiagram(D5, {3, 4, 5});
  auto t = restriction_tag(D5, sub, 2);
  for (std::size_t k = 0; k < sub.to_parent.size(); ++k) CHECK((t.values[k] != 0) == (sub.to_parent[k] == 3));

  auto C3 = DynkinDiagram::make(Family::C, 3);
  auto leaf = identify_subdiagram(C3, {3});
  CHECK(restriction_tag(C3, leaf, 2).values == std::vector<long>{-cartan_matrix(C3)[2][1]});
  CHECK(restriction_tag(C3, leaf, 2).values == std::vector<long>{1});
  CHECK_THROWS_AS(restriction_tag(C3, leaf, 3), PreconditionError);
}

TEST_CASE("folding_tag_condition") {
  auto D5 = DynkinDiagram::make(Family::D, 5);
  auto f = make_folding(FoldingKind::DtoB, 5);
  CHECK(folding_tag_condition(f, Tag{D5, {0, 0, 0, 2, 2}}));
  auto A3 = DynkinDiagram::make(Family::A, 3);
  CHECK_FALSE(folding_tag_condition(make_folding(FoldingKind::AtoC, 2), Tag{A3, {1, 0, 0}}));
  auto B3 = DynkinDiagram::make(Family::B, 3);
  CHECK(folding_tag_condition(make_folding(FoldingKind::B3toG2, 0), Tag{B3, {1, 5, 1}}));
  CHECK_THROWS_AS(folding_tag_condition(make_folding(FoldingKind::D4toG2, 0),
                                        Tag{DynkinDiagram::make(Family::D, 4), {1, 1, 1, 1}}),
                  UnsupportedFolding);
  CHECK_THROWS_AS(folding_tag_condition(f, Tag{A3, {1, 0, 1}}), PreconditionError);
}

TEST_CASE("folding_tag_condition is invariant under compatible automorphisms") {
  std::vector<Folding> fs;
  for (int n = 2; n <= 5; ++n) fs.push_back(make_folding(FoldingKind::AtoC, n));
  for (int n = 4; n <= 7; ++n) fs.push_back(make_folding(FoldingKind::DtoB, n));
  fs.push_back(make_folding(FoldingKind::B3toG2, 0));
  for (const auto& f : fs) {
    const auto& d = *f.source;
    auto fibers = f.fibers();
    std::set<NodeSet> fiber_set(fibers.begin(), fibers.end());
    for (const auto& s : diagram_automorphisms(d)) {
      std::set<NodeSet> moved;
      for (const auto& fb : fibers) moved.insert(apply(s, fb));
      if (moved != fiber_set) continue;
      for (int seed = 0; seed < 3 * 3 * 3 * 3; ++seed) {
        Tag t{d, std::vector<long>(static_cast<std::size_t>(d.rank()), 0)};
        int x = seed;
        for (int k = 0; k < std::min(d.rank(), 4); ++k) {
          t.values[static_cast<std::size_t>(k)] = x % 3;
          x /= 3;
        }
        Tag moved_tag{d, t.values};
        for (int k = 0; k < d.rank(); ++k) moved_tag.values[static_cast<std::size_t>(s[k] - 1)] = t.values[static_cast<std::size_t>(k)];
        CHECK(folding_tag_condition(f, t) == folding_tag_condition(f, moved_tag));
      }
    }
  }
}

TEST_CASE("wire strings") {
  CHECK((Tag{DynkinDiagram::make(Family::D, 5), {0, 1, 0, 2, 2}}).to_string() == "D5[0,1,0,2,2]");
  CHECK(DynkinDiagram::parse("G2").name() == "G2");
  CHECK(DynkinDiagram::parse("C2").name() == "B2");
}
