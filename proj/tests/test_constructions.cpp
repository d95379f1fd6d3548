#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <set>
#include <tuple>

#include "flagnest/constructions.hpp"
#include "flagnest/errors.hpp"

using namespace flagnest;

namespace {

Octonion e(int i) { return Octonion::unit(i); }

const GaussRational I = GaussRational::i();

QVec qvec(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

QVec basis_vector(int dim, int i) {
  QVec v(dim, Rational(0));
  v[i] = 1;
  return v;
}

// Left multiplication by x as an 8x8 matrix, columns restricted to y_0 = 0.
linalg::Mat<GaussRational> left_mult_on_imaginary(const Octonion& x) {
  linalg::Mat<GaussRational> m = linalg::zeros<GaussRational>(8, 7);
  for (int j = 1; j < 8; ++j) {
    Octonion col = octonion_mul(x, e(j));
    for (int i = 0; i < 8; ++i) m[i][j - 1] = col.x[i];
  }
  return m;
}

std::vector<linalg::Vec<GaussRational>> rows_of(const std::vector<Octonion>& os) {
  std::vector<linalg::Vec<GaussRational>> rows;
  for (const auto& o : os) rows.emplace_back(o.x.begin(), o.x.end());
  return rows;
}

// Top Chern class of Omega(d) on P^m via the Euler sequence, evaluated at integer d.
BigInt top_class_by_euler(int m, long d) {
  // c(Omega(d)) = (1 + (d-1)h)^{m+1} / (1 + d h), truncated at h^m.
  std::vector<BigInt> num(m + 1, 0), inv(m + 1, 0), out(m + 1, 0);
  for (int k = 0; k <= m; ++k) {
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), m + 1, k);
    BigInt p = 1;
    for (int j = 0; j < k; ++j) p *= (d - 1);
    num[k] = b * p;
    BigInt q = 1;
    for (int j = 0; j < k; ++j) q *= -d;
    inv[k] = q;
  }
  for (int i = 0; i <= m; ++i)
    for (int j = 0; i + j <= m; ++j) out[i + j] += num[i] * inv[j];
  return out[m];
}

}  // namespace

TEST_CASE("octonion unit products follow the relation table") {
  auto prod = [](int i, int j) { return octonion_mul(e(i), e(j)); };
  CHECK(prod(1, 2) == e(3));
  CHECK(prod(2, 1) == GaussRational(-1) * e(3));
  CHECK(prod(1, 4) == e(5));
  CHECK(prod(1, 6) == e(7));
  CHECK(prod(2, 4) == GaussRational(-1) * e(6));
  CHECK(prod(4, 2) == e(6));
  CHECK(prod(2, 5) == e(7));
  CHECK(prod(3, 4) == e(7));
  CHECK(prod(3, 5) == e(6));
  for (int i = 1; i < 8; ++i) CHECK(prod(i, i) == GaussRational(-1) * e(0));
  for (int i = 0; i < 8; ++i) {
    CHECK(prod(0, i) == e(i));
    CHECK(prod(i, 0) == e(i));
  }
}

TEST_CASE("every pair of imaginary units lies in exactly one oriented triple") {
  std::set<std::pair<int, int>> seen;
  for (const auto& t : octonion_triples())
    for (int s = 0; s < 3; ++s) {
      int a = std::min(t[s], t[(s + 1) % 3]), b = std::max(t[s], t[(s + 1) % 3]);
      CHECK(seen.insert({a, b}).second);
    }
  CHECK(seen.size() == 21);
  for (int i = 1; i < 8; ++i)
    for (int j = 1; j < 8; ++j) {
      if (i == j) continue;
      auto [s1, k1] = octonion_unit_product(i, j);
      auto [s2, k2] = octonion_unit_product(j, i);
      CHECK(k1 == k2);
      CHECK(s1 == -s2);
      CHECK(k1 != 0);
    }
}

TEST_CASE("norm and conjugate") {
  CHECK(octonion_norm(Octonion::one()) == GaussRational(1));
  Octonion null = e(1) + I * e(2);
  CHECK(octonion_norm(null) == GaussRational(0));
  CHECK(octonion_mul(null, null).is_zero());
  Octonion c = octonion_conj(e(0) + e(3));
  CHECK(c == e(0) - e(3));

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> dist(-5, 5);
  for (int t = 0; t < 200; ++t) {
    Octonion x;
    GaussRational sum;
    for (auto& k : x.x) {
      Rational re(dist(rng), 2);
      re.canonicalize();
      k = GaussRational(re, Rational(dist(rng)));
      sum += k * k;
    }
    CHECK(octonion_mul(octonion_conj(x), x) == sum * Octonion::one());
    CHECK(octonion_norm(x) == sum);
  }
}

TEST_CASE("octonion composition and alternativity on 1000 random pairs") {
  OctonionLawReport r = verify_octonion_laws(1000, 2024);
  CHECK(r.trials == 1000);
  CHECK(r.composition_failures == 0);
  CHECK(r.alternativity_failures == 0);
  CHECK(r.conjugation_failures == 0);
  CHECK(r.ok());
}

TEST_CASE("nesting_A on the standard form") {
  SymplecticSpace s = SymplecticSpace::standard(2);
  PointHyperplane ph = nesting_A(s, basis_vector(4, 0));
  // omega(e_1, x) = x_3, so the hyperplane is spanned by e_1, e_2, e_4.
  std::vector<QVec> expected{basis_vector(4, 0), basis_vector(4, 1), basis_vector(4, 3)};
  CHECK(linalg::same_subspace(ph.hyperplane, expected));
  CHECK(ph.hyperplane.size() == 3);
  CHECK(linalg::in_span(ph.hyperplane, basis_vector(4, 0)));

  QVec v = qvec({1, -2, 3, 5});
  PointHyperplane a = nesting_A(s, v);
  PointHyperplane b = nesting_A(s, qvec({2, -4, 6, 10}));
  CHECK(a.point == b.point);
  CHECK(a.hyperplane == b.hyperplane);

  PointHyperplane line = nesting_A(SymplecticSpace::standard(1), qvec({2, 7}));
  CHECK(line.hyperplane.size() == 1);
  CHECK(linalg::in_span(line.hyperplane, qvec({2, 7})));

  CHECK_THROWS_AS(nesting_A(s, qvec({0, 0, 0, 0})), PreconditionError);
  CHECK_THROWS_AS(nesting_A(s, qvec({1, 0})), PreconditionError);
  CHECK_THROWS_AS(SymplecticSpace::make({{qvec({0, 1}), qvec({1, 0})}}), PreconditionError);
  CHECK_THROWS_AS(SymplecticSpace::make({{qvec({0, 0}), qvec({0, 0})}}), PreconditionError);
}

TEST_CASE("non-proportional symplectic forms give different sections") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> dist(-3, 3);
  for (int n : {2, 3}) {
    SymplecticSpace s1 = SymplecticSpace::standard(n);
    QMat w = s1.omega;
    w[0][1] += 1;
    w[1][0] -= 1;
    SymplecticSpace s2 = SymplecticSpace::make(w);
    bool differ = false;
    for (int t = 0; t < 50 && !differ; ++t) {
      QVec v(2 * n);
      for (auto& c : v) c = Rational(dist(rng));
      if (std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; })) continue;
      differ = nesting_A(s1, v).hyperplane != nesting_A(s2, v).hyperplane;
    }
    CHECK(differ);

    // Proportional forms agree everywhere.
    QMat w3 = s1.omega;
    for (auto& row : w3)
      for (auto& c : row) c *= Rational(-5, 2);
    SymplecticSpace s3 = SymplecticSpace::make(w3);
    for (int t = 0; t < 20; ++t) {
      QVec v(2 * n);
      for (auto& c : v) c = Rational(dist(rng));
      if (std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; })) continue;
      CHECK(nesting_A(s1, v).hyperplane == nesting_A(s3, v).hyperplane);
    }
  }
}

TEST_CASE("twist solver for the tangent bundle of P^m") {
  CHECK(nesting_A_cohomology_solver(3).roots == std::vector<long>{2});
  CHECK(nesting_A_cohomology_solver(4).roots.empty());
  // (1 - 2)^6 = 1, so d = 2 is a root for m = 5.
  CHECK(nesting_A_cohomology_solver(5).roots == std::vector<long>{2});
  CHECK_THROWS_AS(nesting_A_cohomology_solver(1), PreconditionError);

  for (int m = 2; m <= 15; ++m) {
    TwistReport r = nesting_A_cohomology_solver(m);
    std::vector<long> oracle;
    for (long d = -40; d <= 40; ++d)
      if (top_class_by_euler(m, d) == 0) oracle.push_back(d);
    CHECK_MESSAGE(r.roots == oracle, "m = " << m);
    for (long d = -6; d <= 6; ++d)
      CHECK(r.top_class.eval(Rational(d)) == Rational(top_class_by_euler(m, d)));
    if (m % 2 == 1) CHECK(r.roots == std::vector<long>{2});
    else CHECK(r.roots.empty());
  }
}

TEST_CASE("nesting_B3 with a = 1 is the kernel of left multiplication") {
  Octonion x = e(1) + I * e(2);
  std::vector<Octonion> w = nesting_B3(Octonion::one(), x);
  CHECK(w.size() == 3);
  CHECK(linalg::in_span(rows_of(w), linalg::Vec<GaussRational>(x.x.begin(), x.x.end())));
  // Oracle: rank of L_x on {y_0 = 0} is 4, leaving a 3-dimensional kernel.
  auto m = left_mult_on_imaginary(x);
  CHECK(linalg::rank(m) == 4);
  std::vector<linalg::Vec<GaussRational>> lifted;
  for (const auto& k : linalg::kernel(m, 7)) {
    linalg::Vec<GaussRational> v(8, GaussRational(0));
    for (int i = 0; i < 7; ++i) v[i + 1] = k[i];
    lifted.push_back(v);
  }
  CHECK(linalg::same_subspace(rows_of(w), lifted));
  // x(xa) = (xx)a = 0.
  CHECK(octonion_mul(x, octonion_mul(x, e(5) + e(0))).is_zero());
}

TEST_CASE("nesting_B3 with a = 1 matches left multiplication on random null x") {
  SectionReport unused = verify_section(ConstructionKind::B3, 3, 0, 1);
  CHECK(unused.ok());
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> dist(-3, 3);
  for (int t = 0; t < 30; ++t) {
    GaussRational c1(Rational(dist(rng)), Rational(dist(rng)));
    GaussRational c2(Rational(dist(rng)), Rational(dist(rng)));
    Octonion x = c1 * (e(1) + I * e(2)) + c2 * (e(3) - I * e(7));
    if (x.is_zero()) continue;
    REQUIRE(octonion_mul(x, x).is_zero());
    auto w = nesting_B3(Octonion::one(), x);
    std::vector<linalg::Vec<GaussRational>> lifted;
    for (const auto& k : linalg::kernel(left_mult_on_imaginary(x), 7)) {
      linalg::Vec<GaussRational> v(8, GaussRational(0));
      for (int i = 0; i < 7; ++i) v[i + 1] = k[i];
      lifted.push_back(v);
    }
    CHECK(linalg::same_subspace(rows_of(w), lifted));
  }
}

TEST_CASE("nesting_B3 rejects bad inputs") {
  CHECK_THROWS_AS(nesting_B3(e(1) + I * e(2), e(1) + I * e(2)), NonInvertibleError);
  CHECK_THROWS_AS(nesting_B3(Octonion::one(), e(1)), NotOnQuadricError);
  CHECK_THROWS_AS(nesting_B3(Octonion::one(), Octonion{}), NotOnQuadricError);
  // x_0 != 0 forces x x != 0.
  CHECK_THROWS_AS(nesting_B3(Octonion::one(), e(0) + e(1) + I * e(2)), NotOnQuadricError);
}

TEST_CASE("twist solver for the spinor bundle on the 5-quadric") {
  B3TwistReport r = nesting_B3_chern_solver();
  CHECK(r.quartic == UniPoly::from_ints({0, -1, 2, -2, 1}));
  REQUIRE(r.branches.size() == 2);
  CHECK(r.branches[0].ell == 0);
  CHECK_FALSE(r.branches[0].admissible);
  CHECK(r.branches[1].ell == 1);
  CHECK(r.branches[1].admissible);
  CHECK(r.branches[1].d == std::array<Rational, 3>{Rational(1), Rational(1), Rational(0)});
  REQUIRE(r.ell.has_value());
  CHECK(*r.ell == 1);

  // Oracle: brute force over ell, d1, d2 and 2 d3.
  std::set<std::tuple<long, long, long, long>> oracle;
  for (long ell = -10; ell <= 10; ++ell)
    for (long d1 = -30; d1 <= 30; ++d1)
      for (long d2 = -30; d2 <= 30; ++d2)
        for (long twice_d3 = -60; twice_d3 <= 60; ++twice_d3) {
          if (twice_d3 * ell != 0) continue;
          if (2 * d2 * ell + twice_d3 != 2) continue;
          if (d1 * ell + d2 != 2 || d1 + ell != 2) continue;
          oracle.insert({ell, d1, d2, twice_d3});
        }
  std::set<std::tuple<long, long, long, long>> got;
  for (const auto& b : r.branches)
    got.insert({b.ell, b.d[0].get_num().get_si(), b.d[1].get_num().get_si(),
                Rational(2 * b.d[2]).get_num().get_si()});
  CHECK(got == oracle);
  CHECK(oracle == std::set<std::tuple<long, long, long, long>>{{0, 2, 2, 2}, {1, 1, 1, 0}});
}

TEST_CASE("nesting_D on the hyperbolic D4 model") {
  QuadraticSpace qs = QuadraticSpace::hyperbolic(4);
  std::vector<QVec> v4;
  for (int i = 0; i < 4; ++i) v4.push_back(basis_vector(8, i));
  QVec v = basis_vector(8, 0);
  v[4] = 1;  // e_1 + f_1
  IsotropicFlag flag = nesting_D(qs, v4, v);
  REQUIRE(flag.subspaces.size() == 3);
  std::vector<QVec> expected{basis_vector(8, 1), basis_vector(8, 2), basis_vector(8, 3)};
  CHECK(linalg::same_subspace(flag.subspaces[0], expected));
  CHECK(linalg::same_subspace(flag.subspaces[1], v4));
  CHECK(flag.subspaces[2].size() == 5);

  QVec v3 = v;
  for (auto& c : v3) c *= 3;
  CHECK(nesting_D(qs, v4, v3).subspaces == flag.subspaces);

  CHECK_THROWS_AS(nesting_D(qs, v4, basis_vector(8, 0)), PreconditionError);
  std::vector<QVec> bad = v4;
  bad[3] = basis_vector(8, 4);  // pairs with e_1
  CHECK_THROWS_AS(nesting_D(qs, bad, v), PreconditionError);
  std::vector<QVec> short_basis(v4.begin(), v4.begin() + 3);
  CHECK_THROWS_AS(nesting_D(qs, short_basis, v), PreconditionError);
  CHECK_THROWS_AS(QuadraticSpace::make({qvec({1, 1}), qvec({1, 1})}), PreconditionError);
}

TEST_CASE("randomized section checks") {
  for (int n : {2, 3, 4}) {
    SectionReport r = verify_section(ConstructionKind::A, n, 100, 7);
    CHECK_MESSAGE(r.ok(), r.to_json().dump());
  }
  SectionReport b3 = verify_section(ConstructionKind::B3, 3, 100, 7);
  CHECK_MESSAGE(b3.ok(), b3.to_json().dump());
  for (int n : {4, 5, 6}) {
    SectionReport r = verify_section(ConstructionKind::D, n, 100, 7);
    CHECK_MESSAGE(r.ok(), r.to_json().dump());
  }
}

TEST_CASE("section reports are deterministic and serialize") {
  SectionReport a = verify_section(ConstructionKind::D, 4, 10, 99);
  SectionReport b = verify_section(ConstructionKind::D, 4, 10, 99);
  CHECK(a.to_json() == b.to_json());
  auto j = a.to_json();
  CHECK(j["construction"] == "D");
  CHECK(j["trials"] == 10);
  CHECK(j["passed"] == 10);
  CHECK(j["ok"] == true);
  CHECK(j["witness"].is_null());
  CHECK(parse_construction("B3") == ConstructionKind::B3);
  CHECK_THROWS_AS(parse_construction("E8"), ParseError);
}

TEST_CASE("quotient twist refutation on D_n(n-1)") {
  for (int n = 4; n <= 12; ++n) {
    RecursionReport r = nesting_D_recursion_checker(n);
    CHECK(r.restriction_identity);
    CHECK(r.candidates == std::vector<std::pair<long, long>>{{2, 1}});
    CHECK(r.forced_chain == std::vector<long>(n - 2, 1));
    CHECK(r.contradiction);
    CHECK(r.series_solutions.empty());
  }
  CHECK_THROWS_AS(nesting_D_recursion_checker(3), PreconditionError);
}

TEST_CASE("brute force over the coefficient chain finds nothing") {
  // p_1 + x = 2, p_{i+1} + p_i x = p_i + p_{i-1} x, p_{n-2} x = p_{n-2} + x p_{n-3}.
  for (int n : {4, 5, 6}) {
    int free = n - 2;
    int found = 0;
    std::vector<long> p(free + 1, 0);
    p[0] = 1;
    std::function<void(int, long)> rec = [&](int i, long x) {
      if (i > free) {
        bool ok = p[1] + x == 2;
        for (int k = 1; k <= n - 3 && ok; ++k) ok = p[k + 1] + p[k] * x == p[k] + p[k - 1] * x;
        ok = ok && p[n - 2] * x == p[n - 2] + x * p[n - 3];
        if (ok) ++found;
        return;
      }
      for (long val = 0; val <= 10; ++val) {
        p[i] = val;
        rec(i + 1, x);
      }
    };
    for (long x = -10; x <= 1; ++x)
      if (x != 0) rec(1, x);
    CHECK_MESSAGE(found == 0, "n = " << n);
  }
}
