#include "flagnest/constructions.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

#include "flagnest/errors.hpp"

namespace flagnest {

namespace {

using nlohmann::json;

json vec_json(const QVec& v) {
  json out = json::array();
  for (const auto& c : v) out.push_back(to_string(c));
  return out;
}

json mat_json(const QMat& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(vec_json(row));
  return out;
}

json basis_json(const std::vector<QVec>& basis) {
  json out = json::array();
  for (const auto& v : basis) out.push_back(vec_json(v));
  return out;
}

QVec scaled(const QVec& v, const Rational& c) {
  QVec out = v;
  for (auto& x : out) x *= c;
  return out;
}

/// Divides by the first nonzero coordinate.
QVec normalized(const QVec& v) {
  for (const auto& c : v)
    if (c != 0) return scaled(v, Rational(1) / c);
  return v;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

std::vector<long> integer_roots(const UniPoly& p) {
  std::vector<long> roots;
  if (p.is_zero()) throw PreconditionError("integer_roots of the zero polynomial");
  int low = 0;
  while (p.coefficient(low) == 0) ++low;
  if (low > 0) roots.push_back(0);
  Rational c = abs(p.coefficient(low));
  if (!is_integer(c) || !p.has_integer_coefficients())
    throw PreconditionError("integer_roots needs integer coefficients");
  for (int d : divisors(static_cast<int>(c.get_num().get_si())))
    for (long cand : {static_cast<long>(d), -static_cast<long>(d)})
      if (p.eval(Rational(cand)) == 0) roots.push_back(cand);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  long small(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  Rational rational() {
    Rational q(small(-4, 4), small(1, 3));
    q.canonicalize();
    return q;
  }
  GaussRational gauss() { return {rational(), rational()}; }
  QVec vec(int n) {
    QVec v(n);
    for (auto& c : v) c = Rational(small(-3, 3));
    return v;
  }
  QVec nonzero_vec(int n) {
    for (;;) {
      QVec v = vec(n);
      if (std::any_of(v.begin(), v.end(), [](const Rational& c) { return c != 0; })) return v;
    }
  }
  Rational nonzero_scalar() {
    for (;;) {
      Rational c = rational();
      if (c != 0) return c;
    }
  }

 private:
  std::mt19937_64 rng_;
};

SymplecticSpace random_symplectic(Sampler& s, int n) {
  SymplecticSpace std_form = SymplecticSpace::standard(n);
  for (;;) {
    QMat p(2 * n);
    for (auto& row : p) row = s.vec(2 * n);
    if (linalg::determinant(p) == 0) continue;
    return SymplecticSpace::make(linalg::mul(linalg::transpose(p), linalg::mul(std_form.omega, p)));
  }
}

/// Graph of a random antisymmetric map, then an optional reflection to reach the other family.
std::vector<QVec> random_maximal_isotropic(Sampler& s, const QuadraticSpace& qs) {
  int n = qs.dim / 2;
  QMat a = linalg::zeros<Rational>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a[i][j] = Rational(s.small(-3, 3));
      a[j][i] = -a[i][j];
    }
  std::vector<QVec> basis;
  for (int i = 0; i < n; ++i) {
    QVec v(2 * n, Rational(0));
    v[i] = 1;
    for (int j = 0; j < n; ++j) v[n + j] = a[i][j];
    basis.push_back(v);
  }
  if (s.small(0, 1) == 1) {
    QVec r;
    do r = s.vec(2 * n);
    while (qs.q(r) == 0);
    Rational qr = qs.q(r);
    for (auto& v : basis) {
      Rational c = Rational(2) * qs.b(v, r) / qr;
      for (int k = 0; k < 2 * n; ++k) v[k] -= c * r[k];
    }
  }
  return basis;
}

Octonion random_octonion(Sampler& s) {
  Octonion o;
  for (auto& c : o.x) c = s.gauss();
  return o;
}

/// c1(e1+ie2) + c2(e3+ie4) + c3(e5+ie6), moved by rational reflections of the imaginary part.
Octonion random_null_imaginary(Sampler& s) {
  for (;;) {
    Octonion o;
    for (int k = 0; k < 3; ++k) {
      GaussRational c = s.gauss();
      o.x[2 * k + 1] += c;
      o.x[2 * k + 2] += c * GaussRational::i();
    }
    for (int step = 0; step < 3; ++step) {
      QVec r = s.nonzero_vec(7);
      Rational rr = linalg::dot(r, r);
      GaussRational proj;
      for (int k = 0; k < 7; ++k) proj += GaussRational(r[k], Rational(0)) * o.x[k + 1];
      GaussRational f = proj * GaussRational(Rational(2) / rr, Rational(0));
      for (int k = 0; k < 7; ++k) o.x[k + 1] -= f * GaussRational(r[k], Rational(0));
    }
    if (!o.is_zero()) return o;
  }
}

linalg::Vec<GaussRational> coords(const Octonion& o) { return {o.x.begin(), o.x.end()}; }

}  // namespace

// ---------------------------------------------------------------------------
// forms

SymplecticSpace SymplecticSpace::make(QMat omega) {
  std::size_t n = omega.size();
  if (n == 0 || n % 2 != 0) throw PreconditionError("symplectic form needs even positive size");
  for (const auto& row : omega)
    if (row.size() != n) throw PreconditionError("symplectic form must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (omega[i][j] != -omega[j][i]) throw PreconditionError("form is not antisymmetric");
  if (linalg::determinant(omega) == 0) throw PreconditionError("form is degenerate");
  return {static_cast<int>(n), std::move(omega)};
}

SymplecticSpace SymplecticSpace::standard(int n) {
  if (n < 1) throw PreconditionError("symplectic half dimension must be positive");
  QMat w = linalg::zeros<Rational>(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    w[i][n + i] = 1;
    w[n + i][i] = -1;
  }
  return {2 * n, std::move(w)};
}

Rational SymplecticSpace::form(const QVec& u, const QVec& v) const {
  return linalg::pairing(omega, u, v);
}

QuadraticSpace QuadraticSpace::make(QMat bilinear) {
  std::size_t n = bilinear.size();
  if (n == 0) throw PreconditionError("empty quadratic space");
  for (const auto& row : bilinear)
    if (row.size() != n) throw PreconditionError("bilinear form must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (bilinear[i][j] != bilinear[j][i]) throw PreconditionError("form is not symmetric");
  if (linalg::determinant(bilinear) == 0) throw PreconditionError("form is degenerate");
  return {static_cast<int>(n), std::move(bilinear)};
}

QuadraticSpace QuadraticSpace::hyperbolic(int n) {
  if (n < 1) throw PreconditionError("hyperbolic rank must be positive");
  QMat g = linalg::zeros<Rational>(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) g[i][n + i] = g[n + i][i] = 1;
  return {2 * n, std::move(g)};
}

Rational QuadraticSpace::b(const QVec& u, const QVec& v) const {
  return linalg::pairing(bilinear, u, v);
}

bool QuadraticSpace::is_isotropic(const std::vector<QVec>& basis) const {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j)
      if (b(basis[i], basis[j]) != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// octonions

const std::array<std::array<int, 3>, 7>& octonion_triples() {
  static const std::array<std::array<int, 3>, 7> t{{
      {1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {4, 2, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6},
  }};
  return t;
}

namespace {

std::array<std::array<std::pair<int, int>, 8>, 8> build_table() {
  std::array<std::array<std::pair<int, int>, 8>, 8> t{};
  for (int i = 0; i < 8; ++i) {
    t[0][i] = {1, i};
    t[i][0] = {1, i};
  }
  for (int i = 1; i < 8; ++i) t[i][i] = {-1, 0};
  for (const auto& tr : octonion_triples())
    for (int s = 0; s < 3; ++s) {
      int a = tr[s], b = tr[(s + 1) % 3], c = tr[(s + 2) % 3];
      t[a][b] = {1, c};
      t[b][a] = {-1, c};
    }
  return t;
}

}  // namespace

std::pair<int, int> octonion_unit_product(int i, int j) {
  static const auto table = build_table();
  if (i < 0 || i > 7 || j < 0 || j > 7) throw PreconditionError("octonion unit out of range");
  return table[i][j];
}

Octonion Octonion::one() { return unit(0); }

Octonion Octonion::unit(int i) {
  if (i < 0 || i > 7) throw PreconditionError("octonion unit out of range");
  Octonion o;
  o.x[i] = 1;
  return o;
}

Octonion& Octonion::operator+=(const Octonion& o) {
  for (int i = 0; i < 8; ++i) x[i] += o.x[i];
  return *this;
}

Octonion& Octonion::operator-=(const Octonion& o) {
  for (int i = 0; i < 8; ++i) x[i] -= o.x[i];
  return *this;
}

Octonion operator*(const GaussRational& s, Octonion a) {
  for (auto& c : a.x) c *= s;
  return a;
}

bool Octonion::is_zero() const {
  return std::all_of(x.begin(), x.end(), [](const GaussRational& c) { return c == GaussRational(0); });
}

json Octonion::to_json() const {
  json out = json::array();
  for (const auto& c : x) out.push_back(c.to_string());
  return out;
}

std::string Octonion::to_string() const {
  std::string s;
  for (int i = 0; i < 8; ++i) {
    if (x[i] == GaussRational(0)) continue;
    if (!s.empty()) s += " + ";
    s += "(" + x[i].to_string() + ")";
    if (i > 0) s += "e" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

Octonion octonion_mul(const Octonion& a, const Octonion& b) {
  Octonion out;
  for (int i = 0; i < 8; ++i) {
    if (a.x[i] == GaussRational(0)) continue;
    for (int j = 0; j < 8; ++j) {
      if (b.x[j] == GaussRational(0)) continue;
      auto [sign, k] = octonion_unit_product(i, j);
      GaussRational p = a.x[i] * b.x[j];
      if (sign < 0) out.x[k] -= p;
      else out.x[k] += p;
    }
  }
  return out;
}

Octonion octonion_conj(const Octonion& x) {
  Octonion out = x;
  for (int i = 1; i < 8; ++i) out.x[i] = -out.x[i];
  return out;
}

GaussRational octonion_polar(const Octonion& x, const Octonion& y) {
  GaussRational s;
  for (int i = 0; i < 8; ++i) s += x.x[i] * y.x[i];
  return s;
}

GaussRational octonion_norm(const Octonion& x) { return octonion_polar(x, x); }

// ---------------------------------------------------------------------------
// constructions

PointHyperplane nesting_A(const SymplecticSpace& s, const QVec& point) {
  if (static_cast<int>(point.size()) != s.dim) throw PreconditionError("point has wrong dimension");
  if (std::all_of(point.begin(), point.end(), [](const Rational& c) { return c == 0; }))
    throw PreconditionError("the zero vector is not a projective point");
  PointHyperplane out;
  out.point = normalized(point);
  out.hyperplane = linalg::canonical_basis(linalg::orthogonal_complement(s.omega, {out.point}));
  return out;
}

TwistReport nesting_A_cohomology_solver(int m) {
  if (m < 2) throw PreconditionError("nesting_A_cohomology_solver requires m >= 2");
  TwistReport r;
  r.m = m;
  UniPoly minus_d = UniPoly::monomial(Rational(-1), 1);
  for (int i = 0; i <= m; ++i) {
    UniPoly term = UniPoly::constant(Rational(binomial(m + 1, i)));
    for (int k = 0; k < m - i; ++k) term *= minus_d;
    r.top_class += term;
  }
  if (m % 2 != 0) r.top_class = -r.top_class;
  r.roots = integer_roots(r.top_class);
  return r;
}

std::vector<Octonion> nesting_B3(const Octonion& a, const Octonion& x) {
  if (octonion_norm(a) == GaussRational(0)) throw NonInvertibleError("N(a) = 0");
  if (x.is_zero() || !octonion_mul(x, x).is_zero())
    throw NotOnQuadricError("x is not a point of Q^5 (need x != 0 and x x = 0)");
  linalg::Mat<GaussRational> m = linalg::zeros<GaussRational>(8, 7);
  for (int j = 1; j < 8; ++j) {
    Octonion col = octonion_mul(x, octonion_mul(Octonion::unit(j), a));
    for (int i = 0; i < 8; ++i) m[i][j - 1] = col.x[i];
  }
  auto ker = linalg::canonical_basis(linalg::kernel(m, 7));
  std::vector<Octonion> plane;
  for (const auto& v : ker) {
    Octonion o;
    for (int k = 0; k < 7; ++k) o.x[k + 1] = v[k];
    plane.push_back(o);
  }
  std::vector<linalg::Vec<GaussRational>> rows;
  for (const auto& o : plane) rows.push_back(coords(o));
  if (plane.size() != 3) throw InternalInconsistency("B3 section is not a plane");
  if (!linalg::in_span(rows, coords(x))) throw InternalInconsistency("B3 plane misses [x]");
  for (std::size_t i = 0; i < plane.size(); ++i)
    for (std::size_t j = i; j < plane.size(); ++j)
      if (octonion_polar(plane[i], plane[j]) != GaussRational(0))
        throw InternalInconsistency("B3 plane is not contained in Q^5");
  return plane;
}

B3TwistReport nesting_B3_chern_solver() {
  const std::array<long, 4> spinor{1, 2, 2, 1};
  UniPoly ell = UniPoly::monomial(Rational(1), 1);
  std::array<UniPoly, 4> d;
  d[0] = UniPoly::constant(Rational(1));
  for (int i = 1; i <= 3; ++i) d[i] = UniPoly::constant(Rational(spinor[i])) - ell * d[i - 1];
  B3TwistReport r;
  r.quartic = ell * d[3];
  Rational lead = r.quartic.coefficient(r.quartic.degree().value());
  r.quartic *= Rational(1) / lead;
  for (long root : integer_roots(r.quartic)) {
    TwistBranch b;
    b.ell = root;
    for (int i = 1; i <= 3; ++i) b.d[i - 1] = d[i].eval(Rational(root));
    bool integral = is_integer(b.d[0]) && is_integer(b.d[1]) && is_integer(Rational(2) * b.d[2]);
    if (!integral) continue;
    b.admissible = root != 0;
    r.branches.push_back(b);
  }
  for (const auto& b : r.branches)
    if (b.admissible) {
      if (r.ell) throw InternalInconsistency("several admissible B3 twists");
      r.ell = b.ell;
    }
  return r;
}

IsotropicFlag nesting_D(const QuadraticSpace& qs, const std::vector<QVec>& vn, const QVec& v) {
  int n = qs.dim / 2;
  if (qs.dim % 2 != 0) throw PreconditionError("nesting_D needs an even-dimensional space");
  for (const auto& w : vn)
    if (static_cast<int>(w.size()) != qs.dim) throw PreconditionError("V_n vector has wrong dimension");
  if (static_cast<int>(v.size()) != qs.dim) throw PreconditionError("v has wrong dimension");
  if (static_cast<int>(linalg::span_dim(vn)) != n || !qs.is_isotropic(vn))
    throw PreconditionError("V_n is not maximal isotropic");
  if (qs.q(v) == 0) throw PreconditionError("v is isotropic");

  std::vector<QVec> big = vn;
  big.push_back(v);
  std::vector<QVec> small = linalg::orthogonal_complement(qs.bilinear, big);

  IsotropicFlag flag;
  flag.subspaces = {linalg::canonical_basis(small), linalg::canonical_basis(vn),
                    linalg::canonical_basis(big)};
  const auto& s = flag.subspaces;
  if (static_cast<int>(s[0].size()) != n - 1 || static_cast<int>(s[2].size()) != n + 1)
    throw InternalInconsistency("isotropic flag has wrong dimensions");
  if (!linalg::subspace_of(s[0], s[1]) || !qs.is_isotropic(s[0]))
    throw InternalInconsistency("V_{n-1} is not an isotropic subspace of V_n");
  if (!linalg::same_subspace(linalg::orthogonal_complement(qs.bilinear, s[0]), s[2]))
    throw InternalInconsistency("V_{n-1}^perp differs from V_{n+1}");
  return flag;
}

RecursionReport nesting_D_recursion_checker(int n, long search_bound) {
  if (n < 4) throw PreconditionError("nesting_D_recursion_checker requires n >= 4");
  RecursionReport r;
  r.n = n;

  UniPoly one_plus_t = UniPoly::from_ints({1, 1});
  UniPoly one_minus_t = UniPoly::from_ints({1, -1});
  UniPoly geometric = *exact_div(UniPoly::constant(Rational(1)) - UniPoly::monomial(Rational(1), n),
                                 one_minus_t);
  UniPoly lhs = truncate(one_plus_t * geometric, n - 1);
  UniPoly restricted = truncate(one_plus_t * series_inverse(one_minus_t, n - 1), n - 1);
  r.restriction_identity = lhs == restricted;

  for (int d : divisors(2))
    for (long x : {static_cast<long>(d), -static_cast<long>(d)}) {
      if (x > 1 || 2 % x != 0) continue;
      long p = 2 / x;
      if (p >= 0) r.candidates.push_back({p, x});
    }

  bool any_consistent = false;
  for (auto [p_top, x] : r.candidates) {
    std::vector<long> p{1, 2 - x};
    for (int i = 1; i + 1 <= n - 2; ++i) p.push_back(p[i] + p[i - 1] * x - p[i] * x);
    if (x == 1) r.forced_chain.assign(p.begin() + 1, p.end());
    bool consistent = p[n - 2] == p_top && p[n - 2] * x == p[n - 2] + x * p[n - 3];
    any_consistent = any_consistent || consistent;
  }
  r.contradiction = !any_consistent;

  for (long x = -search_bound; x <= 1; ++x) {
    if (x == 0) continue;
    UniPoly q = truncate(lhs * series_inverse(UniPoly::from_ints({1, x}), n - 1), n - 1);
    if (q.coefficient(n - 1) != 0) continue;
    bool nonneg = true;
    for (int i = 0; i < n - 1; ++i) nonneg = nonneg && q.coefficient(i) >= 0;
    if (nonneg) r.series_solutions.push_back(x);
  }
  return r;
}

// ---------------------------------------------------------------------------
// verification

std::string to_string(ConstructionKind k) {
  switch (k) {
    case ConstructionKind::A: return "A";
    case ConstructionKind::B3: return "B3";
    case ConstructionKind::D: return "D";
  }
  return "?";
}

ConstructionKind parse_construction(std::string_view text) {
  if (text == "A") return ConstructionKind::A;
  if (text == "B3") return ConstructionKind::B3;
  if (text == "D") return ConstructionKind::D;
  throw ParseError("unknown construction '" + std::string(text) + "' (expected A, B3 or D)");
}

json SectionReport::to_json() const {
  json j{{"construction", flagnest::to_string(kind)},
         {"n", n},
         {"trials", trials},
         {"passed", passed},
         {"seed", seed},
         {"ok", ok()}};
  j["witness"] = witness ? *witness : json(nullptr);
  return j;
}

namespace {

std::optional<std::string> check_A(const SymplecticSpace& s, const QVec& v, const Rational& c) {
  PointHyperplane ph = nesting_A(s, v);
  if (linalg::span_dim(std::vector<QVec>{ph.point, v}) != 1) return "point not recovered";
  if (static_cast<int>(ph.hyperplane.size()) != s.dim - 1) return "hyperplane dimension";
  if (!linalg::in_span(ph.hyperplane, v)) return "point off its hyperplane";
  for (const auto& h : ph.hyperplane)
    if (s.form(v, h) != 0) return "hyperplane not omega-orthogonal to the point";
  PointHyperplane again = nesting_A(s, scaled(v, c));
  if (again.point != ph.point || again.hyperplane != ph.hyperplane) return "not projective";
  return std::nullopt;
}

std::optional<std::string> check_B3(const Octonion& a, const Octonion& x, const GaussRational& c) {
  std::vector<Octonion> plane = nesting_B3(a, x);
  std::vector<linalg::Vec<GaussRational>> rows;
  for (const auto& w : plane) rows.push_back(coords(w));
  if (linalg::span_dim(rows) != 3) return "plane dimension";
  if (!linalg::in_span(rows, coords(x))) return "plane misses [x]";
  for (const auto& w : plane) {
    if (w.x[0] != GaussRational(0)) return "plane leaves the hyperplane x_0 = 0";
    if (!octonion_mul(x, octonion_mul(w, a)).is_zero()) return "x(wa) != 0";
    if (!octonion_mul(w, w).is_zero()) return "w w != 0";
  }
  for (std::size_t i = 0; i < plane.size(); ++i)
    for (std::size_t j = i + 1; j < plane.size(); ++j)
      if (octonion_polar(plane[i], plane[j]) != GaussRational(0)) return "plane not isotropic";
  std::vector<Octonion> rescaled = nesting_B3(c * a, c * x);
  std::vector<linalg::Vec<GaussRational>> rows2;
  for (const auto& w : rescaled) rows2.push_back(coords(w));
  if (!linalg::same_subspace(rows, rows2)) return "not projective";
  return std::nullopt;
}

std::optional<std::string> check_D(const QuadraticSpace& qs, const std::vector<QVec>& vn, const QVec& v,
                                   const Rational& c) {
  int n = qs.dim / 2;
  IsotropicFlag f = nesting_D(qs, vn, v);
  const auto& s = f.subspaces;
  if (s.size() != 3) return "flag length";
  if (static_cast<int>(linalg::span_dim(s[0])) != n - 1 ||
      static_cast<int>(linalg::span_dim(s[1])) != n ||
      static_cast<int>(linalg::span_dim(s[2])) != n + 1)
    return "flag dimensions";
  if (!linalg::same_subspace(s[1], vn)) return "V_n not recovered";
  if (!linalg::subspace_of(s[0], s[1]) || !linalg::subspace_of(s[1], s[2])) return "not nested";
  if (!linalg::in_span(s[2], v)) return "v outside V_{n+1}";
  if (!qs.is_isotropic(s[0]) || !qs.is_isotropic(s[1])) return "isotropy";
  for (const auto& w : s[0])
    for (const auto& u : s[2])
      if (qs.b(w, u) != 0) return "V_{n-1} not orthogonal to V_{n+1}";
  if (!linalg::same_subspace(linalg::orthogonal_complement(qs.bilinear, s[0]), s[2]))
    return "V_{n-1}^perp != V_{n+1}";
  IsotropicFlag g = nesting_D(qs, vn, scaled(v, c));
  if (g.subspaces != f.subspaces) return "not projective in v";
  return std::nullopt;
}

}  // namespace

SectionReport verify_section(ConstructionKind kind, int n, int trials, std::uint64_t seed) {
  if (trials < 0) throw PreconditionError("trials must be nonnegative");
  if (kind == ConstructionKind::A && n < 1) throw PreconditionError("A needs half dimension >= 1");
  if (kind == ConstructionKind::D && n < 2) throw PreconditionError("D needs rank >= 2");
  SectionReport rep;
  rep.kind = kind;
  rep.n = kind == ConstructionKind::B3 ? 3 : n;
  rep.trials = trials;
  rep.seed = seed;
  Sampler s(seed);
  for (int t = 0; t < trials; ++t) {
    std::optional<std::string> failure;
    json sample;
    try {
      switch (kind) {
        case ConstructionKind::A: {
          SymplecticSpace sp = random_symplectic(s, n);
          QVec v = s.nonzero_vec(2 * n);
          Rational c = s.nonzero_scalar();
          sample = {{"omega", mat_json(sp.omega)}, {"point", vec_json(v)}};
          failure = check_A(sp, v, c);
          break;
        }
        case ConstructionKind::B3: {
          Octonion a;
          do a = random_octonion(s);
          while (octonion_norm(a) == GaussRational(0));
          Octonion x = random_null_imaginary(s);
          GaussRational c;
          do c = s.gauss();
          while (c == GaussRational(0));
          sample = {{"a", a.to_json()}, {"x", x.to_json()}};
          failure = check_B3(a, x, c);
          break;
        }
        case ConstructionKind::D: {
          QuadraticSpace qs = QuadraticSpace::hyperbolic(n);
          std::vector<QVec> vn = random_maximal_isotropic(s, qs);
          QVec v;
          do v = s.vec(2 * n);
          while (qs.q(v) == 0);
          sample = {{"V_n", basis_json(vn)}, {"v", vec_json(v)}};
          failure = check_D(qs, vn, v, Rational(3));
          break;
        }
      }
    } catch (const Error& e) {
      failure = std::string("error: ") + e.what();
    }
    if (!failure) {
      ++rep.passed;
    } else if (!rep.witness) {
      sample["trial"] = t;
      sample["check"] = *failure;
      rep.witness = sample;
    }
  }
  return rep;
}

OctonionLawReport verify_octonion_laws(int trials, std::uint64_t seed) {
  OctonionLawReport rep;
  rep.trials = trials;
  Sampler s(seed);
  for (int t = 0; t < trials; ++t) {
    Octonion x = random_octonion(s), y = random_octonion(s);
    std::string failed;
    if (octonion_norm(octonion_mul(x, y)) != octonion_norm(x) * octonion_norm(y)) {
      ++rep.composition_failures;
      failed = "N(xy) = N(x)N(y)";
    }
    if (octonion_mul(x, octonion_mul(x, y)) != octonion_mul(octonion_mul(x, x), y)) {
      ++rep.alternativity_failures;
      failed = "x(xa) = (xx)a";
    }
    if (octonion_mul(octonion_conj(x), x) != octonion_norm(x) * Octonion::one()) {
      ++rep.conjugation_failures;
      failed = "x* x = N(x)";
    }
    if (!failed.empty() && !rep.witness)
      rep.witness = json{{"trial", t}, {"x", x.to_json()}, {"y", y.to_json()}, {"check", failed}};
  }
  return rep;
}

}  // namespace flagnest
