#pragma once

// Explicit sections for (A_{2n-1},1,2n-1), (B3,1,3) and (D_n,n-1,n), the
// complexified octonions they use, and the integer solvers that rule out
// the remaining twists.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagnest/exactpoly.hpp"
#include "flagnest/gaussian.hpp"
#include "flagnest/linalg.hpp"

namespace flagnest {

using QVec = linalg::Vec<Rational>;
using QMat = linalg::Mat<Rational>;
using GVec = linalg::Vec<GaussRational>;

/// Even-dimensional space with a nondegenerate antisymmetric form.
struct SymplecticSpace {
  int dim = 0;
  QMat omega;

  /// Throws PreconditionError unless omega is square, antisymmetric, of even size and invertible.
  static SymplecticSpace make(QMat omega);
  /// omega(e_i, e_{n+i}) = 1 on a space of dimension 2n.
  static SymplecticSpace standard(int n);
  Rational form(const QVec& u, const QVec& v) const;
};

/// Space with a nondegenerate symmetric bilinear form b; q(v) = b(v, v).
struct QuadraticSpace {
  int dim = 0;
  QMat bilinear;

  static QuadraticSpace make(QMat bilinear);
  /// Basis e_1..e_n, f_1..f_n with b(e_i, f_i) = 1 and every other pairing zero.
  static QuadraticSpace hyperbolic(int n);
  Rational b(const QVec& u, const QVec& v) const;
  Rational q(const QVec& v) const { return b(v, v); }
  bool is_isotropic(const std::vector<QVec>& basis) const;
};

struct Octonion {
  std::array<GaussRational, 8> x{};  ///< coordinates on 1, e_1..e_7

  static Octonion one();
  /// e_i for 1 <= i <= 7, the unit for i = 0.
  static Octonion unit(int i);

  Octonion& operator+=(const Octonion& o);
  Octonion& operator-=(const Octonion& o);
  friend Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
  friend Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
  friend Octonion operator*(const GaussRational& s, Octonion a);
  bool operator==(const Octonion& o) const { return x == o.x; }
  bool is_zero() const;

  nlohmann::json to_json() const;
  std::string to_string() const;
};

/// The seven oriented triples (i, j, k) with e_i e_j = e_k, closed cyclically.
const std::array<std::array<int, 3>, 7>& octonion_triples();
/// Product of basis units as (sign, index); index 0 is the unit.
std::pair<int, int> octonion_unit_product(int i, int j);
Octonion octonion_mul(const Octonion& x, const Octonion& y);
Octonion octonion_conj(const Octonion& x);
/// Sum of the squares of the coordinates.
GaussRational octonion_norm(const Octonion& x);
/// Symmetric bilinear form with octonion_polar(x, x) = octonion_norm(x).
GaussRational octonion_polar(const Octonion& x, const Octonion& y);

// ---------------------------------------------------------------------------

struct PointHyperplane {
  QVec point;
  std::vector<QVec> hyperplane;  ///< reduced row echelon basis of ker omega(point, .)
};

/// [v] -> ([v] in ker omega(v, .)). Throws PreconditionError for v = 0 or a dimension mismatch.
PointHyperplane nesting_A(const SymplecticSpace& s, const QVec& point);

struct TwistReport {
  int m = 0;
  UniPoly top_class;       ///< c_m(Omega(d)) as a polynomial in d
  std::vector<long> roots;  ///< integer d with vanishing top class
};

/// Integer twists d admitting T_{P^m} -> O(d) -> 0 by top-class vanishing. Requires m >= 2.
TwistReport nesting_A_cohomology_solver(int m);

/// Basis of {y : x(ya) = 0, y_0 = 0}; the projectivization is a plane of Q^5 through [x].
/// Throws NonInvertibleError when N(a) = 0 and NotOnQuadricError unless x != 0 and x x = 0.
std::vector<Octonion> nesting_B3(const Octonion& a, const Octonion& x);

struct TwistBranch {
  long ell = 0;
  std::array<Rational, 3> d{};  ///< Chern coefficients of the rank-3 kernel
  bool admissible = false;      ///< survives the nonvanishing-section side condition ell != 0
};

struct B3TwistReport {
  UniPoly quartic;  ///< the consistency condition as a polynomial in ell
  std::vector<TwistBranch> branches;
  std::optional<long> ell;  ///< the unique admissible twist
};

/// Solves c_t(F)(1 + ell t) = 1 + 2t + 2t^2 + t^3 for rank-3 F.
B3TwistReport nesting_B3_chern_solver();

struct IsotropicFlag {
  std::vector<std::vector<QVec>> subspaces;  ///< reduced row echelon bases, increasing dimension
};

/// (V_n + v)^perp in V_n in V_n + v. Throws PreconditionError when V_n is not maximal isotropic
/// or q(v) = 0.
IsotropicFlag nesting_D(const QuadraticSpace& qs, const std::vector<QVec>& vn, const QVec& v);

struct RecursionReport {
  int n = 0;
  bool restriction_identity = false;  ///< (1+t)(1-t^n)/(1-t) = c_t(T(-1) + O(1)) on P^{n-1}
  /// (p_{n-2}, x) with p_{n-2} x = 2, p_{n-2} >= 0, x <= 1, x != 0.
  std::vector<std::pair<long, long>> candidates;
  std::vector<long> forced_chain;  ///< p_1..p_{n-2} forced by x = 1
  bool contradiction = false;
  /// Twists x in [-search_bound, 1] \ {0} whose quotient series has p_{n-1} = 0 and p_i >= 0.
  std::vector<long> series_solutions;
};

/// Refutes every twist x != 0 for the quotient of Q^vee(H) on D_n(n-1). Requires n >= 4.
RecursionReport nesting_D_recursion_checker(int n, long search_bound = 10);

// ---------------------------------------------------------------------------

enum class ConstructionKind { A, B3, D };

std::string to_string(ConstructionKind k);
/// "A", "B3" or "D"; throws ParseError.
ConstructionKind parse_construction(std::string_view text);

struct SectionReport {
  ConstructionKind kind = ConstructionKind::A;
  int n = 0;
  int trials = 0;
  int passed = 0;
  std::uint64_t seed = 0;
  std::optional<nlohmann::json> witness;  ///< first failing sample

  bool ok() const { return passed == trials; }
  nlohmann::json to_json() const;
};

/// Randomized exact checks of the section property and the flag invariants.
/// n is the half dimension for A (the diagram is A_{2n-1}), ignored for B3, the rank for D.
SectionReport verify_section(ConstructionKind kind, int n, int trials, std::uint64_t seed);

struct OctonionLawReport {
  int trials = 0;
  int composition_failures = 0;
  int alternativity_failures = 0;
  int conjugation_failures = 0;
  std::optional<nlohmann::json> witness;

  bool ok() const {
    return composition_failures == 0 && alternativity_failures == 0 && conjugation_failures == 0;
  }
};

/// N(xy) = N(x)N(y), x(xa) = (xx)a and x* x = N(x) on random Gaussian-rational octonions.
OctonionLawReport verify_octonion_laws(int trials, std::uint64_t seed);

}  // namespace flagnest
