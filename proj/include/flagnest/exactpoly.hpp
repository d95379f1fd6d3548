/** @file exactpoly.hpp
 *  Exact rational scalars, univariate polynomials in t, and sparse graded
 *  polynomials over a named generator table.
 */
#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace flagnest {

using BigInt = mpz_class;
using Rational = mpq_class;  ///< ExactScalar: reduced fraction, positive denominator.

std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);
/// Parses "a", "-a" or "a/b"; throws ParseError.
Rational parse_rational(std::string_view text);
bool is_integer(const Rational& q);

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
class Degree {
 public:
  static Degree neg_infinity() { return Degree(); }
  static Degree of(int d) { return Degree(d); }
  bool is_neg_infinity() const { return neg_inf_; }
  /// Throws PreconditionError on minus infinity.
  int value() const;
  std::strong_ordering operator<=>(const Degree& other) const;
  bool operator==(const Degree& other) const = default;
  std::string to_string() const;

 private:
  Degree() = default;
  explicit Degree(int d) : neg_inf_(false), value_(d) {}
  bool neg_inf_ = true;
  int value_ = 0;
};

/// Polynomial in one variable t with rational coefficients, trailing zeros trimmed.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  static UniPoly from_ints(const std::vector<long>& coeffs);
  static UniPoly constant(const Rational& c);
  static UniPoly monomial(const Rational& c, int degree);

  Degree degree() const;
  bool is_zero() const { return c_.empty(); }
  /// Coefficient of t^i; zero outside the stored range (including negative i).
  Rational coefficient(int i) const;
  const std::vector<Rational>& coefficients() const { return c_; }
  bool has_integer_coefficients() const;
  bool has_nonnegative_coefficients() const;
  Rational eval(const Rational& x) const;

  UniPoly operator-() const;
  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o);
  UniPoly& operator*=(const Rational& s);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  /// Ascending human form, e.g. "1 + 2t + 2t^2 + t^3".
  std::string to_string(char var = 't') const;
  /// Coefficient array of rational strings, index = degree.
  nlohmann::json to_json() const;
  static UniPoly from_json(const nlohmann::json& j);
  /// Inverse of to_string for integer or rational coefficients.
  static UniPoly parse(std::string_view text, char var = 't');

 private:
  void trim();
  std::vector<Rational> c_;
};

UniPoly poly_mul(const UniPoly& p, const UniPoly& q);
/// p(-t).
UniPoly substitute_neg(const UniPoly& p);
Rational coeff(const UniPoly& p, int degree);
/// All nonzero coefficients of positive degree.
std::map<int, Rational> coeff_plus(const UniPoly& p);
/// Quotient r with p = q * r, or nullopt when q does not divide p. Throws on q = 0.
std::optional<UniPoly> exact_div(const UniPoly& p, const UniPoly& q);
/// Drops every term of degree above max_degree.
UniPoly truncate(const UniPoly& p, int max_degree);
/// Power series inverse of p modulo t^(max_degree+1); requires p(0) != 0.
UniPoly series_inverse(const UniPoly& p, int max_degree);
/// The d-th cyclotomic polynomial in t.
UniPoly cyclotomic(int d);
/// Positive divisors of n in increasing order.
std::vector<int> divisors(int n);

// ---------------------------------------------------------------------------
// Graded polynomials

/// Generator names with their weighted degrees.
struct GeneratorTable {
  std::vector<std::string> names;
  std::vector<int> degrees;

  std::size_t size() const { return names.size(); }
  /// Index of the named generator or -1.
  int index_of(std::string_view name) const;
  bool operator==(const GeneratorTable& o) const = default;
};
using TablePtr = std::shared_ptr<const GeneratorTable>;
TablePtr make_table(const std::vector<std::pair<std::string, int>>& gens);

using Exponents = std::vector<int>;

/// Sparse polynomial in the generators of a table, keyed by exponent vectors.
class GradedPoly {
 public:
  GradedPoly() = default;
  explicit GradedPoly(TablePtr table);
  static GradedPoly constant(TablePtr table, const Rational& c);
  static GradedPoly generator(TablePtr table, int index);
  static GradedPoly generator(TablePtr table, std::string_view name);

  const TablePtr& table() const { return table_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Exponents& e, const Rational& c);
  Rational coefficient(const Exponents& e) const;

  int weighted_degree(const Exponents& e) const;
  bool is_homogeneous() const;
  /// Common weighted degree of all terms; nullopt for zero. Throws if inhomogeneous.
  std::optional<int> degree() const;
  GradedPoly homogeneous_part(int d) const;
  /// True when generator `index` occurs in some term.
  bool uses(int index) const;

  GradedPoly operator-() const;
  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);
  GradedPoly& operator*=(const Rational& s);
  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator*(GradedPoly a, const Rational& s) { return a *= s; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
  bool operator==(const GradedPoly& o) const;

  GradedPoly pow(int e) const;
  /// Replaces generator `index` by `value` (same table).
  GradedPoly substitute(int index, const GradedPoly& value) const;
  /// Re-expresses over another table; index_map[i] is the target index of generator i
  /// (or -1 when generator i must not occur).
  GradedPoly retable(const TablePtr& target, const std::vector<int>& index_map) const;

  std::string to_string() const;
  /// {monomial-string: rational-string}.
  nlohmann::json to_json() const;
  static GradedPoly from_json(const TablePtr& table, const nlohmann::json& j);

 private:
  void require_same_table(const GradedPoly& o) const;
  TablePtr table_;
  std::map<Exponents, Rational> terms_;
};

GradedPoly poly_mul(const GradedPoly& p, const GradedPoly& q);
/// "1", "q1", "q1^2*b2".
std::string monomial_string(const GeneratorTable& table, const Exponents& e);
Exponents parse_monomial(const GeneratorTable& table, std::string_view text);
/// All exponent vectors of the given weighted degree, in lexicographic order.
std::vector<Exponents> monomials_of_degree(const GeneratorTable& table, int degree);

/// Polynomial in t whose coefficients are graded polynomials.
class GradedUniPoly {
 public:
  GradedUniPoly() = default;
  explicit GradedUniPoly(TablePtr table) : table_(std::move(table)) {}
  GradedUniPoly(TablePtr table, std::vector<GradedPoly> coeffs);
  /// 1 + g_1 t + g_2 t^2 + ... from generator names (empty name = zero coefficient).
  static GradedUniPoly from_generators(TablePtr table, const std::vector<std::string>& names,
                                       int stride = 1);

  const TablePtr& table() const { return table_; }
  Degree degree() const;
  GradedPoly coeff(int i) const;
  /// Nonzero coefficients of positive degree in t.
  std::vector<std::pair<int, GradedPoly>> coeff_plus() const;
  const std::vector<GradedPoly>& coefficients() const { return c_; }

  friend GradedUniPoly operator*(const GradedUniPoly& a, const GradedUniPoly& b);
  friend GradedUniPoly operator+(const GradedUniPoly& a, const GradedUniPoly& b);
  bool operator==(const GradedUniPoly& o) const;

  std::string to_string() const;

 private:
  void trim();
  TablePtr table_;
  std::vector<GradedPoly> c_;
};

GradedUniPoly poly_mul(const GradedUniPoly& p, const GradedUniPoly& q);
GradedUniPoly substitute_neg(const GradedUniPoly& p);
/// Embeds a rational polynomial in h*t, i.e. sum c_i (g t)^i for generator g.
GradedUniPoly scaled_by_generator(const TablePtr& table, const UniPoly& p, int generator);

/// Elementary symmetric polynomial e_i of the listed variables raised to `power`.
GradedPoly elementary_symmetric(const TablePtr& table, const std::vector<int>& vars, int i,
                                int power = 1);

}  // namespace flagnest
