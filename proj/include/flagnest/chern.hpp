#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flagnest/exactpoly.hpp"

namespace flagnest {

/// Weakly decreasing positive parts.
struct Partition {
  std::vector<int> parts;

  int weight() const;
  int length() const { return static_cast<int>(parts.size()); }
  Partition conjugate() const;
  /// "(2,1)".
  std::string to_string() const;
  static Partition parse(std::string_view text);
  bool operator==(const Partition&) const = default;
};

/// All partitions of weight 1..max_weight, by increasing weight, reverse-lexicographic within a weight.
const std::vector<Partition>& partitions_up_to(int max_weight);

/// Chern numbers E_0 = 1, E_1, ..., E_r against powers of the ample generator of a
/// Picard-rank-one variety of dimension ambient_dim.
struct ChernVector {
  std::vector<Rational> entries;
  int ambient_dim = 0;
  bool integral = true;
  /// Per-index integrality requirement for non-integral data; empty means none.
  std::vector<bool> integrality_mask;

  /// Validates E_0 = 1, r <= ambient_dim and the integrality requirements.
  static ChernVector make(std::vector<Rational> entries, int ambient_dim, bool integral = true,
                          std::vector<bool> integrality_mask = {});
  static ChernVector from_ints(const std::vector<long>& entries, int ambient_dim);
  /// Coefficients of p as E_0..E_deg.
  static ChernVector from_poly(const UniPoly& p, int ambient_dim);

  int rank() const { return static_cast<int>(entries.size()) - 1; }
  /// E_i, zero outside [0, r].
  Rational E(int i) const;
  /// Largest index with E_i != 0.
  int top_index() const;
  UniPoly polynomial() const;

  /// "[1,2,2,1]@dim6".
  std::string to_string() const;
  static ChernVector parse(std::string_view text);
};

/// det(E_{lambda_i - i + j}) of size length(lambda).
Rational schur_minor(const ChernVector& c, const Partition& lambda);

struct NefCheck {
  bool feasible = true;
  std::optional<Partition> witness;
  Rational witness_value;
};

/// Every Schur minor of weight <= ambient_dim is nonnegative; the first failure is returned.
NefCheck nef_feasible(const ChernVector& c);

enum class C1Branch { AllOnes, GeqTwo, Vacuous };
std::string to_string(C1Branch b);

struct C1Report {
  int r = 0;  ///< largest index with E_r != 0
  int s = 0;  ///< min(r - 1, floor(dim / 2))
  bool positive_prefix = true;
  C1Branch branch = C1Branch::Vacuous;
};

/// Positivity of E_1..E_r and the all-ones / at-least-two dichotomy over 1..s.
/// Throws PreconditionError unless integral and nef-feasible; InternalInconsistency on violation.
C1Report lemma_c1_consequences(const ChernVector& c);

struct FactorPair {
  UniPoly pe;
  UniPoly pf;
  bool operator==(const FactorPair&) const = default;
};

/// All (P_E, P_F) with P_E(t) P_F(-t) = 1 - t^k, nonnegative coefficients, degrees <= ambient_dim
/// and both nef-feasible, found by splitting the cyclotomic factors of 1 - t^k. Sorted, memoized.
std::vector<FactorPair> factor_unit_minus_tk(int k, int ambient_dim);

/// E_1 E_2 == E_3 (mod 2). Requires integral data, rank >= 3 and ambient_dim >= 3.
bool schwarzenberger_s33(const ChernVector& c);

}  // namespace flagnest
