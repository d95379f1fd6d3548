#pragma once

// Graded presentations of H*(D(1)), H*(D(n)), H*(D(1,r)), H*(D(r,n)) for
// classical diagrams, Chern polynomials of the universal bundles on them,
// even-generator elimination and slice-wise ideal membership.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagnest/dynkin.hpp"
#include "flagnest/exactpoly.hpp"

namespace flagnest {

enum class Shape { First, Last, FirstR, RLast };  // D(1), D(n), D(1,r), D(r,n)

std::string to_string(Shape s);

/// A supported variety after automorphism matching.
struct VarietyShape {
  Shape shape;
  DynkinDiagram diagram;
  int r = 0;  ///< second marked node for FirstR / first for RLast, 0 otherwise
  /// Automorphism taking the queried marks onto the standard ones.
  Permutation automorphism;
};

/// Throws UnsupportedInput when no automorphism maps the marks onto a supported shape.
VarietyShape match_shape(const MarkedDiagram& v);

struct GradedPresentation {
  MarkedDiagram variety{DynkinDiagram::make(Family::A, 1), {}};
  TablePtr generators;
  std::vector<GradedPoly> relations;
  std::vector<std::string> labels;  ///< one per relation

  nlohmann::json to_json() const;
  static GradedPresentation from_json(const nlohmann::json& j);
  bool operator==(const GradedPresentation& o) const;
};

/// The presentation of a supported variety, relations fully expanded.
GradedPresentation presentation(const MarkedDiagram& v);

enum class Bundle { Q, SDual, K, PullbackQ, PullbackSDual, PullbackK };

std::string to_string(Bundle b);

struct BundleChernData {
  Bundle bundle;
  MarkedDiagram variety;
  int rank = 0;
  GradedUniPoly chern_polynomial;  ///< over the generators of presentation(variety)
};

/// Throws UnsupportedInput when the pair is not tabulated.
BundleChernData universal_chern(const MarkedDiagram& v, Bundle b);

/// Both pullback identities expanded in explicit variables x_1..x_N. Requires 1 < r <= n.
bool pullback_identities_check(Family family, int n, int r);

/// Presentation of H*(D(n)) on odd-degree Q's only, relations C_{2i}. Memoized.
GradedPresentation eliminate_even_generators(const GradedPresentation& p);

/// Repeatedly removes a generator occurring in a relation only as a constant multiple of itself.
GradedPresentation reduce_linear_generators(const GradedPresentation& p);

struct DegreeLedger {
  int max_generator_degree = 0;
  std::optional<int> min_relation_degree;
  std::vector<int> generator_degrees;
  std::vector<int> relation_degrees;
};

/// Statistics of reduce_linear_generators(p).
DegreeLedger degree_ledger(const GradedPresentation& p);

Rational coefficient_of_monomial(const GradedPoly& relation, const Exponents& monomial);
/// Monomial given as "q1*q3" over the relation's own generator table.
Rational coefficient_of_monomial(const GradedPoly& relation, std::string_view monomial);

/// Membership of a homogeneous polynomial in the ideal of the relations, decided on its degree slice.
bool in_ideal(const GradedPresentation& p, const GradedPoly& f);
/// dim of the degree-d slice of the quotient ring.
std::size_t quotient_dimension(const GradedPresentation& p, int degree);

/// B/C only: each coefficient of a(t)a(-t)k(t) - sum_{i<n} (h t)^{2i} lies in the ideal of D(1,r).
bool first_node_series_check(Family family, int n, int r);

/// The top Chern class of the bundle lies in the ideal of its variety.
bool top_class_vanishes(const BundleChernData& data);

}  // namespace flagnest
