/** @file classifier.hpp
 *  Decision procedure for nestings of type (D, I, J): reductions to a single
 *  extremal source node, Chern-polynomial and cohomology-ring obstructions, and
 *  the three positive constructions. Every decision carries an ordered trace.
 */
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagnest/chern.hpp"
#include "flagnest/dynkin.hpp"

namespace flagnest {

/// A nesting question: does D(I) -> D(I u J) admit a section?
struct NestingQuery {
  DynkinDiagram diagram = DynkinDiagram::make(Family::A, 2);
  NodeSet I;
  NodeSet J;

  /// Throws PreconditionError unless I, J are nonempty, disjoint and within range.
  static NestingQuery make(DynkinDiagram d, NodeSet I, NodeSet J);
  /// "(D5,(4),(5))".
  std::string to_string() const;
  nlohmann::json to_json() const;
  static NestingQuery from_json(const nlohmann::json& j);
  auto operator<=>(const NestingQuery&) const = default;
};

/// Lexicographically least image of (I, J) under the diagram automorphisms.
/// The automorphism used is written to `used` when given.
NestingQuery canonical_query(const NestingQuery& q, Permutation* used = nullptr);

/// True iff q is, up to automorphism, (A_{2m-1},1,2m-1), (B3,1,3) or (D_n,n-1,n).
bool in_positive_list(const NestingQuery& q);

enum class Result { Exists, NotExists };
std::string to_string(Result r);

/// Reduction: passes to another query. Computation: an executed check.
/// Fact: one of the recorded facts. Construction: an explicit section.
enum class StepKind { Reduction, Computation, Fact, Construction };
std::string to_string(StepKind k);

struct TraceStep {
  std::string rule;
  std::string anchor;  ///< what the step relies on, in words
  StepKind kind = StepKind::Computation;
  nlohmann::json data = nlohmann::json::object();
  int depth = 0;               ///< nesting level of sub-queries
  bool proof_pattern = false;  ///< mirrors a case split without recomputing it

  nlohmann::json to_json() const;
  static TraceStep from_json(const nlohmann::json& j);
  bool operator==(const TraceStep&) const = default;
};

struct NestingDecision {
  NestingQuery query;
  Result result = Result::NotExists;
  std::vector<TraceStep> trace;

  /// Exists ends in a construction; NotExists ends in a computation or a recorded fact.
  bool terminal_ok() const;
  nlohmann::json to_json() const;
  static NestingDecision from_json(const nlohmann::json& j);
  bool operator==(const NestingDecision&) const = default;
};

/// Rules of the three recorded facts.
inline constexpr const char* kFactG2 = "g2_fact";
inline constexpr const char* kFactTriality = "triality_fact";
inline constexpr const char* kFactEvenA = "even_rank_fact";

/// Throws UnsupportedInput for exceptional diagrams other than G2.
NestingDecision classify(const NestingQuery& q);

struct Obstruction {
  bool obstructed = false;
  std::vector<TraceStep> trace;
  std::vector<FactorPair> survivors;  ///< (P_Q', P_S'^vee) pairs left by the first-node filters
};

/// Sections of D(1,r) -> D(1), r >= 2. Throws PreconditionError outside 2 <= r <= n.
Obstruction obstruct_first_node(Family family, int n, int r);
/// Sections of D(r,n) -> D(n), family B, C or D, 1 <= r <= n-1.
Obstruction obstruct_last_node(Family family, int n, int r);

/// Reducibility of the universal flag bundle D(I u component) -> D(I), where `component`
/// indexes delete_nodes(D, I). Decided by single-node targets inside the component.
bool reducibility_corollary(const MarkedDiagram& v, std::size_t component = 0);

struct SubbundleReport {
  bool has_subbundle = false;
  std::optional<int> rank;
};

/// Nontrivial subbundles of the universal quotient bundle on D(r).
SubbundleReport subbundle_corollary(const MarkedDiagram& v);

enum class EnumerationMode { Singletons, AllSubsets };
std::string to_string(EnumerationMode m);
EnumerationMode parse_enumeration_mode(std::string_view text);

struct EnumerationReport {
  int max_rank = 0;
  EnumerationMode mode = EnumerationMode::Singletons;
  std::size_t queries = 0;
  std::size_t exists = 0;
  std::size_t not_exists = 0;
  std::size_t terminal_failures = 0;
  /// Canonical representatives of every Exists query, sorted.
  std::vector<NestingQuery> exists_set;
  /// Terminal rule of every decision, counted.
  std::map<std::string, std::size_t> terminal_rules;

  nlohmann::json to_json() const;
};

/// Every connected classical diagram of rank 2..max_rank; all-subsets mode bounds |I u J| <= 4.
/// Parallel over `threads` workers (0 = hardware concurrency); output independent of the count.
EnumerationReport enumerate(int max_rank, EnumerationMode mode, unsigned threads = 0);

/// A_n (n >= 2), B_n (n >= 2), C_n (n >= 3), D_n (n >= 4) up to the given rank.
std::vector<DynkinDiagram> classical_diagrams(int max_rank);

}  // namespace flagnest
