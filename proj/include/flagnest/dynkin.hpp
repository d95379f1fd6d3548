#pragma once

// Classical Dynkin diagrams (plus G2), Cartan data, positive roots, marked
// diagrams, automorphisms, node deletion, foldings and P^1 bundle tags.
//
// Cartan convention: C[i][j] = 2(a_i, a_j) / (a_i, a_i), nodes labelled 1..n.
// B_n has its short root at node n, C_n its long root at node n, G2 its short
// root at node 1.

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace flagnest {

enum class Family { A, B, C, D, G2 };

char family_letter(Family f);

class DynkinDiagram {
 public:
  /// Validates and canonicalizes (C2 -> B2, D3 -> A3). Use canonical_form for the relabelling.
  static DynkinDiagram make(Family family, int rank);
  /// Parses "A4", "D5", "G2".
  static DynkinDiagram parse(std::string_view text);

  Family family() const { return family_; }
  int rank() const { return rank_; }
  std::string name() const;
  bool is_classical() const { return family_ != Family::G2; }

  auto operator<=>(const DynkinDiagram&) const = default;

 private:
  DynkinDiagram(Family f, int r) : family_(f), rank_(r) {}
  Family family_;
  int rank_;
};

/// Canonical diagram for (family, rank) together with relabel[k-1] = canonical label of raw node k.
struct CanonicalForm {
  DynkinDiagram diagram;
  std::vector<int> relabel;
};
CanonicalForm canonical_form(Family family, int rank);

using NodeSet = std::set<int>;
std::string node_set_string(const NodeSet& s);
/// Parses "4", "4,5" or "(4,5)".
NodeSet parse_node_set(std::string_view text);

struct MarkedDiagram {
  DynkinDiagram diagram;
  NodeSet marked;

  /// "D5(4)", "D5(4,5)".
  std::string to_string() const;
  /// Parses the wire form; low-rank aliases are relabelled onto the canonical diagram.
  static MarkedDiagram parse(std::string_view text);
  auto operator<=>(const MarkedDiagram&) const = default;
};

struct Tag {
  DynkinDiagram diagram;
  std::vector<long> values;

  /// "D5[0,1,0,2,2]".
  std::string to_string() const;
  bool operator==(const Tag&) const = default;
};

struct RootSystem {
  /// Coefficient vectors over the simple roots.
  std::vector<std::vector<int>> positive_roots;
};

using IntMatrix = std::vector<std::vector<int>>;
using Permutation = std::vector<int>;  ///< perm[k-1] is the image of node k

IntMatrix cartan_matrix(const DynkinDiagram& d);
std::vector<int> fundamental_degrees(const DynkinDiagram& d);
int coxeter_number(const DynkinDiagram& d);
RootSystem positive_roots(const DynkinDiagram& d);
/// Number of positive roots whose support meets the marked set.
int variety_dimension(const MarkedDiagram& m);
/// Identity first, then the remaining automorphisms in lexicographic order.
std::vector<Permutation> diagram_automorphisms(const DynkinDiagram& d);
Permutation compose(const Permutation& outer, const Permutation& inner);
Permutation inverse(const Permutation& p);
NodeSet apply(const Permutation& p, const NodeSet& s);

/// Connected component of a deletion, relabelled as a standard diagram.
struct Component {
  DynkinDiagram diagram;
  std::vector<int> to_parent;  ///< to_parent[k-1] is the parent label of node k

  NodeSet parent_nodes() const;
  /// Local label of a parent node, or 0 when absent.
  int local_of(int parent_node) const;
};

/// Connected components of d with the nodes of s removed, ordered by smallest parent label.
std::vector<Component> delete_nodes(const DynkinDiagram& d, const NodeSet& s);
/// Identifies the connected induced subdiagram on `nodes` of `parent`.
Component identify_subdiagram(const DynkinDiagram& parent, const NodeSet& nodes);
bool adjacent(const DynkinDiagram& d, int a, int b);
NodeSet neighbors(const DynkinDiagram& d, int node);

enum class FoldingKind { AtoC, DtoB, E6toF4, D4toG2, B3toG2 };

struct Folding {
  FoldingKind kind;
  std::string source_name;
  std::string target_name;
  std::optional<DynkinDiagram> source;  ///< empty for exceptional diagrams
  /// node_map[k-1] is the target node of source node k, in the target's raw numbering.
  std::vector<int> node_map;
  bool usable;

  std::vector<NodeSet> fibers() const;
};

/// The five foldings at their smallest ranks: A3->C2, D4->B3, E6->F4, D4->G2, B3->G2.
std::vector<Folding> foldings();
/// A_{2n-1}->C_n (n >= 2) or D_n->B_{n-1} (n >= 4); fixed-rank kinds ignore n.
Folding make_folding(FoldingKind kind, int n);

/// Tag on the nodes of `sub` with d_r = -C[r, external].
Tag restriction_tag(const DynkinDiagram& parent, const Component& sub, int external_node);
/// True iff the tag is constant on every fiber. Throws UnsupportedFolding for metadata-only foldings.
bool folding_tag_condition(const Folding& f, const Tag& t);
/// Same test against an explicit fiber partition of the tag's nodes.
bool tag_constant_on(const std::vector<NodeSet>& fibers, const Tag& t);

}  // namespace flagnest
