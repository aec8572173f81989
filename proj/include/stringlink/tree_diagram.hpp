#pragma once

// Connected uni-trivalent trees with leaves coloured by 1..n, modulo AS.
//
// comm convention: for an edge entering trivalent vertex v, with the cyclic
// order at v being (incoming, a, b), the label of the incoming edge is
// [label(b), label(a)]. Under the counter-clockwise planar orientation this
// reproduces the standard picture.
//
// Tree codes: [root colour, polish...] where a positive entry is a leaf
// colour and 0 is followed by the codes of the two subtrees L, R with label
// [L, R].

#include "stringlink/free_lie.hpp"
#include "stringlink/koszul.hpp"

#include <map>
#include <string>
#include <vector>

namespace stringlink {

class TreeDiagram {
 public:
  /// colours[v] > 0 marks a leaf, 0 a trivalent vertex. adjacency[v] lists
  /// neighbours, in cyclic order for trivalent vertices.
  TreeDiagram(int n, std::vector<int> colours, std::vector<std::vector<int>> adjacency);

  static TreeDiagram from_code(int n, const std::vector<int>& code);
  static TreeDiagram edge(int n, int a, int b);
  /// One trivalent vertex with cyclic order (a, b, c).
  static TreeDiagram tripod(int n, int a, int b, int c);

  int rank() const noexcept { return n_; }
  int degree() const noexcept { return static_cast<int>(leaves_.size()) - 1; }
  int vertex_count() const noexcept { return static_cast<int>(colours_.size()); }
  bool is_leaf(int v) const { return colours_.at(v) > 0; }
  int colour(int v) const { return colours_.at(v); }
  const std::vector<int>& neighbours(int v) const { return adjacency_.at(v); }
  const std::vector<int>& leaves() const noexcept { return leaves_; }
  std::vector<int> trivalent_vertices() const;

  /// Code rooted at a leaf, following the cyclic orders (no reordering).
  std::vector<int> code_from(int root_leaf) const;
  /// Same tree with the cyclic order at trivalent vertex v reversed (AS).
  TreeDiagram with_reversed_vertex(int v) const;

 private:
  int n_;
  std::vector<int> colours_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> leaves_;
};

struct CanonicalForm {
  std::vector<int> code;
  /// T = sign * from_code(code); 0 when T vanishes by AS.
  int sign = 1;
};

/// Minimal code over all roots and embeddings, with the AS sign.
CanonicalForm canonical_form(const TreeDiagram& t);

/// Label of the edge at the root leaf. Throws PreconditionError when
/// root_leaf is not a leaf.
LieElement comm(const TreeDiagram& t, int root_leaf);
/// Label of the directed edge from -> to, i.e. comm of the branch beyond
/// `to` rooted at `from`.
LieElement branch_comm(const TreeDiagram& t, int from, int to, int max_degree);

/// sum_v col(v) (x) comm(T_v).
HTensorLie eta(const TreeDiagram& t);

/// sum over trivalent r of comm(T_r^(3)) ^ comm(T_r^(2)) ^ comm(T_r^(1)),
/// in Lambda^3 of the given nilpotent quotient.
ExteriorChain fission(const TreeDiagram& t, const BasisPtr& basis);

/// Graphviz digraph rooted at the first leaf of the canonical form.
std::string to_dot(const TreeDiagram& t, const std::string& name = "tree");

class TreeCombination {
 public:
  using Terms = std::map<std::vector<int>, Rational>;

  explicit TreeCombination(int n) : n_(n) {}

  int rank() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int max_degree() const;

  void add(const TreeDiagram& t, const Rational& c);
  /// Adds c times the tree with this canonical code.
  void add_canonical(const std::vector<int>& code, const Rational& c);
  TreeCombination degree_part(int d) const;

  TreeCombination& operator+=(const TreeCombination& rhs);
  friend TreeCombination operator+(TreeCombination a, const TreeCombination& b) { return a += b; }

  friend bool operator==(const TreeCombination&, const TreeCombination&) = default;

 private:
  int n_;
  Terms terms_;
};

int code_degree(const std::vector<int>& code);

HTensorLie eta(const TreeCombination& b, int max_degree);
ExteriorChain fission(const TreeCombination& b, const BasisPtr& basis);

/// Canonical trees of degree l spanning the tree space (memoized). Supported
/// for n <= 4, l <= 5.
const std::vector<TreeDiagram>& enumerate_trees(int n, int l);

/// A tree combination with eta(result) = x, degree by degree. Throws
/// PreconditionError("not in D_l") when some component misses the kernel of
/// the bracket map.
TreeCombination eta_inverse(const HTensorLie& x);

/// Class of the fission of b in H_3(L / L_{>= k}); tree degrees must lie in
/// [k, 2k-2].
HomologyClass phi_class(const TreeCombination& b, int k);

/// Rank of phi_class on the enumerated trees of degrees [k, 2k-2].
int phi_rank(int n, int k);

}  // namespace stringlink
