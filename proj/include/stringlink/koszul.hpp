#pragma once

// Koszul complex of the free nilpotent Lie algebra L / L_{>= c+1} and its
// homology, computed block by block in internal degree.

#include "stringlink/free_lie.hpp"
#include "stringlink/linalg.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace stringlink {

/// Lyndon basis of L / L_{>= c+1}, ordered by (degree, lex). The basis of a
/// smaller class is a prefix of this one.
class NilpotentBasis {
 public:
  using Combination = std::vector<std::pair<int, Rational>>;

  /// Shared cached instance.
  static std::shared_ptr<const NilpotentBasis> get(int n, int c);

  int rank() const noexcept { return n_; }
  int nilpotency_class() const noexcept { return c_; }
  int size() const noexcept { return static_cast<int>(words_.size()); }
  const Word& word(int idx) const { return words_.at(idx); }
  int degree(int idx) const { return words_.at(idx).length(); }
  /// -1 when w is not a basis element.
  int index_of(const Word& w) const;
  /// Number of basis elements of degree <= c'.
  int prefix_size(int c) const;

  /// [e_a, e_b] modulo L_{>= c+1}.
  const Combination& bracket(int a, int b) const { return brackets_[static_cast<std::size_t>(a) * size() + b]; }

  /// Coordinates of a Lie element, dropping degrees above c.
  Combination coordinates(const LieElement& x) const;

  NilpotentBasis(int n, int c);

 private:
  int n_;
  int c_;
  std::vector<Word> words_;
  std::map<Word, int> index_;
  std::vector<int> prefix_;
  std::vector<Combination> brackets_;
};

using BasisPtr = std::shared_ptr<const NilpotentBasis>;

/// Element of Lambda^p (L / L_{>= c+1}). Keys are strictly increasing index
/// tuples.
class ExteriorChain {
 public:
  using Terms = std::map<std::vector<int>, Rational>;

  ExteriorChain(BasisPtr basis, int p);

  /// h_1 ^ ... ^ h_p expanded multilinearly.
  static ExteriorChain wedge(BasisPtr basis, const std::vector<LieElement>& factors);

  const BasisPtr& basis() const noexcept { return basis_; }
  int power() const noexcept { return p_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Adds c e_{i_1} ^ ... ^ e_{i_p} for indices in any order.
  void add_term(std::vector<int> indices, const Rational& c);
  Rational coefficient(const std::vector<int>& increasing) const;

  int tuple_degree(const std::vector<int>& indices) const;
  ExteriorChain degree_part(int d) const;
  std::vector<int> internal_degrees() const;
  /// Image in Lambda^p of a lower class (dropping elements beyond it).
  ExteriorChain reduced(const BasisPtr& smaller) const;

  ExteriorChain& operator+=(const ExteriorChain& rhs);
  ExteriorChain& operator-=(const ExteriorChain& rhs);
  ExteriorChain& operator*=(const Rational& c);
  friend ExteriorChain operator+(ExteriorChain a, const ExteriorChain& b) { return a += b; }
  friend ExteriorChain operator-(ExteriorChain a, const ExteriorChain& b) { return a -= b; }
  friend ExteriorChain operator*(ExteriorChain a, const Rational& c) { return a *= c; }

  friend bool operator==(const ExteriorChain& a, const ExteriorChain& b) {
    return a.basis_ == b.basis_ && a.p_ == b.p_ && a.terms_ == b.terms_;
  }

 private:
  void require_compatible(const ExteriorChain& rhs) const;

  BasisPtr basis_;
  int p_;
  Terms terms_;
};

/// d(h_1 ^ ... ^ h_p) = sum_{i<j} (-1)^{i+j} [h_i,h_j] ^ h_1 ^ .. ^ h_p with
/// h_i, h_j omitted.
ExteriorChain boundary(const ExteriorChain& x);

/// "coef * [..] ^ [..]" lines.
std::string to_string(const ExteriorChain& x);

/// Increasing p-tuples of basis indices with the given internal degree.
std::vector<std::vector<int>> chain_basis(const NilpotentBasis& basis, int p, int degree);
/// Matrix of d_p from degree-d p-chains to (p-1)-chains.
RationalMatrix boundary_matrix(const NilpotentBasis& basis, int p, int degree);

class HomologyClass;

/// H_p(L / L_{>= c+1}) with a deterministic basis of cycle representatives.
class Homology : public std::enable_shared_from_this<Homology> {
 public:
  struct Block {
    int degree = 0;
    std::vector<std::vector<int>> chains;
    std::map<std::vector<int>, int> chain_index;
    int dim_chains = 0;
    int dim_kernel = 0;
    int dim_image = 0;
    int offset = 0;  // first class coordinate of this block
    std::vector<std::vector<Rational>> representatives;
    std::shared_ptr<ExactSolver> projector;  // columns: image generators, then representatives
    int image_columns = 0;
    int dim() const noexcept { return static_cast<int>(representatives.size()); }
  };

  /// Shared cached instance.
  static std::shared_ptr<const Homology> get(int p, int n, int c);

  int power() const noexcept { return p_; }
  const BasisPtr& basis() const noexcept { return basis_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  int dim() const noexcept { return dim_; }
  int dim_in_degree(int d) const;
  /// Degree of a class coordinate.
  int coordinate_degree(int coordinate) const;
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  /// Class of a cycle; throws PreconditionError("not a cycle") otherwise.
  HomologyClass project(const ExteriorChain& cycle) const;
  HomologyClass zero() const;
  ExteriorChain representative(int coordinate) const;

  Homology(int p, BasisPtr basis);

 private:
  int p_;
  BasisPtr basis_;
  std::vector<Block> blocks_;
  int dim_ = 0;
  std::uint64_t fingerprint_ = 0;
};

using HomologyPtr = std::shared_ptr<const Homology>;

class HomologyClass {
 public:
  HomologyClass(HomologyPtr homology, std::vector<Rational> coordinates);

  const HomologyPtr& homology() const noexcept { return homology_; }
  const std::vector<Rational>& coordinates() const noexcept { return coordinates_; }
  bool is_zero() const;

  HomologyClass& operator+=(const HomologyClass& rhs);
  HomologyClass& operator-=(const HomologyClass& rhs);
  friend HomologyClass operator+(HomologyClass a, const HomologyClass& b) { return a += b; }
  friend HomologyClass operator-(HomologyClass a, const HomologyClass& b) { return a -= b; }

  friend bool operator==(const HomologyClass& a, const HomologyClass& b) {
    return a.homology_->fingerprint() == b.homology_->fingerprint() && a.coordinates_ == b.coordinates_;
  }

 private:
  HomologyPtr homology_;
  std::vector<Rational> coordinates_;
};

/// Component of x in internal degree d.
HomologyClass h3_degree_component(const HomologyClass& x, int d);

}  // namespace stringlink
