#include "stringlink/koszul.hpp"

#include "stringlink/errors.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace stringlink {

namespace {

// Sorts in place and returns the permutation sign, or 0 on a repeated index.
int sort_with_sign(std::vector<int>& v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i) {
    for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
      if (v[j - 1] == v[j]) return 0;
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  }
  return sign;
}

std::mutex g_basis_cache_mutex;
std::map<std::pair<int, int>, BasisPtr> g_basis_cache;

std::mutex g_homology_cache_mutex;
std::map<std::tuple<int, int, int>, HomologyPtr> g_homology_cache;

}  // namespace

NilpotentBasis::NilpotentBasis(int n, int c) : n_(n), c_(c) {
  if (c < 1) throw PreconditionError("nilpotency class must be >= 1");
  prefix_.push_back(0);
  for (int d = 1; d <= c; ++d) {
    for (const Word& w : lyndon_basis(n, d)) {
      index_.emplace(w, static_cast<int>(words_.size()));
      words_.push_back(w);
    }
    prefix_.push_back(static_cast<int>(words_.size()));
  }
  const int m = size();
  brackets_.resize(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a == b || degree(a) + degree(b) > c) continue;
      Combination& out = brackets_[static_cast<std::size_t>(a) * m + b];
      for (const auto& [w, v] : basis_bracket(words_[a], words_[b])) out.emplace_back(index_.at(w), v);
    }
  }
}

BasisPtr NilpotentBasis::get(int n, int c) {
  std::lock_guard lock(g_basis_cache_mutex);
  auto it = g_basis_cache.find({n, c});
  if (it == g_basis_cache.end()) it = g_basis_cache.emplace(std::make_pair(n, c), std::make_shared<NilpotentBasis>(n, c)).first;
  return it->second;
}

int NilpotentBasis::index_of(const Word& w) const {
  auto it = index_.find(w);
  return it == index_.end() ? -1 : it->second;
}

int NilpotentBasis::prefix_size(int c) const {
  if (c < 0) return 0;
  return prefix_.at(std::min(c, c_));
}

NilpotentBasis::Combination NilpotentBasis::coordinates(const LieElement& x) const {
  if (x.rank() != n_) throw PreconditionError("Lie element rank does not match the nilpotent basis");
  Combination out;
  for (const auto& [w, c] : x.terms())
    if (w.length() <= c_) out.emplace_back(index_.at(w), c);
  return out;
}

ExteriorChain::ExteriorChain(BasisPtr basis, int p) : basis_(std::move(basis)), p_(p) {
  if (!basis_) throw PreconditionError("exterior chain needs a basis");
  if (p < 0) throw PreconditionError("exterior power must be >= 0");
}

ExteriorChain ExteriorChain::wedge(BasisPtr basis, const std::vector<LieElement>& factors) {
  ExteriorChain out(basis, static_cast<int>(factors.size()));
  std::vector<NilpotentBasis::Combination> coords;
  for (const auto& f : factors) coords.push_back(basis->coordinates(f));
  std::vector<int> idx(factors.size());
  auto rec = [&](auto&& self, std::size_t k, const Rational& c) -> void {
    if (k == factors.size()) {
      out.add_term(idx, c);
      return;
    }
    for (const auto& [e, v] : coords[k]) {
      idx[k] = e;
      self(self, k + 1, c * v);
    }
  };
  rec(rec, 0, Rational(1));
  return out;
}

void ExteriorChain::add_term(std::vector<int> indices, const Rational& c) {
  if (static_cast<int>(indices.size()) != p_) throw PreconditionError("wrong number of wedge factors");
  if (sgn(c) == 0) return;
  for (int i : indices)
    if (i < 0 || i >= basis_->size()) throw PreconditionError("basis index out of range");
  const int sign = sort_with_sign(indices);
  if (sign == 0) return;
  const Rational v = sign > 0 ? c : Rational(-c);
  auto [it, ins] = terms_.try_emplace(std::move(indices), v);
  if (!ins) {
    it->second += v;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational ExteriorChain::coefficient(const std::vector<int>& increasing) const {
  auto it = terms_.find(increasing);
  return it == terms_.end() ? Rational(0) : it->second;
}

int ExteriorChain::tuple_degree(const std::vector<int>& indices) const {
  int d = 0;
  for (int i : indices) d += basis_->degree(i);
  return d;
}

ExteriorChain ExteriorChain::degree_part(int d) const {
  ExteriorChain out(basis_, p_);
  for (const auto& [t, c] : terms_)
    if (tuple_degree(t) == d) out.terms_.emplace_hint(out.terms_.end(), t, c);
  return out;
}

std::vector<int> ExteriorChain::internal_degrees() const {
  std::vector<int> out;
  for (const auto& [t, c] : terms_) out.push_back(tuple_degree(t));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ExteriorChain ExteriorChain::reduced(const BasisPtr& smaller) const {
  if (smaller->rank() != basis_->rank() || smaller->nilpotency_class() > basis_->nilpotency_class())
    throw PreconditionError("can only reduce to a lower class of the same rank");
  const int limit = smaller->size();
  ExteriorChain out(smaller, p_);
  for (const auto& [t, c] : terms_)
    if (std::all_of(t.begin(), t.end(), [&](int i) { return i < limit; })) out.terms_.emplace_hint(out.terms_.end(), t, c);
  return out;
}

void ExteriorChain::require_compatible(const ExteriorChain& rhs) const {
  if (basis_ != rhs.basis_ || p_ != rhs.p_) throw PreconditionError("exterior chains live in different spaces");
}

ExteriorChain& ExteriorChain::operator+=(const ExteriorChain& rhs) {
  require_compatible(rhs);
  for (const auto& [t, c] : rhs.terms_) {
    auto [it, ins] = terms_.try_emplace(t, c);
    if (!ins) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
  return *this;
}

ExteriorChain& ExteriorChain::operator-=(const ExteriorChain& rhs) {
  require_compatible(rhs);
  for (const auto& [t, c] : rhs.terms_) {
    auto [it, ins] = terms_.try_emplace(t, -c);
    if (!ins) {
      it->second -= c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
  return *this;
}

ExteriorChain& ExteriorChain::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, v] : terms_) v *= c;
  return *this;
}

ExteriorChain boundary(const ExteriorChain& x) {
  const int p = x.power();
  ExteriorChain out(x.basis(), std::max(p - 1, 0));
  if (p < 2) return out;
  const NilpotentBasis& b = *x.basis();
  std::vector<int> idx(p - 1);
  for (const auto& [t, c] : x.terms()) {
    for (int a = 0; a < p; ++a) {
      for (int bb = a + 1; bb < p; ++bb) {
        const auto& br = b.bracket(t[a], t[bb]);
        if (br.empty()) continue;
        const Rational sign = ((a + bb) % 2 == 0) ? c : Rational(-c);
        int k = 1;
        for (int m = 0; m < p; ++m)
          if (m != a && m != bb) idx[k++] = t[m];
        for (const auto& [e, v] : br) {
          idx[0] = e;
          out.add_term(idx, sign * v);
        }
      }
    }
  }
  return out;
}

std::string to_string(const ExteriorChain& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : x.terms()) {
    if (!first) os << '\n';
    first = false;
    os << to_string(c) << " *";
    for (std::size_t k = 0; k < t.size(); ++k) os << (k ? " ^ " : " ") << bracketing(x.basis()->word(t[k]));
  }
  return os.str();
}

std::vector<std::vector<int>> chain_basis(const NilpotentBasis& basis, int p, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start, int remaining_degree) -> void {
    const int slots = p - static_cast<int>(cur.size());
    if (slots == 0) {
      if (remaining_degree == 0) out.push_back(cur);
      return;
    }
    for (int i = start; i < basis.size(); ++i) {
      const int d = basis.degree(i);
      // Remaining factors have degree >= d since the order is degree-major.
      if (d * slots > remaining_degree) break;
      cur.push_back(i);
      self(self, i + 1, remaining_degree - d);
      cur.pop_back();
    }
  };
  if (p >= 0) rec(rec, 0, degree);
  return out;
}

RationalMatrix boundary_matrix(const NilpotentBasis& basis, int p, int degree) {
  const auto cols = chain_basis(basis, p, degree);
  const auto rows = chain_basis(basis, std::max(p - 1, 0), degree);
  std::map<std::vector<int>, int> row_index;
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) row_index.emplace(rows[r], r);
  RationalMatrix m(p >= 2 ? static_cast<int>(rows.size()) : 0, static_cast<int>(cols.size()));
  if (p < 2) return m;
  // Shared pointer only for the chain type; the basis outlives this call.
  BasisPtr view(std::shared_ptr<const NilpotentBasis>{}, &basis);
  for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
    ExteriorChain e(view, p);
    e.add_term(cols[c], Rational(1));
    const ExteriorChain image = boundary(e);
    for (const auto& [t, v] : image.terms()) m(row_index.at(t), c) = v;
  }
  return m;
}

Homology::Homology(int p, BasisPtr basis) : p_(p), basis_(std::move(basis)) {
  if (p < 1) throw PreconditionError("homology degree must be >= 1");
  const int c = basis_->nilpotency_class();
  std::ostringstream sig;
  sig << "H" << p << ":n" << basis_->rank() << ":c" << c;
  for (int d = p; d <= p * c; ++d) {
    Block blk;
    blk.degree = d;
    blk.chains = chain_basis(*basis_, p, d);
    if (blk.chains.empty()) continue;
    blk.dim_chains = static_cast<int>(blk.chains.size());
    for (int k = 0; k < blk.dim_chains; ++k) blk.chain_index.emplace(blk.chains[k], k);

    std::vector<std::vector<Rational>> kernel;
    if (p >= 2) {
      kernel = nullspace(boundary_matrix(*basis_, p, d));
    } else {
      for (int k = 0; k < blk.dim_chains; ++k) {
        std::vector<Rational> v(blk.dim_chains);
        v[k] = 1;
        kernel.push_back(std::move(v));
      }
    }
    blk.dim_kernel = static_cast<int>(kernel.size());
    const RationalMatrix image = boundary_matrix(*basis_, p + 1, d);
    blk.image_columns = image.cols();

    RationalMatrix joint(blk.dim_chains, image.cols() + blk.dim_kernel);
    for (int r = 0; r < blk.dim_chains; ++r) {
      for (int k = 0; k < image.cols(); ++k) joint(r, k) = image(r, k);
      for (int k = 0; k < blk.dim_kernel; ++k) joint(r, image.cols() + k) = kernel[k][r];
    }
    const Echelon e = rref(joint);
    int image_rank = 0;
    for (int piv : e.pivots) {
      if (piv < image.cols()) ++image_rank;
      else blk.representatives.push_back(kernel[piv - image.cols()]);
    }
    blk.dim_image = image_rank;
    if (blk.dim_kernel - blk.dim_image != blk.dim()) throw InternalError("homology rank bookkeeping mismatch");

    RationalMatrix proj(blk.dim_chains, image.cols() + blk.dim());
    for (int r = 0; r < blk.dim_chains; ++r) {
      for (int k = 0; k < image.cols(); ++k) proj(r, k) = image(r, k);
      for (int k = 0; k < blk.dim(); ++k) proj(r, image.cols() + k) = blk.representatives[k][r];
    }
    blk.projector = std::make_shared<ExactSolver>(proj);
    blk.offset = dim_;
    dim_ += blk.dim();

    sig << "|d" << d << ":";
    for (const auto& rep : blk.representatives) {
      sig << "(";
      for (const auto& v : rep) sig << v.get_str() << ",";
      sig << ")";
    }
    blocks_.push_back(std::move(blk));
  }
  // FNV-1a, 64 bit.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : sig.str()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  fingerprint_ = h;
}

HomologyPtr Homology::get(int p, int n, int c) {
  const auto key = std::make_tuple(p, n, c);
  {
    std::lock_guard lock(g_homology_cache_mutex);
    if (auto it = g_homology_cache.find(key); it != g_homology_cache.end()) return it->second;
  }
  auto h = std::make_shared<const Homology>(p, NilpotentBasis::get(n, c));
  std::lock_guard lock(g_homology_cache_mutex);
  return g_homology_cache.try_emplace(key, std::move(h)).first->second;
}

int Homology::dim_in_degree(int d) const {
  for (const auto& b : blocks_)
    if (b.degree == d) return b.dim();
  return 0;
}

int Homology::coordinate_degree(int coordinate) const {
  for (const auto& b : blocks_)
    if (coordinate >= b.offset && coordinate < b.offset + b.dim()) return b.degree;
  throw PreconditionError("homology coordinate out of range");
}

HomologyClass Homology::zero() const { return HomologyClass(shared_from_this(), std::vector<Rational>(dim_)); }

HomologyClass Homology::project(const ExteriorChain& cycle) const {
  if (cycle.power() != p_ || cycle.basis()->rank() != basis_->rank() ||
      cycle.basis()->nilpotency_class() != basis_->nilpotency_class())
    throw PreconditionError("chain does not live in this complex");
  if (!boundary(cycle).is_zero()) throw PreconditionError("not a cycle");
  std::vector<Rational> coords(dim_);
  for (int d : cycle.internal_degrees()) {
    auto it = std::find_if(blocks_.begin(), blocks_.end(), [d](const Block& b) { return b.degree == d; });
    if (it == blocks_.end()) throw InternalError("cycle in a degree without chains");
    std::vector<Rational> v(it->dim_chains);
    for (const auto& [t, c] : cycle.terms())
      if (auto k = it->chain_index.find(t); k != it->chain_index.end()) v[k->second] = c;
    const auto x = it->projector->solve(v);
    if (!x) throw InternalError("cycle is not in the span of boundaries and representatives");
    for (int k = 0; k < it->dim(); ++k) coords[it->offset + k] = (*x)[it->image_columns + k];
  }
  return HomologyClass(shared_from_this(), std::move(coords));
}

ExteriorChain Homology::representative(int coordinate) const {
  for (const auto& b : blocks_) {
    if (coordinate < b.offset || coordinate >= b.offset + b.dim()) continue;
    ExteriorChain out(basis_, p_);
    const auto& rep = b.representatives[coordinate - b.offset];
    for (int k = 0; k < b.dim_chains; ++k) out.add_term(b.chains[k], rep[k]);
    return out;
  }
  throw PreconditionError("homology coordinate out of range");
}

HomologyClass::HomologyClass(HomologyPtr homology, std::vector<Rational> coordinates)
    : homology_(std::move(homology)), coordinates_(std::move(coordinates)) {
  if (static_cast<int>(coordinates_.size()) != homology_->dim()) throw PreconditionError("class coordinate count mismatch");
}

bool HomologyClass::is_zero() const {
  return std::all_of(coordinates_.begin(), coordinates_.end(), [](const Rational& v) { return sgn(v) == 0; });
}

HomologyClass& HomologyClass::operator+=(const HomologyClass& rhs) {
  if (homology_->fingerprint() != rhs.homology_->fingerprint()) throw PreconditionError("classes live in different homologies");
  for (std::size_t k = 0; k < coordinates_.size(); ++k) coordinates_[k] += rhs.coordinates_[k];
  return *this;
}

HomologyClass& HomologyClass::operator-=(const HomologyClass& rhs) {
  if (homology_->fingerprint() != rhs.homology_->fingerprint()) throw PreconditionError("classes live in different homologies");
  for (std::size_t k = 0; k < coordinates_.size(); ++k) coordinates_[k] -= rhs.coordinates_[k];
  return *this;
}

HomologyClass h3_degree_component(const HomologyClass& x, int d) {
  std::vector<Rational> coords(x.coordinates().size());
  for (const auto& b : x.homology()->blocks())
    if (b.degree == d)
      for (int k = 0; k < b.dim(); ++k) coords[b.offset + k] = x.coordinates()[b.offset + k];
  return HomologyClass(x.homology(), std::move(coords));
}

}  // namespace stringlink
