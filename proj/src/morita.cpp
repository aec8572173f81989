#include "stringlink/morita.hpp"

#include "stringlink/errors.hpp"

#include <mutex>

namespace stringlink {

namespace {

void require_level(const HTensorLie& total, int level) {
  const int d = total.min_degree();
  if (d >= 1 && d < level) throw FiltrationError(level, d);
}

}  // namespace

MoritaInput make_morita_input(const LinkData& data, const Expansion& theta, int k) {
  if (k < 1) throw PreconditionError("k must be >= 1");
  if (theta.truncation() < 2 * k + 1)
    throw PreconditionError("expansion truncation must be at least 2k+1 = " + std::to_string(2 * k + 1));
  require_level(total_milnor(data, theta, k + 1), k + 1);
  return MoritaInput{data, theta, k};
}

MoritaInput make_morita_input(const LongitudeTuple& data, const Expansion& theta, int k) {
  return make_morita_input(LinkData(data), theta, k);
}

MoritaInput make_morita_input(const BraidWord& braid, const Expansion& theta, int k) {
  return make_morita_input(LinkData(braid), theta, k);
}

ExteriorChain sigma_to_class(const MoritaInput& input, int c) {
  const int n = rank(input.data), k = input.k;
  const HTensorLie total = total_milnor(input.data, input.theta, c + 1);
  require_level(total, k + 1);
  const BasisPtr basis = NilpotentBasis::get(n, c);
  ExteriorChain out(basis, 2);
  for (int i = 1; i <= n; ++i) {
    const LieElement y = total.entry(i);
    const LieElement x = LieElement::generator(n, y.max_degree(), i);
    out += ExteriorChain::wedge(basis, {x, y});
  }
  return out;
}

ExteriorChain sigma(const MoritaInput& input) { return sigma_to_class(input, 2 * input.k + 1); }

ExteriorChain solve_boundary(const ExteriorChain& target, PivotOrder order) {
  if (target.power() != 2) throw PreconditionError("solve_boundary expects a 2-chain");
  if (!boundary(target).is_zero()) throw PreconditionError("solve_boundary: target is not a cycle");
  const BasisPtr& basis = target.basis();
  ExteriorChain out(basis, 3);
  for (int d : target.internal_degrees()) {
    const auto cols = chain_basis(*basis, 3, d);
    const auto rows = chain_basis(*basis, 2, d);
    const RationalMatrix a = boundary_matrix(*basis, 3, d);
    std::vector<Rational> b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) b[r] = target.coefficient(rows[r]);
    const auto x = solve(a, b, order);
    if (!x) throw PreconditionError("no solution: target is not a boundary in degree " + std::to_string(d));
    for (std::size_t c = 0; c < cols.size(); ++c) out.add_term(cols[c], (*x)[c]);
  }
  return out;
}

HomologyClass morita_milnor(const MoritaInput& input, PivotOrder order) {
  const int n = rank(input.data), k = input.k;
  const ExteriorChain s = sigma_to_class(input, 2 * k);
  const ExteriorChain t = solve_boundary(s, order);
  if (!(boundary(t) == s)) throw InternalError("boundary solve did not reproduce sigma");
  const HomologyPtr h = Homology::get(3, n, k);
  const ExteriorChain reduced = t.reduced(h->basis());
  if (!boundary(reduced).is_zero()) throw InternalError("reduced t_L is not a cycle");
  return h->project(reduced);
}

DiagramCheck verify_commutative_diagram(const MoritaInput& input) {
  const int k = input.k;
  const HTensorLie mu = total_milnor(input.data, input.theta, 2 * k + 1).degree_range(k + 1, 2 * k);
  const TreeCombination b = eta_inverse(mu);
  HomologyClass via_trees = phi_class(b, k + 1);
  HomologyClass via_morita = morita_milnor(input);
  const bool same = via_trees == via_morita;
  return DiagramCheck{same, std::move(via_trees), std::move(via_morita)};
}

namespace {

struct PhiInverse {
  std::vector<const TreeDiagram*> trees;
  std::shared_ptr<const ExactSolver> solver;
};

std::mutex g_phi_mutex;
std::map<std::pair<int, int>, std::shared_ptr<const PhiInverse>> g_phi;

std::shared_ptr<const PhiInverse> phi_inverse(int n, int k) {
  {
    std::lock_guard lock(g_phi_mutex);
    if (auto it = g_phi.find({n, k}); it != g_phi.end()) return it->second;
  }
  auto out = std::make_shared<PhiInverse>();
  std::vector<std::vector<Rational>> cols;
  for (int l = k + 1; l <= 2 * k; ++l) {
    for (const auto& t : enumerate_trees(n, l)) {
      TreeCombination b(n);
      b.add(t, Rational(1));
      cols.push_back(phi_class(b, k + 1).coordinates());
      out->trees.push_back(&t);
    }
  }
  const int dim = Homology::get(3, n, k)->dim();
  RationalMatrix m(dim, static_cast<int>(cols.size()));
  for (int c = 0; c < static_cast<int>(cols.size()); ++c)
    for (int r = 0; r < dim; ++r) m(r, c) = cols[c][r];
  out->solver = std::make_shared<const ExactSolver>(m);
  std::lock_guard lock(g_phi_mutex);
  return g_phi.try_emplace(std::make_pair(n, k), std::move(out)).first->second;
}

}  // namespace

HTensorLie d2_composition(const HomologyClass& x, int k) {
  const int n = x.homology()->basis()->rank();
  if (x.homology()->power() != 3 || x.homology()->basis()->nilpotency_class() != k)
    throw PreconditionError("d2_composition expects a class in H_3(L / L_{>= k+1})");
  const auto inv = phi_inverse(n, k);
  const auto sol = inv->solver->solve(x.coordinates());
  if (!sol) throw InternalError("Phi is not surjective onto H_3: rank bug");
  TreeCombination b(n);
  for (std::size_t c = 0; c < inv->trees.size(); ++c)
    if (inv->trees[c]->degree() == k + 1 && sgn((*sol)[c]) != 0) b.add(*inv->trees[c], (*sol)[c]);
  return eta(b, k + 1);
}

}  // namespace stringlink
