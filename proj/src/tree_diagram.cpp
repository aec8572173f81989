#include "stringlink/tree_diagram.hpp"

#include "stringlink/errors.hpp"
#include "stringlink/linalg.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>

namespace stringlink {

namespace {

std::pair<int, int> branches_after(const std::vector<int>& adj, int from) {
  const auto it = std::find(adj.begin(), adj.end(), from);
  if (it == adj.end()) throw InternalError("tree adjacency is not symmetric");
  const int k = static_cast<int>(it - adj.begin());
  return {adj[(k + 1) % 3], adj[(k + 2) % 3]};
}

struct Canon {
  std::vector<int> code;
  int sign = 1;  // 0: vanishes by AS
};

Canon canon_branch(const TreeDiagram& t, int from, int to) {
  if (t.is_leaf(to)) return {{t.colour(to)}, 1};
  const auto [a, b] = branches_after(t.neighbours(to), from);
  Canon left = canon_branch(t, to, b);
  Canon right = canon_branch(t, to, a);
  if (left.sign == 0 || right.sign == 0 || left.code == right.code) return {{}, 0};
  Canon out;
  out.code.reserve(1 + left.code.size() + right.code.size());
  out.code.push_back(0);
  int sign = left.sign * right.sign;
  if (right.code < left.code) {
    std::swap(left, right);
    sign = -sign;
  }
  out.code.insert(out.code.end(), left.code.begin(), left.code.end());
  out.code.insert(out.code.end(), right.code.begin(), right.code.end());
  out.sign = sign;
  return out;
}

HTensorLie eta_bounded(const TreeDiagram& t, int max_degree) {
  HTensorLie out(t.rank(), max_degree);
  for (int v : t.leaves()) {
    const int u = t.neighbours(v)[0];
    out.set_entry(t.colour(v), out.entry(t.colour(v)) + branch_comm(t, v, u, max_degree));
  }
  return out;
}

}  // namespace

TreeDiagram::TreeDiagram(int n, std::vector<int> colours, std::vector<std::vector<int>> adjacency)
    : n_(n), colours_(std::move(colours)), adjacency_(std::move(adjacency)) {
  const int v = static_cast<int>(colours_.size());
  if (n < 1 || n > Word::kMaxLetter) throw PreconditionError("tree colour rank must be in 1..15");
  if (static_cast<int>(adjacency_.size()) != v) throw PreconditionError("tree: adjacency size mismatch");
  std::size_t edge_ends = 0;
  for (int x = 0; x < v; ++x) {
    const auto& adj = adjacency_[x];
    if (colours_[x] < 0 || colours_[x] > n) throw PreconditionError("tree: colour out of range");
    const std::size_t valence = colours_[x] > 0 ? 1 : 3;
    if (adj.size() != valence) throw PreconditionError("tree: leaves need valence 1, internal vertices valence 3");
    for (int y : adj) {
      if (y < 0 || y >= v || y == x) throw PreconditionError("tree: bad neighbour index");
      if (std::count(adjacency_[y].begin(), adjacency_[y].end(), x) != std::count(adj.begin(), adj.end(), y))
        throw PreconditionError("tree: adjacency is not symmetric");
    }
    edge_ends += adj.size();
    if (colours_[x] > 0) leaves_.push_back(x);
  }
  if (leaves_.size() < 2) throw PreconditionError("tree: need at least two leaves");
  if (edge_ends != 2 * static_cast<std::size_t>(v - 1)) throw PreconditionError("tree: wrong number of edges");
  std::vector<char> seen(v, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int y : adjacency_[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
  }
  if (reached != v) throw PreconditionError("tree: not connected");
}

TreeDiagram TreeDiagram::from_code(int n, const std::vector<int>& code) {
  if (code.size() < 2 || code[0] <= 0) throw PreconditionError("tree code must start with a root colour");
  std::vector<int> colours{code[0]};
  std::vector<std::vector<int>> adj{{}};
  std::size_t pos = 1;
  std::function<int(int)> parse = [&](int parent) -> int {
    if (pos >= code.size()) throw PreconditionError("truncated tree code");
    const int id = static_cast<int>(colours.size());
    const int entry = code[pos++];
    if (entry < 0) throw PreconditionError("negative entry in tree code");
    colours.push_back(entry);
    adj.emplace_back();
    if (entry > 0) {
      adj[id] = {parent};
      return id;
    }
    const int left = parse(id);
    const int right = parse(id);
    adj[id] = {parent, right, left};
    return id;
  };
  const int first = parse(0);
  adj[0] = {first};
  if (pos != code.size()) throw PreconditionError("trailing entries in tree code");
  return TreeDiagram(n, std::move(colours), std::move(adj));
}

TreeDiagram TreeDiagram::edge(int n, int a, int b) { return TreeDiagram(n, {a, b}, {{1}, {0}}); }

TreeDiagram TreeDiagram::tripod(int n, int a, int b, int c) {
  return TreeDiagram(n, {0, a, b, c}, {{1, 2, 3}, {0}, {0}, {0}});
}

std::vector<int> TreeDiagram::trivalent_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (!is_leaf(v)) out.push_back(v);
  return out;
}

std::vector<int> TreeDiagram::code_from(int root_leaf) const {
  if (root_leaf < 0 || root_leaf >= vertex_count() || !is_leaf(root_leaf)) throw PreconditionError("root is not a leaf");
  std::vector<int> out{colour(root_leaf)};
  std::function<void(int, int)> walk = [&](int from, int to) {
    if (is_leaf(to)) {
      out.push_back(colour(to));
      return;
    }
    const auto [a, b] = branches_after(neighbours(to), from);
    out.push_back(0);
    walk(to, b);
    walk(to, a);
  };
  walk(root_leaf, neighbours(root_leaf)[0]);
  return out;
}

TreeDiagram TreeDiagram::with_reversed_vertex(int v) const {
  if (is_leaf(v)) throw PreconditionError("only trivalent vertices carry a cyclic order");
  auto adj = adjacency_;
  std::swap(adj[v][1], adj[v][2]);
  return TreeDiagram(n_, colours_, std::move(adj));
}

int code_degree(const std::vector<int>& code) {
  return static_cast<int>(std::count_if(code.begin(), code.end(), [](int x) { return x > 0; })) - 1;
}

CanonicalForm canonical_form(const TreeDiagram& t) {
  std::vector<int> best;
  bool have = false, plus = false, minus = false;
  for (int root : t.leaves()) {
    Canon c = canon_branch(t, root, t.neighbours(root)[0]);
    if (c.sign == 0) return {t.code_from(t.leaves().front()), 0};
    std::vector<int> key{t.colour(root)};
    key.insert(key.end(), c.code.begin(), c.code.end());
    if (!have || key < best) {
      best = std::move(key);
      have = true;
      plus = c.sign > 0;
      minus = c.sign < 0;
    } else if (key == best) {
      (c.sign > 0 ? plus : minus) = true;
    }
  }
  if (plus && minus) return {best, 0};
  return {best, plus ? 1 : -1};
}

LieElement branch_comm(const TreeDiagram& t, int from, int to, int max_degree) {
  if (t.is_leaf(to)) return LieElement::generator(t.rank(), max_degree, t.colour(to));
  const auto [a, b] = branches_after(t.neighbours(to), from);
  return bracket(branch_comm(t, to, b, max_degree), branch_comm(t, to, a, max_degree));
}

LieElement comm(const TreeDiagram& t, int root_leaf) {
  if (root_leaf < 0 || root_leaf >= t.vertex_count() || !t.is_leaf(root_leaf))
    throw PreconditionError("comm: root is not a leaf");
  return branch_comm(t, root_leaf, t.neighbours(root_leaf)[0], t.degree());
}

HTensorLie eta(const TreeDiagram& t) { return eta_bounded(t, t.degree()); }

ExteriorChain fission(const TreeDiagram& t, const BasisPtr& basis) {
  ExteriorChain out(basis, 3);
  const int bound = std::max(t.degree(), 1);
  for (int r : t.trivalent_vertices()) {
    const auto& adj = t.neighbours(r);
    out += ExteriorChain::wedge(basis, {branch_comm(t, r, adj[2], bound), branch_comm(t, r, adj[1], bound),
                                        branch_comm(t, r, adj[0], bound)});
  }
  return out;
}

std::string to_dot(const TreeDiagram& t, const std::string& name) {
  const CanonicalForm cf = canonical_form(t);
  const TreeDiagram c = TreeDiagram::from_code(t.rank(), cf.code);
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  os << "  // canonical code:";
  for (int x : cf.code) os << ' ' << x;
  os << "\n  // sign: " << cf.sign << "\n";
  os << "  // out-edges of a trivalent vertex follow its cyclic order after the incoming edge\n";
  for (int v = 0; v < c.vertex_count(); ++v) {
    if (c.is_leaf(v))
      os << "  v" << v << " [shape=circle, label=\"X" << c.colour(v) << "\"];\n";
    else
      os << "  v" << v << " [shape=point];\n";
  }
  std::function<void(int, int)> walk = [&](int from, int to) {
    os << "  v" << from << " -> v" << to << ";\n";
    if (c.is_leaf(to)) return;
    const auto [a, b] = branches_after(c.neighbours(to), from);
    walk(to, a);
    walk(to, b);
  };
  walk(0, c.neighbours(0)[0]);
  os << "}\n";
  return os.str();
}

int TreeCombination::max_degree() const {
  int d = 0;
  for (const auto& [code, c] : terms_) d = std::max(d, code_degree(code));
  return d;
}

void TreeCombination::add(const TreeDiagram& t, const Rational& c) {
  if (t.rank() != n_) throw PreconditionError("tree colour rank mismatch");
  const CanonicalForm cf = canonical_form(t);
  if (cf.sign == 0) return;
  add_canonical(cf.code, cf.sign > 0 ? c : Rational(-c));
}

void TreeCombination::add_canonical(const std::vector<int>& code, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, ins] = terms_.try_emplace(code, c);
  if (!ins) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

TreeCombination TreeCombination::degree_part(int d) const {
  TreeCombination out(n_);
  for (const auto& [code, c] : terms_)
    if (code_degree(code) == d) out.terms_.emplace(code, c);
  return out;
}

TreeCombination& TreeCombination::operator+=(const TreeCombination& rhs) {
  if (rhs.n_ != n_) throw PreconditionError("tree colour rank mismatch");
  for (const auto& [code, c] : rhs.terms_) add_canonical(code, c);
  return *this;
}

HTensorLie eta(const TreeCombination& b, int max_degree) {
  HTensorLie out(b.rank(), max_degree);
  for (const auto& [code, c] : b.terms()) {
    if (code_degree(code) > max_degree) throw PreconditionError("tree degree exceeds the requested bound");
    const HTensorLie e = eta_bounded(TreeDiagram::from_code(b.rank(), code), max_degree);
    for (int i = 1; i <= b.rank(); ++i) out.set_entry(i, out.entry(i) + e.entry(i) * c);
  }
  return out;
}

ExteriorChain fission(const TreeCombination& b, const BasisPtr& basis) {
  ExteriorChain out(basis, 3);
  for (const auto& [code, c] : b.terms()) out += fission(TreeDiagram::from_code(b.rank(), code), basis) * c;
  return out;
}

namespace {

std::mutex g_tree_mutex;
std::map<std::pair<int, int>, std::vector<TreeDiagram>> g_trees;

std::mutex g_eta_solver_mutex;
std::map<std::pair<int, int>, std::shared_ptr<const ExactSolver>> g_eta_solvers;

std::vector<std::vector<int>> bracket_codes(int n, int leaves) {
  std::vector<std::vector<int>> out;
  if (leaves == 1) {
    for (int c = 1; c <= n; ++c) out.push_back({c});
    return out;
  }
  for (int s = 1; s < leaves; ++s) {
    const auto left = bracket_codes(n, s);
    const auto right = bracket_codes(n, leaves - s);
    for (const auto& l : left)
      for (const auto& r : right) {
        std::vector<int> code{0};
        code.insert(code.end(), l.begin(), l.end());
        code.insert(code.end(), r.begin(), r.end());
        out.push_back(std::move(code));
      }
  }
  return out;
}

std::shared_ptr<const ExactSolver> eta_solver(int n, int l) {
  {
    std::lock_guard lock(g_eta_solver_mutex);
    if (auto it = g_eta_solvers.find({n, l}); it != g_eta_solvers.end()) return it->second;
  }
  const auto& trees = enumerate_trees(n, l);
  const auto& words = lyndon_basis(n, l);
  std::map<Word, int> windex;
  for (int k = 0; k < static_cast<int>(words.size()); ++k) windex.emplace(words[k], k);
  const int block = static_cast<int>(words.size());
  RationalMatrix m(n * block, static_cast<int>(trees.size()));
  for (int col = 0; col < static_cast<int>(trees.size()); ++col) {
    const HTensorLie e = eta(trees[col]);
    for (int i = 1; i <= n; ++i)
      for (const auto& [w, c] : e.entry(i).terms()) m((i - 1) * block + windex.at(w), col) = c;
  }
  auto solver = std::make_shared<const ExactSolver>(m);
  std::lock_guard lock(g_eta_solver_mutex);
  return g_eta_solvers.try_emplace(std::make_pair(n, l), std::move(solver)).first->second;
}

}  // namespace

const std::vector<TreeDiagram>& enumerate_trees(int n, int l) {
  if (n < 1 || n > 4 || l < 1 || l > 5)
    throw PreconditionError("tree enumeration is limited to n <= 4 and degree <= 5");
  {
    std::lock_guard lock(g_tree_mutex);
    if (auto it = g_trees.find({n, l}); it != g_trees.end()) return it->second;
  }
  std::map<std::vector<int>, bool> seen;
  const auto bodies = bracket_codes(n, l);
  for (int root = 1; root <= n; ++root) {
    for (const auto& body : bodies) {
      std::vector<int> code{root};
      code.insert(code.end(), body.begin(), body.end());
      const CanonicalForm cf = canonical_form(TreeDiagram::from_code(n, code));
      if (cf.sign != 0) seen.emplace(cf.code, true);
    }
  }
  std::vector<TreeDiagram> trees;
  for (const auto& [code, unused] : seen) trees.push_back(TreeDiagram::from_code(n, code));
  std::lock_guard lock(g_tree_mutex);
  return g_trees.try_emplace(std::make_pair(n, l), std::move(trees)).first->second;
}

TreeCombination eta_inverse(const HTensorLie& x) {
  const int n = x.rank();
  TreeCombination out(n);
  for (int d = 1; d <= x.max_degree(); ++d) {
    const HTensorLie part = x.degree_part(d);
    if (part.is_zero()) continue;
    if (!bracket_map(part).is_zero()) throw PreconditionError("not in D_" + std::to_string(d));
    const auto& words = lyndon_basis(n, d);
    const int block = static_cast<int>(words.size());
    std::vector<Rational> rhs(static_cast<std::size_t>(n) * block);
    for (int i = 1; i <= n; ++i)
      for (int k = 0; k < block; ++k) rhs[(i - 1) * block + k] = part.entry(i).coefficient(words[k]);
    const auto sol = eta_solver(n, d)->solve(rhs);
    if (!sol) throw InternalError("rank deficiency: enumerated trees do not span D_" + std::to_string(d));
    const auto& trees = enumerate_trees(n, d);
    for (std::size_t k = 0; k < trees.size(); ++k)
      if (sgn((*sol)[k]) != 0) out.add(trees[k], (*sol)[k]);
  }
  return out;
}

HomologyClass phi_class(const TreeCombination& b, int k) {
  if (k < 2) throw PreconditionError("phi_class needs k >= 2");
  for (const auto& [code, c] : b.terms()) {
    const int d = code_degree(code);
    if (d < k || d > 2 * k - 2)
      throw PreconditionError("tree degree " + std::to_string(d) + " outside [" + std::to_string(k) + ", " +
                              std::to_string(2 * k - 2) + "]");
  }
  const HomologyPtr h = Homology::get(3, b.rank(), k - 1);
  return h->project(fission(b, h->basis()));
}

int phi_rank(int n, int k) {
  const HomologyPtr h = Homology::get(3, n, k - 1);
  std::vector<std::vector<Rational>> cols;
  for (int l = k; l <= 2 * k - 2; ++l) {
    for (const auto& t : enumerate_trees(n, l)) {
      TreeCombination b(n);
      b.add(t, Rational(1));
      cols.push_back(phi_class(b, k).coordinates());
    }
  }
  RationalMatrix m(h->dim(), static_cast<int>(cols.size()));
  for (int c = 0; c < static_cast<int>(cols.size()); ++c)
    for (int r = 0; r < h->dim(); ++r) m(r, c) = cols[c][r];
  return rank(m);
}

}  // namespace stringlink
