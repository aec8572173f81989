#include "stringlink/milnor.hpp"

#include "stringlink/errors.hpp"
#include "stringlink/linalg.hpp"

namespace stringlink {

LieElement exp_ad(const LieElement& y, const LieElement& x) {
  LieElement acc = x;
  LieElement term = x;
  for (int m = 1; m <= x.max_degree(); ++m) {
    term = bracket(y, term) * Rational(1, m);
    if (term.is_zero()) break;
    acc += term;
  }
  return acc;
}

ConjugatorResult try_conjugator_log(const LieElement& l, int i) {
  const int n = l.rank(), N = l.max_degree();
  ConjugatorResult out;
  const LieElement xi = LieElement::generator(n, N, i);
  if (!(l.degree_part(1) == xi.degree_part(1))) {
    out.failing_degree = 1;
    return out;
  }
  LieElement y(n, N);
  for (int d = 1; d < N; ++d) {
    const LieElement residual = (l - exp_ad(y, xi)).degree_part(d + 1);
    if (residual.is_zero()) continue;
    // Columns: basis words of degree d (X_i itself excluded in degree 1),
    // rows: degree d+1; entry = coordinate of [P_w, X_i].
    std::vector<Word> cols;
    for (const Word& w : lyndon_basis(n, d))
      if (!(d == 1 && w[0] == i)) cols.push_back(w);
    const auto& rows = lyndon_basis(n, d + 1);
    std::map<Word, int> row_index;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) row_index.emplace(rows[r], r);
    RationalMatrix a(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (int c = 0; c < static_cast<int>(cols.size()); ++c)
      for (const auto& [w, v] : basis_bracket(cols[c], Word::letter(i))) a(row_index.at(w), c) = v;
    std::vector<Rational> b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) b[r] = residual.coefficient(rows[r]);
    const auto x = solve(a, b);
    if (!x) {
      out.failing_degree = d + 1;
      return out;
    }
    for (std::size_t c = 0; c < cols.size(); ++c) y.add_term(cols[c], (*x)[c]);
  }
  if (!(exp_ad(y, xi) == l)) throw InternalError("conjugator failed its own verification");
  out.y = y.truncated(N - 1);
  return out;
}

LieElement conjugator(const TensorSeries& w, int i) {
  if (!is_grouplike(w)) throw PreconditionError("conjugator needs a group-like series");
  ConjugatorResult r = try_conjugator_log(from_tensor(log(w)), i);
  if (!r.y)
    throw PreconditionError("not conjugate to exp(X" + std::to_string(i) + "): inconsistent at degree " +
                            std::to_string(r.failing_degree));
  return std::move(*r.y);
}

SpecialAutData::SpecialAutData(int N, std::vector<LieElement> y) : N_(N), y_(std::move(y)) {
  if (y_.empty()) throw PreconditionError("special automorphism needs at least one generator");
  for (const auto& e : y_)
    if (e.rank() != rank() || e.max_degree() != N - 1)
      throw PreconditionError("special automorphism data must have rank n and degree bound N - 1");
}

LieElement SpecialAutData::image(int i) const {
  return exp_ad(y(i).extended(N_), LieElement::generator(rank(), N_, i));
}

TensorSeries SpecialAutData::apply(const TensorSeries& f) const {
  if (f.truncation() != N_ || f.rank() != rank()) throw PreconditionError("series does not match the automorphism");
  std::vector<TensorSeries> images;
  for (int i = 1; i <= rank(); ++i) images.push_back(to_tensor(image(i)));
  return substitute(f, images);
}

SpecialAutData SpecialAutData::compose(const SpecialAutData& inner) const {
  if (inner.N_ != N_ || inner.rank() != rank()) throw PreconditionError("automorphisms do not match");
  std::vector<LieElement> ys;
  for (int i = 1; i <= rank(); ++i) {
    const TensorSeries img = apply(to_tensor(inner.image(i)));
    ConjugatorResult r = try_conjugator_log(from_tensor(img), i);
    if (!r.y) throw InternalError("composite of special automorphisms is not tangential");
    ys.push_back(std::move(*r.y));
  }
  return SpecialAutData(N_, std::move(ys));
}

bool SpecialAutData::normalized() const {
  for (int i = 1; i <= rank(); ++i)
    if (sgn(y(i).coefficient(Word::letter(i))) != 0) return false;
  return true;
}

bool SpecialAutData::fixes_boundary() const {
  LieElement sum(rank(), N_), images(rank(), N_);
  for (int i = 1; i <= rank(); ++i) {
    sum += LieElement::generator(rank(), N_, i);
    images += image(i);
  }
  return sum == images;
}

namespace {

Expansion checked_truncation(int n, const Expansion& theta, int N) {
  if (theta.rank() != n) throw PreconditionError("expansion rank does not match the input");
  if (N < 1 || N > theta.truncation())
    throw PreconditionError("truncation " + std::to_string(N) + " exceeds the expansion degree " +
                            std::to_string(theta.truncation()));
  Expansion th = theta.truncated(N);
  const SpecialReport report = is_special(th);
  if (!report.special()) throw PreconditionError("expansion is not special: " + report.diagnostic);
  return th;
}

// psi = theta o Art(L) o theta^-1 is determined by psi(theta(x_j)) = R_j with
// R_j = theta(Art(L)(x_j)). Writing theta(x_j) = 1 + g_j(X), the images
// Z_j = psi(X_j) solve g_j(Z) = R_j - 1, one degree per iteration.
SpecialAutData art_theta_from_images(const Expansion& th, const std::vector<TensorSeries>& images) {
  const int n = th.rank(), N = th.truncation();
  std::vector<TensorSeries> g, target, z;
  for (int j = 1; j <= n; ++j) {
    g.push_back(th.value(j) - TensorSeries::one(n, N));
    target.push_back(images[j - 1] - TensorSeries::one(n, N));
    z.push_back(TensorSeries::generator(n, N, j));
  }
  for (int iter = 1; iter < N; ++iter) {
    std::vector<TensorSeries> next;
    for (int j = 0; j < n; ++j) next.push_back(z[j] + target[j] - substitute(g[j], z));
    z = std::move(next);
  }
  std::vector<LieElement> ys;
  for (int j = 1; j <= n; ++j) {
    if (!(substitute(g[j - 1], z) == target[j - 1])) throw InternalError("Art^theta inversion did not converge");
    if (!is_primitive(z[j - 1])) throw InternalError("Art^theta image of X" + std::to_string(j) + " is not primitive");
    ConjugatorResult r = try_conjugator_log(from_tensor(z[j - 1]), j);
    if (!r.y)
      throw PreconditionError("longitude data does not conjugate X" + std::to_string(j) + " at degree " +
                              std::to_string(r.failing_degree));
    ys.push_back(std::move(*r.y));
  }
  SpecialAutData out(N, std::move(ys));
  if (!out.fixes_boundary()) throw InternalError("Art^theta does not fix X1+...+Xn");
  return out;
}

}  // namespace

std::vector<TensorSeries> artin_images(const BraidWord& braid, const Expansion& theta) {
  const int n = braid.strands();
  if (theta.rank() != n) throw PreconditionError("expansion rank does not match the braid");
  // cur[m] = theta(Art(prefix)(x_m)); Art(P g) (x_k) = Art(P)(Art(g)(x_k)).
  std::vector<TensorSeries> cur(theta.values()), inv;
  for (int m = 1; m <= n; ++m) inv.push_back(theta.inverse_value(m));
  for (const BraidLetter& b : braid.letters()) {
    const FreeGroupEndomorphism g = artin_generator(n, b.i, b.j, b.exponent);
    std::vector<TensorSeries> next(cur), next_inv(inv);
    for (int k = b.i; k <= b.j; ++k) {
      const auto& letters = g.image(k).letters();
      TensorSeries p = TensorSeries::one(n, theta.truncation());
      TensorSeries q = p;
      for (const Letter& l : letters) p = p * (l.exponent > 0 ? cur : inv)[l.generator - 1];
      for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        q = q * (it->exponent > 0 ? inv : cur)[it->generator - 1];
      next[k - 1] = std::move(p);
      next_inv[k - 1] = std::move(q);
    }
    cur = std::move(next);
    inv = std::move(next_inv);
  }
  return cur;
}

SpecialAutData art_theta(const LongitudeTuple& data, const Expansion& theta, int N) {
  if (data.truncation() && N > *data.truncation())
    throw PreconditionError("truncation " + std::to_string(N) + " exceeds the longitude data degree " +
                            std::to_string(*data.truncation()));
  const Expansion th = checked_truncation(data.rank(), theta, N);
  std::vector<TensorSeries> images;
  for (int j = 1; j <= data.rank(); ++j) images.push_back(evaluate(th, data.image(j)));
  return art_theta_from_images(th, images);
}

SpecialAutData art_theta(const BraidWord& braid, const Expansion& theta, int N) {
  const Expansion th = checked_truncation(braid.strands(), theta, N);
  return art_theta_from_images(th, artin_images(braid, th));
}

SpecialAutData art_theta(const LinkData& data, const Expansion& theta, int N) {
  return std::visit([&](const auto& d) { return art_theta(d, theta, N); }, data);
}

int rank(const LinkData& data) {
  if (const auto* b = std::get_if<BraidWord>(&data)) return b->strands();
  return std::get<LongitudeTuple>(data).rank();
}

HTensorLie total_milnor(const LongitudeTuple& data, const Expansion& theta, int N) {
  return HTensorLie(art_theta(data, theta, N).ys());
}

HTensorLie total_milnor(const BraidWord& braid, const Expansion& theta, int N) {
  return HTensorLie(art_theta(braid, theta, N).ys());
}

HTensorLie total_milnor(const LinkData& data, const Expansion& theta, int N) {
  return HTensorLie(art_theta(data, theta, N).ys());
}

namespace {

void require_level(const HTensorLie& total, int k) {
  const int d = total.min_degree();
  if (d >= 1 && d < k) throw FiltrationError(k, d);
}

}  // namespace

HTensorLie milnor_degree_k(const LinkData& data, const Expansion& theta, int k) {
  if (k < 1) throw PreconditionError("degree k must be >= 1");
  const HTensorLie total = total_milnor(data, theta, k + 1);
  require_level(total, k);
  return total.degree_part(k);
}

HTensorLie milnor_degree_k(const LongitudeTuple& data, const Expansion& theta, int k) {
  return milnor_degree_k(LinkData(data), theta, k);
}

HTensorLie milnor_degree_k(const BraidWord& braid, const Expansion& theta, int k) {
  return milnor_degree_k(LinkData(braid), theta, k);
}

HTensorLie truncated_milnor(const LinkData& data, const Expansion& theta, int k) {
  if (k < 1) throw PreconditionError("degree k must be >= 1");
  const HTensorLie total = total_milnor(data, theta, 2 * k);
  require_level(total, k);
  return total.degree_range(k, 2 * k - 1);
}

HTensorLie truncated_milnor(const LongitudeTuple& data, const Expansion& theta, int k) {
  return truncated_milnor(LinkData(data), theta, k);
}

HTensorLie truncated_milnor(const BraidWord& braid, const Expansion& theta, int k) {
  return truncated_milnor(LinkData(braid), theta, k);
}

}  // namespace stringlink
