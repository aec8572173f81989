#pragma once
// Helpers shared by the test binaries. The Magnus oracle below deliberately
// avoids the library's series type.
#include "stringlink/freegroup.hpp"
#include "stringlink/free_lie.hpp"
#include "stringlink/rational.hpp"

#include <map>
#include <random>
#include <vector>

namespace testing {

using namespace stringlink;

/// p/q in canonical form (mpq_class does not reduce on construction).
inline Rational q(long p, long den) {
  Rational r(p, den);
  r.canonicalize();
  return r;
}

inline BraidWord random_braid(std::mt19937_64& rng, int n, int length) {
  std::vector<BraidLetter> letters;
  for (int t = 0; t < length; ++t) {
    int i = static_cast<int>(rng() % n) + 1, j = static_cast<int>(rng() % n) + 1;
    while (j == i) j = static_cast<int>(rng() % n) + 1;
    if (i > j) std::swap(i, j);
    letters.push_back({i, j, rng() % 2 ? 1 : -1});
  }
  return BraidWord(n, std::move(letters));
}

/// An iterated commutator [w_1, [w_2, ... [w_{level-1}, w_level]]] of short
/// random words, which lies in filtration level `level`.
inline BraidWord random_commutator_braid(std::mt19937_64& rng, int n, int level, int word_length = 2) {
  BraidWord out = random_braid(rng, n, word_length);
  for (int l = 1; l < level; ++l) out = commutator(random_braid(rng, n, word_length), out);
  return out;
}

inline BraidWord A(int n, int i, int j) { return BraidWord::generator(n, i, j); }

/// Noncommutative polynomial truncated above degree `max_degree`.
using Poly = std::map<std::vector<int>, Rational>;

inline Poly poly_mul(const Poly& a, const Poly& b, int max_degree) {
  Poly out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) {
      if (static_cast<int>(u.size() + v.size()) > max_degree) continue;
      std::vector<int> w(u);
      w.insert(w.end(), v.begin(), v.end());
      out[w] += cu * cv;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

/// x_i -> 1 + X_i, x_i^-1 -> 1 - X_i + X_i^2 - ...
inline Poly magnus_oracle(const FreeGroupWord& w, int max_degree) {
  Poly acc{{{}, Rational(1)}};
  for (const Letter& l : w.letters()) {
    Poly f{{{}, Rational(1)}};
    if (l.exponent > 0) {
      f[{l.generator}] = 1;
    } else {
      std::vector<int> p;
      for (int d = 1; d <= max_degree; ++d) {
        p.push_back(l.generator);
        f[p] = d % 2 ? -1 : 1;
      }
    }
    acc = poly_mul(acc, f, max_degree);
  }
  return acc;
}

inline Poly degree_part(const Poly& p, int d) {
  Poly out;
  for (const auto& [w, c] : p)
    if (static_cast<int>(w.size()) == d) out[w] = c;
  return out;
}

/// Tensor expansion of a Lie element as a Poly, through the Lyndon
/// polynomials.
inline Poly to_poly(const LieElement& x) {
  Poly out;
  for (const auto& [w, c] : x.terms())
    for (const auto& [u, cu] : lyndon_polynomial(w)) out[u.letters()] += c * cu;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

/// Witt number by brute force: count words of length d strictly smaller
/// than all their proper rotations.
inline long long brute_force_lyndon_count(int n, int d) {
  long long count = 0;
  std::vector<int> w(d, 1);
  while (true) {
    bool lyndon = true;
    for (int r = 1; r < d && lyndon; ++r) {
      std::vector<int> rot(w.begin() + r, w.end());
      rot.insert(rot.end(), w.begin(), w.begin() + r);
      if (!(w < rot)) lyndon = false;
    }
    if (lyndon) ++count;
    int pos = d - 1;
    while (pos >= 0 && w[pos] == n) w[pos--] = 1;
    if (pos < 0) break;
    ++w[pos];
  }
  return count;
}

}  // namespace testing
