#include "stringlink/freegroup.hpp"

#include "stringlink/errors.hpp"
#include "stringlink/tensor_series.hpp"

#include <algorithm>
#include <cstdlib>

namespace stringlink {

namespace {

void check_rank(int rank) {
  if (rank < 1 || rank > Word::kMaxLetter)
    throw PreconditionError("free group rank must be in 1..15, got " + std::to_string(rank));
}

void check_letter(int rank, const Letter& l) {
  if (l.generator < 1 || l.generator > rank)
    throw PreconditionError("generator index " + std::to_string(l.generator) +
                            " out of range 1.." + std::to_string(rank));
  if (l.exponent != 1 && l.exponent != -1)
    throw PreconditionError("letter exponent must be +1 or -1");
}

void check_strands(int n) {
  if (n < 2 || n > Word::kMaxLetter)
    throw PreconditionError("strand count must be in 2..15, got " + std::to_string(n));
}

void check_braid_letter(int n, const BraidLetter& l) {
  if (!(1 <= l.i && l.i < l.j && l.j <= n))
    throw PreconditionError("braid generator A(" + std::to_string(l.i) + "," + std::to_string(l.j) +
                            ") needs 1 <= i < j <= " + std::to_string(n));
  if (l.exponent != 1 && l.exponent != -1)
    throw PreconditionError("braid letter exponent must be +1 or -1");
}

// Standard Magnus expansion x_i -> 1 + X_i.
TensorSeries magnus(const FreeGroupWord& w, int N) {
  const int n = w.rank();
  std::vector<TensorSeries> fwd, bwd;
  for (int i = 1; i <= n; ++i) {
    TensorSeries s = TensorSeries::one(n, N) + TensorSeries::generator(n, N, i);
    bwd.push_back(inverse(s));
    fwd.push_back(std::move(s));
  }
  TensorSeries acc = TensorSeries::one(n, N);
  for (const Letter& l : w.letters())
    acc = acc * (l.exponent > 0 ? fwd[l.generator - 1] : bwd[l.generator - 1]);
  return acc;
}

}  // namespace

// ---------------------------------------------------------------- words

FreeGroupWord::FreeGroupWord(int rank) : rank_(rank) { check_rank(rank); }

FreeGroupWord::FreeGroupWord(int rank, std::span<const Letter> letters) : rank_(rank) {
  check_rank(rank);
  letters_.reserve(letters.size());
  for (const Letter& l : letters) {
    check_letter(rank, l);
    if (!letters_.empty() && letters_.back().generator == l.generator &&
        letters_.back().exponent == -l.exponent)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }
}

FreeGroupWord reduce(int rank, std::span<const Letter> letters) { return FreeGroupWord(rank, letters); }

FreeGroupWord FreeGroupWord::generator(int rank, int i, int exponent) {
  return FreeGroupWord(rank, {Letter{i, exponent}});
}

FreeGroupWord FreeGroupWord::from_signed(int rank, std::span<const int> letters) {
  std::vector<Letter> ls;
  ls.reserve(letters.size());
  for (int s : letters) {
    if (s == 0) throw PreconditionError("signed letter 0 is not a generator");
    ls.push_back(Letter{std::abs(s), s > 0 ? 1 : -1});
  }
  return FreeGroupWord(rank, ls);
}

FreeGroupWord FreeGroupWord::inverse() const {
  FreeGroupWord out(rank_);
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    out.letters_.push_back(Letter{it->generator, -it->exponent});
  return out;
}

FreeGroupWord FreeGroupWord::operator*(const FreeGroupWord& rhs) const {
  if (rank_ != rhs.rank_) throw PreconditionError("free group rank mismatch");
  FreeGroupWord out = *this;
  for (const Letter& l : rhs.letters_) {
    if (!out.letters_.empty() && out.letters_.back().generator == l.generator &&
        out.letters_.back().exponent == -l.exponent)
      out.letters_.pop_back();
    else
      out.letters_.push_back(l);
  }
  return out;
}

int FreeGroupWord::exponent_sum(int generator) const {
  int s = 0;
  for (const Letter& l : letters_)
    if (l.generator == generator) s += l.exponent;
  return s;
}

std::vector<int> FreeGroupWord::to_signed() const {
  std::vector<int> out;
  out.reserve(letters_.size());
  for (const Letter& l : letters_) out.push_back(l.exponent * l.generator);
  return out;
}

std::string FreeGroupWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    if (k) s += ' ';
    s += "x" + std::to_string(letters_[k].generator);
    if (letters_[k].exponent < 0) s += "^-1";
  }
  return s;
}

FreeGroupWord boundary_word(int rank) {
  std::vector<Letter> ls;
  for (int i = 1; i <= rank; ++i) ls.push_back(Letter{i, 1});
  return FreeGroupWord(rank, ls);
}

// ---------------------------------------------------------------- braids

BraidWord::BraidWord(int strands) : strands_(strands) { check_strands(strands); }

BraidWord::BraidWord(int strands, std::vector<BraidLetter> letters)
    : strands_(strands), letters_(std::move(letters)) {
  check_strands(strands);
  for (const BraidLetter& l : letters_) check_braid_letter(strands, l);
}

BraidWord BraidWord::generator(int strands, int i, int j, int exponent) {
  return BraidWord(strands, {BraidLetter{i, j, exponent}});
}

BraidWord BraidWord::inverse() const {
  BraidWord out(strands_);
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    out.letters_.push_back(BraidLetter{it->i, it->j, -it->exponent});
  return out;
}

BraidWord BraidWord::operator*(const BraidWord& rhs) const {
  if (strands_ != rhs.strands_) throw PreconditionError("braid strand count mismatch");
  BraidWord out = *this;
  out.letters_.insert(out.letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
  return out;
}

BraidWord BraidWord::power(int k) const {
  BraidWord base = k < 0 ? inverse() : *this;
  BraidWord out(strands_);
  for (int r = 0; r < std::abs(k); ++r) out = out * base;
  return out;
}

std::string BraidWord::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    if (k) s += ' ';
    s += "A(" + std::to_string(letters_[k].i) + "," + std::to_string(letters_[k].j) + ")";
    if (letters_[k].exponent < 0) s += "^-1";
  }
  return s;
}

BraidWord commutator(const BraidWord& a, const BraidWord& b) {
  return a * b * a.inverse() * b.inverse();
}

// ---------------------------------------------------------------- endomorphisms

FreeGroupEndomorphism::FreeGroupEndomorphism(int rank) : rank_(rank) {
  check_rank(rank);
  for (int i = 1; i <= rank; ++i) images_.push_back(FreeGroupWord::generator(rank, i));
}

FreeGroupEndomorphism::FreeGroupEndomorphism(int rank, std::vector<FreeGroupWord> images)
    : rank_(rank), images_(std::move(images)) {
  check_rank(rank);
  if (images_.size() != static_cast<std::size_t>(rank))
    throw PreconditionError("endomorphism needs one image per generator");
  for (const auto& w : images_)
    if (w.rank() != rank) throw PreconditionError("endomorphism image has wrong rank");
}

FreeGroupWord FreeGroupEndomorphism::apply(const FreeGroupWord& w) const {
  if (w.rank() != rank_) throw PreconditionError("free group rank mismatch");
  std::vector<Letter> out;
  for (const Letter& l : w.letters()) {
    const auto& img = images_[l.generator - 1].letters();
    if (l.exponent > 0) {
      out.insert(out.end(), img.begin(), img.end());
    } else {
      for (auto it = img.rbegin(); it != img.rend(); ++it)
        out.push_back(Letter{it->generator, -it->exponent});
    }
  }
  return FreeGroupWord(rank_, out);
}

FreeGroupEndomorphism FreeGroupEndomorphism::compose(const FreeGroupEndomorphism& inner) const {
  if (inner.rank_ != rank_) throw PreconditionError("free group rank mismatch");
  std::vector<FreeGroupWord> imgs;
  imgs.reserve(rank_);
  for (const auto& w : inner.images_) imgs.push_back(apply(w));
  return FreeGroupEndomorphism(rank_, std::move(imgs));
}

FreeGroupEndomorphism artin_generator(int strands, int i, int j, int exponent) {
  check_strands(strands);
  check_braid_letter(strands, BraidLetter{i, j, exponent});
  const int n = strands;
  auto x = [n](int k, int e = 1) { return FreeGroupWord::generator(n, k, e); };
  std::vector<FreeGroupWord> imgs;
  imgs.reserve(n);
  if (exponent > 0) {
    const FreeGroupWord xixj = x(i) * x(j);
    const FreeGroupWord comm = x(i) * x(j) * x(i, -1) * x(j, -1);
    for (int k = 1; k <= n; ++k) {
      if (k < i || k > j)
        imgs.push_back(x(k));
      else if (k == i)
        imgs.push_back(xixj * x(i) * xixj.inverse());
      else if (k == j)
        imgs.push_back(x(i) * x(j) * x(i, -1));
      else
        imgs.push_back(comm * x(k) * comm.inverse());
    }
  } else {
    // Inverse automorphism: x_i -> x_j^-1 x_i x_j, x_j -> x_j^-1 x_i^-1 x_j x_i x_j,
    // x_k -> [x_j^-1, x_i^-1] x_k [x_j^-1, x_i^-1]^-1 for i < k < j.
    const FreeGroupWord conj_j = x(j, -1) * x(i, -1);
    const FreeGroupWord comm = x(j, -1) * x(i, -1) * x(j) * x(i);
    for (int k = 1; k <= n; ++k) {
      if (k < i || k > j)
        imgs.push_back(x(k));
      else if (k == i)
        imgs.push_back(x(j, -1) * x(i) * x(j));
      else if (k == j)
        imgs.push_back(conj_j * x(j) * conj_j.inverse());
      else
        imgs.push_back(comm * x(k) * comm.inverse());
    }
  }
  return FreeGroupEndomorphism(n, std::move(imgs));
}

FreeGroupEndomorphism artin(const BraidWord& braid) {
  FreeGroupEndomorphism acc(braid.strands());
  for (const BraidLetter& l : braid.letters())
    acc = acc.compose(artin_generator(braid.strands(), l.i, l.j, l.exponent));
  return acc;
}

FreeGroupWord artin_action(const BraidWord& braid, const FreeGroupWord& word) {
  if (word.rank() != braid.strands()) throw PreconditionError("strand count does not match word rank");
  FreeGroupWord w = word;
  const auto& ls = braid.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it)
    w = artin_generator(braid.strands(), it->i, it->j, it->exponent).apply(w);
  return w;
}

// ---------------------------------------------------------------- longitudes

std::optional<FreeGroupWord> conjugating_word(const FreeGroupWord& w, int i) {
  const auto& ls = w.letters();
  if (ls.size() % 2 == 0) return std::nullopt;
  const std::size_t half = ls.size() / 2;
  if (ls[half] != Letter{i, 1}) return std::nullopt;
  for (std::size_t k = 0; k < half; ++k) {
    const Letter& a = ls[k];
    const Letter& b = ls[ls.size() - 1 - k];
    if (a.generator != b.generator || a.exponent != -b.exponent) return std::nullopt;
  }
  FreeGroupWord u(w.rank(), std::span<const Letter>(ls.data(), half));
  const int e = u.exponent_sum(i);
  std::vector<Letter> tail(static_cast<std::size_t>(std::abs(e)), Letter{i, e > 0 ? -1 : 1});
  return u * FreeGroupWord(w.rank(), tail);
}

FreeGroupWord LongitudeTuple::image(int i) const {
  const FreeGroupWord& y = word(i);
  return y * FreeGroupWord::generator(rank_, i) * y.inverse();
}

LongitudeTuple LongitudeTuple::from_words(int rank, std::vector<FreeGroupWord> words,
                                          std::optional<int> truncation) {
  check_strands(rank);
  if (words.size() != static_cast<std::size_t>(rank))
    throw PreconditionError("longitude tuple needs exactly " + std::to_string(rank) + " words");
  for (int i = 1; i <= rank; ++i) {
    const FreeGroupWord& y = words[i - 1];
    if (y.rank() != rank) throw PreconditionError("longitude word has wrong rank");
    if (y.exponent_sum(i) != 0)
      throw PreconditionError("exponent sum of x" + std::to_string(i) + " in y" + std::to_string(i) +
                              " must be 0");
  }
  if (truncation && *truncation < 1) throw PreconditionError("truncation degree must be >= 1");
  LongitudeTuple t(rank, std::move(words), truncation);
  FreeGroupWord prod(rank);
  for (int i = 1; i <= rank; ++i) prod = prod * t.image(i);
  const FreeGroupWord bnd = boundary_word(rank);
  if (!truncation) {
    if (prod != bnd) throw PreconditionError("longitudes do not fix the boundary word x1...xn");
  } else {
    // prod * bnd^-1 lies in Gamma_{K+1} iff its Magnus expansion is 1 through degree K.
    const TensorSeries m = magnus(prod * bnd.inverse(), *truncation);
    if (m != TensorSeries::one(rank, *truncation))
      throw PreconditionError("longitudes do not fix x1...xn modulo Gamma_" +
                              std::to_string(*truncation + 1));
  }
  return t;
}

LongitudeTuple longitudes(const BraidWord& braid) {
  const int n = braid.strands();
  const FreeGroupEndomorphism art = artin(braid);
  std::vector<FreeGroupWord> ys;
  ys.reserve(n);
  for (int i = 1; i <= n; ++i) {
    auto y = conjugating_word(art.image(i), i);
    if (!y) throw InternalError("Artin image of x" + std::to_string(i) + " is not a conjugate of x" +
                                std::to_string(i));
    ys.push_back(std::move(*y));
  }
  return LongitudeTuple(n, std::move(ys), std::nullopt);
}

int milnor_level(const LongitudeTuple& tuple, int max_k) {
  if (max_k < 1) throw PreconditionError("max_k must be >= 1");
  if (max_k == 1) return 1;
  int level = max_k;
  for (const FreeGroupWord& y : tuple.words()) {
    const TensorSeries m = magnus(y, max_k - 1) - TensorSeries::one(tuple.rank(), max_k - 1);
    const int d = m.min_degree();
    if (d != -1) level = std::min(level, d);
  }
  return level;
}

int milnor_level(const BraidWord& braid, int max_k) { return milnor_level(longitudes(braid), max_k); }

}  // namespace stringlink
