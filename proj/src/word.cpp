#include "stringlink/word.hpp"

#include "stringlink/errors.hpp"

namespace stringlink {

namespace {

void check_letter(int l) {
  if (l < 1 || l > Word::kMaxLetter)
    throw PreconditionError("word letter out of range 1..15: " + std::to_string(l));
}

}  // namespace

Word::Word(std::initializer_list<int> letters)
    : Word(std::span<const int>(letters.begin(), letters.size())) {}

Word::Word(std::span<const int> letters) {
  if (letters.size() > static_cast<std::size_t>(kMaxLength))
    throw PreconditionError("word longer than 16 letters");
  for (int l : letters) {
    check_letter(l);
    code_ = (code_ << 4) | static_cast<std::uint64_t>(l);
  }
  length_ = static_cast<std::uint8_t>(letters.size());
}

std::vector<int> Word::letters() const {
  std::vector<int> out(length_);
  for (int i = 0; i < length_; ++i) out[i] = (*this)[i];
  return out;
}

int Word::max_letter() const noexcept {
  int m = 0;
  for (int i = 0; i < length_; ++i) m = std::max(m, (*this)[i]);
  return m;
}

Word Word::prefix(int len) const {
  Word w;
  w.length_ = static_cast<std::uint8_t>(len);
  w.code_ = len == 0 ? 0 : code_ >> (4 * (length_ - len));
  return w;
}

Word Word::suffix(int len) const {
  Word w;
  w.length_ = static_cast<std::uint8_t>(len);
  w.code_ = len == 0 ? 0 : code_ & ((len == 16) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (4 * len)) - 1));
  return w;
}

Word Word::operator*(const Word& rhs) const {
  if (length_ + rhs.length_ > kMaxLength) throw PreconditionError("word longer than 16 letters");
  Word w;
  w.length_ = static_cast<std::uint8_t>(length_ + rhs.length_);
  w.code_ = rhs.length_ == 16 ? rhs.code_ : ((code_ << (4 * rhs.length_)) | rhs.code_);
  return w;
}

bool Word::lex_less(const Word& a, const Word& b) noexcept {
  const int m = std::min(a.length(), b.length());
  for (int i = 0; i < m; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.length() < b.length();
}

std::string Word::to_string() const {
  if (length_ == 0) return "1";
  std::string s;
  for (int i = 0; i < length_; ++i) s += "X" + std::to_string((*this)[i]);
  return s;
}

}  // namespace stringlink
