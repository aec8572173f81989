#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace stringlink {

/// A word in the letters 1..15 of length at most 16, packed four bits per
/// letter with the first letter most significant. Ordered by length, then
/// lexicographically, which is the degree-major order used for every series
/// and basis in this library.
class Word {
 public:
  static constexpr int kMaxLength = 16;
  static constexpr int kMaxLetter = 15;

  Word() = default;
  Word(std::initializer_list<int> letters);
  explicit Word(std::span<const int> letters);

  static Word letter(int i) { return Word({i}); }

  int length() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }
  std::uint64_t code() const noexcept { return code_; }

  /// 0-based position, returns the letter value (1..15).
  int operator[](int pos) const noexcept {
    return static_cast<int>((code_ >> (4 * (length_ - 1 - pos))) & 0xF);
  }

  std::vector<int> letters() const;
  int max_letter() const noexcept;

  Word prefix(int len) const;
  Word suffix(int len) const;
  Word operator*(const Word& rhs) const;

  /// Pure lexicographic order (a proper prefix sorts first); differs from
  /// operator<=> across lengths.
  static bool lex_less(const Word& a, const Word& b) noexcept;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept {
    if (auto c = a.length_ <=> b.length_; c != 0) return c;
    return a.code_ <=> b.code_;
  }

  /// "X1X2X1" style; empty word renders as "1".
  std::string to_string() const;

 private:
  std::uint8_t length_ = 0;
  std::uint64_t code_ = 0;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    return std::hash<std::uint64_t>{}(w.code() * 31u + static_cast<std::uint64_t>(w.length()));
  }
};

}  // namespace stringlink
