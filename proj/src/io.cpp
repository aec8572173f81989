#include "stringlink/io.hpp"

#include "stringlink/errors.hpp"
#include "stringlink/word.hpp"

#include <json.hpp>

#include <cctype>
#include <limits>

namespace stringlink {

namespace {

class BraidParser {
 public:
  BraidParser(std::string_view text, int strands) : text_(text), strands_(strands) {}

  BraidWord parse() {
    BraidWord w = sequence();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("braid word, column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  long integer() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an integer");
    if (pos_ - digits > 6) fail("integer too large");
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  BraidWord sequence() {
    BraidWord w(strands_);
    while (true) {
      skip_space();
      if (pos_ == text_.size() || text_[pos_] == ',' || text_[pos_] == ']') return w;
      w = w * factor();
    }
  }

  BraidWord factor() {
    BraidWord base(strands_);
    if (peek('[')) {
      ++pos_;
      BraidWord a = sequence();
      expect(',');
      BraidWord b = sequence();
      expect(']');
      base = commutator(a, b);
    } else if (peek('A')) {
      ++pos_;
      expect('(');
      const long i = integer();
      expect(',');
      const long j = integer();
      expect(')');
      if (i < 1 || j > strands_ || i >= j)
        fail("A(" + std::to_string(i) + "," + std::to_string(j) + ") needs 1 <= i < j <= " + std::to_string(strands_));
      base = BraidWord::generator(strands_, static_cast<int>(i), static_cast<int>(j));
    } else {
      fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'" : "unexpected end of input");
    }
    if (peek('^')) {
      ++pos_;
      const long k = integer();
      if (k > 1000 || k < -1000) fail("exponent must be within +-1000");
      base = base.power(static_cast<int>(k));
    }
    return base;
  }

  std::string_view text_;
  int strands_;
  std::size_t pos_ = 0;
};

}  // namespace

BraidWord parse_braid(std::string_view text, int strands) {
  if (strands < 2 || strands > Word::kMaxLetter) throw ParseError("strand count must be in 2..15");
  return BraidParser(text, strands).parse();
}

LongitudeTuple parse_longitude_tuple(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("longitude JSON: ") + e.what());
  }
  int n = 0;
  std::optional<int> truncation;
  std::vector<FreeGroupWord> words;
  try {
    n = doc.at("n").get<int>();
    if (n < 2 || n > Word::kMaxLetter) throw ParseError("longitude JSON: n must be in 2..15");
    if (doc.contains("K") && !doc.at("K").is_null()) truncation = doc.at("K").get<int>();
    const auto& list = doc.at("words");
    if (!list.is_array() || static_cast<int>(list.size()) != n)
      throw ParseError("longitude JSON: expected n words");
    for (const auto& w : list) {
      const auto letters = w.get<std::vector<int>>();
      for (int l : letters)
        if (l == 0 || l > n || l < -n) throw ParseError("longitude JSON: letter out of range");
      words.push_back(FreeGroupWord::from_signed(n, letters));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("longitude JSON: ") + e.what());
  }
  return LongitudeTuple::from_words(n, std::move(words), truncation);
}

std::string longitude_tuple_to_json(const LongitudeTuple& tuple) {
  nlohmann::ordered_json doc;
  doc["n"] = tuple.rank();
  if (tuple.truncation()) doc["K"] = *tuple.truncation();
  auto words = nlohmann::ordered_json::array();
  for (const auto& w : tuple.words()) words.push_back(w.to_signed());
  doc["words"] = std::move(words);
  return doc.dump();
}

}  // namespace stringlink
