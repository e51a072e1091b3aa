#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace circrmt {

/// Matrix letters of the word grammar.
enum class LetterKind { C, CTilde, S, L, R, T, Ts, H, D, J };

std::string_view letter_name(LetterKind kind);
bool is_random_letter(LetterKind kind);

struct Letter {
  LetterKind kind = LetterKind::C;
  bool adjoint = false;
  int power = 1;  // only meaningful for D

  /// Net exponent of a D letter (D* = D^{-1}).
  int net_power() const { return adjoint ? -power : power; }
  bool operator==(const Letter&) const = default;
};

/// A monomial: ordered product of letters, read left to right.
struct Word {
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  bool operator==(const Word&) const = default;
};

class WordParseError : public std::invalid_argument {
 public:
  WordParseError(const std::string& token, const std::string& why)
      : std::invalid_argument("malformed word token '" + token + "': " + why), token_(token) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

/// Whitespace-separated letters from {C, C~, S, L, R, T, Ts, H, D, J}, each with an
/// optional trailing `*` (adjoint) and, on D only, an optional `^k` (k integer).
Word parse_word(std::string_view text);
std::string to_string(const Word& word);

/// W* : letters reversed with adjoint flags flipped.
Word adjoint(const Word& word);
/// Cyclic rotation moving the first `k` letters to the back.
Word rotate(const Word& word, std::size_t k);

}  // namespace circrmt
