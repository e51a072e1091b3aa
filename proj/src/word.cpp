#include "circrmt/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace circrmt {

std::string_view letter_name(LetterKind kind) {
  switch (kind) {
    case LetterKind::C: return "C";
    case LetterKind::CTilde: return "C~";
    case LetterKind::S: return "S";
    case LetterKind::L: return "L";
    case LetterKind::R: return "R";
    case LetterKind::T: return "T";
    case LetterKind::Ts: return "Ts";
    case LetterKind::H: return "H";
    case LetterKind::D: return "D";
    case LetterKind::J: return "J";
  }
  return "?";
}

bool is_random_letter(LetterKind kind) { return kind != LetterKind::D && kind != LetterKind::J; }

namespace {

Letter parse_token(const std::string& token) {
  static constexpr LetterKind kOrder[] = {LetterKind::CTilde, LetterKind::Ts, LetterKind::C,
                                          LetterKind::S,      LetterKind::L,  LetterKind::R,
                                          LetterKind::T,      LetterKind::H,  LetterKind::D,
                                          LetterKind::J};
  std::string_view rest = token;
  Letter letter;
  bool matched = false;
  for (auto kind : kOrder) {
    const auto name = letter_name(kind);
    if (rest.starts_with(name)) {
      letter.kind = kind;
      rest.remove_prefix(name.size());
      matched = true;
      break;
    }
  }
  if (!matched) throw WordParseError(token, "unknown letter");

  int stars = 0;
  bool has_power = false;
  while (!rest.empty()) {
    if (rest.front() == '*') {
      ++stars;
      rest.remove_prefix(1);
    } else if (rest.front() == '^') {
      if (letter.kind != LetterKind::D) throw WordParseError(token, "powers are only allowed on D");
      if (has_power) throw WordParseError(token, "repeated power");
      rest.remove_prefix(1);
      std::size_t len = 0;
      while (len < rest.size() && (std::isdigit(static_cast<unsigned char>(rest[len])) || (len == 0 && rest[len] == '-')))
        ++len;
      int value = 0;
      const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + len, value);
      if (ec != std::errc{} || ptr != rest.data() + len || len == 0) throw WordParseError(token, "bad power");
      letter.power = value;
      has_power = true;
      rest.remove_prefix(len);
    } else {
      throw WordParseError(token, "unexpected character");
    }
  }
  if (stars > 1) throw WordParseError(token, "more than one '*'");
  letter.adjoint = stars == 1;
  return letter;
}

}  // namespace

Word parse_word(std::string_view text) {
  Word word;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) word.letters.push_back(parse_token(token));
  return word;
}

std::string to_string(const Word& word) {
  std::string out;
  for (const auto& l : word.letters) {
    if (!out.empty()) out += ' ';
    out += letter_name(l.kind);
    if (l.kind == LetterKind::D && l.power != 1) out += "^" + std::to_string(l.power);
    if (l.adjoint) out += '*';
  }
  return out;
}

Word adjoint(const Word& word) {
  Word out;
  out.letters.assign(word.letters.rbegin(), word.letters.rend());
  for (auto& l : out.letters) l.adjoint = !l.adjoint;
  return out;
}

Word rotate(const Word& word, std::size_t k) {
  Word out = word;
  if (!out.letters.empty())
    std::rotate(out.letters.begin(), out.letters.begin() + static_cast<std::ptrdiff_t>(k % out.letters.size()),
                out.letters.end());
  return out;
}

}  // namespace circrmt
