#include "lexer.hpp"

#include <cctype>
#include <utility>

namespace provlab::detail {

namespace {

const std::pair<const char *, const char *> kUnicode[] = {
    {"\xC2\xAC", "~"},          // ¬
    {"\xE2\x88\xA7", "&"},      // ∧
    {"\xE2\x88\xA8", "|"},      // ∨
    {"\xE2\x86\x92", "->"},     // →
    {"\xE2\x86\x94", "<->"},    // ↔
    {"\xE2\x88\x80", "!A"},     // ∀
    {"\xE2\x88\x83", "!E"},     // ∃
    {"\xE2\x89\xA4", "<="},     // ≤
    {"\xE2\x89\xA0", "!="},     // ≠
    {"\xC3\x97", "*"},          // ×
    {"\xC2\xB7", "*"},          // ·
    {"\xE2\x8A\xA5", "F"},      // ⊥
    {"\xE2\x96\xA1", "[]"},     // □
};

const char *kPuncts[] = {"<->", "->", "<=", "!=", "!A", "!E", "[]", "(",
                         ")",   "[",  "]",  ",",  ".",  "=",  "+",  "*",
                         "~",   "&",  "|",  "<",  "#"};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

std::vector<Token> tokenize(const std::string &src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t bytes, int cols) {
    i += bytes;
    col += cols;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1, 1);
      continue;
    }
    bool matched = false;
    for (auto &[utf, ascii] : kUnicode) {
      std::string u(utf);
      if (src.compare(i, u.size(), u) == 0) {
        Tok k = std::string(ascii) == "F" ? Tok::Ident : Tok::Punct;
        out.push_back({k, ascii, line, col});
        advance(u.size(), 1);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (ident_start(c)) {
      size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), line, col});
      advance(j - i, static_cast<int>(j - i));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      out.push_back({Tok::Number, src.substr(i, j - i), line, col});
      advance(j - i, static_cast<int>(j - i));
      continue;
    }
    for (const char *p : kPuncts) {
      std::string s(p);
      if (src.compare(i, s.size(), s) == 0) {
        out.push_back({Tok::Punct, s, line, col});
        advance(s.size(), static_cast<int>(s.size()));
        matched = true;
        break;
      }
    }
    if (!matched)
      throw SyntaxError(std::string("unexpected character '") + c + "'", line,
                        col);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

}  // namespace provlab::detail
