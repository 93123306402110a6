// Shared tokenizer for the arithmetic and modal text syntaxes.

#ifndef PROVLAB_LEXER_HPP_
#define PROVLAB_LEXER_HPP_

#include <string>
#include <vector>

#include "provlab/syntax.hpp"

namespace provlab::detail {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

// Unicode connectives are mapped to their ASCII spelling here, so the
// parsers only ever see ASCII punctuation.
std::vector<Token> tokenize(const std::string &src);

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token &peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(const std::string &punct) const {
    return peek().kind == Tok::Punct && peek().text == punct;
  }
  bool accept(const std::string &punct) {
    if (!at(punct)) return false;
    ++pos_;
    return true;
  }
  void expect(const std::string &punct) {
    if (!accept(punct)) fail("expected '" + punct + "'");
  }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  size_t pos() const { return pos_; }
  void reset(size_t p) { pos_ = p; }

  [[noreturn]] void fail(const std::string &msg) const {
    const Token &t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(msg + ", found " + found, t.line, t.col);
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace provlab::detail

#endif
