#pragma once

// Text form of module expressions:
//
//   expr := "triv" | "def(" n ")" | "ad(" n ")" | "dual(" expr ")"
//         | "sum(" expr "," expr ")" | "ten(" expr "," expr ")"
//         | "sym(" d "," expr ")" | "ext(" d "," expr ")" | "tw(" expr "," r ")"
//
// Whitespace between tokens is ignored. Error offsets are 1-based byte positions.

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "nilsupport/error.hpp"
#include "nilsupport/module_expr.hpp"

namespace nilsupport {

namespace detail {

class DslParser {
 public:
  explicit DslParser(std::string_view text) : text_(text) {}

  ModuleExpr parse_all() {
    ModuleExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_ + 1); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    throw ParseError(what, at + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size()) fail(std::string("expected '") + c + "', found end of input");
    if (text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::size_t natural() {
    skip_ws();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (1u << 20)) fail_at("number too large", start);
      ++pos_;
    }
    if (pos_ == start) fail("expected a natural number");
    return static_cast<std::size_t>(v);
  }

  ModuleExpr expr() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view word = text_.substr(start, pos_ - start);
    if (word.empty()) {
      if (pos_ >= text_.size()) fail("expected a module expression, found end of input");
      fail("expected a module expression");
    }
    try {
      if (word == "triv") return ModuleExpr::triv();
      if (word == "def" || word == "ad") {
        expect('(');
        const std::size_t n = natural();
        expect(')');
        return word == "def" ? ModuleExpr::def(n) : ModuleExpr::ad(n);
      }
      if (word == "dual") {
        expect('(');
        ModuleExpr e = expr();
        expect(')');
        return ModuleExpr::dual(e);
      }
      if (word == "sum" || word == "ten") {
        expect('(');
        ModuleExpr a = expr();
        expect(',');
        ModuleExpr b = expr();
        expect(')');
        return word == "sum" ? ModuleExpr::sum(a, b) : ModuleExpr::tensor(a, b);
      }
      if (word == "sym" || word == "ext") {
        expect('(');
        const std::size_t d = natural();
        expect(',');
        ModuleExpr e = expr();
        expect(')');
        return word == "sym" ? ModuleExpr::sym(d, e) : ModuleExpr::ext(d, e);
      }
      if (word == "tw") {
        expect('(');
        ModuleExpr e = expr();
        expect(',');
        const std::size_t r = natural();
        expect(')');
        return ModuleExpr::twist(e, r);
      }
    } catch (const DimensionError& err) {
      fail_at(err.what(), start);
    }
    fail_at("unknown constructor '" + std::string(word) + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Throws ParseError (syntax) or MixedRank (leaves disagree on n).
inline ModuleExpr parse_module(std::string_view text) { return detail::DslParser(text).parse_all(); }

/// Canonical text form; parse_module(to_dsl(e)) == e.
inline std::string to_dsl(const ModuleExpr& e) {
  switch (e.op()) {
    case ModuleOp::Triv: return "triv";
    case ModuleOp::Def: return "def(" + std::to_string(e.param()) + ")";
    case ModuleOp::Ad: return "ad(" + std::to_string(e.param()) + ")";
    case ModuleOp::Dual: return "dual(" + to_dsl(e.child(0)) + ")";
    case ModuleOp::Sum: return "sum(" + to_dsl(e.child(0)) + "," + to_dsl(e.child(1)) + ")";
    case ModuleOp::Tensor: return "ten(" + to_dsl(e.child(0)) + "," + to_dsl(e.child(1)) + ")";
    case ModuleOp::Sym: return "sym(" + std::to_string(e.param()) + "," + to_dsl(e.child(0)) + ")";
    case ModuleOp::Ext: return "ext(" + std::to_string(e.param()) + "," + to_dsl(e.child(0)) + ")";
    case ModuleOp::Twist: return "tw(" + to_dsl(e.child(0)) + "," + std::to_string(e.param()) + ")";
  }
  return "";
}

}  // namespace nilsupport
