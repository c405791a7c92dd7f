#include "metab/ringexpr.hpp"

#include <cctype>

#include "metab/errors.hpp"

namespace metab {

namespace {

class Parser {
 public:
  Parser(const RingCtx& ctx, const std::string& text) : ctx_(ctx), s_(text) {}

  RingElem run() {
    RingElem r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Int integer() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
    Int v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > (Int{1} << 40)) fail("integer too large");
      ++pos_;
    }
    return v;
  }

  RingElem expr() {
    RingElem r = term();
    for (;;) {
      if (eat('+')) r += term();
      else if (eat('-')) r -= term();
      else return r;
    }
  }

  RingElem term() {
    RingElem r = unary();
    while (eat('*')) r = r * unary();
    return r;
  }

  RingElem unary() {
    if (eat('-')) return -unary();
    return power();
  }

  RingElem power() {
    skip();
    int var = -1;
    RingElem base = atom(var);
    if (!eat('^')) return base;
    bool neg = eat('-');
    Int k = integer();
    if (!neg) return base.pow(static_cast<std::uint64_t>(k));
    if (var < 0) fail("negative exponent on a non-monomial");
    Int e = ctx_.m() - k % ctx_.m();
    return ctx_.monomial(var == 1 ? ctx_.normalize(e, 0) : ctx_.normalize(0, e));
  }

  RingElem atom(int& var) {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RingElem r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == 'a') {
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '1' || s_[pos_] == '2')) {
        var = s_[pos_++] - '0';
        return var == 1 ? ctx_.monomial(1, 0) : ctx_.monomial(0, 1);
      }
      fail("expected a1 or a2");
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return ctx_.one().scaled(integer());
    fail("unexpected character");
  }

  const RingCtx& ctx_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

RingElem parse_ring_expr(const RingCtx& ctx, const std::string& text) { return Parser(ctx, text).run(); }

}  // namespace metab
