#include "pilab/parser.hpp"

#include <cctype>
#include <stdexcept>

namespace pilab {

NcPoly Expr::to_poly() const {
  switch (kind) {
  case Kind::Num:
    return NcPoly::one() * value;
  case Kind::Var:
    return NcPoly::var(var);
  case Kind::Sum: {
    NcPoly r;
    for (size_t i = 0; i < children.size(); ++i)
      r += children[i]->to_poly() * weights[i];
    return r;
  }
  case Kind::Prod: {
    NcPoly r = NcPoly::one();
    for (auto &c : children)
      r = r * c->to_poly();
    return r;
  }
  case Kind::Comm: {
    std::vector<NcPoly> args;
    args.reserve(children.size());
    for (auto &c : children)
      args.push_back(c->to_poly());
    return commutator(std::span<const NcPoly>(args.data(), args.size()));
  }
  }
  throw std::logic_error("unreachable");
}

namespace {

class Parser {
public:
  explicit Parser(const std::string &s) : s_(s) {}

  ExprPtr parse() {
    auto e = expr();
    skip_ws();
    if (pos_ != s_.size())
      fail("trailing input");
    return e;
  }

private:
  const std::string &s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string &msg) {
    throw std::invalid_argument("parse error at position " +
                                std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  ExprPtr expr() {
    auto sum = std::make_shared<Expr>();
    sum->kind = Expr::Kind::Sum;
    Rat sign = eat('-') ? -1 : 1;
    sum->children.push_back(term());
    sum->weights.push_back(sign);
    while (true) {
      if (eat('+'))
        sign = 1;
      else if (eat('-'))
        sign = -1;
      else
        break;
      sum->children.push_back(term());
      sum->weights.push_back(sign);
    }
    if (sum->children.size() == 1 && sum->weights[0] == 1)
      return sum->children[0];
    return sum;
  }

  ExprPtr term() {
    auto prod = std::make_shared<Expr>();
    prod->kind = Expr::Kind::Prod;
    prod->children.push_back(factor());
    while (true) {
      bool star = eat('*');
      char c = peek();
      bool starts_factor = c == 'x' || c == '(' || c == '[' ||
                           std::isdigit(static_cast<unsigned char>(c));
      if (!star && !starts_factor)
        break;
      if (star && !starts_factor)
        fail("expected factor after '*'");
      prod->children.push_back(factor());
    }
    if (prod->children.size() == 1)
      return prod->children[0];
    return prod;
  }

  ExprPtr factor() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      eat('(');
      auto e = expr();
      if (!eat(')'))
        fail("expected ')'");
      return e;
    }
    if (c == '[') {
      eat('[');
      auto comm = std::make_shared<Expr>();
      comm->kind = Expr::Kind::Comm;
      comm->children.push_back(expr());
      while (eat(','))
        comm->children.push_back(expr());
      if (!eat(']'))
        fail("expected ']'");
      if (comm->children.size() < 2)
        fail("commutator needs at least two arguments");
      return comm;
    }
    if (c == 'x') {
      ++pos_;
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      if (pos_ == start)
        fail("expected variable index after 'x'");
      auto v = std::make_shared<Expr>();
      v->kind = Expr::Kind::Var;
      v->var = static_cast<uint32_t>(std::stoul(s_.substr(start, pos_ - start)));
      if (v->var == 0)
        fail("variable indices start at 1");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
        ++pos_;
      auto num = std::make_shared<Expr>();
      num->kind = Expr::Kind::Num;
      num->value = rat_from_string(s_.substr(start, pos_ - start));
      return num;
    }
    fail("unexpected character");
  }
};

} // namespace

ExprPtr parse_expr(const std::string &text) { return Parser(text).parse(); }

NcPoly parse_poly(const std::string &text) { return parse_expr(text)->to_poly(); }

} // namespace pilab
