#pragma once

// Operator expressions over literals, p, t, D, + - * / ^, parentheses and
// prod(n = a..b, body). Multiplication keeps the written order.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dcongr/dop.hpp"

namespace dcongr::expr {

struct Node {
    enum class Kind { Num, Sym, Var, Add, Sub, Neg, Mul, Div, Pow, Prod, BigO };
    Kind kind = Kind::Num;
    mpq_class value;         // Num
    std::string name;        // Sym ("p", "t", "D") or Var
    std::vector<std::shared_ptr<Node>> kids;
    long lo = 0, hi = 0;     // Prod bounds
    size_t offset = 0;       // byte offset in the source
};

using NodePtr = std::shared_ptr<Node>;

NodePtr parse(const std::string& text);
// Exact evaluation at level 0, then re-expression at the requested level.
DiffOp evaluate(const NodePtr& node, const Ctx& ctx, int level);
DiffOp parse_operator(const std::string& text, const Ctx& ctx, int level);
mpq_class parse_rational(const std::string& text);

// Canonical text: terms c*t^i*(p^k*D)^n ordered by (n, i).
std::string format(const DiffOp& h);
std::string format_scalar(const PadicScalar& c);
std::string format_series(const TateSeries& f);
// Rational a/b with |a|, |b| <= sqrt(m/2) and a/b = u mod m, if any.
bool rational_reconstruct(const mpz_class& u, const mpz_class& m, mpq_class& out);

}  // namespace dcongr::expr
