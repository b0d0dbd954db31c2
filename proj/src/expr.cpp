#include "dcongr/expr.hpp"

#include <cctype>
#include <sstream>

namespace dcongr::expr {

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr run() {
        NodePtr n = sum();
        skip();
        if (i_ != s_.size()) fail("unexpected character '" + std::string(1, s_[i_]) + "'");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::SyntaxError, "at byte " + std::to_string(i_) + ": " + msg);
    }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    NodePtr make(Node::Kind k, size_t off) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->offset = off;
        return n;
    }

    NodePtr binary(Node::Kind k, NodePtr a, NodePtr b, size_t off) {
        NodePtr n = make(k, off);
        n->kids = {std::move(a), std::move(b)};
        return n;
    }

    NodePtr sum() {
        NodePtr acc = neg();
        while (true) {
            skip();
            const size_t off = i_;
            if (eat('+')) acc = binary(Node::Kind::Add, acc, neg(), off);
            else if (eat('-')) acc = binary(Node::Kind::Sub, acc, neg(), off);
            else return acc;
        }
    }

    NodePtr neg() {
        skip();
        const size_t off = i_;
        if (eat('-')) {
            NodePtr n = make(Node::Kind::Neg, off);
            n->kids = {neg()};
            return n;
        }
        return product();
    }

    NodePtr product() {
        NodePtr acc = power();
        while (true) {
            skip();
            const size_t off = i_;
            if (eat('*')) acc = binary(Node::Kind::Mul, acc, power(), off);
            else if (eat('/')) acc = binary(Node::Kind::Div, acc, power(), off);
            else return acc;
        }
    }

    NodePtr power() {
        NodePtr base = atom();
        skip();
        const size_t off = i_;
        if (eat('^')) return binary(Node::Kind::Pow, base, atom(), off);
        return base;
    }

    long integer() {
        skip();
        const size_t start = i_;
        bool negative = false;
        if (i_ < s_.size() && s_[i_] == '-') {
            negative = true;
            ++i_;
        }
        const size_t digits = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ == digits) {
            i_ = start;
            fail("expected an integer");
        }
        const long v = std::stol(s_.substr(digits, i_ - digits));
        return negative ? -v : v;
    }

    NodePtr atom() {
        skip();
        const size_t off = i_;
        if (i_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            NodePtr n = make(Node::Kind::Num, off);
            n->value = mpq_class(mpz_class(s_.substr(start, i_ - start)));
            return n;
        }
        if (eat('(')) {
            NodePtr n = sum();
            expect(')');
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const size_t start = i_;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                ++i_;
            const std::string id = s_.substr(start, i_ - start);
            if (id == "prod") return prod(off);
            if (id == "O") {
                expect('(');
                NodePtr inner = sum();
                expect(')');
                NodePtr n = make(Node::Kind::BigO, off);
                n->kids = {inner};
                return n;
            }
            NodePtr n = make(id == "p" || id == "t" || id == "D" ? Node::Kind::Sym : Node::Kind::Var, off);
            n->name = id;
            return n;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    NodePtr prod(size_t off) {
        expect('(');
        skip();
        const size_t start = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        if (i_ == start) fail("expected a product index");
        NodePtr n = make(Node::Kind::Prod, off);
        n->name = s_.substr(start, i_ - start);
        if (n->name == "p" || n->name == "t" || n->name == "D") fail("reserved symbol as index");
        expect('=');
        n->lo = integer();
        expect('.');
        if (i_ >= s_.size() || s_[i_] != '.') fail("expected '..'");
        ++i_;
        n->hi = integer();
        expect(',');
        n->kids = {sum()};
        expect(')');
        return n;
    }

    const std::string& s_;
    size_t i_ = 0;
};

using Env = std::map<std::string, long>;

DiffOp eval(const NodePtr& n, const Ctx& ctx, const Env& env);

[[noreturn]] void eval_fail(const NodePtr& n, const std::string& msg) {
    throw Error(ErrorKind::SyntaxError, "at byte " + std::to_string(n->offset) + ": " + msg);
}

// Constant rational value of an operator, if it is one.
bool constant_value(const DiffOp& h, mpq_class& out) {
    if (h.is_zero()) {
        out = 0;
        return true;
    }
    if (h.order() != 0 || !h.is_exact() || h.coeff(0).degree() != 0) return false;
    out = h.coeff(0).rationals()[0];
    return true;
}

DiffOp eval(const NodePtr& n, const Ctx& ctx, const Env& env) {
    using K = Node::Kind;
    switch (n->kind) {
        case K::Num: return DiffOp::constant(ctx, 0, n->value);
        case K::BigO: return DiffOp(ctx, 0);
        case K::Sym:
            if (n->name == "p") return DiffOp::constant(ctx, 0, mpq_class(ctx->p()));
            if (n->name == "t") return DiffOp::function(TateSeries::monomial(ctx, 1, 1), 0);
            return DiffOp::monomial(ctx, 0, 1, 1);
        case K::Var: {
            auto it = env.find(n->name);
            if (it == env.end()) eval_fail(n, "unknown symbol '" + n->name + "'");
            return DiffOp::constant(ctx, 0, mpq_class(it->second));
        }
        case K::Add: return eval(n->kids[0], ctx, env) + eval(n->kids[1], ctx, env);
        case K::Sub: return eval(n->kids[0], ctx, env) - eval(n->kids[1], ctx, env);
        case K::Neg: return -eval(n->kids[0], ctx, env);
        case K::Mul: return op_mul(eval(n->kids[0], ctx, env), eval(n->kids[1], ctx, env));
        case K::Div: {
            mpq_class c;
            if (!constant_value(eval(n->kids[1], ctx, env), c))
                eval_fail(n, "divisor must be a constant");
            if (c == 0) throw Error(ErrorKind::DivisionByZero, "division by zero in expression");
            return eval(n->kids[0], ctx, env).scaled(PadicScalar::from_rational(ctx, mpq_class(1 / c)));
        }
        case K::Pow: {
            mpq_class e;
            if (!constant_value(eval(n->kids[1], ctx, env), e) || e.get_den() != 1 || e < 0)
                eval_fail(n, "exponent must be a non-negative integer");
            if (e > 4096) eval_fail(n, "exponent too large");
            const long ee = e.get_num().get_si();
            const DiffOp base = eval(n->kids[0], ctx, env);
            mpq_class c;
            if (constant_value(base, c)) {
                mpz_class num, den;
                mpz_pow_ui(num.get_mpz_t(), c.get_num_mpz_t(), static_cast<unsigned long>(ee));
                mpz_pow_ui(den.get_mpz_t(), c.get_den_mpz_t(), static_cast<unsigned long>(ee));
                return DiffOp::constant(ctx, 0, mpq_class(num, den));
            }
            DiffOp acc = DiffOp::constant(ctx, 0, 1);
            for (long i = 0; i < ee; ++i) acc = op_mul(acc, base);
            return acc;
        }
        case K::Prod: {
            if (n->hi - n->lo > 4096) eval_fail(n, "product range too long");
            DiffOp acc = DiffOp::constant(ctx, 0, 1);
            Env inner = env;
            for (long i = n->lo; i <= n->hi; ++i) {
                inner[n->name] = i;
                acc = op_mul(acc, eval(n->kids[0], ctx, inner));
            }
            return acc;
        }
    }
    return DiffOp(ctx, 0);
}

}  // namespace

NodePtr parse(const std::string& text) { return Parser(text).run(); }

DiffOp evaluate(const NodePtr& node, const Ctx& ctx, int level) {
    return rescale_level(eval(node, ctx, {}), level);
}

DiffOp parse_operator(const std::string& text, const Ctx& ctx, int level) {
    return evaluate(parse(text), ctx, level);
}

mpq_class parse_rational(const std::string& text) {
    const std::string s = text;
    try {
        mpq_class q(s);
        q.canonicalize();
        if (q.get_den() == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
        return q;
    } catch (const std::invalid_argument&) {
        throw Error(ErrorKind::SyntaxError, "not a rational number: '" + text + "'");
    }
}

bool rational_reconstruct(const mpz_class& u, const mpz_class& m, mpq_class& out) {
    mpz_class bound;
    mpz_class half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    mpz_class r0 = m, r1 = u % m;
    if (r1 < 0) r1 += m;
    mpz_class s0 = 0, s1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (s1 == 0 || abs(s1) > bound) return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), s1.get_mpz_t(), m.get_mpz_t());
    if (g != 1) return false;
    out = mpq_class(r1, s1);
    out.canonicalize();
    return true;
}

namespace {

// Exact rational for display; capped values via reconstruction.
bool display_value(const PadicScalar& c, mpq_class& out) {
    if (c.is_zero()) {
        out = 0;
        return true;
    }
    if (c.is_exact()) {
        out = c.exact_value();
        return true;
    }
    mpq_class u;
    if (!rational_reconstruct(c.unit(), c.ctx()->pow(c.rel_prec()), u)) return false;
    const long v = c.valuation();
    if (v >= 0) out = u * mpq_class(c.ctx()->power(v));
    else out = u / mpq_class(c.ctx()->power(-v));
    return true;
}

std::string rational_text(const mpq_class& q) { return q.get_str(); }

}  // namespace

std::string format_scalar(const PadicScalar& c) {
    mpq_class q;
    if (display_value(c, q)) return rational_text(q);
    std::ostringstream os;
    os << c.unit().get_str() << "*p^" << c.valuation();
    return os.str();
}

namespace {

struct Term {
    bool negative = false;
    std::string coef;  // magnitude, "" for 1
    std::string mono;  // monomial, "" for none
};

void emit(std::ostringstream& os, const std::vector<Term>& terms) {
    bool first = true;
    for (const auto& t : terms) {
        if (first) {
            if (t.negative) os << "-";
        } else {
            os << (t.negative ? " - " : " + ");
        }
        first = false;
        if (t.mono.empty()) os << (t.coef.empty() ? "1" : t.coef);
        else if (t.coef.empty()) os << t.mono;
        else os << t.coef << "*" << t.mono;
    }
    if (first) os << "0";
}

Term make_term(const PadicScalar& c, const std::string& mono) {
    Term t;
    t.mono = mono;
    mpq_class q;
    if (display_value(c, q)) {
        t.negative = q < 0;
        const mpq_class a = abs(q);
        t.coef = a == 1 ? "" : a.get_str();
        if (!mono.empty() && a.get_den() != 1) t.coef = "(" + t.coef + ")";
    } else {
        t.coef = "(" + format_scalar(c) + ")";
    }
    return t;
}

std::string t_power(int i) {
    if (i == 0) return "";
    return i == 1 ? "t" : "t^" + std::to_string(i);
}

std::string d_power(int level, int n) {
    if (n == 0) return "";
    std::string base;
    if (level == 0) base = "D";
    else if (level == 1) base = "(p*D)";
    else base = "(p^" + std::to_string(level) + "*D)";
    return n == 1 ? base : base + "^" + std::to_string(n);
}

std::string join(const std::string& a, const std::string& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return a + "*" + b;
}

}  // namespace

std::string format_series(const TateSeries& f) {
    std::vector<Term> terms;
    for (int i = 0; i <= f.degree(); ++i) {
        const PadicScalar c = f.coeff(i);
        if (!c.is_zero()) terms.push_back(make_term(c, t_power(i)));
    }
    std::ostringstream os;
    emit(os, terms);
    if (!f.is_exact() && f.abs_precision() != kInfValuation)
        os << " + O(p^" << f.abs_precision() << ")";
    return os.str();
}

std::string format(const DiffOp& h) {
    std::vector<Term> terms;
    long floor = kInfValuation;
    for (int n = 0; n <= h.order(); ++n) {
        const TateSeries& f = h.coeffs()[static_cast<size_t>(n)];
        if (!f.is_exact()) floor = std::min(floor, f.abs_precision());
        for (int i = 0; i <= f.degree(); ++i) {
            const PadicScalar c = f.coeff(i);
            if (!c.is_zero()) terms.push_back(make_term(c, join(t_power(i), d_power(h.level(), n))));
        }
    }
    std::ostringstream os;
    emit(os, terms);
    if (floor != kInfValuation) os << " + O(p^" << floor << ")";
    return os.str();
}

}  // namespace dcongr::expr
