#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fitscore/error.hpp"
#include "fitscore/numeric.hpp"

namespace fitscore {

struct AggNode {
    enum class Kind { var, lit, add, sub, mul, div };
    Kind kind;
    std::size_t var = 0; // 0-based
    BigInt lit;
    std::shared_ptr<const AggNode> lhs, rhs;
};

// h : N^d -> Q^d'. Each output is an arithmetic expression over x1..xd.
struct AggregateExpr {
    std::size_t arity = 0;
    std::vector<std::shared_ptr<const AggNode>> outputs;
    std::vector<std::string> sources;

    std::size_t output_arity() const { return outputs.size(); }
};

namespace detail {

class AggParser {
public:
    AggParser(std::string_view text, std::size_t arity) : s_(text), arity_(arity) {}

    AggregateExpr parse() {
        AggregateExpr h;
        h.arity = arity_;
        skip();
        std::size_t save = pos_;
        if (peek() == '(') {
            ++pos_;
            auto first = expr();
            skip();
            if (peek() == ',') {
                push(h, save + 1, first);
                while (peek() == ',') {
                    ++pos_;
                    std::size_t start = pos_;
                    push(h, start, expr());
                    skip();
                }
                expect(')');
                skip();
                if (pos_ != s_.size())
                    fail("trailing input");
                return h;
            }
            pos_ = save;
        }
        push(h, save, expr());
        skip();
        if (pos_ != s_.size())
            fail("trailing input");
        return h;
    }

private:
    using Ptr = std::shared_ptr<const AggNode>;

    void push(AggregateExpr &h, std::size_t start, Ptr e) {
        std::string src(s_.substr(start, pos_ - start));
        auto b = src.find_first_not_of(" \t\r\n");
        auto t = src.find_last_not_of(" \t\r\n");
        h.sources.push_back(b == std::string::npos ? "" : src.substr(b, t - b + 1));
        h.outputs.push_back(std::move(e));
    }

    [[noreturn]] void fail(const std::string &msg) const {
        throw Error("aggregate: " + msg + " at column " + std::to_string(pos_ + 1));
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    void expect(char c) {
        skip();
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    static Ptr bin(AggNode::Kind k, Ptr l, Ptr r) {
        auto n = std::make_shared<AggNode>();
        n->kind = k;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    Ptr expr() {
        Ptr l = term();
        for (;;) {
            skip();
            char c = peek();
            if (c != '+' && c != '-')
                return l;
            ++pos_;
            l = bin(c == '+' ? AggNode::Kind::add : AggNode::Kind::sub, l, term());
        }
    }

    Ptr term() {
        Ptr l = atom();
        for (;;) {
            skip();
            char c = peek();
            if (c != '*' && c != '/')
                return l;
            ++pos_;
            l = bin(c == '*' ? AggNode::Kind::mul : AggNode::Kind::div, l, atom());
        }
    }

    Ptr atom() {
        skip();
        char c = peek();
        if (c == '(') {
            ++pos_;
            Ptr e = expr();
            expect(')');
            return e;
        }
        if (c == 'x') {
            std::size_t start = pos_++;
            std::size_t digits = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek())))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (pos_ == digits || std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
                fail("bad variable name '" + name + "'");
            std::size_t k = std::stoul(name.substr(1));
            if (k < 1 || k > arity_)
                throw Error("unknown variable " + name);
            auto n = std::make_shared<AggNode>();
            n->kind = AggNode::Kind::var;
            n->var = k - 1;
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek())))
                ++pos_;
            auto n = std::make_shared<AggNode>();
            n->kind = AggNode::Kind::lit;
            n->lit = BigInt(std::string(s_.substr(start, pos_ - start)));
            return n;
        }
        if (c == '\0')
            fail("unexpected end of expression");
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    std::size_t arity_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline AggregateExpr parse_aggregate(std::string_view text, std::size_t arity) {
    if (arity == 0)
        throw Error("aggregate over zero fitness components");
    return detail::AggParser(text, arity).parse();
}

// Evaluates one output over any field-like T. nullopt on division by zero.
template <class T>
std::optional<T> evaluate_node(const AggNode &n, const std::vector<T> &x) {
    using K = AggNode::Kind;
    switch (n.kind) {
    case K::var:
        return x[n.var];
    case K::lit:
        return T(n.lit);
    default:
        break;
    }
    auto l = evaluate_node(*n.lhs, x);
    auto r = evaluate_node(*n.rhs, x);
    if (!l || !r)
        return std::nullopt;
    switch (n.kind) {
    case K::add:
        return T(*l + *r);
    case K::sub:
        return T(*l - *r);
    case K::mul:
        return T(*l * *r);
    default:
        if (*r == 0)
            return std::nullopt;
        return T(*l / *r);
    }
}

// One entry per output; an empty optional marks an undefined component.
inline std::vector<std::optional<Rational>> evaluate_aggregate(const AggregateExpr &h,
                                                               const std::vector<Rational> &x) {
    if (x.size() != h.arity)
        throw Error("aggregate expects " + std::to_string(h.arity) + " inputs, got " +
                    std::to_string(x.size()));
    std::vector<std::optional<Rational>> out;
    out.reserve(h.outputs.size());
    for (const auto &e : h.outputs)
        out.push_back(evaluate_node(*e, x));
    return out;
}

inline std::vector<std::optional<Rational>> evaluate_aggregate(const AggregateExpr &h,
                                                               const std::vector<BigInt> &x) {
    return evaluate_aggregate(h, std::vector<Rational>(x.begin(), x.end()));
}

} // namespace fitscore
