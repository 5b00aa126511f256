#include "cutbound/expression.hpp"

#include "cutbound/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <set>

namespace cutbound {

Coeff Coeff::make_rational(long num, long den) {
    if (den == 0) throw InvalidParamsError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long g = std::gcd(std::abs(num), den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    Coeff c;
    c.rational = true;
    c.num = num;
    c.den = den;
    return c;
}

Coeff Coeff::make_real(double v) {
    Coeff c;
    c.rational = false;
    c.real = v;
    return c;
}

bool Coeff::operator==(const Coeff& o) const {
    if (rational != o.rational) return false;
    return rational ? (num == o.num && den == o.den) : real == o.real;
}

Coeff nearest_rational(double v, long max_den) {
    long best_num = std::lround(v), best_den = 1;
    double best_err = std::abs(v - static_cast<double>(best_num));
    for (long q = 2; q <= max_den; ++q) {
        long p = std::lround(v * static_cast<double>(q));
        double err = std::abs(v - static_cast<double>(p) / static_cast<double>(q));
        if (err < best_err) {
            best_err = err;
            best_num = p;
            best_den = q;
        }
    }
    return Coeff::make_rational(best_num, best_den);
}

namespace ex {

ExprPtr constant(Coeff c) {
    auto e = std::make_shared<Expr>(Expr::Kind::Constant);
    e->constant = c;
    return e;
}

ExprPtr constant(double v) { return constant(Coeff::make_real(v)); }

ExprPtr rational(long num, long den) { return constant(Coeff::make_rational(num, den)); }

ExprPtr feature(std::string name) {
    auto e = std::make_shared<Expr>(Expr::Kind::Feature);
    e->feature = std::move(name);
    return e;
}

namespace {

bool is_zero(const Coeff& c) { return c.rational ? c.num == 0 : c.real == 0.0; }
bool is_one(const Coeff& c) { return c.rational ? (c.num == 1 && c.den == 1) : c.real == 1.0; }

Coeff coeff_mul(const Coeff& a, const Coeff& b) {
    if (a.rational && b.rational) return Coeff::make_rational(a.num * b.num, a.den * b.den);
    return Coeff::make_real(a.value() * b.value());
}

Coeff coeff_negate(const Coeff& c) {
    return c.rational ? Coeff::make_rational(-c.num, c.den) : Coeff::make_real(-c.real);
}

int term_rank(const ExprPtr& e);

// ordering key that ignores the scalar factor, so 2*x and 0.5*x sort together
const ExprPtr& term_body(const ExprPtr& e) {
    if (e->kind == Expr::Kind::Mul && e->kids.size() == 2 &&
        e->kids[0]->kind == Expr::Kind::Constant)
        return e->kids[1];
    return e;
}

int term_rank(const ExprPtr& e) {
    switch (term_body(e)->kind) {
    case Expr::Kind::Pow: return 0;
    case Expr::Kind::Feature: return 1;
    case Expr::Kind::Mul: return 2;
    case Expr::Kind::Sqrt: return 3;
    case Expr::Kind::Floor: return 4;
    case Expr::Kind::Add: return 5;
    case Expr::Kind::Constant: return 9;
    }
    return 9;
}

} // namespace

ExprPtr add(std::vector<ExprPtr> kids) {
    std::vector<ExprPtr> flat;
    for (auto& k : kids) {
        if (k->kind == Expr::Kind::Add)
            flat.insert(flat.end(), k->kids.begin(), k->kids.end());
        else
            flat.push_back(std::move(k));
    }
    std::erase_if(flat, [](const ExprPtr& e) {
        return e->kind == Expr::Kind::Constant && is_zero(e->constant);
    });
    if (flat.empty()) return constant(Coeff::integer(0));
    if (flat.size() == 1) return flat[0];
    std::stable_sort(flat.begin(), flat.end(), [](const ExprPtr& a, const ExprPtr& b) {
        int ra = term_rank(a), rb = term_rank(b);
        if (ra != rb) return ra < rb;
        std::string ka = print(term_body(a)), kb = print(term_body(b));
        if (ka != kb) return ka < kb;
        return print(a) < print(b);
    });
    auto e = std::make_shared<Expr>(Expr::Kind::Add);
    e->kids = std::move(flat);
    return e;
}

ExprPtr add(ExprPtr a, ExprPtr b) { return add(std::vector<ExprPtr>{std::move(a), std::move(b)}); }

ExprPtr negate(ExprPtr e) {
    switch (e->kind) {
    case Expr::Kind::Constant: return constant(coeff_negate(e->constant));
    case Expr::Kind::Mul:
        if (e->kids[0]->kind == Expr::Kind::Constant) {
            auto rest = e->kids;
            rest.erase(rest.begin());
            ExprPtr body = rest.size() == 1 ? rest[0] : [&] {
                auto m = std::make_shared<Expr>(Expr::Kind::Mul);
                m->kids = rest;
                return ExprPtr(m);
            }();
            return scaled(coeff_negate(e->kids[0]->constant), body);
        }
        return scaled(Coeff::integer(-1), std::move(e));
    case Expr::Kind::Add: {
        std::vector<ExprPtr> kids;
        for (auto& k : e->kids) kids.push_back(negate(k));
        return add(std::move(kids));
    }
    default: return scaled(Coeff::integer(-1), std::move(e));
    }
}

ExprPtr sub(ExprPtr a, ExprPtr b) { return add(std::move(a), negate(std::move(b))); }

ExprPtr scaled(Coeff c, ExprPtr e) {
    if (is_zero(c)) return constant(Coeff::integer(0));
    if (e->kind == Expr::Kind::Constant) return constant(coeff_mul(c, e->constant));
    if (e->kind == Expr::Kind::Mul && e->kids[0]->kind == Expr::Kind::Constant) {
        Coeff folded = coeff_mul(c, e->kids[0]->constant);
        std::vector<ExprPtr> rest(e->kids.begin() + 1, e->kids.end());
        ExprPtr body = rest.size() == 1 ? rest[0] : [&] {
            auto m = std::make_shared<Expr>(Expr::Kind::Mul);
            m->kids = std::move(rest);
            return ExprPtr(m);
        }();
        return scaled(folded, body);
    }
    if (is_one(c)) return e;
    auto m = std::make_shared<Expr>(Expr::Kind::Mul);
    m->kids = {constant(c), std::move(e)};
    return m;
}

ExprPtr mul(ExprPtr a, ExprPtr b) {
    if (a->kind == Expr::Kind::Constant) return scaled(a->constant, std::move(b));
    if (b->kind == Expr::Kind::Constant) return scaled(b->constant, std::move(a));
    auto m = std::make_shared<Expr>(Expr::Kind::Mul);
    m->kids = {std::move(a), std::move(b)};
    return m;
}

ExprPtr pow2(ExprPtr e) {
    auto p = std::make_shared<Expr>(Expr::Kind::Pow);
    p->kids = {std::move(e)};
    return p;
}

ExprPtr sqrt_of(ExprPtr e) {
    auto s = std::make_shared<Expr>(Expr::Kind::Sqrt);
    s->kids = {std::move(e)};
    return s;
}

ExprPtr floor_of(ExprPtr e) {
    auto f = std::make_shared<Expr>(Expr::Kind::Floor);
    f->kids = {std::move(e)};
    return f;
}

} // namespace ex

namespace {

std::string format_shortest(double v) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    std::string s = buf;
    // keep reals visibly real so they parse back as reals, not integers
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

// magnitude string; sign handled by the caller
std::string coeff_atom(const Coeff& c) {
    if (c.rational) {
        std::string s = std::to_string(std::abs(c.num));
        if (c.den != 1) return "(" + s + "/" + std::to_string(c.den) + ")";
        return s;
    }
    return format_shortest(std::abs(c.real));
}

bool coeff_negative(const Coeff& c) { return c.rational ? c.num < 0 : c.real < 0.0; }

std::string print_atom(const ExprPtr& e);

// splits e into (negative?, magnitude string) for use inside sums
std::pair<bool, std::string> print_term(const ExprPtr& e) {
    switch (e->kind) {
    case Expr::Kind::Constant:
        return {coeff_negative(e->constant), coeff_atom(e->constant)};
    case Expr::Kind::Mul: {
        bool neg = false;
        std::string out;
        std::size_t start = 0;
        if (e->kids[0]->kind == Expr::Kind::Constant) {
            const Coeff& c = e->kids[0]->constant;
            neg = coeff_negative(c);
            out = coeff_atom(c);
            start = 1;
        }
        for (std::size_t i = start; i < e->kids.size(); ++i) {
            if (!out.empty()) out += "*";
            out += print_atom(e->kids[i]);
        }
        return {neg, out};
    }
    default: return {false, print_atom(e)};
    }
}

std::string print_sum(const ExprPtr& e) {
    if (e->kind != Expr::Kind::Add) {
        auto [neg, mag] = print_term(e);
        return neg ? "-" + mag : mag;
    }
    std::string out;
    for (std::size_t i = 0; i < e->kids.size(); ++i) {
        auto [neg, mag] = print_term(e->kids[i]);
        if (i == 0)
            out = neg ? "-" + mag : mag;
        else
            out += (neg ? " - " : " + ") + mag;
    }
    return out;
}

std::string print_atom(const ExprPtr& e) {
    switch (e->kind) {
    case Expr::Kind::Constant: {
        auto [neg, mag] = print_term(e);
        return neg ? "(-" + mag + ")" : mag;
    }
    case Expr::Kind::Feature: return e->feature;
    case Expr::Kind::Pow: return print_atom(e->kids[0]) + "^2";
    case Expr::Kind::Sqrt: return "sqrt(" + print_sum(e->kids[0]) + ")";
    case Expr::Kind::Floor: return "floor(" + print_sum(e->kids[0]) + ")";
    case Expr::Kind::Add: return "(" + print_sum(e) + ")";
    case Expr::Kind::Mul: {
        auto [neg, mag] = print_term(e);
        return neg ? "(-" + mag + ")" : mag;
    }
    }
    return {};
}

} // namespace

std::string print(const ExprPtr& e) { return print_sum(e); }

namespace {

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_space();
        return pos >= text.size();
    }
    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("expression '" + text + "': " + what + " at offset " +
                             std::to_string(pos),
                         1);
    }
};

struct Parser {
    Lexer lex;

    ExprPtr parse() {
        ExprPtr e = sum();
        if (!lex.done()) lex.fail("trailing input");
        return e;
    }

    ExprPtr sum() {
        bool neg = lex.eat('-');
        ExprPtr first = product();
        if (neg) first = ex::negate(first);
        std::vector<ExprPtr> terms{first};
        for (;;) {
            if (lex.eat('+'))
                terms.push_back(product());
            else if (lex.eat('-'))
                terms.push_back(ex::negate(product()));
            else
                break;
        }
        return terms.size() == 1 ? terms[0] : ex::add(std::move(terms));
    }

    ExprPtr product() {
        ExprPtr e = postfix();
        while (lex.eat('*')) e = ex::mul(e, postfix());
        return e;
    }

    ExprPtr postfix() {
        ExprPtr e = atom();
        if (lex.eat('^')) {
            char c = lex.peek();
            if (c == '1') {
                ++lex.pos;
                return e;
            }
            if (c == '2') {
                ++lex.pos;
                return ex::pow2(e);
            }
            lex.fail("exponent must be 1 or 2");
        }
        return e;
    }

    ExprPtr atom() {
        char c = lex.peek();
        if (c == '(') {
            ++lex.pos;
            ExprPtr e = sum();
            if (!lex.eat(')')) lex.fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = identifier();
            if (name == "sqrt" || name == "floor") {
                if (!lex.eat('(')) lex.fail("expected '(' after " + name);
                ExprPtr inner = sum();
                if (!lex.eat(')')) lex.fail("expected ')'");
                return name == "sqrt" ? ex::sqrt_of(inner) : ex::floor_of(inner);
            }
            return ex::feature(std::move(name));
        }
        lex.fail("unexpected character");
    }

    std::string identifier() {
        std::size_t start = lex.pos;
        while (lex.pos < lex.text.size() &&
               (std::isalnum(static_cast<unsigned char>(lex.text[lex.pos])) ||
                lex.text[lex.pos] == '_'))
            ++lex.pos;
        return lex.text.substr(start, lex.pos - start);
    }

    ExprPtr number() {
        std::size_t start = lex.pos;
        auto digits = [&] {
            while (lex.pos < lex.text.size() &&
                   std::isdigit(static_cast<unsigned char>(lex.text[lex.pos])))
                ++lex.pos;
        };
        digits();
        bool has_dot = false, has_exp = false;
        if (lex.pos < lex.text.size() && lex.text[lex.pos] == '.') {
            has_dot = true;
            ++lex.pos;
            digits();
        }
        if (lex.pos < lex.text.size() &&
            (lex.text[lex.pos] == 'e' || lex.text[lex.pos] == 'E')) {
            std::size_t mark = lex.pos;
            ++lex.pos;
            if (lex.pos < lex.text.size() &&
                (lex.text[lex.pos] == '+' || lex.text[lex.pos] == '-'))
                ++lex.pos;
            if (lex.pos < lex.text.size() &&
                std::isdigit(static_cast<unsigned char>(lex.text[lex.pos]))) {
                has_exp = true;
                digits();
            } else {
                lex.pos = mark;
            }
        }
        std::string tok = lex.text.substr(start, lex.pos - start);
        if (tok.empty() || tok == ".") lex.fail("malformed number");
        // integer immediately followed by /integer is a rational literal
        if (!has_dot && !has_exp && lex.pos < lex.text.size() && lex.text[lex.pos] == '/') {
            std::size_t mark = lex.pos;
            ++lex.pos;
            std::size_t dstart = lex.pos;
            digits();
            if (lex.pos > dstart) {
                long num = std::strtol(tok.c_str(), nullptr, 10);
                long den = std::strtol(lex.text.substr(dstart, lex.pos - dstart).c_str(),
                                       nullptr, 10);
                if (den == 0) lex.fail("zero denominator");
                return ex::rational(num, den);
            }
            lex.pos = mark;
        }
        if (!has_dot && !has_exp)
            return ex::rational(std::strtol(tok.c_str(), nullptr, 10), 1);
        return ex::constant(std::strtod(tok.c_str(), nullptr));
    }
};

} // namespace

ExprPtr parse_expression(const std::string& text) {
    Parser p{Lexer{text}};
    return p.parse();
}

std::optional<double>
evaluate(const ExprPtr& e,
         const std::function<std::optional<double>(const std::string&)>& lookup) {
    switch (e->kind) {
    case Expr::Kind::Constant: return e->constant.value();
    case Expr::Kind::Feature: return lookup(e->feature);
    case Expr::Kind::Add: {
        double sum = 0.0;
        for (auto& k : e->kids) {
            auto v = evaluate(k, lookup);
            if (!v) return std::nullopt;
            sum += *v;
        }
        return sum;
    }
    case Expr::Kind::Mul: {
        double prod = 1.0;
        for (auto& k : e->kids) {
            auto v = evaluate(k, lookup);
            if (!v) return std::nullopt;
            prod *= *v;
        }
        return prod;
    }
    case Expr::Kind::Pow: {
        auto v = evaluate(e->kids[0], lookup);
        if (!v) return std::nullopt;
        return *v * *v;
    }
    case Expr::Kind::Sqrt: {
        auto v = evaluate(e->kids[0], lookup);
        if (!v || *v < 0.0) return std::nullopt;
        return std::sqrt(*v);
    }
    case Expr::Kind::Floor: {
        auto v = evaluate(e->kids[0], lookup);
        if (!v) return std::nullopt;
        return std::floor(*v);
    }
    }
    return std::nullopt;
}

namespace {

void collect_features(const ExprPtr& e, std::set<std::string>& out) {
    if (e->kind == Expr::Kind::Feature) out.insert(e->feature);
    for (auto& k : e->kids) collect_features(k, out);
}

} // namespace

std::vector<std::string> features_of(const ExprPtr& e) {
    std::set<std::string> s;
    collect_features(e, s);
    return {s.begin(), s.end()};
}

int depth(const ExprPtr& e) {
    int d = 0;
    for (auto& k : e->kids) d = std::max(d, depth(k));
    return e->kids.empty() ? 0 : 1 + d;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Expr::Kind::Constant: return a->constant == b->constant;
    case Expr::Kind::Feature: return a->feature == b->feature;
    default:
        if (a->kids.size() != b->kids.size()) return false;
        for (std::size_t i = 0; i < a->kids.size(); ++i)
            if (!equal(a->kids[i], b->kids[i])) return false;
        return true;
    }
}

} // namespace cutbound
