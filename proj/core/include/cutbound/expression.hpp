#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cutbound {

/// Numeric coefficient that remembers whether it is an exact rational
/// (printed "22/7") or a plain real (printed in decimal). The two print
/// forms parse back to the same representation, which keeps expression
/// round-trips exact.
struct Coeff {
    bool rational = true;
    long num = 0;
    long den = 1;   // > 0, gcd(num, den) = 1
    double real = 0.0;

    static Coeff make_rational(long num, long den);
    static Coeff make_real(double v);
    static Coeff integer(long v) { return make_rational(v, 1); }

    double value() const { return rational ? static_cast<double>(num) / den : real; }
    bool operator==(const Coeff& o) const;
};

/// Best rational approximation p/q with 1 <= q <= max_den.
Coeff nearest_rational(double v, long max_den);

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
public:
    enum class Kind { Constant, Feature, Add, Mul, Pow, Sqrt, Floor };

    Kind kind;
    Coeff constant;             // Constant
    std::string feature;        // Feature
    std::vector<ExprPtr> kids;  // Add/Mul >= 2, Pow/Sqrt/Floor = 1

    explicit Expr(Kind k) : kind(k) {}
};

// Builders canonicalize on construction: adds flatten and order their terms,
// scalar factors fold to a single leading constant, unit factors and zero
// terms drop out. Subtraction is sugar for adding the negation.
namespace ex {
ExprPtr constant(Coeff c);
ExprPtr constant(double v);
ExprPtr rational(long num, long den);
ExprPtr feature(std::string name);
ExprPtr add(std::vector<ExprPtr> kids);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr negate(ExprPtr e);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr scaled(Coeff c, ExprPtr e);
ExprPtr pow2(ExprPtr e);
ExprPtr sqrt_of(ExprPtr e);
ExprPtr floor_of(ExprPtr e);
} // namespace ex

/// Canonical, parseable rendering; equal trees print equal strings.
std::string print(const ExprPtr& e);

/// Inverse of print on canonical strings; accepts the obvious grammar
/// (+, -, *, ^2, sqrt, floor, rationals "p/q", decimals, parentheses).
/// Throws ParseError.
ExprPtr parse_expression(const std::string& text);

/// nullopt when a referenced feature is undefined on the row or sqrt sees a
/// negative argument.
std::optional<double>
evaluate(const ExprPtr& e,
         const std::function<std::optional<double>(const std::string&)>& lookup);

/// Distinct referenced feature names, sorted.
std::vector<std::string> features_of(const ExprPtr& e);

/// Operator nesting depth; leaves count 0.
int depth(const ExprPtr& e);

bool equal(const ExprPtr& a, const ExprPtr& b);

} // namespace cutbound
