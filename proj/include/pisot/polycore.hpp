// Exact arithmetic on dense integer polynomials.
//
// Everything here works over Z[x] with GMP integers; "over Q" operations
// (gcd, divisibility, squarefree parts) ignore integer content and return
// primitive polynomials with positive leading coefficient.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pisot {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense polynomial with arbitrary-precision integer coefficients.
/// Index i holds the coefficient of x^i. The zero polynomial has no
/// coefficients; no other value has a zero leading coefficient.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> ascending);

    /// Coefficients listed from the highest power down, e.g. {1, 0, -1, -1}
    /// is x^3 - x - 1.
    static IntPoly from_descending(std::initializer_list<long> coeffs);
    static IntPoly from_descending(std::span<const Integer> coeffs);
    static IntPoly monomial(const Integer& c, int k);
    static IntPoly constant(const Integer& c) { return monomial(c, 0); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const Integer& lead() const;
    const Integer& operator[](int i) const;
    std::span<const Integer> coeffs() const { return c_; }
    std::vector<Integer> descending() const;

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    Integer content() const;
    /// Divided by content, sign fixed so the leading coefficient is positive.
    IntPoly primitive() const;

    IntPoly operator-() const;
    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const Integer& s, const IntPoly& a);
    friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

    /// a(-x)
    IntPoly negate_arg() const;
    /// x^d a(1/x); on polynomials with nonzero constant term this reverses the coefficients.
    IntPoly reciprocal() const;
    /// 2^d a(x/2)
    IntPoly scale_half() const;
    /// a(x + c)
    IntPoly shift(const Integer& c) const;
    IntPoly derivative() const;
    /// Multiply by x^k.
    IntPoly shift_up(int k) const;

    Integer eval(const Integer& x) const;
    Rational eval(const Rational& x) const;
    /// Sign of a(x), computed without forming the rational value.
    int sign_at(const Rational& x) const;

    /// Human-readable form, e.g. "x^4 - 2*x^3 + x - 1".
    std::string to_string() const;

    /// Lexicographic comparison of descending coefficient sequences, shorter
    /// (lower degree) first.
    friend bool coeff_less(const IntPoly& a, const IntPoly& b);

private:
    void canonicalize();
    std::vector<Integer> c_;
};

/// One entry of a squarefree decomposition.
struct SquarefreePart {
    IntPoly factor;
    int multiplicity = 0;
    friend bool operator==(const SquarefreePart&, const SquarefreePart&) = default;
};

/// lc(b)^k * a = q * b + r with deg r < deg b. `scale` is lc(b)^k.
struct PseudoDivision {
    IntPoly quotient;
    IntPoly remainder;
    Integer scale;
};

/// Pseudo-division using only as many factors of lc(b) as needed.
PseudoDivision pseudo_divide(const IntPoly& a, const IntPoly& b);

/// Full pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

/// Primitive gcd over Q with positive leading coefficient. A constant
/// result (the polynomial 1) means coprime. Throws when both are zero.
IntPoly gcd_primitive(const IntPoly& a, const IntPoly& b);

/// True iff a divides b in Q[x]. Throws when a is zero.
bool divides_in_Q(const IntPoly& a, const IntPoly& b);

/// b / a over Q, returned primitive. Throws if a does not divide b.
IntPoly quotient_in_Q(const IntPoly& b, const IntPoly& a);

/// Exact quotient in Z[x]; throws when the division is not exact over Z.
IntPoly exact_div(const IntPoly& b, const IntPoly& a);

/// Squarefree decomposition over Q. Parts are primitive with positive
/// leading coefficient, pairwise coprime, listed by increasing multiplicity.
std::vector<SquarefreePart> squarefree_decomposition(const IntPoly& a);

/// Product of the distinct irreducible factors (primitive).
IntPoly squarefree_part(const IntPoly& a);

bool is_squarefree(const IntPoly& a);

/// Largest multiplicity among parts whose factor is not a power of x
/// (0 when every part is x or a constant).
int max_multiplicity_excluding_x(std::span<const SquarefreePart> parts);
int max_multiplicity(std::span<const SquarefreePart> parts);

/// Univariate resultant via the subresultant remainder sequence.
Integer resultant(const IntPoly& a, const IntPoly& b);

/// g(x) = Res_y[f(x-y), f(y)] and h(x) = Res_y[f(x+y), f(y)].
struct RelationResultants {
    IntPoly g;
    IntPoly h;
};

/// Evaluation at d^2 + 1 consecutive integers, exact interpolation.
RelationResultants relation_resultants(const IntPoly& f);

/// Same values through fraction-free elimination of the bivariate
/// Sylvester matrix. Slow; used to cross-check the interpolation route.
RelationResultants relation_resultants_sylvester(const IntPoly& f);

/// Parse one polynomial line: descending decimal coefficients separated by
/// spaces. Rejects non-integer tokens and a zero leading coefficient.
IntPoly parse_poly(std::string_view line);

/// Parse with an explicit expected degree (token count must be degree + 1).
IntPoly parse_poly(std::string_view line, int expected_degree);

/// Inverse of parse_poly: "1 0 -1 -1" for x^3 - x - 1.
std::string format_poly(const IntPoly& p);

/// Strict order on coefficient sequences: degree first, then descending
/// coefficients lexicographically.
bool coeff_less(const IntPoly& a, const IntPoly& b);

}  // namespace pisot
