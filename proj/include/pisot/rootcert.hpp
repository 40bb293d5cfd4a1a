// Exact and certified root location for integer polynomials.

#pragma once

#include "pisot/polycore.hpp"

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pisot {

/// Interval with exact rational endpoints and open/closed flags.
struct RationalInterval {
    Rational lo;
    Rational hi;
    bool lo_open = true;
    bool hi_open = true;

    static RationalInterval open(const Rational& a, const Rational& b);
    static RationalInterval closed(const Rational& a, const Rational& b);

    /// Throws std::invalid_argument when lo > hi or a degenerate interval
    /// has an open endpoint.
    void validate() const;
    bool contains(const Rational& x) const;
    bool is_empty() const;
    std::string to_string() const;

    friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
};

/// Disk (or real segment when is_real) certified to contain exactly one root.
/// Center coordinates and radius are dyadic rationals.
struct RootEnclosure {
    Rational re;
    Rational im;
    Rational radius;
    bool is_real = false;

    std::complex<long double> approx() const;
};

/// Certified minimal polynomial of a Pisot number and an enclosure of it.
struct PisotRecord {
    IntPoly poly;
    RootEnclosure theta;
    int degree = 0;

    /// "<degree> <coeffs descending> | <theta to 12 places>"
    std::string to_line() const;
    friend bool operator==(const PisotRecord& a, const PisotRecord& b) { return a.poly == b.poly; }
};

/// Parses a PisotRecord line. Only the coefficients are normative; the
/// dominant root is re-certified from them.
PisotRecord parse_record_line(std::string_view line);

bool record_less(const PisotRecord& a, const PisotRecord& b);

/// Signed remainder (Sturm) sequence of a squarefree polynomial.
class SturmSequence {
public:
    explicit SturmSequence(const IntPoly& p);
    /// Sign variations at x, zeros dropped.
    int variations_at(const Rational& x) const;
    int variations_at_pos_inf() const;
    int variations_at_neg_inf() const;
    /// Number of distinct real roots in (a, b]; valid even when a or b is a root.
    int roots_in_half_open(const Rational& a, const Rational& b) const;

private:
    std::vector<IntPoly> seq_;
};

/// Exact number of distinct real roots of a squarefree p inside iv.
int sturm_count(const IntPoly& p, const RationalInterval& iv);
/// Distinct real roots in (a, +inf), or [a, +inf) when closed.
int sturm_count_above(const IntPoly& p, const Rational& a, bool closed = false);
int real_root_count(const IntPoly& p);

/// Rational bound B with every root of p strictly inside |z| < B.
Rational cauchy_bound(const IntPoly& p);

/// Schur-Cohn recursion in exact arithmetic. Returns nullopt on a degenerate
/// step (equal moduli of the extreme coefficients). A full non-degenerate run
/// also proves that p has no root on the unit circle.
std::optional<int> schur_cohn_count(const IntPoly& p);

/// Roots of modulus < 1 counted with multiplicity. Requires that p has no
/// root on the unit circle; throws std::domain_error otherwise.
int count_in_open_unit_disk(const IntPoly& p);

/// Exact test for a root of modulus one. Throws when p(0) = 0.
bool has_root_on_unit_circle(const IntPoly& p);

/// Enclosures of all roots of a squarefree polynomial, each of radius <= eps,
/// pairwise disjoint, real roots flagged. Ordered by real part descending,
/// then imaginary part descending. Throws on non-squarefree input.
std::vector<RootEnclosure> certified_roots(const IntPoly& p, const Rational& eps);

/// Dyadic 2^-bits.
Rational dyadic(long bits);

/// Returns a record iff p is the minimal polynomial of a Pisot number in iv.
/// Degree 1: x - n is accepted for integers n >= 2. Throws on non-monic input.
std::optional<PisotRecord> is_pisot(const IntPoly& p, const RationalInterval& iv);

/// Shrinks [lo, hi] around the unique root of p in it by bisection until the
/// width is at most `width`. p must change sign strictly across the bracket.
void refine_real_root(const IntPoly& p, Rational& lo, Rational& hi, const Rational& width);

/// Sign of theta - q for the dominant root of a record (exact).
int compare_theta(const PisotRecord& rec, const Rational& q);

}  // namespace pisot
