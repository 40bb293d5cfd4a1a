#include "pisot/polycore.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace pisot {

namespace {

const Integer kZero = 0;

bool is_odd(int k) { return (k & 1) != 0; }

Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

}  // namespace

IntPoly::IntPoly(std::vector<Integer> ascending) : c_(std::move(ascending)) { canonicalize(); }

void IntPoly::canonicalize() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

IntPoly IntPoly::from_descending(std::initializer_list<long> coeffs) {
    std::vector<Integer> c(coeffs.begin(), coeffs.end());
    std::reverse(c.begin(), c.end());
    return IntPoly(std::move(c));
}

IntPoly IntPoly::from_descending(std::span<const Integer> coeffs) {
    std::vector<Integer> c(coeffs.rbegin(), coeffs.rend());
    return IntPoly(std::move(c));
}

IntPoly IntPoly::monomial(const Integer& c, int k) {
    if (sgn(c) == 0) return {};
    std::vector<Integer> v(static_cast<size_t>(k) + 1);
    v.back() = c;
    return IntPoly(std::move(v));
}

const Integer& IntPoly::lead() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
}

const Integer& IntPoly::operator[](int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<size_t>(i)];
}

std::vector<Integer> IntPoly::descending() const { return {c_.rbegin(), c_.rend()}; }

Integer IntPoly::content() const {
    Integer g = 0;
    for (const auto& c : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive() const {
    if (c_.empty()) return {};
    Integer g = content();
    if (sgn(c_.back()) < 0) g = -g;
    if (g == 1) return *this;
    IntPoly r = *this;
    for (auto& c : r.c_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return r;
}

IntPoly IntPoly::operator-() const {
    IntPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            mpz_addmul(c[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
    return IntPoly(std::move(c));
}

IntPoly operator*(const Integer& s, const IntPoly& a) {
    if (sgn(s) == 0) return {};
    IntPoly r = a;
    for (auto& c : r.c_) c *= s;
    return r;
}

IntPoly IntPoly::negate_arg() const {
    IntPoly r = *this;
    for (size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
    return r;
}

IntPoly IntPoly::reciprocal() const {
    std::vector<Integer> c(c_.rbegin(), c_.rend());
    return IntPoly(std::move(c));
}

IntPoly IntPoly::scale_half() const {
    IntPoly r = *this;
    const int d = degree();
    for (int i = 0; i < d; ++i)
        mpz_mul_2exp(r.c_[i].get_mpz_t(), r.c_[i].get_mpz_t(), static_cast<mp_bitcnt_t>(d - i));
    return r;
}

IntPoly IntPoly::shift(const Integer& c) const {
    // Horner with (x + c) as the variable; in-place Taylor shift.
    std::vector<Integer> r = c_;
    const int n = static_cast<int>(r.size());
    if (sgn(c) == 0) return *this;
    for (int i = 0; i < n - 1; ++i)
        for (int j = n - 2; j >= i; --j) mpz_addmul(r[j].get_mpz_t(), r[j + 1].get_mpz_t(), c.get_mpz_t());
    return IntPoly(std::move(r));
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Integer> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(r));
}

IntPoly IntPoly::shift_up(int k) const {
    if (c_.empty() || k == 0) return *this;
    std::vector<Integer> r(static_cast<size_t>(k));
    r.insert(r.end(), c_.begin(), c_.end());
    return IntPoly(std::move(r));
}

Integer IntPoly::eval(const Integer& x) const {
    Integer acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

namespace {

// sum c_k n^k m^(d-k), the value at n/m scaled by m^d.
Integer homogeneous_eval(std::span<const Integer> c, const Integer& n, const Integer& m) {
    if (c.empty()) return 0;
    Integer acc = c.back();
    Integer mpow = 1;
    for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
        mpow *= m;
        acc *= n;
        mpz_addmul(acc.get_mpz_t(), c[k].get_mpz_t(), mpow.get_mpz_t());
    }
    return acc;
}

}  // namespace

Rational IntPoly::eval(const Rational& x) const {
    if (c_.empty()) return 0;
    Integer num = homogeneous_eval(c_, x.get_num(), x.get_den());
    Integer den;
    mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(degree()));
    Rational r(num, den);
    r.canonicalize();
    return r;
}

int IntPoly::sign_at(const Rational& x) const {
    return sgn(homogeneous_eval(c_, x.get_num(), x.get_den()));
}

std::string IntPoly::to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const Integer& c = c_[static_cast<size_t>(k)];
        if (sgn(c) == 0) continue;
        Integer a = abs(c);
        if (out.empty()) {
            if (sgn(c) < 0) out += "-";
        } else {
            out += sgn(c) < 0 ? " - " : " + ";
        }
        if (k == 0 || a != 1) {
            out += a.get_str();
            if (k > 0) out += "*";
        }
        if (k >= 1) out += "x";
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
}

bool coeff_less(const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int k = a.degree(); k >= 0; --k) {
        int c = cmp(a[k], b[k]);
        if (c != 0) return c < 0;
    }
    return false;
}

PseudoDivision pseudo_divide(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::domain_error("pseudo-division by the zero polynomial");
    const int db = b.degree();
    const Integer& lb = b.lead();
    std::vector<Integer> r(a.coeffs().begin(), a.coeffs().end());
    int dr = a.degree();
    std::vector<Integer> q(static_cast<size_t>(std::max(0, dr - db + 1)));
    Integer scale = 1;
    const bool unit = (lb == 1);
    while (dr >= db && dr >= 0) {
        Integer t = r[dr];
        const int s = dr - db;
        if (!unit) {
            for (auto& x : q) x *= lb;
            for (int i = 0; i < dr; ++i) r[i] *= lb;
            scale *= lb;
        }
        q[s] += t;
        for (int i = 0; i < db; ++i) mpz_submul(r[s + i].get_mpz_t(), t.get_mpz_t(), b[i].get_mpz_t());
        r[dr] = 0;
        --dr;
        while (dr >= 0 && sgn(r[dr]) == 0) --dr;
    }
    r.resize(static_cast<size_t>(dr + 1));
    return {IntPoly(std::move(q)), IntPoly(std::move(r)), scale};
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
    const int delta = a.degree() - b.degree();
    if (delta < 0) return a;
    PseudoDivision pd = pseudo_divide(a, b);
    // pseudo_divide may have used fewer than delta+1 factors of lc(b).
    Integer want = ipow(b.lead(), static_cast<unsigned long>(delta + 1));
    Integer factor;
    mpz_divexact(factor.get_mpz_t(), want.get_mpz_t(), pd.scale.get_mpz_t());
    return factor * pd.remainder;
}

IntPoly gcd_primitive(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
    IntPoly x = a.primitive();
    IntPoly y = b.primitive();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        IntPoly r = pseudo_divide(x, y).remainder;
        x = std::move(y);
        y = r.primitive();
    }
    return x.primitive();
}

bool divides_in_Q(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) throw std::invalid_argument("divisibility test by the zero polynomial");
    if (b.is_zero()) return true;
    if (b.degree() < a.degree()) return false;
    return pseudo_divide(b.primitive(), a.primitive()).remainder.is_zero();
}

IntPoly quotient_in_Q(const IntPoly& b, const IntPoly& a) {
    if (a.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    PseudoDivision pd = pseudo_divide(b.primitive(), a.primitive());
    if (!pd.remainder.is_zero()) throw std::domain_error("quotient_in_Q: division is not exact");
    return pd.quotient.primitive();
}

IntPoly exact_div(const IntPoly& b, const IntPoly& a) {
    if (a.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    if (b.is_zero()) return {};
    const int da = a.degree();
    int dr = b.degree();
    if (dr < da) throw std::domain_error("exact_div: degree too small");
    std::vector<Integer> r(b.coeffs().begin(), b.coeffs().end());
    std::vector<Integer> q(static_cast<size_t>(dr - da + 1));
    const Integer& la = a.lead();
    Integer t, rem;
    while (dr >= da) {
        mpz_fdiv_qr(t.get_mpz_t(), rem.get_mpz_t(), r[dr].get_mpz_t(), la.get_mpz_t());
        if (sgn(rem) != 0) throw std::domain_error("exact_div: not divisible over Z");
        const int s = dr - da;
        q[s] = t;
        for (int i = 0; i <= da; ++i) mpz_submul(r[s + i].get_mpz_t(), t.get_mpz_t(), a[i].get_mpz_t());
        --dr;
    }
    for (const auto& x : r)
        if (sgn(x) != 0) throw std::domain_error("exact_div: nonzero remainder");
    return IntPoly(std::move(q));
}

std::vector<SquarefreePart> squarefree_decomposition(const IntPoly& a) {
    if (a.is_zero()) throw std::invalid_argument("squarefree decomposition of the zero polynomial");
    std::vector<SquarefreePart> out;
    IntPoly p = a.primitive();
    if (p.degree() <= 0) return out;
    // c holds prod a_j^(j-i) and w holds prod_{j >= i} a_j at step i.
    IntPoly c = gcd_primitive(p, p.derivative());
    IntPoly w = quotient_in_Q(p, c);
    int i = 1;
    while (w.degree() > 0) {
        IntPoly y = gcd_primitive(w, c);
        IntPoly z = quotient_in_Q(w, y);
        if (z.degree() > 0) out.push_back({z, i});
        w = std::move(y);
        c = quotient_in_Q(c, w);
        ++i;
    }
    return out;
}

IntPoly squarefree_part(const IntPoly& a) {
    IntPoly p = a.primitive();
    if (p.degree() <= 0) return p;
    return quotient_in_Q(p, gcd_primitive(p, p.derivative()));
}

bool is_squarefree(const IntPoly& a) {
    if (a.degree() <= 0) return true;
    return gcd_primitive(a, a.derivative()).degree() == 0;
}

int max_multiplicity(std::span<const SquarefreePart> parts) {
    int m = 0;
    for (const auto& p : parts) m = std::max(m, p.multiplicity);
    return m;
}

int max_multiplicity_excluding_x(std::span<const SquarefreePart> parts) {
    const IntPoly x = IntPoly::monomial(1, 1);
    int m = 0;
    for (const auto& p : parts) {
        // A squarefree part is primitive; strip a factor x when present.
        IntPoly f = p.factor;
        if (f.degree() >= 1 && sgn(f[0]) == 0) f = quotient_in_Q(f, x);
        if (f.degree() >= 1) m = std::max(m, p.multiplicity);
    }
    return m;
}

Integer resultant(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    IntPoly A = a, B = b;
    int s = 1;
    if (A.degree() < B.degree()) {
        std::swap(A, B);
        if (is_odd(A.degree()) && is_odd(B.degree())) s = -1;
    }
    if (B.degree() == 0) return s * ipow(B.lead(), static_cast<unsigned long>(A.degree()));

    Integer ca = A.content(), cb = B.content();
    Integer t = ipow(ca, static_cast<unsigned long>(B.degree())) * ipow(cb, static_cast<unsigned long>(A.degree()));
    {
        std::vector<Integer> va(A.coeffs().begin(), A.coeffs().end());
        for (auto& x : va) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), ca.get_mpz_t());
        A = IntPoly(std::move(va));
        std::vector<Integer> vb(B.coeffs().begin(), B.coeffs().end());
        for (auto& x : vb) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), cb.get_mpz_t());
        B = IntPoly(std::move(vb));
    }

    Integer g = 1, h = 1;
    while (true) {
        const int delta = A.degree() - B.degree();
        if (is_odd(A.degree()) && is_odd(B.degree())) s = -s;
        IntPoly R = pseudo_remainder(A, B);
        A = std::move(B);
        if (R.is_zero()) return 0;
        Integer divisor = g * ipow(h, static_cast<unsigned long>(delta));
        std::vector<Integer> vr(R.coeffs().begin(), R.coeffs().end());
        for (auto& x : vr) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), divisor.get_mpz_t());
        B = IntPoly(std::move(vr));
        g = A.lead();
        if (delta == 1) {
            h = g;
        } else if (delta > 1) {
            Integer num = ipow(g, static_cast<unsigned long>(delta));
            Integer den = ipow(h, static_cast<unsigned long>(delta - 1));
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        if (B.degree() == 0) {
            const int da = A.degree();
            Integer num = ipow(B.lead(), static_cast<unsigned long>(da));
            Integer den = ipow(h, static_cast<unsigned long>(da - 1));
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            return s * t * h;
        }
    }
}

RelationResultants relation_resultants(const IntPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("relation_resultants of the zero polynomial");
    const int d = f.degree();
    if (d < 1) throw std::invalid_argument("relation_resultants needs degree >= 1");
    const int n = d * d + 1;
    const long x0 = -(n / 2);

    std::vector<Integer> gv(static_cast<size_t>(n)), hv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Integer xi = x0 + i;
        IntPoly plus = f.shift(xi);  // f(xi + y)
        gv[i] = resultant(plus.negate_arg(), f);
        hv[i] = resultant(plus, f);
    }

    auto interpolate = [&](std::vector<Integer>& v) {
        // Forward differences, then Newton form on the nodes x0, x0+1, ...
        for (int k = 1; k < n; ++k)
            for (int i = n - 1; i >= k; --i) v[i] -= v[i - 1];
        Integer fact = 1;
        for (int k = 1; k < n; ++k) {
            fact *= k;
            if (!mpz_divisible_p(v[k].get_mpz_t(), fact.get_mpz_t()))
                throw std::logic_error("relation_resultants: non-integral Newton coefficient");
            mpz_divexact(v[k].get_mpz_t(), v[k].get_mpz_t(), fact.get_mpz_t());
        }
        std::vector<Integer> p{v[n - 1]};
        for (int k = n - 2; k >= 0; --k) {
            // p <- p * (x - (x0 + k)) + v[k]
            const Integer node = x0 + k;
            p.insert(p.begin(), Integer(0));
            for (size_t j = 0; j + 1 < p.size(); ++j) mpz_submul(p[j].get_mpz_t(), p[j + 1].get_mpz_t(), node.get_mpz_t());
            p[0] += v[k];
        }
        return IntPoly(std::move(p));
    };
    return {interpolate(gv), interpolate(hv)};
}

namespace {

// Coefficients in y of f(x + sign*y), each an element of Z[x].
std::vector<IntPoly> bivariate_shift(const IntPoly& f, int sign) {
    const int d = f.degree();
    std::vector<std::vector<Integer>> coef(static_cast<size_t>(d) + 1, std::vector<Integer>(static_cast<size_t>(d) + 1));
    // (x + s*y)^k = sum_j C(k,j) x^(k-j) (s*y)^j
    for (int k = 0; k <= d; ++k) {
        Integer binom = 1;
        for (int j = 0; j <= k; ++j) {
            if (j > 0) {
                binom *= (k - j + 1);
                mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(j));
            }
            Integer term = f[k] * binom;
            if (sign < 0 && is_odd(j)) term = -term;
            coef[j][k - j] += term;
        }
    }
    std::vector<IntPoly> out;
    out.reserve(coef.size());
    for (auto& c : coef) out.emplace_back(std::move(c));
    return out;
}

IntPoly sylvester_det(const std::vector<IntPoly>& a, const std::vector<IntPoly>& b) {
    // a, b: ascending coefficient lists (in y) with polynomial entries.
    const int m = static_cast<int>(a.size()) - 1;
    const int n = static_cast<int>(b.size()) - 1;
    const int N = m + n;
    std::vector<std::vector<IntPoly>> M(static_cast<size_t>(N), std::vector<IntPoly>(static_cast<size_t>(N)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) M[r][r + k] = a[m - k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) M[n + r][r + k] = b[n - k];

    int sign = 1;
    IntPoly prev = IntPoly::constant(1);
    for (int k = 0; k < N - 1; ++k) {
        if (M[k][k].is_zero()) {
            int piv = -1;
            for (int i = k + 1; i < N; ++i)
                if (!M[i][k].is_zero()) { piv = i; break; }
            if (piv < 0) return {};
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                IntPoly num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
                M[i][j] = exact_div(num, prev);
            }
            M[i][k] = IntPoly();
        }
        prev = M[k][k];
    }
    return sign > 0 ? M[N - 1][N - 1] : -M[N - 1][N - 1];
}

}  // namespace

RelationResultants relation_resultants_sylvester(const IntPoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("relation_resultants needs degree >= 1");
    std::vector<IntPoly> fy;
    for (int k = 0; k <= f.degree(); ++k) fy.push_back(IntPoly::constant(f[k]));
    return {sylvester_det(bivariate_shift(f, -1), fy), sylvester_det(bivariate_shift(f, +1), fy)};
}

namespace {

std::vector<Integer> parse_tokens(std::string_view line) {
    std::vector<Integer> out;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) {
        size_t start = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
        if (start == tok.size() ||
            !std::all_of(tok.begin() + static_cast<long>(start), tok.end(), [](unsigned char ch) { return std::isdigit(ch); }))
            throw std::invalid_argument("polynomial line: not an integer token '" + tok + "'");
        if (tok[0] == '+') tok.erase(0, 1);
        out.emplace_back(tok, 10);
    }
    return out;
}

}  // namespace

IntPoly parse_poly(std::string_view line) {
    std::vector<Integer> c = parse_tokens(line);
    if (c.empty()) throw std::invalid_argument("polynomial line: no coefficients");
    if (sgn(c.front()) == 0 && c.size() > 1)
        throw std::invalid_argument("polynomial line: leading coefficient is zero (wrong length)");
    return IntPoly::from_descending(c);
}

IntPoly parse_poly(std::string_view line, int expected_degree) {
    std::vector<Integer> c = parse_tokens(line);
    if (static_cast<int>(c.size()) != expected_degree + 1)
        throw std::invalid_argument("polynomial line: expected " + std::to_string(expected_degree + 1) +
                                    " coefficients, got " + std::to_string(c.size()));
    if (sgn(c.front()) == 0) throw std::invalid_argument("polynomial line: leading coefficient is zero");
    return IntPoly::from_descending(c);
}

std::string format_poly(const IntPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        if (!out.empty()) out += ' ';
        out += p[k].get_str();
    }
    return out;
}

}  // namespace pisot
