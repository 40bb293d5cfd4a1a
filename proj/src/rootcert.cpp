#include "pisot/rootcert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pisot {

RationalInterval RationalInterval::open(const Rational& a, const Rational& b) { return {a, b, true, true}; }
RationalInterval RationalInterval::closed(const Rational& a, const Rational& b) { return {a, b, false, false}; }

void RationalInterval::validate() const {
    if (lo > hi) throw std::invalid_argument("interval with lo > hi: " + to_string());
    if (lo == hi && (lo_open || hi_open)) throw std::invalid_argument("degenerate interval with open endpoint");
}

bool RationalInterval::contains(const Rational& x) const {
    bool above = lo_open ? (x > lo) : (x >= lo);
    bool below = hi_open ? (x < hi) : (x <= hi);
    return above && below;
}

bool RationalInterval::is_empty() const {
    if (lo > hi) return true;
    return lo == hi && (lo_open || hi_open);
}

std::string RationalInterval::to_string() const {
    return std::string(lo_open ? "(" : "[") + lo.get_str() + ", " + hi.get_str() + (hi_open ? ")" : "]");
}

std::complex<long double> RootEnclosure::approx() const {
    return {static_cast<long double>(re.get_d()), static_cast<long double>(im.get_d())};
}

Rational dyadic(long bits) {
    Rational r = 1;
    if (bits >= 0)
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(bits));
    else
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(-bits));
    return r;
}

// ---------------------------------------------------------------------------
// Sturm sequences

SturmSequence::SturmSequence(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("Sturm sequence of the zero polynomial");
    seq_.push_back(p);
    if (p.degree() == 0) return;
    seq_.push_back(p.derivative());
    while (seq_.back().degree() > 0) {
        const IntPoly& a = seq_[seq_.size() - 2];
        const IntPoly& b = seq_.back();
        // lc(b)^k a = q b + r; force a positive multiplier so signs are kept.
        PseudoDivision pd = pseudo_divide(a, b);
        IntPoly r = pd.remainder;
        if (sgn(pd.scale) < 0) r = -r;
        if (r.is_zero()) break;
        Integer c = r.content();
        std::vector<Integer> v(r.coeffs().begin(), r.coeffs().end());
        for (auto& x : v) {
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
            x = -x;
        }
        seq_.emplace_back(std::move(v));
    }
    if (seq_.back().degree() > 0) throw std::domain_error("Sturm sequence: polynomial is not squarefree");
}

namespace {

int count_variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

}  // namespace

int SturmSequence::variations_at(const Rational& x) const {
    std::vector<int> s;
    s.reserve(seq_.size());
    for (const auto& q : seq_) s.push_back(q.sign_at(x));
    return count_variations(s);
}

int SturmSequence::variations_at_pos_inf() const {
    std::vector<int> s;
    for (const auto& q : seq_) s.push_back(sgn(q.lead()));
    return count_variations(s);
}

int SturmSequence::variations_at_neg_inf() const {
    std::vector<int> s;
    for (const auto& q : seq_) s.push_back((q.degree() % 2 == 0) ? sgn(q.lead()) : -sgn(q.lead()));
    return count_variations(s);
}

int SturmSequence::roots_in_half_open(const Rational& a, const Rational& b) const {
    if (a >= b) return 0;
    return variations_at(a) - variations_at(b);
}

int sturm_count(const IntPoly& p, const RationalInterval& iv) {
    iv.validate();
    SturmSequence s(p);
    if (iv.lo == iv.hi) return p.sign_at(iv.lo) == 0 ? 1 : 0;
    // Variation counts are right-continuous at roots of p, so V(a) - V(b)
    // counts the roots in (a, b] even when an endpoint is a root.
    int n = s.roots_in_half_open(iv.lo, iv.hi);
    if (!iv.lo_open && p.sign_at(iv.lo) == 0) ++n;
    if (iv.hi_open && p.sign_at(iv.hi) == 0) --n;
    return n;
}

int sturm_count_above(const IntPoly& p, const Rational& a, bool closed) {
    SturmSequence s(p);
    int n = s.variations_at(a) - s.variations_at_pos_inf();
    if (closed && p.sign_at(a) == 0) ++n;
    return n;
}

int real_root_count(const IntPoly& p) {
    SturmSequence s(p);
    return s.variations_at_neg_inf() - s.variations_at_pos_inf();
}

Rational cauchy_bound(const IntPoly& p) {
    if (p.degree() < 1) return 1;
    Rational m = 0;
    for (int k = 0; k < p.degree(); ++k) {
        Rational q(abs(p[k]), abs(p.lead()));
        q.canonicalize();
        if (q > m) m = q;
    }
    return m + 1;
}

// ---------------------------------------------------------------------------
// Unit disk and unit circle

namespace {

using i128 = __int128;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

enum class FixedStatus { Done, Degenerate, Overflow };

// The same recursion as schur_cohn_count in 128-bit integers; reports
// overflow instead of wrapping so the caller can redo the work with GMP.
FixedStatus schur_cohn_fixed(const IntPoly& p, int& result) {
    constexpr i128 kLimit = static_cast<i128>(1) << 62;
    std::vector<i128> a;
    a.reserve(static_cast<size_t>(p.degree()) + 2 * static_cast<size_t>(p.degree()) + 4);
    for (const auto& c : p.coeffs()) {
        if (!c.fits_slong_p()) return FixedStatus::Overflow;
        a.push_back(c.get_si());
        if (abs128(a.back()) >= kLimit) return FixedStatus::Overflow;
    }
    int offset = 0, sign = 1, rescues = 0;
    const int max_rescues = 2 * p.degree() + 2;
    std::vector<i128> g;
    while (a.size() > 1) {
        const int n = static_cast<int>(a.size()) - 1;
        const i128 an = abs128(a[n]), a0 = abs128(a[0]);
        if (an == a0) {
            if (++rescues > max_rescues) return FixedStatus::Degenerate;
            a.push_back(0);
            for (int k = n + 1; k >= 0; --k) {
                const i128 v = (k > 0 ? a[k - 1] : 0) - 2 * (k <= n ? a[k] : 0);
                if (abs128(v) >= kLimit) return FixedStatus::Overflow;
                a[k] = v;
            }
            continue;
        }
        g.assign(static_cast<size_t>(n), 0);
        i128 content = 0;
        for (int k = 0; k < n; ++k) {
            if (an >= kLimit || a0 >= kLimit) return FixedStatus::Overflow;
            i128 v = a[n] * a[k + 1] - a[0] * a[n - k - 1];
            g[k] = v;
            content = gcd128(content, v);
        }
        if (an > a0) {
            offset += sign;
        } else {
            offset += sign * (n - 1);
            sign = -sign;
        }
        while (!g.empty() && g.back() == 0) g.pop_back();
        if (g.empty()) throw std::logic_error("Schur-Cohn produced a zero polynomial");
        if (g.back() < 0) content = -content;
        for (auto& v : g) {
            v /= content;
            if (abs128(v) >= kLimit) return FixedStatus::Overflow;
        }
        a.swap(g);
    }
    result = offset;
    return FixedStatus::Done;
}

}  // namespace

std::optional<int> schur_cohn_count(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("Schur-Cohn on the zero polynomial");
    int fixed = 0;
    switch (schur_cohn_fixed(p, fixed)) {
        case FixedStatus::Done: return fixed;
        case FixedStatus::Degenerate: return std::nullopt;
        case FixedStatus::Overflow: break;
    }
    std::vector<Integer> a(p.coeffs().begin(), p.coeffs().end());
    int offset = 0, sign = 1;
    // Multiplying by (x - 2) adds one root outside the disk and breaks an
    // equal-moduli step; a root on the circle survives every step, so the
    // number of such rescues is capped.
    int rescues = 0;
    const int max_rescues = 2 * p.degree() + 2;
    while (a.size() > 1) {
        const int n = static_cast<int>(a.size()) - 1;
        int c = mpz_cmpabs(a[n].get_mpz_t(), a[0].get_mpz_t());
        if (c == 0) {
            if (++rescues > max_rescues) return std::nullopt;
            std::vector<Integer> b(a.size() + 1);
            for (size_t k = 0; k < a.size(); ++k) {
                b[k + 1] += a[k];
                b[k] -= 2 * a[k];
            }
            a = std::move(b);
            continue;
        }
        std::vector<Integer> g(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) {
            g[k] = a[n] * a[k + 1];
            mpz_submul(g[k].get_mpz_t(), a[0].get_mpz_t(), a[n - k - 1].get_mpz_t());
        }
        if (c > 0) {
            offset += sign;
        } else {
            offset += sign * (n - 1);
            sign = -sign;
        }
        IntPoly gp = IntPoly(std::move(g)).primitive();
        a.assign(gp.coeffs().begin(), gp.coeffs().end());
    }
    return offset;
}

bool has_root_on_unit_circle(const IntPoly& p) {
    if (p.is_zero() || sgn(p[0]) == 0)
        throw std::invalid_argument("has_root_on_unit_circle: zero constant term");
    IntPoly c = gcd_primitive(p, p.reciprocal());
    if (c.degree() == 0) return false;
    if (c.sign_at(1) == 0 || c.sign_at(-1) == 0) return true;
    // Roots of c are closed under z -> 1/z; without +-1 it is self-reciprocal
    // of even degree 2m, c(x) = x^m C(x + 1/x).
    if (c.degree() % 2 != 0 || !(c == c.reciprocal()))
        throw std::logic_error("has_root_on_unit_circle: gcd with reciprocal is not self-reciprocal");
    const int m = c.degree() / 2;
    IntPoly w = IntPoly::monomial(1, 1);
    IntPoly dk_prev = IntPoly::constant(2);  // x^0 + x^-0
    IntPoly dk = w;                            // x + 1/x
    IntPoly C = IntPoly::constant(c[m]);
    for (int k = 1; k <= m; ++k) {
        C = C + c[m + k] * dk;
        IntPoly next = w * dk - dk_prev;
        dk_prev = std::move(dk);
        dk = std::move(next);
    }
    IntPoly s = squarefree_part(C);
    if (s.degree() < 1) return false;
    return sturm_count(s, RationalInterval::closed(-2, 2)) > 0;
}

// ---------------------------------------------------------------------------
// Certified roots

namespace {

using LDComplex = std::complex<long double>;

std::vector<LDComplex> aberth_long_double(const IntPoly& p) {
    const int n = p.degree();
    std::vector<long double> c(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[k] = static_cast<long double>(p[k].get_d());
    long double radius = std::pow(std::abs(c[0] / c[n]), 1.0L / n);
    if (!(radius > 0) || !std::isfinite(radius)) radius = 1;
    std::vector<LDComplex> z(static_cast<size_t>(n));
    const long double two_pi = 6.283185307179586476925286766559L;
    for (int k = 0; k < n; ++k) z[k] = std::polar(radius, two_pi * k / n + 0.4L);

    for (int iter = 0; iter < 500; ++iter) {
        long double worst = 0;
        for (int i = 0; i < n; ++i) {
            LDComplex pv = c[n], dv = 0;
            for (int k = n - 1; k >= 0; --k) {
                dv = dv * z[i] + pv;
                pv = pv * z[i] + c[k];
            }
            if (pv == LDComplex(0)) continue;
            LDComplex ratio = pv / dv;
            LDComplex sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) sum += 1.0L / (z[i] - z[j]);
            LDComplex w = ratio / (1.0L - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
            z[i] -= w;
            worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(z[i])));
        }
        if (worst < 1e-17L) break;
    }
    return z;
}

struct MpfComplex {
    mpf_class re, im;
    explicit MpfComplex(mp_bitcnt_t prec) : re(0, prec), im(0, prec) {}
    MpfComplex(const mpf_class& r, const mpf_class& i, mp_bitcnt_t prec) : re(r, prec), im(i, prec) {}
    mp_bitcnt_t prec() const { return re.get_prec(); }
};

MpfComplex operator-(const MpfComplex& a, const MpfComplex& b) {
    MpfComplex r(a.prec());
    r.re = a.re - b.re;
    r.im = a.im - b.im;
    return r;
}

MpfComplex operator*(const MpfComplex& a, const MpfComplex& b) {
    MpfComplex r(a.prec());
    r.re = a.re * b.re - a.im * b.im;
    r.im = a.re * b.im + a.im * b.re;
    return r;
}

MpfComplex operator/(const MpfComplex& a, const MpfComplex& b) {
    MpfComplex r(a.prec());
    mpf_class den(b.re * b.re + b.im * b.im, a.prec());
    r.re = (a.re * b.re + a.im * b.im) / den;
    r.im = (a.im * b.re - a.re * b.im) / den;
    return r;
}

mpf_class norm2(const MpfComplex& a) { return mpf_class(a.re * a.re + a.im * a.im, a.prec()); }

bool is_zero(const MpfComplex& a) { return sgn(a.re) == 0 && sgn(a.im) == 0; }

void aberth_mpf(const IntPoly& p, std::vector<MpfComplex>& z, mp_bitcnt_t prec) {
    const int n = p.degree();
    std::vector<mpf_class> c;
    for (int k = 0; k <= n; ++k) c.emplace_back(p[k], prec);
    mpf_class tol(1, prec);
    mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), 2 * (prec - 8));  // compared against squared norms
    const MpfComplex one(mpf_class(1, prec), mpf_class(0, prec), prec);

    for (int iter = 0; iter < 200; ++iter) {
        bool converged = true;
        for (int i = 0; i < n; ++i) {
            MpfComplex pv(c[n], mpf_class(0, prec), prec), dv(prec);
            for (int k = n - 1; k >= 0; --k) {
                dv = dv * z[i];
                dv.re += pv.re;
                dv.im += pv.im;
                pv = pv * z[i];
                pv.re += c[k];
            }
            if (is_zero(pv) || is_zero(dv)) continue;
            MpfComplex ratio = pv / dv;
            MpfComplex sum(prec);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                MpfComplex diff = z[i] - z[j];
                if (is_zero(diff)) continue;
                MpfComplex inv = one / diff;
                sum.re += inv.re;
                sum.im += inv.im;
            }
            MpfComplex w = ratio / (one - ratio * sum);
            z[i] = z[i] - w;
            mpf_class scale = norm2(z[i]);
            if (scale < 1) scale = 1;
            if (norm2(w) > tol * scale) converged = false;
        }
        if (converged) break;
    }
}

struct Gaussian {
    Integer re, im;
};

Gaussian gmul(const Gaussian& a, const Gaussian& b) {
    Gaussian r;
    r.re = a.re * b.re - a.im * b.im;
    r.im = a.re * b.im + a.im * b.re;
    return r;
}

Integer gnorm(const Gaussian& a) { return a.re * a.re + a.im * a.im; }

// Assign exactly `real_count` approximations to the real axis and pair the
// rest as complex conjugates. Returns false when the pattern does not fit.
bool snap_to_symmetry(std::vector<MpfComplex>& z, int real_count, std::vector<bool>& is_real) {
    const int n = static_cast<int>(z.size());
    std::vector<int> idx(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return abs(z[a].im) < abs(z[b].im); });
    is_real.assign(static_cast<size_t>(n), false);
    for (int k = 0; k < real_count; ++k) {
        is_real[idx[k]] = true;
        z[idx[k]].im = 0;
    }
    std::vector<int> upper, lower;
    for (int k = real_count; k < n; ++k) (sgn(z[idx[k]].im) > 0 ? upper : lower).push_back(idx[k]);
    if (upper.size() != lower.size()) return false;
    std::vector<bool> used(lower.size(), false);
    for (int u : upper) {
        int best = -1;
        mpf_class best_d(0, z[u].prec());
        for (size_t j = 0; j < lower.size(); ++j) {
            if (used[j]) continue;
            MpfComplex conj(z[u].re, -z[u].im, z[u].prec());
            mpf_class d = norm2(conj - z[lower[j]]);
            if (best < 0 || d < best_d) {
                best = static_cast<int>(j);
                best_d = d;
            }
        }
        used[best] = true;
        z[lower[best]].re = z[u].re;
        z[lower[best]].im = -z[u].im;
    }
    return true;
}

// Integer mantissa of x * 2^bits, rounded toward zero.
Integer scaled_mantissa(const mpf_class& x, mp_bitcnt_t bits) {
    mpf_class t(x, x.get_prec() + 64);
    mpf_mul_2exp(t.get_mpf_t(), t.get_mpf_t(), bits);
    Integer r;
    mpz_set_f(r.get_mpz_t(), t.get_mpf_t());
    return r;
}

Rational ceil_dyadic(const Rational& x, mp_bitcnt_t bits) {
    Integer num = x.get_num();
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), bits);
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
    Rational r(q, 1);
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), bits);
    r.canonicalize();
    return r;
}

// Inclusion disks D(z_i, n |W_i|) with W_i the Weierstrass correction; if
// they are pairwise disjoint each one holds exactly one root.
std::optional<std::vector<RootEnclosure>> certify(const IntPoly& p, const std::vector<Gaussian>& Z,
                                                  const std::vector<bool>& is_real, mp_bitcnt_t P,
                                                  const Rational& eps) {
    const int n = p.degree();
    Integer D = 1;
    mpz_mul_2exp(D.get_mpz_t(), D.get_mpz_t(), P);
    std::vector<Rational> radius(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Gaussian H{p.lead(), 0};
        Integer Dpow = 1;
        for (int k = n - 1; k >= 0; --k) {
            Dpow *= D;
            H = gmul(H, Z[i]);
            mpz_addmul(H.re.get_mpz_t(), p[k].get_mpz_t(), Dpow.get_mpz_t());
        }
        Gaussian prod{1, 0};
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            prod = gmul(prod, Gaussian{Z[i].re - Z[j].re, Z[i].im - Z[j].im});
        }
        Integer prod_norm = gnorm(prod);
        if (sgn(prod_norm) == 0) return std::nullopt;
        Integer N = gnorm(H);
        Integer M = D * D * p.lead() * p.lead() * prod_norm;
        Integer root;
        Integer NM = N * M;
        mpz_sqrt(root.get_mpz_t(), NM.get_mpz_t());
        if (root * root != NM) root += 1;
        Rational r(root * n, M);
        r.canonicalize();
        radius[i] = ceil_dyadic(r, P + 8);
        if (radius[i] > eps) return std::nullopt;
        if (!is_real[i]) {
            Rational im_abs(abs(Z[i].im), D);
            im_abs.canonicalize();
            if (radius[i] >= im_abs) return std::nullopt;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rational sum = radius[i] + radius[j];
            Rational dist2(gnorm(Gaussian{Z[i].re - Z[j].re, Z[i].im - Z[j].im}), D * D);
            dist2.canonicalize();
            if (sum * sum >= dist2) return std::nullopt;
        }
    std::vector<RootEnclosure> out;
    for (int i = 0; i < n; ++i) {
        RootEnclosure e;
        e.re = Rational(Z[i].re, D);
        e.re.canonicalize();
        e.im = Rational(Z[i].im, D);
        e.im.canonicalize();
        e.radius = radius[i];
        e.is_real = is_real[i];
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

std::vector<RootEnclosure> certified_roots(const IntPoly& p, const Rational& eps) {
    if (p.degree() < 1) throw std::invalid_argument("certified_roots needs degree >= 1");
    if (sgn(eps) <= 0) throw std::invalid_argument("certified_roots needs eps > 0");
    if (!is_squarefree(p)) throw std::domain_error("certified_roots: polynomial is not squarefree");
    const int n = p.degree();
    if (n == 1) {
        Rational r(-p[0], p[1]);
        r.canonicalize();
        return {RootEnclosure{r, 0, 0, true}};
    }
    const int real_count = real_root_count(p);
    std::vector<LDComplex> start = aberth_long_double(p);

    std::vector<MpfComplex> z;
    for (const auto& s : start) z.emplace_back(mpf_class(static_cast<double>(s.real()), 64),
                                               mpf_class(static_cast<double>(s.imag()), 64), 64);
    for (mp_bitcnt_t prec = 64; prec <= (1u << 16); prec *= 2) {
        for (auto& w : z) {
            w.re.set_prec(prec);
            w.im.set_prec(prec);
        }
        aberth_mpf(p, z, prec);
        std::vector<bool> is_real;
        if (!snap_to_symmetry(z, real_count, is_real)) continue;
        std::vector<Gaussian> Z;
        for (const auto& w : z) Z.push_back({scaled_mantissa(w.re, prec), scaled_mantissa(w.im, prec)});
        auto cert = certify(p, Z, is_real, prec, eps);
        if (!cert) continue;
        std::sort(cert->begin(), cert->end(), [](const RootEnclosure& a, const RootEnclosure& b) {
            if (a.re != b.re) return a.re > b.re;
            return a.im > b.im;
        });
        return *cert;
    }
    throw std::runtime_error("certified_roots: precision limit reached for " + p.to_string());
}

namespace {

// Certified count for polynomials known to have no root of modulus one.
int numeric_disk_count(const IntPoly& p) {
    int total = 0;
    IntPoly x = IntPoly::monomial(1, 1);
    for (const auto& part : squarefree_decomposition(p)) {
        IntPoly f = part.factor;
        if (f.degree() >= 1 && sgn(f[0]) == 0) {
            total += part.multiplicity;  // the root 0
            f = quotient_in_Q(f, x);
        }
        if (f.degree() < 1) continue;
        for (long bits = 20;; bits *= 2) {
            if (bits > 8192) throw std::runtime_error("numeric_disk_count: cannot separate roots from the unit circle");
            auto roots = certified_roots(f, dyadic(bits));
            int inside = 0;
            bool decided = true;
            for (const auto& r : roots) {
                Rational m2 = r.re * r.re + r.im * r.im;
                Rational in_edge = 1 - r.radius, out_edge = 1 + r.radius;
                if (sgn(in_edge) > 0 && m2 < in_edge * in_edge)
                    ++inside;
                else if (m2 > out_edge * out_edge)
                    continue;
                else {
                    decided = false;
                    break;
                }
            }
            if (decided) {
                total += inside * part.multiplicity;
                break;
            }
        }
    }
    return total;
}

}  // namespace

int count_in_open_unit_disk(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("count_in_open_unit_disk of the zero polynomial");
    if (auto c = schur_cohn_count(p)) return *c;
    IntPoly q = p;
    IntPoly x = IntPoly::monomial(1, 1);
    while (q.degree() >= 1 && sgn(q[0]) == 0) q = exact_div(q, x);
    if (q.degree() >= 1 && has_root_on_unit_circle(q))
        throw std::domain_error("count_in_open_unit_disk: polynomial has a root on the unit circle");
    return numeric_disk_count(p);
}

// ---------------------------------------------------------------------------
// Pisot decision

namespace {

// Sign of theta - q where theta is the unique root of p in (1, inf) and p < 0 on (1, theta).
int theta_cmp(const IntPoly& p, const Rational& q) {
    if (q <= 1) return 1;
    int s = p.sign_at(q);
    return s < 0 ? 1 : (s == 0 ? 0 : -1);
}

}  // namespace

void refine_real_root(const IntPoly& p, Rational& lo, Rational& hi, const Rational& width) {
    int slo = p.sign_at(lo);
    int shi = p.sign_at(hi);
    if (slo == 0) {
        hi = lo;
        return;
    }
    if (shi == 0) {
        lo = hi;
        return;
    }
    if (slo == shi) throw std::invalid_argument("refine_real_root: no sign change across the bracket");
    while (hi - lo > width) {
        Rational mid = (lo + hi) / 2;
        int s = p.sign_at(mid);
        if (s == 0) {
            lo = hi = mid;
            return;
        }
        if (s == slo)
            lo = mid;
        else
            hi = mid;
    }
}

int compare_theta(const PisotRecord& rec, const Rational& q) { return theta_cmp(rec.poly, q); }

std::optional<PisotRecord> is_pisot(const IntPoly& p, const RationalInterval& iv) {
    if (p.degree() < 1) throw std::invalid_argument("is_pisot needs degree >= 1");
    if (p.lead() != 1) throw std::invalid_argument("is_pisot needs a monic polynomial");
    iv.validate();
    const int d = p.degree();
    if (sgn(p[0]) == 0) return std::nullopt;

    if (d == 1) {
        Rational n(-p[0]);
        if (n < 2 || !iv.contains(n)) return std::nullopt;
        return PisotRecord{p, RootEnclosure{n, 0, 0, true}, 1};
    }

    // Necessary: p < 0 on (1, theta) for the unique dominant root theta > 1.
    if (p.sign_at(1) >= 0) return std::nullopt;
    // Membership by signs at the endpoints is meaningful only for a Pisot
    // polynomial, but as a necessary condition it may run first.
    int lo_cmp = theta_cmp(p, iv.lo);
    int hi_cmp = theta_cmp(p, iv.hi);
    bool above = lo_cmp > 0 || (lo_cmp == 0 && !iv.lo_open);
    bool below = hi_cmp < 0 || (hi_cmp == 0 && !iv.hi_open);
    if (!above || !below) return std::nullopt;

    int inside;
    if (auto c = schur_cohn_count(p)) {
        inside = *c;  // a completed run rules out roots on the unit circle
    } else {
        if (has_root_on_unit_circle(p)) return std::nullopt;
        inside = numeric_disk_count(p);
    }
    if (inside != d - 1) return std::nullopt;
    if (sturm_count_above(p, 1) != 1) return std::nullopt;


    // Dyadic bracket [1, 2^k] around theta, then bisect to radius <= 2^-40.
    Rational lo = 1, hi = 2;
    while (p.sign_at(hi) <= 0) hi *= 2;
    refine_real_root(p, lo, hi, dyadic(39));
    RootEnclosure theta{(lo + hi) / 2, 0, (hi - lo) / 2, true};
    return PisotRecord{p, std::move(theta), d};
}

std::string PisotRecord::to_line() const {
    mpf_class t(theta.re, 256);
    char buf[128];
    gmp_snprintf(buf, sizeof buf, "%.12Ff", t.get_mpf_t());
    return std::to_string(degree) + " " + format_poly(poly) + " | " + buf;
}

PisotRecord parse_record_line(std::string_view line) {
    auto bar = line.find('|');
    std::string_view head = line.substr(0, bar);
    std::istringstream in{std::string(head)};
    int degree = -1;
    if (!(in >> degree) || degree < 1) throw std::invalid_argument("record line: bad degree");
    std::string rest;
    std::getline(in, rest);
    IntPoly p = parse_poly(rest, degree);
    if (p.lead() != 1) throw std::invalid_argument("record line: polynomial is not monic");
    auto rec = is_pisot(p, RationalInterval::open(1, cauchy_bound(p) + 1));
    if (!rec) throw std::invalid_argument("record line: not a Pisot polynomial: " + p.to_string());
    return *rec;
}

bool record_less(const PisotRecord& a, const PisotRecord& b) { return coeff_less(a.poly, b.poly); }

}  // namespace pisot
