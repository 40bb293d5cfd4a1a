#include "pisot/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pisot {

namespace {

// Relative widening applied to every floating bound. libm pow and the
// rounded exponent 1/k contribute far less than 2^-40.
constexpr double kWiden = 0x1p-40;

double round_down(double x) { return x > 0 ? x * (1 - kWiden) : x * (1 + kWiden); }
double round_up(double x) { return x > 0 ? x * (1 + kWiden) : x * (1 - kWiden); }

double rational_down(const Rational& q) { return round_down(q.get_d()) - 0x1p-60; }
double rational_up(const Rational& q) { return round_up(q.get_d()) + 0x1p-60; }

class PowerSumSearch {
public:
    PowerSumSearch(int d, const RationalInterval& iv, const EnumerateOptions& opts)
        : d_(d), slack_(d - 1), iv_(iv), opts_(opts), s_(static_cast<size_t>(d) + 1), e_(static_cast<size_t>(d) + 1) {
        e_[0] = 1;
        hi_limit_ = rational_up(iv.hi);
    }

    std::vector<PisotRecord> run() {
        descend(1, rational_down(iv_.lo), rational_up(iv_.hi));
        std::sort(found_.begin(), found_.end(), record_less);
        return std::move(found_);
    }

private:
    void descend(int k, double lo, double hi) {
        if (k > d_) {
            leaf();
            return;
        }
        const double lk = round_down(std::pow(lo, k));
        const double hk = round_up(std::pow(hi, k));
        const auto first = static_cast<std::int64_t>(std::ceil(lk - slack_));
        const auto last = static_cast<std::int64_t>(std::floor(hk + slack_));
        for (std::int64_t sk = first; sk <= last; ++sk) {
            s_[k] = sk;
            __int128 acc = 0;
            for (int i = 1; i <= k; ++i) {
                __int128 t = static_cast<__int128>(e_[k - i]) * s_[i];
                acc += (i & 1) ? t : -t;
            }
            if (acc % k != 0) continue;
            e_[k] = static_cast<std::int64_t>(acc / k);

            const double upper = static_cast<double>(sk + slack_);
            if (upper <= 0) continue;
            double nlo = lo, nhi = std::min(hi, round_up(std::pow(upper, 1.0 / k)));
            const double lower = static_cast<double>(sk - slack_);
            if (lower > 0) nlo = std::max(lo, round_down(std::pow(lower, 1.0 / k)));
            if (nlo > nhi) continue;

            if (opts_.stats) ++opts_.stats->nodes;
            if (opts_.visit) {
                SearchNode node;
                node.power_sums.assign(s_.begin() + 1, s_.begin() + k + 1);
                node.elem_syms.assign(e_.begin() + 1, e_.begin() + k + 1);
                node.theta_lo = nlo;
                node.theta_hi = nhi;
                opts_.visit(node);
            }
            descend(k + 1, nlo, nhi);
        }
    }

    // Cheap necessary conditions before the exact decision: a Pisot
    // polynomial has p(1) < 0, sign (-1)^d at -1, and |p(0)| < theta.
    void leaf() {
        if (opts_.stats) ++opts_.stats->leaves;
        const std::int64_t ed = e_[d_];
        if (ed == 0) return;
        if (d_ >= 2) {
            __int128 at_one = 1, at_minus_one = (d_ & 1) ? -1 : 1;
            for (int j = 1; j <= d_; ++j) {
                const __int128 c = (j & 1) ? -static_cast<__int128>(e_[j]) : e_[j];
                at_one += c;
                at_minus_one += ((d_ - j) & 1) ? -c : c;
            }
            if (at_one >= 0) return;
            if (((d_ & 1) ? -at_minus_one : at_minus_one) <= 0) return;
            if (static_cast<double>(ed < 0 ? -ed : ed) >= hi_limit_) return;
        }
        if (opts_.stats) ++opts_.stats->exact_tests;
        IntPoly p = poly_from_elementary(std::span<const std::int64_t>(e_.data() + 1, static_cast<size_t>(d_)));
        if (auto rec = is_pisot(p, iv_)) found_.push_back(std::move(*rec));
    }

    int d_;
    std::int64_t slack_;
    RationalInterval iv_;
    const EnumerateOptions& opts_;
    std::vector<std::int64_t> s_, e_;
    double hi_limit_ = 0;
    std::vector<PisotRecord> found_;
};

}  // namespace

std::optional<std::vector<std::int64_t>> newton_e_from_s(std::span<const std::int64_t> s, int d) {
    if (static_cast<int>(s.size()) > d) throw std::invalid_argument("newton_e_from_s: more power sums than the degree");
    std::vector<std::int64_t> e(s.size() + 1);
    e[0] = 1;
    for (size_t k = 1; k <= s.size(); ++k) {
        __int128 acc = 0;
        for (size_t i = 1; i <= k; ++i) {
            __int128 t = static_cast<__int128>(e[k - i]) * s[i - 1];
            acc += (i & 1) ? t : -t;
        }
        if (acc % static_cast<__int128>(k) != 0) return std::nullopt;
        e[k] = static_cast<std::int64_t>(acc / static_cast<__int128>(k));
    }
    e.erase(e.begin());
    return e;
}

IntPoly poly_from_elementary(std::span<const std::int64_t> e) {
    const int d = static_cast<int>(e.size());
    std::vector<Integer> c(static_cast<size_t>(d) + 1);
    c[d] = 1;
    for (int j = 1; j <= d; ++j) {
        Integer v = static_cast<long>(e[j - 1]);
        c[d - j] = (j & 1) ? Integer(-v) : v;
    }
    return IntPoly(std::move(c));
}

std::vector<PisotRecord> enumerate_pisot(int d, const RationalInterval& iv, const EnumerateOptions& opts) {
    if (d < 1) throw std::invalid_argument("enumerate_pisot: degree must be >= 1");
    iv.validate();
    if (iv.lo < 1) throw std::invalid_argument("enumerate_pisot: interval must lie in [1, inf)");
    // s_k stays below hi^d + d; keep it inside 62 bits.
    if (std::pow(iv.hi.get_d(), d) + d > 0x1p61) throw std::invalid_argument("enumerate_pisot: interval too large for degree");
    if (iv.is_empty()) return {};
    return PowerSumSearch(d, iv, opts).run();
}

std::vector<PisotRecord> oracle_enumerate(int d, const RationalInterval& iv) {
    if (d < 1) throw std::invalid_argument("oracle_enumerate: degree must be >= 1");
    if (d > 5) throw std::invalid_argument("oracle_enumerate: degree above 5 is too costly");
    iv.validate();
    if (iv.lo < 1) throw std::invalid_argument("oracle_enumerate: interval must lie in [1, inf)");
    if (iv.is_empty()) return {};
    // |e_k| <= C(d-1, k) + B C(d-1, k-1): d-1 roots of modulus < 1, one <= B.
    std::vector<std::int64_t> bound(static_cast<size_t>(d) + 1);
    auto binom = [](int n, int k) -> std::int64_t {
        if (k < 0 || k > n) return 0;
        std::int64_t r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    for (int k = 1; k <= d; ++k) {
        Rational b = Rational(binom(d - 1, k)) + iv.hi * Rational(binom(d - 1, k - 1));
        Integer f;
        mpz_fdiv_q(f.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
        bound[k] = f.get_si();
    }
    std::vector<PisotRecord> out;
    std::vector<std::int64_t> e(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) e[k] = -bound[k + 1];
    while (true) {
        IntPoly p = poly_from_elementary(e);
        if (auto rec = is_pisot(p, iv)) out.push_back(std::move(*rec));
        int k = d - 1;
        while (k >= 0 && e[k] == bound[k + 1]) {
            e[k] = -bound[k + 1];
            --k;
        }
        if (k < 0) break;
        ++e[k];
    }
    std::sort(out.begin(), out.end(), record_less);
    return out;
}

}  // namespace pisot
