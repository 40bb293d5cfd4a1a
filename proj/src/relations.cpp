#include "pisot/relations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pisot {

namespace {

struct RelationInfo {
    RelationType type;
    int arity;
    std::string_view tag;
    std::string_view cli;
};

constexpr RelationInfo kInfo[] = {
    {RelationType::Sum3Zero, 3, "SUM3_ZERO", "sum3zero"},
    {RelationType::EqSum2, 3, "EQ_SUM2", "eqsum2"},
    {RelationType::PairEq, 4, "PAIR_EQ", "paireq"},
    {RelationType::EqSum3, 4, "EQ_SUM3", "eqsum3"},
    {RelationType::Sum4Zero, 4, "SUM4_ZERO", "sum4zero"},
};

const RelationInfo& info(RelationType r) {
    for (const auto& i : kInfo)
        if (i.type == r) return i;
    throw std::invalid_argument("unknown relation type");
}

using Cplx = std::complex<long double>;

// Visits every index tuple of the relation once, with the signed sum of the
// corresponding roots. Tuples are given in term order.
template <class Visit>
void for_each_tuple(std::span<const Cplx> z, RelationType r, Visit&& visit) {
    const int n = static_cast<int>(z.size());
    switch (r) {
        case RelationType::Sum3Zero:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    for (int k = j + 1; k < n; ++k) visit({i, j, k}, z[i] + z[j] + z[k]);
            break;
        case RelationType::EqSum2:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = j + 1; k < n; ++k)
                        if (i != j && i != k) visit({i, j, k}, z[i] - z[j] - z[k]);
            break;
        case RelationType::PairEq:
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    for (int c = b + 1; c < n; ++c)
                        for (int d = c + 1; d < n; ++d) {
                            visit({a, b, c, d}, z[a] + z[b] - z[c] - z[d]);
                            visit({a, c, b, d}, z[a] + z[c] - z[b] - z[d]);
                            visit({a, d, b, c}, z[a] + z[d] - z[b] - z[c]);
                        }
            break;
        case RelationType::EqSum3:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = j + 1; k < n; ++k)
                        for (int l = k + 1; l < n; ++l)
                            if (i != j && i != k && i != l) visit({i, j, k, l}, z[i] - z[j] - z[k] - z[l]);
            break;
        case RelationType::Sum4Zero:
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    for (int c = b + 1; c < n; ++c)
                        for (int d = c + 1; d < n; ++d) visit({a, b, c, d}, z[a] + z[b] + z[c] + z[d]);
            break;
    }
}

// Signs of the terms, matching the tuple order above.
std::vector<int> term_signs(RelationType r) {
    switch (r) {
        case RelationType::Sum3Zero: return {1, 1, 1};
        case RelationType::EqSum2: return {1, -1, -1};
        case RelationType::PairEq: return {1, 1, -1, -1};
        case RelationType::EqSum3: return {1, -1, -1, -1};
        case RelationType::Sum4Zero: return {1, 1, 1, 1};
    }
    return {};
}

// floor(sqrt(x) * 2^bits) / 2^bits for x >= 0.
Rational dyadic_sqrt_floor(const Rational& x, unsigned long bits) {
    Integer scaled_num = x.get_num() << (2 * bits);
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), x.get_den_mpz_t());
    Integer r;
    mpz_sqrt(r.get_mpz_t(), q.get_mpz_t());
    Rational out(r, Integer(1) << bits);
    out.canonicalize();
    return out;
}

// Exact modulus of the signed sum of enclosure centers, rounded down to 2^-80.
Rational center_residual(std::span<const RootEnclosure> roots, RelationType r, std::span<const int> idx) {
    const auto signs = term_signs(r);
    Rational re = 0, im = 0;
    for (size_t t = 0; t < idx.size(); ++t) {
        const auto& e = roots[static_cast<size_t>(idx[t])];
        if (signs[t] > 0) {
            re += e.re;
            im += e.im;
        } else {
            re -= e.re;
            im -= e.im;
        }
    }
    return dyadic_sqrt_floor(re * re + im * im, 80);
}

// Upper bound for the error of any tuple: the arity largest radii.
Rational tuple_error_bound(std::span<const RootEnclosure> roots, int k) {
    std::vector<Rational> radii;
    radii.reserve(roots.size());
    for (const auto& e : roots) radii.push_back(e.radius);
    std::sort(radii.begin(), radii.end(), [](const Rational& a, const Rational& b) { return a > b; });
    Rational s = 0;
    for (int i = 0; i < k && i < static_cast<int>(radii.size()); ++i) s += radii[static_cast<size_t>(i)];
    return s;
}

std::string format_residual(const Rational& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", r.get_d());
    return buf;
}

}  // namespace

int arity(RelationType r) { return info(r).arity; }
std::string_view tag(RelationType r) { return info(r).tag; }
std::string_view cli_name(RelationType r) { return info(r).cli; }

std::optional<RelationType> parse_relation(std::string_view s) {
    for (const auto& i : kInfo)
        if (s == i.tag || s == i.cli) return i.type;
    return std::nullopt;
}

std::string RelationVerdict::to_line() const {
    std::ostringstream os;
    os << tag(relation) << ' ' << (holds ? 1 : 0) << ' ';
    os << (residual ? format_residual(*residual) : "-") << ' ';
    if (witness) {
        for (size_t i = 0; i < witness->size(); ++i) os << (i ? "," : "") << (*witness)[i];
    } else {
        os << '-';
    }
    return os.str();
}

bool precondition_check(const IntPoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("precondition_check: degree must be >= 1");
    return gcd_primitive(f, f.negate_arg()).is_constant();
}

RelationTester::RelationTester(IntPoly f) : f_(std::move(f)) {
    if (!precondition_check(f_)) throw std::invalid_argument("relation test: gcd(f(x), f(-x)) is not constant");
}

const RelationResultants& RelationTester::resultants() {
    if (!gh_) gh_ = relation_resultants(f_);
    return *gh_;
}

const std::vector<SquarefreePart>& RelationTester::g_parts() {
    if (!g_parts_) g_parts_ = squarefree_decomposition(resultants().g);
    return *g_parts_;
}

const std::vector<SquarefreePart>& RelationTester::h_parts() {
    if (!h_parts_) h_parts_ = squarefree_decomposition(resultants().h);
    return *h_parts_;
}

bool RelationTester::exact_holds(RelationType r) {
    const auto& gh = resultants();
    auto cross_checked = [r](bool via_g, bool via_h) {
        if (via_g != via_h)
            throw std::logic_error(std::string("relation test: g and h criteria disagree for ") + std::string(tag(r)));
        return via_g;
    };
    switch (r) {
        case RelationType::Sum3Zero: return divides_in_Q(f_.negate_arg(), gh.g);
        case RelationType::EqSum2: return cross_checked(divides_in_Q(f_, gh.g), divides_in_Q(f_, gh.h));
        case RelationType::PairEq:
            return cross_checked(max_multiplicity(g_parts()) >= 4, max_multiplicity_excluding_x(h_parts()) >= 2);
        case RelationType::EqSum3: return !gcd_primitive(gh.g, gh.h).is_constant();
        case RelationType::Sum4Zero: return !gcd_primitive(gh.g, gh.g.negate_arg()).is_constant();
    }
    return false;
}

RelationVerdict RelationTester::test(RelationType r) {
    if (f_.degree() < arity(r))
        throw std::invalid_argument("relation test: degree below the number of terms of " + std::string(tag(r)));
    RelationVerdict v;
    v.relation = r;
    v.holds = exact_holds(r);
    if (!v.holds) return v;

    // A true relation leaves a center residual within the summed radii; no
    // false tuple can approach it once the enclosures are small enough.
    for (long bits = 40; bits <= 640; bits *= 2) {
        const auto roots = certified_roots(f_, dyadic(bits));
        const auto scan = min_residual(roots, r);
        if (!scan.found) break;
        const Rational res = center_residual(roots, r, scan.indices);
        if (res > tuple_error_bound(roots, arity(r)) + dyadic(78)) continue;
        std::vector<int> w;
        for (int i : scan.indices) w.push_back(i + 1);
        v.witness = std::move(w);
        v.residual = res;
        return v;
    }
    throw std::logic_error("relation test: no witness tuple found for a relation that holds");
}

RelationVerdict test_relation(const IntPoly& f, RelationType r) {
    if (f.degree() < arity(r))
        throw std::invalid_argument("relation test: degree below the number of terms of " + std::string(tag(r)));
    return RelationTester(f).test(r);
}

ResidualScan min_residual(std::span<const RootEnclosure> roots, RelationType r) {
    std::vector<Cplx> z;
    z.reserve(roots.size());
    for (const auto& e : roots) z.push_back(e.approx());
    ResidualScan best;
    for_each_tuple(std::span<const Cplx>(z), r, [&](std::initializer_list<int> idx, Cplx s) {
        const long double m = std::abs(s);
        if (!best.found || m < best.residual) {
            best.found = true;
            best.residual = m;
            best.indices.assign(idx.begin(), idx.end());
        }
    });
    return best;
}

std::vector<PrefilterResult> numeric_prefilter(const IntPoly& f, std::span<const RelationType> types,
                                               const Rational& threshold, const Rational& root_eps) {
    const auto roots = certified_roots(f, root_eps);
    return numeric_prefilter(roots, types, threshold);
}

std::vector<PrefilterResult> numeric_prefilter(std::span<const RootEnclosure> roots, std::span<const RelationType> types,
                                               const Rational& threshold) {
    std::vector<PrefilterResult> out;
    for (RelationType r : types) {
        if (static_cast<int>(roots.size()) < arity(r))
            throw std::invalid_argument("numeric_prefilter: degree below the number of terms");
        const auto scan = min_residual(roots, r);
        PrefilterResult pr;
        pr.relation = r;
        pr.residual = center_residual(roots, r, scan.indices);
        // The long double scan may pick a tuple whose exact residual is off
        // by a few ulps; 1e-15 covers that and the 2^-80 rounding.
        pr.enclosure_error = tuple_error_bound(roots, arity(r)) + Rational(1, 1000000000000000L);
        pr.flagged = pr.residual < threshold + pr.enclosure_error;
        out.push_back(std::move(pr));
    }
    return out;
}

}  // namespace pisot
