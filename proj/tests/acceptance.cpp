// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
//
// Tolerances:
//   criterion 6 residual must round to 6.169e-9 at 4 significant figures,
//   and the brute-force oracle must agree with it within 1e-12.
//   All other criteria are exact.
//
// Set PISOT_ACCEPTANCE_LONG=<max degree> to additionally run the four-term
// census up to that degree and compare with the reference counts.

#include "oracles.hpp"
#include "pisot/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace pisot;

namespace {

IntPoly P(std::initializer_list<long> c) { return IntPoly::from_descending(c); }

std::vector<IntPoly> sorted(std::vector<IntPoly> v) {
    std::sort(v.begin(), v.end(), coeff_less);
    return v;
}

std::vector<IntPoly> polys(const std::vector<PisotRecord>& recs) {
    std::vector<IntPoly> out;
    for (const auto& r : recs) out.push_back(r.poly);
    return out;
}

const std::vector<IntPoly> kCubics = sorted({P({1, 0, -1, -1}), P({1, -1, 0, -1}), P({1, -2, 1, -1}), P({1, -1, -1, -1})});

const std::vector<IntPoly> kSextics = sorted({
    P({1, -1, -1, 0, -1, 0, 1}),  P({1, -1, -1, -1, 0, 0, 1}),   P({1, -2, 1, -2, 1, -1, 1}), P({1, -1, -1, -2, 0, 0, 1}),
    P({1, -1, 0, -1, -1, 0, -1}), P({1, -2, 0, 0, 0, 1, -1}),    P({1, -1, -1, 0, 0, -1, -1}), P({1, 0, -1, -2, -2, -2, -1}),
    P({1, -2, 1, -1, 0, 0, -1}),  P({1, -2, 0, 0, 1, 0, -1}),    P({1, -1, -1, -1, 0, -1, -1}), P({1, -3, 3, -2, 0, 1, -1}),
    P({1, -1, -2, 0, 1, -1, -1}), P({1, -1, -1, -1, -1, -1, -1}),
});

const std::vector<IntPoly> kOctics = sorted({
    P({1, -2, 0, 0, 1, -1, 0, -1, 1}),   P({1, -1, -1, -1, -1, -1, 0, 0, 1}), P({1, -1, -1, -1, -1, 0, 0, 0, 1}),
    P({1, -2, 0, 1, -2, 1, 0, -1, 1}),   P({1, -1, -1, -1, -2, 0, 0, 0, 1}),  P({1, -1, -2, 0, 1, 0, -1, 0, 1}),
    P({1, -2, 0, 0, 0, 0, 0, 1, -1}),    P({1, -1, -1, -1, -1, -1, 0, 0, -1}), P({1, -3, 3, -2, 0, 2, -3, 2, -1}),
    P({1, -1, -1, -1, -1, 0, 0, 1, 1}),  P({1, -2, 0, 1, -1, -1, 1, 0, -1}),  P({1, -1, -2, 0, 1, -1, -1, 1, 1}),
    P({1, -2, 0, 0, 0, 0, 1, 0, -1}),    P({1, -1, -2, -1, 1, 2, 1, -1, -1}), P({1, -2, -1, 3, -1, -2, 2, 0, -1}),
    P({1, -1, -2, -1, 2, 2, 0, -1, -1}), P({1, -2, 0, 0, 0, 1, 0, 0, -1}),    P({1, 0, -2, -3, -2, 0, 2, 2, 1}),
    P({1, -3, 2, 1, -2, 0, 0, 1, -1}),   P({1, -1, -1, -1, -1, -1, -1, -1, -1}),
});

const std::map<int, std::size_t> kThreeCounts{{3, 4}, {4, 4}, {5, 12}, {6, 14}, {7, 24}, {8, 20}};
const std::map<int, std::size_t> kFourCounts{{4, 43}, {5, 162}, {6, 353}, {7, 1075}, {8, 2069}};

const IntPoly kSiegel = P({1, 0, -1, -1});
const IntPoly kQuartic = P({1, -2, 0, 1, -1});

int failures = 0;

void report(int n, bool pass, const std::string& what, const std::string& detail) {
    if (!pass) ++failures;
    std::cout << "CRITERION " << n << ' ' << (pass ? "PASS" : "FAIL") << ": " << what;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
}

std::string counts_detail(const FamilyReport& fr) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, recs] : fr.records) {
        os << (first ? "" : " ") << "d" << d << "=" << recs.size();
        first = false;
    }
    os << " total=" << fr.total_records();
    return os.str();
}

bool counts_match(const FamilyReport& fr, const std::map<int, std::size_t>& want) {
    if (fr.records.size() != want.size()) return false;
    for (const auto& [d, n] : want) {
        auto it = fr.records.find(d);
        if (it == fr.records.end() || it->second.size() != n) return false;
    }
    return true;
}

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

void criterion_1(const FamilyReport& three) {
    const auto t1 = polys(three.records.at(3));
    const auto t2 = polys(three.records.at(6));
    const auto t3 = polys(three.records.at(8));
    const bool pass = t1 == kCubics && t2 == kSextics && t3 == kOctics;
    std::ostringstream os;
    os << "sizes " << t1.size() << "/" << t2.size() << "/" << t3.size();
    report(1, pass, "degree 3, 6, 8 record sets equal the three reference tables", os.str());
}

void criterion_2(const FamilyReport& three) {
    const bool pass = counts_match(three, kThreeCounts) && three.total_records() == 78;
    report(2, pass, "three-term counts 4, 4, 12, 14, 24, 20 (total 78)", counts_detail(three));
}

void criterion_3(const FamilyReport& four) {
    report(3, counts_match(four, kFourCounts), "four-term counts 43, 162, 353, 1075, 2069", counts_detail(four));
}

void criterion_4(const FamilyReport& four) {
    // direct exact tests on every degree-4 candidate
    std::vector<IntPoly> pair_eq, other;
    for (const auto& rec : four.records.at(4)) {
        RelationTester t(rec.poly);
        if (t.test(RelationType::PairEq).holds) pair_eq.push_back(rec.poly);
        if (t.test(RelationType::EqSum3).holds || t.test(RelationType::Sum4Zero).holds) other.push_back(rec.poly);
    }
    const std::vector<IntPoly> want{kQuartic};
    const bool direct = four.records.at(4).size() == 43 && pair_eq == want && other.empty();
    const bool pipeline = four.solutions.at(RelationType::PairEq) == want &&
                          four.solutions.at(RelationType::EqSum3).empty() &&
                          four.solutions.at(RelationType::Sum4Zero).empty();
    std::ostringstream os;
    os << "degree 4: " << pair_eq.size() << " PAIR_EQ, " << other.size() << " other; degrees 4..8: PAIR_EQ "
       << four.solutions.at(RelationType::PairEq).size() << ", EQ_SUM3 " << four.solutions.at(RelationType::EqSum3).size()
       << ", SUM4_ZERO " << four.solutions.at(RelationType::Sum4Zero).size();
    report(4, direct && pipeline, "four-term relations hold only for x^4-2x^3+x-1 (PAIR_EQ)", os.str());
}

void criterion_5(const FamilyReport& three) {
    int octic_hits = 0;
    for (const auto& p : kOctics) octic_hits += test_relation(p, RelationType::Sum3Zero).holds ? 1 : 0;
    const bool pass = three.solutions.at(RelationType::Sum3Zero) == std::vector<IntPoly>{kSiegel} &&
                      three.solutions.at(RelationType::EqSum2).empty() && octic_hits == 0;
    std::ostringstream os;
    os << "SUM3_ZERO " << three.solutions.at(RelationType::Sum3Zero).size() << ", EQ_SUM2 "
       << three.solutions.at(RelationType::EqSum2).size() << ", degree-8 SUM3_ZERO hits " << octic_hits;
    report(5, pass, "three-term relations hold only for x^3-x-1 (SUM3_ZERO)", os.str());
}

void criterion_6() {
    const IntPoly f = P({1, -3, 1, 1, -2, 2, -2, 1, 1, -2, 2, -2, 1, 1, -2, 1});
    const std::vector<RelationType> types{RelationType::PairEq};
    const auto pre = numeric_prefilter(f, types);
    const double r = pre.at(0).residual.get_d();
    char rounded[32];
    std::snprintf(rounded, sizeof rounded, "%.3e", r);
    const double brute = static_cast<double>(oracle::min_pair_eq_residual(f));
    const bool holds = test_relation(f, RelationType::PairEq).holds;
    const bool pass = std::string(rounded) == "6.169e-09" && std::fabs(brute - r) < 1e-12 && pre[0].flagged && !holds;
    std::ostringstream os;
    os << "residual " << rounded << ", oracle " << brute << ", flagged " << pre[0].flagged << ", holds " << holds;
    report(6, pass, "degree-15 near miss: PAIR_EQ residual 0.6169e-8, flagged, not exact", os.str());
}

void criterion_7(const PipelineReport& main_report, int jobs) {
    std::vector<std::string> notes;
    bool pass = true;
    auto note = [&](bool ok, const std::string& s) {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "ok " : "BAD ") + s);
    };

    // (a) enumerate_pisot against the brute-force oracle, d <= 4
    {
        int cases = 0, bad = 0;
        for (int d = 1; d <= 4; ++d)
            for (int i = 0; i < 30; ++i) {
                Rational lo = 1 + Rational(i, 15), hi = lo + Rational(1 + i % 7, 10);
                lo.canonicalize();
                hi.canonicalize();
                const RationalInterval iv{lo, std::min(hi, Rational(3)), i % 2 == 0, i % 3 != 0};
                if (polys(enumerate_pisot(d, iv)) != polys(oracle_enumerate(d, iv))) ++bad;
                ++cases;
            }
        note(bad == 0 && cases >= 100, "oracle equivalence " + std::to_string(cases) + " cases");
    }

    // (b) structural identities of g and h
    {
        std::mt19937_64 rng(101);
        int cases = 0, bad = 0;
        while (cases < 100) {
            const int d = 2 + cases % 5;
            IntPoly f = oracle::random_poly(rng, d, 4, true);
            if (sgn(f[0]) == 0 || !is_squarefree(f)) continue;
            const auto gh = relation_resultants(f);
            const IntPoly sign = IntPoly::constant(d % 2 ? -1 : 1);
            const IntPoly q = quotient_in_Q(gh.g, sign * f.scale_half());
            bool ok = divides_in_Q(sign * f.scale_half(), gh.g);
            for (const auto& sp : squarefree_decomposition(q)) ok = ok && sp.multiplicity % 2 == 0;
            ok = ok && divides_in_Q(IntPoly::monomial(1, d), gh.h);
            ok = ok && gh.h.negate_arg() == (d % 2 ? -gh.h : gh.h);
            ok = ok && gh.g == oracle::product_g(f) && gh.h == oracle::product_h(f);
            bad += ok ? 0 : 1;
            ++cases;
        }
        note(bad == 0, "g/h identities " + std::to_string(cases) + " cases");
    }

    // (c) no monic factor of degree <= d/2 for any accepted record
    {
        std::size_t cases = 0, bad = 0;
        for (const auto& fr : main_report.families)
            for (const auto& [d, recs] : fr.records)
                for (const auto& rec : recs) {
                    if (oracle::small_monic_factor(rec.poly, d / 2)) ++bad;
                    ++cases;
                }
        note(bad == 0 && cases >= 100, "irreducibility " + std::to_string(cases) + " records");
    }

    // (d) shard additivity, d <= 6
    {
        std::mt19937_64 rng(8);
        std::uniform_int_distribution<long> num(1, 193), parts_dist(2, 6);
        int cases = 0, bad = 0;
        for (int d = 2; d <= 6; ++d) {
            const auto whole = polys(enumerate_pisot(d, RationalInterval{1, 3, false, true}));
            for (int t = 0; t < 20; ++t) {
                std::set<Rational> cuts{1, 3};
                const long parts = parts_dist(rng);
                while (static_cast<long>(cuts.size()) < parts + 1) {
                    Rational c(num(rng), 97);
                    c.canonicalize();
                    cuts.insert(1 + c);
                }
                std::vector<IntPoly> joined;
                for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it)
                    for (auto& p : polys(enumerate_pisot(d, RationalInterval{*it, *std::next(it), false, true})))
                        joined.push_back(p);
                if (sorted(joined) != whole) ++bad;
                ++cases;
            }
        }
        note(bad == 0, "shard additivity " + std::to_string(cases) + " partitions");
    }

    // (e) byte-identical reports at 1, 4 and max workers
    {
        PipelineConfig c;
        c.max_degree = 8;
        c.jobs = 1;
        const std::string base = run_pipeline(c).to_json();
        bool ok = base == main_report.to_json();
        for (int j : {4, std::max(jobs, 2)}) {
            c.jobs = j;
            ok = ok && run_pipeline(c).to_json() == base;
        }
        note(ok, "determinism at 1/4/" + std::to_string(std::max(jobs, 2)) + " workers");
    }

    // (f) solution sets with and without the combinatorial degree restriction
    {
        PipelineConfig c;
        c.max_degree = 8;
        c.jobs = jobs;
        c.use_combinatorial = false;
        const auto loose = run_pipeline(c);
        bool ok = true;
        for (const auto& fr : main_report.families)
            for (const auto& [r, sols] : fr.solutions) ok = ok && loose.find(fr.family)->solutions.at(r) == sols;
        note(ok, "filter independence");
    }

    std::string detail;
    for (const auto& s : notes) detail += (detail.empty() ? "" : "; ") + s;
    report(7, pass, "property suites", detail);
}

void criterion_8(int jobs) {
    const char* env = std::getenv("PISOT_ACCEPTANCE_LONG");
    std::string statement =
        "the degree-18 census and the 489-survivor split need CPU-weeks (degree 17 alone took 13 days 17 h in the "
        "reference run) and are not part of the gated suite";
    if (!env || !*env) {
        report(8, true, "non-reproducibility statement", statement + "; opt in with PISOT_ACCEPTANCE_LONG=<degree>");
        return;
    }
    const int max_degree = std::atoi(env);
    PipelineConfig c;
    c.families = {Family::Four};
    c.max_degree = max_degree;
    c.jobs = jobs;
    const auto rep = run_pipeline(c);
    const auto want = reference::four_term_counts();
    bool pass = true;
    for (const auto& [d, recs] : rep.find(Family::Four)->records) pass = pass && want.count(d) && want.at(d) == recs.size();
    report(8, pass, "long mode: four-term census to degree " + std::to_string(max_degree),
           counts_detail(*rep.find(Family::Four)) + "; " + statement);
}

}  // namespace

int main() {
    const int jobs = default_jobs();
    const auto t0 = std::chrono::steady_clock::now();
    PipelineReport main_report;
    try {
        PipelineConfig c;
        c.max_degree = 8;
        c.jobs = jobs;
        main_report = run_pipeline(c);
    } catch (const std::exception& e) {
        std::cout << "pipeline failed: " << e.what() << std::endl;
        for (int n = 1; n <= 8; ++n) report(n, false, "not evaluated", "pipeline error");
        return 1;
    }
    std::cout << "pipeline to degree 8 with " << jobs << " workers: " << seconds(t0) << " s" << std::endl;

    const FamilyReport& three = *main_report.find(Family::Three);
    const FamilyReport& four = *main_report.find(Family::Four);
    criterion_1(three);
    criterion_2(three);
    criterion_3(four);
    criterion_4(four);
    criterion_5(three);
    criterion_6();
    criterion_7(main_report, jobs);
    criterion_8(jobs);
    std::cout << "total " << seconds(t0) << " s, " << failures << " failing" << std::endl;
    return failures == 0 ? 0 : 1;
}
