#include "pisot/pipeline.hpp"

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace pisot {

namespace {

// RAII wrapper for an MPFR variable at a fixed precision.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

Rational to_rational(const Mpfr& x) {
    Integer m;
    const long e = mpfr_get_z_2exp(m.get_mpz_t(), x.get());
    Rational r(m);
    if (e >= 0) {
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return r;
}

void set_tau(Mpfr& t, mpfr_rnd_t rnd) {
    mpfr_sqrt_ui(t.get(), 5, rnd);
    mpfr_add_ui(t.get(), t.get(), 1, rnd);
    mpfr_div_2ui(t.get(), t.get(), 1, rnd);
}

// Bounds of log(tau), rounded outward.
void log_tau(Mpfr& lo, Mpfr& hi) {
    set_tau(lo, MPFR_RNDD);
    mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
    set_tau(hi, MPFR_RNDU);
    mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
}

Integer floor_of(const Mpfr& x) {
    Integer z;
    Mpfr f(mpfr_get_prec(x.get()));
    mpfr_floor(f.get(), x.get());
    mpfr_get_z(z.get_mpz_t(), f.get(), MPFR_RNDN);
    return z;
}

Rational floor_dyadic(const Rational& x, unsigned long bits) {
    Rational scaled = x;
    mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), bits);
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Rational r(f);
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), bits);
    return r;
}

void check_terms(int terms) {
    if (terms != 3 && terms != 4) throw std::invalid_argument("degree bound is defined for 3 or 4 terms only");
}

// F_n and F_(n-1) for n >= 1.
std::pair<Integer, Integer> fibonacci_pair(long n) {
    Integer a = 0, b = 1;  // F_0, F_1
    for (long i = 1; i < n; ++i) {
        Integer c = a + b;
        a = std::move(b);
        b = std::move(c);
    }
    return {b, a};
}

Rational rpow(const Rational& x, long e) {
    Rational r = 1;
    for (long i = 0; i < e; ++i) r *= x;
    return r;
}

std::string rational_string(const Rational& q) { return q.get_str(); }

// Runs fn(i) for i in [0, n) on up to `jobs` threads; rethrows the first error.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (!failed.load()) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed = true;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string poly_line(const IntPoly& p) { return std::to_string(p.degree()) + " " + format_poly(p); }

}  // namespace

// ---------------------------------------------------------------------------
// Bounds and intervals

int degree_bound(int terms, const Rational& alpha_max) {
    check_terms(terms);
    if (alpha_max <= 1) throw std::invalid_argument("degree_bound: alpha_max must exceed 1");
    // tau^q is irrational for rational q != 0, so the quotient is never an
    // integer and the two floors agree at some finite precision.
    for (mpfr_prec_t prec = 64; prec <= (1 << 16); prec *= 2) {
        Mpfr la_lo(prec), la_hi(prec), lt_lo(prec), lt_hi(prec), lo(prec), hi(prec);
        mpfr_set_q(la_lo.get(), alpha_max.get_mpq_t(), MPFR_RNDD);
        mpfr_log(la_lo.get(), la_lo.get(), MPFR_RNDD);
        mpfr_set_q(la_hi.get(), alpha_max.get_mpq_t(), MPFR_RNDU);
        mpfr_log(la_hi.get(), la_hi.get(), MPFR_RNDU);
        log_tau(lt_lo, lt_hi);
        mpfr_mul_ui(lo.get(), la_lo.get(), static_cast<unsigned long>(2 * terms), MPFR_RNDD);
        mpfr_div(lo.get(), lo.get(), lt_hi.get(), MPFR_RNDD);
        mpfr_mul_ui(hi.get(), la_hi.get(), static_cast<unsigned long>(2 * terms), MPFR_RNDU);
        mpfr_div(hi.get(), hi.get(), lt_lo.get(), MPFR_RNDU);
        Integer a = floor_of(lo), b = floor_of(hi);
        if (a == b) return static_cast<int>(a.get_si());
    }
    throw std::runtime_error("degree_bound: precision limit reached");
}

int degree_bound(int terms, const GoldenPower& alpha_max) {
    check_terms(terms);
    if (alpha_max.den <= 0 || alpha_max.num <= 0) throw std::invalid_argument("degree_bound: alpha_max must exceed 1");
    return static_cast<int>((2L * terms * alpha_max.num) / alpha_max.den);
}

std::pair<Rational, Rational> golden_power_enclosure(long num, long den, const Rational& width) {
    if (num <= 0 || den <= 0) throw std::invalid_argument("golden_power_enclosure: exponent must be positive");
    for (mpfr_prec_t prec = 64; prec <= (1 << 16); prec *= 2) {
        Mpfr lo(prec), hi(prec), hi_unused(prec), lo_unused(prec);
        log_tau(lo, hi_unused);
        log_tau(lo_unused, hi);
        mpfr_mul_ui(lo.get(), lo.get(), static_cast<unsigned long>(num), MPFR_RNDD);
        mpfr_div_ui(lo.get(), lo.get(), static_cast<unsigned long>(den), MPFR_RNDD);
        mpfr_exp(lo.get(), lo.get(), MPFR_RNDD);
        mpfr_mul_ui(hi.get(), hi.get(), static_cast<unsigned long>(num), MPFR_RNDU);
        mpfr_div_ui(hi.get(), hi.get(), static_cast<unsigned long>(den), MPFR_RNDU);
        mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
        Rational a = to_rational(lo), b = to_rational(hi);
        if (b - a <= width) return {a, b};
    }
    throw std::runtime_error("golden_power_enclosure: precision limit reached");
}

int compare_theta_golden(const PisotRecord& rec, long num, long den) {
    if (num <= 0 || den <= 0) throw std::invalid_argument("compare_theta_golden: exponent must be positive");
    Rational lo = rec.theta.re - rec.theta.radius;
    Rational hi = rec.theta.re + rec.theta.radius;
    if (lo <= 1) throw std::invalid_argument("compare_theta_golden: theta must exceed 1");
    const auto [fn, fn1] = fibonacci_pair(num);
    for (unsigned long bits = 64; bits <= (1UL << 14); bits *= 2) {
        // s/2^bits <= sqrt(5) < (s+1)/2^bits
        Integer five = Integer(5) << (2 * bits), s;
        mpz_sqrt(s.get_mpz_t(), five.get_mpz_t());
        Rational unit(Integer(1), Integer(1) << (bits + 1));
        Rational tau_lo = Rational((Integer(1) << bits) + s) * unit;
        Rational tau_hi = Rational((Integer(1) << bits) + s + 1) * unit;
        const Rational t_lo = fn * tau_lo + fn1, t_hi = fn * tau_hi + fn1;
        const Rational th_lo = rpow(lo, den), th_hi = rpow(hi, den);
        if (th_lo > t_hi) return 1;
        if (th_hi < t_lo) return -1;
        if (hi > lo) refine_real_root(rec.poly, lo, hi, (hi - lo) * dyadic(32));
    }
    // theta^den = tau^num forces degree 2; the callers only see degree >= 3.
    throw std::logic_error("compare_theta_golden: comparison did not separate");
}

bool TargetInterval::contains(const PisotRecord& rec) const {
    return compare_theta_golden(rec, degree, 2L * terms) > 0 && compare_theta(rec, alpha_max) < 0;
}

std::string TargetInterval::describe() const {
    long num = degree, den = 2L * terms;
    const long g = std::gcd(num, den);
    num /= g;
    den /= g;
    std::string left = den == 1 ? (num == 1 ? "tau" : "tau^" + std::to_string(num))
                                : "tau^(" + std::to_string(num) + "/" + std::to_string(den) + ")";
    return "(" + left + ", " + rational_string(alpha_max) + ")";
}

TargetInterval target_interval(int d, int terms, const Rational& alpha_max) {
    const int bound = degree_bound(terms, alpha_max);
    if (d < 1 || d > bound)
        throw std::invalid_argument("target_interval: degree " + std::to_string(d) + " outside 1.." + std::to_string(bound));
    TargetInterval t;
    t.degree = d;
    t.terms = terms;
    t.alpha_max = alpha_max;
    const auto enc = golden_power_enclosure(d, 2L * terms, dyadic(40));
    t.cover = RationalInterval::open(floor_dyadic(enc.first, 30), alpha_max);
    return t;
}

std::set<int> admissible_degrees(RelationType r, const Rational& alpha_max, bool use_combinatorial) {
    const int k = arity(r);
    const int bound = degree_bound(k, alpha_max);
    auto is_prime = [](int n) {
        if (n < 2) return false;
        for (int q = 2; q * q <= n; ++q)
            if (n % q == 0) return false;
        return true;
    };
    // A constant coefficient vector is allowed when d equals the number of
    // terms and all terms share one sign and sum to zero.
    const bool constant_vector = r == RelationType::Sum3Zero || r == RelationType::Sum4Zero;
    std::set<int> out;
    for (int d = k; d <= bound; ++d) {
        if (is_prime(d) && !(constant_vector && d == k)) continue;
        out.insert(d);
    }
    if (use_combinatorial) {
        std::set<int> allowed;
        if (r == RelationType::Sum3Zero) allowed = {3, 6};
        if (r == RelationType::EqSum2) allowed = {8};
        if (!allowed.empty()) {
            std::set<int> kept;
            std::set_intersection(out.begin(), out.end(), allowed.begin(), allowed.end(), std::inserter(kept, kept.end()));
            out = std::move(kept);
        }
    }
    return out;
}

Rational shard_width(int d, const Rational& base) {
    if (base <= 0) throw std::invalid_argument("shard_width: base must be positive");
    Rational w = base;
    for (int i = 12; i < d; ++i) w /= 3;
    return w;
}

std::vector<ShardJob> shard_plan(const std::set<int>& degrees, const std::map<int, RationalInterval>& intervals,
                                 const Rational& base, const std::string& prefix) {
    std::vector<ShardJob> out;
    for (int d : degrees) {
        auto it = intervals.find(d);
        if (it == intervals.end()) throw std::invalid_argument("shard_plan: no interval for degree " + std::to_string(d));
        const RationalInterval& iv = it->second;
        iv.validate();
        if (iv.is_empty()) continue;
        const Rational w = shard_width(d, base);
        Rational a = iv.lo;
        bool a_open = iv.lo_open;
        for (int s = 0;; ++s) {
            Rational b = a + w;
            ShardJob job;
            job.degree = d;
            char id[64];
            std::snprintf(id, sizeof id, "d%02d-s%05d", d, s);
            job.job_id = prefix + id;
            if (b >= iv.hi) {
                job.interval = RationalInterval{a, iv.hi, a_open, iv.hi_open};
                out.push_back(std::move(job));
                break;
            }
            job.interval = RationalInterval{a, b, a_open, true};
            out.push_back(std::move(job));
            a = b;
            a_open = false;
        }
    }
    return out;
}

std::pair<Rational, Rational> weil_height(const PisotRecord& rec) {
    const Rational lo = rec.theta.re - rec.theta.radius, hi = rec.theta.re + rec.theta.radius;
    if (lo <= 0) throw std::invalid_argument("weil_height: theta enclosure must be positive");
    Mpfr a(128), b(128);
    mpfr_set_q(a.get(), lo.get_mpq_t(), MPFR_RNDD);
    mpfr_log(a.get(), a.get(), MPFR_RNDD);
    mpfr_div_ui(a.get(), a.get(), static_cast<unsigned long>(rec.degree), MPFR_RNDD);
    mpfr_set_q(b.get(), hi.get_mpq_t(), MPFR_RNDU);
    mpfr_log(b.get(), b.get(), MPFR_RNDU);
    mpfr_div_ui(b.get(), b.get(), static_cast<unsigned long>(rec.degree), MPFR_RNDU);
    return {to_rational(a), to_rational(b)};
}

// ---------------------------------------------------------------------------
// Families

std::string_view family_name(Family f) { return f == Family::Three ? "three" : "four"; }
int family_terms(Family f) { return f == Family::Three ? 3 : 4; }
Rational family_alpha_max(Family f) { return f == Family::Three ? Rational(2) : Rational(3); }

std::vector<RelationType> family_relations(Family f) {
    if (f == Family::Three) return {RelationType::Sum3Zero, RelationType::EqSum2};
    return {RelationType::PairEq, RelationType::EqSum3, RelationType::Sum4Zero};
}

std::size_t FamilyReport::total_records() const {
    std::size_t n = 0;
    for (const auto& [d, recs] : records) n += recs.size();
    return n;
}

const FamilyReport* PipelineReport::find(Family f) const {
    for (const auto& fr : families)
        if (fr.family == f) return &fr;
    return nullptr;
}

std::string PipelineReport::to_json() const {
    using nlohmann::ordered_json;
    ordered_json root;
    root["families"] = ordered_json::array();
    for (const auto& fr : families) {
        ordered_json f;
        f["family"] = std::string(family_name(fr.family));
        f["terms"] = fr.terms;
        f["alpha_max"] = rational_string(fr.alpha_max);
        ordered_json degrees = ordered_json::array();
        for (const auto& [d, recs] : fr.records) {
            ordered_json e;
            e["degree"] = d;
            e["interval"] = target_interval(d, fr.terms, fr.alpha_max).describe();
            e["cover_count"] = fr.cover_counts.at(d);
            e["count"] = recs.size();
            degrees.push_back(std::move(e));
        }
        f["degrees"] = std::move(degrees);
        f["total"] = fr.total_records();
        ordered_json rel = ordered_json::array();
        for (RelationType r : fr.relations) {
            ordered_json e;
            e["relation"] = std::string(tag(r));
            e["admissible_degrees"] = fr.admissible.at(r);
            ordered_json surv = ordered_json::array(), sol = ordered_json::array();
            for (const auto& p : fr.survivors.at(r)) surv.push_back(poly_line(p));
            for (const auto& p : fr.solutions.at(r)) sol.push_back(poly_line(p));
            e["survivors"] = std::move(surv);
            e["solutions"] = std::move(sol);
            rel.push_back(std::move(e));
        }
        f["relations"] = std::move(rel);
        root["families"].push_back(std::move(f));
    }
    return root.dump(2) + "\n";
}

std::string PipelineReport::counts_csv() const {
    std::ostringstream os;
    os << "family,degree,cover_count,count\n";
    for (const auto& fr : families)
        for (const auto& [d, recs] : fr.records)
            os << family_name(fr.family) << ',' << d << ',' << fr.cover_counts.at(d) << ',' << recs.size() << '\n';
    return os.str();
}

int default_jobs() {
    if (const char* env = std::getenv("PISOT_JOBS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// ---------------------------------------------------------------------------
// Run

namespace {

namespace fs = std::filesystem;

struct PlannedJob {
    std::size_t family_index;
    ShardJob job;
};

std::string shard_header(const ShardJob& job) {
    return "# " + job.job_id + " " + std::to_string(job.degree) + " " + job.interval.to_string();
}

class Journal {
public:
    Journal(const fs::path& out_dir, bool resume) {
        if (out_dir.empty()) return;
        dir_ = out_dir / "shards";
        path_ = out_dir / "journal.txt";
        if (!resume) {
            fs::remove_all(dir_);
            fs::remove(path_);
        }
        fs::create_directories(dir_);
        std::ifstream in(path_);
        std::string id;
        while (in >> id) done_.insert(id);
    }

    bool enabled() const { return !path_.empty(); }
    bool completed(const std::string& id) const { return done_.count(id) != 0; }

    std::vector<PisotRecord> load(const ShardJob& job) const {
        std::ifstream in(dir_ / (job.job_id + ".txt"));
        if (!in) throw std::runtime_error("job " + job.job_id + ": shard file missing");
        std::string line;
        if (!std::getline(in, line) || line != shard_header(job))
            throw std::runtime_error("job " + job.job_id + ": shard file does not match the current plan");
        std::vector<PisotRecord> out;
        while (std::getline(in, line))
            if (!line.empty()) out.push_back(parse_record_line(line));
        return out;
    }

    void store(const ShardJob& job, const std::vector<PisotRecord>& recs) {
        const fs::path file = dir_ / (job.job_id + ".txt");
        {
            std::ofstream out(file, std::ios::trunc);
            out << shard_header(job) << '\n';
            for (const auto& r : recs) out << r.to_line() << '\n';
            out.flush();
            if (!out) throw std::runtime_error("job " + job.job_id + ": cannot write " + file.string());
        }
        std::lock_guard lock(mutex_);
        std::ofstream j(path_, std::ios::app);
        j << job.job_id << '\n';
        j.flush();
        if (!j) throw std::runtime_error("job " + job.job_id + ": cannot append to " + path_.string());
    }

private:
    fs::path dir_, path_;
    std::set<std::string> done_;
    std::mutex mutex_;
};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

void write_outputs(const PipelineReport& report, const fs::path& dir) {
    fs::create_directories(dir / "records");
    for (const auto& fr : report.families) {
        for (const auto& [d, recs] : fr.records) {
            char name[64];
            std::snprintf(name, sizeof name, "%s_d%02d.txt", std::string(family_name(fr.family)).c_str(), d);
            std::string body;
            for (const auto& r : recs) body += r.to_line() + "\n";
            write_file(dir / "records" / name, body);
        }
    }
    std::string verdicts;
    for (const auto& fr : report.families) {
        const IntPoly* last = nullptr;
        for (const auto& [p, v] : fr.verdicts) {
            if (!last || !(*last == p)) verdicts += poly_line(p) + "\n";
            verdicts += v.to_line() + "\n";
            last = &p;
        }
    }
    write_file(dir / "verdicts.txt", verdicts);
    write_file(dir / "report.json", report.to_json());
    write_file(dir / "counts.csv", report.counts_csv());
    nlohmann::ordered_json t;
    for (const auto& [k, v] : report.timings) t[k] = v;
    t["shards_total"] = report.shards_total;
    t["shards_resumed"] = report.shards_resumed;
    write_file(dir / "timings.json", t.dump(2) + "\n");
}

}  // namespace

PipelineReport run_pipeline(const PipelineConfig& config) {
    const auto t_start = std::chrono::steady_clock::now();
    PipelineReport report;
    std::vector<PlannedJob> plan;

    for (Family fam : config.families) {
        FamilyReport fr;
        fr.family = fam;
        fr.terms = family_terms(fam);
        fr.alpha_max = family_alpha_max(fam);
        fr.relations = family_relations(fam);
        const int lo = std::max(config.min_degree, fr.terms);
        const int hi = std::min(config.max_degree, degree_bound(fr.terms, fr.alpha_max));
        std::set<int> degrees;
        std::map<int, RationalInterval> covers;
        for (int d = lo; d <= hi; ++d) {
            degrees.insert(d);
            covers[d] = target_interval(d, fr.terms, fr.alpha_max).cover;
            fr.records[d];
            fr.cover_counts[d] = 0;
        }
        for (RelationType r : fr.relations) {
            fr.admissible[r] = admissible_degrees(r, fr.alpha_max, config.use_combinatorial);
            fr.survivors[r];
            fr.solutions[r];
        }
        const std::size_t index = report.families.size();
        for (auto& job : shard_plan(degrees, covers, config.shard_base, std::string(family_name(fam)) + "-"))
            plan.push_back({index, std::move(job)});
        report.families.push_back(std::move(fr));
    }

    // Enumeration over shards.
    auto t0 = std::chrono::steady_clock::now();
    Journal journal(config.out_dir, config.resume);
    std::vector<std::vector<PisotRecord>> shard_out(plan.size());
    std::vector<char> resumed(plan.size(), 0);
    parallel_for(plan.size(), config.jobs, [&](std::size_t i) {
        const ShardJob& job = plan[i].job;
        if (journal.enabled() && journal.completed(job.job_id)) {
            shard_out[i] = journal.load(job);
            resumed[i] = 1;
            return;
        }
        shard_out[i] = enumerate_pisot(job.degree, job.interval);
        if (journal.enabled()) journal.store(job, shard_out[i]);
    });
    report.shards_total = plan.size();
    report.shards_resumed = static_cast<std::size_t>(std::count(resumed.begin(), resumed.end(), 1));
    for (const auto& pj : plan) report.journal.push_back(pj.job.job_id);
    report.timings["enumerate"] = seconds_since(t0);

    // Merge and sieve.
    t0 = std::chrono::steady_clock::now();
    std::map<std::pair<std::size_t, int>, std::vector<PisotRecord>> merged;
    for (std::size_t i = 0; i < plan.size(); ++i) {
        auto& bucket = merged[{plan[i].family_index, plan[i].job.degree}];
        for (auto& r : shard_out[i]) bucket.push_back(std::move(r));
    }
    for (auto& [key, recs] : merged) {
        FamilyReport& fr = report.families[key.first];
        std::sort(recs.begin(), recs.end(), record_less);
        if (std::adjacent_find(recs.begin(), recs.end()) != recs.end())
            throw std::logic_error("shards overlap: duplicate record at degree " + std::to_string(key.second));
        fr.cover_counts[key.second] = recs.size();
        const TargetInterval target = target_interval(key.second, fr.terms, fr.alpha_max);
        std::vector<char> keep(recs.size(), 0);
        parallel_for(recs.size(), config.jobs, [&](std::size_t i) { keep[i] = target.contains(recs[i]) ? 1 : 0; });
        auto& out = fr.records[key.second];
        for (std::size_t i = 0; i < recs.size(); ++i)
            if (keep[i]) out.push_back(std::move(recs[i]));
    }
    report.timings["sieve"] = seconds_since(t0);

    // Prefilter, then exact tests on flagged pairs.
    t0 = std::chrono::steady_clock::now();
    double exact_seconds = 0;
    for (auto& fr : report.families) {
        struct Item {
            const PisotRecord* rec;
            std::vector<RelationType> types;
        };
        std::vector<Item> items;
        for (const auto& [d, recs] : fr.records) {
            std::vector<RelationType> types;
            for (RelationType r : fr.relations)
                if (fr.admissible.at(r).count(d) && d >= arity(r)) types.push_back(r);
            if (types.empty()) continue;
            for (const auto& rec : recs) items.push_back({&rec, types});
        }
        std::vector<std::vector<PrefilterResult>> pre(items.size());
        parallel_for(items.size(), config.jobs, [&](std::size_t i) {
            const auto roots = certified_roots(items[i].rec->poly, config.root_eps);
            pre[i] = numeric_prefilter(roots, items[i].types, config.threshold);
        });
        const auto te = std::chrono::steady_clock::now();
        std::vector<std::vector<RelationVerdict>> exact(items.size());
        parallel_for(items.size(), config.jobs, [&](std::size_t i) {
            std::optional<RelationTester> tester;
            for (const auto& pr : pre[i]) {
                if (!pr.flagged) continue;
                if (!tester) tester.emplace(items[i].rec->poly);
                exact[i].push_back(tester->test(pr.relation));
            }
        });
        exact_seconds += seconds_since(te);
        for (std::size_t i = 0; i < items.size(); ++i) {
            for (const auto& pr : pre[i])
                if (pr.flagged) fr.survivors[pr.relation].push_back(items[i].rec->poly);
            for (auto& v : exact[i]) {
                if (v.holds) fr.solutions[v.relation].push_back(items[i].rec->poly);
                fr.verdicts.emplace_back(items[i].rec->poly, std::move(v));
            }
        }
    }
    report.timings["relations"] = seconds_since(t0);
    report.timings["exact"] = exact_seconds;
    report.timings["total"] = seconds_since(t_start);

    if (!config.out_dir.empty()) write_outputs(report, config.out_dir);
    return report;
}

// ---------------------------------------------------------------------------
// Reference tables

namespace reference {

namespace {

IntPoly P(std::initializer_list<long> c) { return IntPoly::from_descending(c); }

}  // namespace

std::vector<IntPoly> three_term_records(int degree) {
    std::vector<IntPoly> v;
    switch (degree) {
        case 3:
            v = {P({1, 0, -1, -1}), P({1, -1, 0, -1}), P({1, -2, 1, -1}), P({1, -1, -1, -1})};
            break;
        case 6:
            v = {P({1, -1, -1, 0, -1, 0, 1}),   P({1, -1, -1, -1, 0, 0, 1}),  P({1, -2, 1, -2, 1, -1, 1}),
                 P({1, -1, -1, -2, 0, 0, 1}),   P({1, -1, 0, -1, -1, 0, -1}), P({1, -2, 0, 0, 0, 1, -1}),
                 P({1, -1, -1, 0, 0, -1, -1}),  P({1, 0, -1, -2, -2, -2, -1}), P({1, -2, 1, -1, 0, 0, -1}),
                 P({1, -2, 0, 0, 1, 0, -1}),    P({1, -1, -1, -1, 0, -1, -1}), P({1, -3, 3, -2, 0, 1, -1}),
                 P({1, -1, -2, 0, 1, -1, -1}),  P({1, -1, -1, -1, -1, -1, -1})};
            break;
        case 8:
            v = {P({1, -2, 0, 0, 1, -1, 0, -1, 1}),   P({1, -1, -1, -1, -1, -1, 0, 0, 1}),
                 P({1, -1, -1, -1, -1, 0, 0, 0, 1}),  P({1, -2, 0, 1, -2, 1, 0, -1, 1}),
                 P({1, -1, -1, -1, -2, 0, 0, 0, 1}),  P({1, -1, -2, 0, 1, 0, -1, 0, 1}),
                 P({1, -2, 0, 0, 0, 0, 0, 1, -1}),    P({1, -1, -1, -1, -1, -1, 0, 0, -1}),
                 P({1, -3, 3, -2, 0, 2, -3, 2, -1}),  P({1, -1, -1, -1, -1, 0, 0, 1, 1}),
                 P({1, -2, 0, 1, -1, -1, 1, 0, -1}),  P({1, -1, -2, 0, 1, -1, -1, 1, 1}),
                 P({1, -2, 0, 0, 0, 0, 1, 0, -1}),    P({1, -1, -2, -1, 1, 2, 1, -1, -1}),
                 P({1, -2, -1, 3, -1, -2, 2, 0, -1}), P({1, -1, -2, -1, 2, 2, 0, -1, -1}),
                 P({1, -2, 0, 0, 0, 1, 0, 0, -1}),    P({1, 0, -2, -3, -2, 0, 2, 2, 1}),
                 P({1, -3, 2, 1, -2, 0, 0, 1, -1}),   P({1, -1, -1, -1, -1, -1, -1, -1, -1})};
            break;
        default: throw std::invalid_argument("no reference record list for degree " + std::to_string(degree));
    }
    std::sort(v.begin(), v.end(), coeff_less);
    return v;
}

std::map<int, std::size_t> three_term_counts() { return {{3, 4}, {4, 4}, {5, 12}, {6, 14}, {7, 24}, {8, 20}}; }

std::map<int, std::size_t> four_term_counts() {
    return {{4, 43},       {5, 162},      {6, 353},      {7, 1075},     {8, 2069},
            {9, 5555},     {10, 9937},    {11, 23410},   {12, 40812},   {13, 85979},
            {14, 140587},  {15, 273851},  {16, 402209},  {17, 630025},  {18, 339116}};
}

}  // namespace reference

namespace {

std::string describe_difference(const std::vector<IntPoly>& got, const std::vector<IntPoly>& want) {
    std::vector<IntPoly> missing, extra;
    std::set_difference(want.begin(), want.end(), got.begin(), got.end(), std::back_inserter(missing), coeff_less);
    std::set_difference(got.begin(), got.end(), want.begin(), want.end(), std::back_inserter(extra), coeff_less);
    std::string s;
    for (const auto& p : missing) s += "missing " + p.to_string() + "; ";
    for (const auto& p : extra) s += "extra " + p.to_string() + "; ";
    return s;
}

TableCheck compare_sets(std::string name, std::vector<IntPoly> got, std::vector<IntPoly> want) {
    std::sort(got.begin(), got.end(), coeff_less);
    std::sort(want.begin(), want.end(), coeff_less);
    TableCheck c;
    c.name = std::move(name);
    c.pass = got == want;
    if (!c.pass) c.detail = describe_difference(got, want);
    return c;
}

TableCheck compare_counts(std::string name, const FamilyReport& fr, const std::map<int, std::size_t>& want) {
    TableCheck c;
    c.name = std::move(name);
    c.pass = true;
    for (const auto& [d, recs] : fr.records) {
        auto it = want.find(d);
        if (it == want.end()) continue;
        if (recs.size() != it->second) {
            c.pass = false;
            c.detail += "degree " + std::to_string(d) + ": got " + std::to_string(recs.size()) + ", expected " +
                        std::to_string(it->second) + "; ";
        }
    }
    return c;
}

}  // namespace

std::vector<TableCheck> verify_reference_tables(const PipelineReport& report) {
    std::vector<TableCheck> out;
    if (const FamilyReport* fr = report.find(Family::Three)) {
        for (int d : {3, 6, 8}) {
            auto it = fr->records.find(d);
            if (it == fr->records.end()) continue;
            std::vector<IntPoly> got;
            for (const auto& r : it->second) got.push_back(r.poly);
            out.push_back(compare_sets("three-term records, degree " + std::to_string(d) + " in " +
                                           target_interval(d, 3, 2).describe(),
                                       got, reference::three_term_records(d)));
        }
        out.push_back(compare_counts("three-term counts per degree", *fr, reference::three_term_counts()));
        if (fr->records.size() == 6 && fr->records.begin()->first == 3) {
            TableCheck c;
            c.name = "three-term total over degrees 3..8";
            c.pass = fr->total_records() == 78;
            if (!c.pass) c.detail = "got " + std::to_string(fr->total_records()) + ", expected 78";
            out.push_back(std::move(c));
            out.push_back(compare_sets("SUM3_ZERO solutions", fr->solutions.at(RelationType::Sum3Zero),
                                       {IntPoly::from_descending({1, 0, -1, -1})}));
            out.push_back(compare_sets("EQ_SUM2 solutions", fr->solutions.at(RelationType::EqSum2), {}));
        }
    }
    if (const FamilyReport* fr = report.find(Family::Four)) {
        out.push_back(compare_counts("four-term counts per degree", *fr, reference::four_term_counts()));
        if (fr->records.count(4)) {
            out.push_back(compare_sets("PAIR_EQ solutions", fr->solutions.at(RelationType::PairEq),
                                       {IntPoly::from_descending({1, -2, 0, 1, -1})}));
            out.push_back(compare_sets("EQ_SUM3 solutions", fr->solutions.at(RelationType::EqSum3), {}));
            out.push_back(compare_sets("SUM4_ZERO solutions", fr->solutions.at(RelationType::Sum4Zero), {}));
        }
    }
    return out;
}

}  // namespace pisot
