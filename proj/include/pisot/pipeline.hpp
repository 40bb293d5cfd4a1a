// Search orchestration: degree bounds, target intervals, sharded parallel
// enumeration, filters, relation tests and reports.

#pragma once

#include "pisot/enumerate.hpp"
#include "pisot/relations.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace pisot {

/// tau^(num/den), tau the golden ratio.
struct GoldenPower {
    long num = 1;
    long den = 1;
};

/// ⌊2·terms·log(alpha_max)/log(tau)⌋ with certified rounding.
/// Throws std::invalid_argument unless terms is 3 or 4 and alpha_max > 1.
int degree_bound(int terms, const Rational& alpha_max);
int degree_bound(int terms, const GoldenPower& alpha_max);

/// Enclosure [lo, hi] of tau^(num/den) with lo, hi rational and hi - lo <= width.
std::pair<Rational, Rational> golden_power_enclosure(long num, long den, const Rational& width);

/// Exact sign of theta - tau^(num/den) for a record with theta > 1, via
/// theta^den against tau^num = F_num tau + F_(num-1).
int compare_theta_golden(const PisotRecord& rec, long num, long den);

/// (tau^(d/(2 terms)), alpha_max): a rational cover plus the exact sieve.
struct TargetInterval {
    int degree = 0;
    int terms = 0;
    Rational alpha_max;
    /// Open interval whose left end is a dyadic lower bound of the true one.
    RationalInterval cover;

    bool contains(const PisotRecord& rec) const;
    /// "(tau^(3/6), 2)"
    std::string describe() const;
};

TargetInterval target_interval(int d, int terms, const Rational& alpha_max);

std::set<int> admissible_degrees(RelationType r, const Rational& alpha_max, bool use_combinatorial);

/// Shard width for degree d: base up to degree 12, base·3^(12-d) above.
Rational shard_width(int d, const Rational& base);

struct ShardJob {
    int degree = 0;
    RationalInterval interval;
    std::string job_id;
};

std::vector<ShardJob> shard_plan(const std::set<int>& degrees, const std::map<int, RationalInterval>& intervals,
                                 const Rational& base = Rational(1, 10), const std::string& prefix = "");

/// Enclosure of log(theta)/d (the Weil height of a Pisot number).
std::pair<Rational, Rational> weil_height(const PisotRecord& rec);

enum class Family { Three, Four };

std::string_view family_name(Family f);  // "three" / "four"
int family_terms(Family f);
Rational family_alpha_max(Family f);
std::vector<RelationType> family_relations(Family f);

struct PipelineConfig {
    std::vector<Family> families{Family::Three, Family::Four};
    int max_degree = 8;
    /// 0 selects the smallest degree of each family.
    int min_degree = 0;
    int jobs = 1;
    bool use_combinatorial = true;
    /// Empty: no files are written and no journal is kept.
    std::filesystem::path out_dir;
    bool resume = false;
    Rational shard_base{1, 10};
    Rational threshold = default_prefilter_threshold();
    Rational root_eps = default_root_eps();
};

struct FamilyReport {
    Family family = Family::Three;
    int terms = 0;
    Rational alpha_max;
    std::vector<RelationType> relations;
    /// Records after the exact sieve, per degree, in canonical order.
    std::map<int, std::vector<PisotRecord>> records;
    /// Records inside the rational cover before the sieve.
    std::map<int, std::size_t> cover_counts;
    std::map<RelationType, std::set<int>> admissible;
    std::map<RelationType, std::vector<IntPoly>> survivors;
    std::map<RelationType, std::vector<IntPoly>> solutions;
    /// One entry per exact test, in report order.
    std::vector<std::pair<IntPoly, RelationVerdict>> verdicts;

    std::size_t total_records() const;
};

struct PipelineReport {
    std::vector<FamilyReport> families;
    std::vector<std::string> journal;  // completed job ids, plan order
    std::size_t shards_total = 0;
    std::size_t shards_resumed = 0;
    std::map<std::string, double> timings;  // seconds

    const FamilyReport* find(Family f) const;
    /// Deterministic JSON (no timings).
    std::string to_json() const;
    std::string counts_csv() const;
};

/// Default worker count: $PISOT_JOBS when set, else hardware concurrency.
int default_jobs();

/// Throws std::runtime_error naming the job id on I/O failure.
PipelineReport run_pipeline(const PipelineConfig& config);

struct TableCheck {
    std::string name;
    bool pass = false;
    /// Empty on success; otherwise the mismatch (symmetric difference or counts).
    std::string detail;
};

/// Compares the report with the embedded reference tables covering the
/// degrees present in it.
std::vector<TableCheck> verify_reference_tables(const PipelineReport& report);

/// Reference data embedded for verification.
namespace reference {
std::vector<IntPoly> three_term_records(int degree);  // degrees 3, 6, 8
std::map<int, std::size_t> three_term_counts();       // degrees 3..8
std::map<int, std::size_t> four_term_counts();        // degrees 4..18
}  // namespace reference

}  // namespace pisot
