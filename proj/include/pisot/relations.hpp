// Additive relations among the conjugates of an algebraic integer.
//
// The exact verdicts come from divisibility, multiplicity and gcd tests on
// the resultants g(x) = Res_y[f(x-y), f(y)] and h(x) = Res_y[f(x+y), f(y)].
// Root enclosures are used only for witnesses and for the numeric prefilter.

#pragma once

#include "pisot/polycore.hpp"
#include "pisot/rootcert.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pisot {

enum class RelationType {
    Sum3Zero,  // a1 + a2 + a3 = 0
    EqSum2,    // a1 = a2 + a3
    PairEq,    // a1 + a2 = a3 + a4
    EqSum3,    // a1 = a2 + a3 + a4
    Sum4Zero,  // a1 + a2 + a3 + a4 = 0
};

inline constexpr std::array<RelationType, 5> kAllRelations = {
    RelationType::Sum3Zero, RelationType::EqSum2, RelationType::PairEq, RelationType::EqSum3, RelationType::Sum4Zero};

int arity(RelationType r);
/// "SUM3_ZERO", "EQ_SUM2", ...
std::string_view tag(RelationType r);
/// "sum3zero", "eqsum2", ...
std::string_view cli_name(RelationType r);
/// Accepts either spelling.
std::optional<RelationType> parse_relation(std::string_view s);

struct RelationVerdict {
    RelationType relation = RelationType::Sum3Zero;
    bool holds = false;
    /// 1-based indices into certified_roots order, listed in the order of
    /// the relation's terms; present only when holds.
    std::optional<std::vector<int>> witness;
    std::optional<Rational> residual;

    /// "<tag> <0|1> <residual|-> <i,j,k[,l]|->"
    std::string to_line() const;
};

/// gcd(f(x), f(-x)) is constant.
bool precondition_check(const IntPoly& f);

/// Caches the resultants and their decompositions for one polynomial.
class RelationTester {
public:
    /// Throws std::invalid_argument when the precondition fails.
    explicit RelationTester(IntPoly f);

    RelationVerdict test(RelationType r);
    const IntPoly& f() const { return f_; }
    const RelationResultants& resultants();

private:
    bool exact_holds(RelationType r);
    const std::vector<SquarefreePart>& g_parts();
    const std::vector<SquarefreePart>& h_parts();

    IntPoly f_;
    std::optional<RelationResultants> gh_;
    std::optional<std::vector<SquarefreePart>> g_parts_, h_parts_;
};

/// Exact verdict. Throws std::invalid_argument on a failed precondition or
/// when the degree is below the relation's arity. Disagreement between the
/// paired g- and h-based criteria throws std::logic_error.
RelationVerdict test_relation(const IntPoly& f, RelationType r);

/// Smallest |linear combination| over admissible distinct index tuples.
struct ResidualScan {
    long double residual = 0;
    std::vector<int> indices;  // 0-based, in term order
    bool found = false;
};

ResidualScan min_residual(std::span<const RootEnclosure> roots, RelationType r);

struct PrefilterResult {
    RelationType relation = RelationType::Sum3Zero;
    Rational residual;        // dyadic, from enclosure centers
    Rational enclosure_error;  // summed radii bound added to the threshold
    bool flagged = false;
};

inline Rational default_prefilter_threshold() { return Rational(1, 100000); }
inline Rational default_root_eps() { return Rational(1, 10000000000L); }

std::vector<PrefilterResult> numeric_prefilter(const IntPoly& f, std::span<const RelationType> types,
                                               const Rational& threshold = default_prefilter_threshold(),
                                               const Rational& root_eps = default_root_eps());

/// Same, on precomputed enclosures.
std::vector<PrefilterResult> numeric_prefilter(std::span<const RootEnclosure> roots, std::span<const RelationType> types,
                                               const Rational& threshold);

}  // namespace pisot
