// Complete enumeration of Pisot numbers of a fixed degree in an interval.

#pragma once

#include "pisot/rootcert.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace pisot {

/// State of the depth-first search after fixing s_1..s_k.
///
/// theta_lo/theta_hi are dyadic (double) outer bounds for the dominant root;
/// every power sum satisfies s_i - (d-1) < theta^i < s_i + (d-1) on them.
struct SearchNode {
    std::vector<std::int64_t> power_sums;
    std::vector<std::int64_t> elem_syms;
    double theta_lo = 0;
    double theta_hi = 0;
};

struct EnumerateStats {
    std::uint64_t nodes = 0;
    std::uint64_t leaves = 0;
    std::uint64_t exact_tests = 0;
};

struct EnumerateOptions {
    /// Called for every node that survives pruning (tests only; slows the search).
    std::function<void(const SearchNode&)> visit;
    EnumerateStats* stats = nullptr;
};

/// Newton's identities k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} s_i.
/// Empty when some step is not an exact integer division.
std::optional<std::vector<std::int64_t>> newton_e_from_s(std::span<const std::int64_t> s, int d);

/// x^d - e1 x^(d-1) + e2 x^(d-2) - ... + (-1)^d e_d
IntPoly poly_from_elementary(std::span<const std::int64_t> e);

/// All minimal polynomials of Pisot numbers of degree d in iv, sorted by
/// coefficient sequence. iv must lie in [1, inf).
std::vector<PisotRecord> enumerate_pisot(int d, const RationalInterval& iv, const EnumerateOptions& opts = {});

/// Brute force over every monic integer polynomial inside the coefficient
/// box implied by the root moduli; d <= 5 only.
std::vector<PisotRecord> oracle_enumerate(int d, const RationalInterval& iv);

}  // namespace pisot
