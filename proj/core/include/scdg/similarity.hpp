#pragma once

#include <cstdint>
#include <span>

#include "scdg/family.hpp"
#include "scdg/grd.hpp"
#include "scdg/matrix.hpp"

namespace scdg {

// All scores returned by this header lie in [0, 1] (signed-compatibility
// Bray-Curtis excepted, see BcMode). Zero-denominator conventions: a pair of
// identical empty operands scores 1; a cover with an empty reference set
// scores 0 and raises the matching ScoreDiag flag.

// Number of cells where a == p and b == q. Matrices must share dimensions.
template <typename A, typename B>
std::uint64_t intersect_count(const SquareMatrix<A>& a, const SquareMatrix<B>& b, std::int64_t p,
                              std::int64_t q) {
    require_same_dim(a, b);
    std::uint64_t count = 0;
    const auto ca = a.cells();
    const auto cb = b.cells();
    for (std::size_t idx = 0; idx < ca.size(); ++idx) {
        if (std::int64_t(ca[idx]) == p && std::int64_t(cb[idx]) == q) ++count;
    }
    return count;
}

// Optional out-flags for the degenerate cover cases.
struct ScoreDiag {
    bool degenerate_family = false;  // ID-matrix has no Red cells
    bool empty_sample = false;       // casted sample has no 1 cells
};

// A cover ratio kept as exact integer counts; `full()` is the exact "== 1"
// test, immune to floating-point rounding of the ratio.
struct CoverCounts {
    std::uint64_t covered = 0;
    std::uint64_t total = 0;

    double ratio() const noexcept { return total ? double(covered) / double(total) : 0.0; }
    bool full() const noexcept { return total > 0 && covered == total; }
};

// Fraction of the family's Red cells that the sample's cast covers.
CoverCounts four_to_one_cover(const IdMatrix& family_id, const CastMatrix& sample_cast);
double four_to_one(const IdMatrix& family_id, const CastMatrix& sample_cast,
                   ScoreDiag* diag = nullptr);

// Fraction of the sample's 1 cells that land on the family's Red cells.
CoverCounts one_to_four_cover(const CastMatrix& sample_cast, const IdMatrix& family_id);
double one_to_four(const CastMatrix& sample_cast, const IdMatrix& family_id,
                   ScoreDiag* diag = nullptr);

// |support(a) n support(b)| / |support(a) u support(b)|.
double jaccard(const CastMatrix& a, const CastMatrix& b);
double jaccard_max(const CastMatrix& sample_cast, const FamilyModel& family);
double jaccard_mean(const CastMatrix& sample_cast, const FamilyModel& family);

enum class BcMode {
    kAbsolute,      // 1 - sum|a-b| / sum(a+b); always in [0, 1]
    kSignedCompat,  // 1 - sum(a-b) / sum(a+b); may leave [0, 1]
};

double bray_curtis(const GrdMatrix& a, const GrdMatrix& b, BcMode mode = BcMode::kAbsolute);
double bc_max(const GrdMatrix& sample, const FamilyModel& family, BcMode mode = BcMode::kAbsolute);
double bc_mean(const GrdMatrix& sample, const FamilyModel& family, BcMode mode = BcMode::kAbsolute);

// sum(a*b) / (sum(a^2) + sum(b^2) - sum(a*b)); equals jaccard on binary input.
double tanimoto(const GrdMatrix& a, const GrdMatrix& b);
double tn_max(const GrdMatrix& sample, const FamilyModel& family);

}  // namespace scdg
