#include "scdg/similarity.hpp"

#include <cstdlib>

namespace scdg {

namespace {

void require_same_groups(const GrdMatrix& a, const GrdMatrix& b) {
    require_same_dim(a.weights, b.weights);
    if (a.group_order != b.group_order) {
        throw ShapeError("matrices were built under different group orders");
    }
}

}  // namespace

CoverCounts four_to_one_cover(const IdMatrix& family_id, const CastMatrix& sample_cast) {
    return CoverCounts{intersect_count(family_id.tags, sample_cast.bits, kTagRed, 1),
                       family_id.tag_count(kTagRed)};
}

double four_to_one(const IdMatrix& family_id, const CastMatrix& sample_cast, ScoreDiag* diag) {
    const CoverCounts cover = four_to_one_cover(family_id, sample_cast);
    if (cover.total == 0 && diag) diag->degenerate_family = true;
    return cover.ratio();
}

CoverCounts one_to_four_cover(const CastMatrix& sample_cast, const IdMatrix& family_id) {
    return CoverCounts{intersect_count(sample_cast.bits, family_id.tags, 1, kTagRed),
                       sample_cast.ones()};
}

double one_to_four(const CastMatrix& sample_cast, const IdMatrix& family_id, ScoreDiag* diag) {
    const CoverCounts cover = one_to_four_cover(sample_cast, family_id);
    if (cover.total == 0 && diag) diag->empty_sample = true;
    return cover.ratio();
}

double jaccard(const CastMatrix& a, const CastMatrix& b) {
    require_same_dim(a.bits, b.bits);
    std::uint64_t both = 0;
    std::uint64_t either = 0;
    const auto ca = a.bits.cells();
    const auto cb = b.bits.cells();
    for (std::size_t i = 0; i < ca.size(); ++i) {
        both += ca[i] & cb[i];
        either += ca[i] | cb[i];
    }
    if (either == 0) return 1.0;  // identical empty supports
    return double(both) / double(either);
}

double jaccard_max(const CastMatrix& sample_cast, const FamilyModel& family) {
    double best = 0.0;
    bool first = true;
    for (const auto& member : family.members) {
        const double score = jaccard(sample_cast, member.cast_bits);
        if (first || score > best) best = score;
        first = false;
    }
    return best;
}

double jaccard_mean(const CastMatrix& sample_cast, const FamilyModel& family) {
    double sum = 0.0;
    for (const auto& member : family.members) {
        sum += jaccard(sample_cast, member.cast_bits);
    }
    return sum / double(family.members.size());
}

double bray_curtis(const GrdMatrix& a, const GrdMatrix& b, BcMode mode) {
    require_same_groups(a, b);
    std::int64_t numerator = 0;
    std::uint64_t denominator = 0;
    const auto ca = a.weights.cells();
    const auto cb = b.weights.cells();
    for (std::size_t i = 0; i < ca.size(); ++i) {
        const std::int64_t diff = std::int64_t(ca[i]) - std::int64_t(cb[i]);
        numerator += mode == BcMode::kAbsolute ? std::abs(diff) : diff;
        denominator += std::uint64_t(ca[i]) + std::uint64_t(cb[i]);
    }
    if (denominator == 0) return 1.0;  // identical empty matrices
    return 1.0 - double(numerator) / double(denominator);
}

double bc_max(const GrdMatrix& sample, const FamilyModel& family, BcMode mode) {
    double best = 0.0;
    bool first = true;
    for (const auto& member : family.members) {
        const double score = bray_curtis(sample, member.grd, mode);
        if (first || score > best) best = score;
        first = false;
    }
    return best;
}

double bc_mean(const GrdMatrix& sample, const FamilyModel& family, BcMode mode) {
    double sum = 0.0;
    for (const auto& member : family.members) {
        sum += bray_curtis(sample, member.grd, mode);
    }
    return sum / double(family.members.size());
}

double tanimoto(const GrdMatrix& a, const GrdMatrix& b) {
    require_same_groups(a, b);
    std::uint64_t dot = 0;
    std::uint64_t norm_a = 0;
    std::uint64_t norm_b = 0;
    const auto ca = a.weights.cells();
    const auto cb = b.weights.cells();
    for (std::size_t i = 0; i < ca.size(); ++i) {
        dot += std::uint64_t(ca[i]) * cb[i];
        norm_a += std::uint64_t(ca[i]) * ca[i];
        norm_b += std::uint64_t(cb[i]) * cb[i];
    }
    const std::uint64_t denominator = norm_a + norm_b - dot;
    if (denominator == 0) return 1.0;  // both all-zero
    return double(dot) / double(denominator);
}

double tn_max(const GrdMatrix& sample, const FamilyModel& family) {
    double best = 0.0;
    bool first = true;
    for (const auto& member : family.members) {
        const double score = tanimoto(sample, member.grd);
        if (first || score > best) best = score;
        first = false;
    }
    return best;
}

}  // namespace scdg
