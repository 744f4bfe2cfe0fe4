#include "scdg/detector.hpp"

#include <stdexcept>

namespace scdg {

void NpWeights::validate() const {
    if (!(a > 0.0) || !(b > 0.0) || !(c1 > 0.0) || !(c2 > 0.0)) {
        throw std::invalid_argument("NP weights must all be positive");
    }
    if (c1 < c2) {
        throw std::invalid_argument("NP weights require c1 >= c2");
    }
}

double cover_component(const IdMatrix& family_id, const CastMatrix& sample_cast,
                       const NpWeights& weights) {
    const CoverCounts family_to_test = four_to_one_cover(family_id, sample_cast);
    const CoverCounts test_to_family = one_to_four_cover(sample_cast, family_id);
    if (family_to_test.full() && test_to_family.full()) {
        return weights.c1 * (weights.a + weights.b);
    }
    const double phi =
        weights.a * family_to_test.ratio() + weights.b * test_to_family.ratio();
    return weights.c2 * phi;
}

double jaccard_component(const CastMatrix& sample_cast, const FamilyModel& family,
                         const NpWeights& weights) {
    return weights.a * jaccard_max(sample_cast, family) +
           weights.b * jaccard_mean(sample_cast, family);
}

double bray_curtis_component(const GrdMatrix& sample, const FamilyModel& family,
                             const NpWeights& weights, BcMode bc_mode) {
    return weights.a * bc_max(sample, family, bc_mode) +
           weights.b * bc_mean(sample, family, bc_mode);
}

double np_similarity(const GrdMatrix& sample, const FamilyModel& family, const NpWeights& weights,
                     BcMode bc_mode) {
    weights.validate();
    if (!sample.has_edges()) return 0.0;

    const CastMatrix sample_cast = cast(sample);
    const double f1 = cover_component(family.id_matrix, sample_cast, weights);
    const double f2 = jaccard_component(sample_cast, family, weights);
    const double f3 = bray_curtis_component(sample, family, weights, bc_mode);
    return f1 * f2 * f3 / weights.q();
}

Verdict detect(const GrdMatrix& sample, std::span<const FamilyModel> families,
               const DetectOptions& options) {
    if (families.empty()) throw std::invalid_argument("detect requires at least one family");
    if (!(options.lambda >= 0.0 && options.lambda <= 1.0)) {
        throw std::invalid_argument("lambda must lie in [0, 1]");
    }
    options.weights.validate();

    Verdict verdict;
    verdict.empty_sample = !sample.has_edges();
    verdict.per_family.reserve(families.size());
    for (const auto& family : families) {
        FamilyScore score;
        score.family = family.name;
        score.np = np_similarity(sample, family, options.weights, options.bc_mode);
        score.tn_max = tn_max(sample, family);
        verdict.per_family.push_back(std::move(score));
    }

    // Edge-free samples carry no behavior to match; benign at any lambda.
    if (verdict.empty_sample) return verdict;

    const FamilyScore* best = nullptr;
    if (options.rule == VerdictRule::kFilterThenDecide) {
        double max_tn = 0.0;
        for (const auto& score : verdict.per_family) {
            if (score.tn_max > max_tn) max_tn = score.tn_max;
        }
        for (const auto& score : verdict.per_family) {
            if (score.tn_max != max_tn) continue;
            if (!best || score.np > best->np ||
                (score.np == best->np && score.family < best->family)) {
                best = &score;
            }
        }
    } else {
        for (const auto& score : verdict.per_family) {
            if (!best || score.np > best->np ||
                (score.np == best->np && score.family < best->family)) {
                best = &score;
            }
        }
    }

    verdict.best_family = best->family;
    verdict.np_score = best->np;
    verdict.tn_score = best->tn_max;
    verdict.is_malware = best->np >= options.lambda;
    return verdict;
}

}  // namespace scdg
