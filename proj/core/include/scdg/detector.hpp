#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scdg/family.hpp"
#include "scdg/grd.hpp"
#include "scdg/similarity.hpp"

namespace scdg {

// Weights of the composite NP score. q() is the maximum attainable product
// of the three components, so with valid weights NP always lands in [0, 1];
// it is derived, never hard-coded, so overridden weights keep that range.
struct NpWeights {
    double a = 4.0;
    double b = 2.0;
    double c1 = 1.5;
    double c2 = 1.2;

    double q() const noexcept { return c1 * (a + b) * (a + b) * (a + b); }  // 324 at defaults

    // Throws std::invalid_argument unless a, b, c1, c2 > 0 and c1 >= c2.
    void validate() const;

    friend bool operator==(const NpWeights&, const NpWeights&) = default;
};

inline constexpr double kDefaultLambda = 0.56;

// How the per-family scores are reduced to one candidate family.
enum class VerdictRule {
    // Tanimoto-max filters the candidate set, NP decides among the
    // survivors; ties on NP break by lexicographic family name.
    kFilterThenDecide,
    // NP decides over all families; Tanimoto is reported but ignored.
    kNpArgmax,
};

struct FamilyScore {
    std::string family;
    double np = 0.0;
    double tn_max = 0.0;
};

struct Verdict {
    bool is_malware = false;
    std::optional<std::string> best_family;
    double np_score = 0.0;
    double tn_score = 0.0;
    bool empty_sample = false;            // sample had no edges; forced benign
    std::vector<FamilyScore> per_family;  // audit trail, one entry per family
};

struct DetectOptions {
    double lambda = kDefaultLambda;
    NpWeights weights{};
    VerdictRule rule = VerdictRule::kFilterThenDecide;
    BcMode bc_mode = BcMode::kAbsolute;
};

// Qualitative component: c1*(a+b) when both covers equal 1 exactly (integer
// comparison, no floating-point branch), else c2*(a*FourToOne + b*OneToFour).
double cover_component(const IdMatrix& family_id, const CastMatrix& sample_cast,
                       const NpWeights& weights);

// Relational component: a*Jmax + b*Jmean over the family members.
double jaccard_component(const CastMatrix& sample_cast, const FamilyModel& family,
                         const NpWeights& weights);

// Quantitative component: a*BCmax + b*BCmean over the family members.
double bray_curtis_component(const GrdMatrix& sample, const FamilyModel& family,
                             const NpWeights& weights, BcMode bc_mode = BcMode::kAbsolute);

// Product of the three components normalized by q(). Samples without edges
// score 0 by convention.
double np_similarity(const GrdMatrix& sample, const FamilyModel& family,
                     const NpWeights& weights = {}, BcMode bc_mode = BcMode::kAbsolute);

// Scores the sample against every family and renders the verdict: the rule
// picks one candidate family and the sample is malware iff its NP score is
// >= lambda (inclusive). Edge-free samples are benign regardless of lambda.
// Throws std::invalid_argument on an empty family list or lambda outside
// [0, 1]; throws ShapeError when dimensions or group orders disagree.
Verdict detect(const GrdMatrix& sample, std::span<const FamilyModel> families,
               const DetectOptions& options = {});

}  // namespace scdg
