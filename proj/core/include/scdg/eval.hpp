#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "scdg/detector.hpp"
#include "scdg/groups.hpp"

namespace scdg {

// Enumeration of an on-disk dataset: `root/families/<name>/*.grd` plus
// `root/benign/*.grd`. Paths are sorted, so an index is deterministic.
struct DatasetIndex {
    std::map<std::string, std::vector<std::filesystem::path>> families;
    std::vector<std::filesystem::path> benign;

    std::size_t malware_count() const noexcept;
};

// Throws Error when `root/families` is missing or a family directory holds
// no samples; a missing benign directory only warns.
DatasetIndex index_dataset(const std::filesystem::path& root,
                           std::vector<std::string>* warnings = nullptr);

// One fold's test portion, per family.
using Fold = std::map<std::string, std::vector<std::filesystem::path>>;

// Stratified split: each family's samples are shuffled (seeded) and dealt
// round-robin into k buckets. Benign samples are not folded -- they are never
// trained on and are evaluated against every fold's models. Throws
// std::invalid_argument when k < 2.
std::vector<Fold> kfold_split(const DatasetIndex& index, int k, std::uint64_t seed);

struct FoldCounts {
    std::uint64_t tp = 0;
    std::uint64_t fn = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
};

struct EvalReport {
    double lambda = kDefaultLambda;
    int folds = 5;
    std::uint64_t seed = 0;
    std::vector<FoldCounts> per_fold;
    double detection_rate = 0.0;       // TP / (TP + FN)
    double false_positive_rate = 0.0;  // FP / (FP + TN)
};

enum class RateAveraging {
    kPerFoldMean,  // compute each fold's rate, then average the rates
    kPooled,       // sum counts across folds, then one rate
};

struct EvalOptions {
    int folds = 5;
    std::uint64_t seed = 0;
    NpWeights weights{};
    VerdictRule rule = VerdictRule::kFilterThenDecide;
    BcMode bc_mode = BcMode::kAbsolute;
    RateAveraging averaging = RateAveraging::kPerFoldMean;
    double red_threshold = kDefaultRedThreshold;
    double white_threshold = kDefaultWhiteThreshold;
    // When non-empty, every loaded sample must have been built under exactly
    // this group order; otherwise the first sample's order is the reference.
    std::vector<std::string> expected_group_order;
};

// Cross-validated detection run: per fold, train family models on the other
// k-1 buckets (families with no training members in a fold are skipped),
// detect the fold's malware samples and all benign samples, then reduce the
// confusion counts. Deterministic given (index contents, options, lambda).
EvalReport evaluate(const DatasetIndex& index, double lambda, const EvalOptions& options = {});

// Threshold sweep sharing one set of scores: folds are split once, every
// sample is scored once, and each lambda only re-thresholds those scores.
std::vector<EvalReport> sweep(const DatasetIndex& index, std::span<const double> lambdas,
                              const EvalOptions& options = {});

// Parameters of the synthetic corpus generator. Each family draws a base
// matrix (cells present with edge_density, weights uniform in
// [weight_min, weight_max]); members copy the base, resample each cell from
// the base distribution with probability mutation_rate, then jitter present
// weights by up to +-weight_jitter (floored at 1). Benign samples are fresh
// independent draws with no family base.
struct SynthSpec {
    int family_count = 10;
    int members_per_family = 20;
    double edge_density = 0.12;
    std::uint32_t weight_min = 5;
    std::uint32_t weight_max = 15;
    double mutation_rate = 0.0;   // per-cell resampling probability
    std::uint32_t weight_jitter = 0;
    int benign_count = 50;
    std::uint64_t seed = 0;

    // Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

// Materializes a corpus under `out_dir` in the dataset layout above and
// returns its index. Same spec + same group names => byte-identical files.
DatasetIndex synth_generate(const SynthSpec& spec, const std::vector<std::string>& group_names,
                            const std::filesystem::path& out_dir);

// TSV report: header `lambda fold tp fn fp tn detection_rate fp_rate`, one
// row per fold when `per_fold_rows` plus an `avg` row per report (counts
// summed, rates reduced per the report). All reals use 6 decimal places.
void write_report_tsv(std::ostream& out, std::span<const EvalReport> reports, bool per_fold_rows);

// Two-column human-readable summary (threshold -> detection rate / false
// positives, as percentages).
void write_report_summary(std::ostream& out, std::span<const EvalReport> reports);

// Fixed 6-decimal formatting used for all numeric CLI output.
std::string format_fixed6(double value);

}  // namespace scdg
