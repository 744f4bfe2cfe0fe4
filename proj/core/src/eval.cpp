#include "scdg/eval.hpp"

#include <algorithm>
#include <unordered_map>

#include "scdg/rng.hpp"

namespace scdg {

std::size_t DatasetIndex::malware_count() const noexcept {
    std::size_t count = 0;
    for (const auto& [name, samples] : families) count += samples.size();
    return count;
}

DatasetIndex index_dataset(const std::filesystem::path& root,
                           std::vector<std::string>* warnings) {
    namespace fs = std::filesystem;
    DatasetIndex index;

    const fs::path families_dir = root / "families";
    if (!fs::is_directory(families_dir)) {
        throw Error("dataset has no families directory: " + families_dir.string());
    }

    std::vector<fs::path> family_dirs;
    for (const auto& entry : fs::directory_iterator(families_dir)) {
        if (entry.is_directory()) {
            family_dirs.push_back(entry.path());
        } else if (warnings) {
            warnings->push_back("ignoring stray file " + entry.path().string());
        }
    }
    std::sort(family_dirs.begin(), family_dirs.end());

    for (const auto& dir : family_dirs) {
        std::vector<fs::path> samples;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".grd") {
                samples.push_back(entry.path());
            }
        }
        if (samples.empty()) {
            throw Error("family directory contains no .grd samples: " + dir.string());
        }
        std::sort(samples.begin(), samples.end());
        index.families.emplace(dir.filename().string(), std::move(samples));
    }

    const fs::path benign_dir = root / "benign";
    if (fs::is_directory(benign_dir)) {
        for (const auto& entry : fs::directory_iterator(benign_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".grd") {
                index.benign.push_back(entry.path());
            }
        }
        std::sort(index.benign.begin(), index.benign.end());
    } else if (warnings) {
        warnings->push_back("no benign directory under " + root.string() +
                            "; false-positive rates will be vacuous");
    }
    return index;
}

std::vector<Fold> kfold_split(const DatasetIndex& index, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("k-fold split requires k >= 2");

    std::vector<Fold> folds(static_cast<std::size_t>(k));
    const Rng root(seed);
    for (const auto& [family, samples] : index.families) {
        std::vector<std::filesystem::path> shuffled = samples;
        Rng family_rng = root.split("kfold").split(family);
        deterministic_shuffle(shuffled, family_rng);
        for (std::size_t i = 0; i < shuffled.size(); ++i) {
            folds[i % static_cast<std::size_t>(k)][family].push_back(std::move(shuffled[i]));
        }
    }
    return folds;
}

namespace {

// NP score of one test sample against one fold's trained families;
// lambda-independent so a sweep can re-threshold without re-scoring.
struct SampleScore {
    double np = 0.0;
    bool empty = false;
};

struct FoldScores {
    std::vector<SampleScore> malware;
    std::vector<SampleScore> benign;
};

SampleScore score_sample(const GrdMatrix& sample, std::span<const FamilyModel> families,
                         const EvalOptions& options) {
    DetectOptions detect_options;
    detect_options.lambda = 0.0;  // thresholding happens later
    detect_options.weights = options.weights;
    detect_options.rule = options.rule;
    detect_options.bc_mode = options.bc_mode;
    const Verdict verdict = detect(sample, families, detect_options);
    return SampleScore{verdict.np_score, verdict.empty_sample};
}

std::vector<FoldScores> collect_fold_scores(const DatasetIndex& index,
                                            const EvalOptions& options) {
    if (options.folds < 2) throw std::invalid_argument("evaluation requires folds >= 2");
    options.weights.validate();

    // Load everything once; matrices are small and folds reuse them.
    std::unordered_map<std::string, GrdMatrix> by_path;
    const std::vector<std::string>* group_order =
        options.expected_group_order.empty() ? nullptr : &options.expected_group_order;
    auto load_checked = [&](const std::filesystem::path& path) {
        GrdMatrix matrix = load_grd(path);
        if (group_order && matrix.group_order != *group_order) {
            throw ShapeError(path.string() + " was built under a different group order");
        }
        auto& stored = by_path.emplace(path.string(), std::move(matrix)).first->second;
        if (!group_order) group_order = &stored.group_order;
    };
    for (const auto& [family, samples] : index.families) {
        for (const auto& path : samples) load_checked(path);
    }
    for (const auto& path : index.benign) load_checked(path);

    const std::vector<Fold> folds = kfold_split(index, options.folds, options.seed);

    std::vector<FoldScores> scores(folds.size());
    for (std::size_t fold = 0; fold < folds.size(); ++fold) {
        // Train on the complement of this fold, family by family.
        std::vector<FamilyModel> models;
        for (const auto& [family, all_samples] : index.families) {
            std::vector<GrdMatrix> train_grds;
            std::vector<std::string> train_ids;
            for (std::size_t other = 0; other < folds.size(); ++other) {
                if (other == fold) continue;
                const auto it = folds[other].find(family);
                if (it == folds[other].end()) continue;
                for (const auto& path : it->second) {
                    train_grds.push_back(by_path.at(path.string()));
                    train_ids.push_back(path.stem().string());
                }
            }
            if (train_grds.empty()) continue;  // family too small for this fold
            models.push_back(train_family(family, std::move(train_grds), std::move(train_ids),
                                          options.red_threshold, options.white_threshold));
        }
        if (models.empty()) {
            throw Error("fold " + std::to_string(fold) + " has no trainable families");
        }

        for (const auto& [family, test_samples] : folds[fold]) {
            for (const auto& path : test_samples) {
                scores[fold].malware.push_back(
                    score_sample(by_path.at(path.string()), models, options));
            }
        }
        for (const auto& path : index.benign) {
            scores[fold].benign.push_back(score_sample(by_path.at(path.string()), models, options));
        }
    }
    return scores;
}

bool fires(const SampleScore& score, double lambda) {
    return !score.empty && score.np >= lambda;
}

EvalReport make_report(const std::vector<FoldScores>& scores, double lambda,
                       const EvalOptions& options) {
    EvalReport report;
    report.lambda = lambda;
    report.folds = options.folds;
    report.seed = options.seed;
    report.per_fold.reserve(scores.size());
    for (const auto& fold : scores) {
        FoldCounts counts;
        for (const auto& s : fold.malware) (fires(s, lambda) ? counts.tp : counts.fn)++;
        for (const auto& s : fold.benign) (fires(s, lambda) ? counts.fp : counts.tn)++;
        report.per_fold.push_back(counts);
    }

    if (options.averaging == RateAveraging::kPerFoldMean) {
        // Folds without test samples of a kind do not contribute to that mean.
        double dr_sum = 0.0, fpr_sum = 0.0;
        std::size_t dr_folds = 0, fpr_folds = 0;
        for (const auto& counts : report.per_fold) {
            if (counts.tp + counts.fn > 0) {
                dr_sum += double(counts.tp) / double(counts.tp + counts.fn);
                ++dr_folds;
            }
            if (counts.fp + counts.tn > 0) {
                fpr_sum += double(counts.fp) / double(counts.fp + counts.tn);
                ++fpr_folds;
            }
        }
        report.detection_rate = dr_folds ? dr_sum / double(dr_folds) : 0.0;
        report.false_positive_rate = fpr_folds ? fpr_sum / double(fpr_folds) : 0.0;
    } else {
        std::uint64_t tp = 0, fn = 0, fp = 0, tn = 0;
        for (const auto& counts : report.per_fold) {
            tp += counts.tp;
            fn += counts.fn;
            fp += counts.fp;
            tn += counts.tn;
        }
        report.detection_rate = tp + fn ? double(tp) / double(tp + fn) : 0.0;
        report.false_positive_rate = fp + tn ? double(fp) / double(fp + tn) : 0.0;
    }
    return report;
}

}  // namespace

EvalReport evaluate(const DatasetIndex& index, double lambda, const EvalOptions& options) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda must lie in [0, 1]");
    }
    return make_report(collect_fold_scores(index, options), lambda, options);
}

std::vector<EvalReport> sweep(const DatasetIndex& index, std::span<const double> lambdas,
                              const EvalOptions& options) {
    if (lambdas.empty()) throw std::invalid_argument("sweep requires at least one lambda");
    for (const double lambda : lambdas) {
        if (!(lambda >= 0.0 && lambda <= 1.0)) {
            throw std::invalid_argument("lambda must lie in [0, 1]");
        }
    }
    const std::vector<FoldScores> scores = collect_fold_scores(index, options);
    std::vector<EvalReport> reports;
    reports.reserve(lambdas.size());
    for (const double lambda : lambdas) {
        reports.push_back(make_report(scores, lambda, options));
    }
    return reports;
}

}  // namespace scdg
