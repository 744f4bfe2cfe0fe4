// scdg: command-line front end for the system-call dependency graph
// malware detection pipeline. Subcommands: build-grd, train, detect,
// evaluate, sweep, synth.
//
// Exit codes: 0 success (detect: benign), 10 detect verdict is malware,
// anything else is an operational failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scdg/scdg.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitMalware = 10;

struct RunConfig {
    std::string groups_file;
    double lambda = scdg::kDefaultLambda;
    int folds = 5;
    std::uint64_t seed = 0;
    std::string weights_csv;
    std::string verdict_rule = "filter-then-decide";
    std::string bc_mode = "absolute";
    std::string output;
};

scdg::NpWeights parse_weights(const std::string& csv) {
    scdg::NpWeights weights;
    if (csv.empty()) return weights;
    std::istringstream in(csv);
    char comma = ',';
    if (!(in >> weights.a >> comma >> weights.b >> comma >> weights.c1 >> comma >> weights.c2) ||
        !in.eof()) {
        throw scdg::Error("--weights must be 'a,b,c1,c2'");
    }
    weights.validate();
    return weights;
}

std::vector<double> parse_lambda_list(const std::string& csv) {
    std::vector<double> lambdas;
    std::istringstream in(csv);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        lambdas.push_back(std::stod(token));
    }
    if (lambdas.empty()) throw scdg::Error("--lambdas must list at least one threshold");
    return lambdas;
}

scdg::VerdictRule parse_rule(const std::string& name) {
    return name == "np-argmax" ? scdg::VerdictRule::kNpArgmax
                               : scdg::VerdictRule::kFilterThenDecide;
}

scdg::BcMode parse_bc_mode(const std::string& name) {
    return name == "signed-compat" ? scdg::BcMode::kSignedCompat : scdg::BcMode::kAbsolute;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw scdg::Error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void print_warnings(const std::string& context, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << context << ": " << w << '\n';
}

// Directory name with trailing separators tolerated.
std::string dir_name(const fs::path& dir) {
    fs::path p = dir;
    if (p.filename().empty()) p = p.parent_path();
    return p.filename().string();
}

std::vector<fs::path> sorted_files_with_extension(const fs::path& dir, const char* ext) {
    if (!fs::is_directory(dir)) throw scdg::Error("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ext) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::optional<scdg::GroupMap> maybe_load_groups(const RunConfig& cfg) {
    if (cfg.groups_file.empty()) return std::nullopt;
    return scdg::GroupMap::load(cfg.groups_file);
}

scdg::GroupMap require_groups(const RunConfig& cfg, const char* command) {
    if (cfg.groups_file.empty()) {
        throw scdg::Error(std::string(command) +
                          " needs a grouping table: pass --groups-file or set GRD_GROUPS");
    }
    return scdg::GroupMap::load(cfg.groups_file);
}

void check_group_order(const std::vector<std::string>& order,
                       const std::optional<scdg::GroupMap>& groups, const std::string& what) {
    if (groups && order != groups->group_names()) {
        throw scdg::ShapeError(what + " was built under a different group order than --groups-file");
    }
}

int run_build_grd(const RunConfig& cfg, const std::vector<std::string>& traces, bool fail_fast,
                  bool strict_groups) {
    const scdg::GroupMap groups = require_groups(cfg, "build-grd");
    const auto policy = strict_groups ? scdg::UnknownSyscallPolicy::kError
                                      : scdg::UnknownSyscallPolicy::kSkipWithWarning;
    int failures = 0;
    for (const auto& trace : traces) {
        try {
            const fs::path trace_path(trace);
            std::vector<std::string> warnings;
            const scdg::ScdGraph graph = scdg::parse_trace(read_file(trace_path), &warnings);
            const scdg::GrdMatrix matrix = scdg::build_grd(graph, groups, policy, &warnings);
            print_warnings(trace, warnings);

            fs::path out_path = cfg.output.empty() ? trace_path : fs::path(cfg.output) / trace_path.filename();
            out_path.replace_extension(".grd");
            if (!cfg.output.empty()) fs::create_directories(fs::path(cfg.output));
            scdg::save_grd(out_path, matrix);
        } catch (const std::exception& e) {
            ++failures;
            std::cerr << "error: " << trace << ": " << e.what() << '\n';
            if (fail_fast) return kExitError;
        }
    }
    return failures ? kExitError : kExitOk;
}

int run_train(const RunConfig& cfg, const std::vector<std::string>& family_dirs,
              double red_threshold, double white_threshold) {
    const auto groups = maybe_load_groups(cfg);
    const fs::path out_dir = cfg.output.empty() ? fs::path(".") : fs::path(cfg.output);
    fs::create_directories(out_dir);

    for (const auto& dir : family_dirs) {
        const std::string family_name = dir_name(dir);
        const auto sample_paths = sorted_files_with_extension(dir, ".grd");
        if (sample_paths.empty()) throw scdg::Error("no .grd samples in " + dir);

        std::vector<scdg::GrdMatrix> grds;
        std::vector<std::string> ids;
        for (const auto& path : sample_paths) {
            grds.push_back(scdg::load_grd(path));
            check_group_order(grds.back().group_order, groups, path.string());
            ids.push_back(path.stem().string());
        }
        const scdg::FamilyModel family = scdg::train_family(family_name, std::move(grds),
                                                            std::move(ids), red_threshold,
                                                            white_threshold);
        const fs::path out_path = out_dir / (family_name + ".fam");
        scdg::save_family(out_path, family);
        std::cout << "trained " << family_name << ": " << family.members.size() << " members, "
                  << family.id_matrix.tag_count(scdg::kTagRed) << " red cells -> "
                  << out_path.string() << '\n';
    }
    return kExitOk;
}

int run_detect(const RunConfig& cfg, const std::string& sample_path, const std::string& model_dir) {
    const auto groups = maybe_load_groups(cfg);

    std::vector<scdg::FamilyModel> families;
    for (const auto& path : sorted_files_with_extension(model_dir, ".fam")) {
        families.push_back(scdg::load_family(path));
        check_group_order(families.back().group_order(), groups, path.string());
        if (families.back().group_order() != families.front().group_order()) {
            throw scdg::ShapeError(path.string() + " was built under a different group order");
        }
    }
    if (families.empty()) throw scdg::Error("no .fam models in " + model_dir);

    const scdg::GrdMatrix sample = scdg::load_grd(sample_path);
    check_group_order(sample.group_order, groups, sample_path);
    if (sample.group_order != families.front().group_order()) {
        throw scdg::ShapeError("sample and models were built under different group orders");
    }

    scdg::DetectOptions options;
    options.lambda = cfg.lambda;
    options.weights = parse_weights(cfg.weights_csv);
    options.rule = parse_rule(cfg.verdict_rule);
    options.bc_mode = parse_bc_mode(cfg.bc_mode);
    const scdg::Verdict verdict = scdg::detect(sample, families, options);

    std::cout << (verdict.is_malware ? "MALWARE" : "BENIGN") << ' '
              << (verdict.best_family ? *verdict.best_family : "-") << ' '
              << scdg::format_fixed6(verdict.np_score) << ' '
              << scdg::format_fixed6(verdict.tn_score) << '\n';
    return verdict.is_malware ? kExitMalware : kExitOk;
}

scdg::EvalOptions eval_options_from(const RunConfig& cfg,
                                    const std::optional<scdg::GroupMap>& groups, bool pooled) {
    scdg::EvalOptions options;
    options.folds = cfg.folds;
    options.seed = cfg.seed;
    options.weights = parse_weights(cfg.weights_csv);
    options.rule = parse_rule(cfg.verdict_rule);
    options.bc_mode = parse_bc_mode(cfg.bc_mode);
    options.averaging = pooled ? scdg::RateAveraging::kPooled : scdg::RateAveraging::kPerFoldMean;
    if (groups) options.expected_group_order = groups->group_names();
    return options;
}

void emit_reports(const RunConfig& cfg, std::span<const scdg::EvalReport> reports,
                  bool per_fold_rows) {
    if (cfg.output.empty()) {
        scdg::write_report_tsv(std::cout, reports, per_fold_rows);
        scdg::write_report_summary(std::cerr, reports);
        return;
    }
    std::ofstream out(cfg.output);
    if (!out) throw scdg::Error("cannot write " + cfg.output);
    scdg::write_report_tsv(out, reports, per_fold_rows);
    scdg::write_report_summary(std::cout, reports);
}

int run_evaluate(const RunConfig& cfg, const std::string& dataset_root, bool pooled) {
    const auto groups = maybe_load_groups(cfg);
    std::vector<std::string> warnings;
    const scdg::DatasetIndex index = scdg::index_dataset(dataset_root, &warnings);
    print_warnings(dataset_root, warnings);

    const scdg::EvalReport report =
        scdg::evaluate(index, cfg.lambda, eval_options_from(cfg, groups, pooled));
    emit_reports(cfg, {&report, 1}, /*per_fold_rows=*/true);
    return kExitOk;
}

int run_sweep(const RunConfig& cfg, const std::string& dataset_root, const std::string& lambdas_csv,
              bool pooled) {
    const auto groups = maybe_load_groups(cfg);
    std::vector<std::string> warnings;
    const scdg::DatasetIndex index = scdg::index_dataset(dataset_root, &warnings);
    print_warnings(dataset_root, warnings);

    const std::vector<double> lambdas = parse_lambda_list(lambdas_csv);
    const std::vector<scdg::EvalReport> reports =
        scdg::sweep(index, lambdas, eval_options_from(cfg, groups, pooled));
    emit_reports(cfg, reports, /*per_fold_rows=*/false);
    return kExitOk;
}

scdg::SynthSpec read_synth_spec(const fs::path& path) {
    const nlohmann::json doc = nlohmann::json::parse(read_file(path));
    scdg::SynthSpec spec;
    spec.family_count = doc.value("family_count", spec.family_count);
    spec.members_per_family = doc.value("members_per_family", spec.members_per_family);
    spec.edge_density = doc.value("edge_density", spec.edge_density);
    if (doc.contains("weight_range")) {
        const auto& range = doc.at("weight_range");
        spec.weight_min = range.at(0).get<std::uint32_t>();
        spec.weight_max = range.at(1).get<std::uint32_t>();
    }
    spec.mutation_rate = doc.value("mutation_rate", spec.mutation_rate);
    spec.weight_jitter = doc.value("weight_jitter", spec.weight_jitter);
    spec.benign_count = doc.value("benign_count", spec.benign_count);
    spec.seed = doc.value("seed", spec.seed);
    return spec;
}

int run_synth(const RunConfig& cfg, const std::string& spec_path, const std::string& out_dir) {
    const scdg::GroupMap groups = require_groups(cfg, "synth");
    const scdg::SynthSpec spec = read_synth_spec(spec_path);
    const scdg::DatasetIndex index = scdg::synth_generate(spec, groups.group_names(), out_dir);
    std::cout << "generated " << index.malware_count() << " malware samples in "
              << index.families.size() << " families and " << index.benign.size()
              << " benign samples under " << out_dir << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"system-call dependency graph malware detection toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--groups-file", cfg.groups_file, "syscall grouping table (TSV)")
        ->envname("GRD_GROUPS");
    app.add_option("--lambda", cfg.lambda, "detection threshold in [0,1]")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--folds", cfg.folds, "cross-validation folds")->check(CLI::Range(2, 10000));
    app.add_option("--seed", cfg.seed, "random seed for fold splits");
    app.add_option("--weights", cfg.weights_csv, "NP weights as 'a,b,c1,c2'");
    app.add_option("--verdict-rule", cfg.verdict_rule, "candidate family selection")
        ->check(CLI::IsMember({"filter-then-decide", "np-argmax"}));
    app.add_option("--bc-mode", cfg.bc_mode, "Bray-Curtis variant")
        ->check(CLI::IsMember({"absolute", "signed-compat"}));
    app.add_option("--output", cfg.output, "output file or directory (per subcommand)");

    auto* build = app.add_subcommand("build-grd", "turn .scdep traces into .grd matrices");
    std::vector<std::string> trace_paths;
    bool fail_fast = false, strict_groups = false;
    build->add_option("traces", trace_paths, "trace files")->required();
    build->add_flag("--fail-fast", fail_fast, "stop at the first failing trace");
    build->add_flag("--strict-groups", strict_groups, "unmapped syscalls are errors, not warnings");
    build->fallthrough();

    auto* train = app.add_subcommand("train", "train one .fam model per family directory");
    std::vector<std::string> family_dirs;
    double red_threshold = scdg::kDefaultRedThreshold;
    double white_threshold = scdg::kDefaultWhiteThreshold;
    train->add_option("families", family_dirs, "directories of member .grd files")->required();
    train->add_option("--red-threshold", red_threshold)->check(CLI::Range(0.0, 1.0));
    train->add_option("--white-threshold", white_threshold)->check(CLI::Range(0.0, 1.0));
    train->fallthrough();

    auto* detect_cmd = app.add_subcommand("detect", "classify one .grd sample against models");
    std::string sample_path, model_dir;
    detect_cmd->add_option("sample", sample_path, ".grd sample")->required();
    detect_cmd->add_option("models", model_dir, "directory of .fam models")->required();
    detect_cmd->fallthrough();

    auto* evaluate_cmd = app.add_subcommand("evaluate", "k-fold cross-validated detection rates");
    std::string dataset_root;
    bool pooled = false;
    evaluate_cmd->add_option("dataset", dataset_root, "dataset root")->required();
    evaluate_cmd->add_flag("--pooled", pooled, "pool counts across folds instead of averaging rates");
    evaluate_cmd->fallthrough();

    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate across a list of thresholds");
    std::string sweep_root;
    std::string lambdas_csv = "0.35,0.42,0.51,0.56,0.61,0.67,0.74,0.81";
    bool sweep_pooled = false;
    sweep_cmd->add_option("dataset", sweep_root, "dataset root")->required();
    sweep_cmd->add_option("--lambdas", lambdas_csv, "comma-separated thresholds");
    sweep_cmd->add_flag("--pooled", sweep_pooled, "pool counts across folds");
    sweep_cmd->fallthrough();

    auto* synth_cmd = app.add_subcommand("synth", "generate a seeded synthetic corpus");
    std::string spec_path, synth_out;
    synth_cmd->add_option("spec", spec_path, "JSON generator spec")->required();
    synth_cmd->add_option("out_dir", synth_out, "corpus output directory")->required();
    synth_cmd->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return run_build_grd(cfg, trace_paths, fail_fast, strict_groups);
        if (train->parsed()) return run_train(cfg, family_dirs, red_threshold, white_threshold);
        if (detect_cmd->parsed()) return run_detect(cfg, sample_path, model_dir);
        if (evaluate_cmd->parsed()) return run_evaluate(cfg, dataset_root, pooled);
        if (sweep_cmd->parsed()) return run_sweep(cfg, sweep_root, lambdas_csv, sweep_pooled);
        if (synth_cmd->parsed()) return run_synth(cfg, spec_path, synth_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
