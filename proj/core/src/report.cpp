#include <cstdio>
#include <iomanip>
#include <ostream>

#include "scdg/eval.hpp"

namespace scdg {

std::string format_fixed6(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6f", value);
    return buffer;
}

namespace {

double safe_rate(std::uint64_t hit, std::uint64_t total) {
    return total ? double(hit) / double(total) : 0.0;
}

void write_row(std::ostream& out, double lambda, const std::string& fold, const FoldCounts& c,
               double detection_rate, double fp_rate) {
    out << format_fixed6(lambda) << '\t' << fold << '\t' << c.tp << '\t' << c.fn << '\t' << c.fp
        << '\t' << c.tn << '\t' << format_fixed6(detection_rate) << '\t' << format_fixed6(fp_rate)
        << '\n';
}

FoldCounts totals(const EvalReport& report) {
    FoldCounts sum;
    for (const auto& c : report.per_fold) {
        sum.tp += c.tp;
        sum.fn += c.fn;
        sum.fp += c.fp;
        sum.tn += c.tn;
    }
    return sum;
}

}  // namespace

void write_report_tsv(std::ostream& out, std::span<const EvalReport> reports, bool per_fold_rows) {
    out << "lambda\tfold\ttp\tfn\tfp\ttn\tdetection_rate\tfp_rate\n";
    for (const auto& report : reports) {
        if (per_fold_rows) {
            for (std::size_t fold = 0; fold < report.per_fold.size(); ++fold) {
                const FoldCounts& c = report.per_fold[fold];
                write_row(out, report.lambda, std::to_string(fold), c,
                          safe_rate(c.tp, c.tp + c.fn), safe_rate(c.fp, c.fp + c.tn));
            }
        }
        write_row(out, report.lambda, "avg", totals(report), report.detection_rate,
                  report.false_positive_rate);
    }
}

void write_report_summary(std::ostream& out, std::span<const EvalReport> reports) {
    out << std::left << std::setw(14) << "threshold" << std::setw(20) << "detection-rate"
        << "false-positives" << '\n';
    for (const auto& report : reports) {
        out << std::left << std::setw(14) << format_fixed6(report.lambda) << std::setw(20)
            << (format_fixed6(report.detection_rate * 100.0) + " %")
            << (format_fixed6(report.false_positive_rate * 100.0) + " %") << '\n';
    }
}

}  // namespace scdg
