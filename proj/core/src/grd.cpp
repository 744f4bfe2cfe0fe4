#include "scdg/grd.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace scdg {

std::uint64_t GrdMatrix::total_weight() const noexcept {
    const auto cells = weights.cells();
    return std::accumulate(cells.begin(), cells.end(), std::uint64_t{0});
}

std::uint64_t CastMatrix::ones() const noexcept {
    const auto cells = bits.cells();
    return std::accumulate(cells.begin(), cells.end(), std::uint64_t{0});
}

GrdMatrix build_grd(const ScdGraph& graph, const GroupMap& groups, UnknownSyscallPolicy policy,
                    std::vector<std::string>* warnings) {
    const std::size_t n = groups.group_count();
    GrdMatrix matrix{SquareMatrix<std::uint32_t>(n), groups.group_names()};

    // id -> group index; nullopt marks an ungroupable call
    std::unordered_map<std::uint32_t, std::optional<std::size_t>> group_of_id;
    std::set<std::string> unknown_names;  // ordered so warnings are deterministic
    for (const auto& call : graph.calls) {
        const auto group = groups.group_of(call.name);
        if (!group) {
            if (policy == UnknownSyscallPolicy::kError) {
                throw Error("syscall '" + call.name + "' is not present in the group map");
            }
            unknown_names.insert(call.name);
        }
        group_of_id.emplace(call.id, group);
    }
    if (warnings) {
        for (const auto& name : unknown_names) {
            warnings->push_back("unknown syscall '" + name + "' skipped (not in group map)");
        }
    }

    for (const auto& edge : graph.edges) {
        const auto src = group_of_id.at(edge.src_id);
        const auto dst = group_of_id.at(edge.dst_id);
        if (src && dst) ++matrix.weights(*src, *dst);
    }
    return matrix;
}

CastMatrix cast(const GrdMatrix& matrix) {
    CastMatrix result{SquareMatrix<std::uint8_t>(matrix.dim())};
    const auto weights = matrix.weights.cells();
    const auto bits = result.bits.cells();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        bits[i] = weights[i] > 0 ? 1 : 0;
    }
    return result;
}

namespace {

constexpr int kGrdVersion = 1;

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
    return out;
}

std::string read_line_or_throw(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError(std::string("truncated file: missing ") + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

void write_grd(std::ostream& out, const GrdMatrix& matrix) {
    if (matrix.group_order.size() != matrix.dim()) {
        throw ShapeError("group order size does not match matrix dimension");
    }
    out << "GRD " << kGrdVersion << ' ' << matrix.dim() << '\n';
    for (std::size_t i = 0; i < matrix.group_order.size(); ++i) {
        if (i) out << '\t';
        out << matrix.group_order[i];
    }
    out << '\n';
    for (std::size_t row = 0; row < matrix.dim(); ++row) {
        for (std::size_t col = 0; col < matrix.dim(); ++col) {
            if (col) out << ' ';
            out << matrix.weights(row, col);
        }
        out << '\n';
    }
}

GrdMatrix read_grd(std::istream& in) {
    std::string magic;
    int version = 0;
    std::size_t n = 0;
    {
        std::istringstream header(read_line_or_throw(in, "header"));
        if (!(header >> magic >> version >> n) || magic != "GRD") {
            throw FormatError("not a GRD file (bad header)");
        }
        if (version != kGrdVersion) {
            throw FormatError("unsupported GRD version " + std::to_string(version));
        }
    }

    GrdMatrix matrix{SquareMatrix<std::uint32_t>(n), split_tabs(read_line_or_throw(in, "group names"))};
    if (matrix.group_order.size() != n) {
        throw FormatError("GRD header declares " + std::to_string(n) + " groups but names line has " +
                          std::to_string(matrix.group_order.size()));
    }
    for (std::size_t row = 0; row < n; ++row) {
        std::istringstream cells(read_line_or_throw(in, "matrix row"));
        for (std::size_t col = 0; col < n; ++col) {
            std::int64_t value = 0;
            if (!(cells >> value) || value < 0) {
                throw FormatError("bad weight at row " + std::to_string(row) + ", column " +
                                  std::to_string(col));
            }
            matrix.weights(row, col) = static_cast<std::uint32_t>(value);
        }
        std::string rest;
        if (cells >> rest) {
            throw FormatError("row " + std::to_string(row) + " has more than " + std::to_string(n) +
                              " columns");
        }
    }
    return matrix;
}

void save_grd(const std::filesystem::path& path, const GrdMatrix& matrix) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    write_grd(out, matrix);
    if (!out) throw Error("write failed: " + path.string());
}

GrdMatrix load_grd(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    try {
        return read_grd(in);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace scdg
