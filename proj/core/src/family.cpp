#include "scdg/family.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace scdg {

std::uint64_t IdMatrix::tag_count(std::uint8_t tag) const noexcept {
    const auto cells = tags.cells();
    return static_cast<std::uint64_t>(std::count(cells.begin(), cells.end(), tag));
}

namespace {

void check_thresholds(double red, double white) {
    if (!(white >= 0.0) || !(red <= 1.0) || !(white < red)) {
        throw std::invalid_argument("thresholds must satisfy 0 <= white < red <= 1");
    }
}

std::string double_to_string(double value) {
    char buffer[48];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

bool has_whitespace(std::string_view s) {
    return s.find_first_of(" \t\r\n") != std::string_view::npos;
}

std::string read_line_or_throw(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError(std::string("truncated file: missing ") + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

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

constexpr int kFamVersion = 1;

}  // namespace

IdMatrix build_id_matrix(std::span<const GrdMatrix> members, double red_threshold,
                         double white_threshold) {
    if (members.empty()) throw Error("cannot build an ID-matrix from zero members");
    check_thresholds(red_threshold, white_threshold);

    const std::size_t n = members.front().dim();
    for (const auto& member : members) {
        require_same_dim(member.weights, members.front().weights);
    }

    IdMatrix id;
    id.tags = SquareMatrix<std::uint8_t>(n, kTagWhite);
    id.member_count = members.size();
    id.red_threshold = red_threshold;
    id.white_threshold = white_threshold;

    const std::size_t cell_count = n * n;
    for (std::size_t cell = 0; cell < cell_count; ++cell) {
        std::size_t present = 0;
        for (const auto& member : members) {
            if (member.weights.cells()[cell] > 0) ++present;
        }
        // p is a correctly-rounded small rational, so comparing against the
        // threshold literals is exact at the boundaries (e.g. 1/20 vs 0.05).
        const double p = double(present) / double(members.size());
        std::uint8_t tag = kTagGray;
        if (p >= red_threshold) {
            tag = kTagRed;
        } else if (p <= white_threshold) {
            tag = kTagWhite;
        }
        id.tags.cells()[cell] = tag;
    }
    return id;
}

FamilyModel train_family(std::string name, std::vector<GrdMatrix> member_grds,
                         std::vector<std::string> member_ids, double red_threshold,
                         double white_threshold) {
    if (member_grds.empty()) throw Error("family '" + name + "' has no members");
    if (!member_ids.empty() && member_ids.size() != member_grds.size()) {
        throw Error("member id list does not match member count");
    }
    for (const auto& member : member_grds) {
        if (member.group_order != member_grds.front().group_order) {
            throw ShapeError("family members were built under different group orders");
        }
    }

    FamilyModel family;
    family.name = std::move(name);
    family.id_matrix = build_id_matrix(member_grds, red_threshold, white_threshold);
    family.members.reserve(member_grds.size());
    for (std::size_t i = 0; i < member_grds.size(); ++i) {
        FamilyMember member;
        member.id = member_ids.empty() ? "m" + std::to_string(i) : std::move(member_ids[i]);
        member.cast_bits = cast(member_grds[i]);
        member.grd = std::move(member_grds[i]);
        family.members.push_back(std::move(member));
    }
    return family;
}

void save_family(std::ostream& out, const FamilyModel& family) {
    if (family.members.empty()) throw Error("refusing to save a family with no members");
    if (family.name.empty() || has_whitespace(family.name)) {
        throw Error("family name must be non-empty and free of whitespace");
    }
    if (family.id_matrix.member_count != family.members.size()) {
        throw ShapeError("ID-matrix member count does not match the member list");
    }

    const std::size_t n = family.dim();
    out << "FAM " << kFamVersion << ' ' << family.name << ' ' << n << ' ' << family.members.size()
        << ' ' << double_to_string(family.id_matrix.red_threshold) << ' '
        << double_to_string(family.id_matrix.white_threshold) << '\n';

    const auto& order = family.group_order();
    if (order.size() != n) throw ShapeError("group order size does not match matrix dimension");
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i) out << '\t';
        out << order[i];
    }
    out << '\n';

    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t col = 0; col < n; ++col) {
            if (col) out << ' ';
            out << unsigned(family.id_matrix.tags(row, col));
        }
        out << '\n';
    }

    for (const auto& member : family.members) {
        if (member.id.empty() || has_whitespace(member.id)) {
            throw Error("member id must be non-empty and free of whitespace");
        }
        require_same_dim(member.grd.weights, family.id_matrix.tags);
        out << "MEMBER " << member.id << '\n';
        for (std::size_t row = 0; row < n; ++row) {
            for (std::size_t col = 0; col < n; ++col) {
                if (col) out << ' ';
                out << member.grd.weights(row, col);
            }
            out << '\n';
        }
    }
}

FamilyModel load_family(std::istream& in) {
    FamilyModel family;
    std::size_t n = 0;
    std::size_t member_count = 0;
    {
        std::istringstream header(read_line_or_throw(in, "header"));
        std::string magic;
        int version = 0;
        if (!(header >> magic >> version >> family.name >> n >> member_count >>
              family.id_matrix.red_threshold >> family.id_matrix.white_threshold) ||
            magic != "FAM") {
            throw FormatError("not a FAM file (bad header)");
        }
        if (version != kFamVersion) {
            throw FormatError("unsupported FAM version " + std::to_string(version));
        }
        if (member_count == 0) throw FormatError("family declares zero members");
    }
    check_thresholds(family.id_matrix.red_threshold, family.id_matrix.white_threshold);

    const std::vector<std::string> group_order = split_tabs(read_line_or_throw(in, "group names"));
    if (group_order.size() != n) {
        throw FormatError("FAM header declares " + std::to_string(n) + " groups but names line has " +
                          std::to_string(group_order.size()));
    }

    family.id_matrix.tags = SquareMatrix<std::uint8_t>(n);
    family.id_matrix.member_count = member_count;
    for (std::size_t row = 0; row < n; ++row) {
        std::istringstream cells(read_line_or_throw(in, "tag row"));
        for (std::size_t col = 0; col < n; ++col) {
            unsigned tag = 0;
            if (!(cells >> tag) || (tag != kTagWhite && tag != kTagGray && tag != kTagRed)) {
                throw FormatError("bad tag at row " + std::to_string(row) + ", column " +
                                  std::to_string(col));
            }
            family.id_matrix.tags(row, col) = static_cast<std::uint8_t>(tag);
        }
    }

    family.members.reserve(member_count);
    for (std::size_t m = 0; m < member_count; ++m) {
        std::istringstream member_line(read_line_or_throw(in, "MEMBER line"));
        std::string keyword;
        FamilyMember member;
        if (!(member_line >> keyword >> member.id) || keyword != "MEMBER") {
            throw FormatError("expected 'MEMBER <id>' before member " + std::to_string(m));
        }
        member.grd.weights = SquareMatrix<std::uint32_t>(n);
        member.grd.group_order = group_order;
        for (std::size_t row = 0; row < n; ++row) {
            std::istringstream cells(read_line_or_throw(in, "member weight row"));
            for (std::size_t col = 0; col < n; ++col) {
                std::int64_t value = 0;
                if (!(cells >> value) || value < 0) {
                    throw FormatError("bad weight in member '" + member.id + "' at row " +
                                      std::to_string(row));
                }
                member.grd.weights(row, col) = static_cast<std::uint32_t>(value);
            }
        }
        member.cast_bits = cast(member.grd);
        family.members.push_back(std::move(member));
    }
    return family;
}

void save_family(const std::filesystem::path& path, const FamilyModel& family) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    save_family(out, family);
    if (!out) throw Error("write failed: " + path.string());
}

FamilyModel load_family(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    try {
        return load_family(in);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace scdg
