#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "scdg/grd.hpp"
#include "scdg/matrix.hpp"

namespace scdg {

// Cell tags of a family ID-matrix. A cell's tag reflects the fraction p of
// family members whose group matrix is nonzero there: White for p in
// [0, white_threshold], Red for p in [red_threshold, 1], Gray strictly
// between (both outer intervals are closed).
inline constexpr std::uint8_t kTagWhite = 2;
inline constexpr std::uint8_t kTagGray = 3;
inline constexpr std::uint8_t kTagRed = 4;

inline constexpr double kDefaultRedThreshold = 0.95;
inline constexpr double kDefaultWhiteThreshold = 0.05;

// Per-family tag matrix identifying which group edges are characteristic of
// the family's members.
struct IdMatrix {
    SquareMatrix<std::uint8_t> tags;
    std::size_t member_count = 0;
    double red_threshold = kDefaultRedThreshold;
    double white_threshold = kDefaultWhiteThreshold;

    std::size_t dim() const noexcept { return tags.dim(); }

    // Number of cells carrying `tag`.
    std::uint64_t tag_count(std::uint8_t tag) const noexcept;

    friend bool operator==(const IdMatrix&, const IdMatrix&) = default;
};

struct FamilyMember {
    std::string id;  // sample name, for provenance
    GrdMatrix grd;
    CastMatrix cast_bits;

    friend bool operator==(const FamilyMember&, const FamilyMember&) = default;
};

// A trained family: its ID-matrix plus every training member's weighted and
// casted matrix (the weighted matrices are needed by the quantitative
// metrics, the casts by the binary ones). Immutable after construction.
struct FamilyModel {
    std::string name;
    IdMatrix id_matrix;
    std::vector<FamilyMember> members;

    std::size_t dim() const noexcept { return id_matrix.dim(); }
    const std::vector<std::string>& group_order() const { return members.front().grd.group_order; }

    friend bool operator==(const FamilyModel&, const FamilyModel&) = default;
};

// Tags each cell by the fraction of members with a nonzero weight there.
// Throws Error on an empty member list, ShapeError on mismatched dimensions
// and std::invalid_argument unless 0 <= white < red <= 1.
IdMatrix build_id_matrix(std::span<const GrdMatrix> members,
                         double red_threshold = kDefaultRedThreshold,
                         double white_threshold = kDefaultWhiteThreshold);

// Builds the full model: casts every member and constructs the ID-matrix.
// `member_ids` (optional) names each sample; unnamed members get m<index>.
FamilyModel train_family(std::string name, std::vector<GrdMatrix> member_grds,
                         std::vector<std::string> member_ids = {},
                         double red_threshold = kDefaultRedThreshold,
                         double white_threshold = kDefaultWhiteThreshold);

// `.fam` file format (text):
//   FAM 1 <name> <n> <member_count> <red_threshold> <white_threshold>
//   <group names, tab-separated>
//   n tag rows (values 2/3/4, space-separated)
//   per member: `MEMBER <sample_id>` followed by n weight rows
// Family and sample names must not contain whitespace. load(save(f)) == f.
void save_family(std::ostream& out, const FamilyModel& family);
FamilyModel load_family(std::istream& in);
void save_family(const std::filesystem::path& path, const FamilyModel& family);
FamilyModel load_family(const std::filesystem::path& path);

}  // namespace scdg
