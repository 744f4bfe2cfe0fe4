#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "scdg/groups.hpp"
#include "scdg/matrix.hpp"
#include "scdg/trace.hpp"

namespace scdg {

// Weighted adjacency matrix of the group dependency graph: cell (i, j) holds
// the number of trace edges from a syscall in group i to a syscall in group
// j. All groups are always present; isolated ones are zero rows+columns.
// `group_order` records which GroupMap the matrix was built under so that
// matrices from different group tables cannot be mixed.
struct GrdMatrix {
    SquareMatrix<std::uint32_t> weights;
    std::vector<std::string> group_order;

    std::size_t dim() const noexcept { return weights.dim(); }

    std::uint64_t total_weight() const noexcept;
    bool has_edges() const noexcept { return total_weight() > 0; }

    friend bool operator==(const GrdMatrix&, const GrdMatrix&) = default;
};

// Binary support matrix: 1 wherever the source matrix is nonzero.
struct CastMatrix {
    SquareMatrix<std::uint8_t> bits;

    std::size_t dim() const noexcept { return bits.dim(); }
    std::uint64_t ones() const noexcept;

    friend bool operator==(const CastMatrix&, const CastMatrix&) = default;
};

enum class UnknownSyscallPolicy {
    kError,            // throw on the first syscall name absent from the map
    kSkipWithWarning,  // drop affected edges, report each unknown name once
};

// Collapses a trace graph onto the group adjacency matrix. The sum of all
// weights equals the number of edges whose both endpoints were groupable.
GrdMatrix build_grd(const ScdGraph& graph, const GroupMap& groups,
                    UnknownSyscallPolicy policy = UnknownSyscallPolicy::kSkipWithWarning,
                    std::vector<std::string>* warnings = nullptr);

CastMatrix cast(const GrdMatrix& matrix);

// `.grd` file format (text):
//   GRD 1 <n>
//   <group names, tab-separated>
//   n rows of n space-separated non-negative integers
void write_grd(std::ostream& out, const GrdMatrix& matrix);
GrdMatrix read_grd(std::istream& in);
void save_grd(const std::filesystem::path& path, const GrdMatrix& matrix);
GrdMatrix load_grd(const std::filesystem::path& path);

}  // namespace scdg
