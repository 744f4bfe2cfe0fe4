#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scdg {

// Ordered set of system-call groups plus the syscall-name -> group mapping.
// The canonical group order is the order of first appearance in the groups
// file; every matrix produced under the same GroupMap is cell-aligned with
// every other, which is what all downstream metrics assume.
class GroupMap {
public:
    // Groups file: UTF-8 TSV, one `<syscall_name>\t<group_name>` per line.
    // `#` comments and an optional `syscall<TAB>group` header are skipped.
    // Throws FormatError on duplicate syscall names or an empty file.
    static GroupMap parse(std::string_view text);
    static GroupMap load(const std::filesystem::path& path);

    std::size_t group_count() const noexcept { return names_.size(); }
    const std::vector<std::string>& group_names() const noexcept { return names_; }

    // Group index for a syscall name, or nullopt for unmapped names.
    std::optional<std::size_t> group_of(std::string_view syscall_name) const;

    std::size_t syscall_count() const noexcept { return syscall_to_group_.size(); }

    friend bool operator==(const GroupMap&, const GroupMap&) = default;

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t, std::less<>> syscall_to_group_;
};

}  // namespace scdg
