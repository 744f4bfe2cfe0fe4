#include "scdg/groups.hpp"

#include <fstream>
#include <sstream>

#include "scdg/errors.hpp"

namespace scdg {

namespace {

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

}  // namespace

GroupMap GroupMap::parse(std::string_view text) {
    GroupMap map;
    std::map<std::string, std::size_t, std::less<>> group_index;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool first_data_line = true;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        line = strip_cr(line);
        if (line.empty() || line.front() == '#') continue;

        const std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw ParseError(line_no, "groups line must be '<syscall>\\t<group>'");
        }
        const std::string_view syscall = line.substr(0, tab);
        const std::string_view group = strip_cr(line.substr(tab + 1));
        if (syscall.empty() || group.empty()) {
            throw ParseError(line_no, "groups line must be '<syscall>\\t<group>'");
        }
        if (first_data_line) {
            first_data_line = false;
            if (syscall == "syscall" && group == "group") continue;  // optional header
        }

        auto [git, inserted] = group_index.try_emplace(std::string(group), map.names_.size());
        if (inserted) map.names_.emplace_back(group);
        if (!map.syscall_to_group_.emplace(std::string(syscall), git->second).second) {
            throw ParseError(line_no, "duplicate syscall name '" + std::string(syscall) + "'");
        }
    }

    if (map.names_.empty()) {
        throw FormatError("groups file defines no groups");
    }
    return map;
}

GroupMap GroupMap::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open groups file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

std::optional<std::size_t> GroupMap::group_of(std::string_view syscall_name) const {
    const auto it = syscall_to_group_.find(syscall_name);
    if (it == syscall_to_group_.end()) return std::nullopt;
    return it->second;
}

}  // namespace scdg
