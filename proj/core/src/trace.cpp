#include "scdg/trace.hpp"

#include <charconv>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace scdg {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
        std::size_t start = pos;
        while (pos < s.size() && s[pos] != ' ' && s[pos] != '\t') ++pos;
        if (pos > start) tokens.push_back(s.substr(start, pos - start));
    }
    return tokens;
}

std::uint32_t parse_u32(std::string_view token, std::size_t line, const char* what) {
    std::uint32_t value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || token.empty()) {
        throw ParseError(line, std::string("invalid ") + what + " '" + std::string(token) + "'");
    }
    return value;
}

// "src:outIdx,dst:inIdx"
DependencyRecord parse_dependency(std::string_view token, std::size_t line) {
    const std::size_t comma = token.find(',');
    if (comma == std::string_view::npos) {
        throw ParseError(line, "dependency must be '<src>:<out>,<dst>:<in>'");
    }
    const std::string_view lhs = token.substr(0, comma);
    const std::string_view rhs = token.substr(comma + 1);
    const std::size_t lc = lhs.find(':');
    const std::size_t rc = rhs.find(':');
    if (lc == std::string_view::npos || rc == std::string_view::npos) {
        throw ParseError(line, "dependency must be '<src>:<out>,<dst>:<in>'");
    }
    DependencyRecord dep;
    dep.src_id = parse_u32(lhs.substr(0, lc), line, "source id");
    dep.src_out_idx = parse_u32(lhs.substr(lc + 1), line, "output-argument index");
    dep.dst_id = parse_u32(rhs.substr(0, rc), line, "destination id");
    dep.dst_in_idx = parse_u32(rhs.substr(rc + 1), line, "input-argument index");
    return dep;
}

void warn(std::vector<std::string>* warnings, std::string message) {
    if (warnings) warnings->push_back(std::move(message));
}

// Kahn's algorithm over the condensed edge set; multiplicities are
// irrelevant for reachability.
bool has_cycle(const ScdGraph& graph) {
    std::unordered_map<std::uint32_t, std::size_t> in_degree;
    std::unordered_map<std::uint32_t, std::unordered_set<std::uint32_t>> adjacency;
    for (const auto& call : graph.calls) in_degree[call.id] = 0;
    for (const auto& edge : graph.edges) {
        if (adjacency[edge.src_id].insert(edge.dst_id).second) ++in_degree[edge.dst_id];
    }
    std::deque<std::uint32_t> ready;
    for (const auto& [id, deg] : in_degree) {
        if (deg == 0) ready.push_back(id);
    }
    std::size_t visited = 0;
    while (!ready.empty()) {
        const std::uint32_t id = ready.front();
        ready.pop_front();
        ++visited;
        auto it = adjacency.find(id);
        if (it == adjacency.end()) continue;
        for (std::uint32_t next : it->second) {
            if (--in_degree[next] == 0) ready.push_back(next);
        }
    }
    return visited != graph.calls.size();
}

}  // namespace

ScdGraph parse_trace(std::string_view text, std::vector<std::string>* warnings) {
    ScdGraph graph;
    std::unordered_map<std::uint32_t, std::size_t> call_index;  // id -> position in calls

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        const auto tokens = split_ws(line);
        if (tokens[0] == "S") {
            if (tokens.size() != 5) {
                throw ParseError(line_no, "syscall line must be 'S <id> <name> <in> <out>'");
            }
            SyscallRecord call;
            call.id = parse_u32(tokens[1], line_no, "syscall id");
            call.name = std::string(tokens[2]);
            call.in_args = parse_u32(tokens[3], line_no, "input-argument count");
            call.out_args = parse_u32(tokens[4], line_no, "output-argument count");
            if (call.name.empty()) throw ParseError(line_no, "syscall name is empty");
            if (!call_index.emplace(call.id, graph.calls.size()).second) {
                throw ParseError(line_no, "duplicate syscall id " + std::to_string(call.id));
            }
            graph.calls.push_back(std::move(call));
        } else if (tokens[0] == "D") {
            if (tokens.size() != 2) {
                throw ParseError(line_no, "dependency line must be 'D <src>:<out>,<dst>:<in>'");
            }
            DependencyRecord dep = parse_dependency(tokens[1], line_no);
            const auto src = call_index.find(dep.src_id);
            const auto dst = call_index.find(dep.dst_id);
            if (src == call_index.end()) {
                throw ParseError(line_no,
                                 "dependency references undeclared syscall id " +
                                     std::to_string(dep.src_id));
            }
            if (dst == call_index.end()) {
                throw ParseError(line_no,
                                 "dependency references undeclared syscall id " +
                                     std::to_string(dep.dst_id));
            }
            // Range violations are warnings: traces contain pseudo-calls
            // whose argument counts describe types, not real signatures.
            const SyscallRecord& src_call = graph.calls[src->second];
            const SyscallRecord& dst_call = graph.calls[dst->second];
            if (dep.src_out_idx < 1 || dep.src_out_idx > src_call.out_args) {
                warn(warnings, "line " + std::to_string(line_no) + ": output index " +
                                   std::to_string(dep.src_out_idx) + " outside 1.." +
                                   std::to_string(src_call.out_args) + " of '" + src_call.name +
                                   "'");
            }
            if (dep.dst_in_idx < 1 || dep.dst_in_idx > dst_call.in_args) {
                warn(warnings, "line " + std::to_string(line_no) + ": input index " +
                                   std::to_string(dep.dst_in_idx) + " outside 1.." +
                                   std::to_string(dst_call.in_args) + " of '" + dst_call.name +
                                   "'");
            }
            graph.edges.push_back(dep);
        } else {
            throw ParseError(line_no, "unknown record type '" + std::string(tokens[0]) + "'");
        }
    }

    if (has_cycle(graph)) {
        warn(warnings, "dependency graph contains cycles");
    }
    return graph;
}

std::string serialize_trace(const ScdGraph& graph) {
    std::ostringstream out;
    for (const auto& call : graph.calls) {
        out << "S " << call.id << ' ' << call.name << ' ' << call.in_args << ' ' << call.out_args
            << '\n';
    }
    for (const auto& edge : graph.edges) {
        out << "D " << edge.src_id << ':' << edge.src_out_idx << ',' << edge.dst_id << ':'
            << edge.dst_in_idx << '\n';
    }
    return out.str();
}

}  // namespace scdg
