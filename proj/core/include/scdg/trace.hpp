#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scdg/errors.hpp"

namespace scdg {

// One system-call invocation observed in a trace. `in_args` / `out_args` are
// the argument counts reported by the tracer; pseudo-calls (argument types
// promoted to nodes, e.g. ACCESS_MASK) carry whatever the trace says.
struct SyscallRecord {
    std::uint32_t id = 0;
    std::string name;
    std::uint32_t in_args = 0;
    std::uint32_t out_args = 0;

    friend bool operator==(const SyscallRecord&, const SyscallRecord&) = default;
};

// A data-flow dependency: output argument `src_out_idx` (1-based) of call
// `src_id` was passed as input argument `dst_in_idx` of call `dst_id`.
struct DependencyRecord {
    std::uint32_t src_id = 0;
    std::uint32_t src_out_idx = 0;
    std::uint32_t dst_id = 0;
    std::uint32_t dst_in_idx = 0;

    friend bool operator==(const DependencyRecord&, const DependencyRecord&) = default;
};

// System-call dependency graph: the calls of one traced execution plus the
// argument-passing edges between them. Edges are an ordered multiset --
// parallel edges are distinct records and file order is preserved. The graph
// is directed; cycles are accepted (the parser only warns).
struct ScdGraph {
    std::vector<SyscallRecord> calls;
    std::vector<DependencyRecord> edges;

    std::size_t node_count() const noexcept { return calls.size(); }
    std::size_t edge_count() const noexcept { return edges.size(); }

    friend bool operator==(const ScdGraph&, const ScdGraph&) = default;
};

// Parses the line-oriented `.scdep` trace format:
//
//   # comment
//   S <id> <name> <in_args> <out_args>
//   D <src_id>:<src_out_idx>,<dst_id>:<dst_in_idx>
//
// Syscall lines must precede dependency lines that reference them. Throws
// ParseError (with line number) on malformed lines, duplicate ids or edges
// referencing undeclared ids. Argument-index range violations and cyclic
// graphs are warnings, not errors.
ScdGraph parse_trace(std::string_view text, std::vector<std::string>* warnings = nullptr);

// Inverse of parse_trace: parse_trace(serialize_trace(g)) == g.
std::string serialize_trace(const ScdGraph& graph);

}  // namespace scdg
