#include <doctest.h>

#include <fstream>
#include <sstream>

#include "scdg/rng.hpp"
#include "scdg/trace.hpp"
#include "support/gen.hpp"

using namespace scdg;

namespace {

std::string read_fixture(const char* name) {
    std::ifstream in(std::string(SCDG_TEST_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_SUITE("trace") {

TEST_CASE("reference trace parses to 9 calls and 17 dependencies") {
    const ScdGraph graph = parse_trace(read_fixture("hupigon.scdep"));
    CHECK(graph.node_count() == 9);
    CHECK(graph.edge_count() == 17);

    // the ten parallel 2 -> 3 edges stay distinct records
    std::size_t parallel = 0;
    for (const auto& edge : graph.edges) {
        if (edge.src_id == 2 && edge.dst_id == 3) ++parallel;
    }
    CHECK(parallel == 10);
}

TEST_CASE("dependency line maps the trace notation onto the record") {
    const ScdGraph graph = parse_trace("S 0 NtClose 1 1\nS 1 NtOpenKey 0 1\nD 1:1,0:1\n");
    REQUIRE(graph.edge_count() == 1);
    CHECK(graph.edges[0] == DependencyRecord{1, 1, 0, 1});
}

TEST_CASE("single call with no dependencies") {
    const ScdGraph graph = parse_trace("S 7 NtCreateFile 3 2\n");
    CHECK(graph.node_count() == 1);
    CHECK(graph.edge_count() == 0);
}

TEST_CASE("empty input yields the empty graph") {
    const ScdGraph graph = parse_trace("");
    CHECK(graph.node_count() == 0);
    CHECK(graph.edge_count() == 0);
}

TEST_CASE("self-dependency is a single node and edge, with a cycle warning") {
    std::vector<std::string> warnings;
    const ScdGraph graph = parse_trace("S 0 NtClose 1 1\nD 0:1,0:1\n", &warnings);
    CHECK(graph.node_count() == 1);
    CHECK(graph.edge_count() == 1);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("cycle") != std::string::npos);
}

TEST_CASE("comments and blank lines are skipped") {
    const ScdGraph graph = parse_trace("# header\n\nS 0 NtClose 1 1\n  # indented comment\n");
    CHECK(graph.node_count() == 1);
}

TEST_CASE("malformed lines report their line number") {
    CHECK_THROWS_WITH_AS(parse_trace("S 0 NtClose 1\n"), doctest::Contains("line 1"), ParseError);
    CHECK_THROWS_WITH_AS(parse_trace("S 0 NtClose 1 1\nX nonsense\n"), doctest::Contains("line 2"),
                         ParseError);
    CHECK_THROWS_AS(parse_trace("S 0 NtClose 1 1\nD 0:1.0:1\n"), ParseError);
    CHECK_THROWS_AS(parse_trace("S -1 NtClose 1 1\n"), ParseError);
}

TEST_CASE("edges referencing undeclared ids are rejected") {
    CHECK_THROWS_WITH_AS(parse_trace("S 0 NtClose 1 1\nD 0:1,5:1\n"),
                         doctest::Contains("undeclared"), ParseError);
    // declaration order matters: the referenced call comes later
    CHECK_THROWS_AS(parse_trace("S 0 A 1 1\nD 0:1,1:1\nS 1 B 1 1\n"), ParseError);
}

TEST_CASE("duplicate syscall ids are rejected") {
    CHECK_THROWS_WITH_AS(parse_trace("S 0 NtClose 1 1\nS 0 NtOpenKey 0 1\n"),
                         doctest::Contains("duplicate"), ParseError);
}

TEST_CASE("argument indices outside the declared counts warn but parse") {
    std::vector<std::string> warnings;
    const ScdGraph graph =
        parse_trace("S 0 NtClose 1 1\nS 1 NtOpenKey 0 1\nD 1:4,0:1\n", &warnings);
    CHECK(graph.edge_count() == 1);
    REQUIRE_FALSE(warnings.empty());
    CHECK(warnings[0].find("outside") != std::string::npos);
}

TEST_CASE("cyclic trace warns and still parses") {
    std::vector<std::string> warnings;
    const ScdGraph graph =
        parse_trace("S 0 A 1 1\nS 1 B 1 1\nD 0:1,1:1\nD 1:1,0:1\n", &warnings);
    CHECK(graph.edge_count() == 2);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("cycle") != std::string::npos);
}

TEST_CASE("parallel dependency lines keep their multiplicity") {
    std::string text = "S 0 A 1 1\nS 1 B 1 1\n";
    for (int i = 0; i < 5; ++i) text += "D 0:1,1:1\n";
    CHECK(parse_trace(text).edge_count() == 5);
}

TEST_CASE("round trip: parse(serialize(g)) == g for random graphs") {
    Rng rng(2024);
    for (int i = 0; i < 100; ++i) {
        const ScdGraph graph = testgen::random_graph(rng);
        CHECK(parse_trace(serialize_trace(graph)) == graph);
    }
}

TEST_CASE("every parsed edge endpoint resolves to a declared call") {
    Rng rng(99);
    for (int i = 0; i < 50; ++i) {
        const ScdGraph graph = parse_trace(serialize_trace(testgen::random_graph(rng)));
        for (const auto& edge : graph.edges) {
            auto declared = [&](std::uint32_t id) {
                for (const auto& call : graph.calls) {
                    if (call.id == id) return true;
                }
                return false;
            };
            CHECK(declared(edge.src_id));
            CHECK(declared(edge.dst_id));
        }
    }
}

}  // TEST_SUITE
