#include <doctest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "scdg/grd.hpp"
#include "scdg/rng.hpp"
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

const GroupMap& default_groups() {
    static const GroupMap map = GroupMap::load(std::string(SCDG_GROUPS_FILE));
    return map;
}

std::size_t index_of(const GroupMap& map, const std::string& group) {
    for (std::size_t i = 0; i < map.group_names().size(); ++i) {
        if (map.group_names()[i] == group) return i;
    }
    FAIL("no such group: ", group);
    return 0;
}

}  // namespace

TEST_SUITE("grd") {

TEST_CASE("reference trace collapses to exactly six weighted group edges") {
    const GroupMap& groups = default_groups();
    const ScdGraph graph = parse_trace(read_fixture("hupigon.scdep"));
    const GrdMatrix grd = build_grd(graph, groups, UnknownSyscallPolicy::kError);

    const std::map<std::pair<std::string, std::string>, std::uint32_t> expected = {
        {{"ACCESS_MASK", "Memory"}, 1}, {{"Object", "Memory"}, 1}, {{"Object", "File"}, 10},
        {{"NTSTATUS", "Process"}, 1},   {{"ULONG", "Process"}, 2}, {{"Process", "Process"}, 2},
    };
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < grd.dim(); ++i) {
        for (std::size_t j = 0; j < grd.dim(); ++j) {
            if (grd.weights(i, j) == 0) continue;
            ++nonzero;
            const auto key = std::make_pair(grd.group_order[i], grd.group_order[j]);
            REQUIRE(expected.count(key) == 1);
            CHECK(grd.weights(i, j) == expected.at(key));
        }
    }
    CHECK(nonzero == expected.size());
    CHECK(grd.total_weight() == graph.edge_count());

    // 7 groups touch an edge, 23 stay isolated
    std::set<std::size_t> non_isolated;
    for (std::size_t i = 0; i < grd.dim(); ++i) {
        for (std::size_t j = 0; j < grd.dim(); ++j) {
            if (grd.weights(i, j) > 0) {
                non_isolated.insert(i);
                non_isolated.insert(j);
            }
        }
    }
    CHECK(non_isolated.size() == 7);
    CHECK(grd.dim() - non_isolated.size() == 23);
}

TEST_CASE("edge-free graph yields the all-zero matrix") {
    const ScdGraph graph = parse_trace("S 0 NtClose 1 1\n");
    const GrdMatrix grd = build_grd(graph, default_groups());
    CHECK(grd.dim() == 30);
    CHECK(grd.total_weight() == 0);
    CHECK_FALSE(grd.has_edges());
}

TEST_CASE("parallel edges between the same groups accumulate weight") {
    const GroupMap map = GroupMap::parse("a\tG1\nb\tG2\n");
    const ScdGraph graph = parse_trace("S 0 a 1 1\nS 1 b 1 1\nD 0:1,1:1\nD 0:1,1:1\n");
    const GrdMatrix grd = build_grd(graph, map);
    CHECK(grd.weights(0, 1) == 2);
    CHECK(grd.total_weight() == 2);
}

TEST_CASE("unknown syscalls: error policy throws, skip policy warns and drops edges") {
    const GroupMap map = GroupMap::parse("a\tG1\n");
    const ScdGraph graph = parse_trace("S 0 a 1 1\nS 1 mystery 1 1\nD 0:1,1:1\nD 0:1,0:1\n");

    CHECK_THROWS_WITH_AS(build_grd(graph, map, UnknownSyscallPolicy::kError),
                         doctest::Contains("mystery"), Error);

    std::vector<std::string> warnings;
    const GrdMatrix grd = build_grd(graph, map, UnknownSyscallPolicy::kSkipWithWarning, &warnings);
    CHECK(grd.total_weight() == 1);  // only the a -> a edge survives
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("mystery") != std::string::npos);
}

TEST_CASE("weight conservation: total weight equals groupable edge count") {
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const ScdGraph graph = testgen::random_graph(rng);
        std::string table;
        for (const auto& call : graph.calls) {
            table += call.name + "\tG" + std::to_string(call.id % 4) + "\n";
        }
        const GroupMap map = GroupMap::parse(table);
        const GrdMatrix grd = build_grd(graph, map, UnknownSyscallPolicy::kError);
        CHECK(grd.total_weight() == graph.edge_count());
    }
}

TEST_CASE("edge order does not matter") {
    const GroupMap map = GroupMap::parse("a\tG1\nb\tG2\nc\tG3\n");
    ScdGraph graph =
        parse_trace("S 0 a 1 1\nS 1 b 1 1\nS 2 c 1 1\nD 0:1,1:1\nD 1:1,2:1\nD 2:1,0:1\nD 0:1,2:1\n");
    const GrdMatrix reference = build_grd(graph, map);

    Rng rng(11);
    for (int i = 0; i < 10; ++i) {
        deterministic_shuffle(graph.edges, rng);
        CHECK(build_grd(graph, map) == reference);
    }
}

TEST_CASE("non-isolated node count equals the number of groups among endpoints") {
    Rng rng(13);
    for (int i = 0; i < 30; ++i) {
        const ScdGraph graph = testgen::random_graph(rng);
        std::string table;
        for (const auto& call : graph.calls) {
            table += call.name + "\tG" + std::to_string(call.id % 5) + "\n";
        }
        const GroupMap map = GroupMap::parse(table);
        const GrdMatrix grd = build_grd(graph, map, UnknownSyscallPolicy::kError);

        std::set<std::size_t> touched;
        for (const auto& edge : graph.edges) {
            auto name_of = [&](std::uint32_t id) -> const std::string& {
                for (const auto& call : graph.calls) {
                    if (call.id == id) return call.name;
                }
                FAIL("unknown id");
                static const std::string none;
                return none;
            };
            touched.insert(*map.group_of(name_of(edge.src_id)));
            touched.insert(*map.group_of(name_of(edge.dst_id)));
        }
        std::set<std::size_t> non_isolated;
        for (std::size_t r = 0; r < grd.dim(); ++r) {
            for (std::size_t c = 0; c < grd.dim(); ++c) {
                if (grd.weights(r, c) > 0) {
                    non_isolated.insert(r);
                    non_isolated.insert(c);
                }
            }
        }
        CHECK(non_isolated == touched);
    }
}

TEST_CASE("cast marks exactly the nonzero cells") {
    const GroupMap& groups = default_groups();
    const ScdGraph graph = parse_trace(read_fixture("hupigon.scdep"));
    const CastMatrix bits = cast(build_grd(graph, groups));
    CHECK(bits.ones() == 6);

    GrdMatrix zero{SquareMatrix<std::uint32_t>(4), testgen::group_names(4)};
    CHECK(cast(zero).ones() == 0);

    zero.weights(2, 3) = 10;
    const CastMatrix single = cast(zero);
    CHECK(single.ones() == 1);
    CHECK(single.bits(2, 3) == 1);
}

TEST_CASE("cast is idempotent when reapplied to its own support") {
    Rng rng(17);
    const auto order = testgen::group_names(8);
    for (int i = 0; i < 20; ++i) {
        const GrdMatrix grd = testgen::random_grd(rng, order, 0.3);
        const CastMatrix once = cast(grd);
        GrdMatrix as_weights{SquareMatrix<std::uint32_t>(grd.dim()), order};
        for (std::size_t c = 0; c < once.bits.cells().size(); ++c) {
            as_weights.weights.cells()[c] = once.bits.cells()[c];
        }
        CHECK(cast(as_weights) == once);
    }
}

TEST_CASE("grd files round-trip") {
    Rng rng(23);
    const auto order = testgen::group_names(6);
    for (int i = 0; i < 20; ++i) {
        const GrdMatrix grd = testgen::random_grd(rng, order, 0.4);
        std::stringstream io;
        write_grd(io, grd);
        CHECK(read_grd(io) == grd);
    }
}

TEST_CASE("grd reader rejects structural damage") {
    const auto order = testgen::group_names(3);
    GrdMatrix grd{SquareMatrix<std::uint32_t>(3), order};
    grd.weights(0, 1) = 4;
    std::stringstream io;
    write_grd(io, grd);
    const std::string text = io.str();

    auto parse_text = [](std::string s) {
        std::istringstream in(std::move(s));
        return read_grd(in);
    };
    CHECK_THROWS_AS(parse_text("XYZ 1 3\n"), FormatError);                    // bad magic
    CHECK_THROWS_AS(parse_text("GRD 9 3\ng0\tg1\tg2\n"), FormatError);        // bad version
    CHECK_THROWS_AS(parse_text(text.substr(0, text.size() / 2)), FormatError);  // truncated
    CHECK_THROWS_AS(parse_text("GRD 1 2\ng0\tg1\n1 2\n3 -4\n"), FormatError);   // negative weight
    CHECK_THROWS_AS(parse_text("GRD 1 2\ng0\n1 2\n3 4\n"), FormatError);        // name count
}

}  // TEST_SUITE
