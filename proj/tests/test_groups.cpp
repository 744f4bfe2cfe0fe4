#include <doctest.h>

#include "scdg/groups.hpp"
#include "scdg/errors.hpp"

using namespace scdg;

TEST_SUITE("groups") {

TEST_CASE("shipped default table defines 30 groups") {
    const GroupMap map = GroupMap::load(std::string(SCDG_GROUPS_FILE));
    CHECK(map.group_count() == 30);

    // worked-example assignments
    auto group_name = [&](const char* syscall) {
        const auto idx = map.group_of(syscall);
        REQUIRE(idx.has_value());
        return map.group_names()[*idx];
    };
    CHECK(group_name("NtOpenSection") == "Memory");
    CHECK(group_name("ACCESS_MASK") == "ACCESS_MASK");
    CHECK(group_name("POBJECT_ATTRIBUTES") == "Object");
    CHECK(group_name("NtQueryAttributesFile") == "File");
    CHECK(group_name("NtRaiseHardError") == "Process");
    CHECK(group_name("NTSTATUS") == "NTSTATUS");
    CHECK(group_name("ULONG") == "ULONG");
    CHECK(group_name("PULONG_PTR") == "Process");
    CHECK(group_name("HARDERROR_RESPONSE_OPTION") == "Process");
}

TEST_CASE("minimal two-group map") {
    const GroupMap map = GroupMap::parse("a\tG1\nb\tG2\nc\tG1\n");
    CHECK(map.group_count() == 2);
    CHECK(map.syscall_count() == 3);
    CHECK(map.group_of("a") == 0);
    CHECK(map.group_of("b") == 1);
    CHECK(map.group_of("c") == 0);
    CHECK_FALSE(map.group_of("d").has_value());
}

TEST_CASE("group order follows first appearance") {
    const GroupMap map = GroupMap::parse("x\tLate\ny\tEarly\nz\tLate\n");
    CHECK(map.group_names() == std::vector<std::string>{"Late", "Early"});
}

TEST_CASE("optional header and comments are skipped") {
    const GroupMap map = GroupMap::parse("# comment\nsyscall\tgroup\na\tG1\n");
    CHECK(map.group_count() == 1);
    CHECK(map.syscall_count() == 1);
}

TEST_CASE("duplicate syscall names are rejected") {
    CHECK_THROWS_WITH_AS(GroupMap::parse("a\tG1\na\tG2\n"), doctest::Contains("duplicate"),
                         ParseError);
}

TEST_CASE("empty or syscall-free files are rejected") {
    CHECK_THROWS_AS(GroupMap::parse(""), FormatError);
    CHECK_THROWS_AS(GroupMap::parse("# nothing but comments\n"), FormatError);
}

TEST_CASE("lines without a tab are malformed") {
    CHECK_THROWS_AS(GroupMap::parse("justonetoken\n"), ParseError);
}

}  // TEST_SUITE
