#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "lextent/poset.hpp"
#include "lextent/poset_io.hpp"

using namespace lextent;

TEST_CASE("write/read round-trips reproduce the poset") {
    std::vector<Poset> samples = {
        Poset::antichain(0),
        Poset::antichain(1),
        Poset::chain(5),
        Poset::from_cover_relations(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}),
        Poset::chain(2).disjoint_sum(Poset::antichain(3)),
    };
    for (const Poset& p : samples) {
        std::stringstream ss;
        write_poset(ss, p);
        CHECK(read_poset(ss) == p);
    }
}

TEST_CASE("reader applies transitive closure to arbitrary cover order") {
    std::istringstream in(
        "poset v1\n"
        "elements 3\n"
        "cover 1 2\n"
        "cover 0 1\n");
    Poset p = read_poset(in);
    CHECK(p.less(0, 2));
    CHECK(p == Poset::chain(3));
}

TEST_CASE("writer emits the sorted transitive reduction") {
    std::stringstream ss;
    write_poset(ss, Poset::from_cover_relations(3, {{0, 1}, {1, 2}, {0, 2}}));
    CHECK(ss.str() ==
          "poset v1\n"
          "elements 3\n"
          "cover 0 1\n"
          "cover 1 2\n");
}

TEST_CASE("reader rejects malformed input") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_poset(in);
    };
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("poset v2\nelements 1\n"), ParseError);
    CHECK_THROWS_AS(parse("poset v1\n"), ParseError);
    CHECK_THROWS_AS(parse("poset v1\nelements x\n"), ParseError);
    CHECK_THROWS_AS(parse("poset v1\nelements 2\ncover 0\n"), ParseError);
    CHECK_THROWS_AS(parse("poset v1\nelements 2\nedge 0 1\n"), ParseError);
    CHECK_THROWS_AS(parse("poset v1\nelements 2\ncover 0 5\n"), ParseError);
    CHECK_THROWS_AS(parse("poset v1\nelements 2\ncover 0 1\ncover 1 0\n"), CycleError);
}

TEST_CASE("file helpers round-trip through disk") {
    std::string path = "io_roundtrip_tmp.poset";
    Poset p = Poset::from_cover_relations(5, {{0, 2}, {1, 2}, {2, 3}, {2, 4}});
    write_poset_file(path, p);
    CHECK(read_poset_file(path) == p);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_poset_file("definitely_missing_file.poset"), ParseError);
}
