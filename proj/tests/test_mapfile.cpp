#include <doctest.h>

#include "torusflux/mapfile.hpp"

using namespace torusflux;

namespace {

const char* kSample =
    "# sample map\n"
    "order=right-to-left\n"
    "translate a=0.37 b=0.18\n"
    "hshear eps=0.02 band=0.0,0.25 inner=0.5 outer=1.0\n"
    "vshear eps=-0.013 band=0.375,0.625 inner=0.5 outer=1.0\n"
    "disktwist cx=0.5 cy=0.5 r=0.2 t=1.0 inner=0.333 outer=0.667\n"
    "disk U0 cx=0.5 cy=0.5 r=0.05\n"
    "band lane 0.0,0.25\n";

}  // namespace

TEST_SUITE("mapfile") {

TEST_CASE("parse populates the chain in listed order") {
    const MapDocument doc = parse_map_text(kSample);
    REQUIRE(doc.map.size() == 4);
    CHECK(std::holds_alternative<Translation>(doc.map.chain()[0]));
    CHECK(std::holds_alternative<HorizontalShear>(doc.map.chain()[1]));
    CHECK(std::holds_alternative<VerticalShear>(doc.map.chain()[2]));
    CHECK(std::holds_alternative<DiskTwist>(doc.map.chain()[3]));
    // right-to-left: the disktwist is applied first
    const auto& tw = std::get<DiskTwist>(doc.map.chain()[3]);
    CHECK(tw.radius == 0.2);
    CHECK(doc.disks.at("U0").radius == 0.05);
    CHECK(doc.bands.at("lane").hi == 0.25);
}

TEST_CASE("parse-serialize-parse is the identity on the document") {
    const MapDocument doc = parse_map_text(kSample);
    const std::string text = serialize(doc);
    const MapDocument again = parse_map_text(text);
    CHECK(again.map == doc.map);
    CHECK(again.disks == doc.disks);
    CHECK(again.bands == doc.bands);
    // serialization is a fixed point
    CHECK(serialize(again) == text);
}

TEST_CASE("17-digit round trip preserves awkward doubles") {
    MapDocument doc;
    doc.map = TorusMap(Generator{Translation{0.1 + 0.2, 1.0 / 3.0}});
    const MapDocument again = parse_map_text(serialize(doc));
    CHECK(again.map == doc.map);
}

TEST_CASE("missing header is rejected") {
    CHECK_THROWS_AS(parse_map_text("translate a=0.1 b=0.2\n"), ParseError);
    try {
        parse_map_text("translate a=0.1 b=0.2\n");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
    }
}

TEST_CASE("unsupported order value is rejected") {
    CHECK_THROWS_AS(parse_map_text("order=left-to-right\ntranslate a=0 b=0\n"), ParseError);
}

TEST_CASE("unknown stanza and unknown key carry line and column") {
    try {
        parse_map_text("order=right-to-left\nwobble a=1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 1);
    }
    try {
        parse_map_text("order=right-to-left\ntranslate a=0.1 b=0.2 junk=3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 23);
    }
}

TEST_CASE("numbers, duplicates and missing keys are diagnosed") {
    CHECK_THROWS_AS(parse_map_text("order=right-to-left\ntranslate a=zebra b=0\n"), ParseError);
    CHECK_THROWS_AS(parse_map_text("order=right-to-left\ntranslate a=1 a=2 b=0\n"), ParseError);
    CHECK_THROWS_AS(parse_map_text("order=right-to-left\ntranslate a=1\n"), ParseError);
    CHECK_THROWS_AS(parse_map_text("order=right-to-left\ntranslate a=1.5e b=0\n"), ParseError);
}

TEST_CASE("geometric invariants are enforced at parse time") {
    // disk radius >= 1/2
    CHECK_THROWS_AS(
        parse_map_text("order=right-to-left\ndisktwist cx=0.5 cy=0.5 r=0.5 t=1\n"),
        ParseError);
    CHECK_THROWS_AS(parse_map_text("order=right-to-left\ndisk D cx=0.1 cy=0.1 r=0.7\n"),
                    ParseError);
    // malformed band
    CHECK_THROWS_AS(parse_map_text("order=right-to-left\nhshear eps=0.1 band=0.5,0.4\n"),
                    ParseError);
    // malformed profile
    CHECK_THROWS_AS(
        parse_map_text("order=right-to-left\nhshear eps=0.1 band=0.1,0.4 inner=0.9 outer=0.2\n"),
        ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
    const MapDocument doc = parse_map_text(
        "# leading comment\n\n   \norder=right-to-left\n# mid comment\ntranslate a=1 b=2\n");
    CHECK(doc.map.size() == 1);
}

TEST_CASE("profiles default when omitted") {
    const MapDocument doc =
        parse_map_text("order=right-to-left\ndisktwist cx=0.5 cy=0.5 r=0.2 t=1\n");
    const auto& tw = std::get<DiskTwist>(doc.map.chain()[0]);
    CHECK(tw.profile == BumpProfile{});
}

}  // TEST_SUITE
