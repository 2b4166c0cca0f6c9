#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "zigzag/fixtures.hpp"
#include "zigzag/io.hpp"
#include "zigzag/svg.hpp"

using namespace zigzag;
using namespace zigzag::fixtures;

namespace {

std::string fixture_dir() {
    if (const char* env = std::getenv("ZIGZAG_FIXTURE_DIR")) return env;
    for (const char* cand : {"fixtures", "../fixtures", "../../fixtures"}) {
        std::ifstream probe(std::string(cand) + "/W.plmap");
        if (probe) return cand;
    }
    return "fixtures";
}

} // namespace

TEST_CASE("plmap round-trip on all fixtures") {
    for (const PLMap& m :
         {id_map(), w_map(), m_map(), z_map(), tent_map(), ex4_f1(), ex4_f2(), ex4_f3()}) {
        PLMap back = parse_plmap_string(serialize_plmap(m));
        CHECK(back.breakpoints() == m.breakpoints());
        CHECK(serialize_plmap(back) == serialize_plmap(m));
    }
}

TEST_CASE("plmap parse errors") {
    CHECK_THROWS_AS(parse_plmap_string("plmap\n1/0 1/2\n"), ParseError);
    CHECK_THROWS_AS(parse_plmap_string("plmap\n0/1 0/1\n0/1 1/2\n"), ParseError);
    CHECK_THROWS_AS(parse_plmap_string("plmap\n1/2 0/1\n0/1 1/2\n"), ParseError);
    CHECK_THROWS_AS(parse_plmap_string("plmap\n"), ParseError);
    CHECK_THROWS_AS(parse_plmap_string("wrong\n0/1 0/1\n"), ParseError);
    // comments and integer tokens are accepted
    PLMap ok = parse_plmap_string("# a comment\nplmap\n-1 -1\n# mid\n1 1\n");
    CHECK(ok == id_map());
}

TEST_CASE("fixture files on disk match the code fixtures") {
    std::string dir = fixture_dir();
    CHECK(load_plmap(dir + "/ID.plmap") == id_map());
    CHECK(load_plmap(dir + "/W.plmap") == w_map());
    CHECK(load_plmap(dir + "/M.plmap") == m_map());
    CHECK(load_plmap(dir + "/Z.plmap") == z_map());
    CHECK(load_plmap(dir + "/TENT.plmap") == tent_map());
    CHECK(load_plmap(dir + "/ex4_f1.plmap") == ex4_f1());
    CHECK(load_plmap(dir + "/ex4_f2.plmap") == ex4_f2());
    CHECK(load_plmap(dir + "/ex4_f3.plmap") == ex4_f3());
}

TEST_CASE("system and simplicial round-trips") {
    SystemPrefix p;
    p.maps = {PointedPLMap{ex4_f1()}, PointedPLMap{ex4_f2()}, PointedPLMap{ex4_f3()}};
    std::string text = serialize_system(p);
    std::istringstream in(text);
    SystemPrefix back = parse_system(in);
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(back.maps[i].map() == p.maps[i].map());
    CHECK(serialize_system(back) == text);

    SimplicialSystem sys = markov_refine(tent_map(), {Rat(-1), Rat(0), Rat(1)}, 3);
    std::string stext = serialize_simplicial(sys);
    std::istringstream sin(stext);
    SimplicialSystem sback = parse_simplicial(sin);
    REQUIRE(sback.maps.size() == 3);
    REQUIRE(sback.S.size() == 4);
    CHECK(sback.S[2] == sys.S[2]);
    CHECK(serialize_simplicial(sback) == stext);
}

TEST_CASE("detect_kind reads the header") {
    std::istringstream a("plmap\n0/1 0/1\n");
    CHECK(detect_kind(a) == FileKind::plmap);
    std::istringstream b("system 2\n");
    CHECK(detect_kind(b) == FileKind::system);
    std::istringstream c("# note\nsimplicial 1\n");
    CHECK(detect_kind(c) == FileKind::simplicial);
    std::istringstream d("nonsense\n");
    CHECK_THROWS_AS(detect_kind(d), ParseError);
}

TEST_CASE("contour report format") {
    auto cd = contour_points(PointedPLMap{m_map()});
    std::string rep = contour_report(cd);
    CHECK(rep == "right 1/2 1 positive\nright 1 -1/2 negative\nleft -1 -1 negative\n");
}

TEST_CASE("svg output is deterministic and layered") {
    std::vector<std::pair<PLMap, PlotRole>> maps = {{w_map(), PlotRole::base},
                                                    {id_map(), PlotRole::overlay}};
    std::string a = plot_svg(maps);
    std::string b = plot_svg(maps);
    CHECK(a == b);
    CHECK(a.find("polyline") != std::string::npos);
    CHECK(a.find("#cc0000") != std::string::npos);
    // overlay is emitted after (above) the base curve
    CHECK(a.rfind("#cc0000") > a.find("#222222"));
    // contour markers present for the pointed base curve
    CHECK(a.find("circle") != std::string::npos);

    std::string single = plot_svg({{id_map(), PlotRole::base}});
    CHECK(single.find("polyline") != std::string::npos);
}
