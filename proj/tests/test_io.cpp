#include <catch2/catch_amalgamated.hpp>

#include "sft/json_out.hpp"
#include "sft/render.hpp"
#include "sft/spec_io.hpp"
#include "sft/zoo.hpp"

using namespace sft;

namespace {
bool specs_equal(const ShiftSpec& a, const ShiftSpec& b) {
    if (a.name != b.name || a.dim != b.dim || !(a.radius == b.radius)) return false;
    if (a.alphabet.size() != b.alphabet.size()) return false;
    for (int i = 0; i < a.alphabet.size(); ++i) {
        if (a.alphabet[i].name != b.alphabet[i].name) return false;
        if (a.alphabet[i].faces != b.alphabet[i].faces) return false;
        if (a.alphabet[i].attrs != b.alphabet[i].attrs) return false;
    }
    if (a.forbidden.size() != b.forbidden.size()) return false;
    for (size_t i = 0; i < a.forbidden.size(); ++i)
        if (!(a.forbidden[i] == b.forbidden[i])) return false;
    if (a.class_rules.size() != b.class_rules.size()) return false;
    for (size_t i = 0; i < a.class_rules.size(); ++i) {
        if (a.class_rules[i].at != b.class_rules[i].at) return false;
        if (!(a.class_rules[i].in == b.class_rules[i].in)) return false;
    }
    return a.wang_mode == b.wang_mode && a.validator == b.validator;
}
}  // namespace

TEST_CASE("spec files round-trip bit-exactly") {
    for (const char* path :
         {"golden-mean.spec", "hard-squares.spec", "worm-precursor.spec", "x-struct.spec",
          "good-wave.spec", "sunny-side-up.spec", "full-2-z2.spec"}) {
        std::string file = read_file(std::string(SFT_DATA_DIR) + "/" + path);
        ShiftSpec spec = load_spec_text(file);
        CHECK(save_spec_text(spec) == file);
        ShiftSpec again = load_spec_text(save_spec_text(spec));
        CHECK(specs_equal(spec, again));
    }
}

TEST_CASE("shipped tile tables match the zoo constructions") {
    {
        ShiftSpec shipped = load_spec_text(read_file(std::string(SFT_DATA_DIR) + "/x-struct.spec"));
        ShiftSpec built = zoo::x_struct();
        REQUIRE(shipped.alphabet.size() == built.alphabet.size());
        for (int i = 0; i < built.alphabet.size(); ++i) {
            CHECK(shipped.alphabet[i].name == built.alphabet[i].name);
            CHECK(shipped.alphabet[i].faces == built.alphabet[i].faces);
            CHECK(shipped.alphabet[i].attrs == built.alphabet[i].attrs);
        }
        compile(shipped);
        // compiled language agrees on random windows
        std::mt19937_64 rng(9);
        for (int t = 0; t < 300; ++t) {
            std::vector<int> sym;
            for (int i = 0; i < 9; ++i) sym.push_back(int(rng() % built.nsym()));
            Pattern p(box(2, 1), sym);
            CHECK(validate_pattern(shipped, p) == validate_pattern(built, p));
        }
    }
    {
        ShiftSpec shipped =
            load_spec_text(read_file(std::string(SFT_DATA_DIR) + "/good-wave.spec"));
        ShiftSpec built = zoo::good_wave();
        REQUIRE(shipped.alphabet.size() == built.alphabet.size());
        REQUIRE(shipped.class_rules.size() == built.class_rules.size());
        compile(shipped);
        std::mt19937_64 rng(10);
        Support F = box(3, 1);
        for (int t = 0; t < 100; ++t) {
            std::vector<int> sym;
            for (size_t i = 0; i < F.size(); ++i) sym.push_back(int(rng() % built.nsym()));
            Pattern p(F, sym);
            CHECK(validate_pattern(shipped, p) == validate_pattern(built, p));
        }
    }
}

TEST_CASE("pattern files round-trip") {
    auto gm = zoo::golden_mean();
    Pattern p(Support{{Coord{-1}, Coord{0}, Coord{2}}}, {1, 0, 1});
    std::string text = save_pattern_text(p, gm);
    Pattern q = load_pattern_text(text, gm);
    CHECK(p == q);
    CHECK(save_pattern_text(q, gm) == text);
}

TEST_CASE("torus files round-trip") {
    auto gw = zoo::good_wave();
    TorusConfig t;
    t.dim = 3;
    t.periods = Coord{3, 3, 5};
    t.data.assign(t.cells(), zoo::gw_blank(gw));
    t.set(Coord{1, 2, 3}, zoo::gw_cube(gw));
    std::string text = save_torus_text(t, gw);
    TorusConfig u = load_torus_text(text, gw);
    CHECK(t == u);
    CHECK(save_torus_text(u, gw) == text);
}

TEST_CASE("malformed files raise input errors") {
    auto gm = zoo::golden_mean();
    CHECK_THROWS_AS(load_spec_text("nonsense 3\n"), spec_error);
    CHECK_THROWS_AS(load_spec_text("sftspec 1\nname x\ndim 1\n"), spec_error);  // no end
    CHECK_THROWS_AS(load_pattern_text("sftpattern 1\ncell (0)=zz\nend\n", gm), spec_error);
    CHECK_THROWS_AS(load_torus_text("sfttorus 1\ndim 1\nperiods 3\ndata 0 0\nend\n", gm),
                    spec_error);
}

TEST_CASE("render rejects 1d input") {
    auto gm = zoo::golden_mean();
    TorusConfig t;
    t.dim = 1;
    t.periods = Coord{4, 1, 1};
    t.data.assign(4, 0);
    CHECK_THROWS_AS(render_svg(gm, t), spec_error);
}

TEST_CASE("render output is deterministic and svg-shaped") {
    auto xs = zoo::x_struct();
    TorusConfig t;
    t.dim = 2;
    t.periods = Coord{4, 4, 1};
    t.data.assign(t.cells(), zoo::blue_cross(xs));
    auto a = render_svg(xs, t);
    auto b = render_svg(xs, t);
    CHECK(a == b);
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("</svg>") != std::string::npos);

    auto worm = zoo::worm_shift();
    TorusConfig w;
    w.dim = 2;
    w.periods = Coord{5, 5, 1};
    w.data.assign(w.cells(), 0);
    for (int y = 0; y < 5; ++y) w.set(Coord{2, y}, worm.spec.alphabet.require("line"));
    auto svg = render_svg(worm.spec, w);
    CHECK(svg.find("line") != std::string::npos);
}

TEST_CASE("json artifacts are stable across calls") {
    Shift gm = zoo::by_name("golden-mean");
    ExchangeabilityParams params;
    params.agreement_radius = 2;
    params.margin = 1;
    params.budget = SearchBudget{1'000'000, 10'000, 42};
    auto g1 = exchangeability_graph(gm, Support{{Coord{0}, Coord{1}}}, params);
    auto g2 = exchangeability_graph(gm, Support{{Coord{0}, Coord{1}}}, params);
    CHECK(to_json(gm.spec, g1).dump() == to_json(gm.spec, g2).dump());
    CHECK(to_dot(g1) == to_dot(g2));
}
