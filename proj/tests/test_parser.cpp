#include "support.hpp"

#include "deltarc/parser.hpp"

#include <doctest.h>

#include <random>

using namespace deltarc;
using namespace testsupport;

namespace {

SourceFile arc(std::string text) { return {"test.arc", SourceFile::Kind::architecture, std::move(text)}; }
SourceFile delta_src(std::string text) { return {"test.delta", SourceFile::Kind::delta, std::move(text)}; }
SourceFile config_src(std::string text) { return {"test.deltaconfig", SourceFile::Kind::config, std::move(text)}; }
SourceFile annotated_src(std::string text) { return {"test.arc", SourceFile::Kind::annotated, std::move(text)}; }

} // namespace

TEST_CASE("core architecture parses into ports, subcomponents and autoconnect") {
    const auto core = load_arc(reference("core.arc"));
    CHECK(core.name == "BrakingSystem");
    CHECK(core.autoconnect_port);
    REQUIRE(core.ports.size() == 5);
    CHECK(core.ports[0] == PortDecl{Direction::in, "BrakeCommand", "brake"});
    CHECK(core.ports[4] == PortDecl{Direction::out, "BrakePressure", "wheelpressure4"});
    REQUIRE(core.subcomponents.size() == 1);
    CHECK(core.subcomponents[0] == SubcomponentDecl{"PressureCalculator", "brakefunction"});
    CHECK(core.connectors.empty());
}

TEST_CASE("delta with after-clause parses constraint and ops in order") {
    const auto d = load_delta(reference("DTractionControl.delta"));
    CHECK(d.name == "DTractionControl");
    CHECK(d.aoc == parse_aoc("DAntiLockBrakingSystem && !DTwoWheel"));
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0].target_component == "BrakingSystem");
    REQUIRE(d.op_count() == 6);
    CHECK(describe(d.blocks[0].ops[0]) == "add port in AccelerateCommand accel");
    CHECK(describe(d.blocks[0].ops[1]) == "add component TC stabilizer");
    CHECK(describe(d.blocks[0].ops[2]) == "connect brakefunction.wheelpressure1 -> stabilizer.fromabs1");
}

TEST_CASE("delta without after-clause has the constraint true") {
    const auto d = load_delta(reference("DAntiLockBrakingSystem.delta"));
    CHECK(d.aoc.is_true());
    REQUIRE(d.op_count() == 5);
    CHECK(describe(d.blocks[0].ops[4]) == "replace component brakefunction with component ABS brakefunction");
}

TEST_CASE("configuration lists deltas in written order") {
    const auto c = load_config(reference("CarWithRG.deltaconfig"));
    CHECK(c.name == "CarWithRG");
    CHECK(c.deltas == std::vector<std::string>{"DAntiLockBrakingSystem", "DTractionControl",
                                               "DElectronicStabilityControl", "DFourWheelDrive", "DReductionGear"});
    CHECK(parse_config(config_src("deltaconfig Empty { }")).deltas.empty());
}

TEST_CASE("fan-out connect yields one connector per target") {
    const auto c = parse_architecture(arc("component A { port in T x; component B b; component B c; connect x -> b.y, c.y; }"));
    REQUIRE(c.connectors.size() == 2);
    CHECK(c.connectors[0].str() == "x -> b.y");
    CHECK(c.connectors[1].str() == "x -> c.y");
}

TEST_CASE("subcomponent without instance name is named after its type") {
    const auto d = load_delta(reference("DReductionGear.delta"));
    CHECK(describe(d.blocks[0].ops[0]) == "add component BrakeAmplifier BrakeAmplifier");
}

TEST_CASE("constraint precedence: not binds tighter than and, and tighter than or") {
    const auto a = AocExpr::name("A");
    const auto b = AocExpr::name("B");
    const auto c = AocExpr::name("C");
    CHECK(parse_aoc("A || B && !C") == AocExpr::disjunction(a, AocExpr::conjunction(b, AocExpr::negation(c))));
    CHECK(parse_aoc("(A || B) && C") == AocExpr::conjunction(AocExpr::disjunction(a, b), c));
    CHECK(parse_aoc("!(A && B)") == AocExpr::negation(AocExpr::conjunction(a, b)));
    CHECK(parse_aoc("A && B && C") == AocExpr::conjunction(AocExpr::conjunction(a, b), c));
}

TEST_CASE("constraint printing uses minimal parentheses and reparses identically") {
    for (const auto* text : {"A && B && C", "A || B && C", "(A || B) && C", "A && (B && C)", "!(A || B)", "!!A",
                             "A || (B || C)", "!A && !B || C"}) {
        CAPTURE(text);
        const auto e = parse_aoc(text);
        CHECK(parse_aoc(unparse(e)) == e);
    }
    CHECK(unparse(parse_aoc("A && B && C")) == "A && B && C");
    CHECK(unparse(parse_aoc("(A || B) && C")) == "(A || B) && C");
    CHECK(unparse(parse_aoc("A && (B && C)")) == "A && (B && C)");
    CHECK(unparse(parse_aoc("((A))")) == "A");
}

TEST_CASE("keywords cannot be used as identifiers") {
    CHECK_THROWS_AS((void)parse_architecture(arc("component delta { }")), ParseError);
    CHECK_THROWS_AS((void)parse_architecture(arc("component A { port in T port; }")), ParseError);
    CHECK_THROWS_AS((void)parse_config(config_src("deltaconfig C { after }")), ParseError);
}

TEST_CASE("parse errors carry the position of the offending token") {
    try {
        (void)parse_architecture(arc("component A {\n  port in T p\n}"));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 1);
        CHECK(e.path() == "test.arc");
    }
    try {
        (void)parse_delta(delta_src("delta D {\n  modify component A {\n    add prt in T p;\n  }\n}"));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 9);
    }
}

TEST_CASE("column counts code points, not bytes") {
    try {
        (void)parse_architecture(arc("// \xc3\xa4\xc3\xb6\ncomponent A { \xc3\xa4 }"));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 15);
    }
}

TEST_CASE("unterminated block comment is a parse error") {
    CHECK_THROWS_AS((void)parse_architecture(arc("component A { } /* open")), ParseError);
}

TEST_CASE("semantic parse checks") {
    CHECK_THROWS_AS((void)parse_delta(delta_src("delta D after D { modify component A { add port in T p; } }")),
                    SelfReferenceError);
    CHECK_THROWS_AS((void)parse_config(config_src("deltaconfig C { A, B, A }")), DuplicateDeltaError);
    CHECK_THROWS_AS((void)parse_annotated(annotated_src("component A { port <<variant = \"\">> in T p; }")),
                    EmptyVariantListError);
    CHECK_THROWS_AS((void)parse_annotated(annotated_src("component A { port <<variant = \"X, \">> in T p; }")),
                    EmptyVariantListError);
    CHECK_THROWS_AS((void)parse_delta(delta_src("delta D { }")), ParseError);
    CHECK_THROWS_AS((void)parse_delta(delta_src("delta D { modify component A { } }")), ParseError);
}

TEST_CASE("architecture violating local invariants is rejected") {
    CHECK_THROWS_AS((void)parse_architecture(arc("component A { port in T p, out T p; }")), InvariantError);
    CHECK_THROWS_AS((void)parse_architecture(arc("component A { port in T b; component B b; }")), InvariantError);
    CHECK_THROWS_AS((void)parse_architecture(arc("component A { component B b; component C b; }")), InvariantError);
}

TEST_CASE("annotations attach variant sets to ports, subcomponents and connectors") {
    const auto m = parse_annotated(SourceFile::load(reference("annotated_port_fragment.arc"), true));
    REQUIRE(m.ports.size() == 2);
    CHECK(m.ports[0].variants.empty());
    CHECK(m.ports[1].variants == VariantSet{"BikeWithABS"});

    const auto full = parse_annotated(annotated_src(
        "component A { port in T p; <<variant = \"X, Y\">> component B b; <<variant = \"Y\">> connect p -> b.q; }"));
    CHECK(full.subcomponents[0].variants == VariantSet{"X", "Y"});
    CHECK(full.connectors[0].variants == VariantSet{"Y"});
}

TEST_CASE("file kind follows the extension") {
    CHECK(SourceFile::kind_for("a/b.arc") == SourceFile::Kind::architecture);
    CHECK(SourceFile::kind_for("a/b.arc", true) == SourceFile::Kind::annotated);
    CHECK(SourceFile::kind_for("b.delta") == SourceFile::Kind::delta);
    CHECK(SourceFile::kind_for("b.deltaconfig") == SourceFile::Kind::config);
    CHECK_THROWS_AS((void)SourceFile::kind_for("b.txt"), Error);
}

// ---------------------------------------------------------------------------
// Properties over every fixture

TEST_CASE("property: printing and reparsing every fixture is the identity") {
    const auto files = all_fixture_sources();
    REQUIRE(files.size() > 100);
    for (const auto& path : files) {
        CAPTURE(path.string());
        const auto src = load_any(path);
        const auto text = canonical(src);
        const SourceFile again{src.path, src.kind, text};
        switch (src.kind) {
        case SourceFile::Kind::architecture: CHECK(parse_architecture(again) == parse_architecture(src)); break;
        case SourceFile::Kind::delta: CHECK(parse_delta(again) == parse_delta(src)); break;
        case SourceFile::Kind::config: CHECK(parse_config(again) == parse_config(src)); break;
        case SourceFile::Kind::annotated: CHECK(parse_annotated(again) == parse_annotated(src)); break;
        }
        CHECK(canonical(again) == text);
    }
}

TEST_CASE("property: comments and extra whitespace do not change the parse") {
    for (const auto& path : all_fixture_sources()) {
        CAPTURE(path.string());
        const auto src = load_any(path);
        std::string noisy = "/* header */\n";
        for (char c : src.text) {
            if (c == '\n') {
                noisy += "   // trailing note\n\t";
            } else {
                noisy += c;
            }
        }
        const SourceFile commented{src.path, src.kind, noisy};
        CHECK(canonical(commented) == canonical(src));
    }
}

TEST_CASE("property: single-token corruptions yield a positioned parse error") {
    std::mt19937 rng(corruption_seed);
    for (const auto kind : {SourceFile::Kind::architecture, SourceFile::Kind::delta, SourceFile::Kind::config,
                            SourceFile::Kind::annotated}) {
        const auto cases = corruptions(kind, 100, rng);
        REQUIRE(cases.size() == 100);
        for (const auto& c : cases) {
            CAPTURE(c.file.path);
            CAPTURE(c.strategy);
            CAPTURE(c.file.text);
            try {
                (void)canonical(c.file);
                FAIL("corruption was accepted");
            } catch (const ParseError& e) {
                CHECK(e.line() >= 1);
                CHECK(e.column() >= 1);
                if (c.strategy == Corruption::Strategy::replace) {
                    CHECK(e.line() == c.token.line);
                    CHECK(e.column() == c.token.column);
                }
            }
        }
    }
}
