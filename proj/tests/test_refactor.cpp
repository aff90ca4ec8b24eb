#include "support.hpp"

#include "deltarc/refactor.hpp"

#include <doctest.h>

#include <set>

using namespace deltarc;
using namespace testsupport;

namespace {

ComponentType arc(const std::string& text) {
    return parse_architecture(SourceFile{"t.arc", SourceFile::Kind::architecture, text});
}
Delta delta(const std::string& text) { return parse_delta(SourceFile{"t.delta", SourceFile::Kind::delta, text}); }

std::vector<DeltaOp> ops(const std::string& body) {
    return delta("delta D { modify component A { " + body + " } }").blocks.at(0).ops;
}

std::vector<std::string> describe_all(const std::vector<DeltaOp>& list) {
    std::vector<std::string> out;
    for (const auto& op : list) {
        out.push_back(describe(op));
    }
    return out;
}

std::set<std::string> as_set(const DeltaConfig& c) { return {c.deltas.begin(), c.deltas.end()}; }

// Compares two delta models up to declaration order: same core structure,
// same constraints and op multisets per delta, same configuration contents.
void check_same_model(const DeltaModel& actual, const DeltaModel& expected) {
    CHECK(structural_diff(expected.core, actual.core) == std::vector<std::string>{});
    std::vector<std::string> actual_names;
    std::vector<std::string> expected_names;
    for (const auto& [n, d] : actual.deltas) {
        actual_names.push_back(n);
    }
    for (const auto& [n, d] : expected.deltas) {
        expected_names.push_back(n);
    }
    REQUIRE(actual_names == expected_names);
    for (const auto& [n, d] : expected.deltas) {
        CAPTURE(n);
        const auto& a = actual.delta(n);
        CHECK(unparse(a.aoc) == unparse(d.aoc));
        CHECK(op_multiset(a) == op_multiset(d));
    }
    REQUIRE(actual.configs.size() == expected.configs.size());
    for (const auto& [n, c] : expected.configs) {
        CAPTURE(n);
        CHECK(as_set(actual.config(n)) == as_set(c));
    }
}

DeltaModel model_of(const std::string& s) { return load_product_line(scenario(s)).model; }

ComponentType apply_all(ComponentType arch, const std::vector<ModifyBlock>& blocks) {
    return apply_delta(arch, Delta{"composed", AocExpr(), blocks});
}

} // namespace

TEST_CASE("constraint rewriting") {
    CHECK(unparse(simplify(AocExpr::conjunction(AocExpr(), parse_aoc("A")))) == "A");
    CHECK(simplify(AocExpr::disjunction(AocExpr(), parse_aoc("A"))).is_true());
    CHECK(unparse(remove_aoc_literal(parse_aoc("A && !B && C"), "B")) == "A && C");
    CHECK(remove_aoc_literal(parse_aoc("!B || C"), "C").is_true());
    CHECK(remove_aoc_literal(parse_aoc("B"), "B").is_true());
    CHECK(unparse(rename_aoc_literal(parse_aoc("A && !B"), "B", "E")) == "A && !E");
    CHECK(unparse(rename_aoc_literal(parse_aoc("(B || C) && !B"), "B", "C")) == "(C || C) && !C");
}

TEST_CASE("property: removing a literal leaves constraints free of it") {
    for (const auto& s : scenario_names()) {
        const auto m = model_of(s);
        for (const auto& [n, d] : m.deltas) {
            for (const auto& lit : d.aoc.names()) {
                const auto r = remove_aoc_literal(d.aoc, lit);
                CHECK_FALSE(r.names().contains(lit));
            }
        }
    }
}

TEST_CASE("op sequence simplification") {
    CHECK(simplify_ops(ops("add port in T p; remove port p;")).empty());
    CHECK(simplify_ops(ops("add component B b; remove component b;")).empty());
    CHECK(describe_all(simplify_ops(ops("add component B b; replace component b with component C c;"))) ==
          std::vector<std::string>{"add component C c"});
    CHECK(describe_all(simplify_ops(ops("replace component b with component C c; replace component c with component E e;"))) ==
          std::vector<std::string>{"replace component b with component E e"});
    CHECK(describe_all(simplify_ops(ops("remove component b; add component C b;"))) ==
          std::vector<std::string>{"replace component b with component C b"});
    CHECK(simplify_ops(ops("connect p -> b.x; disconnect p -> b.x;")).empty());
    CHECK(simplify_ops(ops("disconnect p -> b.x; connect p -> b.x;")).empty());
    CHECK(describe_all(simplify_ops(ops("add port in T p; add port in T q; remove port p;"))) ==
          std::vector<std::string>{"add port in T q"});
    // a chain collapses to a fixed point
    CHECK(simplify_ops(ops("add component B b; replace component b with component C c; remove component c;")).empty());
    // ports and components of the same name are different elements only across kinds of op
    CHECK(simplify_ops(ops("add port in T p; remove component p;")).size() == 2);
}

TEST_CASE("composing the traction and stability deltas reproduces the composed reference") {
    const auto m = model_of("scenario3");
    const auto c = compose_deltas(m, {"DTractionControl", "DElectronicStabilityControl"}, "DElectronicStabilityControl");
    REQUIRE_FALSE(c.cancelled());
    const auto expected = load_delta(reference("DElectronicStabilityControl_composed.delta"));
    CHECK(unparse(c.delta->aoc) == unparse(expected.aoc));
    CHECK(unparse(c.delta->aoc) == "DAntiLockBrakingSystem && !DFourWheelDrive");
    CHECK(op_multiset(*c.delta) == op_multiset(expected));

    // both orderings of the ops give the same architecture on the ABS core
    const auto ctx = load_arc(reference("core_with_abs.arc"));
    CHECK(structural_equal(apply_delta(ctx, *c.delta), apply_delta(ctx, expected)));
    CHECK_THROWS_AS((void)compose_deltas(m, {"DTractionControl"}, "X"), Error);
}

TEST_CASE("composition refactoring of scenario 3 yields scenario 4") {
    const auto outcome = apply_compose_refactoring(model_of("scenario3"),
                                                   {"DTractionControl", "DElectronicStabilityControl"},
                                                   "DElectronicStabilityControl");
    CHECK(outcome.preserved());
    CHECK(outcome.removed_deltas == std::vector<std::string>{"DTractionControl"});
    check_same_model(outcome.new_model, model_of("scenario4"));
}

TEST_CASE("merging the anti-lock delta into the core yields the core with ABS and scenario 5") {
    const auto outcome = apply_merge_with_core(model_of("scenario4"), {"DAntiLockBrakingSystem"});
    CHECK(outcome.preserved());
    CHECK(structural_equal(outcome.new_model.core, load_arc(reference("core_with_abs.arc"))));
    check_same_model(outcome.new_model, model_of("scenario5"));
}

TEST_CASE("merging the stability delta with an inverse yields the inverse reference and scenario 6") {
    MergeOptions opts;
    opts.with_inverse = true;
    const auto outcome = apply_merge_with_core(model_of("scenario5"), {"DElectronicStabilityControl"}, opts);
    CHECK(outcome.preserved());
    CHECK(outcome.added_deltas == std::vector<std::string>{"DInverse"});
    const auto& inv = outcome.new_model.delta("DInverse");
    const auto expected = load_delta(reference("DInverse.delta"));
    CHECK(unparse(inv.aoc) == unparse(expected.aoc));
    CHECK(op_multiset(inv) == op_multiset(expected));
    CHECK(outcome.new_model.config("CarWithABS").deltas == std::vector<std::string>{"DInverse"});
    CHECK_FALSE(outcome.new_model.configs.contains("OldCore"));
    check_same_model(outcome.new_model, model_of("scenario6"));
}

TEST_CASE("merging with an inverse adds a configuration for the old core when needed") {
    DeltaModel m;
    m.core = arc("component A { }");
    m.deltas.emplace("D1", delta("delta D1 { modify component A { add port in T p; } }"));
    m.deltas.emplace("D2", delta("delta D2 { modify component A { add port in T q; } }"));
    m.configs.emplace("C1", DeltaConfig{"C1", {"D1"}});
    m.configs.emplace("C2", DeltaConfig{"C2", {"D2"}});
    MergeOptions opts;
    opts.with_inverse = true;
    const auto outcome = apply_merge_with_core(m, {"D1"}, opts);
    CHECK(outcome.preserved());
    CHECK(outcome.new_model.config("C2").deltas == std::vector<std::string>{"DInverse", "D2"});
    CHECK(outcome.new_model.config("C1").deltas.empty());
    REQUIRE(outcome.new_model.configs.contains("OldCore"));
    CHECK(outcome.new_model.config("OldCore").deltas == std::vector<std::string>{"DInverse"});
    CHECK(structural_equal(generate_variant(outcome.new_model, outcome.new_model.config("OldCore")), m.core));
}

TEST_CASE("a refactoring that changes a variant is rejected") {
    try {
        (void)apply_merge_with_core(model_of("base"), {"DAntiLockBrakingSystem"});
        FAIL("expected a preservation violation");
    } catch (const PreservationViolation& e) {
        std::set<std::string> broken;
        for (const auto& entry : e.report()) {
            if (!entry.preserved) {
                broken.insert(entry.config);
            }
        }
        CHECK(broken == std::set<std::string>{"BikeWithoutABS", "CarWithoutABS"});
    }
}

TEST_CASE("a composition that cancels out is an error") {
    DeltaModel m;
    m.core = arc("component A { }");
    m.deltas.emplace("D1", delta("delta D1 { modify component A { add port in T p; } }"));
    m.deltas.emplace("D2", delta("delta D2 after D1 { modify component A { remove port p; } }"));
    m.configs.emplace("C", DeltaConfig{"C", {"D1", "D2"}});
    CHECK(compose_deltas(m, {"D1", "D2"}, "D").cancelled());
    CHECK_THROWS_AS((void)apply_compose_refactoring(m, {"D1", "D2"}, "D"), EmptyCompositionError);
}

TEST_CASE("composition renames literals of dropped members") {
    DeltaModel m;
    m.core = arc("component A { }");
    m.deltas.emplace("D1", delta("delta D1 { modify component A { add port in T p; } }"));
    m.deltas.emplace("D2", delta("delta D2 after D1 { modify component A { add port in T q; } }"));
    m.deltas.emplace("D3", delta("delta D3 after D2 { modify component A { add port in T r; } }"));
    m.deltas.emplace("D4", delta("delta D4 after !D1 { modify component A { add port in T s; } }"));
    m.configs.emplace("C", DeltaConfig{"C", {"D1", "D2", "D3"}});
    m.configs.emplace("E", DeltaConfig{"E", {"D4"}});
    const auto outcome = apply_compose_refactoring(m, {"D1", "D2"}, "D12");
    CHECK(outcome.preserved());
    CHECK(unparse(outcome.new_model.delta("D3").aoc) == "D12");
    CHECK(unparse(outcome.new_model.delta("D4").aoc) == "!D12");
    CHECK(outcome.new_model.config("C").deltas == std::vector<std::string>{"D12", "D3"});
    CHECK(outcome.new_model.delta("D12").aoc.is_true());
}

TEST_CASE("inverse names") {
    CHECK(default_inverse_name("DTractionControl") == "DInverseTractionControl");
    CHECK(default_inverse_name("Dx") == "DInverseDx");
    CHECK(default_inverse_name("Foo") == "DInverseFoo");
}

TEST_CASE("inverting a delta that does not apply is an error") {
    const auto d = delta("delta D { modify component A { remove port p; } }");
    CHECK_THROWS_AS((void)invert_delta(d, arc("component A { }")), InapplicableDeltaError);
}

TEST_CASE("property: an inverse undoes its delta in every reachable context") {
    std::size_t checked = 0;
    for (const auto& s : scenario_names()) {
        const auto m = model_of(s);
        for (const auto& [cname, config] : m.configs) {
            for (const auto& order : compute_orders(m, config)) {
                ComponentType ctx = m.core;
                for (const auto& name : order) {
                    const auto& d = m.delta(name);
                    const auto after = apply_delta(ctx, d);
                    const auto inv = invert_delta(d, ctx);
                    CAPTURE(name);
                    CHECK(structural_equal(apply_delta(after, inv), ctx));
                    CHECK(inv.aoc.is_true());
                    ctx = after;
                    ++checked;
                }
            }
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("property: a composed block applies like its members in sequence") {
    std::size_t checked = 0;
    for (const auto& s : scenario_names()) {
        const auto m = model_of(s);
        for (const auto& [cname, config] : m.configs) {
            const auto order = compute_orders(m, config, 1).front();
            for (std::size_t i = 0; i < order.size(); ++i) {
                for (std::size_t j = i + 2; j <= order.size(); ++j) {
                    ComponentType ctx = m.core;
                    for (std::size_t k = 0; k < i; ++k) {
                        ctx = apply_delta(ctx, m.delta(order[k]));
                    }
                    std::vector<const Delta*> members;
                    ComponentType sequential = ctx;
                    for (std::size_t k = i; k < j; ++k) {
                        members.push_back(&m.delta(order[k]));
                        sequential = apply_delta(sequential, m.delta(order[k]));
                    }
                    CHECK(structural_equal(apply_all(ctx, compose_blocks(members)), sequential));
                    ++checked;
                }
            }
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("property: every adjacent composition on the fixtures preserves all variants") {
    for (const auto& s : scenario_names()) {
        const auto m = model_of(s);
        std::set<std::vector<std::string>> tried;
        for (const auto& [cname, config] : m.configs) {
            const auto order = compute_orders(m, config, 1).front();
            for (std::size_t i = 0; i + 1 < order.size(); ++i) {
                std::vector<std::string> seq{order[i], order[i + 1]};
                if (!tried.insert(seq).second) {
                    continue;
                }
                CAPTURE(s);
                CAPTURE(seq[0]);
                CAPTURE(seq[1]);
                try {
                    const auto outcome = apply_compose_refactoring(m, seq, "DComposed");
                    CHECK(outcome.preserved());
                    CHECK(check_family(outcome.new_model).passes(false));
                } catch (const PreservationViolation& e) {
                    // a rejection must name a configuration whose variant changed
                    CHECK_FALSE(e.report().empty());
                }
            }
        }
    }
}

TEST_CASE("removing configurations of scenario 1 yields scenario 2") {
    auto m = model_of("scenario1");
    for (const auto* name : {"BikeWithABS", "BikeWithoutABS", "CarWithoutABS", "CarWithTC"}) {
        m = remove_config(m, name);
    }
    CHECK_FALSE(m.deltas.contains("DTwoWheel"));
    check_same_model(m, model_of("scenario2"));
    CHECK_THROWS_AS((void)remove_config(m, "Nope"), UnknownConfigError);

    const auto kept = remove_config(model_of("scenario1"), "BikeWithoutABS", false);
    CHECK(kept.deltas.contains("DTwoWheel"));
}

TEST_CASE("replacing the cruise control delta of scenario 2 yields scenario 3") {
    const auto m = replace_delta(model_of("scenario2"), model_of("scenario3").delta("DAdaptiveCruiseControl"));
    check_same_model(m, model_of("scenario3"));
    CHECK_THROWS_AS((void)replace_delta(m, Delta{"DMissing", AocExpr(), {}}), UnknownDeltaError);
}

TEST_CASE("adding deltas and configurations") {
    auto m = model_of("scenario2");
    const auto d = delta("delta DExtra after DAntiLockBrakingSystem { modify component BrakingSystem { add port in T extra; } }");
    m = add_delta(m, d);
    CHECK(m.deltas.contains("DExtra"));
    CHECK_THROWS_AS((void)add_delta(m, d), Error);
    m = add_config(m, DeltaConfig{"CarWithExtra", {"DAntiLockBrakingSystem", "DExtra"}});
    CHECK(find_port(generate_variant(m, m.config("CarWithExtra"), GenerateOptions{true, false}), "extra") != nullptr);
    CHECK_THROWS_AS((void)add_config(m, DeltaConfig{"Bad", {"DNope"}}), Error);
}
