#include "support.hpp"

#include "deltarc/annotative.hpp"

#include <doctest.h>

using namespace deltarc;
using namespace testsupport;

namespace {

AnnotatedComponentType annotated(const std::string& text) {
    return parse_annotated(SourceFile{"a.arc", SourceFile::Kind::annotated, text});
}

const char* const small = R"(component A {
  port in T p,
    <<variant = "V1">> out T q,
    <<variant = "V2">> out U q;
  <<variant = "V1, V2">> component B b;
  <<variant = "V1">> connect b.y -> q;
})";

} // namespace

TEST_CASE("variants are the union of all annotations") {
    const auto m = annotated(small);
    CHECK(list_variants(m) == VariantSet{"V1", "V2"});
    CHECK(list_variants(annotate_as_core(parse_architecture(
              SourceFile{"c.arc", SourceFile::Kind::architecture, "component A { port in T p; }"})))
              .empty());
}

TEST_CASE("projection keeps core elements and those annotated with the variant") {
    const auto m = annotated(small);
    const auto v1 = project_variant(m, "V1");
    CHECK(v1.ports.size() == 2);
    CHECK(find_port(v1, "q")->type_name == "T");
    CHECK(v1.subcomponents.size() == 1);
    CHECK(v1.connectors.size() == 1);

    const auto v2 = project_variant(m, "V2");
    CHECK(find_port(v2, "q")->type_name == "U");
    CHECK(v2.connectors.empty());

    const auto core = project_variant(m, core_variant_name);
    CHECK(core.ports.size() == 1);
    CHECK(core.subcomponents.empty());
}

TEST_CASE("unknown variants are rejected") {
    try {
        (void)project_variant(annotated(small), "V3");
        FAIL("expected unknown variant");
    } catch (const UnknownVariantError& e) {
        CHECK(e.variant() == "V3");
    }
}

TEST_CASE("same-named elements clash only when they can coexist") {
    CHECK(check_local_invariants(annotated(small)).empty());
    CHECK_THROWS_AS((void)annotated(R"(component A {
  port in T p, <<variant = "V1">> out T p;
})"),
                    InvariantError);
    CHECK_THROWS_AS((void)annotated(R"(component A {
  port <<variant = "V1">> in T b;
  <<variant = "V1">> component B b;
})"),
                    InvariantError);

    AnnotatedComponentType overlap;
    overlap.name = "A";
    overlap.subcomponents.push_back({{"B", "b"}, {"V1", "V2"}});
    overlap.subcomponents.push_back({{"C", "b"}, {"V2", "V3"}});
    CHECK(check_local_invariants(overlap).size() == 1);
    CHECK_THROWS_AS((void)project_variant(overlap, "V2"), InvariantError);
    CHECK(project_variant(overlap, "V1").subcomponents.front().type_name == "B");
    CHECK(project_variant(overlap, "V3").subcomponents.front().type_name == "C");

    overlap.subcomponents[1].variants = {"V3"};
    CHECK(check_local_invariants(overlap).empty());
    overlap.subcomponents[1].variants.clear();
    CHECK(check_local_invariants(overlap).size() == 1);
}

TEST_CASE("the annotated port fragment lists its variant") {
    const auto m = parse_annotated(SourceFile::load(reference("annotated_port_fragment.arc"), true));
    CHECK(list_variants(m) == VariantSet{"BikeWithABS"});
    REQUIRE(m.ports.size() == 2);
    CHECK(m.ports[0].variants.empty());
    CHECK(m.ports[1].variants == VariantSet{"BikeWithABS"});
    CHECK(project_variant(m, "BikeWithABS").ports.size() == 2);
    CHECK(project_variant(m, core_variant_name).ports.size() == 1);
}

TEST_CASE("property: both representations of each fixture scenario define the same variants") {
    std::size_t compared = 0;
    for (const auto& s : scenario_names()) {
        const auto line = load_product_line(scenario(s));
        const auto ann = load_annotative(line);
        REQUIRE(ann.has_value());
        CHECK(check_local_invariants(ann->model).empty());

        auto listed = list_variants(ann->model);
        if (!ann->core_variant.empty()) {
            listed.insert(ann->core_variant);
        }
        VariantSet configs;
        for (const auto& [name, c] : line.model.configs) {
            configs.insert(name);
        }
        CAPTURE(s);
        CHECK(listed == configs);

        for (const auto& [name, config] : line.model.configs) {
            CAPTURE(name);
            const auto from_deltas = generate_variant(line.model, config);
            const std::string_view selector = name == ann->core_variant ? core_variant_name : std::string_view(name);
            const auto projected = resolve_autoconnect(project_variant(ann->model, selector), line.model.interfaces);
            CHECK(structural_diff(from_deltas, projected) == std::vector<std::string>{});
            ++compared;
        }
    }
    CHECK(compared == 42);
}
