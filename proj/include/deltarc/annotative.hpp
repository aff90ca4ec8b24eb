#pragma once

// Annotative (150%) architecture models: a single component type in which
// every port, subcomponent and connector may carry the set of variants that
// include it. Elements without annotation belong to every variant.

#include "deltarc/model.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace deltarc {

using VariantSet = std::set<std::string, std::less<>>;

template <typename T>
struct Annotated {
    T element;
    VariantSet variants; // empty: core element

    friend bool operator==(const Annotated&, const Annotated&) = default;
};

struct AnnotatedComponentType {
    std::string name;
    bool autoconnect_port = false;
    std::vector<Annotated<PortDecl>> ports;
    std::vector<Annotated<SubcomponentDecl>> subcomponents;
    std::vector<Annotated<Connector>> connectors;

    friend bool operator==(const AnnotatedComponentType&, const AnnotatedComponentType&) = default;
};

/// Reserved variant name selecting only unannotated elements.
inline constexpr std::string_view core_variant_name = "core";

/// Lifts a plain component type; every element becomes a core element.
[[nodiscard]] AnnotatedComponentType annotate_as_core(const ComponentType& component);

/// Local invariants over all elements. Two elements with the same name clash
/// only if some projection can contain both, i.e. one of them is a core
/// element or their variant sets intersect.
[[nodiscard]] std::vector<InvariantViolation> check_local_invariants(const AnnotatedComponentType& model);

/// Union of all annotation sets.
[[nodiscard]] VariantSet list_variants(const AnnotatedComponentType& model);

class UnknownVariantError : public Error {
public:
    explicit UnknownVariantError(std::string variant)
        : Error("unknown variant '" + variant + "'"), variant_(std::move(variant)) {}

    [[nodiscard]] const std::string& variant() const noexcept { return variant_; }

private:
    std::string variant_;
};

/// Keeps the core elements plus every element annotated with `variant` and
/// strips all annotations. `variant` must occur in some annotation or be
/// core_variant_name. Throws UnknownVariantError, or InvariantError when the
/// projection violates check_local_invariants.
[[nodiscard]] ComponentType project_variant(const AnnotatedComponentType& model, std::string_view variant);

} // namespace deltarc
