#include "deltarc/annotative.hpp"

#include <algorithm>

namespace deltarc {

namespace {

bool can_coexist(const VariantSet& a, const VariantSet& b) {
    if (a.empty() || b.empty()) {
        return true;
    }
    return std::any_of(a.begin(), a.end(), [&](const std::string& v) { return b.contains(v); });
}

template <typename T>
bool selected(const Annotated<T>& e, std::string_view variant) {
    return e.variants.empty() || e.variants.contains(variant);
}

} // namespace

AnnotatedComponentType annotate_as_core(const ComponentType& component) {
    AnnotatedComponentType out;
    out.name = component.name;
    out.autoconnect_port = component.autoconnect_port;
    for (const auto& p : component.ports) {
        out.ports.push_back({p, {}});
    }
    for (const auto& s : component.subcomponents) {
        out.subcomponents.push_back({s, {}});
    }
    for (const auto& c : component.connectors) {
        out.connectors.push_back({c, {}});
    }
    return out;
}

std::vector<InvariantViolation> check_local_invariants(const AnnotatedComponentType& model) {
    using Rule = InvariantViolation::Rule;
    std::vector<InvariantViolation> out;
    auto ident = [&](const std::string& s, const std::string& what) {
        if (!is_identifier(s)) {
            out.push_back({Rule::invalid_identifier, s, what + " '" + s + "' is not a valid identifier"});
        }
    };
    ident(model.name, "component name");

    const auto& ports = model.ports;
    const auto& subs = model.subcomponents;
    for (std::size_t i = 0; i < ports.size(); ++i) {
        ident(ports[i].element.name, "port name");
        ident(ports[i].element.type_name, "port type");
        for (std::size_t j = 0; j < i; ++j) {
            if (ports[j].element.name == ports[i].element.name && can_coexist(ports[i].variants, ports[j].variants)) {
                out.push_back({Rule::duplicate_port_name, ports[i].element.name,
                               "port '" + ports[i].element.name + "' declared twice in one variant"});
                break;
            }
        }
    }
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const auto& s = subs[i];
        ident(s.element.instance_name, "subcomponent name");
        ident(s.element.type_name, "subcomponent type");
        bool duplicate = false;
        for (std::size_t j = 0; j < i && !duplicate; ++j) {
            if (subs[j].element.instance_name == s.element.instance_name && can_coexist(s.variants, subs[j].variants)) {
                out.push_back({Rule::duplicate_subcomponent_name, s.element.instance_name,
                               "subcomponent '" + s.element.instance_name + "' declared twice in one variant"});
                duplicate = true;
            }
        }
        for (const auto& p : ports) {
            if (duplicate) {
                break;
            }
            if (p.element.name == s.element.instance_name && can_coexist(s.variants, p.variants)) {
                out.push_back({Rule::port_subcomponent_clash, s.element.instance_name,
                               "'" + s.element.instance_name + "' names both a port and a subcomponent"});
                break;
            }
        }
    }
    for (const auto& c : model.connectors) {
        if (c.element.source == c.element.target) {
            out.push_back({Rule::self_loop_connector, c.element.str(),
                           "connector '" + c.element.str() + "' connects an end to itself"});
        }
    }
    return out;
}

VariantSet list_variants(const AnnotatedComponentType& model) {
    VariantSet out;
    auto add = [&](const VariantSet& v) { out.insert(v.begin(), v.end()); };
    for (const auto& p : model.ports) {
        add(p.variants);
    }
    for (const auto& s : model.subcomponents) {
        add(s.variants);
    }
    for (const auto& c : model.connectors) {
        add(c.variants);
    }
    return out;
}

ComponentType project_variant(const AnnotatedComponentType& model, std::string_view variant) {
    if (variant != core_variant_name && !list_variants(model).contains(variant)) {
        throw UnknownVariantError(std::string(variant));
    }
    ComponentType out;
    out.name = model.name;
    out.autoconnect_port = model.autoconnect_port;
    for (const auto& p : model.ports) {
        if (selected(p, variant)) {
            out.ports.push_back(p.element);
        }
    }
    for (const auto& s : model.subcomponents) {
        if (selected(s, variant)) {
            out.subcomponents.push_back(s.element);
        }
    }
    for (const auto& c : model.connectors) {
        if (selected(c, variant)) {
            out.connectors.push_back(c.element);
        }
    }
    if (auto v = check_local_invariants(out); !v.empty()) {
        throw InvariantError("projection of variant '" + std::string(variant) + "' is not a valid component",
                             std::move(v));
    }
    return out;
}

} // namespace deltarc
