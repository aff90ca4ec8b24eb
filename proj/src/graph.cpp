#include "deltarc/graph.hpp"

#include "deltarc/engine.hpp"

namespace deltarc {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

std::string core_id(const DeltaModel& model) { return quoted("core:" + model.core.name); }

std::string delta_id(const std::string& name) { return quoted(name); }

} // namespace

std::set<std::pair<std::string, std::string>> successor_edges(const DeltaModel& model, std::size_t order_limit) {
    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& [name, config] : model.configs) {
        std::vector<ApplicationOrder> orders;
        try {
            orders = compute_orders(model, config, order_limit);
        } catch (const Error&) {
            continue;
        }
        for (const auto& order : orders) {
            std::string previous = model.core.name;
            for (const auto& d : order) {
                edges.emplace(previous, d);
                previous = d;
            }
        }
    }
    return edges;
}

std::string to_dot(const DeltaModel& model, std::size_t order_limit) {
    std::string out = "digraph " + quoted(model.core.name) + " {\n";
    out += "  node [shape=ellipse];\n";
    out += "  " + core_id(model) + " [shape=box, label=" + quoted(model.core.name) + "];\n";
    for (const auto& [name, delta] : model.deltas) {
        out += "  " + delta_id(name) + ";\n";
    }
    for (const auto& [from, to] : successor_edges(model, order_limit)) {
        const auto source = from == model.core.name && !model.deltas.contains(from) ? core_id(model) : delta_id(from);
        out += "  " + source + " -> " + delta_id(to) + ";\n";
    }
    for (const auto& [name, config] : model.configs) {
        const auto id = quoted("config:" + name);
        out += "  " + id + " [shape=box, style=dashed, label=" + quoted(name) + "];\n";
        std::string last = core_id(model);
        try {
            const auto orders = compute_orders(model, config, 1);
            if (!orders.front().empty()) {
                last = delta_id(orders.front().back());
            }
        } catch (const Error&) {
            continue;
        }
        out += "  " + last + " -> " + id + " [style=dashed, arrowhead=none];\n";
    }
    out += "}\n";
    return out;
}

} // namespace deltarc
