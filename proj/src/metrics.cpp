#include "deltarc/metrics.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace deltarc {

UnterminatedCommentError::UnterminatedCommentError(int line, int column)
    : Error("unterminated block comment starting at " + std::to_string(line) + ":" + std::to_string(column)),
      line_(line), column_(column) {}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

bool is_continuation(char c) { return (static_cast<unsigned char>(c) & 0xC0) == 0x80; }

} // namespace

CharCount count_chars(std::string_view text) {
    enum class State { code, string, line_comment, block_comment };
    State state = State::code;
    CharCount out;
    bool in_annotation = false;
    int line = 1;
    int column = 1;
    int comment_line = 0;
    int comment_column = 0;

    auto count = [&] {
        ++out.visible;
        if (in_annotation) {
            ++out.annotation;
        }
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        const char next = i + 1 < text.size() ? text[i + 1] : '\0';
        switch (state) {
        case State::code:
            if (c == '/' && next == '/') {
                state = State::line_comment;
            } else if (c == '/' && next == '*') {
                state = State::block_comment;
                comment_line = line;
                comment_column = column;
                ++i;
                ++column;
            } else if (c == '"') {
                state = State::string;
                count();
            } else if (c == '<' && next == '<' && !in_annotation) {
                in_annotation = true;
                count();
            } else if (c == '>' && next == '>' && in_annotation) {
                count();
                count();
                in_annotation = false;
                ++i;
                ++column;
            } else if (!is_space(c) && !is_continuation(c)) {
                count();
            }
            break;
        case State::string:
            if (c == '"') {
                state = State::code;
            }
            if (!is_space(c) && !is_continuation(c)) {
                count();
            }
            break;
        case State::line_comment:
            if (c == '\n') {
                state = State::code;
            }
            break;
        case State::block_comment:
            if (c == '*' && next == '/') {
                state = State::code;
                ++i;
                ++column;
            }
            break;
        }
        if (c == '\n') {
            ++line;
            column = 1;
        } else if (!is_continuation(c)) {
            ++column;
        }
    }
    if (state == State::block_comment) {
        throw UnterminatedCommentError(comment_line, comment_column);
    }
    return out;
}

std::size_t count_visible_chars(std::string_view text) { return count_chars(text).visible; }

double ScenarioMetrics::rel_variant_info() const noexcept {
    return chars == 0 ? 0.0 : static_cast<double>(varchars) / static_cast<double>(chars);
}

double ScenarioMetrics::avg_chars_per_file() const noexcept {
    return files == 0 ? 0.0 : static_cast<double>(chars) / static_cast<double>(files);
}

namespace {

void add_file_stats(ScenarioMetrics& m, const std::vector<SourceFile>& files, bool delta_representation) {
    for (const auto& f : files) {
        CharCount c;
        try {
            c = count_chars(f.text);
        } catch (const UnterminatedCommentError& e) {
            throw Error(f.path + ": " + e.what());
        }
        m.chars += c.visible;
        m.maxchars = std::max(m.maxchars, c.visible);
        ++m.files;
        if (delta_representation) {
            if (f.kind == SourceFile::Kind::delta || f.kind == SourceFile::Kind::config) {
                m.varchars += c.visible;
            }
        } else if (f.kind == SourceFile::Kind::annotated) {
            m.varchars += c.annotation;
        }
    }
}

void add_types(ScenarioMetrics& m, const std::set<std::string>& used_types, const Environment& env) {
    m.components = 1;
    for (const auto& t : used_types) {
        if (auto it = env.find(t); it != env.end()) {
            ++m.components;
            m.ports += it->second.ports.size();
        }
    }
}

} // namespace

ScenarioMetrics measure_delta_model(const std::vector<SourceFile>& files, const DeltaModel& model) {
    ScenarioMetrics m;
    std::set<std::string> types;
    m.ports = model.core.ports.size();
    m.connections = static_cast<std::size_t>(std::count_if(
        model.core.connectors.begin(), model.core.connectors.end(),
        [](const Connector& c) { return c.origin == ConnectorOrigin::declared; }));
    for (const auto& s : model.core.subcomponents) {
        types.insert(s.type_name);
    }
    for (const auto& [name, delta] : model.deltas) {
        for (const auto& block : delta.blocks) {
            for (const auto& op : block.ops) {
                if (std::holds_alternative<AddPort>(op)) {
                    ++m.ports;
                } else if (std::holds_alternative<Connect>(op)) {
                    ++m.connections;
                } else if (const auto* add = std::get_if<AddComponent>(&op)) {
                    types.insert(add->component.type_name);
                } else if (const auto* rep = std::get_if<ReplaceComponent>(&op)) {
                    types.insert(rep->replacement.type_name);
                }
            }
        }
    }
    add_types(m, types, model.interfaces);
    m.variants = model.configs.size();
    add_file_stats(m, files, true);
    return m;
}

ScenarioMetrics measure_annotative_model(const std::vector<SourceFile>& files, const AnnotatedComponentType& model,
                                         const Environment& env, std::string_view core_variant) {
    ScenarioMetrics m;
    std::set<std::string> types;
    for (const auto& s : model.subcomponents) {
        types.insert(s.element.type_name);
    }
    m.ports = model.ports.size();
    m.connections = model.connectors.size();
    add_types(m, types, env);
    const auto variants = list_variants(model);
    m.variants = variants.size() + (!core_variant.empty() && !variants.contains(core_variant) ? 1 : 0);
    add_file_stats(m, files, false);
    return m;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

struct Column {
    std::string header;
    const ScenarioMetrics* metrics;
};

struct Row {
    const char* name;
    std::string (*format)(const ScenarioMetrics&);
};

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

const std::vector<Row>& rows() {
    static const std::vector<Row> table{
        {"components", [](const ScenarioMetrics& m) { return std::to_string(m.components); }},
        {"ports", [](const ScenarioMetrics& m) { return std::to_string(m.ports); }},
        {"connections", [](const ScenarioMetrics& m) { return std::to_string(m.connections); }},
        {"variants", [](const ScenarioMetrics& m) { return std::to_string(m.variants); }},
        {"chars", [](const ScenarioMetrics& m) { return std::to_string(m.chars); }},
        {"varchars", [](const ScenarioMetrics& m) { return std::to_string(m.varchars); }},
        {"rel_variant_info", [](const ScenarioMetrics& m) { return fixed(m.rel_variant_info(), 4); }},
        {"files", [](const ScenarioMetrics& m) { return std::to_string(m.files); }},
        {"maxchars", [](const ScenarioMetrics& m) { return std::to_string(m.maxchars); }},
        {"avg_chars_per_file", [](const ScenarioMetrics& m) { return fixed(std::round(m.avg_chars_per_file()), 0); }},
    };
    return table;
}

std::vector<Column> columns(const std::vector<ScenarioComparison>& scenarios) {
    std::vector<Column> out;
    for (const auto& s : scenarios) {
        if (s.delta) {
            out.push_back({s.label + " delta", &*s.delta});
        }
        if (s.annotative) {
            out.push_back({s.label + " 150%", &*s.annotative});
        }
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string render_csv(const std::vector<Column>& cols) {
    std::string out = "metric";
    for (const auto& c : cols) {
        out += "," + csv_field(c.header);
    }
    out += "\r\n";
    for (const auto& r : rows()) {
        out += r.name;
        for (const auto& c : cols) {
            out += "," + csv_field(r.format(*c.metrics));
        }
        out += "\r\n";
    }
    return out;
}

std::string md_cell(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|') {
            out += '\\';
        }
        out += c;
    }
    return out;
}

constexpr const char* counting_note =
    "Ports and connections count written declarations (core, used interfaces, delta additions); "
    "autoconnect links are not counted.";

std::string render_markdown(const std::vector<Column>& cols) {
    std::string out = std::string(counting_note) + "\n\n| metric |";
    std::string rule = "|---|";
    for (const auto& c : cols) {
        out += " " + md_cell(c.header) + " |";
        rule += "---:|";
    }
    out += "\n" + rule + "\n";
    for (const auto& r : rows()) {
        out += std::string("| ") + r.name + " |";
        for (const auto& c : cols) {
            out += " " + r.format(*c.metrics) + " |";
        }
        out += "\n";
    }
    return out;
}

nlohmann::ordered_json to_json(const ScenarioMetrics& m) {
    nlohmann::ordered_json j;
    j["components"] = m.components;
    j["ports"] = m.ports;
    j["connections"] = m.connections;
    j["variants"] = m.variants;
    j["chars"] = m.chars;
    j["varchars"] = m.varchars;
    j["rel_variant_info"] = m.rel_variant_info();
    j["files"] = m.files;
    j["maxchars"] = m.maxchars;
    j["avg_chars_per_file"] = m.avg_chars_per_file();
    return j;
}

std::string render_json(const std::vector<ScenarioComparison>& scenarios) {
    using json = nlohmann::ordered_json;
    json doc;
    doc["note"] = counting_note;
    doc["scenarios"] = json::array();
    json chars = json::array();
    json rel = json::array();
    for (const auto& s : scenarios) {
        json entry;
        entry["label"] = s.label;
        json c;
        json r;
        c["scenario"] = s.label;
        r["scenario"] = s.label;
        if (s.delta) {
            entry["delta"] = to_json(*s.delta);
            c["delta"] = s.delta->chars;
            c["delta_varchars"] = s.delta->varchars;
            r["delta"] = s.delta->rel_variant_info();
        }
        if (s.annotative) {
            entry["annotative"] = to_json(*s.annotative);
            c["annotative"] = s.annotative->chars;
            c["annotative_varchars"] = s.annotative->varchars;
            r["annotative"] = s.annotative->rel_variant_info();
        }
        doc["scenarios"].push_back(std::move(entry));
        chars.push_back(std::move(c));
        rel.push_back(std::move(r));
    }
    doc["charts"]["chars"] = std::move(chars);
    doc["charts"]["rel_variant_info"] = std::move(rel);
    return doc.dump(2) + "\n";
}

} // namespace

std::string render_report(const std::vector<ScenarioComparison>& scenarios, ReportFormat format) {
    switch (format) {
    case ReportFormat::csv: return render_csv(columns(scenarios));
    case ReportFormat::markdown: return render_markdown(columns(scenarios));
    case ReportFormat::json: return render_json(scenarios);
    }
    return {};
}

} // namespace deltarc
