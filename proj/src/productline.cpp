#include "deltarc/productline.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>

namespace fs = std::filesystem;

namespace deltarc {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string relative_string(const fs::path& p, const fs::path& root) {
    return p.lexically_relative(root).generic_string();
}

bool is_under(const fs::path& p, const fs::path& dir) {
    const auto rel = p.lexically_relative(dir);
    return !rel.empty() && *rel.begin() != "..";
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out << text;
}

} // namespace

Manifest Manifest::parse(std::string_view text, const std::string& path) {
    Manifest m;
    m.env.clear();
    bool env_set = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        const std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto column = [&](std::string_view at) { return static_cast<int>(at.data() - raw.data()) + 1; };
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(path, line_no, column(line), "expected key = \"value\"", {"="});
        }
        const auto key = trim(line.substr(0, eq));
        auto rest = trim(line.substr(eq + 1));
        if (rest.size() < 2 || rest.front() != '"') {
            throw ParseError(path, line_no, column(rest.empty() ? line.substr(eq) : rest), "expected a quoted value",
                             {"string"});
        }
        const auto close = rest.find('"', 1);
        if (close == std::string_view::npos) {
            throw ParseError(path, line_no, column(rest), "unterminated string");
        }
        const std::string value(rest.substr(1, close - 1));
        const auto tail = trim(rest.substr(close + 1));
        if (!tail.empty() && tail.front() != '#') {
            throw ParseError(path, line_no, column(tail), "unexpected text after value");
        }
        if (key == "core") {
            m.core = value;
        } else if (key == "env") {
            m.env = value;
            env_set = true;
        } else if (key == "label") {
            m.label = value;
        } else if (key == "annotative") {
            m.annotative = value;
        } else if (key == "core_variant") {
            m.core_variant = value;
        } else {
            throw ParseError(path, line_no, column(key), "unknown key '" + std::string(key) + "'",
                             {"core", "env", "label", "annotative", "core_variant"});
        }
    }
    if (!env_set) {
        m.env = "env";
    }
    return m;
}

std::string Manifest::str() const {
    std::string out;
    auto put = [&](const char* key, const std::string& value) {
        if (!value.empty()) {
            out += std::string(key) + " = \"" + value + "\"\n";
        }
    };
    put("label", label);
    put("core", core);
    put("env", env);
    put("annotative", annotative);
    put("core_variant", core_variant);
    return out;
}

std::string ProductLine::label() const {
    if (!manifest.label.empty()) {
        return manifest.label;
    }
    auto name = root.filename().string();
    return name.empty() ? root.parent_path().filename().string() : name;
}

std::vector<SourceFile> ProductLine::sources() const {
    std::vector<SourceFile> out{core_file};
    out.insert(out.end(), env_files.begin(), env_files.end());
    out.insert(out.end(), delta_files.begin(), delta_files.end());
    out.insert(out.end(), config_files.begin(), config_files.end());
    return out;
}

std::optional<fs::path> ProductLine::annotative_path() const {
    if (manifest.annotative.empty()) {
        return std::nullopt;
    }
    return root / manifest.annotative;
}

ProductLine load_product_line(const fs::path& root) {
    if (!fs::is_directory(root)) {
        throw Error("'" + root.string() + "' is not a directory");
    }
    ProductLine line;
    line.root = root;
    if (const auto manifest_path = root / Manifest::file_name; fs::exists(manifest_path)) {
        std::ifstream in(manifest_path, std::ios::binary);
        if (!in) {
            throw Error("cannot read '" + manifest_path.string() + "'");
        }
        const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
        line.manifest = Manifest::parse(text, manifest_path.string());
    }
    const fs::path env_dir = root / line.manifest.env;
    auto annotative = line.annotative_path();
    if (annotative && !fs::exists(*annotative)) {
        throw Error("annotated model '" + line.manifest.annotative + "' named in " + Manifest::file_name +
                    " does not exist");
    }

    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file()) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    std::vector<fs::path> core_candidates;
    std::vector<fs::path> env_paths;
    for (const auto& p : files) {
        const auto ext = p.extension();
        if (ext == ".delta") {
            line.delta_files.push_back(SourceFile::load(p));
        } else if (ext == ".deltaconfig") {
            line.config_files.push_back(SourceFile::load(p));
        } else if (ext == ".arc") {
            if (annotative && fs::equivalent(p, *annotative)) {
                continue;
            }
            if (is_under(p, env_dir)) {
                env_paths.push_back(p);
            } else if (line.manifest.core.empty()) {
                core_candidates.push_back(p);
            }
        }
    }

    fs::path core_path;
    if (!line.manifest.core.empty()) {
        core_path = root / line.manifest.core;
    } else if (core_candidates.size() == 1) {
        core_path = core_candidates.front();
    } else if (core_candidates.empty()) {
        throw Error("'" + root.string() + "' contains no core architecture (.arc outside " + line.manifest.env + "/)");
    } else {
        std::string names;
        for (const auto& c : core_candidates) {
            names += (names.empty() ? "" : ", ") + relative_string(c, root);
        }
        throw Error("several core candidates in '" + root.string() + "': " + names +
                    "; name one with core = \"...\" in " + Manifest::file_name);
    }
    line.core_file = SourceFile::load(core_path);
    line.model.core = parse_architecture(line.core_file);

    for (const auto& p : env_paths) {
        auto src = SourceFile::load(p);
        auto iface = parse_architecture(src);
        const auto name = iface.name;
        if (!line.model.interfaces.emplace(name, std::move(iface)).second) {
            throw Error("interface '" + name + "' is defined twice in " + line.manifest.env + "/");
        }
        line.env_files.push_back(std::move(src));
    }
    for (const auto& src : line.delta_files) {
        auto delta = parse_delta(src);
        const auto name = delta.name;
        if (!line.model.deltas.emplace(name, std::move(delta)).second) {
            throw Error("delta '" + name + "' is defined twice (again in " + src.path + ")");
        }
        line.delta_paths.emplace(name, src.path);
    }
    for (const auto& src : line.config_files) {
        auto config = parse_config(src);
        const auto name = config.name;
        if (!line.model.configs.emplace(name, std::move(config)).second) {
            throw Error("configuration '" + name + "' is defined twice (again in " + src.path + ")");
        }
        line.config_paths.emplace(name, src.path);
    }
    check_references(line.model);
    return line;
}

std::optional<AnnotativeModel> load_annotative(const ProductLine& line) {
    const auto path = line.annotative_path();
    if (!path) {
        return std::nullopt;
    }
    AnnotativeModel out;
    out.file = SourceFile::load(*path, true);
    out.model = parse_annotated(out.file);
    out.core_variant = line.manifest.core_variant;
    return out;
}

std::vector<SourceFile> annotative_sources(const ProductLine& line, const AnnotativeModel& annotated) {
    std::set<std::string, std::less<>> used;
    for (const auto& s : annotated.model.subcomponents) {
        used.insert(s.element.type_name);
    }
    std::vector<SourceFile> out{annotated.file};
    for (const auto& src : line.env_files) {
        if (used.contains(parse_architecture(src).name)) {
            out.push_back(src);
        }
    }
    return out;
}

std::vector<fs::path> write_product_line(const ProductLine& original, const DeltaModel& model, const fs::path& target) {
    const bool in_place = fs::exists(target) && fs::equivalent(target, original.root);
    std::vector<fs::path> written;
    auto emit = [&](const fs::path& path, const std::string& text) {
        write_file(path, text);
        written.push_back(path);
    };
    auto relocate = [&](const fs::path& p) { return target / fs::path(p).lexically_relative(original.root); };

    emit(relocate(original.core_file.path), unparse(model.core));
    if (!in_place) {
        for (const auto& src : original.env_files) {
            emit(relocate(src.path), src.text);
        }
        Manifest manifest = original.manifest;
        manifest.core = fs::path(original.core_file.path).lexically_relative(original.root).generic_string();
        manifest.annotative.clear();
        manifest.core_variant.clear();
        emit(target / Manifest::file_name, manifest.str());
    }

    for (const auto& [name, delta] : model.deltas) {
        auto it = original.delta_paths.find(name);
        emit(it != original.delta_paths.end() ? relocate(it->second) : target / "deltas" / (name + ".delta"),
             unparse(delta));
    }
    for (const auto& [name, config] : model.configs) {
        auto it = original.config_paths.find(name);
        emit(it != original.config_paths.end() ? relocate(it->second) : target / "configs" / (name + ".deltaconfig"),
             unparse(config));
    }

    if (in_place) {
        for (const auto& [name, path] : original.delta_paths) {
            if (!model.deltas.contains(name)) {
                fs::remove(path);
            }
        }
        for (const auto& [name, path] : original.config_paths) {
            if (!model.configs.contains(name)) {
                fs::remove(path);
            }
        }
    }
    return written;
}

} // namespace deltarc
