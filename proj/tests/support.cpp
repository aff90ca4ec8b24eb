#include "support.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <random>
#include <set>

namespace testsupport {

fs::path fixtures() { return fs::path(DELTARC_FIXTURES); }
fs::path reference(const std::string& file) { return fixtures() / "reference" / file; }
fs::path scenario(const std::string& name) { return fixtures() / "scenarios" / name; }

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"base",      "scenario1", "scenario2", "scenario3",
                                                "scenario4", "scenario5", "scenario6"};
    return names;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

deltarc::ComponentType load_arc(const fs::path& path) {
    return deltarc::parse_architecture(deltarc::SourceFile::load(path));
}
deltarc::Delta load_delta(const fs::path& path) { return deltarc::parse_delta(deltarc::SourceFile::load(path)); }
deltarc::DeltaConfig load_config(const fs::path& path) {
    return deltarc::parse_config(deltarc::SourceFile::load(path));
}

std::vector<fs::path> fixture_files(const std::string& extension) {
    std::vector<fs::path> out;
    for (const auto& e : fs::recursive_directory_iterator(fixtures())) {
        if (e.is_regular_file() && e.path().extension() == extension) {
            out.push_back(e.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> op_multiset(const deltarc::Delta& delta) {
    std::vector<std::string> out;
    for (const auto& block : delta.blocks) {
        for (const auto& op : block.ops) {
            out.push_back(block.target_component + ": " + deltarc::describe(op));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<deltarc::ApplicationOrder> brute_force_orders(const deltarc::DeltaModel& model,
                                                          const deltarc::DeltaConfig& config) {
    std::vector<std::string> names = config.deltas;
    std::sort(names.begin(), names.end());
    std::vector<deltarc::ApplicationOrder> out;
    do {
        std::vector<std::string> prefix;
        bool valid = true;
        for (const auto& n : names) {
            const std::string text = deltarc::unparse(model.delta(n).aoc);
            if (!evaluate_text(text, prefix)) {
                valid = false;
                break;
            }
            prefix.push_back(n);
        }
        if (valid) {
            out.push_back(names);
        }
    } while (std::next_permutation(names.begin(), names.end()));
    return out;
}

namespace {

// Recursive descent over the printed constraint; independent of the library's
// parser and evaluator.
struct TextEval {
    const std::string& s;
    const std::vector<std::string>& applied;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
    }
    bool disjunction() {
        bool v = conjunction();
        for (skip(); s.compare(i, 2, "||") == 0; skip()) {
            i += 2;
            v = conjunction() || v;
        }
        return v;
    }
    bool conjunction() {
        bool v = unary();
        for (skip(); s.compare(i, 2, "&&") == 0; skip()) {
            i += 2;
            v = unary() && v;
        }
        return v;
    }
    bool unary() {
        skip();
        if (s[i] == '!') {
            ++i;
            return !unary();
        }
        if (s[i] == '(') {
            ++i;
            const bool v = disjunction();
            skip();
            ++i; // ')'
            return v;
        }
        const auto start = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
            ++i;
        }
        const std::string name = s.substr(start, i - start);
        if (name == "true") {
            return true;
        }
        return std::find(applied.begin(), applied.end(), name) != applied.end();
    }
};

} // namespace

bool evaluate_text(const std::string& aoc, const std::vector<std::string>& applied) {
    if (aoc.empty()) {
        return true;
    }
    TextEval e{aoc, applied};
    return e.disjunction();
}

std::size_t reference_visible_chars(const std::string& text) {
    std::string blanked = text;
    std::size_t i = 0;
    while (i < blanked.size()) {
        if (blanked[i] == '"') {
            const auto close = blanked.find('"', i + 1);
            i = close == std::string::npos ? blanked.size() : close + 1;
        } else if (blanked.compare(i, 2, "//") == 0) {
            const auto end = std::min(blanked.find('\n', i), blanked.size());
            std::fill(blanked.begin() + static_cast<std::ptrdiff_t>(i), blanked.begin() + static_cast<std::ptrdiff_t>(end), ' ');
            i = end;
        } else if (blanked.compare(i, 2, "/*") == 0) {
            const auto end = blanked.find("*/", i + 2);
            const auto stop = end == std::string::npos ? blanked.size() : end + 2;
            std::fill(blanked.begin() + static_cast<std::ptrdiff_t>(i), blanked.begin() + static_cast<std::ptrdiff_t>(stop), ' ');
            i = stop;
        } else {
            ++i;
        }
    }
    std::size_t n = 0;
    for (unsigned char c : blanked) {
        const bool continuation = (c & 0xC0) == 0x80;
        if (!continuation && !std::isspace(c)) {
            ++n;
        }
    }
    return n;
}

TempDir::TempDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    path = fs::temp_directory_path() / ("deltarc-test-" + std::to_string(rng()));
    fs::create_directories(path);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
}

void copy_scenario(const std::string& name, const fs::path& target) {
    fs::copy(scenario(name), target, fs::copy_options::recursive | fs::copy_options::overwrite_existing);
}

bool is_annotated(const fs::path& p) {
    return p.parent_path().filename() == "annotative" || p.filename() == "annotated_port_fragment.arc";
}

deltarc::SourceFile load_any(const fs::path& p) { return deltarc::SourceFile::load(p, is_annotated(p)); }

std::string canonical(const deltarc::SourceFile& src) {
    switch (src.kind) {
    case deltarc::SourceFile::Kind::architecture: return deltarc::unparse(deltarc::parse_architecture(src));
    case deltarc::SourceFile::Kind::delta: return deltarc::unparse(deltarc::parse_delta(src));
    case deltarc::SourceFile::Kind::config: return deltarc::unparse(deltarc::parse_config(src));
    case deltarc::SourceFile::Kind::annotated: return deltarc::unparse(deltarc::parse_annotated(src));
    }
    return {};
}

std::vector<fs::path> all_fixture_sources() {
    std::vector<fs::path> out;
    for (const auto* ext : {".arc", ".delta", ".deltaconfig"}) {
        auto files = fixture_files(ext);
        out.insert(out.end(), files.begin(), files.end());
    }
    return out;
}


std::vector<Token> scan(const std::string& s) {
    std::vector<Token> out;
    int line = 1;
    int column = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
        } else if (s.compare(i, 2, "//") == 0) {
            advance(std::min(s.find('\n', i), s.size()) - i);
        } else if (s.compare(i, 2, "/*") == 0) {
            advance(s.find("*/", i) + 2 - i);
        } else if (c == '"') {
            const auto len = s.find('"', i + 1) + 1 - i;
            out.push_back({i, len, line, column, false});
            advance(len);
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t len = 1;
            while (i + len < s.size() && (std::isalnum(static_cast<unsigned char>(s[i + len])) || s[i + len] == '_')) {
                ++len;
            }
            out.push_back({i, len, line, column, false});
            advance(len);
        } else {
            std::size_t len = 1;
            for (const auto* two : {"->", "&&", "||", "<<", ">>"}) {
                if (s.compare(i, 2, two) == 0) {
                    len = 2;
                }
            }
            out.push_back({i, len, line, column, c != '!'});
            advance(len);
        }
    }
    return out;
}


std::vector<Corruption> corruptions(deltarc::SourceFile::Kind kind, std::size_t count, std::mt19937& rng) {
    std::vector<deltarc::SourceFile> pool;
    for (const auto& p : all_fixture_sources()) {
        auto src = load_any(p);
        if (src.kind == kind) {
            pool.push_back(std::move(src));
        }
    }
    std::vector<Corruption> out;
    if (pool.empty()) {
        return out;
    }
    while (out.size() < count) {
        const auto& src = pool[rng() % pool.size()];
        const auto tokens = scan(src.text);
        const auto& tok = tokens[rng() % tokens.size()];
        std::string text = src.text;
        const auto strategy = static_cast<Corruption::Strategy>(rng() % 3);
        switch (strategy) {
        case Corruption::Strategy::blank:
            if (!tok.structural) {
                continue;
            }
            text.replace(tok.offset, tok.length, std::string(tok.length, ' '));
            break;
        case Corruption::Strategy::replace: text.replace(tok.offset, tok.length, "@"); break;
        case Corruption::Strategy::insert_brace: text.insert(tok.offset, rng() % 2 == 0 ? "{ " : "} "); break;
        }
        out.push_back({{src.path, src.kind, std::move(text)}, strategy, tok});
    }
    return out;
}

} // namespace testsupport
