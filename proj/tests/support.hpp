#pragma once

// Fixture access and independent reference implementations used by the tests.

#include "deltarc/engine.hpp"
#include "deltarc/model.hpp"
#include "deltarc/parser.hpp"
#include "deltarc/productline.hpp"

#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

namespace fs = std::filesystem;

fs::path fixtures();
fs::path reference(const std::string& file);
fs::path scenario(const std::string& name);

/// base, scenario1 ... scenario6.
const std::vector<std::string>& scenario_names();

deltarc::ComponentType load_arc(const fs::path& path);
deltarc::Delta load_delta(const fs::path& path);
deltarc::DeltaConfig load_config(const fs::path& path);
std::string read_text(const fs::path& path);

/// Every fixture file of the given extension under tests/fixtures.
std::vector<fs::path> fixture_files(const std::string& extension);

/// Per target component, the op descriptions sorted; ignores op order.
std::vector<std::string> op_multiset(const deltarc::Delta& delta);

/// Permutation filter: every permutation of the config's deltas whose
/// constraints all hold over their prefixes, in lexicographic order.
std::vector<deltarc::ApplicationOrder> brute_force_orders(const deltarc::DeltaModel& model,
                                                          const deltarc::DeltaConfig& config);

/// Independent constraint evaluation by recursion on the expression text.
bool evaluate_text(const std::string& aoc, const std::vector<std::string>& applied);

/// Counts visible characters by first blanking comments, then counting
/// non-whitespace code points.
std::size_t reference_visible_chars(const std::string& text);

/// Fresh temporary directory, removed on destruction.
struct TempDir {
    fs::path path;
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

/// Copies a scenario into `target`.
void copy_scenario(const std::string& name, const fs::path& target);

/// Fixtures under annotative/ and the annotated reference fragment hold annotated models.
bool is_annotated(const fs::path& p);
deltarc::SourceFile load_any(const fs::path& p);

/// Parses with the parser matching the file's kind and returns its canonical text.
std::string canonical(const deltarc::SourceFile& src);

/// Every .arc, .delta and .deltaconfig fixture.
std::vector<fs::path> all_fixture_sources();

struct Token {
    std::size_t offset;
    std::size_t length;
    int line;
    int column;
    bool structural; // punctuation other than '!'
};

/// Lexical scan independent of the library lexer: identifiers, strings,
/// punctuation; comments and whitespace skipped.
std::vector<Token> scan(const std::string& s);

inline constexpr unsigned corruption_seed = 20240611;

struct Corruption {
    enum class Strategy { blank, replace, insert_brace };
    deltarc::SourceFile file;
    Strategy strategy;
    Token token;
};

/// `count` single-token corruptions of random fixtures of one grammar: a
/// structural token blanked out, any token replaced by '@', or a brace
/// inserted before a token.
std::vector<Corruption> corruptions(deltarc::SourceFile::Kind kind, std::size_t count, std::mt19937& rng);

} // namespace testsupport
