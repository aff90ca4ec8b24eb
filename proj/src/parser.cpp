#include "deltarc/parser.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

namespace deltarc {

namespace {

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) {
            out += sep;
        }
        out += items[i];
    }
    return out;
}

std::string format_parse_error(const std::string& path, int line, int column, const std::string& message,
                               const std::vector<std::string>& expected) {
    std::ostringstream os;
    os << (path.empty() ? "<input>" : path) << ":" << line << ":" << column << ": " << message;
    if (!expected.empty()) {
        os << " (expected " << join(expected, ", ") << ")";
    }
    return os.str();
}

} // namespace

ParseError::ParseError(std::string path, int line, int column, std::string message, std::vector<std::string> expected)
    : Error(format_parse_error(path, line, column, message, expected)), path_(std::move(path)), line_(line),
      column_(column), message_(std::move(message)), expected_(std::move(expected)) {}

SourceFile::Kind SourceFile::kind_for(const std::filesystem::path& path, bool annotated) {
    const auto ext = path.extension().string();
    if (ext == ".delta") {
        return Kind::delta;
    }
    if (ext == ".deltaconfig") {
        return Kind::config;
    }
    if (ext == ".arc") {
        return annotated ? Kind::annotated : Kind::architecture;
    }
    throw Error("unrecognised file extension '" + ext + "' for " + path.string());
}

SourceFile SourceFile::load(const std::filesystem::path& path, bool annotated) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return SourceFile{path.string(), kind_for(path, annotated), ss.str()};
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class TokenKind { identifier, keyword, punct, string, end };

struct Token {
    TokenKind kind;
    std::string text;
    int line;
    int column;
};

const std::set<std::string, std::less<>> keywords = {
    "component", "autoconnect", "port",       "in",   "out",    "connect",     "disconnect", "delta",
    "after",     "modify",      "add",        "remove", "replace", "with",     "deltaconfig",
};

class Lexer {
public:
    explicit Lexer(const SourceFile& src) : src_(src), text_(src.text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            if (pos_ >= text_.size()) {
                out.push_back({TokenKind::end, "end of input", line_, column_});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    [[noreturn]] void fail(int line, int column, const std::string& message) const {
        throw ParseError(src_.path, line, column, message);
    }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void advance() {
        const auto c = static_cast<unsigned char>(text_[pos_++]);
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else if ((c & 0xC0) != 0x80) {
            ++column_;
        }
    }

    void skip_trivia() {
        while (pos_ < text_.size()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < text_.size() && peek() != '\n') {
                    advance();
                }
            } else if (c == '/' && peek(1) == '*') {
                const int line = line_;
                const int column = column_;
                advance();
                advance();
                for (;;) {
                    if (pos_ >= text_.size()) {
                        fail(line, column, "unterminated block comment");
                    }
                    if (peek() == '*' && peek(1) == '/') {
                        advance();
                        advance();
                        break;
                    }
                    advance();
                }
            } else {
                return;
            }
        }
    }

    Token next() {
        const int line = line_;
        const int column = column_;
        const char c = peek();
        auto is_alpha = [](char ch) { return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z'); };
        auto is_word = [&](char ch) { return is_alpha(ch) || (ch >= '0' && ch <= '9') || ch == '_'; };

        if (is_alpha(c)) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && is_word(peek())) {
                advance();
            }
            std::string word = text_.substr(start, pos_ - start);
            const auto kind = keywords.contains(word) ? TokenKind::keyword : TokenKind::identifier;
            return {kind, std::move(word), line, column};
        }
        if (c == '"') {
            advance();
            std::string value;
            while (pos_ < text_.size() && peek() != '"' && peek() != '\n') {
                value += peek();
                advance();
            }
            if (peek() != '"') {
                fail(line, column, "unterminated string literal");
            }
            advance();
            return {TokenKind::string, std::move(value), line, column};
        }
        static constexpr std::array<std::string_view, 5> two_char = {"->", "&&", "||", "<<", ">>"};
        for (auto op : two_char) {
            if (c == op[0] && peek(1) == op[1]) {
                advance();
                advance();
                return {TokenKind::punct, std::string(op), line, column};
            }
        }
        if (std::string_view("{};,.()!=").find(c) != std::string_view::npos) {
            advance();
            return {TokenKind::punct, std::string(1, c), line, column};
        }
        std::string shown;
        if (static_cast<unsigned char>(c) >= 0x20 && static_cast<unsigned char>(c) < 0x7F) {
            shown = std::string("'") + c + "'";
        } else {
            std::ostringstream os;
            os << "byte 0x" << std::hex << static_cast<int>(static_cast<unsigned char>(c));
            shown = os.str();
        }
        fail(line, column, "unexpected character " + shown);
    }

    const SourceFile& src_;
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    explicit Parser(const SourceFile& src) : src_(src), tokens_(Lexer(src).run()) {}

    AnnotatedComponentType architecture(bool annotated) {
        AnnotatedComponentType out;
        expect_keyword("component");
        out.name = expect_identifier("component name");
        expect_punct("{");
        if (at_keyword("autoconnect")) {
            advance();
            expect_keyword("port");
            expect_punct(";");
            out.autoconnect_port = true;
        }
        for (;;) {
            if (at_punct("}")) {
                advance();
                break;
            }
            VariantSet statement_variants;
            bool statement_annotated = false;
            if (annotated && at_punct("<<")) {
                statement_variants = annotation();
                statement_annotated = true;
            }
            if (at_keyword("port") && !statement_annotated) {
                advance();
                do {
                    VariantSet variants;
                    if (annotated && at_punct("<<")) {
                        variants = annotation();
                    }
                    out.ports.push_back({port_decl(), std::move(variants)});
                } while (accept_punct(","));
                expect_punct(";");
            } else if (at_keyword("component")) {
                advance();
                out.subcomponents.push_back({subcomponent_decl(), std::move(statement_variants)});
                expect_punct(";");
            } else if (at_keyword("connect")) {
                advance();
                const ConnectorEnd source = connector_end();
                expect_punct("->");
                do {
                    const Token& at = current();
                    Connector c{source, connector_end(), ConnectorOrigin::declared};
                    if (c.source == c.target) {
                        fail_at(at, "connector '" + c.str() + "' connects an end to itself");
                    }
                    out.connectors.push_back({std::move(c), statement_variants});
                } while (accept_punct(","));
                expect_punct(";");
            } else if (statement_annotated) {
                fail_expected({"'component'", "'connect'"});
            } else {
                std::vector<std::string> expected = {"'port'", "'component'", "'connect'", "'}'"};
                if (annotated) {
                    expected.insert(expected.begin(), "'<<'");
                }
                fail_expected(expected);
            }
        }
        expect_end();
        return out;
    }

    Delta delta() {
        Delta out;
        expect_keyword("delta");
        const Token& name_token = current();
        out.name = expect_identifier("delta name");
        if (accept_keyword("after")) {
            const Token& aoc_start = current();
            out.aoc = aoc();
            if (out.aoc.names().contains(out.name)) {
                throw SelfReferenceError(src_.path, aoc_start.line, aoc_start.column,
                                         "delta '" + out.name + "' refers to itself in its after-clause");
            }
        }
        expect_punct("{");
        while (!accept_punct("}")) {
            if (!at_keyword("modify")) {
                fail_expected({"'modify'", "'}'"});
            }
            out.blocks.push_back(modify_block());
        }
        if (out.blocks.empty()) {
            fail_at(name_token, "delta '" + out.name + "' contains no modify block");
        }
        expect_end();
        return out;
    }

    DeltaConfig config() {
        DeltaConfig out;
        expect_keyword("deltaconfig");
        out.name = expect_identifier("configuration name");
        expect_punct("{");
        if (!accept_punct("}")) {
            std::set<std::string> seen;
            do {
                const Token& at = current();
                auto name = expect_identifier("delta name");
                if (!seen.insert(name).second) {
                    throw DuplicateDeltaError(src_.path, at.line, at.column,
                                              "delta '" + name + "' listed twice in configuration '" + out.name + "'");
                }
                out.deltas.push_back(std::move(name));
            } while (accept_punct(","));
            expect_punct("}");
        }
        expect_end();
        return out;
    }

    AocExpr standalone_aoc() {
        auto e = aoc();
        expect_end();
        return e;
    }

private:
    const Token& current() const { return tokens_[index_]; }
    void advance() {
        if (current().kind != TokenKind::end) {
            ++index_;
        }
    }

    bool at_keyword(std::string_view kw) const {
        return current().kind == TokenKind::keyword && current().text == kw;
    }
    bool at_punct(std::string_view p) const { return current().kind == TokenKind::punct && current().text == p; }

    bool accept_keyword(std::string_view kw) {
        if (at_keyword(kw)) {
            advance();
            return true;
        }
        return false;
    }
    bool accept_punct(std::string_view p) {
        if (at_punct(p)) {
            advance();
            return true;
        }
        return false;
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
        case TokenKind::end: return "end of input";
        case TokenKind::string: return "string \"" + t.text + "\"";
        case TokenKind::identifier: return "identifier '" + t.text + "'";
        case TokenKind::keyword: return "keyword '" + t.text + "'";
        case TokenKind::punct: return "'" + t.text + "'";
        }
        return t.text;
    }

    [[noreturn]] void fail_at(const Token& t, const std::string& message) const {
        throw ParseError(src_.path, t.line, t.column, message);
    }

    [[noreturn]] void fail_expected(std::vector<std::string> expected) const {
        throw ParseError(src_.path, current().line, current().column, "unexpected " + describe(current()),
                         std::move(expected));
    }

    void expect_keyword(std::string_view kw) {
        if (!accept_keyword(kw)) {
            fail_expected({"'" + std::string(kw) + "'"});
        }
    }
    void expect_punct(std::string_view p) {
        if (!accept_punct(p)) {
            fail_expected({"'" + std::string(p) + "'"});
        }
    }
    void expect_end() {
        if (current().kind != TokenKind::end) {
            fail_expected({"end of input"});
        }
    }

    std::string expect_identifier(std::string_view what) {
        if (current().kind != TokenKind::identifier) {
            fail_expected({std::string(what)});
        }
        std::string s = current().text;
        advance();
        return s;
    }

    PortDecl port_decl() {
        PortDecl p;
        if (accept_keyword("in")) {
            p.direction = Direction::in;
        } else if (accept_keyword("out")) {
            p.direction = Direction::out;
        } else {
            fail_expected({"'in'", "'out'"});
        }
        p.type_name = expect_identifier("port type");
        p.name = expect_identifier("port name");
        return p;
    }

    // ID [ID]; a missing instance name defaults to the type name
    SubcomponentDecl subcomponent_decl() {
        SubcomponentDecl s;
        s.type_name = expect_identifier("component type");
        if (current().kind == TokenKind::identifier) {
            s.instance_name = current().text;
            advance();
        } else {
            s.instance_name = s.type_name;
        }
        return s;
    }

    ConnectorEnd connector_end() {
        ConnectorEnd end;
        std::string first = expect_identifier("port or subcomponent name");
        if (accept_punct(".")) {
            end.subcomponent = std::move(first);
            end.port = expect_identifier("port name");
        } else {
            end.port = std::move(first);
        }
        return end;
    }

    VariantSet annotation() {
        expect_punct("<<");
        if (current().kind != TokenKind::identifier || current().text != "variant") {
            fail_expected({"'variant'"});
        }
        advance();
        expect_punct("=");
        if (current().kind != TokenKind::string) {
            fail_expected({"quoted variant list"});
        }
        const Token& list = current();
        advance();
        expect_punct(">>");

        VariantSet out;
        std::string_view rest = list.text;
        for (;;) {
            const auto comma = rest.find(',');
            std::string_view item = rest.substr(0, comma);
            const auto first = item.find_first_not_of(" \t");
            const auto last = item.find_last_not_of(" \t");
            item = first == std::string_view::npos ? std::string_view{} : item.substr(first, last - first + 1);
            if (item.empty()) {
                throw EmptyVariantListError(src_.path, list.line, list.column, "empty variant name in annotation");
            }
            if (!is_identifier(item)) {
                throw ParseError(src_.path, list.line, list.column,
                                 "variant name '" + std::string(item) + "' is not an identifier");
            }
            out.emplace(item);
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
        return out;
    }

    ModifyBlock modify_block() {
        ModifyBlock block;
        const Token& start = current();
        expect_keyword("modify");
        expect_keyword("component");
        block.target_component = expect_identifier("component name");
        expect_punct("{");
        while (!accept_punct("}")) {
            delta_op(block.ops);
        }
        if (block.ops.empty()) {
            fail_at(start, "modify block for '" + block.target_component + "' contains no operation");
        }
        return block;
    }

    void delta_op(std::vector<DeltaOp>& ops) {
        if (accept_keyword("add")) {
            if (accept_keyword("port")) {
                do {
                    ops.emplace_back(AddPort{port_decl()});
                } while (accept_punct(","));
            } else if (accept_keyword("component")) {
                ops.emplace_back(AddComponent{subcomponent_decl()});
            } else {
                fail_expected({"'port'", "'component'"});
            }
        } else if (accept_keyword("remove")) {
            if (accept_keyword("port")) {
                ops.emplace_back(RemovePort{expect_identifier("port name")});
            } else if (accept_keyword("component")) {
                ops.emplace_back(RemoveComponent{expect_identifier("subcomponent name")});
            } else {
                fail_expected({"'port'", "'component'"});
            }
        } else if (accept_keyword("replace")) {
            expect_keyword("component");
            ReplaceComponent op;
            op.old_instance = expect_identifier("subcomponent name");
            expect_keyword("with");
            expect_keyword("component");
            op.replacement.type_name = expect_identifier("component type");
            op.replacement.instance_name = expect_identifier("subcomponent name");
            ops.emplace_back(std::move(op));
        } else if (at_keyword("connect") || at_keyword("disconnect")) {
            const bool connect = at_keyword("connect");
            const Token& at = current();
            advance();
            ConnectorEnd source = connector_end();
            expect_punct("->");
            ConnectorEnd target = connector_end();
            if (source == target) {
                fail_at(at, "connector '" + source.str() + " -> " + target.str() + "' connects an end to itself");
            }
            if (connect) {
                ops.emplace_back(Connect{Connector{std::move(source), std::move(target), ConnectorOrigin::declared}});
            } else {
                ops.emplace_back(Disconnect{std::move(source), std::move(target)});
            }
        } else {
            fail_expected({"'add'", "'remove'", "'replace'", "'connect'", "'disconnect'", "'}'"});
        }
        expect_punct(";");
    }

    // precedence: ! binds tighter than &&, which binds tighter than ||
    AocExpr aoc() {
        AocExpr lhs = aoc_and();
        while (accept_punct("||")) {
            lhs = AocExpr::disjunction(lhs, aoc_and());
        }
        return lhs;
    }

    AocExpr aoc_and() {
        AocExpr lhs = aoc_unary();
        while (accept_punct("&&")) {
            lhs = AocExpr::conjunction(lhs, aoc_unary());
        }
        return lhs;
    }

    AocExpr aoc_unary() {
        if (accept_punct("!")) {
            return AocExpr::negation(aoc_unary());
        }
        if (accept_punct("(")) {
            AocExpr inner = aoc();
            expect_punct(")");
            return inner;
        }
        if (current().kind != TokenKind::identifier) {
            fail_expected({"delta name", "'!'", "'('"});
        }
        auto e = AocExpr::name(current().text);
        advance();
        return e;
    }

    const SourceFile& src_;
    std::vector<Token> tokens_;
    std::size_t index_ = 0;
};

void require_kind(const SourceFile& src, SourceFile::Kind kind, std::string_view what) {
    if (src.kind != kind) {
        throw Error("cannot parse " + (src.path.empty() ? std::string("<input>") : src.path) + " as " +
                    std::string(what));
    }
}

std::string invariant_summary(const std::string& path, const std::vector<InvariantViolation>& v) {
    std::string out = (path.empty() ? std::string("<input>") : path) + ": invalid component:";
    for (const auto& x : v) {
        out += " " + std::string(to_string(x.rule)) + "(" + x.element + ")";
    }
    return out;
}

ComponentType strip(const AnnotatedComponentType& a) {
    ComponentType c;
    c.name = a.name;
    c.autoconnect_port = a.autoconnect_port;
    for (const auto& p : a.ports) {
        c.ports.push_back(p.element);
    }
    for (const auto& s : a.subcomponents) {
        c.subcomponents.push_back(s.element);
    }
    for (const auto& k : a.connectors) {
        c.connectors.push_back(k.element);
    }
    return c;
}

} // namespace

ComponentType parse_architecture(const SourceFile& src) {
    require_kind(src, SourceFile::Kind::architecture, "architecture");
    ComponentType c = strip(Parser(src).architecture(false));
    if (auto v = check_local_invariants(c); !v.empty()) {
        throw InvariantError(invariant_summary(src.path, v), std::move(v));
    }
    return c;
}

AnnotatedComponentType parse_annotated(const SourceFile& src) {
    require_kind(src, SourceFile::Kind::annotated, "annotated architecture");
    AnnotatedComponentType c = Parser(src).architecture(true);
    if (auto v = check_local_invariants(c); !v.empty()) {
        throw InvariantError(invariant_summary(src.path, v), std::move(v));
    }
    return c;
}

Delta parse_delta(const SourceFile& src) {
    require_kind(src, SourceFile::Kind::delta, "delta");
    return Parser(src).delta();
}

DeltaConfig parse_config(const SourceFile& src) {
    require_kind(src, SourceFile::Kind::config, "deltaconfig");
    return Parser(src).config();
}

AocExpr parse_aoc(std::string_view text) {
    SourceFile src{"<aoc>", SourceFile::Kind::delta, std::string(text)};
    return Parser(src).standalone_aoc();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const AocExpr& e) {
    switch (e.kind()) {
    case AocExpr::Kind::disjunction: return 1;
    case AocExpr::Kind::conjunction: return 2;
    case AocExpr::Kind::negation: return 3;
    default: return 4;
    }
}

void print_aoc(const AocExpr& e, std::ostream& os) {
    auto child = [&](const AocExpr& sub, bool parens) {
        if (parens) {
            os << "(";
        }
        print_aoc(sub, os);
        if (parens) {
            os << ")";
        }
    };
    switch (e.kind()) {
    case AocExpr::Kind::truth: os << "true"; break;
    case AocExpr::Kind::name: os << e.identifier(); break;
    case AocExpr::Kind::negation:
        os << "!";
        child(e.operand(), precedence(e.operand()) < 3);
        break;
    case AocExpr::Kind::conjunction:
    case AocExpr::Kind::disjunction: {
        // left-assoc chains print flat; a right operand of equal precedence keeps its parentheses
        const int p = precedence(e);
        child(e.lhs(), precedence(e.lhs()) < p);
        os << (e.kind() == AocExpr::Kind::conjunction ? " && " : " || ");
        child(e.rhs(), precedence(e.rhs()) <= p);
        break;
    }
    }
}

std::string port_text(const PortDecl& p) {
    return std::string(to_string(p.direction)) + " " + p.type_name + " " + p.name;
}

std::string annotation_text(const VariantSet& v) {
    if (v.empty()) {
        return {};
    }
    std::string list;
    for (const auto& name : v) {
        if (!list.empty()) {
            list += ", ";
        }
        list += name;
    }
    return "<<variant = \"" + list + "\">> ";
}

void print_component(const AnnotatedComponentType& c, std::ostream& os) {
    os << "component " << c.name << " {\n";
    bool section = false;
    auto separate = [&] {
        if (section) {
            os << "\n";
        }
        section = true;
    };
    if (c.autoconnect_port) {
        separate();
        os << "  autoconnect port;\n";
    }
    if (!c.ports.empty()) {
        separate();
        for (const auto& p : c.ports) {
            os << "  port " << annotation_text(p.variants) << port_text(p.element) << ";\n";
        }
    }
    if (!c.subcomponents.empty()) {
        separate();
        for (const auto& s : c.subcomponents) {
            os << "  " << annotation_text(s.variants) << "component " << s.element.type_name << " "
               << s.element.instance_name << ";\n";
        }
    }
    bool autoconnect_header = false;
    if (!c.connectors.empty()) {
        separate();
        for (const auto& k : c.connectors) {
            if (k.element.origin == ConnectorOrigin::autoconnect && !autoconnect_header) {
                os << "  // autoconnect\n";
                autoconnect_header = true;
            }
            os << "  " << annotation_text(k.variants) << "connect " << k.element.str() << ";\n";
        }
    }
    os << "}\n";
}

} // namespace

std::string unparse(const AocExpr& expr) {
    std::ostringstream os;
    print_aoc(expr, os);
    return os.str();
}

std::string unparse(const ComponentType& component) {
    std::ostringstream os;
    print_component(annotate_as_core(component), os);
    return os.str();
}

std::string unparse(const AnnotatedComponentType& component) {
    std::ostringstream os;
    print_component(component, os);
    return os.str();
}

std::string unparse(const Delta& delta) {
    std::ostringstream os;
    os << "delta " << delta.name;
    if (!delta.aoc.is_true()) {
        os << " after\n  " << unparse(delta.aoc);
    }
    os << " {\n";
    for (const auto& block : delta.blocks) {
        os << "  modify component " << block.target_component << " {\n";
        for (const auto& op : block.ops) {
            os << "    " << describe(op) << ";\n";
        }
        os << "  }\n";
    }
    os << "}\n";
    return os.str();
}

std::string unparse(const DeltaConfig& config) {
    std::ostringstream os;
    os << "deltaconfig " << config.name << " {\n";
    for (std::size_t i = 0; i < config.deltas.size(); ++i) {
        os << "  " << config.deltas[i] << (i + 1 < config.deltas.size() ? ",\n" : "\n");
    }
    os << "}\n";
    return os.str();
}

} // namespace deltarc
