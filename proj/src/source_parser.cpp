#include "datadesc/source.hpp"

#include <cmath>
#include <filesystem>
#include <limits>

namespace datadesc::source {

bool DecoratorNode::is_datadesc() const {
    return name == "datadesc" || (name.size() > 9 && name.compare(name.size() - 9, 9, ".datadesc") == 0);
}

std::set<std::string> AnnotatedInterfaceTree::class_names() const {
    std::set<std::string> names;
    for (const auto& cls : classes) names.insert(cls.name);
    return names;
}

namespace {

// ---------------------------------------------------------------- tokenizer

enum class Tok { name, number, string, op, newline, indent, dedent, end };

struct Token {
    Tok kind;
    std::string text; ///< raw source text; decoded content for strings
    int line = 0;
    bool raw_string = false;
    bool bytes_or_f = false; ///< bytes and f-strings are not literals
};

struct SyntaxError {
    int line;
    std::string message;
};

bool valid_utf8(std::string_view text, int& bad_line) {
    int line = 1;
    for (std::size_t i = 0; i < text.size();) {
        auto c = static_cast<unsigned char>(text[i]);
        if (c == '\n') ++line;
        std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
        if (len == 0 || i + len > text.size()) {
            bad_line = line;
            return false;
        }
        std::uint32_t cp = len == 1 ? c : len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
        for (std::size_t k = 1; k < len; ++k) {
            auto cc = static_cast<unsigned char>(text[i + k]);
            if ((cc >> 6) != 0x2) {
                bad_line = line;
                return false;
            }
            cp = (cp << 6) | (cc & 0x3F);
        }
        bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000);
        if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            bad_line = line;
            return false;
        }
        i += len;
    }
    return true;
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

bool hex_value(std::string_view digits, std::uint32_t& out) {
    out = 0;
    for (char c : digits) {
        int v = std::isdigit(static_cast<unsigned char>(c)) ? c - '0'
                : (c >= 'a' && c <= 'f')                    ? c - 'a' + 10
                : (c >= 'A' && c <= 'F')                    ? c - 'A' + 10
                                                            : -1;
        if (v < 0) return false;
        out = out * 16 + static_cast<std::uint32_t>(v);
    }
    return true;
}

std::string decode_escapes(std::string_view body) {
    std::string out;
    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c != '\\' || i + 1 >= body.size()) {
            out += c;
            continue;
        }
        char e = body[++i];
        std::uint32_t cp = 0;
        switch (e) {
        case '\n': break;
        case '\\': out += '\\'; break;
        case '\'': out += '\''; break;
        case '"': out += '"'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case 'a': out += '\a'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case 'v': out += '\v'; break;
        case 'x':
        case 'u':
        case 'U': {
            std::size_t len = e == 'x' ? 2 : e == 'u' ? 4 : 8;
            if (i + len < body.size() + 1 && hex_value(body.substr(i + 1, len), cp) && body.size() >= i + 1 + len &&
                cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF)) {
                append_utf8(out, cp);
                i += len;
            } else {
                out += '\\';
                out += e;
            }
            break;
        }
        default:
            if (e >= '0' && e <= '7') {
                std::size_t j = i;
                while (j < body.size() && j < i + 3 && body[j] >= '0' && body[j] <= '7') cp = cp * 8 + (body[j++] - '0');
                append_utf8(out, cp);
                i = j - 1;
            } else {
                out += '\\';
                out += e;
            }
        }
    }
    return out;
}

bool is_string_prefix(std::string_view word) {
    if (word.size() > 2) return false;
    std::string lower;
    for (char c : word) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    static const std::set<std::string> prefixes = {"r", "u", "b", "f", "br", "rb", "fr", "rf"};
    return prefixes.count(lower) > 0;
}

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

class Tokenizer {
public:
    explicit Tokenizer(std::string_view text) : s_(text) {}

    std::vector<Token> run() {
        if (s_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
        bool line_start = true;
        while (pos_ < s_.size()) {
            if (line_start && depth_ == 0) {
                if (!indentation()) continue; // blank or comment-only line
                line_start = false;
            }
            char c = s_[pos_];
            if (c == ' ' || c == '\t' || c == '\f') {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n' && s_[pos_] != '\r') ++pos_;
            } else if (c == '\\' && next_is_newline(pos_ + 1)) {
                ++pos_;
                consume_newline();
            } else if (c == '\n' || c == '\r') {
                consume_newline();
                if (depth_ == 0) {
                    emit(Tok::newline, "");
                    line_start = true;
                }
            } else if (ident_start(static_cast<unsigned char>(c))) {
                std::size_t start = pos_;
                while (pos_ < s_.size() && ident_char(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                auto word = s_.substr(start, pos_ - start);
                if (pos_ < s_.size() && (s_[pos_] == '\'' || s_[pos_] == '"') && is_string_prefix(word))
                    string_literal(word);
                else
                    emit(Tok::name, std::string(word));
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '.' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
                number();
            } else if (c == '\'' || c == '"') {
                string_literal("");
            } else {
                op();
            }
        }
        if (!tokens_.empty() && tokens_.back().kind != Tok::newline && tokens_.back().kind != Tok::dedent &&
            tokens_.back().kind != Tok::indent)
            emit(Tok::newline, "");
        while (indents_.size() > 1) {
            indents_.pop_back();
            emit(Tok::dedent, "");
        }
        emit(Tok::end, "");
        return std::move(tokens_);
    }

private:
    bool next_is_newline(std::size_t at) const { return at < s_.size() && (s_[at] == '\n' || s_[at] == '\r'); }

    void consume_newline() {
        if (s_[pos_] == '\r' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '\n') ++pos_;
        ++pos_;
        ++line_;
    }

    /// Measures leading whitespace; false for lines holding no tokens.
    bool indentation() {
        int col = 0;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == ' ')
                ++col;
            else if (c == '\t')
                col = (col / 8 + 1) * 8;
            else if (c == '\f')
                col = 0;
            else
                break;
            ++pos_;
        }
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        if (c == '#') {
            while (pos_ < s_.size() && s_[pos_] != '\n' && s_[pos_] != '\r') ++pos_;
            if (pos_ < s_.size()) consume_newline();
            return false;
        }
        if (c == '\n' || c == '\r') {
            consume_newline();
            return false;
        }
        if (col > indents_.back()) {
            indents_.push_back(col);
            emit(Tok::indent, "");
        } else {
            while (col < indents_.back()) {
                indents_.pop_back();
                emit(Tok::dedent, "");
            }
            if (col > indents_.back()) { // inconsistent dedent; treat as a new level
                indents_.push_back(col);
                emit(Tok::indent, "");
            }
        }
        return true;
    }

    void number() {
        std::size_t start = pos_;
        bool hex = s_.substr(pos_, 2) == "0x" || s_.substr(pos_, 2) == "0X";
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
                ++pos_;
            } else if ((c == '+' || c == '-') && !hex && (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E')) {
                ++pos_;
            } else {
                break;
            }
        }
        emit(Tok::number, std::string(s_.substr(start, pos_ - start)));
    }

    void string_literal(std::string_view prefix) {
        std::string lower;
        for (char c : prefix) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        bool raw = lower.find('r') != std::string::npos;
        bool special = lower.find('b') != std::string::npos || lower.find('f') != std::string::npos;
        int start_line = line_;
        char q = s_[pos_];
        bool triple = s_.substr(pos_, 3) == std::string(3, q);
        pos_ += triple ? 3 : 1;
        std::size_t body_start = pos_;
        while (true) {
            if (pos_ >= s_.size()) throw SyntaxError{start_line, "unterminated string literal"};
            char c = s_[pos_];
            if (c == '\\') {
                if (pos_ + 1 < s_.size() && (s_[pos_ + 1] == '\n' || s_[pos_ + 1] == '\r')) {
                    ++pos_;
                    consume_newline();
                } else {
                    pos_ += 2;
                }
                continue;
            }
            if (c == '\n' || c == '\r') {
                if (!triple) throw SyntaxError{start_line, "unterminated string literal"};
                consume_newline();
                continue;
            }
            if (c == q && (!triple || s_.substr(pos_, 3) == std::string(3, q))) break;
            ++pos_;
        }
        auto body = s_.substr(body_start, pos_ - body_start);
        pos_ += triple ? 3 : 1;
        Token token{Tok::string, raw ? std::string(body) : decode_escapes(body), start_line};
        token.raw_string = raw;
        token.bytes_or_f = special;
        tokens_.push_back(std::move(token));
    }

    void op() {
        static const std::vector<std::string_view> ops = {"**=", "...", "//=", ">>=", "<<=", "->", "**", "//", "==",
                                                          "!=",  "<=",  ">=",  ":=",  "+=",  "-=", "*=", "/=", "%=",
                                                          "&=",  "|=",  "^=",  "@=",  "<<",  ">>"};
        for (auto candidate : ops) {
            if (s_.substr(pos_, candidate.size()) == candidate) {
                emit(Tok::op, std::string(candidate));
                pos_ += candidate.size();
                return;
            }
        }
        char c = s_[pos_++];
        if (c == '(' || c == '[' || c == '{') ++depth_;
        if ((c == ')' || c == ']' || c == '}') && depth_ > 0) --depth_;
        emit(Tok::op, std::string(1, c));
    }

    void emit(Tok kind, std::string text) { tokens_.push_back({kind, std::move(text), line_}); }

    std::string_view s_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int depth_ = 0;
    std::vector<int> indents_{0};
    std::vector<Token> tokens_;
};

// ------------------------------------------------------------ literal eval

using TokenIt = std::vector<Token>::const_iterator;

bool is_op(const Token& t, std::string_view text) { return t.kind == Tok::op && t.text == text; }
bool is_name(const Token& t, std::string_view text) { return t.kind == Tok::name && t.text == text; }

std::optional<Tree> parse_number(std::string text, bool negative) {
    text.erase(std::remove(text.begin(), text.end(), '_'), text.end());
    if (text.empty()) return std::nullopt;
    std::string lower;
    for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower.back() == 'j') return std::nullopt;
    int base = 10;
    std::string digits = lower;
    if (lower.size() > 2 && lower[0] == '0' && (lower[1] == 'x' || lower[1] == 'o' || lower[1] == 'b')) {
        base = lower[1] == 'x' ? 16 : lower[1] == 'o' ? 8 : 2;
        digits = lower.substr(2);
    }
    bool is_float = base == 10 && lower.find_first_of(".e") != std::string::npos;
    if (!is_float) {
        if (base == 10 && digits.size() > 1 && digits[0] == '0' && digits.find_first_not_of('0') != std::string::npos)
            return std::nullopt; // legacy octal
        errno = 0;
        char* end = nullptr;
        unsigned long long value = std::strtoull(digits.c_str(), &end, base);
        if (end != digits.c_str() + digits.size()) return std::nullopt;
        if (errno != ERANGE && value <= static_cast<unsigned long long>(std::numeric_limits<std::int64_t>::max()))
            return Tree(negative ? -static_cast<std::int64_t>(value) : static_cast<std::int64_t>(value));
        if (base != 10) return std::nullopt;
        is_float = true; // falls back to a real for out-of-range integers
    }
    char* end = nullptr;
    double value = std::strtod(digits.c_str(), &end);
    if (end != digits.c_str() + digits.size() || !std::isfinite(value)) return std::nullopt;
    return Tree(negative ? -value : value);
}

/// Evaluates a literal expression over [it, end); nullopt for anything else.
class LiteralParser {
public:
    LiteralParser(TokenIt begin, TokenIt end) : it_(begin), end_(end) {}

    std::optional<Tree> parse_all() {
        auto value = expr();
        if (!value || it_ != end_) return std::nullopt;
        return value;
    }

private:
    std::optional<Tree> expr() {
        if (it_ == end_) return std::nullopt;
        const Token& t = *it_;
        if (is_op(t, "-") || is_op(t, "+")) {
            bool negative = t.text == "-";
            ++it_;
            if (it_ == end_ || it_->kind != Tok::number) return std::nullopt;
            return parse_number((it_++)->text, negative);
        }
        if (t.kind == Tok::number) {
            ++it_;
            return parse_number(t.text, false);
        }
        if (t.kind == Tok::string) {
            std::string text;
            while (it_ != end_ && it_->kind == Tok::string) {
                if (it_->bytes_or_f) return std::nullopt;
                text += (it_++)->text;
            }
            return Tree(text);
        }
        if (t.kind == Tok::name) {
            ++it_;
            if (t.text == "True") return Tree(true);
            if (t.text == "False") return Tree(false);
            if (t.text == "None") return Tree(nullptr);
            return std::nullopt;
        }
        if (is_op(t, "[") || is_op(t, "(")) return sequence(t.text == "[" ? "]" : ")");
        if (is_op(t, "{")) return mapping();
        return std::nullopt;
    }

    std::optional<Tree> sequence(const char* close) {
        bool tuple = std::string_view(close) == ")";
        ++it_;
        Tree out = Tree::array();
        bool saw_comma = false;
        while (it_ != end_ && !is_op(*it_, close)) {
            auto item = expr();
            if (!item) return std::nullopt;
            out.push_back(*item);
            if (it_ != end_ && is_op(*it_, ",")) {
                saw_comma = true;
                ++it_;
            } else {
                break;
            }
        }
        if (it_ == end_ || !is_op(*it_, close)) return std::nullopt;
        ++it_;
        if (tuple && out.size() == 1 && !saw_comma) return out[0]; // parenthesized expression
        return out;
    }

    std::optional<Tree> mapping() {
        ++it_;
        Tree object = Tree::object();
        Tree set = Tree::array();
        while (it_ != end_ && !is_op(*it_, "}")) {
            auto key = expr();
            if (!key) return std::nullopt;
            if (it_ != end_ && is_op(*it_, ":")) {
                if (!set.empty()) return std::nullopt;
                ++it_;
                auto value = expr();
                if (!value) return std::nullopt;
                std::string name = key->is_string() ? key->get<std::string>() : key->dump();
                if (!object.contains(name)) object[name] = *value;
            } else {
                if (!object.empty()) return std::nullopt;
                set.push_back(*key);
            }
            if (it_ != end_ && is_op(*it_, ","))
                ++it_;
            else
                break;
        }
        if (it_ == end_ || !is_op(*it_, "}")) return std::nullopt;
        ++it_;
        return set.empty() ? object : set;
    }

    TokenIt it_;
    TokenIt end_;
};

std::optional<Tree> evaluate_literal(TokenIt begin, TokenIt end) { return LiteralParser(begin, end).parse_all(); }

std::string join_tokens(TokenIt begin, TokenIt end) {
    std::string out;
    const Token* previous = nullptr;
    for (auto it = begin; it != end; ++it) {
        const Token& t = *it;
        std::string piece = t.kind == Tok::string ? Tree(t.text).dump() : t.text;
        if (previous) {
            bool word_prev = previous->kind != Tok::op;
            bool word_now = t.kind != Tok::op;
            if ((word_prev && word_now) || is_op(*previous, ",") || is_op(*previous, "|") || is_op(t, "|") ||
                is_op(*previous, ":") || is_op(t, "=") || is_op(*previous, "=") || is_op(t, "->") ||
                is_op(*previous, "->"))
                out += ' ';
        }
        out += piece;
        previous = &t;
    }
    return out;
}

// ------------------------------------------------------------------ parser

class Parser {
public:
    Parser(const std::vector<Token>& tokens, std::string file, AnnotatedInterfaceTree& tree, Diagnostics& diagnostics)
        : t_(tokens), file_(std::move(file)), tree_(tree), diagnostics_(diagnostics) {}

    void run() {
        while (peek().kind != Tok::end) {
            if (peek().kind == Tok::dedent) { // stray dedent after an unexpected indent
                ++pos_;
                continue;
            }
            statement(Scope::module, nullptr);
        }
    }

private:
    enum class Scope { module, class_body };

    const Token& peek(std::size_t ahead = 0) const {
        return t_[std::min(pos_ + ahead, t_.size() - 1)];
    }
    const Token& next() {
        const Token& t = peek();
        if (pos_ < t_.size() - 1) ++pos_;
        return t;
    }

    std::string where(int line) const { return (file_.empty() ? std::string("<source>") : file_) + ":" + std::to_string(line); }

    void info(int line, const std::string& message) {
        diagnostics_.push_back({Severity::info, "unsupported-construct", where(line), message});
    }
    void warn(int line, std::string code, const std::string& message) {
        diagnostics_.push_back({Severity::warning, std::move(code), where(line), message});
    }

    /// Skips to the end of the current statement, including an indented block.
    void skip_statement() {
        bool colon_last = false;
        while (peek().kind != Tok::newline && peek().kind != Tok::end) {
            if (peek().kind == Tok::indent || peek().kind == Tok::dedent) break;
            colon_last = is_op(next(), ":");
        }
        if (peek().kind == Tok::newline) next();
        if (colon_last && peek().kind == Tok::indent) skip_block();
    }

    void skip_block() {
        int depth = 0;
        do {
            const Token& t = next();
            if (t.kind == Tok::indent) ++depth;
            if (t.kind == Tok::dedent) --depth;
            if (t.kind == Tok::end) return;
        } while (depth > 0);
    }

    /// Statement at pos_; class-body statements land in `cls`.
    void statement(Scope scope, ClassNode* cls) {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::newline: next(); return;
        case Tok::indent:
            info(t.line, "unexpected indentation");
            skip_block();
            return;
        case Tok::dedent:
        case Tok::end: return;
        default: break;
        }
        if (is_op(t, "@")) {
            auto decorators = decorator_list();
            definition(scope, cls, std::move(decorators));
            return;
        }
        if (is_name(t, "class") || is_name(t, "def") || (is_name(t, "async") && is_name(peek(1), "def"))) {
            definition(scope, cls, {});
            return;
        }
        if (is_name(t, "pass") || is_op(t, "...")) {
            if (peek(1).kind == Tok::newline) {
                next();
                next();
                return;
            }
        }
        if (t.kind == Tok::string && peek(1).kind == Tok::newline) { // docstring or bare string
            next();
            next();
            return;
        }
        if (scope == Scope::class_body && t.kind == Tok::name && is_op(peek(1), ":")) {
            attribute(*cls);
            return;
        }
        if (t.kind == Tok::name && (t.text == "import" || t.text == "from")) {
            info(t.line, "import statements are not interpreted");
        } else if (scope == Scope::class_body && t.kind == Tok::name && is_op(peek(1), "=")) {
            info(t.line, "unannotated class attribute '" + t.text + "' skipped");
        } else {
            info(t.line, "statement '" + t.text + "' is outside the declaration subset");
        }
        skip_statement();
    }

    std::vector<DecoratorNode> decorator_list() {
        std::vector<DecoratorNode> out;
        while (is_op(peek(), "@")) {
            int line = next().line;
            std::size_t start = pos_;
            while (peek().kind != Tok::newline && peek().kind != Tok::end && peek().kind != Tok::indent &&
                   peek().kind != Tok::dedent)
                next();
            std::size_t stop = pos_;
            if (peek().kind == Tok::newline) next();
            if (auto decorator = parse_decorator(start, stop, line))
                out.push_back(std::move(*decorator));
            else
                info(line, "decorator expression not understood");
        }
        return out;
    }

    std::optional<DecoratorNode> parse_decorator(std::size_t begin, std::size_t end, int line) {
        DecoratorNode node;
        node.line = line;
        std::size_t i = begin;
        if (i >= end || t_[i].kind != Tok::name) return std::nullopt;
        node.name = t_[i++].text;
        while (i + 1 < end && is_op(t_[i], ".") && t_[i + 1].kind == Tok::name) {
            node.name += "." + t_[i + 1].text;
            i += 2;
        }
        if (i == end) return node;
        if (!is_op(t_[i], "(") || !is_op(t_[end - 1], ")")) return std::nullopt;
        for (auto [arg_begin, arg_end] : split_commas(i + 1, end - 1)) {
            if (arg_begin == arg_end) continue;
            auto first = t_.begin() + static_cast<long>(arg_begin);
            auto last = t_.begin() + static_cast<long>(arg_end);
            if (arg_end - arg_begin >= 2 && t_[arg_begin].kind == Tok::name && is_op(t_[arg_begin + 1], "=")) {
                auto value = evaluate_literal(first + 2, last);
                if (value)
                    node.arguments[t_[arg_begin].text] = *value;
                else if (node.is_datadesc())
                    warn(line, "non-literal-metadata", "argument '" + t_[arg_begin].text + "' is not a literal; ignored");
                continue;
            }
            // a positional dict literal contributes its keys
            bool star = is_op(t_[arg_begin], "**");
            auto value = evaluate_literal(first + (star ? 1 : 0), last);
            if (value && value->is_object()) {
                for (const auto& [key, v] : value->items())
                    if (!node.arguments.contains(key)) node.arguments[key] = v;
            } else if (node.is_datadesc()) {
                warn(line, "non-literal-metadata", "positional decorator argument ignored");
            }
        }
        return node;
    }

    /// Comma-separated ranges at bracket depth 0 within [begin, end).
    std::vector<std::pair<std::size_t, std::size_t>> split_commas(std::size_t begin, std::size_t end) const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        int depth = 0;
        std::size_t start = begin;
        for (std::size_t i = begin; i < end; ++i) {
            const Token& t = t_[i];
            if (is_op(t, "(") || is_op(t, "[") || is_op(t, "{")) ++depth;
            if (is_op(t, ")") || is_op(t, "]") || is_op(t, "}")) --depth;
            if (depth == 0 && is_op(t, ",")) {
                out.push_back({start, i});
                start = i + 1;
            }
        }
        out.push_back({start, end});
        return out;
    }

    void definition(Scope scope, ClassNode* owner, std::vector<DecoratorNode> decorators) {
        const Token& t = peek();
        if (is_name(t, "class")) {
            class_definition(std::move(decorators));
            return;
        }
        if (is_name(t, "async") && is_name(peek(1), "def")) next();
        if (is_name(peek(), "def")) {
            bool method = scope == Scope::class_body;
            auto fn = function_definition(std::move(decorators), method);
            if (!fn) return;
            auto& list = method ? owner->methods : tree_.functions;
            if (std::any_of(list.begin(), list.end(), [&](const FunctionNode& f) { return f.name == fn->name; })) {
                warn(fn->line, "duplicate-member", "function '" + fn->name + "' is defined again; the first is kept");
                return;
            }
            list.push_back(std::move(*fn));
            return;
        }
        info(t.line, "decorators are only interpreted on class and def statements");
        skip_statement();
    }

    /// Parses the block after ':' and returns the docstring. Class bodies go
    /// through statement(); function bodies are skipped.
    std::string suite(ClassNode* cls) {
        std::string docstring;
        if (peek().kind != Tok::newline) { // simple suite on the header line
            if (peek().kind == Tok::string && peek(1).kind == Tok::newline) docstring = peek().text;
            if (cls)
                statement(Scope::class_body, cls);
            else
                skip_statement();
            return docstring;
        }
        next();
        if (peek().kind != Tok::indent) return docstring;
        next();
        if (peek().kind == Tok::string && !peek().bytes_or_f &&
            (peek(1).kind == Tok::newline || peek(1).kind == Tok::dedent))
            docstring = peek().text;
        if (!cls) {
            int depth = 1;
            while (depth > 0) {
                const Token& t = next();
                if (t.kind == Tok::indent) ++depth;
                if (t.kind == Tok::dedent) --depth;
                if (t.kind == Tok::end) break;
            }
            return docstring;
        }
        while (peek().kind != Tok::dedent && peek().kind != Tok::end) statement(Scope::class_body, cls);
        if (peek().kind == Tok::dedent) next();
        return docstring;
    }

    void class_definition(std::vector<DecoratorNode> decorators) {
        int line = next().line;
        if (peek().kind != Tok::name) {
            info(line, "class statement without a name");
            skip_statement();
            return;
        }
        ClassNode node;
        node.name = next().text;
        node.line = line;
        node.decorators = std::move(decorators);
        if (is_op(peek(), "(")) skip_brackets();
        if (!is_op(peek(), ":")) {
            info(line, "class header for '" + node.name + "' not understood");
            skip_statement();
            return;
        }
        next();
        std::size_t index = tree_.classes.size();
        tree_.classes.emplace_back(); // keeps outer classes ahead of nested ones
        node.docstring = suite(&node);
        attach_class_metadata(node);
        tree_.classes[index] = std::move(node);
    }

    void skip_brackets() {
        int depth = 0;
        do {
            const Token& t = next();
            if (is_op(t, "(") || is_op(t, "[") || is_op(t, "{")) ++depth;
            if (is_op(t, ")") || is_op(t, "]") || is_op(t, "}")) --depth;
            if (t.kind == Tok::end || t.kind == Tok::newline) return;
        } while (depth > 0);
    }

    /// Expression tokens until one of `stops` at depth 0 (or the line end).
    std::pair<std::size_t, std::size_t> expression(std::initializer_list<std::string_view> stops) {
        std::size_t start = pos_;
        int depth = 0;
        while (true) {
            const Token& t = peek();
            if (t.kind == Tok::newline || t.kind == Tok::end || t.kind == Tok::indent || t.kind == Tok::dedent) break;
            if (depth == 0 && t.kind == Tok::op &&
                std::find(stops.begin(), stops.end(), std::string_view(t.text)) != stops.end())
                break;
            if (is_op(t, "(") || is_op(t, "[") || is_op(t, "{")) ++depth;
            if (is_op(t, ")") || is_op(t, "]") || is_op(t, "}")) {
                if (depth == 0) break;
                --depth;
            }
            next();
        }
        return {start, pos_};
    }

    DefaultNode default_node(std::size_t begin, std::size_t end) {
        DefaultNode node;
        auto first = t_.begin() + static_cast<long>(begin);
        auto last = t_.begin() + static_cast<long>(end);
        node.text = join_tokens(first, last);
        node.literal = evaluate_literal(first, last);
        return node;
    }

    std::string hint_text(std::size_t begin, std::size_t end) {
        return join_tokens(t_.begin() + static_cast<long>(begin), t_.begin() + static_cast<long>(end));
    }

    void attribute(ClassNode& cls) {
        AttributeNode node;
        node.line = peek().line;
        node.name = next().text;
        next(); // ':'
        auto [hint_begin, hint_end] = expression({"="});
        node.hint = hint_text(hint_begin, hint_end);
        if (is_op(peek(), "=")) {
            next();
            auto [value_begin, value_end] = expression({});
            if (value_begin == value_end)
                info(node.line, "attribute '" + node.name + "' has an empty default");
            else
                node.default_value = default_node(value_begin, value_end);
        }
        if (peek().kind != Tok::newline && peek().kind != Tok::end && peek().kind != Tok::dedent) {
            info(node.line, "trailing tokens after attribute '" + node.name + "' skipped");
            skip_statement();
        } else if (peek().kind == Tok::newline) {
            next();
        }
        if (std::any_of(cls.attributes.begin(), cls.attributes.end(),
                        [&](const AttributeNode& a) { return a.name == node.name; })) {
            warn(node.line, "duplicate-member", "attribute '" + node.name + "' is declared again; the first is kept");
            return;
        }
        cls.attributes.push_back(std::move(node));
    }

    std::optional<FunctionNode> function_definition(std::vector<DecoratorNode> decorators, bool method) {
        int line = next().line; // def
        FunctionNode fn;
        fn.line = line;
        fn.decorators = std::move(decorators);
        if (peek().kind != Tok::name || !is_op(peek(1), "(")) {
            info(line, "def statement not understood");
            skip_statement();
            return std::nullopt;
        }
        fn.name = next().text;
        std::size_t open = pos_;
        skip_brackets();
        std::size_t close = pos_ - 1;
        if (!is_op(t_[close], ")")) {
            info(line, "parameter list of '" + fn.name + "' not understood");
            skip_statement();
            return std::nullopt;
        }
        parameters(fn, open + 1, close);
        if (is_op(peek(), "->")) {
            next();
            auto [begin, end] = expression({":"});
            fn.return_hint = hint_text(begin, end);
        }
        if (!is_op(peek(), ":")) {
            info(line, "def header for '" + fn.name + "' not understood");
            skip_statement();
            return std::nullopt;
        }
        next();
        fn.docstring = suite(nullptr);

        bool is_static = std::any_of(fn.decorators.begin(), fn.decorators.end(),
                                     [](const DecoratorNode& d) { return d.name == "staticmethod"; });
        if (method && !is_static && !fn.parameters.empty() && fn.parameters.front().kind == ParameterKind::regular)
            fn.parameters.erase(fn.parameters.begin());
        attach_function_metadata(fn);
        return fn;
    }

    void parameters(FunctionNode& fn, std::size_t begin, std::size_t end) {
        bool keyword_only = false;
        for (auto [b, e] : split_commas(begin, end)) {
            if (b == e) continue;
            ParameterNode param;
            param.line = t_[b].line;
            std::size_t i = b;
            if (is_op(t_[i], "/")) continue;
            if (is_op(t_[i], "*") && i + 1 == e) {
                keyword_only = true;
                continue;
            }
            if (is_op(t_[i], "*")) {
                param.kind = ParameterKind::var_positional;
                keyword_only = true;
                ++i;
            } else if (is_op(t_[i], "**")) {
                param.kind = ParameterKind::var_keyword;
                ++i;
            } else if (keyword_only) {
                param.kind = ParameterKind::keyword_only;
            }
            if (i >= e || t_[i].kind != Tok::name) {
                info(param.line, "parameter of '" + fn.name + "' not understood");
                continue;
            }
            param.name = t_[i++].text;
            std::size_t eq = e;
            int depth = 0;
            for (std::size_t k = i; k < e; ++k) {
                if (is_op(t_[k], "(") || is_op(t_[k], "[") || is_op(t_[k], "{")) ++depth;
                if (is_op(t_[k], ")") || is_op(t_[k], "]") || is_op(t_[k], "}")) --depth;
                if (depth == 0 && is_op(t_[k], "=")) {
                    eq = k;
                    break;
                }
            }
            if (i < eq && is_op(t_[i], ":")) param.hint = hint_text(i + 1, eq);
            if (eq < e) param.default_value = default_node(eq + 1, e);
            if (std::any_of(fn.parameters.begin(), fn.parameters.end(),
                            [&](const ParameterNode& p) { return p.name == param.name; })) {
                warn(param.line, "duplicate-member", "parameter '" + param.name + "' repeats");
                continue;
            }
            fn.parameters.push_back(std::move(param));
        }
    }

    void attach_class_metadata(ClassNode& cls) {
        for (const auto& decorator : cls.decorators) {
            if (!decorator.is_datadesc()) continue;
            for (const auto& [key, value] : decorator.arguments.items()) {
                auto member = std::find_if(cls.attributes.begin(), cls.attributes.end(),
                                           [&](const AttributeNode& a) { return a.name == key; });
                if (member != cls.attributes.end()) {
                    if (value.is_object())
                        member->metadata.update(value);
                    else
                        warn(decorator.line, "metadata-shape", "metadata for '" + key + "' must be a dict");
                } else {
                    cls.metadata[key] = value;
                }
            }
        }
    }

    void attach_function_metadata(FunctionNode& fn) {
        for (const auto& decorator : fn.decorators) {
            if (!decorator.is_datadesc()) continue;
            for (const auto& [key, value] : decorator.arguments.items()) {
                auto member = std::find_if(fn.parameters.begin(), fn.parameters.end(),
                                           [&](const ParameterNode& p) { return p.name == key; });
                if (member != fn.parameters.end() || key == "return") {
                    if (!value.is_object()) {
                        warn(decorator.line, "metadata-shape", "metadata for '" + key + "' must be a dict");
                        continue;
                    }
                    (member != fn.parameters.end() ? member->metadata : fn.return_metadata).update(value);
                } else {
                    fn.metadata[key] = value;
                }
            }
        }
    }

    const std::vector<Token>& t_;
    std::size_t pos_ = 0;
    std::string file_;
    AnnotatedInterfaceTree& tree_;
    Diagnostics& diagnostics_;
};

std::string module_name(const std::string& path) {
    if (path.empty()) return "module";
    auto stem = std::filesystem::path(path).stem().string();
    return stem.empty() ? "module" : stem;
}

} // namespace

ParseOutcome parse_source(const SourceUnit& unit) {
    ParseOutcome outcome;
    outcome.tree.module = module_name(unit.path);
    auto where = [&](int line) { return (unit.path.empty() ? std::string("<source>") : unit.path) + ":" + std::to_string(line); };
    if (unit.dialect != "python") {
        outcome.diagnostics.push_back({Severity::error, "source-syntax", where(1), "unsupported dialect '" + unit.dialect + "'"});
        return outcome;
    }
    int bad_line = 0;
    if (!valid_utf8(unit.text, bad_line)) {
        outcome.diagnostics.push_back({Severity::error, "source-syntax", where(bad_line), "text is not valid UTF-8"});
        return outcome;
    }
    if (unit.text.find('\0') != std::string::npos) {
        outcome.diagnostics.push_back({Severity::error, "source-syntax", where(1), "source contains NUL bytes"});
        return outcome;
    }
    std::vector<Token> tokens;
    try {
        tokens = Tokenizer(unit.text).run();
    } catch (const SyntaxError& e) {
        outcome.diagnostics.push_back({Severity::error, "source-syntax", where(e.line), e.message});
        return outcome;
    }
    try {
        Parser(tokens, unit.path, outcome.tree, outcome.diagnostics).run();
    } catch (const std::exception& e) {
        // the parser is meant to be total; keep the contract if it is not
        outcome.tree = AnnotatedInterfaceTree{module_name(unit.path), {}, {}};
        outcome.diagnostics.push_back({Severity::error, "source-syntax", where(1), e.what()});
    }
    return outcome;
}

} // namespace datadesc::source
