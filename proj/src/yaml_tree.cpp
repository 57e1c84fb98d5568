#include "datadesc/yaml_tree.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <regex>

#include <yaml-cpp/yaml.h>

namespace datadesc {

namespace {

constexpr int max_depth = 256;
constexpr std::size_t max_nodes = 1'000'000;

struct LoadLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_digits(std::string_view s, std::string_view alphabet) {
    return !s.empty() && s.find_first_not_of(alphabet) == std::string_view::npos;
}

std::optional<Tree> resolve_null_bool(std::string_view s) {
    if (s.empty() || s == "~" || s == "null" || s == "Null" || s == "NULL") return Tree(nullptr);
    if (s == "true" || s == "True" || s == "TRUE") return Tree(true);
    if (s == "false" || s == "False" || s == "FALSE") return Tree(false);
    return std::nullopt;
}

std::optional<Tree> resolve_int(std::string_view s) {
    std::string_view body = s;
    bool negative = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        negative = body[0] == '-';
        body.remove_prefix(1);
    }
    int base = 10;
    if (body.size() > 2 && body[0] == '0' && body[1] == 'x') {
        base = 16;
        body.remove_prefix(2);
        if (s[0] == '-' || s[0] == '+') return std::nullopt; // core schema: unsigned only
        if (!is_digits(body, "0123456789abcdefABCDEF")) return std::nullopt;
    } else if (body.size() > 2 && body[0] == '0' && body[1] == 'o') {
        base = 8;
        body.remove_prefix(2);
        if (s[0] == '-' || s[0] == '+') return std::nullopt;
        if (!is_digits(body, "01234567")) return std::nullopt;
    } else if (!is_digits(body, "0123456789")) {
        return std::nullopt;
    }
    std::uint64_t magnitude = 0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), magnitude, base);
    if (ec == std::errc::result_out_of_range) {
        // out of range integers keep their value approximately
        return Tree(std::strtod(std::string(s).c_str(), nullptr));
    }
    if (ec != std::errc() || ptr != body.data() + body.size()) return std::nullopt;
    constexpr auto limit = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
    if (negative) {
        if (magnitude > limit + 1) return Tree(-static_cast<double>(magnitude));
        return Tree(magnitude == limit + 1 ? std::numeric_limits<std::int64_t>::min()
                                           : -static_cast<std::int64_t>(magnitude));
    }
    if (magnitude > limit) return Tree(static_cast<double>(magnitude));
    return Tree(static_cast<std::int64_t>(magnitude));
}

std::optional<Tree> resolve_float(std::string_view s) {
    std::string_view body = s;
    bool negative = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        negative = body[0] == '-';
        body.remove_prefix(1);
    }
    if (body == ".inf" || body == ".Inf" || body == ".INF")
        return Tree(negative ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity());
    if (s == ".nan" || s == ".NaN" || s == ".NAN") return Tree(std::numeric_limits<double>::quiet_NaN());
    // [0-9]+(\.[0-9]*)?|\.[0-9]+ followed by optional exponent
    std::size_t i = 0;
    std::size_t int_digits = 0, frac_digits = 0;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i, ++int_digits;
    bool dot = false;
    if (i < body.size() && body[i] == '.') {
        dot = true;
        ++i;
        while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i, ++frac_digits;
    }
    if (int_digits == 0 && frac_digits == 0) return std::nullopt;
    bool exponent = false;
    if (i < body.size() && (body[i] == 'e' || body[i] == 'E')) {
        exponent = true;
        ++i;
        if (i < body.size() && (body[i] == '+' || body[i] == '-')) ++i;
        std::size_t exp_digits = 0;
        while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i, ++exp_digits;
        if (exp_digits == 0) return std::nullopt;
    }
    if (i != body.size() || (!dot && !exponent)) return std::nullopt;
    return Tree(std::strtod(std::string(s).c_str(), nullptr));
}

Tree resolve_plain(const std::string& s) {
    if (auto v = resolve_null_bool(s)) return *v;
    if (auto v = resolve_int(s)) return *v;
    if (auto v = resolve_float(s)) return *v;
    return Tree(s);
}

Tree resolve_tagged(const std::string& tag, const std::string& s) {
    static const std::string core = "tag:yaml.org,2002:";
    if (tag == "?") return resolve_plain(s);
    if (tag.rfind(core, 0) == 0) {
        auto kind = tag.substr(core.size());
        if (kind == "null") return nullptr;
        if (kind == "bool") {
            if (auto v = resolve_null_bool(s); v && v->is_boolean()) return *v;
        }
        if (kind == "int") {
            if (auto v = resolve_int(s)) return *v;
        }
        if (kind == "float") {
            if (auto v = resolve_int(s)) return Tree(static_cast<double>(v->get<double>()));
            if (auto v = resolve_float(s)) return *v;
        }
    }
    return Tree(s);
}

std::string key_text(const YAML::Node& key) {
    if (key.IsScalar()) return key.Scalar();
    if (key.IsNull()) return "null";
    YAML::Emitter emitter;
    emitter << YAML::Flow << key;
    return emitter.c_str();
}

Tree convert(const YAML::Node& node, int depth, std::size_t& count) {
    if (depth > max_depth) throw LoadLimit("nesting deeper than " + std::to_string(max_depth) + " levels");
    if (++count > max_nodes) throw LoadLimit("document expands to more than one million nodes");
    switch (node.Type()) {
    case YAML::NodeType::Undefined:
    case YAML::NodeType::Null: return nullptr;
    case YAML::NodeType::Scalar: return resolve_tagged(node.Tag(), node.Scalar());
    case YAML::NodeType::Sequence: {
        Tree array = Tree::array();
        for (const auto& item : node) array.push_back(convert(item, depth + 1, count));
        return array;
    }
    case YAML::NodeType::Map: {
        Tree object = Tree::object();
        for (const auto& item : node) {
            auto key = key_text(item.first);
            if (object.contains(key)) continue; // first occurrence wins
            object[key] = convert(item.second, depth + 1, count);
        }
        return object;
    }
    }
    return nullptr;
}

// ---------------------------------------------------------------- emission

bool matches_yaml11_number(const std::string& s) {
    static const std::regex int11(R"(^[-+]?(0b[01_]+|0[0-7_]+|(0|[1-9][0-9_]*)|0x[0-9a-fA-F_]+|[1-9][0-9_]*(:[0-5]?[0-9])+)$)");
    static const std::regex float11(R"(^[-+]?(([0-9][0-9_]*)?\.[0-9_]*([eE][-+]?[0-9]+)?|[0-9][0-9_]*(:[0-5]?[0-9])+\.[0-9_]*|\.(inf|Inf|INF)|\.(nan|NaN|NAN))$)");
    static const std::regex date(R"(^[0-9]{4}-[0-9]{1,2}-[0-9]{1,2}.*$)");
    return std::regex_match(s, int11) || std::regex_match(s, float11) || std::regex_match(s, date);
}

bool is_yaml11_bool(std::string_view s) {
    static const char* words[] = {"y", "Y", "yes", "Yes", "YES", "n", "N", "no", "No", "NO",
                                  "on", "On", "ON", "off", "Off", "OFF"};
    for (const char* w : words)
        if (s == w) return true;
    return false;
}

bool needs_double_quotes(std::string_view s) {
    for (unsigned char c : s)
        if (c < 0x20 || c == 0x7f) return true;
    return false;
}

std::string double_quoted(std::string_view s) {
    std::string out = "\"";
    for (unsigned char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (c < 0x20 || c == 0x7f) {
                static const char* hex = "0123456789abcdef";
                out += "\\x";
                out += hex[c >> 4];
                out += hex[c & 15];
            } else {
                out += static_cast<char>(c);
            }
        }
    }
    return out + "\"";
}

std::string string_text(std::string_view s) {
    if (needs_double_quotes(s)) return double_quoted(s);
    if (!needs_quoting(s)) return std::string(s);
    std::string out = "'";
    for (char c : s) {
        out += c;
        if (c == '\'') out += '\'';
    }
    return out + "'";
}

std::string scalar_text(const Tree& value) {
    switch (value.type()) {
    case Tree::value_t::null: return "null";
    case Tree::value_t::boolean: return value.get<bool>() ? "true" : "false";
    case Tree::value_t::number_integer: return std::to_string(value.get<std::int64_t>());
    case Tree::value_t::number_unsigned: return std::to_string(value.get<std::uint64_t>());
    case Tree::value_t::number_float: return format_real(value.get<double>());
    case Tree::value_t::string: return string_text(value.get_ref<const std::string&>());
    default: return "null";
    }
}

bool is_container(const Tree& value) { return value.is_object() || value.is_array(); }

void emit_block(const Tree& value, int indent, std::string& out);

/// Text after "key:" or "-", including the newline.
void emit_child(const Tree& value, int indent, std::string& out) {
    if (!is_container(value)) {
        out += ' ';
        out += scalar_text(value);
        out += '\n';
    } else if (value.empty()) {
        out += value.is_object() ? " {}\n" : " []\n";
    } else {
        out += '\n';
        emit_block(value, indent, out);
    }
}

void emit_block(const Tree& value, int indent, std::string& out) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    if (value.is_object()) {
        for (const auto& [key, child] : value.items()) {
            out += pad;
            out += string_text(key);
            out += ':';
            emit_child(child, indent + 2, out);
        }
        return;
    }
    for (const auto& item : value) {
        if (is_container(item) && !item.empty()) {
            // render the nested block one level deeper, then fold its first line onto the dash
            std::string nested;
            emit_block(item, indent + 2, nested);
            out += pad;
            out += "- ";
            out += nested.substr(static_cast<std::size_t>(indent) + 2);
        } else {
            out += pad;
            out += '-';
            emit_child(item, indent + 2, out);
        }
    }
}

} // namespace

bool needs_quoting(std::string_view text) {
    if (text.empty()) return true;
    if (text.front() == ' ' || text.back() == ' ') return true;
    static constexpr std::string_view indicators = "-?:,[]{}#&*!|>'\"%@`";
    if (indicators.find(text.front()) != std::string_view::npos) return true;
    if (text.find(": ") != std::string_view::npos || text.find(" #") != std::string_view::npos) return true;
    if (text.back() == ':') return true;
    if (text == "=" || text == "<<" || text.substr(0, 3) == "...") return true;
    std::string s(text);
    Tree resolved = resolve_plain(s);
    if (!resolved.is_string()) return true;
    if (is_yaml11_bool(text)) return true;
    if (std::isdigit(static_cast<unsigned char>(text.front())) || text.front() == '+' || text.front() == '.')
        return matches_yaml11_number(s);
    return false;
}

YamlLoadResult load_yaml(std::string_view text) {
    YamlLoadResult result;
    try {
        YAML::Node root = YAML::Load(std::string(text));
        std::size_t count = 0;
        result.tree = convert(root, 0, count);
    } catch (const YAML::Exception& e) {
        result.error = Diagnostic{Severity::error, "yaml-syntax", "", e.what()};
    } catch (const LoadLimit& e) {
        result.error = Diagnostic{Severity::error, "yaml-syntax", "", e.what()};
    } catch (const std::exception& e) {
        result.error = Diagnostic{Severity::error, "yaml-syntax", "", std::string("unreadable input: ") + e.what()};
    }
    return result;
}

std::string emit_yaml(const Tree& tree) {
    std::string out;
    if (!is_container(tree)) return scalar_text(tree) + "\n";
    if (tree.empty()) return tree.is_object() ? "{}\n" : "[]\n";
    emit_block(tree, 0, out);
    return out;
}

} // namespace datadesc
