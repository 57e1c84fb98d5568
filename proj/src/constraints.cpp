#include "datadesc/constraints.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

namespace datadesc {

namespace {

std::string lower(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

struct FormatEntry {
    std::string_view tag;
    std::vector<std::string_view> extensions;
    std::vector<std::string_view> magic; ///< any prefix matches; empty = text heuristic
};

const std::vector<FormatEntry>& format_table() {
    static const std::vector<FormatEntry> table = {
        {"netcdf", {".nc", ".nc4", ".cdf", ".netcdf"}, {"CDF\x01", "CDF\x02", "\x89HDF\r\n\x1a\n"}},
        {"xlsx", {".xlsx"}, {"PK\x03\x04"}},
        {"xls", {".xls"}, {"\xD0\xCF\x11\xE0\xA1\xB1\x1A\xE1"}},
        {"xml", {".xml"}, {"<?xml", "<"}},
        {"json", {".json"}, {"{", "["}},
        {"csv", {".csv"}, {}},
        {"txt", {".txt", ".text"}, {}},
        {"text", {".txt", ".text"}, {}},
        {"pdf", {".pdf"}, {"%PDF-"}},
        {"jpg", {".jpg", ".jpeg"}, {"\xFF\xD8\xFF"}},
        {"jpeg", {".jpg", ".jpeg"}, {"\xFF\xD8\xFF"}},
        {"html", {".html", ".htm"}, {"<!doctype html", "<html", "<!DOCTYPE html", "<HTML"}},
    };
    return table;
}

const FormatEntry* find_format(std::string_view tag) {
    auto key = lower(tag);
    for (const auto& entry : format_table())
        if (entry.tag == key) return &entry;
    return nullptr;
}

std::string describe_bound(const Scalar& bound, bool exclusive) {
    return bound.to_text() + (exclusive ? " (exclusive)" : "");
}

} // namespace

bool matches_type(const Scalar& value, const DataType& type) {
    switch (type.kind()) {
    case TypeKind::unspecified:
    case TypeKind::opaque:
    case TypeKind::class_reference: return true;
    case TypeKind::string:
    case TypeKind::file: return value.is_string();
    case TypeKind::integer: return value.is_integral();
    case TypeKind::number: return value.is_number();
    case TypeKind::boolean: return value.is_bool();
    case TypeKind::object:
    case TypeKind::array: return false;
    }
    return true;
}

std::vector<ConstraintViolation> scalar_violations(const Scalar& value,
                                                   const VariableDescription& variable) {
    std::vector<ConstraintViolation> out;
    if (!matches_type(value, variable.data_type)) {
        out.push_back({"type", "value " + value.to_text() + " is not of type " +
                                   (variable.data_type.kind() == TypeKind::class_reference
                                        ? variable.data_type.detail()
                                        : variable.data_type.name())});
    }
    if (value.is_number()) {
        if (variable.minimum && variable.minimum->is_number()) {
            int cmp = compare_numbers(value, *variable.minimum);
            if (cmp < 0)
                out.push_back({"range", "value " + value.to_text() + " is below the minimum " +
                                            describe_bound(*variable.minimum, variable.exclusive_minimum)});
            else if (cmp == 0 && variable.exclusive_minimum)
                out.push_back({"exclusive-bound",
                               "value " + value.to_text() + " equals the exclusive minimum"});
        }
        if (variable.maximum && variable.maximum->is_number()) {
            int cmp = compare_numbers(value, *variable.maximum);
            if (cmp > 0)
                out.push_back({"range", "value " + value.to_text() + " is above the maximum " +
                                            describe_bound(*variable.maximum, variable.exclusive_maximum)});
            else if (cmp == 0 && variable.exclusive_maximum)
                out.push_back({"exclusive-bound",
                               "value " + value.to_text() + " equals the exclusive maximum"});
        }
    }
    if (value.is_string() && variable.regular_expression &&
        !regex_dialect_error(*variable.regular_expression) &&
        !regex_full_match(*variable.regular_expression, value.as_string())) {
        out.push_back({"regex", "'" + value.as_string() + "' does not match " + *variable.regular_expression});
    }
    if (variable.value_set) {
        const auto& set = *variable.value_set;
        if (std::find(set.begin(), set.end(), value) == set.end())
            out.push_back({"value-set", "value " + value.to_text() + " is not in the value set"});
    }
    if (value.is_string() && variable.file_format) {
        auto fits = file_format_matches_extension(*variable.file_format, value.as_string());
        if (fits && !*fits)
            out.push_back({"file-format",
                           "'" + value.as_string() + "' does not name a " + *variable.file_format + " file"});
    }
    return out;
}

std::optional<std::string> regex_dialect_error(std::string_view pattern) {
    bool in_class = false;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        char c = pattern[i];
        if (c == '\\') {
            if (i + 1 >= pattern.size()) return "trailing backslash";
            char next = pattern[i + 1];
            if (!in_class && next >= '1' && next <= '9') return "backreferences are not supported";
            if (!in_class && next == 'k') return "named backreferences are not supported";
            ++i;
            continue;
        }
        if (in_class) {
            if (c == ']') in_class = false;
            continue;
        }
        if (c == '[') {
            in_class = true;
            // a leading ']' (or '^]') is a literal member
            if (i + 1 < pattern.size() && pattern[i + 1] == '^') ++i;
            if (i + 1 < pattern.size() && pattern[i + 1] == ']') ++i;
            continue;
        }
        if (c == '(' && i + 1 < pattern.size() && pattern[i + 1] == '?') {
            if (i + 2 < pattern.size() && pattern[i + 2] == ':') continue;
            return "lookaround, named groups and inline flags are not supported";
        }
    }
    try {
        std::regex compiled(pattern.begin(), pattern.end(), std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
        return std::string("does not compile: ") + e.what();
    }
    return std::nullopt;
}

bool regex_full_match(std::string_view pattern, std::string_view text) {
    try {
        std::regex compiled(pattern.begin(), pattern.end(), std::regex::ECMAScript);
        return std::regex_match(text.begin(), text.end(), compiled);
    } catch (const std::exception&) {
        return false;
    }
}

bool is_known_file_format(std::string_view tag) { return find_format(tag) != nullptr; }

std::optional<bool> file_format_matches_extension(std::string_view tag, std::string_view path) {
    const auto* entry = find_format(tag);
    if (!entry) return std::nullopt;
    auto name = lower(path);
    return std::any_of(entry->extensions.begin(), entry->extensions.end(), [&](std::string_view ext) {
        return name.size() >= ext.size() && name.compare(name.size() - ext.size(), ext.size(), ext) == 0;
    });
}

std::optional<bool> file_format_matches_content(std::string_view tag, std::string_view bytes) {
    const auto* entry = find_format(tag);
    if (!entry) return std::nullopt;
    if (entry->magic.empty()) {
        // text formats: no NUL bytes in the sniffed prefix
        auto prefix = bytes.substr(0, 4096);
        return prefix.find('\0') == std::string_view::npos;
    }
    auto start = bytes.find_first_not_of(" \t\r\n");
    std::string_view body = start == std::string_view::npos ? std::string_view{} : bytes.substr(start);
    if (entry->tag == "xml" || entry->tag == "json" || entry->tag == "html") {
        // skip a UTF-8 byte order mark
        if (body.substr(0, 3) == "\xEF\xBB\xBF") body.remove_prefix(3);
    } else {
        body = bytes;
    }
    return std::any_of(entry->magic.begin(), entry->magic.end(), [&](std::string_view magic) {
        return body.substr(0, magic.size()) == magic;
    });
}

} // namespace datadesc
