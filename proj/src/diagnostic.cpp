#include "datadesc/diagnostic.hpp"

#include <algorithm>

namespace datadesc {

std::string_view to_string(Severity severity) {
    switch (severity) {
    case Severity::error: return "error";
    case Severity::warning: return "warning";
    case Severity::info: return "info";
    }
    return "error";
}

bool has_errors(const Diagnostics& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::size_t count_code(const Diagnostics& diagnostics, std::string_view code) {
    return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(),
                                                  [&](const Diagnostic& d) { return d.code == code; }));
}

std::string format(const Diagnostic& diagnostic) {
    std::string line(to_string(diagnostic.severity));
    line += ' ';
    line += diagnostic.code;
    line += ' ';
    line += diagnostic.path.empty() ? "/" : diagnostic.path;
    line += ' ';
    line += diagnostic.message;
    return line;
}

void sort_by_path(Diagnostics& diagnostics) {
    std::stable_sort(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.path < b.path; });
}

std::string join_path(std::string_view parent, std::string_view child) {
    if (parent.empty()) return std::string(child);
    std::string out(parent);
    out += '/';
    out += child;
    return out;
}

} // namespace datadesc
