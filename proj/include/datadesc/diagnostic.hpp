#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace datadesc {

enum class Severity { error, warning, info };

std::string_view to_string(Severity severity);

/// A machine-readable finding. `path` is a slash-separated node path into the
/// serialized document ("info/version", "components/schemas/X/properties/y");
/// the empty path denotes the document root.
struct Diagnostic {
    Severity severity = Severity::error;
    std::string code;
    std::string path;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(const Diagnostics& diagnostics);
std::size_t count_code(const Diagnostics& diagnostics, std::string_view code);

/// `severity code path message`, with "/" standing for the root path.
std::string format(const Diagnostic& diagnostic);

/// Stable sort by path; ties keep emission order.
void sort_by_path(Diagnostics& diagnostics);

std::string join_path(std::string_view parent, std::string_view child);

/// Raised by operations whose contract names hard errors (resolve, emit, merge
/// on invalid input, ...). Validation findings are returned, not thrown.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace datadesc
