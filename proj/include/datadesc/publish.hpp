#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "datadesc/model.hpp"

namespace datadesc {

enum class ExportTarget { docs_markdown, docs_html, codemeta_json, package_metadata, registry_record };

std::optional<ExportTarget> parse_export_target(std::string_view cli_name);

/// Relative path -> file content.
using FileSet = std::map<std::string, std::string>;

/// index page plus one page per class (classes/<Name>.md|.html). Throws
/// Error("invalid-document") for documents with check errors.
FileSet render_docs(const DataDescDocument& doc, ExportTarget format);

/// codemeta.json: sorted keys, two-space indent.
FileSet export_codemeta(const DataDescDocument& doc);

/// pyproject.toml stub or registry_record.json.
FileSet build_registry_payload(const DataDescDocument& doc, ExportTarget target);

/// Dispatches on target.
FileSet export_files(const DataDescDocument& doc, ExportTarget target);

} // namespace datadesc
