#pragma once

#include <map>
#include <string>
#include <string_view>

#include "datadesc/diagnostic.hpp"
#include "datadesc/model.hpp"

namespace datadesc {

inline constexpr std::string_view codemeta_context = "https://doi.org/10.5063/schema/codemeta-2.0";

/// Flat CodeMeta term -> value map (JSON-LD keywords excluded).
struct CodeMetaRecord {
    std::map<std::string, Tree> terms;

    /// JSON-LD object with @context and @type, keys sorted.
    nlohmann::json to_json_ld() const;
    /// Drops @context/@type/@id; throws Error("codemeta-shape") for non-objects.
    static CodeMetaRecord from_json(const Tree& json);

    bool operator==(const CodeMetaRecord&) const = default;
};

struct CodeMetaExport {
    CodeMetaRecord record;
    Diagnostics diagnostics; ///< info codemeta-unmapped for dropped extensions
};

struct InfoImport {
    SoftwareInfo info;
    Diagnostics diagnostics; ///< warning missing-version when 0.0.0 was substituted
};

/// Crosswalk: title->name, version->version, description->description,
/// first release->dateCreated, programming language->programmingLanguage,
/// authors->author, license->license, repository->codeRepository,
/// keywords->keywords, reference publication->referencePublication.
/// Extensions named x-codemeta-<term> go back out as <term>.
CodeMetaExport info_to_codemeta(const SoftwareInfo& info);

/// Inverse crosswalk. Unmapped terms land in extensions as x-codemeta-<term>.
/// Throws Error("missing-name") when the record has no name.
InfoImport codemeta_to_info(const CodeMetaRecord& record);

} // namespace datadesc
