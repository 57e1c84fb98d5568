#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "datadesc/diagnostic.hpp"
#include "datadesc/scalar.hpp"

namespace datadesc {

struct YamlLoadResult {
    std::optional<Tree> tree;
    std::optional<Diagnostic> error; ///< yaml-syntax, set iff tree is absent
};

/// Loads the first YAML document into a tree. Plain scalars resolve by the
/// YAML 1.2 core schema; quoted scalars stay strings; aliases are expanded by
/// value. Nesting deeper than 256 or expansion beyond one million nodes is
/// reported as yaml-syntax.
YamlLoadResult load_yaml(std::string_view text);

/// Block-style YAML with two-space indentation. Object keys are written in
/// tree order; strings are quoted only where YAML would read them as another
/// type or misparse them.
std::string emit_yaml(const Tree& tree);

/// Whether a string must be quoted to read back as the same string.
bool needs_quoting(std::string_view text);

} // namespace datadesc
