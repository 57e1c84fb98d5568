#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "datadesc/diagnostic.hpp"
#include "datadesc/model.hpp"

namespace datadesc::source {

/// One annotated source file. The only dialect is a declaration subset of
/// Python 3: class statements, annotated assignments, def statements with
/// annotations and literal defaults, decorator calls, triple-quoted docstrings.
struct SourceUnit {
    std::string path;
    std::string text;
    std::string dialect = "python";
};

/// Literal default of an attribute or parameter.
struct DefaultNode {
    std::optional<Tree> literal; ///< set for literal expressions
    std::string text;            ///< source text of the expression
    bool dynamic() const { return !literal.has_value(); }
};

struct AttributeNode {
    std::string name;
    std::string hint; ///< normalized annotation text, empty when absent
    std::optional<DefaultNode> default_value;
    Tree metadata = Tree::object(); ///< decorator metadata for this member
    int line = 0;
};

enum class ParameterKind { regular, var_positional, keyword_only, var_keyword };

struct ParameterNode {
    std::string name;
    std::string hint;
    std::optional<DefaultNode> default_value;
    ParameterKind kind = ParameterKind::regular;
    Tree metadata = Tree::object();
    int line = 0;
};

struct DecoratorNode {
    std::string name;                   ///< dotted name as written
    Tree arguments = Tree::object();    ///< literal keyword arguments
    int line = 0;
    bool is_datadesc() const;
};

struct FunctionNode {
    std::string name;
    std::string docstring;
    std::vector<DecoratorNode> decorators;
    std::vector<ParameterNode> parameters; ///< self/cls already removed for methods
    std::string return_hint;
    Tree return_metadata = Tree::object();
    Tree metadata = Tree::object(); ///< node-level decorator keys
    int line = 0;
};

struct ClassNode {
    std::string name;
    std::string docstring;
    std::vector<DecoratorNode> decorators;
    std::vector<AttributeNode> attributes;
    std::vector<FunctionNode> methods;
    Tree metadata = Tree::object();
    int line = 0;
};

struct AnnotatedInterfaceTree {
    std::string module; ///< file stem, "module" when the unit has no path
    std::vector<ClassNode> classes;       ///< nested classes flattened, source order
    std::vector<FunctionNode> functions;  ///< module-level functions

    std::set<std::string> class_names() const;
};

struct ParseOutcome {
    AnnotatedInterfaceTree tree;
    Diagnostics diagnostics;
};

/// Never throws. Unsupported statements are skipped with an info diagnostic;
/// only untokenizable input (bad UTF-8, unterminated strings) is fatal
/// (source-syntax) and yields an empty tree.
ParseOutcome parse_source(const SourceUnit& unit);

struct TypeMapping {
    DataType type;
    std::optional<Diagnostic> warning; ///< set for opaque fallbacks
};

/// int->integer, float->number, str->string, bool->boolean, list/List[...]->
/// array, dict/Dict[...]->object, declared class->class_reference, else opaque.
TypeMapping map_type_hint(std::string_view hint, const std::set<std::string>& declared_classes = {});

struct ExtractResult {
    DataDescDocument document;
    Diagnostics diagnostics;
};

/// Builds a document from parsed units. Defaults fill default_value and make a
/// member optional; decorator metadata wins over hint-derived fields (with a
/// decorator-override warning). Throws Error("duplicate-class") when two
/// classes share a name.
ExtractResult extract_interface(const std::vector<AnnotatedInterfaceTree>& trees,
                                const SoftwareInfo& info);

} // namespace datadesc::source
