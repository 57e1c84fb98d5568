#include <gtest/gtest.h>

#include "datadesc/check.hpp"
#include "datadesc/exchange.hpp"
#include "datadesc/source.hpp"
#include "support.hpp"

using namespace datadesc;
using namespace datadesc::source;

namespace {

ParseOutcome parse(const std::string& text, const std::string& path = "mod.py") { return parse_source({path, text}); }

SoftwareInfo sample_info() {
    SoftwareInfo info;
    info.title = "sample";
    info.version = "1.0";
    return info;
}

ExtractResult extract_text(const std::string& text) {
    auto parsed = parse(text);
    EXPECT_FALSE(has_errors(parsed.diagnostics));
    return extract_interface({parsed.tree}, sample_info());
}

} // namespace

TEST(SourceParserTest, ClassesAttributesMethods) {
    auto outcome = parse(R"(
import os
X = 3

class A(Base, metaclass=M):
    """Doc A."""
    a: int = 1
    b: Optional[str]
    c: List[int] = [1, 2,
                    3]

    def f(self, x: float = 0.5, *args, y: "B" = None, **kw) -> bool:
        """Doc f."""
        if x:
            return True
        return False

    @staticmethod
    def g(self): ...

    class Inner:
        z: bool = True
)");
    EXPECT_FALSE(has_errors(outcome.diagnostics));
    const auto& tree = outcome.tree;
    EXPECT_EQ(tree.module, "mod");
    ASSERT_EQ(tree.classes.size(), 2u);
    const auto& a = tree.classes[0];
    EXPECT_EQ(a.name, "A");
    EXPECT_EQ(a.docstring, "Doc A.");
    ASSERT_EQ(a.attributes.size(), 3u);
    EXPECT_EQ(a.attributes[0].hint, "int");
    EXPECT_EQ(*a.attributes[0].default_value->literal, 1);
    EXPECT_EQ(a.attributes[1].hint, "Optional[str]");
    EXPECT_FALSE(a.attributes[1].default_value);
    EXPECT_EQ(*a.attributes[2].default_value->literal, Tree::array({1, 2, 3}));
    ASSERT_EQ(a.methods.size(), 2u);
    const auto& f = a.methods[0];
    EXPECT_EQ(f.docstring, "Doc f.");
    EXPECT_EQ(f.return_hint, "bool");
    ASSERT_EQ(f.parameters.size(), 4u);
    EXPECT_EQ(f.parameters[0].name, "x");
    EXPECT_EQ(f.parameters[1].kind, ParameterKind::var_positional);
    EXPECT_EQ(f.parameters[2].kind, ParameterKind::keyword_only);
    EXPECT_EQ(f.parameters[2].hint, "\"B\""); // quotes are stripped by map_type_hint
    EXPECT_EQ(f.parameters[3].kind, ParameterKind::var_keyword);
    EXPECT_EQ(a.methods[1].parameters.size(), 1u); // staticmethod keeps its first parameter
    EXPECT_EQ(tree.classes[1].name, "Inner");
    EXPECT_GE(count_code(outcome.diagnostics, "unsupported-construct"), 1u);
}

TEST(SourceParserTest, DecoratorMetadataAttachment) {
    auto outcome = parse(R"(
@datadesc(a={"MinimumValue": 0}, Description="node level", NodeKey=1)
class A:
    a: int = 3

    @datadesc.datadesc(x={"Unit": "m"}, **{"return": {"Description": "out"}})
    def f(self, x: float) -> float: ...
)");
    const auto& a = outcome.tree.classes.at(0);
    EXPECT_TRUE(a.decorators.at(0).is_datadesc());
    EXPECT_EQ(a.attributes[0].metadata["MinimumValue"], 0);
    EXPECT_EQ(a.metadata["Description"], "node level");
    EXPECT_EQ(a.metadata["NodeKey"], 1);
    const auto& f = a.methods.at(0);
    EXPECT_EQ(f.parameters[0].metadata["Unit"], "m");
}

TEST(SourceParserTest, LiteralForms) {
    auto outcome = parse(R"(
class A:
    a: int = 0x1F
    b: int = 1_000
    c: float = -2.5e3
    d: str = 'it''s'
    e: dict = {"k": (1, None), 'j': True}
    f: str = f"x{y}"
    g: int = compute()
    h: str = r"\d+"
    i: str = "\u00e9\n"
    j: int = 10**100
)");
    ASSERT_FALSE(has_errors(outcome.diagnostics));
    const auto& attrs = outcome.tree.classes.at(0).attributes;
    ASSERT_EQ(attrs.size(), 10u);
    EXPECT_EQ(*attrs[0].default_value->literal, 31);
    EXPECT_EQ(*attrs[1].default_value->literal, 1000);
    EXPECT_EQ(*attrs[2].default_value->literal, -2500.0);
    EXPECT_EQ(*attrs[3].default_value->literal, "its");
    EXPECT_EQ((*attrs[4].default_value->literal)["k"], Tree::array({1, nullptr}));
    EXPECT_TRUE(attrs[5].default_value->dynamic());
    EXPECT_TRUE(attrs[6].default_value->dynamic());
    EXPECT_EQ(attrs[6].default_value->text, "compute()");
    EXPECT_EQ(*attrs[7].default_value->literal, "\\d+");
    EXPECT_EQ(*attrs[8].default_value->literal, "\xc3\xa9\n");
    EXPECT_TRUE(attrs[9].default_value->dynamic());
}

TEST(SourceParserTest, FatalInputsGiveEmptyTree) {
    for (std::string text : {std::string("class A:\n    s = 'open\n"), std::string("x = \"\"\"never closed\n"),
                             std::string("bad \xff utf8\n"), std::string("nul\0byte", 8)}) {
        auto outcome = parse(text);
        EXPECT_EQ(count_code(outcome.diagnostics, "source-syntax"), 1u) << text;
        EXPECT_TRUE(outcome.tree.classes.empty());
    }
    auto other = parse_source({"a.rb", "class A; end", "ruby"});
    EXPECT_EQ(count_code(other.diagnostics, "source-syntax"), 1u);
}

TEST(SourceParserTest, DiagnosticsCarryLines) {
    auto outcome = parse("class A:\n    a: int\n    a: str\n", "pkg/mod.py");
    ASSERT_EQ(count_code(outcome.diagnostics, "duplicate-member"), 1u);
    for (const auto& d : outcome.diagnostics)
        if (d.code == "duplicate-member") EXPECT_EQ(d.path, "pkg/mod.py:3");
}

TEST(TypeHintTest, Mapping) {
    std::set<std::string> classes = {"Component"};
    EXPECT_EQ(map_type_hint("int").type.kind(), TypeKind::integer);
    EXPECT_EQ(map_type_hint("float").type.kind(), TypeKind::number);
    EXPECT_EQ(map_type_hint("str").type.kind(), TypeKind::string);
    EXPECT_EQ(map_type_hint("bool").type.kind(), TypeKind::boolean);
    EXPECT_EQ(map_type_hint("List[int]").type.kind(), TypeKind::array);
    EXPECT_EQ(map_type_hint("dict").type.kind(), TypeKind::object);
    EXPECT_EQ(map_type_hint("Optional[int]").type.kind(), TypeKind::integer);
    EXPECT_EQ(map_type_hint("Union[str, None]").type.kind(), TypeKind::string);
    EXPECT_EQ(map_type_hint("float | None").type.kind(), TypeKind::number);
    auto ref = map_type_hint("'Component'", classes);
    EXPECT_EQ(ref.type.kind(), TypeKind::class_reference);
    EXPECT_EQ(ref.type.reference_path()->target(), "Component");
    EXPECT_EQ(map_type_hint("models.Component", classes).type.kind(), TypeKind::class_reference);
    auto opaque = map_type_hint("pd.DataFrame", classes);
    EXPECT_EQ(opaque.type.kind(), TypeKind::opaque);
    ASSERT_TRUE(opaque.warning);
    EXPECT_EQ(opaque.warning->code, "opaque-type");
}

TEST(ExtractTest, FixtureNumberOfTimeSteps) {
    auto result = extract_text(testkit::read_fixture("energy_system_model.py"));
    ASSERT_FALSE(has_errors(result.diagnostics));
    const auto& model = result.document.classes.at("EnergySystemModel");
    EXPECT_TRUE(model.is_part_of_interface);
    const auto& steps = *model.properties.find("numberOfTimeSteps");
    EXPECT_EQ(steps.data_type.kind(), TypeKind::integer);
    EXPECT_EQ(steps.default_value, Scalar(8760));
    EXPECT_EQ(steps.minimum, Scalar(0));
    EXPECT_TRUE(steps.exclusive_minimum);
    EXPECT_EQ(model.required, std::vector<std::string>{"numberOfTimeSteps"});

    const auto& aggregate = *model.functions.find("aggregateTemporally");
    const auto& method = *aggregate.parameters.find("clusterMethod");
    EXPECT_EQ(method.value_set, (std::vector<Scalar>{"averaging", "k_means"}));
    EXPECT_EQ(method.default_value, Scalar("averaging"));
    const auto& remove = *model.functions.find("removeComponent");
    ASSERT_TRUE(remove.return_description);
    EXPECT_EQ(remove.return_description->data_type.reference_path()->target(), "Component");

    const auto& capacity = *result.document.classes.at("Component").properties.find("capacityMax");
    EXPECT_EQ(capacity.dimensions.size(), 2u);
    EXPECT_EQ(capacity.dimensions.find("time")->item_minimum, Scalar(0));
}

TEST(ExtractTest, DecoratorOverridesHint) {
    auto result = extract_text(R"(
@datadesc(a={"DataType": "number", "DefaultValue": 2, "Colour": "red"})
class A:
    a: int = 1
)");
    const auto& a = *result.document.classes.at("A").properties.find("a");
    EXPECT_EQ(a.data_type.kind(), TypeKind::number);
    EXPECT_EQ(a.default_value, Scalar(2));
    EXPECT_TRUE(a.extensions.count("x-Colour"));
    EXPECT_GE(count_code(result.diagnostics, "decorator-override"), 2u);
    EXPECT_EQ(count_code(result.diagnostics, "unknown-attribute"), 1u);
}

TEST(ExtractTest, FallbacksKeepTheDocumentValid) {
    auto result = extract_text(R"(
@datadesc(a={"MinimumValue": 5}, b={"MinimumValue": "x"}, c={"VariableRole": "output"})
class A:
    a: int = 1
    b: int = 1
    c: int = compute()
    d: dict = {"k": 1}

    @datadesc(p={"VariableRole": "output"}, **{"return": {"VariableRole": "input"}})
    def f(self, p: int) -> int: ...
)");
    EXPECT_FALSE(has_errors(result.diagnostics));
    EXPECT_FALSE(has_errors(check_document(result.document)));
    EXPECT_GE(count_code(result.diagnostics, "extraction-fallback"), 2u);
    EXPECT_EQ(count_code(result.diagnostics, "dynamic-default"), 1u);
    EXPECT_EQ(count_code(result.diagnostics, "non-scalar-default"), 1u);
}

TEST(ExtractTest, ModuleFunctionsAndDuplicates) {
    auto result = extract_text("def helper(n: int = 2) -> str: ...\n");
    ASSERT_TRUE(result.document.classes.count("mod"));
    EXPECT_TRUE(result.document.classes.at("mod").functions.contains("helper"));

    auto left = parse("class A: pass\n", "a.py");
    auto right = parse("class A: pass\n", "b.py");
    EXPECT_THROW(extract_interface({left.tree, right.tree}, sample_info()), Error);
}

// Property: extraction is a function of its input and its output survives the
// exchange round trip.
TEST(ExtractTest, IdempotentAndRoundTrips) {
    auto parsed = parse(testkit::read_fixture("energy_system_model.py"), "energy_system_model.py");
    auto first = extract_interface({parsed.tree}, sample_info());
    auto second = extract_interface({parse(testkit::read_fixture("energy_system_model.py"),
                                           "energy_system_model.py").tree},
                                    sample_info());
    EXPECT_EQ(first.document, second.document);
    EXPECT_EQ(first.diagnostics, second.diagnostics);
    auto emitted = emit_document(first.document);
    auto reparsed = parse_document(emitted);
    ASSERT_TRUE(reparsed.ok());
    EXPECT_EQ(*reparsed.document, first.document);
}

// Generated Python-ish sources: every extraction that succeeds yields a valid document.
TEST(ExtractTest, GeneratedSourcesProperty) {
    testkit::Gen gen(37);
    const std::vector<std::string> hints = {"int", "float", "str", "bool", "List[int]", "dict", "Optional[int]",
                                            "np.ndarray", "C0", ""};
    const std::vector<std::string> defaults = {"1", "2.5", "'s'", "True", "None", "[1]", "f()", "-3", ""};
    const std::vector<std::string> metadata = {"", "\"MinimumValue\": 0", "\"MaximumValue\": 10",
                                               "\"ExclusiveMinimum\": True, \"MinimumValue\": 1",
                                               "\"ValueSet\": [1, 2]", "\"Required\": False",
                                               "\"RegularExpression\": \"^a$\"", "\"DataType\": \"string\"",
                                               "\"VariableRole\": \"output\""};
    for (int i = 0; i < 400; ++i) {
        std::string text;
        int classes = gen.range(1, 3);
        for (int c = 0; c < classes; ++c) {
            std::string decorator = "@datadesc(";
            std::string body;
            int attrs = gen.range(0, 4);
            for (int a = 0; a < attrs; ++a) {
                auto name = "a" + std::to_string(a);
                auto hint = hints[static_cast<std::size_t>(gen.range(0, static_cast<int>(hints.size()) - 1))];
                auto def = defaults[static_cast<std::size_t>(gen.range(0, static_cast<int>(defaults.size()) - 1))];
                auto meta = metadata[static_cast<std::size_t>(gen.range(0, static_cast<int>(metadata.size()) - 1))];
                if (hint.empty() && def.empty()) def = "0";
                body += "    " + name + (hint.empty() ? "" : ": " + hint) + (def.empty() ? "" : " = " + def) + "\n";
                if (!meta.empty()) decorator += name + "={" + meta + "}, ";
            }
            if (gen.coin()) body += "    def m(self, p: int = 3, q: str = 'x') -> float: ...\n";
            if (body.empty()) body = "    pass\n";
            text += decorator + ")\nclass C" + std::to_string(c) + ":\n" + body + "\n";
        }
        auto parsed = parse(text);
        ASSERT_FALSE(has_errors(parsed.diagnostics)) << text;
        auto result = extract_interface({parsed.tree}, sample_info());
        ASSERT_FALSE(has_errors(result.diagnostics)) << text << format(result.diagnostics.front());
        auto reparsed = parse_document(emit_document(result.document));
        ASSERT_TRUE(reparsed.ok()) << text;
        ASSERT_EQ(*reparsed.document, result.document) << text;
    }
}

// Fuzz totality: arbitrary bytes never throw or crash.
TEST(SourceParserTest, RandomBytesNeverThrow) {
    testkit::Gen gen(41);
    const std::string tokens[] = {"class ", "def ", "@datadesc(", ")", "(", ":", "\n", "    ", "'", "\"\"\"", "=",
                                  "{", "}", "[", "]", ",", "x", "1", "#", "\\", "->", "*", "\t"};
    for (int i = 0; i < 3000; ++i) {
        std::string text;
        int n = gen.range(0, 60);
        for (int k = 0; k < n; ++k) {
            if (gen.coin(0.7)) text += tokens[gen.range(0, 22)];
            else text += static_cast<char>(gen.range(0, 255));
        }
        ParseOutcome outcome;
        ASSERT_NO_THROW(outcome = parse(text)) << i;
        try {
            extract_interface({outcome.tree}, sample_info());
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), "duplicate-class");
        }
    }
}
