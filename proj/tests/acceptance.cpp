// Acceptance suite: one gtest suite per primary criterion, summarized as one
// PASS/FAIL line each after the run.
#include <gtest/gtest.h>

#include <chrono>
#include <cstdio>
#include <map>

#include "datadesc/codemeta.hpp"
#include "datadesc/exchange.hpp"
#include "datadesc/instance.hpp"
#include "datadesc/merge.hpp"
#include "datadesc/publish.hpp"
#include "datadesc/source.hpp"
#include "support.hpp"

using namespace datadesc;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned limits.
constexpr double round_trip_budget_s = 1.0;
constexpr int determinism_runs = 10;
constexpr int codemeta_samples = 200;
constexpr int fuzz_inputs = 10000;
constexpr double fuzz_budget_s = 60.0;
constexpr int oracle_lo = -10;
constexpr int oracle_hi = 10;

std::map<int, std::string>& notes() {
    static std::map<int, std::string> n;
    return n;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

DataDescDocument fixture() {
    auto parsed = parse_document(testkit::read_fixture("fine_excerpt.yaml"));
    if (!parsed.document) throw std::runtime_error("fixture does not parse");
    return *parsed.document;
}

std::vector<std::string> error_codes(const ValidationResult& result) {
    std::vector<std::string> out;
    for (const auto& d : result.diagnostics)
        if (d.severity == Severity::error) out.push_back(d.code);
    return out;
}

bool has_code(const ValidationResult& result, const std::string& code) {
    auto codes = error_codes(result);
    return std::find(codes.begin(), codes.end(), code) != codes.end();
}

} // namespace

TEST(Criterion1, FixtureRoundTrip) {
    auto start = Clock::now();
    auto text = testkit::read_fixture("fine_excerpt.yaml");
    auto parsed = parse_document(text);
    ASSERT_TRUE(parsed.document);
    EXPECT_FALSE(has_errors(parsed.diagnostics));
    auto emitted = emit_document(*parsed.document);
    auto again = parse_document(emitted);
    ASSERT_TRUE(again.ok());
    EXPECT_EQ(*again.document, *parsed.document);
    for (int run = 1; run < determinism_runs; ++run) {
        auto fresh = parse_document(text);
        ASSERT_TRUE(fresh.document);
        EXPECT_EQ(emit_document(*fresh.document), emitted) << "run " << run;
    }
    double elapsed = seconds_since(start);
    EXPECT_LT(elapsed, round_trip_budget_s);
    char buffer[96];
    std::snprintf(buffer, sizeof buffer, "%d runs byte-identical, %.3f s (limit %.1f s)", determinism_runs, elapsed,
                  round_trip_budget_s);
    notes()[1] = buffer;
}

TEST(Criterion2, ExtractionFidelity) {
    auto parsed = source::parse_source({"energy_system_model.py", testkit::read_fixture("energy_system_model.py")});
    ASSERT_FALSE(has_errors(parsed.diagnostics));
    SoftwareInfo info = fixture().info;
    auto result = source::extract_interface({parsed.tree}, info);
    ASSERT_FALSE(has_errors(result.diagnostics));
    const auto& extracted_cls = result.document.classes.at("EnergySystemModel");
    const auto& extracted = *extracted_cls.properties.find("numberOfTimeSteps");
    EXPECT_EQ(extracted.data_type.kind(), TypeKind::integer);
    EXPECT_EQ(extracted.default_value, Scalar(8760));
    EXPECT_EQ(extracted.minimum, Scalar(0));
    EXPECT_TRUE(extracted.exclusive_minimum);
    EXPECT_EQ(extracted_cls.required, std::vector<std::string>{"numberOfTimeSteps"});

    // Field-for-field against the fixture node.
    auto reference = fixture();
    const auto& expected_cls = reference.classes.at("EnergySystemModel");
    EXPECT_EQ(variable_to_tree(extracted), variable_to_tree(*expected_cls.properties.find("numberOfTimeSteps")));
    EXPECT_EQ(extracted_cls.required, expected_cls.required);
    notes()[2] = "numberOfTimeSteps: integer, default 8760, minimum 0 exclusive, required";
}

TEST(Criterion3, ValidatorTable) {
    auto doc = fixture();
    const auto& steps = *doc.classes.at("EnergySystemModel").properties.find("numberOfTimeSteps");
    EXPECT_TRUE(validate_value(Scalar(8760), steps).valid);
    auto zero = validate_value(Scalar(0), steps);
    EXPECT_FALSE(zero.valid);
    EXPECT_TRUE(has_code(zero, "exclusive-bound"));
    auto negative = validate_value(Scalar(-1), steps);
    EXPECT_FALSE(negative.valid);
    EXPECT_TRUE(has_code(negative, "range"));

    const auto& method = *doc.classes.at("EnergySystemModel").functions.find("aggregateTemporally")->parameters.find("clusterMethod");
    EXPECT_TRUE(validate_value(Scalar("averaging"), method).valid);
    auto median = validate_value(Scalar("median"), method);
    EXPECT_FALSE(median.valid);
    EXPECT_TRUE(has_code(median, "value-set"));

    VariableDescription longitude;
    longitude.name = "longitude";
    longitude.data_type = DataType(TypeKind::number);
    longitude.minimum = Scalar(-180.0);
    longitude.maximum = Scalar(180.0);
    EXPECT_TRUE(validate_value(Scalar(-180.0), longitude).valid);
    EXPECT_TRUE(validate_value(Scalar(180.0), longitude).valid);
    auto beyond = validate_value(Scalar(180.5), longitude);
    EXPECT_FALSE(beyond.valid);
    EXPECT_TRUE(has_code(beyond, "range"));

    VariableDescription file_name;
    file_name.name = "fileName";
    file_name.data_type = DataType(TypeKind::string);
    file_name.regular_expression = "^[A-Za-z0-9_]+$";
    EXPECT_TRUE(validate_value(Scalar("My_File_01"), file_name).valid);
    auto spaced = validate_value(Scalar("my file!"), file_name);
    EXPECT_FALSE(spaced.valid);
    EXPECT_TRUE(has_code(spaced, "regex"));

    std::vector<std::optional<int>> bounds = {std::nullopt};
    for (int b = -5; b <= 5; ++b) bounds.push_back(b);
    long agreed = 0, total = 0;
    for (const auto& lo : bounds)
        for (const auto& hi : bounds)
            for (bool lo_ex : {false, true})
                for (bool hi_ex : {false, true}) {
                    VariableDescription v;
                    v.name = "v";
                    v.data_type = DataType(TypeKind::integer);
                    if (lo) v.minimum = Scalar(*lo), v.exclusive_minimum = lo_ex;
                    if (hi) v.maximum = Scalar(*hi), v.exclusive_maximum = hi_ex;
                    for (int x = oracle_lo; x <= oracle_hi; ++x) {
                        bool oracle = !(lo && (lo_ex ? x <= *lo : x < *lo)) && !(hi && (hi_ex ? x >= *hi : x > *hi));
                        ++total;
                        if (validate_value(Scalar(x), v).valid == oracle) ++agreed;
                    }
                }
    EXPECT_EQ(agreed, total);
    notes()[3] = "vector table ok, oracle agreement " + std::to_string(agreed) + "/" + std::to_string(total);
}

TEST(Criterion4, Merge) {
    auto doc = fixture();
    // Info half: everything above the components section. Components half: the
    // classes, carrying the same info so that it is a document of its own.
    DataDescDocument left = doc, right = doc;
    left.classes.clear();
    left.component_extensions.clear();
    auto split = merge({left, right});
    ASSERT_TRUE(split.merged);
    EXPECT_TRUE(split.conflicts.empty());
    EXPECT_EQ(*split.merged, doc);
    EXPECT_EQ(emit_document(*split.merged), emit_document(doc));

    DataDescDocument twin = doc;
    twin.classes.clear();
    auto identity = merge({doc, twin});
    ASSERT_TRUE(identity.merged);
    EXPECT_TRUE(identity.conflicts.empty());
    EXPECT_EQ(*identity.merged, doc);

    DataDescDocument bumped = doc;
    bumped.info.version = "2.3.0";
    auto conflict = merge({doc, bumped});
    ASSERT_EQ(conflict.conflicts.size(), 1u);
    EXPECT_EQ(conflict.conflicts[0].code, "merge-conflict");
    EXPECT_EQ(conflict.conflicts[0].path, "info/version");
    notes()[4] = "split/rejoin 0 conflicts, twin identity, 1 conflict at info/version";
}

TEST(Criterion5, CodeMetaCrosswalk) {
    auto json = info_to_codemeta(fixture().info).record.to_json_ld();
    EXPECT_EQ(json.value("name", ""), "FINE - A Framework for Integrated Energy System Assessment");
    EXPECT_EQ(json.value("version", ""), "2.2.2");
    EXPECT_EQ(json.value("dateCreated", ""), "2018-11-12");
    EXPECT_EQ(json.value("programmingLanguage", ""), "Python");

    testkit::Gen gen(2024);
    int identical = 0;
    for (int i = 0; i < codemeta_samples; ++i) {
        auto info = gen.info();
        auto record = CodeMetaRecord::from_json(Tree::parse(info_to_codemeta(info).record.to_json_ld().dump()));
        if (codemeta_to_info(record).info == info) ++identical;
    }
    EXPECT_EQ(identical, codemeta_samples);
    notes()[5] = "fixture fields mapped, round trip identity " + std::to_string(identical) + "/" +
                 std::to_string(codemeta_samples);
}

TEST(Criterion6, DocsRendering) {
    auto doc = fixture();
    auto golden = testkit::read_fixture("golden/index.md");
    for (auto format : {ExportTarget::docs_markdown, ExportTarget::docs_html}) {
        auto files = render_docs(doc, format);
        std::string all;
        for (const auto& [path, content] : files) all += content;
        for (const auto& [name, cls] : doc.classes) {
            EXPECT_NE(all.find(name), std::string::npos) << name;
            for (const auto& [prop, v] : cls.properties) EXPECT_NE(all.find(prop), std::string::npos) << prop;
            for (const auto& [fn_name, fn] : cls.functions) {
                EXPECT_NE(all.find(fn_name), std::string::npos) << fn_name;
                for (const auto& [param, v] : fn.parameters) EXPECT_NE(all.find(param), std::string::npos) << param;
            }
        }
        for (const char* literal : {"8760", "averaging", "ItemMinimumValue"})
            EXPECT_NE(all.find(literal), std::string::npos) << literal;
        for (int run = 1; run < determinism_runs; ++run) EXPECT_EQ(render_docs(fixture(), format), files);
    }
    // Checked-in golden pages catch drift across builds, not only within a process.
    auto markdown = render_docs(doc, ExportTarget::docs_markdown);
    EXPECT_EQ(markdown.at("index.md"), golden);
    for (const auto& name : {"Component", "EnergySystemModel"})
        EXPECT_EQ(markdown.at(std::string("classes/") + name + ".md"),
                  testkit::read_fixture(std::string("golden/classes/") + name + ".md"));
    notes()[6] = "all names and literals present, Markdown equals checked-in golden pages";
}

TEST(Criterion7, FuzzTotality) {
    testkit::Gen gen(7777);
    std::vector<std::string> seeds = {testkit::read_fixture("fine_excerpt.yaml"),
                                      testkit::read_fixture("energy_system_model.py")};
    auto random_input = [&](int i) {
        std::string out;
        if (i % 2 == 0) {
            int length = gen.range(0, 512);
            for (int k = 0; k < length; ++k) out += static_cast<char>(gen.range(0, 255));
            return out;
        }
        // Mutated seed: byte flips, deletions and duplicated slices keep inputs near the grammar.
        out = seeds[static_cast<std::size_t>(i / 2 % 2)];
        int edits = gen.range(1, 8);
        for (int k = 0; k < edits && !out.empty(); ++k) {
            auto pos = static_cast<std::size_t>(gen.range(0, static_cast<int>(out.size()) - 1));
            switch (gen.range(0, 2)) {
            case 0: out[pos] = static_cast<char>(gen.range(0, 255)); break;
            case 1: out.erase(pos, static_cast<std::size_t>(gen.range(1, 16))); break;
            default: out.insert(pos, out.substr(pos, static_cast<std::size_t>(gen.range(1, 32))));
            }
        }
        return out;
    };
    auto start = Clock::now();
    int survived = 0;
    for (int i = 0; i < fuzz_inputs; ++i) {
        auto input = random_input(i);
        bool ok = true;
        try {
            auto doc = parse_document(input);
            if (!doc.document && doc.diagnostics.empty()) ok = false; // a rejection must say why
            auto src = source::parse_source({"fuzz.py", input});
            (void)src;
        } catch (...) {
            ok = false;
        }
        if (ok) ++survived;
        else ADD_FAILURE() << "input " << i << " escaped";
    }
    double elapsed = seconds_since(start);
    EXPECT_EQ(survived, fuzz_inputs);
    EXPECT_LT(elapsed, fuzz_budget_s);
    char buffer[96];
    std::snprintf(buffer, sizeof buffer, "%d/%d inputs handled, %.2f s (limit %.0f s)", survived, fuzz_inputs,
                  elapsed, fuzz_budget_s);
    notes()[7] = buffer;
}

namespace {

class Summary : public ::testing::EmptyTestEventListener {
public:
    void OnTestEnd(const ::testing::TestInfo& info) override {
        std::string suite = info.test_suite_name();
        if (suite.rfind("Criterion", 0) != 0) return;
        int id = std::stoi(suite.substr(9));
        titles_[id] = info.name();
        passed_[id] = info.result()->Passed();
    }
    void OnTestProgramEnd(const ::testing::UnitTest&) override {
        std::printf("\n");
        for (int id = 1; id <= 7; ++id) {
            auto it = passed_.find(id);
            const char* verdict = it == passed_.end() ? "FAIL" : (it->second ? "PASS" : "FAIL");
            std::string title = titles_.count(id) ? titles_[id] : "not run";
            std::string note = notes().count(id) ? " (" + notes()[id] + ")" : "";
            std::printf("%s criterion %d: %s%s\n", verdict, id, title.c_str(), note.c_str());
        }
        std::fflush(stdout);
    }

private:
    std::map<int, std::string> titles_;
    std::map<int, bool> passed_;
};

} // namespace

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    ::testing::UnitTest::GetInstance()->listeners().Append(new Summary);
    return RUN_ALL_TESTS();
}
