#include <gtest/gtest.h>

#include "datadesc/yaml_tree.hpp"
#include "support.hpp"

using namespace datadesc;

TEST(ScalarTest, NumbersCompareByValue) {
    EXPECT_EQ(Scalar(0), Scalar(0.0));
    EXPECT_EQ(Scalar(8760), Scalar(8760.0));
    EXPECT_FALSE(Scalar(1) == Scalar("1"));
    EXPECT_FALSE(Scalar(true) == Scalar(1));
    EXPECT_TRUE(Scalar(3.0).is_integral());
    EXPECT_FALSE(Scalar(3.5).is_integral());
    EXPECT_LT(compare_numbers(Scalar(-1), Scalar(0.5)), 0);
}

TEST(ScalarTest, RealFormattingKeepsType) {
    EXPECT_EQ(format_real(2.0), "2.0");
    EXPECT_EQ(format_real(0.1), "0.1");
    EXPECT_EQ(format_real(-180.5), "-180.5");
    EXPECT_EQ(format_real(1e300), "1e+300");
}

TEST(YamlLoadTest, CoreSchemaResolution) {
    auto loaded = load_yaml("a: 1\nb: 1.5\nc: true\nd: null\ne: '2018-11-12'\nf: 2018-11-12\ng: yes\nh: 0x10\ni: '1'\n");
    ASSERT_TRUE(loaded.tree);
    const auto& t = *loaded.tree;
    EXPECT_TRUE(t["a"].is_number_integer());
    EXPECT_TRUE(t["b"].is_number_float());
    EXPECT_TRUE(t["c"].is_boolean());
    EXPECT_TRUE(t["d"].is_null());
    EXPECT_EQ(t["e"], "2018-11-12");
    EXPECT_EQ(t["f"], "2018-11-12"); // no timestamp type in the core schema
    EXPECT_EQ(t["g"], "yes");
    EXPECT_EQ(t["h"], 16);
    EXPECT_EQ(t["i"], "1");
}

TEST(YamlLoadTest, AnchorsExpandByValue) {
    auto loaded = load_yaml("a: &x {k: 1}\nb: *x\n");
    ASSERT_TRUE(loaded.tree);
    EXPECT_EQ((*loaded.tree)["a"], (*loaded.tree)["b"]);
}

TEST(YamlLoadTest, FirstDuplicateKeyWins) {
    auto loaded = load_yaml("k: 1\nk: 2\n");
    ASSERT_TRUE(loaded.tree);
    EXPECT_EQ((*loaded.tree)["k"], 1);
}

TEST(YamlLoadTest, SyntaxErrorsBecomeDiagnostics) {
    for (const char* text : {"a: [1, 2", "a:\n  - b\n c: d\n", "{", "\t- x: : :"}) {
        auto loaded = load_yaml(text);
        EXPECT_FALSE(loaded.tree) << text;
        ASSERT_TRUE(loaded.error) << text;
        EXPECT_EQ(loaded.error->code, "yaml-syntax");
    }
}

TEST(YamlLoadTest, RecursiveAliasIsRejected) {
    auto loaded = load_yaml("a: &a [*a]\n");
    EXPECT_FALSE(loaded.tree);
}

TEST(YamlLoadTest, BillionLaughsIsBounded) {
    std::string text = "a0: &a0 [x, x, x, x, x, x, x, x, x, x]\n";
    for (int i = 1; i < 9; ++i)
        text += "a" + std::to_string(i) + ": &a" + std::to_string(i) + " [*a" + std::to_string(i - 1) + ", *a" +
                std::to_string(i - 1) + ", *a" + std::to_string(i - 1) + ", *a" + std::to_string(i - 1) + ", *a" +
                std::to_string(i - 1) + ", *a" + std::to_string(i - 1) + ", *a" + std::to_string(i - 1) + ", *a" +
                std::to_string(i - 1) + ", *a" + std::to_string(i - 1) + ", *a" + std::to_string(i - 1) + "]\n";
    auto loaded = load_yaml(text);
    EXPECT_FALSE(loaded.tree);
    ASSERT_TRUE(loaded.error);
}

TEST(YamlEmitTest, Layout) {
    Tree tree = Tree::object();
    tree["s"] = "plain";
    tree["date"] = "2018-11-12";
    tree["list"] = Tree::array({1, "two"});
    tree["empty"] = Tree::object();
    tree["none"] = Tree::array();
    tree["real"] = 2.0;
    EXPECT_EQ(emit_yaml(tree), "s: plain\ndate: '2018-11-12'\nlist:\n  - 1\n  - two\nempty: {}\nnone: []\nreal: 2.0\n");
}

TEST(YamlEmitTest, QuotingOnlyWhereNeeded) {
    EXPECT_FALSE(needs_quoting("FINE - A Framework for Integrated Energy System Assessment"));
    EXPECT_FALSE(needs_quoting("k_means"));
    EXPECT_FALSE(needs_quoting("spatial identifier"));
    EXPECT_TRUE(needs_quoting("2018-11-12"));
    EXPECT_TRUE(needs_quoting("#/components/schemas/Component"));
    EXPECT_TRUE(needs_quoting("true"));
    EXPECT_TRUE(needs_quoting("yes")); // YAML 1.1 readers
    EXPECT_TRUE(needs_quoting("1.5"));
    EXPECT_TRUE(needs_quoting(""));
    EXPECT_TRUE(needs_quoting("a: b"));
    EXPECT_TRUE(needs_quoting(" lead"));
}

// Property: any string emitted as a map value reads back as the same string.
TEST(YamlEmitTest, StringRoundTripProperty) {
    testkit::Gen gen(7);
    for (int i = 0; i < 3000; ++i) {
        auto text = gen.text();
        if (gen.coin(0.2)) text += gen.text();
        Tree tree = Tree::object();
        tree["k"] = text;
        tree[text.empty() ? "e" : text] = Tree::array({Tree(text)});
        auto emitted = emit_yaml(tree);
        auto loaded = load_yaml(emitted);
        ASSERT_TRUE(loaded.tree) << emitted;
        EXPECT_EQ(*loaded.tree, tree) << emitted;
    }
}

// Property: arbitrary trees survive emit -> load.
TEST(YamlEmitTest, TreeRoundTripProperty) {
    testkit::Gen gen(11);
    for (int i = 0; i < 2000; ++i) {
        Tree tree = Tree::object();
        tree["root"] = gen.tree();
        auto emitted = emit_yaml(tree);
        auto loaded = load_yaml(emitted);
        ASSERT_TRUE(loaded.tree) << emitted;
        EXPECT_EQ(*loaded.tree, tree) << emitted;
    }
}
