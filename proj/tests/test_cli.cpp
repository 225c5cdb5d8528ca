#include <gtest/gtest.h>

#include <sstream>

#include "tight/cli.hpp"

using tight::cli::Json;

namespace {
struct Outcome {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Outcome call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = tight::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}
}  // namespace

TEST(Cli, Examples) {
    auto ex = call({"census", "exceptional", "--e0", "2", "--r", "2/5"});
    ASSERT_EQ(ex.code, 0) << ex.err;
    EXPECT_EQ(ex.json()["result"], 4);
    EXPECT_EQ(ex.json()["witnesses"].size(), 4u);
    EXPECT_EQ(call({"census", "fiber-count", "--t", "-1", "--r", "2/5"}).json()["result"], 2);
    EXPECT_EQ(call({"cf", "expand", "--value", "-5/2"}).json()["result"], Json::parse("[-3,-2]"));
    EXPECT_EQ(call({"cf", "value", "--coeffs", "-3,-2"}).json()["result"], "-5/2");
    EXPECT_EQ(call({"surgery-matrix", "--r", "2/5"}).json()["result"], Json::parse("[[5,3],[-2,-1]]"));
    EXPECT_EQ(call({"solid-torus", "count", "--slope", "-7/3"}).json()["result"], 4);
    EXPECT_EQ(call({"farey", "path", "--from", "-5/3", "--to", "-1"}).json()["result"]["vertices"],
              Json::parse(R"(["-5/3","-3/2","-1/1"])"));
}

TEST(Cli, Traversal) {
    auto ot = call({"traverse", "--e0", "1", "--r", "2/5", "--l", "2", "--eta", "0,0"});
    ASSERT_EQ(ot.code, 0) << ot.err;
    EXPECT_EQ(ot.json()["result"]["verdict"], "overtwisted");
    EXPECT_EQ(ot.json()["witnesses"].back()["slope"], "1/1");
    auto iso = call({"isotopic", "--e0", "2", "--r", "2/5", "--l", "2", "--eta", "0,0", "--l", "-2", "--eta", "2,0"});
    EXPECT_EQ(iso.json()["result"], true);
    EXPECT_EQ(call({"isotopic", "--e0", "1", "--r", "2/5", "--l", "2", "--eta", "0,0", "--l", "2", "--eta", "2,0"}).code, 1);
}

TEST(Cli, Divide) {
    std::string a = R"({"surface":"annulus","bottom":2,"top":2,"arcs":[{"from":"b0","to":"t0"},{"from":"b1","to":"t1"}],"sign":"+"})";
    auto c = call({"divide", "close", "--multicurve", a});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(c.json()["result"]["essential"], 2);
    EXPECT_EQ(c.json()["result"]["slope"], "inf");
    EXPECT_EQ(call({"divide", "euler", "--multicurve", a}).json()["result"], 0);
    std::string bp = R"({"surface":"annulus","bottom":2,"top":2,"arcs":[{"from":"b0","to":"b1"},{"from":"t0","to":"t1"}]})";
    auto t = call({"divide", "template", "--multicurve", bp, "--side", "top", "--span", "0,1", "--size", "1"});
    ASSERT_EQ(t.code, 0) << t.err;
    EXPECT_EQ(t.json()["result"]["verdict"], "overtwisted");
    EXPECT_EQ(call({"divide", "close", "--multicurve", "{"}).code, 1);
}

TEST(Cli, ExitCodesAndFormats) {
    auto bad = call({"census", "exceptional", "--e0", "2", "--r", "2/5", "--bogus"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("Usage"), std::string::npos);
    EXPECT_EQ(call({"nothing"}).code, 1);
    EXPECT_EQ(call({}).code, 1);
    EXPECT_EQ(call({"cf", "expand", "--value", "1/2"}).code, 1);
    EXPECT_EQ(call({"census", "fiber-count", "--t", "1", "--r", "2/5"}).code, 1);
    EXPECT_EQ(call({"--help"}).code, 0);

    auto table = call({"cf", "expand", "--value", "-5/2", "--table"});
    EXPECT_EQ(table.out, "/command\tcf expand\n/input/value\t-5/2\n/result/0\t-3\n/result/1\t-2\n");

    std::vector<std::string> args{"census", "backgrounds", "--e0", "0", "--r", "2/5"};
    auto first = call(args), second = call(args);
    EXPECT_EQ(first.out, second.out);
    EXPECT_TRUE(first.json().contains("truncation"));
}
