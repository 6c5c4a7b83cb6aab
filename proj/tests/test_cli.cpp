#include "gvf/cli/run.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace gvf;

namespace {

struct Result {
    int code;
    Json json;
    std::string text;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    Json j;
    try {
        j = Json::parse(out.str());
    } catch (const Json::parse_error&) {
    }
    return {code, j, out.str()};
}

}  // namespace

TEST(Cli, HeightExample) {
    auto r = call({"height", "--field", "Q", "--structure", "r=1", "2", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.json["schemaVersion"], 1);
    EXPECT_EQ(r.json["height"]["exact"], "log(3)");
    EXPECT_NEAR(r.json["height"]["approx"].get<double>(), 1.0986122886681098, 1e-12);
    EXPECT_EQ(r.json["height"]["logTerms"][0]["p"], 3);
    EXPECT_EQ(r.json["height"]["logTerms"][0]["q"], "1/1");
}

TEST(Cli, ProdcheckOverQz) {
    auto r = call({"prodcheck", "--field", "Qz", "z-2"});
    EXPECT_EQ(r.code, 0);
    double lo = r.json["sum"]["lo"], hi = r.json["sum"]["hi"];
    EXPECT_LE(lo, 0.0);
    EXPECT_GE(hi, 0.0);
    EXPECT_LE(hi - lo, 1e-6);
}

TEST(Cli, PositivityOfATermWithExtraElements) {
    auto r = call({"positivity", "--field", "Q", "max(x1,0) - max(x1,x2,0)", "6", "2", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.json["positive"], true);
    auto n = call({"positivity", "--field", "Q", "-max(x1,0)", "2"});
    EXPECT_EQ(n.code, 1);
    EXPECT_EQ(n.json["witness"]["place"], "QFinite(2)");
}

TEST(Cli, NegativeElementsNeedNoEscaping) {
    auto r = call({"height", "--field", "Q", "-1/2", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.json["tuple"][0], "-1/2");
    auto f = call({"height", "--field", "Fpt", "--p", "5", "-t", "1"});
    EXPECT_EQ(f.code, 0);
    EXPECT_EQ(f.json["height"]["rational"], "1/1");
}

TEST(Cli, PrintedElementsReparse) {
    for (auto [field, extra, elem] : std::vector<std::tuple<std::string, std::string, std::string>>{
             {"Q", "", "-14/4"},
             {"Fpt", "--p=7", "(t^2 + 3*t)/(5*t^3 - 1)"},
             {"Quad", "--d=-3", "2/3 - 1/5*sqrt(-3)"},
             {"Qz", "", "(z^2 - 1/2)/(3*z + 1)"}}) {
        std::vector<std::string> args = {"height", "--field", field, elem};
        if (!extra.empty()) args.push_back(extra);
        auto r = call(args);
        ASSERT_EQ(r.code, 0) << r.text;
        std::string printed = r.json["tuple"][0];
        args[3] = printed;
        auto again = call(args);
        EXPECT_EQ(again.json["tuple"][0], printed);
        EXPECT_EQ(again.json["height"], r.json["height"]);
    }
}

TEST(Cli, Determinism) {
    std::vector<std::string> args = {"axioms", "--field", "Q", "--seed", "42", "--count", "20"};
    auto a = call(args), b = call(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.text, b.text);
    auto c = call({"renorm-test", "--field", "Fpt", "--p", "3", "--seed", "9", "--count", "20"});
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(c.text, call({"renorm-test", "--field", "Fpt", "--p", "3", "--seed", "9", "--count", "20"}).text);
}

TEST(Cli, UsageAndParseErrors) {
    EXPECT_EQ(call({}).code, 2);
    EXPECT_EQ(call({"height", "--bogus", "1"}).code, 2);
    EXPECT_EQ(call({"frobnicate"}).code, 2);
    auto p = call({"height", "--field", "Q", "1/0"});
    EXPECT_EQ(p.code, 2);
    EXPECT_EQ(p.json["error"]["kind"], "parse");
    EXPECT_EQ(p.json["error"]["position"], 2);
    auto m = call({"height", "--field", "Quad", "--d", "2", "sqrt(3)"});
    EXPECT_EQ(m.code, 2);
    std::string msg = m.json["error"]["message"];
    EXPECT_NE(msg.find("Q(sqrt(3))"), std::string::npos);
    EXPECT_NE(msg.find("Q(sqrt(2))"), std::string::npos);
    EXPECT_EQ(call({"localterm", "--field", "Q", "max(x1,x2)", "2"}).code, 2);
    EXPECT_EQ(call({"height", "--field", "Fpt", "--p", "4", "t"}).code, 2);
    EXPECT_EQ(call({"localterm", "--field", "Qz", "x1", "z"}).code, 2);
}

TEST(Cli, LogicConvention) {
    auto plain = call({"height", "--field", "Q", "0", "0"});
    EXPECT_EQ(plain.json["height"]["infinite"], "-");
    auto logic = call({"height", "--field", "Q", "--logic", "0", "0"});
    EXPECT_EQ(logic.json["height"]["logic"], -1);
}

TEST(Cli, CertificateSearchAndVerify) {
    auto s = call({"certificate", "search", "--field", "Q", "--epsilon", "2", "1/2"});
    ASSERT_EQ(s.code, 0);
    EXPECT_EQ(s.json["status"], "found");
    EXPECT_LE(s.json["cost"].get<double>(), 0.5);
    std::string path = ::testing::TempDir() + "gvf_cert.json";
    {
        std::ofstream f(path);
        f << s.json["certificate"].dump();
    }
    auto v = call({"certificate", "verify", "--field", "Q", path});
    EXPECT_EQ(v.code, 0);
    EXPECT_EQ(v.json["ok"], true);

    Json bad = s.json["certificate"];
    bad["coefficients"][0]["m"] = bad["coefficients"][0]["m"].get<long>() + 1;
    {
        std::ofstream f(path);
        f << bad.dump();
    }
    auto w = call({"certificate", "verify", "--field", "Q", path});
    EXPECT_EQ(w.code, 1);
    EXPECT_EQ(w.json["identity"], false);
    std::remove(path.c_str());

    auto none = call({"certificate", "search", "--field", "Q", "--epsilon", "1", "1/3"});
    EXPECT_EQ(none.code, 1);
    EXPECT_EQ(none.json["status"], "none");
}

TEST(Cli, OtherSubcommands) {
    EXPECT_EQ(call({"localterm", "--field", "Fpt", "--p", "3", "max(x1,x2)", "t", "1/t"}).json["value"]["rational"], "2/1");
    auto e = call({"extend", "--d", "-1", "1+sqrt(-1)", "3"});
    EXPECT_EQ(e.code, 0);
    EXPECT_EQ(e.json["elements"][0]["galoisInvariant"], true);
    auto rq = call({"extend", "--d", "2", "2", "3/4"});
    EXPECT_EQ(rq.json["restriction"]["equal"], true);
    auto m = call({"measures", "--field", "Q", "12", "18"});
    EXPECT_EQ(m.code, 0);
    EXPECT_EQ(m.json["massBalance"], true);
    EXPECT_EQ(m.json["rn"]["ok"], true);
    auto u = call({"uniqueness", "--d", "-1", "--bound", "20"});
    EXPECT_EQ(u.code, 0);
    EXPECT_EQ(u.json["kernelDimension"], 1);
    auto p = call({"prodcheck", "--field", "Quad", "--d", "2", "3+sqrt(2)"});
    EXPECT_EQ(p.code, 0);
}
