#include "gvf/core/random.hpp"
#include "gvf/io/element.hpp"
#include "gvf/tropical/divisor.hpp"
#include "gvf/tropical/normal_form.hpp"

#include <gtest/gtest.h>

using namespace gvf;

namespace {

std::vector<Rational> random_point(Rng& rng, int n) {
    std::vector<Rational> x;
    for (int i = 0; i < n; ++i) x.push_back(make_rational(uniform(rng, -20, 20), uniform(rng, 1, 6)));
    return x;
}

}  // namespace

TEST(TermParser, ParsesAndPrints) {
    auto t = parse_tropical("max(x1, 0) - max(x1, x2, 0)");
    EXPECT_EQ(t.arity, 2);
    EXPECT_EQ(t.eval(std::vector<Rational>{3, 5}), Rational(-2));
    EXPECT_EQ(parse_tropical("-3/4*x1 + min(x2,2*x1)").eval(std::vector<Rational>{4, 1}), Rational(-2));
    EXPECT_EQ(parse_tropical("-(x1 - x2)").eval(std::vector<Rational>{1, 4}), Rational(3));
}

TEST(TermParser, ReportsPositions) {
    auto pos = [](const std::string& s) {
        try {
            parse_tropical(s);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1L;
    };
    EXPECT_EQ(pos("max(x1,"), 8);
    EXPECT_EQ(pos("x1 + 3"), 6);
    EXPECT_EQ(pos("x0"), 2);
    EXPECT_EQ(pos("x1 $ x2"), 4);
    EXPECT_EQ(pos("y1"), 1);
}

TEST(TermParser, RandomRoundTrip) {
    Rng rng(1);
    for (int k = 0; k < 300; ++k) {
        int n = static_cast<int>(uniform(rng, 1, 4));
        auto t = random_term(rng, n, 4);
        auto u = parse_tropical(t.to_string());
        for (int j = 0; j < 5; ++j) {
            auto x = random_point(rng, n);
            EXPECT_EQ(t.eval(x), u.eval(x)) << t.to_string();
        }
    }
}

TEST(NormalForm, AgreesWithDirectEvaluation) {
    Rng rng(2);
    for (int k = 0; k < 300; ++k) {
        int n = static_cast<int>(uniform(rng, 1, 4));
        auto t = random_term(rng, n, 3);
        auto nf = to_normal_form(t);
        for (int j = 0; j < 8; ++j) {
            auto x = random_point(rng, n);
            EXPECT_EQ(eval_normal_form(nf, x), t.eval(x)) << t.to_string();
        }
    }
}

TEST(NormalForm, LatticeIdentities) {
    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
        auto a = to_normal_form(random_term(rng, 3, 2)), b = to_normal_form(random_term(rng, 3, 2));
        auto j = NormalForm::join({a, b}), m = NormalForm::meet({a, b});
        for (int r = 0; r < 5; ++r) {
            auto x = random_point(rng, 3);
            // join + meet = sum
            EXPECT_EQ(eval_normal_form(j + m, x), eval_normal_form(a + b, x));
            EXPECT_EQ(eval_normal_form(a.abs(), x), eval_normal_form(a.positive_part() + a.negative_part(), x));
            EXPECT_EQ(eval_normal_form(a.scaled(Rational(-2, 3)), x), eval_normal_form(a, x) * Rational(-2, 3));
        }
    }
}

TEST(Divisor, PrincipalRelations) {
    QField F;
    auto d = div(F, Rational(6)) - div(F, Rational(2)) - div(F, Rational(3));
    EXPECT_TRUE(is_zero(F, d));
    EXPECT_TRUE(is_zero(F, div(F, Rational(1))));
    EXPECT_FALSE(is_zero(F, div(F, Rational(2))));
    auto e = div(F, Rational(4)).scaled(Rational(1, 2)) - div(F, Rational(2));
    EXPECT_TRUE(is_zero(F, e));
}

TEST(Divisor, EvaluationMatchesTermAtEveryPlace) {
    QField F;
    Rng rng(4);
    for (int k = 0; k < 200; ++k) {
        int n = static_cast<int>(uniform(rng, 1, 3));
        std::vector<Rational> a;
        for (int i = 0; i < n; ++i) a.push_back(random_rational(rng, 40));
        auto t = random_term(rng, n);
        auto alpha = divisor_from_term(F, t, a);
        std::set<Place> places = {QArch{}};
        for (auto& x : a)
            for (auto& v : F.candidate_places(x)) places.insert(v);
        places.insert(QFinite{Integer(97)});
        for (auto& v : places) {
            std::vector<LogReal> xs;
            for (auto& x : a) xs.push_back(F.eval(v, x));
            EXPECT_EQ(ev_value(F, v, alpha), t.eval(xs)) << t.to_string() << " at " << to_string(v);
        }
    }
}

TEST(Divisor, SemanticEqualityOfLatticeLaws) {
    FptField F(3);
    Rng rng(5);
    for (int k = 0; k < 60; ++k) {
        auto x = div(F, random_fp_ratio(3, rng)), y = div(F, random_fp_ratio(3, rng)),
             z = div(F, random_fp_ratio(3, rng));
        using D = LatticeDivisor<FpRatio>;
        // distributivity of join over meet
        auto lhs = D::join({x, D::meet({y, z})});
        auto rhs = D::meet({D::join({x, y}), D::join({x, z})});
        EXPECT_TRUE(semantically_equal(F, lhs, rhs));
        EXPECT_TRUE(semantically_equal(F, D::join({x, y}) + D::meet({x, y}), x + y));
        EXPECT_TRUE(semantically_equal(F, -D::join({x, y}), D::meet({-x, -y})));
    }
}

TEST(ElementParser, RoundTripsEveryField) {
    Rng rng(6);
    QField Q;
    FptField Fp(7);
    QuadField K(-5);
    QzField Z;
    for (int k = 0; k < 100; ++k) {
        auto q = random_rational(rng, 1000);
        EXPECT_EQ(parse_element(Q, to_string(q)), q);
        auto f = random_fp_ratio(7, rng, 4);
        EXPECT_EQ(parse_element(Fp, to_string(f)), f) << to_string(f);
        auto a = random_quad(-5, rng);
        EXPECT_EQ(parse_element(K, to_string(a)), a) << to_string(a);
        auto z = random_qz(rng, 3, 9);
        EXPECT_EQ(parse_element(Z, to_string(z)), z) << to_string(z);
    }
}

TEST(ElementParser, Grammar) {
    QuadField K(2);
    EXPECT_EQ(parse_element(K, "(1+sqrt(2))^2"), QuadElem(2, 3, 2));
    EXPECT_EQ(parse_element(K, "1/(1+sqrt(2))"), QuadElem(2, -1, 1));
    EXPECT_EQ(parse_element(K, "-1/2*sqrt(2)"), QuadElem(2, 0, Rational(-1, 2)));
    FptField F(3);
    EXPECT_EQ(parse_element(F, "t^3 - t"), FpRatio(FpPoly(3, {0, 2, 0, 1})));
    EXPECT_EQ(parse_element(F, "1/2"), FpRatio::constant(3, 2));
    QField Q;
    EXPECT_EQ(parse_element(Q, "-3/6"), Rational(-1, 2));
    EXPECT_EQ(parse_element(Q, "2^-3"), Rational(1, 8));
}

TEST(ElementParser, Errors) {
    auto err = [](auto F, const std::string& s) -> std::string {
        try {
            parse_element(F, s);
        } catch (const ParseError& e) {
            return e.what();
        }
        return "";
    };
    EXPECT_NE(err(QField{}, "t").find("F_p(t)"), std::string::npos);
    EXPECT_NE(err(QField{}, "t").find("the field is Q"), std::string::npos);
    EXPECT_NE(err(QuadField(2), "sqrt(3)").find("Q(sqrt(2))"), std::string::npos);
    EXPECT_NE(err(FptField(3), "1/3").find("position 2: division by zero"), std::string::npos);
    EXPECT_NE(err(QField{}, "1 +").find("position 4"), std::string::npos);
    EXPECT_NE(err(QField{}, "").find("empty"), std::string::npos);
}
