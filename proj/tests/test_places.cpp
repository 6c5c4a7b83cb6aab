#include "gvf/core/qz_structure.hpp"
#include "gvf/core/random.hpp"
#include "gvf/places/field_fpt.hpp"
#include "gvf/places/field_q.hpp"
#include "gvf/places/field_quad.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace gvf;

namespace {

long naive_ord(Integer n, long p) {
    long k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

template <class Field>
typename Field::Value valuation_sum(const Field& F, const typename Field::Element& a) {
    std::set<Place> places;
    for (auto& v : F.candidate_places(a)) places.insert(v);
    for (auto& v : F.arch_places()) places.insert(v);
    typename Field::Value s{};
    for (auto& v : places) s += F.eval(v, a);
    return s;
}

}  // namespace

TEST(QPlaces, PadicValuesMatchRepeatedDivision) {
    QField F;
    Rng rng(1);
    for (int k = 0; k < 300; ++k) {
        Rational a = random_rational(rng, 5000);
        for (long p : {2L, 3L, 5L, 7L, 11L}) {
            long ord = naive_ord(a.get_num(), p) - naive_ord(a.get_den(), p);
            EXPECT_EQ(F.eval(QFinite{Integer(p)}, a), LogReal::log_prime(Integer(p), ord));
        }
        EXPECT_NEAR(F.eval(QArch{}, a).approx(), -std::log(std::fabs(a.get_d())), 1e-12);
    }
}

TEST(QPlaces, ProductFormulaExact) {
    QField F;
    Rng rng(2);
    for (int k = 0; k < 500; ++k) EXPECT_EQ(valuation_sum(F, random_rational(rng, 100000)).sign(), 0);
}

TEST(FptPlaces, ValuesAreOrderTimesDegree) {
    FptField F(3);
    FpPoly pi(3, {1, 0, 1});  // t^2 + 1, irreducible mod 3
    FpRatio a(pi * pi * FpPoly(3, {1, 1}), FpPoly(3, {0, 1}));
    EXPECT_EQ(F.eval(FpFinite{pi}, a), 4);
    EXPECT_EQ(F.eval(FpFinite{FpPoly(3, {0, 1})}, a), -1);
    EXPECT_EQ(F.eval(FpDegree{}, a), -4);  // -(deg num - deg den)
}

TEST(FptPlaces, ProductFormulaExact) {
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 13ULL}) {
        FptField F(p);
        Rng rng(p);
        for (int k = 0; k < 200; ++k) EXPECT_EQ(valuation_sum(F, random_fp_ratio(p, rng, 4)), 0);
    }
}

TEST(QuadPlaces, SplittingTypes) {
    QuadField K(-1);
    EXPECT_EQ(K.places_above(Integer(2))[0].type, SplitType::Ramified);
    EXPECT_EQ(K.places_above(Integer(3))[0].type, SplitType::Inert);
    EXPECT_EQ(K.places_above(Integer(5)).size(), 2u);
    QuadField L(2);
    EXPECT_EQ(L.places_above(Integer(7)).size(), 2u);
    EXPECT_EQ(L.places_above(Integer(5))[0].type, SplitType::Inert);
    EXPECT_EQ(L.places_above(Integer(2))[0].type, SplitType::Ramified);
    QuadField M(5);  // 1 mod 4: 2 is inert, 11 splits
    EXPECT_EQ(M.places_above(Integer(2))[0].type, SplitType::Inert);
    EXPECT_EQ(M.places_above(Integer(11)).size(), 2u);
}

TEST(QuadPlaces, PlacesAbovePSumToHalfTheNormValuation) {
    Rng rng(3);
    for (long d : {-1L, 2L, -3L, 5L, -7L}) {
        QuadField K(d);
        for (int k = 0; k < 60; ++k) {
            QuadElem a = random_quad(d, rng);
            for (auto& p : primes_up_to(40)) {
                LogReal s;
                for (auto& P : K.places_above(p)) s += K.eval(P, a);
                EXPECT_EQ(s, LogReal::log_prime(p, make_rational(ord_p(a.norm(), p), 2)))
                    << K.name() << " " << a.to_string() << " p=" << p.get_str();
            }
            LogReal arch;
            for (auto& v : K.arch_places()) arch += K.eval(v, a);
            EXPECT_NEAR(arch.approx(), -0.5 * std::log(std::fabs(a.norm().get_d())), 1e-9);
            EXPECT_EQ(valuation_sum(K, a).sign(), 0) << a.to_string();
        }
    }
}

TEST(QuadPlaces, GaloisActionPermutesPlaces) {
    Rng rng(4);
    for (long d : {-1L, 2L}) {
        QuadField K(d);
        for (int k = 0; k < 50; ++k) {
            QuadElem a = random_quad(d, rng);
            for (auto& v : K.candidate_places(a)) EXPECT_EQ(K.eval(K.galois_act(v), a), K.eval(v, a.conj()));
            for (auto& v : K.arch_places()) EXPECT_EQ(K.eval(K.galois_act(v), a), K.eval(v, a.conj()));
        }
    }
}

TEST(QzPlaces, LinearPolynomialSplitsAsExpected) {
    QzStructure S;
    auto pf = S.product_formula(QzRatio(QPoly(std::vector<Rational>{-2, 1})));
    EXPECT_TRUE(pf.points.contains(std::log(2.0)));
    EXPECT_TRUE(pf.arch.contains(-std::log(2.0)));
    EXPECT_TRUE(pf.gauss.contains(0.0));
    EXPECT_TRUE(pf.total.contains(0.0));
}

TEST(QzPlaces, GaussValuesFollowCoefficientContent) {
    QzField F;
    QzRatio a(QPoly(std::vector<Rational>{6, 12}), QPoly(std::vector<Rational>{Rational(1, 5), 1}));
    // num = 6(1 + 2z), den = (1/5)(1 + 5z) after scaling: content ratio 6 / (1/5) = 30
    EXPECT_EQ(F.gauss_value(a, Integer(5)) + F.gauss_value(a, Integer(2)) + F.gauss_value(a, Integer(3)),
              LogReal::log_abs(Rational(30)));
    EXPECT_TRUE(F.eval(QzGauss{Integer(5)}, a).contains(std::log(5.0)));
}

TEST(QzPlaces, ProductFormulaEnclosesZero) {
    QzStructure S;
    Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        auto a = random_qz(rng, 4, 20);
        auto pf = S.product_formula(a);
        EXPECT_TRUE(pf.total.contains(0.0)) << a.to_string();
        EXPECT_LE(pf.total.width(), 1e-6);
    }
}
