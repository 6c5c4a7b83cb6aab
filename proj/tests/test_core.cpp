#include "gvf/core/checks.hpp"
#include "gvf/core/quadratic.hpp"
#include "gvf/core/qz_structure.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gvf;

namespace {

// Height of a rational tuple: log max |c_i| for the primitive integer vector c.
Extended<LogReal> q_height_oracle(const std::vector<Rational>& a) {
    Integer L = 1, g = 0, m = 0;
    for (auto& x : a) L = lcm(L, x.get_den());
    std::vector<Integer> c;
    for (auto& x : a) {
        Integer n = x.get_num() * (L / x.get_den());
        c.push_back(n);
        g = gcd(g, n);
    }
    if (g == 0) return Extended<LogReal>::minus_inf();
    for (auto& n : c) m = std::max<Integer>(m, abs(Integer(n / g)));
    return LogReal::log_abs(Rational(m));
}

// Height of an F_p(t) tuple: max degree of the primitive polynomial vector.
Extended<Rational> fpt_height_oracle(const std::vector<FpRatio>& a) {
    std::uint64_t p = a[0].prime();
    FpPoly L = FpPoly::constant(p, 1);
    for (auto& x : a) L = L * (x.den() / poly_gcd(L, x.den()));
    std::vector<FpPoly> c;
    FpPoly g(p);
    for (auto& x : a) {
        FpPoly n = x.num() * (L / x.den());
        c.push_back(n);
        g = poly_gcd(g, n);
    }
    if (g.is_zero()) return Extended<Rational>::minus_inf();
    int m = 0;
    for (auto& n : c)
        if (!n.is_zero()) m = std::max(m, (n / g).degree());
    return Rational(m);
}

auto gen_q = [](Rng& r) { return random_rational(r); };
auto gen_f3 = [](Rng& r) { return random_fp_ratio(3, r); };

}  // namespace

TEST(Height, Normalizations) {
    auto G = gvf_Q(1);
    EXPECT_EQ(G.ht(Rational(2)), LogReal::log_prime(Integer(2)));
    auto Gf = gvf_Fpt(3, 1);
    EXPECT_EQ(Gf.ht(Gf.field().t()), Rational(1));
    auto K = gvf_quad(-1);
    EXPECT_EQ(K.ht(QuadElem(-1, 1, 1)), LogReal::log_prime(Integer(2), Rational(1, 2)));
    EXPECT_EQ(gvf_Q(3).ht(Rational(2)), LogReal::log_prime(Integer(2), 3));
}

TEST(Height, MatchesPrimitiveVectorOracleOverQ) {
    auto G = gvf_Q(1);
    Rng rng(1);
    for (int k = 0; k < 300; ++k) {
        std::vector<Rational> a(static_cast<std::size_t>(uniform(rng, 1, 4)));
        for (auto& x : a) x = uniform(rng, 0, 6) ? random_rational(rng, 200) : Rational(0);
        EXPECT_EQ(G.height(a), q_height_oracle(a)) << detail::tuple_str(a);
    }
}

TEST(Height, MatchesPrimitiveVectorOracleOverFpt) {
    for (std::uint64_t p : {2ULL, 3ULL, 7ULL}) {
        auto G = gvf_Fpt(p, 1);
        Rng rng(p);
        for (int k = 0; k < 200; ++k) {
            std::vector<FpRatio> a(static_cast<std::size_t>(uniform(rng, 1, 4)));
            for (auto& x : a) x = uniform(rng, 0, 6) ? random_fp_ratio(p, rng) : FpRatio::constant(p, 0);
            EXPECT_EQ(G.height(a), fpt_height_oracle(a)) << detail::tuple_str(a);
        }
    }
}

TEST(Height, ScaleParameter) {
    auto G1 = gvf_Q(1), G2 = gvf_Q(Rational(5, 2));
    Rng rng(2);
    for (int k = 0; k < 50; ++k) {
        std::vector<Rational> a = {random_rational(rng), random_rational(rng)};
        EXPECT_EQ(G2.height(a).value, G1.height(a).value * Rational(5, 2));
    }
    EXPECT_EQ(gvf_Q(0).ht(Rational(7)), LogReal{});
}

TEST(Height, QuadraticUnitsAndKnownValues) {
    auto K = gvf_quad(2);
    QuadElem u(2, 1, 1);
    EXPECT_NEAR(K.ht(u).approx(), 0.5 * std::log(1 + std::sqrt(2.0)), 1e-12);
    EXPECT_EQ(K.ht(u), K.ht(u.inverse()));
    auto I = gvf_quad(-1);
    EXPECT_EQ(I.ht(QuadElem(-1, 0, 1)), LogReal{});
    EXPECT_EQ(I.ht(QuadElem(-1, 2)), LogReal::log_prime(Integer(2)));
}

TEST(Height, QzKnownValues) {
    auto S = gvf_Qz();
    auto z = S.field().z();
    EXPECT_TRUE(S.ht(z).contains(0.0));
    auto h = S.ht(z - QzRatio::constant(2));
    EXPECT_TRUE(h.contains(std::log(2.0)));
    EXPECT_LE(h.width(), 1e-6);
    EXPECT_TRUE(S.ht(QzRatio::constant(Rational(3, 2))).contains(std::log(3.0)));
    EXPECT_TRUE(S.height({QzRatio(), QzRatio()}).is_minus_inf());
}

TEST(Height, QzCommonZerosOnTheCircle) {
    auto S = gvf_Qz();
    QzRatio a(QPoly(std::vector<Rational>{1, 1})), b(QPoly(std::vector<Rational>{-1, 1}));
    EXPECT_TRUE(S.height({a}).value.contains(0.0));                    // z + 1 vanishes on the circle
    EXPECT_TRUE(S.height({a, a * S.field().z()}).value.contains(0.0));  // |z + 1| = |z^2 + z| there
    auto h = S.height({a, a * b});
    auto g = S.ht(b);
    EXPECT_LE(h.value.lo, g.hi);
    EXPECT_LE(g.lo, h.value.hi);
    EXPECT_LE(h.value.width(), 1e-6);
}

TEST(Batteries, HeightAxiomsOverQ) {
    Rng rng(3);
    auto r = height_axiom_battery(gvf_Q(1), gen_q, 120, rng);
    EXPECT_TRUE(r.ok()) << r.failures.front();
}

TEST(Batteries, HeightAxiomsOverFpt) {
    Rng rng(4);
    auto r = height_axiom_battery(gvf_Fpt(3, 1), gen_f3, 120, rng);
    EXPECT_TRUE(r.ok()) << r.failures.front();
}

TEST(Batteries, HeightAxiomsOverQuadratic) {
    Rng rng(5);
    for (long d : {-1L, 2L}) {
        auto r = height_axiom_battery(gvf_quad(d), [d](Rng& g) { return random_quad(d, g, 5); }, 40, rng);
        EXPECT_TRUE(r.ok()) << r.failures.front();
    }
}

TEST(Batteries, ConversionsAgree) {
    Rng rng(6);
    auto a = conversion_battery(gvf_Q(1), gen_q, 60, rng);
    EXPECT_TRUE(a.ok()) << a.failures.front();
    auto b = conversion_battery(gvf_Fpt(3, 1), gen_f3, 60, rng);
    EXPECT_TRUE(b.ok()) << b.failures.front();
    auto c = conversion_battery(gvf_quad(-1), [](Rng& g) { return random_quad(-1, g, 5); }, 30, rng);
    EXPECT_TRUE(c.ok()) << c.failures.front();
}

TEST(Batteries, MeasuresAndRenormalization) {
    Rng rng(7);
    for (auto& r : {measure_battery(gvf_Q(1), gen_q, 40, rng), measure_battery(gvf_Fpt(3, 1), gen_f3, 40, rng),
                    renorm_battery(gvf_Q(1), gen_q, 40, rng), renorm_battery(gvf_Fpt(5, 2), gen_f3, 0, rng)})
        EXPECT_TRUE(r.ok()) << r.name << ": " << r.failures.front();
}

TEST(LocalTerms, HeightIsTheMaxOfNegatedValues) {
    auto G = gvf_Q(1);
    Rng rng(8);
    auto t = parse_tropical("max(-x1, -x2, -x3)");
    for (int k = 0; k < 50; ++k) {
        std::vector<Rational> a = {random_rational(rng), random_rational(rng), random_rational(rng)};
        EXPECT_EQ(G.local_term(t, a), G.height(a).value);
    }
    EXPECT_THROW(G.local_term(t, {Rational(1), Rational(2)}), DomainError);
    EXPECT_THROW(G.local_term(t, {Rational(1), Rational(2), Rational(0)}), DomainError);
}

TEST(LocalTerms, LinearTermsVanish) {
    auto G = gvf_Fpt(5, 1);
    Rng rng(9);
    auto t = parse_tropical("2*x1 - 3/2*x2");
    for (int k = 0; k < 50; ++k)
        EXPECT_EQ(G.local_term(t, {random_fp_ratio(5, rng), random_fp_ratio(5, rng)}), Rational(0));
}

TEST(Measures, AtomsAndDensities) {
    auto G = gvf_Q(1);
    auto mu = G.local_measure(Rational(12));
    ASSERT_EQ(mu.atoms.size(), 2u);
    EXPECT_EQ(mu.total(), LogReal::log_abs(Rational(12)));
    auto rn = G.rn_check(Rational(12), Rational(18), div(QField{}, Rational(12)).positive_part());
    EXPECT_TRUE(rn.ok);
    EXPECT_EQ(rn.shared_atoms, 2);
    EXPECT_THROW(G.local_measure(Rational(-1)), DomainError);
}

TEST(Renormalization, ChangesValuesButNotHeights) {
    auto G = gvf_Q(1);
    auto H = G.renormalize({QFinite{Integer(2)}, QArch{}}, Rational(3));
    EXPECT_EQ(H.value(QFinite{Integer(2)}, Rational(4)), LogReal::log_prime(Integer(2), 6));
    EXPECT_EQ(H.weight(QArch{}), Rational(1, 3));
    EXPECT_EQ(H.height({Rational(4), Rational(3)}), G.height({Rational(4), Rational(3)}));
    EXPECT_FALSE(H == G);
    EXPECT_TRUE(H.renormalize({QFinite{Integer(2)}, QArch{}}, Rational(1, 3)) == G);
}

TEST(Quadratic, RestrictionReproducesRationalHeights) {
    Rng rng(10);
    for (long d : {-1L, 2L, 3L}) {
        auto R = restrict(gvf_quad(d));
        auto Q = gvf_Q(1);
        for (int k = 0; k < 60; ++k) {
            std::vector<Rational> a = {random_rational(rng), random_rational(rng)};
            EXPECT_EQ(R.height(a), Q.height(a));
        }
    }
}

TEST(Quadratic, GaloisInvariance) {
    Rng rng(11);
    for (long d : {-1L, 2L, -5L}) {
        auto G = gvf_quad(d);
        for (int k = 0; k < 60; ++k) EXPECT_TRUE(check_galois_invariance(G, random_quad(d, rng)).ok());
    }
}

TEST(Quadratic, UniquenessWitness) {
    for (long d : {-1L, 2L}) {
        auto rep = uniqueness_witness(d, 20);
        EXPECT_EQ(rep.kernel_dimension, 1u);
        EXPECT_TRUE(rep.product_formula_in_kernel);
        EXPECT_TRUE(rep.positive_direction);
        EXPECT_EQ(rep.places.size(), rep.rank + 1);
    }
    EXPECT_THROW(uniqueness_witness(3, 20), DomainError);
}

TEST(Qz, HeightMonotonicity) {
    auto S = gvf_Qz();
    Rng rng(12);
    for (int k = 0; k < 10; ++k) {
        auto x = random_qz(rng, 2, 5), y = random_qz(rng, 2, 5);
        auto hx = S.height({x}), hxy = S.height({x, y});
        EXPECT_LE(hx.value.lo, hxy.value.hi);
        EXPECT_TRUE(hx.value.contains(0.0));
    }
}
