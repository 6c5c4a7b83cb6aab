#include "gvf/arith/logreal.hpp"
#include "gvf/arith/mahler.hpp"
#include "gvf/arith/qz.hpp"
#include "gvf/core/random.hpp"
#include "gvf/positivity/dyadic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

using namespace gvf;

namespace {

std::map<Integer, long, IntegerLess> trial_division(Integer n) {
    std::map<Integer, long, IntegerLess> out;
    if (n < 0) n = -n;
    for (Integer p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    if (n > 1) ++out[n];
    return out;
}

long double log_abs_approx(const QuadElem& x, int emb) {
    long double r = std::sqrt(static_cast<long double>(x.d()));
    long double v = x.a().get_d() + (emb == 1 ? 1 : -1) * x.b().get_d() * r;
    return std::log(std::fabs(v));
}

// Mean of log|f| over equally spaced points of the unit circle.
double circle_mean_log(const ZPoly& f, int n) {
    double s = 0;
    for (int k = 0; k < n; ++k) {
        std::complex<double> z = std::polar(1.0, 2 * M_PI * (k + 0.5) / n), v = 0;
        for (int i = f.degree(); i >= 0; --i) v = v * z + f.coeffs()[i].get_d();
        s += std::log(std::abs(v));
    }
    return s / n;
}

}  // namespace

TEST(Integer, FactorizationMatchesTrialDivision) {
    Rng rng(11);
    for (int k = 0; k < 300; ++k) {
        Integer n = uniform(rng, 2, 2000000000L);
        n *= uniform(rng, 1, 5000);
        EXPECT_EQ(factor_integer(n), trial_division(n)) << n.get_str();
    }
}

TEST(Integer, OrdOfRationals) {
    EXPECT_EQ(ord_p(make_rational(12, 5), Integer(2)), 2);
    EXPECT_EQ(ord_p(make_rational(7, 40), Integer(2)), -3);
    EXPECT_EQ(ord_p(make_rational(7, 40), Integer(3)), 0);
}

TEST(Integer, RationalRoundTrip) {
    Rng rng(3);
    for (int k = 0; k < 200; ++k) {
        Rational q = random_rational(rng, 1000000);
        EXPECT_EQ(parse_rational(to_string(q)), q);
    }
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational("x"), ParseError);
}

TEST(LogReal, SignAgreesWithFloatingPoint) {
    Rng rng(5);
    int checked = 0;
    for (int k = 0; k < 2000; ++k) {
        LogReal x;
        long double approx = 0;
        for (int j = 0; j < 3; ++j) {
            long n = uniform(rng, 2, 60);
            Rational c = make_rational(uniform(rng, -5, 5), uniform(rng, 1, 4));
            x += LogReal::log_abs(Rational(n)) * c;
            approx += c.get_d() * std::log(static_cast<long double>(n));
        }
        if (std::fabs(approx) < 1e-9) continue;
        ++checked;
        EXPECT_EQ(x.sign(), approx > 0 ? 1 : -1) << x.to_string();
    }
    EXPECT_GT(checked, 1500);
}

TEST(LogReal, ExactCancellation) {
    LogReal x = LogReal::log_abs(Rational(6)) - LogReal::log_prime(2) - LogReal::log_prime(3);
    EXPECT_EQ(x.sign(), 0);
    EXPECT_TRUE(x.is_structurally_zero());
    LogReal half = LogReal::log_abs(make_rational(1, 2)) + LogReal::log_prime(2);
    EXPECT_EQ(half.sign(), 0);
}

TEST(LogReal, AlgebraicPartSign) {
    QuadElem u(2, 1, 1);  // 1 + sqrt 2
    LogReal a = LogReal::log_abs(u);
    LogReal b = LogReal::log_abs(u * u, 2);
    EXPECT_EQ((a - b).sign(), 0);
    EXPECT_NEAR(a.approx(), static_cast<double>(log_abs_approx(u, 1)), 1e-12);
    Rng rng(9);
    for (int k = 0; k < 300; ++k) {
        QuadElem g(2, uniform(rng, -30, 30), uniform(rng, -30, 30));
        if (g.is_zero() || g.is_rational()) continue;
        long n = uniform(rng, 1, 3);
        Rational c = make_rational(uniform(rng, -4, 4), uniform(rng, 1, 3));
        long m = uniform(rng, 2, 40);
        LogReal x = LogReal::log_abs(g, n) + LogReal::log_abs(Rational(m)) * c;
        long double ref = log_abs_approx(g, 1) / n + c.get_d() * std::log(static_cast<long double>(m));
        if (std::fabs(ref) < 1e-9) continue;
        EXPECT_EQ(x.sign(), ref > 0 ? 1 : -1) << x.to_string();
    }
}

TEST(Quad, FieldAxioms) {
    Rng rng(2);
    for (long d : {-1L, 2L, -5L, 3L}) {
        for (int k = 0; k < 100; ++k) {
            QuadElem a = random_quad(d, rng), b = random_quad(d, rng);
            EXPECT_EQ((a * b) / b, a);
            EXPECT_EQ((a * b).norm(), a.norm() * b.norm());
            EXPECT_EQ((a + b).conj(), a.conj() + b.conj());
            EXPECT_EQ(a.pow(3) * a.pow(-3), QuadElem(d, 1));
        }
    }
}

TEST(FpPoly, FactorizationIsComplete) {
    Rng rng(17);
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL}) {
        for (int k = 0; k < 60; ++k) {
            FpPoly f = random_fp_poly(p, rng, 6, true);
            if (f.degree() < 1) continue;
            FpPoly prod = FpPoly::constant(p, 1);
            for (auto& [g, e] : factor_fp_poly(f)) {
                for (long i = 0; i < e; ++i) prod = prod * g;
                // irreducibility by exhaustive division by monic polynomials of degree <= deg/2
                int half = g.degree() / 2;
                for (int dg = 1; dg <= half; ++dg) {
                    std::vector<std::uint64_t> c(static_cast<std::size_t>(dg) + 1, 0);
                    c.back() = 1;
                    while (true) {
                        FpPoly h(p, c);
                        EXPECT_FALSE(g.divmod(h).second.is_zero())
                            << g.to_string() << " divisible by " << h.to_string();
                        std::size_t i = 0;
                        while (i < static_cast<std::size_t>(dg) && ++c[i] == p) c[i++] = 0;
                        if (i == static_cast<std::size_t>(dg)) break;
                    }
                }
            }
            EXPECT_EQ(prod, f);
        }
    }
}

TEST(FpRatio, RoundTripAndArithmetic) {
    Rng rng(4);
    for (int k = 0; k < 200; ++k) {
        FpRatio a = random_fp_ratio(5, rng), b = random_fp_ratio(5, rng);
        EXPECT_EQ((a * b) / b, a);
        EXPECT_EQ((a + b) - b, a);
        EXPECT_EQ(a.inverse() * a, FpRatio::constant(5, 1));
    }
}

TEST(Qz, Normalization) {
    QzRatio x(QPoly(std::vector<Rational>{2, 4}), QPoly(std::vector<Rational>{6, 0, 2}));
    EXPECT_EQ(x.den().lead(), 1);
    EXPECT_EQ(x * x.inverse(), QzRatio::constant(1));
}

TEST(Mahler, KnownValues) {
    Interval m = mahler_measure(ZPoly(std::vector<Integer>{-2, 1}));
    EXPECT_TRUE(m.contains(std::log(2.0)));
    EXPECT_LE(m.width(), 1e-8);
    // cyclotomic polynomials have measure zero
    Interval c = mahler_measure(ZPoly(std::vector<Integer>{1, 1, 1}));
    EXPECT_TRUE(c.contains(0.0));
    // z^3 - z - 1: measure = log of the plastic number
    Interval pl = mahler_measure(ZPoly(std::vector<Integer>{-1, -1, 0, 1}));
    EXPECT_TRUE(pl.contains(std::log(1.324717957244746)));
}

TEST(Mahler, AgreesWithCircleQuadrature) {
    Rng rng(21);
    for (int k = 0; k < 30; ++k) {
        std::vector<Integer> c(static_cast<std::size_t>(uniform(rng, 1, 5)) + 1);
        for (auto& x : c) x = uniform(rng, -20, 20);
        if (c.back() == 0) c.back() = 1;
        if (c.front() == 0) c.front() = 3;
        ZPoly f(c);
        Interval m = mahler_measure(f);
        double q = circle_mean_log(f, 1 << 16);
        EXPECT_NEAR(m.mid(), q, 1e-3) << f.to_string();
        EXPECT_LE(m.width(), 1e-6);
    }
}

TEST(Interval, LogAbsEnclosesValue) {
    for (long n : {2L, 3L, 10L, 1000003L}) {
        Interval i = Interval::log_abs(Rational(n));
        EXPECT_TRUE(i.contains(std::log(static_cast<double>(n))));
    }
}

TEST(Dyadic, ExactZero) {
    DyadicSum s(2);
    s.add_units(1, 2);  // 2
    s.add(-2, 0);
    EXPECT_EQ(s.sign(), 0);
    DyadicSum t(3);
    t.add(1, Rational(1, 3));
    t.add(-1, Rational(4, 3));
    t.add(1, Rational(1, 3));
    EXPECT_EQ(t.sign(), 0);
}

TEST(Dyadic, SignAgreesWithLongDouble) {
    Rng rng(8);
    for (int k = 0; k < 500; ++k) {
        long w = uniform(rng, 1, 6);
        DyadicSum s(w);
        long double ref = 0;
        for (int j = 0; j < 4; ++j) {
            long e = uniform(rng, -12, 12);
            Rational c = make_rational(uniform(rng, -9, 9), uniform(rng, 1, 9));
            s.add_units(c, e);
            ref += c.get_d() * std::exp2(static_cast<long double>(e) / w);
        }
        if (std::fabs(ref) < 1e-12) continue;
        EXPECT_EQ(s.sign(), ref > 0 ? 1 : -1);
    }
}
