// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "gvf/core/checks.hpp"
#include "gvf/core/quadratic.hpp"
#include "gvf/core/qz_structure.hpp"
#include "gvf/positivity/cross_validate.hpp"
#include "gvf/positivity/positivity.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace gvf;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

void take(Outcome& o, const BatteryReport& r) {
    std::ostringstream s;
    s << r.name << " " << r.cases << " cases/" << r.checks << " checks";
    if (!r.ok()) {
        o.ok = false;
        s << " [" << r.failures.front() << "]";
    }
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += s.str();
}

int failed = 0;

void criterion(int id, const std::string& what, double limit_s, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) {
        o.ok = false;
        o.detail += " (over the " + std::to_string(limit_s) + " s limit)";
    }
    if (!o.ok) ++failed;
    std::printf("%s AC%d %s: %.3f s; %s\n", o.ok ? "PASS" : "FAIL", id, what.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
}

auto gen_q = [](Rng& r) { return random_rational(r); };
auto gen_f3 = [](Rng& r) { return random_fp_ratio(3, r); };

using QDiv = LatticeDivisor<Rational>;

QDiv ultrametric_defect(const Rational& x, const Rational& y) {
    QField F;
    return div(F, x + y) - QDiv::meet({div(F, x), div(F, y)}) - QDiv::meet({div(F, Rational(2)), QDiv::zero()});
}

}  // namespace

int main() {
    criterion(1, "product formula over Q and F_3(t), 1000 elements each", 5, [] {
        Outcome o;
        Rng rng(101);
        take(o, product_formula_battery(gvf_Q(1), gen_q, 1000, rng));
        take(o, product_formula_battery(gvf_Fpt(3, 1), gen_f3, 1000, rng));
        return o;
    });

    criterion(2, "normalizations ht(2) = log 2, ht(t) = 1", 0, [] {
        auto G = gvf_Q(1);
        auto F = gvf_Fpt(3, 1);
        auto h2 = G.ht(Rational(2));
        auto ht = F.ht(F.field().t());
        Outcome o;
        o.ok = h2 == LogReal::log_prime(Integer(2)) && ht == Rational(1);
        o.detail = "ht(2) = " + h2.to_string() + ", ht(t) = " + to_string(ht);
        return o;
    });

    criterion(3, "height axioms on 500 tuples over Q and F_3(t)", 30, [] {
        Outcome o;
        Rng rng(103);
        take(o, height_axiom_battery(gvf_Q(1), gen_q, 500, rng));
        take(o, height_axiom_battery(gvf_Fpt(3, 1), gen_f3, 500, rng));
        return o;
    });

    criterion(4, "Q(z) product formula on 50 elements, width <= 1e-6", 60, [] {
        Outcome o;
        QzStructure S;
        Rng rng(104);
        double worst = 0;
        int bad = 0;
        for (int k = 0; k < 50; ++k) {
            auto a = random_qz(rng, 5, 20);
            auto pf = S.product_formula(a);
            worst = std::max(worst, pf.total.width());
            if (!pf.total.contains(0.0) || pf.total.width() > 1e-6) {
                if (!bad++) o.detail = "first failure " + a.to_string() + "; ";
            }
        }
        o.ok = bad == 0;
        std::ostringstream s;
        s << bad << " failures, max width " << worst;
        o.detail += s.str();
        return o;
    });

    criterion(5, "functional/height conversions on 200 cases over Q and F_3(t)", 0, [] {
        Outcome o;
        Rng rng(105);
        take(o, conversion_battery(gvf_Q(1), gen_q, 200, rng));
        take(o, conversion_battery(gvf_Fpt(3, 1), gen_f3, 200, rng));
        return o;
    });

    criterion(6, "local measures on 100 pairs", 0, [] {
        Outcome o;
        Rng rng(106);
        take(o, measure_battery(gvf_Q(1), gen_q, 100, rng));
        take(o, measure_battery(gvf_Fpt(3, 1), gen_f3, 100, rng));
        return o;
    });

    criterion(7, "renormalization on 100 cases", 0, [] {
        Outcome o;
        Rng rng(107);
        take(o, renorm_battery(gvf_Q(1), gen_q, 100, rng));
        take(o, renorm_battery(gvf_Fpt(3, 1), gen_f3, 100, rng));
        return o;
    });

    criterion(8, "positivity, certificate for (1/2) with epsilon 2, cross-validation", 60, [] {
        Outcome o;
        QField F;
        Rng rng(108);
        int pairs = 0, neg = 0;
        while (pairs < 200) {
            Rational x = random_rational(rng), y = random_rational(rng);
            if (x + y == 0) continue;
            ++pairs;
            if (!is_positive(F, ultrametric_defect(x, y)).positive) ++neg;
        }
        std::ostringstream s;
        s << "defect divisor not positive on " << neg << "/200 pairs";

        auto r = search_neg_certificate(F, {Rational(1, 2)}, Rational(2), 4, 8);
        bool cert_ok = false;
        if (r.cert) {
            DyadicSum half(1);
            half.add(Rational(1, 2), 0);
            cert_ok = verify_neg_certificate(F, {Rational(1, 2)}, *r.cert).ok && (r.cert->cost() - half).sign() <= 0;
            s << "; certificate cost " << r.cert->cost().approx();
        }
        s << "; certificate " << (cert_ok ? "verified" : "missing or invalid");

        auto q = cross_validate_Q(100, 108);
        auto f = cross_validate_Fpt(100, 3, 108);
        s << "; cross-validation contradictions Q " << q.contradictions << ", F_3(t) " << f.contradictions;
        o.ok = neg == 0 && cert_ok && q.contradictions == 0 && f.contradictions == 0;
        o.detail = s.str();
        return o;
    });

    criterion(9, "quadratic fields d = -1, 2", 0, [] {
        Outcome o;
        Rng rng(109);
        std::ostringstream s;
        for (long d : {-1L, 2L}) {
            auto G = gvf_quad(d);
            auto gen = [d](Rng& g) { return random_quad(d, g); };
            take(o, product_formula_battery(G, gen, 50, rng));
            int galois_bad = 0, restrict_bad = 0;
            for (int k = 0; k < 100; ++k)
                if (!check_galois_invariance(G, random_quad(d, rng)).ok()) ++galois_bad;
            auto R = restrict(G);
            auto Q = gvf_Q(1);
            for (int k = 0; k < 100; ++k) {
                std::vector<Rational> a = {random_rational(rng), random_rational(rng)};
                if (!(R.height(a) == Q.height(a))) ++restrict_bad;
            }
            auto u = uniqueness_witness(d, 20);
            s << "; d=" << d << ": galois failures " << galois_bad << ", restriction failures " << restrict_bad
              << ", uniqueness rank " << u.rank << " kernel " << u.kernel_dimension;
            if (galois_bad || restrict_bad || u.kernel_dimension != 1 || !u.product_formula_in_kernel) o.ok = false;
        }
        o.detail += s.str();
        return o;
    });

    criterion(10, "gauge invariance on 500 pairs", 0, [] {
        Outcome o;
        Rng rng(110);
        take(o, gauge_battery(gvf_Q(1), gen_q, 500, rng));
        take(o, gauge_battery(gvf_Fpt(3, 1), gen_f3, 500, rng));
        return o;
    });

    std::printf("%s: %d of 10 criteria failed\n", failed ? "FAIL" : "PASS", failed);
    return failed ? 1 : 0;
}
