#pragma once

#include "gvf/core/random.hpp"
#include "gvf/positivity/certificate.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace gvf {

struct CrossCase {
    std::vector<std::string> a;
    Rational epsilon;
    bool condition = false;  // place condition for -meet div(a_i)
    bool positive = false;
    std::string neg_status;
    bool neg_verified = false;
    std::optional<int> gamma_m;
    Integer gamma_row_l1;
    double delta_bound = 0;  // log2 of deg P (4^eps / (2^eps - 1) + n) for a found certificate
    bool contradiction = false;
    bool inconclusive = false;
    std::string note;
};

struct CrossReport {
    std::string field;
    unsigned long seed = 0;
    std::vector<CrossCase> cases;
    std::size_t contradictions = 0;
    std::size_t inconclusive = 0;
};

struct CrossLimits {
    int degree = 4;
    long coeff = 8;
    long budget = 100000;
    int gamma_max_m = 6;
    long gamma_coeff = 16;
    long gamma_budget = 20000;
};

namespace detail {

inline Rational random_epsilon(std::mt19937_64& rng) {
    static const Rational choices[] = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(3)};
    std::uniform_int_distribution<int> pick(0, 4);
    return choices[pick(rng)];
}

template <class Field, class Gen>
CrossReport cross_validate(const Field& F, std::size_t N, unsigned long seed, Gen gen, const CrossLimits& lim) {
    using E = typename Field::Element;
    CrossReport rep;
    rep.field = F.name();
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> arity(1, 2);
    for (std::size_t k = 0; k < N; ++k) {
        CrossCase cc;
        std::vector<E> a(static_cast<std::size_t>(arity(rng)));
        for (auto& x : a) x = gen(rng);
        cc.epsilon = random_epsilon(rng);
        for (auto& x : a) cc.a.push_back(to_string(x));

        auto alpha = neg_meet(F, a);
        cc.condition = negativity_condition(F, a, cc.epsilon);
        if (cc.condition != gamma_condition(F, alpha, cc.epsilon)) {
            cc.contradiction = true;
            cc.note += "tuple and divisor forms of the condition disagree; ";
        }
        cc.positive = is_positive(F, alpha).positive;
        if (cc.positive && !cc.condition) {
            cc.contradiction = true;
            cc.note += "positive divisor violates the condition; ";
        }

        auto neg = search_neg_certificate(F, a, cc.epsilon, lim.degree, lim.coeff, lim.budget);
        cc.neg_status = to_string(neg.status);
        if (neg.cert) {
            auto chk = verify_neg_certificate(F, a, *neg.cert);
            cc.neg_verified = chk.ok;
            if (!chk.ok) {
                cc.contradiction = true;
                cc.note += "search returned an invalid certificate; ";
            }
            if (!cc.condition) {
                cc.contradiction = true;
                cc.note += "certificate found although the condition fails; ";
            }
            double e = cc.epsilon.get_d();
            cc.delta_bound = std::log2(neg.cert->degree() * (std::pow(4.0, e) / (std::pow(2.0, e) - 1) + a.size()));
        }

        auto [gres, gcert] = search_gamma(F, a, cc.epsilon, lim.gamma_max_m, lim.gamma_coeff, lim.gamma_budget);
        if (gcert) {
            cc.gamma_m = gres.m;
            cc.gamma_row_l1 = gres.row_l1;
            auto chk = verify_gamma_membership(F, alpha.scaled(*gres.m), *gcert, cc.epsilon * *gres.m);
            if (!chk.ok) {
                cc.contradiction = true;
                cc.note += "gamma certificate fails verification: " + chk.reason + "; ";
            }
            if (!cc.condition) {
                cc.contradiction = true;
                cc.note += "gamma membership found although the condition fails; ";
            }
        }

        cc.inconclusive = cc.condition && !neg.cert && !gcert;
        if (cc.contradiction) ++rep.contradictions;
        if (cc.inconclusive) ++rep.inconclusive;
        rep.cases.push_back(std::move(cc));
    }
    return rep;
}

}  // namespace detail

inline CrossReport cross_validate_Q(std::size_t N, unsigned long seed, const CrossLimits& lim = {}) {
    return detail::cross_validate(QField{}, N, seed, [](std::mt19937_64& rng) { return random_rational(rng, 9); },
                                  lim);
}

inline CrossReport cross_validate_Fpt(std::size_t N, std::uint64_t p, unsigned long seed, const CrossLimits& lim = {}) {
    FptField F(p);
    return detail::cross_validate(F, N, seed, [p](std::mt19937_64& rng) { return random_fp_ratio(p, rng, 2); },
                                  lim);
}

}  // namespace gvf
