#pragma once

#include "gvf/places/field_fpt.hpp"
#include "gvf/places/field_q.hpp"
#include "gvf/places/field_quad.hpp"
#include "gvf/positivity/dyadic.hpp"
#include "gvf/positivity/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gvf {

using Exponent = std::vector<int>;

inline int total_degree(const Exponent& s) {
    int t = 0;
    for (int x : s) t += x;
    return t;
}

// sum_s m_s a^s = 1 with sum_s |m_s| 2^(-eps|s|) < 1.
struct NegCertificate {
    std::map<Exponent, Integer> coeffs;
    Rational epsilon;

    DyadicSum cost() const {
        DyadicSum c(epsilon.get_den().get_si());
        for (auto& [s, m] : coeffs) c.add(Rational(abs(m)), -epsilon * total_degree(s));
        return c;
    }
    int degree() const {
        int d = 0;
        for (auto& [s, m] : coeffs) d = std::max(d, total_degree(s));
        return d;
    }
};

inline DyadicSum unit_sum(const Rational& eps) {
    DyadicSum one(eps.get_den().get_si());
    one.add(1, 0);
    return one;
}

struct CertificateCheck {
    bool ok = false;
    bool identity = false;
    bool bound = false;
    std::string reason;
};

template <class Field>
typename Field::Element monomial(const Field& F, const std::vector<typename Field::Element>& a, const Exponent& s) {
    if (s.size() != a.size()) throw DomainError("exponent vector has the wrong arity");
    auto r = F.one();
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != 0) r = r * F.power(a[i], s[i]);
    return r;
}

template <class Field>
CertificateCheck verify_neg_certificate(const Field& F, const std::vector<typename Field::Element>& a,
                                        const NegCertificate& cert) {
    CertificateCheck out;
    if (cert.epsilon <= 0) throw DomainError("epsilon must be positive");
    for (auto& x : a)
        if (F.is_zero(x)) throw DomainError("certificate tuple has a zero entry");
    auto sum = F.from_int(0);
    for (auto& [s, m] : cert.coeffs) {
        if (s.size() != a.size()) throw DomainError("exponent vector has the wrong arity");
        for (int x : s)
            if (x < 0) throw DomainError("exponents must be nonnegative");
        sum = sum + monomial(F, a, s) * F.from_int(m.get_si());
    }
    out.identity = sum == F.one();
    out.bound = (cert.cost() - unit_sum(cert.epsilon)).sign() < 0;
    out.ok = out.identity && out.bound;
    if (!out.identity) out.reason = "sum of m_s a^s is not 1";
    else if (!out.bound) out.reason = "weighted L1 norm is not below 1";
    return out;
}

namespace detail {

inline FpPoly fp_power(const FpPoly& f, int e) {
    FpPoly r = FpPoly::constant(f.prime(), 1);
    for (int i = 0; i < e; ++i) r = r * f;
    return r;
}

// Integer linear constraints  sum_j m_j cols[j] = rhs.
struct IntegerSystem {
    std::vector<std::vector<Integer>> cols;
    std::vector<Integer> rhs;

    using Residual = std::vector<Integer>;

    long range(long M) const { return M; }
    Residual initial() const { return rhs; }
    void apply(Residual& r, std::size_t j, long m) const {
        for (std::size_t k = 0; k < r.size(); ++k) r[k] -= cols[j][k] * m;
    }
    bool zero(const Residual& r) const {
        for (auto& x : r)
            if (x != 0) return false;
        return true;
    }

    void prepare(const std::vector<double>& w) {
        std::size_t n = cols.size(), rows = rhs.size();
        ratio_.assign(n + 1, std::vector<double>(rows, std::numeric_limits<double>::infinity()));
        gcd_.assign(n + 1, std::vector<Integer>(rows, Integer(0)));
        for (std::size_t j = n; j-- > 0;)
            for (std::size_t k = 0; k < rows; ++k) {
                ratio_[j][k] = ratio_[j + 1][k];
                gcd_[j][k] = gcd_[j + 1][k];
                if (cols[j][k] == 0) continue;
                ratio_[j][k] = std::min(ratio_[j][k], w[j] / std::abs(cols[j][k].get_d()));
                gcd_[j][k] = gcd(gcd_[j][k], cols[j][k]);
            }
    }
    // Every row residual must stay reachable by the remaining columns.
    bool feasible(const Residual& r, std::size_t from) const {
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (r[k] == 0) continue;
            const Integer& g = gcd_[from][k];
            if (g == 0 || !mpz_divisible_p(r[k].get_mpz_t(), g.get_mpz_t())) return false;
        }
        return true;
    }
    // LP relaxation of each row separately.
    double lower_bound(const Residual& r, std::size_t from) const {
        double lb = 0;
        for (std::size_t k = 0; k < r.size(); ++k)
            if (r[k] != 0) lb = std::max(lb, std::abs(r[k].get_d()) * ratio_[from][k]);
        return lb;
    }

private:
    std::vector<std::vector<double>> ratio_;
    std::vector<std::vector<Integer>> gcd_;
};

// Constraints over F_p; integer coefficients act through their residues.
struct ModularSystem {
    std::uint64_t p = 2;
    std::vector<std::vector<std::uint64_t>> cols;
    std::vector<std::uint64_t> rhs;

    using Residual = std::vector<std::uint64_t>;

    long range(long M) const { return std::min<long>(M, static_cast<long>(p / 2)); }
    Residual initial() const { return rhs; }
    void apply(Residual& r, std::size_t j, long m) const {
        std::uint64_t mm = static_cast<std::uint64_t>(((m % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p));
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = (r[k] + (p - cols[j][k]) * mm) % p;
    }
    bool zero(const Residual& r) const {
        for (auto x : r)
            if (x != 0) return false;
        return true;
    }

    void prepare(const std::vector<double>& w) {
        std::size_t n = cols.size();
        minw_.assign(n + 1, std::numeric_limits<double>::infinity());
        basis_.assign(n + 1, {});
        for (std::size_t j = n; j-- > 0;) {
            bool nonzero = false;
            for (auto x : cols[j]) nonzero |= x != 0;
            minw_[j] = nonzero ? std::min(minw_[j + 1], w[j]) : minw_[j + 1];
            basis_[j] = basis_[j + 1];
            insert(basis_[j], cols[j]);
        }
    }
    bool feasible(const Residual& r, std::size_t from) const {
        Residual x = r;
        reduce(basis_[from], x);
        return zero(x);
    }
    double lower_bound(const Residual& r, std::size_t from) const { return zero(r) ? 0 : minw_[from]; }

private:
    using Basis = std::vector<std::pair<std::size_t, Residual>>;  // (pivot, row with pivot entry 1)

    std::uint64_t inv(std::uint64_t a) const {
        std::uint64_t r = 1, e = p - 2, b = a % p;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    }
    void reduce(const Basis& B, Residual& x) const {
        for (auto& [piv, row] : B) {
            std::uint64_t c = x[piv];
            if (c == 0) continue;
            for (std::size_t k = 0; k < x.size(); ++k) x[k] = (x[k] + (p - row[k]) * c) % p;
        }
    }
    void insert(Basis& B, const Residual& v) const {
        Residual x = v;
        reduce(B, x);
        std::size_t piv = 0;
        while (piv < x.size() && x[piv] == 0) ++piv;
        if (piv == x.size()) return;
        std::uint64_t c = inv(x[piv]);
        for (auto& y : x) y = y * c % p;
        for (auto& [q, row] : B) {
            std::uint64_t f = row[piv];
            if (f == 0) continue;
            for (std::size_t k = 0; k < row.size(); ++k) row[k] = (row[k] + (p - x[k]) * f) % p;
        }
        B.emplace_back(piv, x);
    }

    std::vector<double> minw_;
    std::vector<Basis> basis_;
};

inline IntegerSystem build_system(const QField&, const std::vector<Rational>& a, const std::vector<Exponent>& monos) {
    int D = 0;
    for (auto& s : monos) D = std::max(D, total_degree(s));
    IntegerSystem sys;
    Integer rhs = 1;
    for (auto& x : a) rhs *= ipow(x.get_den(), static_cast<unsigned long>(D));
    sys.rhs = {rhs};
    for (auto& s : monos) {
        Integer c = 1;
        for (std::size_t i = 0; i < a.size(); ++i)
            c *= ipow(a[i].get_num(), static_cast<unsigned long>(s[i])) *
                 ipow(a[i].get_den(), static_cast<unsigned long>(D - s[i]));
        sys.cols.push_back({c});
    }
    return sys;
}

inline IntegerSystem build_system(const QuadField& F, const std::vector<QuadElem>& a, const std::vector<Exponent>& monos) {
    int D = 0;
    for (auto& s : monos) D = std::max(D, total_degree(s));
    std::vector<Integer> den;
    std::vector<QuadElem> integral;
    for (auto& x : a) {
        Integer l = lcm(x.a().get_den(), x.b().get_den());
        den.push_back(l);
        integral.push_back(x * Rational(l));
    }
    Integer rhs = 1;
    for (auto& l : den) rhs *= ipow(l, static_cast<unsigned long>(D));
    IntegerSystem sys;
    sys.rhs = {rhs, 0};
    for (auto& s : monos) {
        QuadElem c = F.one() * Rational(1);
        for (std::size_t i = 0; i < a.size(); ++i)
            c = c * integral[i].pow(s[i]) * Rational(ipow(den[i], static_cast<unsigned long>(D - s[i])));
        sys.cols.push_back({c.a().get_num(), c.b().get_num()});
    }
    return sys;
}

inline ModularSystem build_system(const FptField& F, const std::vector<FpRatio>& a, const std::vector<Exponent>& monos) {
    int D = 0;
    for (auto& s : monos) D = std::max(D, total_degree(s));
    FpPoly Q = FpPoly::constant(F.p, 1);
    for (auto& x : a) Q = Q * fp_power(x.den(), D);
    std::vector<FpPoly> cs;
    std::size_t len = Q.coeffs().size();
    for (auto& s : monos) {
        FpPoly c = FpPoly::constant(F.p, 1);
        for (std::size_t i = 0; i < a.size(); ++i)
            c = c * fp_power(a[i].num(), s[i]) * fp_power(a[i].den(), D - s[i]);
        len = std::max(len, c.coeffs().size());
        cs.push_back(c);
    }
    auto pad = [&](const FpPoly& f) {
        std::vector<std::uint64_t> v(len, 0);
        for (std::size_t k = 0; k < f.coeffs().size(); ++k) v[k] = f.coeffs()[k];
        return v;
    };
    ModularSystem sys;
    sys.p = F.p;
    sys.rhs = pad(Q);
    for (auto& c : cs) sys.cols.push_back(pad(c));
    return sys;
}

struct L1Outcome {
    enum class Status { Found, NotFound, BudgetExceeded };
    Status status = Status::NotFound;
    std::optional<std::vector<long>> m;
    long nodes = 0;
};

// Minimizes sum_j 2^(e_j) |m_j| over integer solutions of the system with
// |m_j| <= range and cost strictly below 2^(e_T).  Pruning uses floating
// bounds with slack; acceptance and ties are decided exactly.  Among optimal
// solutions the lexicographically smallest m (in variable order) wins.
template <class System>
class L1Search {
public:
    L1Search(System sys, std::vector<Rational> exps, Rational threshold_exp, long range, long budget)
        : sys_(std::move(sys)), exps_(std::move(exps)), texp_(std::move(threshold_exp)), range_(range), budget_(budget) {
        Integer w = texp_.get_den();
        for (auto& e : exps_) w = lcm(w, e.get_den());
        w_ = w.get_si();
        for (auto& e : exps_) wd_.push_back(std::exp2(e.get_d()));
        sys_.prepare(wd_);
        best_approx_ = std::exp2(texp_.get_d());
        best_cost_ = DyadicSum(w_);
        best_cost_.add(1, texp_);
    }

    L1Outcome run() {
        L1Outcome out;
        std::vector<long> cur(exps_.size(), 0);
        bool complete = dfs(0, sys_.initial(), 0.0, cur);
        out.nodes = nodes_;
        out.m = best_;
        if (!complete) out.status = L1Outcome::Status::BudgetExceeded;
        else out.status = best_ ? L1Outcome::Status::Found : L1Outcome::Status::NotFound;
        return out;
    }

    DyadicSum cost_of(const std::vector<long>& m) const {
        DyadicSum c(w_);
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m[j] != 0) c.add(Rational(std::labs(m[j])), exps_[j]);
        return c;
    }

private:
    double slack() const { return 1e-9 * (1 + best_approx_); }

    bool dfs(std::size_t j, const typename System::Residual& r, double cost, std::vector<long>& cur) {
        if (++nodes_ > budget_) return false;
        if (j == exps_.size()) {
            if (sys_.zero(r)) offer(cur);
            return true;
        }
        if (!sys_.feasible(r, j)) return true;
        if (cost + sys_.lower_bound(r, j) > best_approx_ + slack()) return true;
        long R = sys_.range(range_);
        for (long k = 0; k <= 2 * R; ++k) {
            long m = k == 0 ? 0 : (k % 2 ? (k + 1) / 2 : -(k / 2));
            double c = cost + wd_[j] * std::labs(m);
            if (c > best_approx_ + slack()) break;
            auto next = r;
            if (m != 0) sys_.apply(next, j, m);
            cur[j] = m;
            bool ok = dfs(j + 1, next, c, cur);
            cur[j] = 0;
            if (!ok) return false;
        }
        return true;
    }

    void offer(const std::vector<long>& m) {
        bool nonzero = false;
        for (long x : m) nonzero |= x != 0;
        if (!nonzero) return;
        DyadicSum c = cost_of(m);
        int s = (c - best_cost_).sign();
        if (s > 0) return;
        if (s == 0) {
            if (!best_) return;  // equal to the threshold: not strictly below
            if (!(m < *best_)) return;
        }
        best_ = m;
        best_cost_ = c;
        best_approx_ = c.approx();
    }

    System sys_;
    std::vector<Rational> exps_;
    Rational texp_;
    long range_, budget_;
    long w_ = 1;
    std::vector<double> wd_;
    long nodes_ = 0;
    double best_approx_;
    DyadicSum best_cost_;
    std::optional<std::vector<long>> best_;
};

}  // namespace detail

// All s with 1 <= |s| <= D, ordered by total degree then lexicographically.
inline std::vector<Exponent> monomials_up_to(std::size_t n, int D, int from = 1) {
    std::vector<Exponent> out;
    for (int deg = from; deg <= D; ++deg) {
        std::vector<Exponent> level;
        Exponent s(n, 0);
        auto rec = [&](auto& self, std::size_t i, int left) -> void {
            if (i + 1 == n) {
                s[i] = left;
                level.push_back(s);
                return;
            }
            for (int x = left; x >= 0; --x) {
                s[i] = x;
                self(self, i + 1, left - x);
            }
        };
        if (n > 0) rec(rec, 0, deg);
        std::sort(level.begin(), level.end());
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

struct NegSearchResult {
    using Status = detail::L1Outcome::Status;
    Status status = Status::NotFound;
    std::optional<NegCertificate> cert;
    long nodes = 0;
};

inline std::string to_string(NegSearchResult::Status s) {
    switch (s) {
        case NegSearchResult::Status::Found: return "found";
        case NegSearchResult::Status::NotFound: return "none";
        default: return "budget-exceeded";
    }
}

// Exhaustive over 1 <= |s| <= D, |m_s| <= M (and |m_s| <= p/2 over F_p(t),
// where larger representatives are never cheaper).  The constant monomial is
// left out: any nonzero m_0 already costs at least 1.
template <class Field>
NegSearchResult search_neg_certificate(const Field& F, const std::vector<typename Field::Element>& a, const Rational& eps,
                                       int D, long M, long budget = 2000000) {
    if (eps <= 0) throw DomainError("epsilon must be positive");
    if (a.empty()) throw DomainError("empty tuple");
    if (D < 1 || M < 1) throw DomainError("degree and coefficient bounds must be positive");
    for (auto& x : a)
        if (F.is_zero(x)) throw DomainError("certificate tuple has a zero entry");
    auto monos = monomials_up_to(a.size(), D);
    std::vector<Rational> exps;
    for (auto& s : monos) exps.push_back(-eps * total_degree(s));
    detail::L1Search search(detail::build_system(F, a, monos), exps, Rational(0), M, budget);
    auto o = search.run();
    NegSearchResult out;
    out.status = o.status;
    out.nodes = o.nodes;
    if (o.m) {
        NegCertificate c;
        c.epsilon = eps;
        for (std::size_t j = 0; j < monos.size(); ++j)
            if ((*o.m)[j] != 0) c.coeffs[monos[j]] = (*o.m)[j];
        out.cert = c;
    }
    return out;
}

// Presentation  meet_i div(b_i) - meet_j div(a_j)  with b_i = sum_j m_ij a_j.
template <class E>
struct GammaCertificate {
    std::vector<E> a;
    std::vector<std::vector<Integer>> rows;
};

template <class Field>
CertificateCheck verify_gamma_membership(const Field& F, const LatticeDivisor<typename Field::Element>& alpha,
                                         const GammaCertificate<typename Field::Element>& cert, const Rational& eps) {
    using E = typename Field::Element;
    CertificateCheck out;
    if (cert.a.empty() || cert.rows.empty()) {
        out.reason = "empty presentation";
        return out;
    }
    for (auto& x : cert.a)
        if (F.is_zero(x)) throw DomainError("presentation has a zero a_j");
    out.bound = true;
    std::vector<E> b;
    for (auto& row : cert.rows) {
        if (row.size() != cert.a.size()) throw DomainError("row length does not match the number of a_j");
        Integer l1 = 0;
        E bi = F.from_int(0);
        for (std::size_t j = 0; j < row.size(); ++j) {
            l1 += abs(row[j]);
            bi = bi + cert.a[j] * F.from_int(row[j].get_si());
        }
        // l1 < 2^eps  <=>  l1^w < 2^u for eps = u/w.
        Integer u = eps.get_num(), w = eps.get_den();
        if (u <= 0) throw DomainError("epsilon must be positive");
        if (!(ipow(l1, w.get_ui()) < ipow(Integer(2), u.get_ui()))) out.bound = false;
        if (F.is_zero(bi)) {
            out.reason = "some b_i is zero";
            return out;
        }
        b.push_back(bi);
    }
    std::vector<LatticeDivisor<E>> bs, as;
    for (auto& x : b) bs.push_back(div(F, x));
    for (auto& x : cert.a) as.push_back(div(F, x));
    auto presented = LatticeDivisor<E>::meet(bs) - LatticeDivisor<E>::meet(as);
    out.identity = is_zero(F, presented - alpha);
    out.ok = out.bound && out.identity;
    if (!out.bound) out.reason = "some row has L1 norm >= 2^epsilon";
    else if (!out.identity) out.reason = "presentation does not equal the divisor";
    return out;
}

struct GammaSearchResult {
    std::optional<int> m;  // multiple with m alpha in Gamma_{m eps}
    Integer row_l1;
    long nodes = 0;
    bool budget_hit = false;
};

// For alpha = -meet_i div(a_i): m alpha = -meet_{|s| = m} div(a^s), which lies in
// Gamma_{m eps} via the single row b = 1 = sum_s m_s a^s with sum |m_s| < 2^{m eps}.
template <class Field>
std::pair<GammaSearchResult, std::optional<GammaCertificate<typename Field::Element>>> search_gamma(
    const Field& F, const std::vector<typename Field::Element>& a, const Rational& eps, int max_m, long M, long budget) {
    GammaSearchResult res;
    for (int m = 1; m <= max_m; ++m) {
        auto monos = monomials_up_to(a.size(), m, m);
        std::vector<Rational> exps(monos.size(), Rational(0));
        detail::L1Search search(detail::build_system(F, a, monos), exps, eps * m, M, budget);
        auto o = search.run();
        res.nodes += o.nodes;
        if (o.status == detail::L1Outcome::Status::BudgetExceeded) res.budget_hit = true;
        if (!o.m) continue;
        GammaCertificate<typename Field::Element> cert;
        std::vector<Integer> row;
        Integer l1 = 0;
        for (std::size_t j = 0; j < monos.size(); ++j) {
            cert.a.push_back(monomial(F, a, monos[j]));
            row.push_back((*o.m)[j]);
            l1 += std::labs((*o.m)[j]);
        }
        cert.rows.push_back(row);
        res.m = m;
        res.row_l1 = l1;
        return {res, cert};
    }
    return {res, std::nullopt};
}

}  // namespace gvf
