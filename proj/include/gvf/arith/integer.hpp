#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gvf {

using Integer = mpz_class;
using Rational = mpq_class;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& what)
        : std::runtime_error("parse error at position " + std::to_string(position) + ": " + what),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

struct IntegerLess {
    bool operator()(const Integer& a, const Integer& b) const { return cmp(a, b) < 0; }
};

inline Rational make_rational(const Integer& n, const Integer& d) {
    if (d == 0) throw DomainError("zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational rpow(const Rational& base, long e) {
    if (e < 0) {
        if (base == 0) throw DomainError("zero to a negative power");
        return rpow(1 / base, -e);
    }
    Integer n = ipow(base.get_num(), static_cast<unsigned long>(e));
    Integer d = ipow(base.get_den(), static_cast<unsigned long>(e));
    return make_rational(n, d);
}

inline int sign(const Integer& a) { return sgn(a); }
inline int sign(const Rational& a) { return sgn(a); }

inline std::string to_string(const Integer& a) { return a.get_str(); }

inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    auto parse_int = [&](const std::string& t) {
        std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (t.size() == start || !std::all_of(t.begin() + start, t.end(), ::isdigit))
            throw ParseError(1, "malformed rational '" + s + "'");
        return Integer(t[0] == '+' ? t.substr(1) : t);
    };
    if (slash == std::string::npos) return Rational(parse_int(s));
    Integer n = parse_int(s.substr(0, slash));
    std::string ds = s.substr(slash + 1);
    if (ds.empty() || !std::all_of(ds.begin(), ds.end(), ::isdigit))
        throw ParseError(slash + 2, "malformed denominator in '" + s + "'");
    Integer d(ds);
    if (d == 0) throw ParseError(slash + 2, "zero denominator");
    return make_rational(n, d);
}

// Multiplicity of p in n (n != 0).
inline long ord_p(Integer n, const Integer& p) {
    if (n == 0) throw DomainError("valuation of zero");
    long k = 0;
    Integer r;
    while (true) {
        mpz_tdiv_qr(n.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        ++k;
    }
    return k;
}

inline long ord_p(const Rational& q, const Integer& p) {
    if (q == 0) throw DomainError("valuation of zero");
    return ord_p(q.get_num(), p) - ord_p(q.get_den(), p);
}

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic for n < 3.3e24 with these bases; used only on 64-bit inputs.
inline bool miller_rabin64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline Integer pollard_brent(const Integer& n, unsigned long seed) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    Integer c = seed % 97 + 1, y = seed % 89 + 2, m = 64, g = 1, r = 1, q = 1, x, ys;
    auto f = [&](const Integer& v) {
        Integer t = v * v + c;
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        return t;
    };
    while (g == 1) {
        x = y;
        for (Integer i = 0; i < r; ++i) y = f(y);
        Integer k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (Integer i = 0; i < m && i < r - k; ++i) {
                y = f(y);
                Integer diff = abs(x - y);
                q = q * diff % n;
            }
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd(abs(x - ys), n);
        } while (g == 1);
    }
    return g;
}

inline void factor_into(Integer n, std::map<Integer, long, IntegerLess>& out) {
    for (unsigned long p = 2; p < 1000000 && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            long k = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++k;
            }
            out[Integer(p)] += k;
        }
    }
    if (n == 1) return;
    std::vector<Integer> stack{n};
    while (!stack.empty()) {
        Integer m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        bool prime = m.fits_ulong_p() ? miller_rabin64(m.get_ui())
                                      : mpz_probab_prime_p(m.get_mpz_t(), 40) > 0;
        if (prime) {
            out[m] += 1;
            continue;
        }
        Integer d;
        unsigned long seed = 1;
        do {
            d = pollard_brent(m, seed++);
        } while (d == m || d == 1);
        stack.push_back(d);
        stack.push_back(m / d);
    }
}

}  // namespace detail

inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    if (n.fits_ulong_p()) return detail::miller_rabin64(n.get_ui());
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

// Prime factorization of |n|, n != 0.
inline std::map<Integer, long, IntegerLess> factor_integer(const Integer& n) {
    if (n == 0) throw DomainError("cannot factor zero");
    std::map<Integer, long, IntegerLess> out;
    detail::factor_into(abs(n), out);
    return out;
}

// Exponents of the primes of a nonzero rational (negative for the denominator).
inline std::map<Integer, long, IntegerLess> factor_rational(const Rational& q) {
    if (q == 0) throw DomainError("cannot factor zero");
    auto out = factor_integer(q.get_num());
    for (auto& [p, k] : factor_integer(q.get_den())) out[p] -= k;
    return out;
}

inline std::vector<Integer> primes_up_to(long bound) {
    std::vector<Integer> ps;
    std::vector<bool> sieve(static_cast<std::size_t>(std::max(bound + 1, 2L)), true);
    for (long i = 2; i <= bound; ++i) {
        if (!sieve[i]) continue;
        ps.emplace_back(i);
        for (long j = i * i; j <= bound; j += i) sieve[j] = false;
    }
    return ps;
}

inline bool is_squarefree(const Integer& n) {
    if (n == 0) return false;
    for (auto& [p, k] : factor_integer(n))
        if (k > 1) return false;
    return true;
}

// Legendre symbol (a|p) for an odd prime p.
inline int legendre(const Integer& a, const Integer& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

inline Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Square root of a quadratic residue a modulo an odd prime p (Tonelli-Shanks).
inline Integer sqrt_mod(const Integer& a_in, const Integer& p) {
    Integer a = mod(a_in, p);
    if (a == 0) return 0;
    if (legendre(a, p) != 1) throw DomainError("not a quadratic residue");
    Integer q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Integer z = 2;
    while (legendre(z, p) != -1) ++z;
    auto pw = [&](const Integer& b, const Integer& e) {
        Integer r;
        mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    };
    Integer c = pw(z, q), x = pw(a, (q + 1) / 2), t = pw(a, q);
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        Integer tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Integer b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
        x = x * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return x;
}

}  // namespace gvf
