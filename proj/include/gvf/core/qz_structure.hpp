#pragma once

#include "gvf/arith/mahler.hpp"
#include "gvf/arith/value.hpp"
#include "gvf/places/field_qz.hpp"

#include <map>
#include <set>
#include <vector>

namespace gvf {

struct QzProductFormula {
    Interval gauss;   // sum over primes of the Gauss-norm valuations
    Interval points;  // sum over closed points of ord_x(f) ht(x)
    Interval arch;    // m(den) - m(num)
    Interval total;
};

// The structure on Q(z) with Gauss norms, closed points weighted by their
// Mahler height, and the circle average.  Archimedean data are certified
// intervals, everything else is exact until the final sum.
class QzStructure {
public:
    explicit QzStructure(double tol = 1e-9) { F_.tol = tol; }

    const QzField& field() const { return F_; }

    QzProductFormula product_formula(const QzRatio& a) const {
        if (a.is_zero()) throw DomainError("product formula of zero");
        QzProductFormula r;
        LogReal g;
        for (auto& p : F_.gauss_primes(a)) g += QzField::gauss_value(a, p);
        r.gauss = g.to_interval();
        r.points = Interval::point(0);
        for (auto& gp : F_.point_polys(a)) r.points += F_.eval(QzPoint{gp, false}, a);
        r.arch = F_.eval(QzArch{}, a);
        r.total = r.gauss + r.points + r.arch;
        return r;
    }

    // sum_v max_i(-v(a_i)); the archimedean part is the circle average of
    // log max_i |a_i|.
    Extended<Interval> height(const std::vector<QzRatio>& a) const {
        if (a.empty()) throw DomainError("height of an empty tuple");
        std::vector<QzRatio> nz;
        for (auto& x : a)
            if (!x.is_zero()) nz.push_back(x);
        if (nz.empty()) return Extended<Interval>::minus_inf();

        std::set<Integer, IntegerLess> primes;
        for (auto& x : nz)
            for (const QPoly* f : {&x.num(), &x.den()})
                for (auto& c : f->coeffs())
                    if (c != 0)
                        for (auto& [p, k] : factor_rational(c)) primes.insert(p);
        LogReal gauss;
        for (auto& p : primes) {
            LogReal m = LogReal{} - QzField::gauss_value(nz[0], p);
            for (std::size_t i = 1; i < nz.size(); ++i) m = max(m, LogReal{} - QzField::gauss_value(nz[i], p));
            gauss += m;
        }

        std::set<ZPoly> points;
        for (auto& x : nz)
            for (auto& g : F_.point_polys(x)) points.insert(g);
        Interval pts = Interval::point(0);
        for (auto& g : points) {
            QzPoint x{g, false};
            long m = -QzField::order_at(x, nz[0]);
            for (std::size_t i = 1; i < nz.size(); ++i) m = std::max(m, -QzField::order_at(x, nz[i]));
            if (m != 0) pts += F_.point_height(x) * Rational(m);
        }

        return gauss.to_interval() + pts + arch_max(nz);
    }
    Interval ht(const QzRatio& x) const { return height({QzRatio::constant(1), x}).value; }

private:
    // (1/2pi) int log max_i |a_i| over the unit circle.
    Interval arch_max(const std::vector<QzRatio>& nz) const {
        QPoly D = nz[0].den();
        for (std::size_t i = 1; i < nz.size(); ++i) {
            QPoly g = poly_gcd(D, nz[i].den());
            D = (D * nz[i].den()).divmod(g).first.monic();
        }
        std::vector<QPoly> R;
        Integer N = 1;
        for (auto& x : nz) {
            R.push_back(x.num() * D.divmod(x.den()).first);
            for (auto& c : R.back().coeffs()) N = lcm(N, c.get_den());
        }
        // A common factor contributes its Mahler measure and would leave common zeros.
        QPoly G = R[0];
        for (std::size_t i = 1; i < R.size(); ++i) G = poly_gcd(G, R[i]);
        Interval common = Interval::point(0);
        if (G.degree() > 0) {
            G = G.monic();
            common = mahler_measure(G, F_.tol);
            N = 1;
            for (auto& f : R) {
                f = f.divmod(G).first;
                for (auto& c : f.coeffs()) N = lcm(N, c.get_den());
            }
        }
        std::vector<ZPoly> Z;
        for (auto& f : R) {
            std::vector<Integer> cs;
            for (auto& c : f.coeffs()) cs.push_back(Rational(c * N).get_num());
            Z.emplace_back(cs);
        }
        return circle_log_max(Z, F_.tol) + common - Interval::log_abs(Rational(N)) - mahler_measure(D, F_.tol);
    }

    QzField F_;
};

inline QzStructure gvf_Qz(double tol = 1e-9) { return QzStructure(tol); }

}  // namespace gvf
