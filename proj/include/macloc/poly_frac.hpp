#pragma once

#include "macloc/mpoly.hpp"

namespace macloc {

// Reduced fraction of multivariate polynomials over Rat in q, t (and u).
// The denominator is nonzero with positive leading coefficient under the
// graded-lex order, and num/den are coprime.
class PolyFrac {
public:
    PolyFrac() : num_(MPoly()), den_(MPoly::constant(Rat(1))) {}
    PolyFrac(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("PolyFrac: zero denominator");
        reduce();
    }
    explicit PolyFrac(MPoly p) : num_(std::move(p)), den_(MPoly::constant(Rat(1))) {}
    explicit PolyFrac(Rat r) : num_(MPoly::constant(std::move(r))), den_(MPoly::constant(Rat(1))) {}
    PolyFrac(long n) : PolyFrac(Rat(n)) {}

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }

    PolyFrac operator-() const {
        PolyFrac r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    // Arithmetic keeps operands reduced and takes gcds of the parts rather
    // than of the cross products (Henrici's scheme), so the gcd inputs stay
    // small even when denominators share large factors.
    friend PolyFrac operator+(const PolyFrac& a, const PolyFrac& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        MPoly g = MPoly::gcd(a.den_, b.den_);
        if (g.is_constant()) return raw(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
        MPoly ad = a.den_.divexact(g);
        MPoly bd = b.den_.divexact(g);
        MPoly t = a.num_ * bd + b.num_ * ad;
        if (t.is_zero()) return PolyFrac();
        MPoly g2 = MPoly::gcd(t, g);
        if (g2.is_constant()) return raw(std::move(t), ad * b.den_);
        return raw(t.divexact(g2), ad * b.den_.divexact(g2));
    }
    friend PolyFrac operator-(const PolyFrac& a, const PolyFrac& b) { return a + (-b); }
    friend PolyFrac operator*(const PolyFrac& a, const PolyFrac& b) {
        if (a.is_zero() || b.is_zero()) return PolyFrac();
        MPoly g1 = MPoly::gcd(a.num_, b.den_);
        MPoly g2 = MPoly::gcd(b.num_, a.den_);
        const bool c1 = g1.is_constant(), c2 = g2.is_constant();
        return raw((c1 ? a.num_ : a.num_.divexact(g1)) * (c2 ? b.num_ : b.num_.divexact(g2)),
                   (c2 ? a.den_ : a.den_.divexact(g2)) * (c1 ? b.den_ : b.den_.divexact(g1)));
    }
    friend PolyFrac operator/(const PolyFrac& a, const PolyFrac& b) {
        if (b.is_zero()) throw std::domain_error("PolyFrac: division by zero");
        return a * b.inverse();
    }
    PolyFrac& operator+=(const PolyFrac& o) { return *this = *this + o; }
    PolyFrac& operator-=(const PolyFrac& o) { return *this = *this - o; }
    PolyFrac& operator*=(const PolyFrac& o) { return *this = *this * o; }
    PolyFrac& operator/=(const PolyFrac& o) { return *this = *this / o; }

    PolyFrac inverse() const {
        if (is_zero()) throw std::domain_error("PolyFrac: inverse of zero");
        return raw(den_, num_);
    }

    // Cross-multiplication equality; independent of reduction.
    friend bool operator==(const PolyFrac& a, const PolyFrac& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

    PolyFrac scaled(const Rat& c) const { return PolyFrac(num_.scaled(c), den_); }

    PolyFrac subst_u_to_tpow(int n) const {
        return PolyFrac(num_.subst_u_to_tpow(n), den_.subst_u_to_tpow(n));
    }

    // Truncated-series expansion: num * den^{-1} in the given context.
    TruncSeries to_series(const Ctx& ctx) const {
        if (num_.is_zero()) return TruncSeries(ctx);
        return num_.to_series(ctx) * den_.to_series(ctx).inverse();
    }

    std::string str() const {
        if (den_ == MPoly::constant(Rat(1))) return num_.str();
        return "(" + num_.str() + ") / (" + den_.str() + ")";
    }

private:
    // Builds a fraction whose parts are already coprime, skipping the gcd;
    // only normalizes the denominator's leading coefficient.
    static PolyFrac raw(MPoly num, MPoly den) {
        PolyFrac r;
        if (num.is_zero()) return r;
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        Rat lc = r.den_.leading_coeff();
        if (!(lc == Rat(1))) {
            Rat inv = lc.inverse();
            r.num_ = r.num_.scaled(inv);
            r.den_ = r.den_.scaled(inv);
        }
        return r;
    }

    void reduce() {
        if (num_.is_zero()) {
            den_ = MPoly::constant(Rat(1));
            return;
        }
        MPoly g = MPoly::gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = num_.divexact(g);
            den_ = den_.divexact(g);
        }
        // scale so den has leading coefficient 1
        Rat lc = den_.leading_coeff();
        if (!(lc == Rat(1))) {
            Rat inv = lc.inverse();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    MPoly num_, den_;
};

inline bool is_zero(const PolyFrac& f) { return f.is_zero(); }
inline bool frac_eq(const PolyFrac& a, const PolyFrac& b) { return a == b; }

} // namespace macloc
