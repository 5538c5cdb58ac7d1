#pragma once

#include "macloc/rat.hpp"
#include "macloc/trunc_series.hpp"

#include <array>
#include <map>
#include <string>

namespace macloc {

// Multivariate polynomial over Rat in the fixed variables (q, t, u).
// Terms are kept in graded-lex order (largest last), which fixes the
// leading term used by exact division and sign normalization.
class MPoly {
public:
    static constexpr int kVars = 3;
    using Exp = std::array<int, kVars>;

    struct GrlexLess {
        bool operator()(const Exp& a, const Exp& b) const {
            int da = a[0] + a[1] + a[2], db = b[0] + b[1] + b[2];
            if (da != db) return da < db;
            return a < b;
        }
    };
    using TermMap = std::map<Exp, Rat, GrlexLess>;

    MPoly() = default;
    static MPoly constant(Rat c);
    static MPoly monomial(Exp e, Rat c);
    static MPoly var(int idx, int pow = 1); // 0 = q, 1 = t, 2 = u
    static MPoly q(int pow = 1) { return var(0, pow); }
    static MPoly t(int pow = 1) { return var(1, pow); }
    static MPoly u(int pow = 1) { return var(2, pow); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const; // throws unless constant
    const TermMap& terms() const { return terms_; }
    int degree(int vi) const;
    int total_degree() const;
    const Exp& leading_exp() const;
    const Rat& leading_coeff() const;

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

    MPoly scaled(const Rat& c) const;
    MPoly pow(long k) const;

    // Exact division; throws if the division leaves a remainder.
    MPoly divexact(const MPoly& d) const;

    static MPoly gcd(const MPoly& a, const MPoly& b);

    // Substitute u := t^n.
    MPoly subst_u_to_tpow(int n) const;

    // Expand into a truncated series whose context names some of q,t,u.
    TruncSeries to_series(const Ctx& ctx) const;

    std::string str() const;

private:
    void add_term(const Exp& e, const Rat& c);
    TermMap terms_;
};

} // namespace macloc
