#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace macloc {

// Arbitrary-precision rational. Thin wrapper over mpq_class that keeps the
// value canonical (den > 0, gcd(num,den) = 1) at all times.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long n, long d) : v_(n, d) {
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rat(const mpz_class& z) : v_(z) {}

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    // Integer value; throws if not an integer or out of long range.
    long to_long() const {
        if (!is_integer()) throw std::domain_error("Rat: not an integer");
        if (!v_.get_num().fits_slong_p()) throw std::domain_error("Rat: out of long range");
        return v_.get_num().get_si();
    }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }

    Rat inverse() const {
        if (is_zero()) throw std::domain_error("Rat: inverse of zero");
        return Rat(mpq_class(1) / v_);
    }

    std::string str() const { return v_.get_str(); }

    static Rat factorial(long n) {
        mpz_class r;
        mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
        return Rat(r);
    }
    static Rat binom(long n, long k) {
        if (k < 0) return Rat(0);
        mpz_class r;
        mpz_bin_ui(r.get_mpz_t(), mpz_class(n).get_mpz_t(), static_cast<unsigned long>(k));
        return Rat(r);
    }
    static Rat pow(const Rat& b, long e) {
        if (e < 0) return pow(b.inverse(), -e);
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), b.num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), b.den().get_mpz_t(), static_cast<unsigned long>(e));
        Rat r;
        r.v_ = mpq_class(n) / mpq_class(d);
        return r;
    }

private:
    mpq_class v_;
};

inline bool is_zero(const Rat& r) { return r.is_zero(); }

} // namespace macloc
