#pragma once

#include "macloc/trunc_series.hpp"

#include <map>
#include <sstream>

namespace macloc {

// Exact rational function of one variable z in the canonical factored form
//   sign * z^shift * prod_c (1 - z^c)^{k_c},   c >= 1.
// This is the closed form taken by lambda-evaluations at fixed points.
class FactoredChar {
public:
    FactoredChar() = default;

    static FactoredChar one() { return FactoredChar(); }
    static FactoredChar monomial(long e, int sign = 1) {
        FactoredChar f;
        f.shift_ = e;
        f.sign_ = sign;
        return f;
    }
    // (1 - z^c)^k with c any nonzero integer; negative bases are normalized
    // via (1 - z^{-c}) = -z^{-c} (1 - z^c).
    static FactoredChar one_minus_pow(long c, long k) {
        if (c == 0) throw std::invalid_argument("FactoredChar: zero weight");
        FactoredChar f;
        if (c < 0) {
            c = -c;
            f.shift_ -= c * k;
            if (k % 2 != 0) f.sign_ = -f.sign_;
        }
        if (k != 0) f.factors_[c] = k;
        return f;
    }

    int sign() const { return sign_; }
    long shift() const { return shift_; }
    const std::map<long, long>& factors() const { return factors_; }
    bool is_one() const { return sign_ == 1 && shift_ == 0 && factors_.empty(); }

    FactoredChar& operator*=(const FactoredChar& o) {
        sign_ *= o.sign_;
        shift_ += o.shift_;
        for (const auto& [c, k] : o.factors_) {
            long& kk = factors_[c];
            kk += k;
            if (kk == 0) factors_.erase(c);
        }
        return *this;
    }
    friend FactoredChar operator*(FactoredChar a, const FactoredChar& b) { return a *= b; }

    FactoredChar inverse() const {
        FactoredChar r;
        r.sign_ = sign_;
        r.shift_ = -shift_;
        for (const auto& [c, k] : factors_) r.factors_[c] = -k;
        return r;
    }

    friend bool operator==(const FactoredChar&, const FactoredChar&) = default;

    // Expansion into a truncated series; exact on the window.  The monomial
    // shift is applied last, so factors are expanded far enough that every
    // retained exponent of the result is exact.
    TruncSeries to_series(const Ctx& ctx, std::string_view var = "z") const {
        int vi = ctx->index(var);
        if (vi < 0) throw std::invalid_argument("FactoredChar: variable not in context");
        // expand on a window widened by |shift| so the final shift is exact
        int pad = static_cast<int>(shift_ < 0 ? -shift_ : shift_);
        Ctx wide = pad > 0 ? widened(ctx, pad) : ctx;
        TruncSeries r = TruncSeries::constant(wide, Rat(sign_));
        for (const auto& [c, k] : factors_) {
            TruncSeries base = TruncSeries::constant(wide, Rat(1)) -
                               TruncSeries::var_pow(wide, var, static_cast<int>(c));
            r *= base.pow(k);
        }
        ExpVec d(ctx->size(), 0);
        d[static_cast<std::size_t>(vi)] = static_cast<int>(shift_);
        r = r.shifted(d);
        return pad > 0 ? r.reclipped(ctx) : r;
    }

    std::string str(const std::string& var = "z") const {
        std::ostringstream os;
        if (sign_ < 0) os << "-";
        bool any = false;
        if (shift_ != 0) {
            os << var << "^" << shift_;
            any = true;
        }
        for (const auto& [c, k] : factors_) {
            if (any) os << "*";
            os << "(1-" << var << "^" << c << ")";
            if (k != 1) os << "^" << k;
            any = true;
        }
        if (!any) os << "1";
        return os.str();
    }

private:
    int sign_ = 1;
    long shift_ = 0;
    std::map<long, long> factors_;
};

} // namespace macloc
