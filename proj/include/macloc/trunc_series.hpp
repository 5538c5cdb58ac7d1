#pragma once

#include "macloc/rat.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace macloc {

// Truncation context: an ordered set of "small" variables, each with a
// degree window [floor_v, cap_v].  An optional total cap bounds the sum of
// positive exponents across all variables (used to keep q,t experiments at
// a fixed total degree).
struct SmallVarSet {
    std::vector<std::string> vars;
    std::vector<int> cap;    // D_v >= 0
    std::vector<int> low;    // L_v <= 0
    int total_cap = -1;      // < 0 means unset

    static SmallVarSet single(std::string v, int D, int L = 0) {
        SmallVarSet s;
        s.vars.push_back(std::move(v));
        s.cap.push_back(D);
        s.low.push_back(L);
        return s;
    }
    SmallVarSet& add(std::string v, int D, int L = 0) {
        vars.push_back(std::move(v));
        cap.push_back(D);
        low.push_back(L);
        return *this;
    }
    std::size_t size() const { return vars.size(); }
    int index(std::string_view v) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == v) return static_cast<int>(i);
        return -1;
    }
    bool operator==(const SmallVarSet&) const = default;
};

using Ctx = std::shared_ptr<const SmallVarSet>;

inline Ctx make_ctx(SmallVarSet s) { return std::make_shared<const SmallVarSet>(std::move(s)); }

inline Ctx ctx_z(int D, int L = -64) { return make_ctx(SmallVarSet::single("z", D, L)); }
inline Ctx ctx_qt(int Dq, int Dt, int total = -1, int Lt = 0) {
    SmallVarSet s;
    s.add("q", Dq).add("t", Dt, Lt);
    s.total_cap = total;
    return make_ctx(s);
}

inline bool same_ctx(const Ctx& a, const Ctx& b) {
    return a == b || (a && b && *a == *b);
}

using ExpVec = std::vector<int>;

// Truncated multivariate Laurent series with exact rational coefficients.
// No zero coefficients are stored; every exponent lies inside the window.
// Terms falling outside the window are silently clipped, so results are
// exact only on retained exponents.
class TruncSeries {
public:
    TruncSeries() = default;
    explicit TruncSeries(Ctx c) : ctx_(std::move(c)) {}

    static TruncSeries constant(Ctx c, Rat v) {
        TruncSeries s(std::move(c));
        s.insert(ExpVec(s.ctx_->size(), 0), std::move(v));
        return s;
    }
    static TruncSeries monomial(Ctx c, ExpVec e, Rat v = Rat(1)) {
        TruncSeries s(std::move(c));
        s.insert(std::move(e), std::move(v));
        return s;
    }
    // Monomial in a single named variable of the context.
    static TruncSeries var_pow(const Ctx& c, std::string_view v, int e, Rat coeff = Rat(1)) {
        int i = c->index(v);
        if (i < 0) throw std::invalid_argument("TruncSeries: unknown variable " + std::string(v));
        ExpVec ev(c->size(), 0);
        ev[static_cast<std::size_t>(i)] = e;
        return monomial(c, std::move(ev), std::move(coeff));
    }

    const Ctx& ctx() const { return ctx_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<ExpVec, Rat>& terms() const { return terms_; }

    bool in_window(const ExpVec& e) const {
        const auto& c = *ctx_;
        int possum = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] > c.cap[i] || e[i] < c.low[i]) return false;
            if (e[i] > 0) possum += e[i];
        }
        if (c.total_cap >= 0 && possum > c.total_cap) return false;
        return true;
    }

    void insert(ExpVec e, Rat v) { add_term(e, v); }
    void add_term(const ExpVec& e, const Rat& v) {
        if (v.is_zero() || !in_window(e)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Rat coeff(const ExpVec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }
    Rat constant_coeff() const { return coeff(ExpVec(ctx_->size(), 0)); }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return same_ctx(a.ctx_, b.ctx_) && a.terms_ == b.terms_;
    }

    TruncSeries& operator+=(const TruncSeries& o) {
        check_ctx(o);
        for (const auto& [e, v] : o.terms_) add_term(e, v);
        return *this;
    }
    TruncSeries& operator-=(const TruncSeries& o) {
        check_ctx(o);
        for (const auto& [e, v] : o.terms_) add_term(e, -v);
        return *this;
    }
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    TruncSeries operator-() const {
        TruncSeries r(ctx_);
        for (const auto& [e, v] : terms_) r.terms_.emplace(e, -v);
        return r;
    }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        a.check_ctx(b);
        TruncSeries r(a.ctx_);
        ExpVec e(a.ctx_->size());
        for (const auto& [ea, va] : a.terms_) {
            for (const auto& [eb, vb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, va * vb);
            }
        }
        return r;
    }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

    TruncSeries scaled(const Rat& c) const {
        TruncSeries r(ctx_);
        if (c.is_zero()) return r;
        for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
        return r;
    }

    // Multiply by a single monomial (shift exponents, clip to window).
    TruncSeries shifted(const ExpVec& d, const Rat& c = Rat(1)) const {
        TruncSeries r(ctx_);
        ExpVec e(ctx_->size());
        for (const auto& [ea, v] : terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + d[i];
            r.add_term(e, v * c);
        }
        return r;
    }

    // Adams operation on exponents: every exponent vector scaled by j.
    TruncSeries exponents_scaled(int j) const {
        TruncSeries r(ctx_);
        ExpVec e(ctx_->size());
        for (const auto& [ea, v] : terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] * j;
            r.add_term(e, v);
        }
        return r;
    }

    // Dualization x* = x^{-1}: negate every exponent.
    TruncSeries dual() const { return exponents_scaled(-1); }

    TruncSeries pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        TruncSeries r = constant(ctx_, Rat(1));
        TruncSeries b = *this;
        while (k > 0) {
            if (k & 1) r *= b;
            b *= b;
            k >>= 1;
        }
        return r;
    }

    // Multiplicative inverse within the window.  The lex-minimal monomial m0
    // (in the context's variable order) is factored out first, so the
    // expansion runs in the lex-positive direction: monomials, 1 - z^{-1},
    // and t - q (as t^{-1} sum (q/t)^k) all invert.  Lex-positive residual
    // monomials are nilpotent under the window truncation.
    TruncSeries inverse() const {
        if (terms_.empty()) throw std::domain_error("TruncSeries: inverse of zero");
        // map order is already lexicographic in the variable order
        ExpVec m0 = terms_.begin()->first;
        Rat c0 = terms_.begin()->second;
        // residual = (this / (c0 * x^m0)) - 1: lex-positive, no constant term
        TruncSeries u(ctx_);
        ExpVec e(ctx_->size());
        for (const auto& [ea, v] : terms_) {
            if (ea == m0) continue;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] - m0[i];
            u.add_term(e, v / c0);
        }
        // 1/(1+u) = sum (-u)^k; u has strictly positive degree so it nilpotent
        // under truncation
        TruncSeries acc = constant(ctx_, Rat(1));
        TruncSeries res = acc;
        TruncSeries upow = u;
        int guard = 0;
        while (!upow.is_zero()) {
            if (++guard > 100000) throw std::runtime_error("TruncSeries: inverse did not terminate");
            res += (guard % 2 == 1) ? -upow : upow;
            upow *= u;
        }
        ExpVec neg(m0.size());
        for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -m0[i];
        TruncSeries out = res.shifted(neg, c0.inverse());
        if (out.is_zero() && !res.is_zero())
            throw std::domain_error("TruncSeries: inverse falls outside the window");
        return out;
    }

    // Re-clip into a (usually narrower) context with the same variable list.
    TruncSeries reclipped(const Ctx& c) const {
        if (c->vars != ctx_->vars) throw std::invalid_argument("TruncSeries: reclip variable mismatch");
        TruncSeries r(c);
        for (const auto& [e, v] : terms_) r.add_term(e, v);
        return r;
    }

    // Restriction to the terms of total degree <= d (counting all exponents).
    TruncSeries total_degree_slice(int d) const {
        TruncSeries r(ctx_);
        for (const auto& [e, v] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            if (s <= d) r.terms_.emplace(e, v);
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, v] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << v.str();
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                os << "*" << ctx_->vars[i];
                if (e[i] != 1) os << "^" << e[i];
            }
        }
        return os.str();
    }

private:
    void check_ctx(const TruncSeries& o) const {
        if (!same_ctx(ctx_, o.ctx_))
            throw std::invalid_argument("TruncSeries: context mismatch");
    }

    Ctx ctx_;
    std::map<ExpVec, Rat> terms_;
};

inline bool is_zero(const TruncSeries& s) { return s.is_zero(); }

// Widened copy of a context: caps raised and floors lowered by pad.
inline Ctx widened(const Ctx& c, int pad) {
    SmallVarSet s = *c;
    for (std::size_t i = 0; i < s.size(); ++i) {
        s.cap[i] += pad;
        s.low[i] -= pad;
    }
    if (s.total_cap >= 0) s.total_cap += pad;
    return make_ctx(std::move(s));
}

} // namespace macloc
