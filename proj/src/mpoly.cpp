#include "macloc/mpoly.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace macloc {

namespace {
const char* kVarNames[MPoly::kVars] = {"q", "t", "u"};
}

MPoly MPoly::constant(Rat c) {
    MPoly p;
    if (!c.is_zero()) p.terms_.emplace(Exp{0, 0, 0}, std::move(c));
    return p;
}

MPoly MPoly::monomial(Exp e, Rat c) {
    MPoly p;
    if (!c.is_zero()) p.terms_.emplace(e, std::move(c));
    return p;
}

MPoly MPoly::var(int idx, int pow) {
    Exp e{0, 0, 0};
    e[static_cast<std::size_t>(idx)] = pow;
    return monomial(e, Rat(1));
}

bool MPoly::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first == Exp{0, 0, 0});
}

Rat MPoly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw std::domain_error("MPoly: not constant");
    return terms_.begin()->second;
}

int MPoly::degree(int vi) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(vi)]);
    return d;
}

int MPoly::total_degree() const {
    if (terms_.empty()) return -1;
    const Exp& e = terms_.rbegin()->first;
    return e[0] + e[1] + e[2];
}

const MPoly::Exp& MPoly::leading_exp() const {
    if (terms_.empty()) throw std::domain_error("MPoly: leading term of zero");
    return terms_.rbegin()->first;
}

const Rat& MPoly::leading_coeff() const {
    if (terms_.empty()) throw std::domain_error("MPoly: leading term of zero");
    return terms_.rbegin()->second;
}

void MPoly::add_term(const Exp& e, const Rat& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MPoly MPoly::operator-() const {
    MPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            MPoly::Exp e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MPoly MPoly::scaled(const Rat& c) const {
    MPoly r;
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
}

MPoly MPoly::pow(long k) const {
    if (k < 0) throw std::invalid_argument("MPoly: negative power");
    MPoly r = constant(Rat(1));
    MPoly b = *this;
    while (k > 0) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

MPoly MPoly::divexact(const MPoly& d) const {
    if (d.is_zero()) throw std::domain_error("MPoly: division by zero");
    MPoly rem = *this;
    MPoly quot;
    const Exp& de = d.leading_exp();
    const Rat& dc = d.leading_coeff();
    while (!rem.is_zero()) {
        const Exp& re = rem.leading_exp();
        Exp qe;
        for (int i = 0; i < kVars; ++i) {
            qe[static_cast<std::size_t>(i)] =
                re[static_cast<std::size_t>(i)] - de[static_cast<std::size_t>(i)];
            if (qe[static_cast<std::size_t>(i)] < 0)
                throw std::domain_error("MPoly: inexact division");
        }
        Rat qc = rem.leading_coeff() / dc;
        MPoly m = monomial(qe, qc);
        quot += m;
        rem -= m * d;
    }
    return quot;
}

namespace {

// View of p as a univariate polynomial in variable vi with MPoly coefficients.
std::vector<MPoly> coeffs_in(const MPoly& p, int vi) {
    std::vector<MPoly> cs(static_cast<std::size_t>(p.degree(vi) + 1));
    for (const auto& [e, c] : p.terms()) {
        MPoly::Exp r = e;
        int d = r[static_cast<std::size_t>(vi)];
        r[static_cast<std::size_t>(vi)] = 0;
        cs[static_cast<std::size_t>(d)] += MPoly::monomial(r, c);
    }
    return cs;
}

MPoly from_coeffs(const std::vector<MPoly>& cs, int vi) {
    MPoly r;
    for (std::size_t d = 0; d < cs.size(); ++d)
        r += cs[d] * MPoly::var(vi, static_cast<int>(d));
    return r;
}

int top_degree(const std::vector<MPoly>& cs) {
    for (int d = static_cast<int>(cs.size()) - 1; d >= 0; --d)
        if (!cs[static_cast<std::size_t>(d)].is_zero()) return d;
    return -1;
}

// Pseudo-remainder of a by b, both as coefficient vectors in variable vi.
std::vector<MPoly> pseudo_rem(std::vector<MPoly> a, const std::vector<MPoly>& b) {
    int db = top_degree(b);
    const MPoly& lb = b[static_cast<std::size_t>(db)];
    int da = top_degree(a);
    while (da >= db) {
        MPoly la = a[static_cast<std::size_t>(da)];
        for (int i = 0; i <= da; ++i) {
            std::size_t si = static_cast<std::size_t>(i);
            a[si] = a[si] * lb;
            int j = i - (da - db);
            if (j >= 0 && j <= db) a[si] -= la * b[static_cast<std::size_t>(j)];
        }
        a[static_cast<std::size_t>(da)] = MPoly();
        da = top_degree(a);
    }
    a.resize(static_cast<std::size_t>(std::max(da + 1, 1)));
    return a;
}

// ---- heuristic gcd ----------------------------------------------------
// Evaluate both polynomials at a large integer, take the (fast) GMP integer
// gcd, rebuild a polynomial from the balanced radix-xi digits, and verify by
// exact division. Falls back to the pseudo-remainder sequence if it fails.

// Scale to integer coefficients, strip integer content, make the leading
// coefficient positive.
MPoly int_primitive(const MPoly& a) {
    if (a.is_zero()) return a;
    mpz_class l(1);
    for (const auto& [e, c] : a.terms())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    mpz_class g(0);
    for (const auto& [e, c] : a.terms()) {
        mpz_class v = c.num() * (l / c.den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (a.leading_coeff() < Rat(0)) g = -g;
    MPoly r;
    for (const auto& [e, c] : a.terms())
        r += MPoly::monomial(e, Rat(mpz_class(c.num() * (l / c.den()) / g)));
    return r;
}

mpz_class height(const MPoly& a) {
    mpz_class m(0);
    for (const auto& [e, c] : a.terms()) {
        mpz_class v = abs(c.num());
        if (v > m) m = v;
    }
    return m;
}

// Substitute variable vi by the integer xi (coefficients must be integers).
MPoly eval_at(const MPoly& a, int vi, const mpz_class& xi) {
    std::map<int, mpz_class> pw;
    pw[0] = 1;
    MPoly r;
    for (const auto& [e, c] : a.terms()) {
        int d = e[static_cast<std::size_t>(vi)];
        auto it = pw.find(d);
        if (it == pw.end()) {
            mpz_class p;
            mpz_pow_ui(p.get_mpz_t(), xi.get_mpz_t(), static_cast<unsigned long>(d));
            it = pw.emplace(d, std::move(p)).first;
        }
        MPoly::Exp ne = e;
        ne[static_cast<std::size_t>(vi)] = 0;
        r += MPoly::monomial(ne, Rat(mpz_class(c.num() * it->second)));
    }
    return r;
}

// Rebuild a polynomial in variable vi from the balanced base-xi digits of
// gamma's integer coefficients.
MPoly genpoly(MPoly gamma, const mpz_class& xi, int vi) {
    MPoly g;
    mpz_class half = xi / 2;
    for (int i = 0; !gamma.is_zero(); ++i) {
        if (i > 4096) return MPoly();
        MPoly next;
        for (const auto& [e, c] : gamma.terms()) {
            mpz_class r;
            mpz_fdiv_r(r.get_mpz_t(), c.num().get_mpz_t(), xi.get_mpz_t());
            if (r > half) r -= xi;
            if (r != 0) {
                MPoly::Exp de = e;
                de[static_cast<std::size_t>(vi)] = i;
                g += MPoly::monomial(de, Rat(r));
            }
            mpz_class q = (c.num() - r) / xi;
            if (q != 0) next += MPoly::monomial(e, Rat(q));
        }
        gamma = std::move(next);
    }
    return g;
}

// Exact division test over Z[q,t,u]: every quotient coefficient must be an
// integer. (Division over the field Q would ignore integer content, which
// the recursive reconstruction relies on.)
bool divides_z(const MPoly& d, const MPoly& a) {
    MPoly rem = a;
    const MPoly::Exp& de = d.leading_exp();
    const Rat& dc = d.leading_coeff();
    while (!rem.is_zero()) {
        const MPoly::Exp& re = rem.leading_exp();
        MPoly::Exp qe;
        for (std::size_t i = 0; i < static_cast<std::size_t>(MPoly::kVars); ++i) {
            qe[i] = re[i] - de[i];
            if (qe[i] < 0) return false;
        }
        Rat qc = rem.leading_coeff() / dc;
        if (!qc.is_integer()) return false;
        rem -= MPoly::monomial(qe, qc) * d;
    }
    return true;
}

// a and b must be nonzero with integer coefficients.
bool gcd_heu(const MPoly& a, const MPoly& b, MPoly& out) {
    int vi = -1;
    for (int i = MPoly::kVars - 1; i >= 0; --i) {
        if (a.degree(i) > 0 || b.degree(i) > 0) {
            vi = i;
            break;
        }
    }
    if (vi < 0) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.constant_value().num().get_mpz_t(),
                b.constant_value().num().get_mpz_t());
        out = MPoly::constant(Rat(g));
        return true;
    }
    const bool dbg = getenv("MACLOC_GCD_DEBUG") != nullptr;
    mpz_class xi = 2 * std::min(height(a), height(b)) + 29;
    for (int tries = 0; tries < 6; ++tries) {
        MPoly A = eval_at(a, vi, xi);
        MPoly B = eval_at(b, vi, xi);
        if (!A.is_zero() && !B.is_zero()) {
            MPoly gamma;
            if (gcd_heu(A, B, gamma)) {
                if (dbg)
                    fprintf(stderr, "[heu vi=%d try=%d xi=%s] gamma=%s\n", vi, tries,
                            xi.get_str().c_str(), gamma.str().c_str());
                MPoly g = genpoly(std::move(gamma), xi, vi);
                if (!g.is_zero()) {
                    if (dbg) fprintf(stderr, "  candidate g=%s\n", g.str().c_str());
                    if (divides_z(g, a) && divides_z(g, b)) {
                        out = std::move(g);
                        return true;
                    }
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    return false;
}

// Content of the coefficient vector: gcd of the coefficients (recursive).
MPoly vec_content(const std::vector<MPoly>& cs) {
    MPoly g;
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : MPoly::gcd(g, c);
        if (g.is_constant()) break;
    }
    return g.is_zero() ? MPoly() : g;
}

} // namespace

MPoly MPoly::gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant()) return constant(Rat(1));
    static thread_local bool in_verify = false;
    if (!in_verify) {
        MPoly g;
        if (gcd_heu(int_primitive(a), int_primitive(b), g)) {
            MPoly gm = g.is_constant() ? constant(Rat(1)) : g.scaled(g.leading_coeff().inverse());
            if (getenv("MACLOC_GCD_VERIFY")) {
                in_verify = true;
                MPoly prs = gcd(a, b);
                in_verify = false;
                if (!(gm == prs)) {
                    fprintf(stderr, "GCD MISMATCH\n a=%s\n b=%s\n heu=%s\n prs=%s\n",
                            a.str().c_str(), b.str().c_str(), gm.str().c_str(), prs.str().c_str());
                    abort();
                }
            }
            return gm;
        }
    }
    // main variable: highest-index variable appearing in either
    int vi = -1;
    for (int i = kVars - 1; i >= 0; --i) {
        if (a.degree(i) > 0 || b.degree(i) > 0) {
            vi = i;
            break;
        }
    }
    auto ca = coeffs_in(a, vi);
    auto cb = coeffs_in(b, vi);
    MPoly conta = vec_content(ca);
    MPoly contb = vec_content(cb);
    MPoly contg = gcd(conta, contb);
    // primitive parts
    for (auto& c : ca) c = c.is_zero() ? c : c.divexact(conta);
    for (auto& c : cb) c = c.is_zero() ? c : c.divexact(contb);
    // primitive PRS in variable vi
    std::vector<MPoly> f = std::move(ca), g = std::move(cb);
    if (top_degree(f) < top_degree(g)) std::swap(f, g);
    while (true) {
        int dg = top_degree(g);
        if (dg == 0) {
            // nontrivial content already stripped: coprime in vi
            return contg;
        }
        std::vector<MPoly> r = pseudo_rem(f, g);
        if (top_degree(r) < 0) break;
        MPoly cr = vec_content(r);
        for (auto& c : r) c = c.is_zero() ? c : c.divexact(cr);
        f = std::move(g);
        g = std::move(r);
    }
    MPoly result = contg * from_coeffs(g, vi);
    // normalize leading coefficient to be monic-positive in the rational part
    if (!result.is_zero()) result = result.scaled(result.leading_coeff().inverse());
    return result;
}

MPoly MPoly::subst_u_to_tpow(int n) const {
    MPoly r;
    for (const auto& [e, c] : terms_) {
        Exp ne{e[0], e[1] + n * e[2], 0};
        r.add_term(ne, c);
    }
    return r;
}

TruncSeries MPoly::to_series(const Ctx& ctx) const {
    int idx[kVars];
    for (int i = 0; i < kVars; ++i) idx[i] = ctx->index(kVarNames[i]);
    TruncSeries s(ctx);
    ExpVec ev(ctx->size(), 0);
    for (const auto& [e, c] : terms_) {
        std::fill(ev.begin(), ev.end(), 0);
        bool ok = true;
        for (int i = 0; i < kVars; ++i) {
            if (e[static_cast<std::size_t>(i)] == 0) continue;
            if (idx[i] < 0) {
                ok = false;
                break;
            }
            ev[static_cast<std::size_t>(idx[i])] = e[static_cast<std::size_t>(i)];
        }
        if (!ok) throw std::invalid_argument("MPoly: variable missing from series context");
        s.add_term(ev, c);
    }
    return s;
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print in descending grlex order
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << it->second.str();
        for (int i = 0; i < kVars; ++i) {
            int p = it->first[static_cast<std::size_t>(i)];
            if (p == 0) continue;
            os << "*" << kVarNames[i];
            if (p != 1) os << "^" << p;
        }
    }
    return os.str();
}

} // namespace macloc
