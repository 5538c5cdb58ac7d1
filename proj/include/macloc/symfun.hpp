#pragma once

#include "macloc/partitions.hpp"
#include "macloc/poly_frac.hpp"
#include "macloc/rat.hpp"
#include "macloc/trunc_series.hpp"

#include <map>
#include <vector>

namespace macloc {

enum class Basis { m, e, h, p };

inline const char* basis_name(Basis b) {
    switch (b) {
        case Basis::m: return "m";
        case Basis::e: return "e";
        case Basis::h: return "h";
        case Basis::p: return "p";
    }
    return "?";
}

inline Rat scaled_by(const Rat& k, const Rat& r) { return k * r; }
inline PolyFrac scaled_by(const PolyFrac& k, const Rat& r) { return k.scaled(r); }
inline TruncSeries scaled_by(const TruncSeries& k, const Rat& r) { return k.scaled(r); }

// A symmetric function as a basis-tagged map from partitions to coefficients.
template <class K>
struct SymFn {
    Basis basis = Basis::m;
    std::map<Partition, K> coeffs;

    SymFn() = default;
    explicit SymFn(Basis b) : basis(b) {}

    bool is_zero() const { return coeffs.empty(); }
    int max_degree() const {
        int d = 0;
        for (const auto& [lam, c] : coeffs) d = std::max(d, lam.size());
        return d;
    }
    bool homogeneous() const {
        int d = -1;
        for (const auto& [lam, c] : coeffs) {
            if (d < 0) d = lam.size();
            if (lam.size() != d) return false;
        }
        return true;
    }

    void add_term(const Partition& lam, const K& c) {
        using macloc::is_zero;
        if (is_zero(c)) return;
        auto it = coeffs.find(lam);
        if (it == coeffs.end()) {
            coeffs.emplace(lam, c);
        } else {
            it->second = it->second + c;
            if (is_zero(it->second)) coeffs.erase(it);
        }
    }

    SymFn& operator+=(const SymFn& o) {
        if (basis != o.basis) throw std::invalid_argument("SymFn: basis mismatch in +");
        for (const auto& [lam, c] : o.coeffs) add_term(lam, c);
        return *this;
    }
    friend SymFn operator+(SymFn a, const SymFn& b) { return a += b; }
    SymFn operator-() const {
        SymFn r(basis);
        for (const auto& [lam, c] : coeffs) r.coeffs.emplace(lam, scaled_by(c, Rat(-1)));
        return r;
    }
    friend SymFn operator-(SymFn a, const SymFn& b) { return a += -b; }

    SymFn scaled(const Rat& r) const {
        SymFn out(basis);
        if (r.is_zero()) return out;
        for (const auto& [lam, c] : coeffs) out.coeffs.emplace(lam, scaled_by(c, r));
        return out;
    }

    friend bool operator==(const SymFn& a, const SymFn& b) {
        return a.basis == b.basis && a.coeffs == b.coeffs;
    }
};

// --- conversion machinery (p-basis hub), implemented over Rat ----------

// Expansion of the basis element b_lambda in the target basis; cached.
const SymFn<Rat>& basis_elem_expansion(Basis src, const Partition& lam, Basis target);

// One-generator convenience constructors.
SymFn<Rat> sym_one();
SymFn<Rat> sym_gen(Basis b, const Partition& lam); // b_lambda with coefficient 1

template <class K>
SymFn<K> convert(const SymFn<K>& f, Basis target) {
    if (f.basis == target) return f;
    SymFn<K> out(target);
    for (const auto& [lam, c] : f.coeffs) {
        const SymFn<Rat>& ex = basis_elem_expansion(f.basis, lam, target);
        for (const auto& [mu, r] : ex.coeffs) out.add_term(mu, scaled_by(c, r));
    }
    return out;
}

// Product in Lambda, computed in the p-basis where p_lam * p_mu concatenates.
template <class K>
SymFn<K> mul(const SymFn<K>& f, const SymFn<K>& g) {
    SymFn<K> fp = convert(f, Basis::p);
    SymFn<K> gp = convert(g, Basis::p);
    SymFn<K> out(Basis::p);
    for (const auto& [lam, cf] : fp.coeffs) {
        for (const auto& [mu, cg] : gp.coeffs) {
            std::vector<int> parts = lam.parts();
            parts.insert(parts.end(), mu.parts().begin(), mu.parts().end());
            std::sort(parts.begin(), parts.end(), std::greater<int>());
            out.add_term(Partition(std::move(parts)), cf * cg);
        }
    }
    return convert(out, f.basis);
}

// Expansion of m_lambda into its distinct monomials in n variables.
// Returns exponent vectors of length n.  Partitions with more than n parts
// are killed.
std::vector<std::vector<int>> monomials_of_m(const Partition& lam, int n);

// Image of f in Lambda_n as an explicit exponent-vector map.
template <class K>
std::map<std::vector<int>, K> expand_nvars(const SymFn<K>& f, int n) {
    SymFn<K> fm = convert(f, Basis::m);
    std::map<std::vector<int>, K> out;
    using macloc::is_zero;
    for (const auto& [lam, c] : fm.coeffs) {
        if (lam.length() > n) continue;
        for (auto& e : monomials_of_m(lam, n)) {
            auto it = out.find(e);
            if (it == out.end()) {
                out.emplace(std::move(e), c);
            } else {
                it->second = it->second + c;
                if (is_zero(it->second)) out.erase(it);
            }
        }
    }
    return out;
}

// Negate every exponent vector (x* = x^{-1}).
template <class K>
std::map<std::vector<int>, K> dual_substitute(const std::map<std::vector<int>, K>& p) {
    std::map<std::vector<int>, K> out;
    for (const auto& [e, c] : p) {
        std::vector<int> ne(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
        out.emplace(std::move(ne), c);
    }
    return out;
}

// Test-only style oracle: p_lambda expanded in monomials of deg(lam) dummy
// variables, collected into m-coefficients.  Independent of the
// multiplication-rule route used by basis_elem_expansion.
SymFn<Rat> p_to_m_by_monomial_expansion(const Partition& lam);

} // namespace macloc
