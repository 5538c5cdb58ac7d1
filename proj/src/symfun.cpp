#include "macloc/symfun.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>

namespace macloc {

SymFn<Rat> sym_one() {
    SymFn<Rat> f(Basis::m);
    f.add_term(Partition(), Rat(1));
    return f;
}

SymFn<Rat> sym_gen(Basis b, const Partition& lam) {
    SymFn<Rat> f(b);
    f.add_term(lam, Rat(1));
    return f;
}

namespace {

std::mutex g_cache_mutex;

// --- p-basis expansions of e_k and h_k via Newton recurrences ----------

SymFn<Rat> mul_p(const SymFn<Rat>& f, const SymFn<Rat>& g) {
    SymFn<Rat> out(Basis::p);
    for (const auto& [lam, cf] : f.coeffs) {
        for (const auto& [mu, cg] : g.coeffs) {
            std::vector<int> parts = lam.parts();
            parts.insert(parts.end(), mu.parts().begin(), mu.parts().end());
            std::sort(parts.begin(), parts.end(), std::greater<int>());
            out.add_term(Partition(std::move(parts)), cf * cg);
        }
    }
    return out;
}

// e_k or h_k in the p-basis.
const SymFn<Rat>& eh_in_p(Basis b, int k) {
    static std::map<std::pair<Basis, int>, SymFn<Rat>> cache;
    auto key = std::make_pair(b, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    SymFn<Rat> r(Basis::p);
    if (k == 0) {
        r.add_term(Partition(), Rat(1));
    } else {
        // e_k = (1/k) sum_j (-1)^{j-1} p_j e_{k-j};  h_k = (1/k) sum_j p_j h_{k-j}
        for (int j = 1; j <= k; ++j) {
            SymFn<Rat> pj = sym_gen(Basis::p, Partition({j}));
            SymFn<Rat> term = mul_p(pj, eh_in_p(b, k - j));
            Rat sign = (b == Basis::e && j % 2 == 0) ? Rat(-1) : Rat(1);
            r += term.scaled(sign / Rat(k));
        }
    }
    return cache.emplace(key, std::move(r)).first->second;
}

// Product-basis element (e_lambda or h_lambda) in the p-basis.
SymFn<Rat> prod_basis_in_p(Basis b, const Partition& lam) {
    SymFn<Rat> r = sym_gen(Basis::p, Partition());
    for (int part : lam.parts()) r = mul_p(r, eh_in_p(b, part));
    return r;
}

// p_lambda in the m-basis, via the rule
//   m_mu * p_r = sum_v mult_nu(v+r) m_nu,  nu = mu - {v} + {v+r},
// folded over the parts of lambda.
SymFn<Rat> p_in_m(const Partition& lam) {
    SymFn<Rat> cur(Basis::m);
    cur.add_term(Partition(), Rat(1));
    for (int r : lam.parts()) {
        SymFn<Rat> next(Basis::m);
        for (const auto& [mu, c] : cur.coeffs) {
            // distinct values of mu plus one virtual zero slot
            std::vector<int> values = mu.parts();
            values.push_back(0);
            values.erase(std::unique(values.begin(), values.end()), values.end());
            for (int v : values) {
                std::vector<int> parts = mu.parts();
                if (v > 0) parts.erase(std::find(parts.begin(), parts.end(), v));
                parts.push_back(v + r);
                std::sort(parts.begin(), parts.end(), std::greater<int>());
                Partition nu(std::move(parts));
                int mult = 0;
                for (int pp : nu.parts())
                    if (pp == v + r) ++mult;
                next.add_term(nu, c * Rat(mult));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

using Mat = std::vector<std::vector<Rat>>;

Mat invert(Mat a) {
    std::size_t n = a.size();
    Mat inv(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rat(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::runtime_error("symfun: singular transition matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rat d = a[col][col].inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] *= d;
            inv[col][j] *= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rat f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

// Expansion of b_lambda in the p basis, for any basis b.
SymFn<Rat> to_p(Basis src, const Partition& lam);

// Per-degree matrix expressing each p_lambda in basis `target`:
// row = p_lambda, column = target_mu, both indexed by partitions_of(deg).
const Mat& p_to_basis_matrix(Basis target, int deg) {
    static std::map<std::pair<Basis, int>, Mat> cache;
    auto key = std::make_pair(target, deg);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto parts = partitions_of(deg);
    std::size_t n = parts.size();
    Mat fwd(n, std::vector<Rat>(n, Rat(0))); // target_mu in p-basis
    for (std::size_t i = 0; i < n; ++i) {
        SymFn<Rat> ex = to_p(target, parts[i]);
        for (std::size_t j = 0; j < n; ++j) {
            auto f = ex.coeffs.find(parts[j]);
            if (f != ex.coeffs.end()) fwd[i][j] = f->second;
        }
    }
    // p = fwd^{-1} applied to target: p_lambda = sum_mu inv[.][.] target_mu,
    // where inv is the inverse transpose bookkeeping below
    Mat inv = invert(std::move(fwd));
    // inv[i][j]: coefficient of p_... careful: fwd[i][j] = coeff of p_j in t_i,
    // i.e. t = fwd p (as column vectors of basis elements).  Then
    // p = fwd^{-1} t, so coeff of t_j in p_i is inv[i][j] with inv = fwd^{-1}
    // transposed appropriately: (fwd^{-1})_{ij}.
    return cache.emplace(key, std::move(inv)).first->second;
}

SymFn<Rat> to_p(Basis src, const Partition& lam) {
    switch (src) {
        case Basis::p:
            return sym_gen(Basis::p, lam);
        case Basis::e:
        case Basis::h:
            return prod_basis_in_p(src, lam);
        case Basis::m: {
            // invert the p->m expansion degree by degree
            int deg = lam.size();
            auto parts = partitions_of(deg);
            // matrix M[i][j] = coeff of m_j in p_i
            static std::map<int, Mat> cache; // inverse: m in p
            static std::map<int, std::vector<Partition>> pcache;
            auto it = cache.find(deg);
            if (it == cache.end()) {
                std::size_t n = parts.size();
                Mat fwd(n, std::vector<Rat>(n, Rat(0)));
                for (std::size_t i = 0; i < n; ++i) {
                    SymFn<Rat> ex = p_in_m(parts[i]);
                    for (std::size_t j = 0; j < n; ++j) {
                        auto f = ex.coeffs.find(parts[j]);
                        if (f != ex.coeffs.end()) fwd[i][j] = f->second;
                    }
                }
                it = cache.emplace(deg, invert(std::move(fwd))).first;
                pcache.emplace(deg, parts);
            }
            const Mat& inv = it->second;
            const auto& ps = pcache[deg];
            std::size_t row = 0;
            while (row < ps.size() && !(ps[row] == lam)) ++row;
            // m_lam = sum_j inv-transpose ... : m = fwd^{-1} p with
            // fwd[i][j] = coeff of m_j in p_i, so m_j = sum_i (fwd^{-1})[j][i]?
            // Using p = fwd m  =>  m = fwd^{-1} p: coeff of p_i in m_row is
            // inv[row][i].
            SymFn<Rat> out(Basis::p);
            for (std::size_t i = 0; i < ps.size(); ++i) out.add_term(ps[i], inv[row][i]);
            return out;
        }
    }
    throw std::logic_error("to_p: unknown basis");
}

SymFn<Rat> from_p(const Partition& lam, Basis target) {
    if (target == Basis::p) return sym_gen(Basis::p, lam);
    if (target == Basis::m) return p_in_m(lam);
    int deg = lam.size();
    auto parts = partitions_of(deg);
    const Mat& inv = p_to_basis_matrix(target, deg);
    std::size_t row = 0;
    while (row < parts.size() && !(parts[row] == lam)) ++row;
    SymFn<Rat> out(target);
    for (std::size_t i = 0; i < parts.size(); ++i) out.add_term(parts[i], inv[row][i]);
    return out;
}

} // namespace

const SymFn<Rat>& basis_elem_expansion(Basis src, const Partition& lam, Basis target) {
    static std::map<std::tuple<Basis, Basis, Partition>, SymFn<Rat>> cache;
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto key = std::make_tuple(src, target, lam);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    SymFn<Rat> in_p = to_p(src, lam);
    SymFn<Rat> out(target);
    for (const auto& [mu, c] : in_p.coeffs) {
        SymFn<Rat> ex = from_p(mu, target);
        out += ex.scaled(c);
    }
    return cache.emplace(std::move(key), std::move(out)).first->second;
}

std::vector<std::vector<int>> monomials_of_m(const Partition& lam, int n) {
    std::vector<std::vector<int>> out;
    if (lam.length() > n) return out;
    std::vector<int> e = lam.as_tuple(n);
    std::sort(e.begin(), e.end());
    do {
        out.push_back(e);
    } while (std::next_permutation(e.begin(), e.end()));
    return out;
}

SymFn<Rat> p_to_m_by_monomial_expansion(const Partition& lam) {
    int n = std::max(lam.size(), 1);
    // expand prod_i (x_1^{lam_i} + ... + x_n^{lam_i}) over all index tuples
    std::map<std::vector<int>, Rat> mono;
    std::vector<int> exp(static_cast<std::size_t>(n), 0);
    std::vector<int> choice(static_cast<std::size_t>(lam.length()), 0);
    while (true) {
        std::fill(exp.begin(), exp.end(), 0);
        for (int i = 0; i < lam.length(); ++i)
            exp[static_cast<std::size_t>(choice[static_cast<std::size_t>(i)])] += lam.part(i + 1);
        mono[exp] += Rat(1);
        int pos = 0;
        while (pos < lam.length()) {
            if (++choice[static_cast<std::size_t>(pos)] < n) break;
            choice[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == lam.length()) break;
        if (lam.length() == 0) break;
    }
    SymFn<Rat> out(Basis::m);
    for (const auto& [e, c] : mono) {
        bool sorted_desc = true;
        for (std::size_t i = 0; i + 1 < e.size(); ++i)
            if (e[i] < e[i + 1]) sorted_desc = false;
        if (!sorted_desc) continue;
        std::vector<int> parts(e.begin(), e.end());
        out.add_term(Partition(std::move(parts)), c);
    }
    return out;
}

} // namespace macloc
