#include "macloc/partitions.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace macloc {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i + 1 < parts_.size(); ++i)
        if (parts_[i] < parts_[i + 1])
            throw std::invalid_argument("Partition: parts must be weakly decreasing");
    for (int p : parts_)
        if (p < 0) throw std::invalid_argument("Partition: negative part");
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
}

Partition Partition::parse(const std::string& text) {
    std::vector<int> ps;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        ps.push_back(std::stoi(tok));
    }
    return Partition(std::move(ps));
}

int Partition::size() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::vector<int> Partition::as_tuple(int n) const {
    if (length() > n) throw std::invalid_argument("Partition: more parts than tuple length");
    std::vector<int> t(static_cast<std::size_t>(n), 0);
    std::copy(parts_.begin(), parts_.end(), t.begin());
    return t;
}

Partition Partition::conjugate() const {
    std::vector<int> c;
    if (parts_.empty()) return Partition();
    c.resize(static_cast<std::size_t>(parts_[0]), 0);
    for (int p : parts_)
        for (int j = 0; j < p; ++j) ++c[static_cast<std::size_t>(j)];
    return Partition(std::move(c));
}

std::string Partition::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << ",";
        os << parts_[i];
    }
    os << ")";
    return os.str();
}

namespace {
void check_cell(const Partition& mu, Cell s) {
    if (s.row < 1 || s.col < 1 || s.col > mu.part(s.row))
        throw std::out_of_range("cell outside diagram");
}
} // namespace

int arm(const Partition& mu, Cell s) {
    check_cell(mu, s);
    return mu.part(s.row) - s.col;
}

int leg(const Partition& mu, Cell s) {
    check_cell(mu, s);
    int l = 0;
    for (int r = s.row + 1; r <= mu.length(); ++r)
        if (mu.part(r) >= s.col) ++l;
    return l;
}

int coarm(const Partition& mu, Cell s) {
    check_cell(mu, s);
    return s.col - 1;
}

int coleg(const Partition& mu, Cell s) {
    check_cell(mu, s);
    return s.row - 1;
}

std::vector<Cell> cells(const Partition& mu) {
    std::vector<Cell> cs;
    for (int i = 1; i <= mu.length(); ++i)
        for (int j = 1; j <= mu.part(i); ++j) cs.push_back(Cell{i, j});
    return cs;
}

bool dominance_less(const Partition& lam, const Partition& mu) {
    if (lam.size() != mu.size())
        throw std::invalid_argument("dominance_less: partitions of unequal size");
    if (lam == mu) return false;
    int sl = 0, sm = 0;
    int len = std::max(lam.length(), mu.length());
    for (int i = 1; i <= len; ++i) {
        sl += lam.part(i);
        sm += mu.part(i);
        if (sl > sm) return false;
    }
    return true;
}

Partition add_rect(const Partition& mu, int m, int n) {
    if (m < 0) throw std::invalid_argument("add_rect: negative m");
    std::vector<int> t = mu.as_tuple(n);
    for (int& p : t) p += m;
    return Partition(std::move(t));
}

Rat zee(const Partition& lam) {
    Rat z(1);
    int mult = 0;
    int prev = -1;
    auto flush = [&]() {
        if (prev > 0 && mult > 0)
            z *= Rat::pow(Rat(prev), mult) * Rat::factorial(mult);
    };
    for (int p : lam.parts()) {
        if (p == prev) {
            ++mult;
        } else {
            flush();
            prev = p;
            mult = 1;
        }
    }
    flush();
    return z;
}

namespace {
void gen_partitions(int rest, int maxpart, std::vector<int>& cur,
                    std::vector<Partition>& out) {
    if (rest == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int p = std::min(rest, maxpart); p >= 1; --p) {
        cur.push_back(p);
        gen_partitions(rest - p, p, cur, out);
        cur.pop_back();
    }
}
} // namespace

std::vector<Partition> partitions_of(int k) {
    std::vector<Partition> out;
    std::vector<int> cur;
    if (k < 0) return out;
    gen_partitions(k, std::max(k, 1), cur, out);
    return out;
}

} // namespace macloc
