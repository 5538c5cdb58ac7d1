#pragma once

#include "macloc/rat.hpp"

#include <string>
#include <vector>

namespace macloc {

// Integer partition, stored weakly decreasing with trailing zeros removed.
// Diagrams use the English (matrix) convention: row i (1-based) has part(i)
// cells.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    static Partition parse(const std::string& text); // "2,1"

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int size() const; // |mu|
    int part(int i) const { // 1-based; 0 beyond the length
        return (i >= 1 && i <= length()) ? parts_[static_cast<std::size_t>(i - 1)] : 0;
    }
    std::vector<int> as_tuple(int n) const; // padded with zeros; throws if too long
    Partition conjugate() const;

    bool empty() const { return parts_.empty(); }
    friend bool operator==(const Partition&, const Partition&) = default;
    friend bool operator<(const Partition& a, const Partition& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.parts_ > b.parts_; // reverse-lex within a degree
    }

    std::string str() const;

private:
    std::vector<int> parts_;
};

struct Cell {
    int row = 1; // 1-based
    int col = 1;
};

// Cell statistics.  Throws if the cell lies outside the diagram.
int arm(const Partition& mu, Cell s);
int leg(const Partition& mu, Cell s);
int coarm(const Partition& mu, Cell s);
int coleg(const Partition& mu, Cell s);

std::vector<Cell> cells(const Partition& mu);

// Strict dominance: lam != mu and all partial sums of lam are <= those of mu.
// Requires |lam| = |mu|.
bool dominance_less(const Partition& lam, const Partition& mu);

// mu + m^n: add m to each entry of the n-tuple view.
Partition add_rect(const Partition& mu, int m, int n);

// z_lambda = prod_i i^{m_i} m_i!.
Rat zee(const Partition& lam);

// All partitions of k, in a fixed deterministic order (descending lex).
std::vector<Partition> partitions_of(int k);

} // namespace macloc
