#include "qsim/gf2.hpp"

#include <stdexcept>

namespace qsim {

namespace {
inline int leading_bit(std::uint64_t v) { return 63 - std::countl_zero(v); }
}

Gf2Basis::Gf2Basis(int n_bits) : n_bits_(n_bits) {
    if (n_bits < 1 || n_bits > 62) throw std::domain_error("gf2 row width out of range");
}

bool Gf2Basis::add_if_independent(std::uint64_t row) {
    if (row >> n_bits_) throw std::domain_error("row wider than the basis");
    for (const std::uint64_t r : rows_) {
        if (row == 0) break;
        if (leading_bit(row) == leading_bit(r)) row ^= r;
    }
    if (row == 0) return false;
    // Insert keeping rows sorted by leading bit, descending.
    auto it = rows_.begin();
    while (it != rows_.end() && leading_bit(*it) > leading_bit(row)) ++it;
    rows_.insert(it, row);
    return true;
}

std::uint64_t nullspace_nontrivial(const Gf2Basis& basis) {
    const int n = basis.n_bits();
    if (basis.rank() != n - 1)
        throw std::domain_error("nullspace extraction needs rank n-1");
    // Mark pivot columns; exactly one column is free.
    std::uint64_t pivot_mask = 0;
    for (const std::uint64_t r : basis.rows()) pivot_mask |= std::uint64_t{1} << leading_bit(r);
    int free_bit = -1;
    for (int b = 0; b < n; ++b)
        if (!(pivot_mask >> b & 1)) {
            free_bit = b;
            break;
        }
    std::uint64_t s = std::uint64_t{1} << free_bit;
    // Back-substitute from the lowest pivot upward.
    for (auto it = basis.rows().rbegin(); it != basis.rows().rend(); ++it) {
        const std::uint64_t row = *it;
        if (dot2(row, s)) s |= std::uint64_t{1} << leading_bit(row);
    }
    return s;
}

}  // namespace qsim
