#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace qsim {

/// Bitwise inner product modulo 2: popcount(a & b) mod 2.
inline int dot2(std::uint64_t a, std::uint64_t b) { return std::popcount(a & b) & 1; }

/// Row basis over GF(2), kept in row-echelon form. Rows are word bitmasks,
/// eliminated by highest set bit.
class Gf2Basis {
public:
    explicit Gf2Basis(int n_bits);

    /// Reduces `row` against the basis; inserts and returns true when the
    /// reduction is nonzero, otherwise leaves the basis untouched.
    bool add_if_independent(std::uint64_t row);

    int rank() const { return static_cast<int>(rows_.size()); }
    int n_bits() const { return n_bits_; }
    const std::vector<std::uint64_t>& rows() const { return rows_; }

private:
    int n_bits_;
    std::vector<std::uint64_t> rows_;  // descending by leading bit
};

/// For a basis of exactly n-1 independent rows, returns the unique nonzero s
/// with dot2(row, s) = 0 for every row. Throws on insufficient rank.
std::uint64_t nullspace_nontrivial(const Gf2Basis& basis);

}  // namespace qsim
