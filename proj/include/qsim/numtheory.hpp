#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace qsim {

/// Largest modulus accepted by the modular arithmetic helpers; keeps every
/// intermediate product inside unsigned 128-bit arithmetic.
inline constexpr std::uint64_t kModulusCap = std::uint64_t{1} << 62;

/// Euclidean gcd. Rejects gcd(0, 0).
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

/// (a * b) mod N without overflow.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t N);

/// x^e mod N by square-and-multiply, O(log e) multiplications.
std::uint64_t modpow(std::uint64_t x, std::uint64_t e, std::uint64_t N);

/// Least r > 0 with x^r = 1 mod N, by direct iteration. Requires
/// gcd(x, N) = 1 and 1 < x < N. Intended as a classical reference.
std::uint64_t multiplicative_order(std::uint64_t x, std::uint64_t N);

/// Coefficients [a0; a1..aK] of a finite continued fraction together with its
/// convergents b_k / c_k in lowest terms.
struct ContinuedFraction {
    std::vector<std::uint64_t> coefficients;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> convergents;  // (b_k, c_k)
};

/// Exact expansion of num/den, stopping at a zero remainder or after
/// max_terms coefficients. Convergents follow
/// b_{k+2} = a_{k+2} b_{k+1} + b_k, c_{k+2} = a_{k+2} c_{k+1} + c_k.
ContinuedFraction continued_fraction(std::uint64_t num, std::uint64_t den, int max_terms = 64);

/// Walks the convergents of omega / 2^t_bits from k = 1 upward and returns
/// the first denominator c_k in (0, N) with x^{c_k} = 1 mod N; nullopt when
/// none qualifies (in particular for omega = 0).
std::optional<std::uint64_t> extract_order(std::uint64_t omega, int t_bits, std::uint64_t x,
                                           std::uint64_t N);

/// Largest convergent denominator of omega / 2^t_bits that lies in (1, N);
/// the candidate divisor of the order used when extract_order fails.
std::optional<std::uint64_t> order_divisor_candidate(std::uint64_t omega, int t_bits,
                                                     std::uint64_t N);

/// Reduces an exponent R with x^R = 1 mod N to the least positive one, i.e.
/// the multiplicative order of x, by stripping prime factors of R.
std::uint64_t minimize_exponent(std::uint64_t R, std::uint64_t x, std::uint64_t N);

}  // namespace qsim
