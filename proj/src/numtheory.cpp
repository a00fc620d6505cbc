#include "qsim/numtheory.hpp"

#include <stdexcept>

namespace qsim {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    if (a == 0 && b == 0) throw std::domain_error("gcd(0, 0) is undefined");
    while (b != 0) {
        const std::uint64_t r = a % b;
        a = b;
        b = r;
    }
    return a;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t N) {
    if (N < 2 || N > kModulusCap) throw std::domain_error("modulus out of supported range");
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % N);
}

std::uint64_t modpow(std::uint64_t x, std::uint64_t e, std::uint64_t N) {
    if (N < 2 || N > kModulusCap) throw std::domain_error("modulus out of supported range");
    std::uint64_t base = x % N;
    std::uint64_t acc = 1 % N;
    while (e != 0) {
        if (e & 1) acc = mulmod(acc, base, N);
        base = mulmod(base, base, N);
        e >>= 1;
    }
    return acc;
}

std::uint64_t multiplicative_order(std::uint64_t x, std::uint64_t N) {
    if (x <= 1 || x >= N) throw std::domain_error("order requires 1 < x < N");
    if (gcd(x, N) != 1) throw std::domain_error("order requires gcd(x, N) = 1");
    std::uint64_t acc = x % N;
    std::uint64_t r = 1;
    while (acc != 1) {
        acc = mulmod(acc, x, N);
        ++r;
    }
    return r;
}

ContinuedFraction continued_fraction(std::uint64_t num, std::uint64_t den, int max_terms) {
    if (den == 0) throw std::domain_error("continued fraction needs a positive denominator");
    ContinuedFraction cf;
    std::uint64_t n = num, d = den;
    while (d != 0 && static_cast<int>(cf.coefficients.size()) < max_terms) {
        const std::uint64_t a = n / d;
        const std::uint64_t r = n % d;
        cf.coefficients.push_back(a);
        const std::size_t k = cf.convergents.size();
        std::uint64_t b, c;
        if (k == 0) {
            b = a;
            c = 1;
        } else if (k == 1) {
            b = a * cf.convergents[0].first + 1;
            c = a;
        } else {
            b = a * cf.convergents[k - 1].first + cf.convergents[k - 2].first;
            c = a * cf.convergents[k - 1].second + cf.convergents[k - 2].second;
        }
        cf.convergents.emplace_back(b, c);
        n = d;
        d = r;
    }
    return cf;
}

std::optional<std::uint64_t> extract_order(std::uint64_t omega, int t_bits, std::uint64_t x,
                                           std::uint64_t N) {
    if (t_bits < 1 || t_bits > 62) throw std::domain_error("t_bits out of range");
    if (omega >> t_bits) throw std::domain_error("omega out of range");
    if (omega == 0) return std::nullopt;
    const ContinuedFraction cf = continued_fraction(omega, std::uint64_t{1} << t_bits);
    for (std::size_t k = 1; k < cf.convergents.size(); ++k) {
        const std::uint64_t c = cf.convergents[k].second;
        if (c == 0 || c >= N) continue;
        if (modpow(x, c, N) == 1) return c;
    }
    return std::nullopt;
}

std::optional<std::uint64_t> order_divisor_candidate(std::uint64_t omega, int t_bits,
                                                     std::uint64_t N) {
    if (omega == 0) return std::nullopt;
    const ContinuedFraction cf = continued_fraction(omega, std::uint64_t{1} << t_bits);
    std::optional<std::uint64_t> best;
    for (std::size_t k = 1; k < cf.convergents.size(); ++k) {
        const std::uint64_t c = cf.convergents[k].second;
        if (c > 1 && c < N) best = c;
    }
    return best;
}

std::uint64_t minimize_exponent(std::uint64_t R, std::uint64_t x, std::uint64_t N) {
    if (R == 0 || modpow(x, R, N) != 1)
        throw std::domain_error("minimize_exponent needs x^R = 1 mod N");
    std::vector<std::uint64_t> primes;
    std::uint64_t rest = R;
    for (std::uint64_t p = 2; p * p <= rest; ++p)
        if (rest % p == 0) {
            primes.push_back(p);
            while (rest % p == 0) rest /= p;
        }
    if (rest > 1) primes.push_back(rest);
    for (const std::uint64_t p : primes)
        while (R % p == 0 && modpow(x, R / p, N) == 1) R /= p;
    return R;
}

}  // namespace qsim
