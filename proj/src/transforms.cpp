#include "qsim/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qsim/numtheory.hpp"

namespace qsim {

ClassicalOracle ClassicalOracle::from_function(
    int in_bits, int out_bits, const std::function<std::uint64_t(std::uint64_t)>& f) {
    if (in_bits < 1 || out_bits < 1 || in_bits > 30 || out_bits > 30)
        throw std::domain_error("oracle bit widths out of range");
    const std::uint64_t dim = std::uint64_t{1} << in_bits;
    const std::uint64_t limit = std::uint64_t{1} << out_bits;
    ClassicalOracle o{in_bits, out_bits, std::vector<std::uint64_t>(dim)};
    for (std::uint64_t j = 0; j < dim; ++j) {
        o.table[j] = f(j);
        if (o.table[j] >= limit) throw std::domain_error("oracle output does not fit out_bits");
    }
    return o;
}

ClassicalOracle ClassicalOracle::from_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = 0, m = 0;
    if (!std::getline(in, line)) throw OracleLoadError(origin, 1, "empty oracle table");
    ++lineno;
    {
        std::istringstream hdr(line);
        if (!(hdr >> n >> m) || n < 1 || m < 1 || n > 30 || m > 30)
            throw OracleLoadError(origin, lineno, "header must be 'n m' with positive widths");
        std::string extra;
        if (hdr >> extra) throw OracleLoadError(origin, lineno, "trailing tokens after header");
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    const std::uint64_t limit = std::uint64_t{1} << m;
    std::vector<std::uint64_t> table(dim);
    std::vector<bool> seen(dim, false);
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        std::uint64_t j = 0, v = 0;
        if (!(row >> j >> v)) throw OracleLoadError(origin, lineno, "expected 'j f(j)'");
        std::string extra;
        if (row >> extra) throw OracleLoadError(origin, lineno, "trailing tokens after 'j f(j)'");
        if (j >= dim) throw OracleLoadError(origin, lineno, "input index out of range");
        if (v >= limit) throw OracleLoadError(origin, lineno, "output value does not fit m bits");
        if (seen[j]) throw OracleLoadError(origin, lineno, "duplicate input index");
        seen[j] = true;
        table[j] = v;
    }
    for (std::uint64_t j = 0; j < dim; ++j)
        if (!seen[j])
            throw OracleLoadError(origin, lineno,
                                  "input " + std::to_string(j) + " is unspecified");
    return ClassicalOracle{n, m, std::move(table)};
}

ClassicalOracle ClassicalOracle::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw OracleLoadError(path, 0, "cannot open oracle table");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str(), path);
}

std::uint64_t ClassicalOracle::count_ones() const {
    std::uint64_t t = 0;
    for (auto v : table) t += (v == 1);
    return t;
}

void apply_oracle(StateVector& s, const ClassicalOracle& f) {
    if (s.n_qubits() != f.in_bits + f.out_bits)
        throw std::domain_error("state size does not match oracle arity");
    apply_oracle_blocks(s, f, 0, f.in_bits);
}

void apply_oracle_blocks(StateVector& s, const ClassicalOracle& f, int in_lo, int out_lo) {
    const int n = s.n_qubits();
    if (in_lo < 0 || in_lo + f.in_bits > n || out_lo < 0 || out_lo + f.out_bits > n)
        throw std::domain_error("oracle block out of range");
    const bool disjoint = in_lo + f.in_bits <= out_lo || out_lo + f.out_bits <= in_lo;
    if (!disjoint) throw std::domain_error("oracle input and output blocks overlap");
    const int in_shift = n - in_lo - f.in_bits;    // position of input block LSB
    const int out_shift = n - out_lo - f.out_bits; // position of output block LSB
    const std::uint64_t in_mask = (std::uint64_t{1} << f.in_bits) - 1;
    auto& a = s.amps();
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
        const std::uint64_t j = (i >> in_shift) & in_mask;
        const std::uint64_t fj = f.table[j];
        if (fj == 0) continue;
        const std::uint64_t partner = i ^ (fj << out_shift);
        if (i < partner) std::swap(a[i], a[partner]);
    }
}

void apply_phase_oracle(StateVector& s, const ClassicalOracle& f) {
    if (f.out_bits != 1) throw std::domain_error("phase oracle needs out_bits == 1");
    if (s.n_qubits() < f.in_bits) throw std::domain_error("state smaller than oracle input");
    const int trail = s.n_qubits() - f.in_bits;
    auto& a = s.amps();
    for (std::uint64_t i = 0; i < s.dim(); ++i)
        if (f.table[i >> trail]) a[i] = -a[i];
}

void apply_modexp(StateVector& s, std::uint64_t x, std::uint64_t N, int t_qubits, int n_qubits) {
    if (N < 2) throw std::domain_error("modulus must be at least 2");
    if (x <= 1 || x >= N) throw std::domain_error("base must satisfy 1 < x < N");
    if (gcd(x, N) != 1) throw std::domain_error("base must be coprime to the modulus");
    if (s.n_qubits() != t_qubits + n_qubits)
        throw std::domain_error("state size does not match register sizes");
    if ((std::uint64_t{1} << n_qubits) < N)
        throw std::domain_error("second register cannot hold the modulus");
    const std::uint64_t block = std::uint64_t{1} << n_qubits;
    const std::uint64_t blocks = std::uint64_t{1} << t_qubits;
    auto& a = s.amps();
    std::vector<cdouble> tmp(N);
    std::uint64_t power = 1 % N;  // x^j mod N, advanced one multiply per j
    for (std::uint64_t j = 0; j < blocks; ++j) {
        cdouble* base = a.data() + j * block;
        for (std::uint64_t k = 0; k < N; ++k) {
            std::uint64_t k2 = k + power;
            if (k2 >= N) k2 -= N;
            tmp[k2] = base[k];
        }
        std::copy(tmp.begin(), tmp.end(), base);
        power = mulmod(power, x, N);
    }
}

namespace {

// In-place radix-2 transform over `len` elements at the given stride.
// sign = -1 gives the kernel e^{-2*pi*i*j*k/len}; +1 gives the conjugate.
// Output is scaled by 1/sqrt(len).
void fourier_pow2(cdouble* data, std::uint64_t stride, std::uint64_t len, double sign,
                  std::vector<cdouble>& twiddle) {
    if (len == 1) return;
    // Bit-reversal permutation.
    for (std::uint64_t i = 1, j = 0; i < len; ++i) {
        std::uint64_t bit = len >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i * stride], data[j * stride]);
    }
    // Twiddle table: twiddle[k] = e^{sign*2*pi*i*k/len}, k < len/2.
    if (twiddle.size() != len / 2) {
        twiddle.resize(len / 2);
        for (std::uint64_t k = 0; k < len / 2; ++k)
            twiddle[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * double(k) / double(len));
    }
    for (std::uint64_t m = 2; m <= len; m <<= 1) {
        const std::uint64_t step = len / m;
        for (std::uint64_t k = 0; k < len; k += m) {
            for (std::uint64_t t = 0; t < m / 2; ++t) {
                const cdouble w = twiddle[t * step];
                cdouble& u = data[(k + t) * stride];
                cdouble& v = data[(k + t + m / 2) * stride];
                const cdouble vv = v * w;
                v = u - vv;
                u = u + vv;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(double(len));
    for (std::uint64_t i = 0; i < len; ++i) data[i * stride] *= scale;
}

}  // namespace

void apply_qft_block(StateVector& s, int lo, int hi, bool inverse) {
    const int n = s.n_qubits();
    if (lo < 0 || hi < lo || hi >= n) throw std::domain_error("qft block out of range");
    const int q = hi - lo + 1;
    const int trail_bits = n - 1 - hi;
    const std::uint64_t len = std::uint64_t{1} << q;
    const std::uint64_t stride = std::uint64_t{1} << trail_bits;
    const std::uint64_t lead = std::uint64_t{1} << lo;
    const double sign = inverse ? 1.0 : -1.0;
    auto& a = s.amps();
    std::vector<cdouble> twiddle;
    for (std::uint64_t L = 0; L < lead; ++L)
        for (std::uint64_t T = 0; T < stride; ++T)
            fourier_pow2(a.data() + L * (len * stride) + T, stride, len, sign, twiddle);
}

void apply_qft(StateVector& s, int block_qubits, bool inverse) {
    if (block_qubits < 1 || block_qubits > s.n_qubits())
        throw std::domain_error("qft block out of range");
    apply_qft_block(s, 0, block_qubits - 1, inverse);
}

void apply_diffusion_block(StateVector& s, int lo, int hi) {
    const int n = s.n_qubits();
    if (lo < 0 || hi < lo || hi >= n) throw std::domain_error("diffusion block out of range");
    const int q = hi - lo + 1;
    const std::uint64_t len = std::uint64_t{1} << q;
    const std::uint64_t stride = std::uint64_t{1} << (n - 1 - hi);
    const std::uint64_t lead = std::uint64_t{1} << lo;
    auto& a = s.amps();
    for (std::uint64_t L = 0; L < lead; ++L)
        for (std::uint64_t T = 0; T < stride; ++T) {
            cdouble* base = a.data() + L * (len * stride) + T;
            cdouble mean{0.0, 0.0};
            for (std::uint64_t j = 0; j < len; ++j) mean += base[j * stride];
            mean *= 2.0 / double(len);
            for (std::uint64_t j = 0; j < len; ++j) {
                cdouble& v = base[j * stride];
                v = mean - v;
            }
        }
}

void apply_diffusion(StateVector& s, int block_qubits) {
    if (block_qubits < 1 || block_qubits > s.n_qubits())
        throw std::domain_error("diffusion block out of range");
    apply_diffusion_block(s, 0, block_qubits - 1);
}

namespace detail {

// Grover iteration on a contiguous slice of amplitudes covering the search
// block plus `trail` trailing qubits (the ancilla, when present).
void grover_step_span(cdouble* data, const ClassicalOracle& f, int q, int trail) {
    const std::uint64_t block = std::uint64_t{1} << trail;
    const std::uint64_t dim = std::uint64_t{1} << (q + trail);
    if (trail == 0) {
        for (std::uint64_t j = 0; j < dim; ++j)
            if (f.table[j]) data[j] = -data[j];
    } else {
        // XOR the oracle value into the trailing bit (ancilla form).
        for (std::uint64_t i = 0; i < dim; ++i) {
            if (!f.table[i >> trail]) continue;
            const std::uint64_t partner = i ^ 1;
            if (i < partner) std::swap(data[i], data[partner]);
        }
    }
    // Inversion about the mean on the leading q qubits.
    for (std::uint64_t T = 0; T < block; ++T) {
        cdouble mean{0.0, 0.0};
        for (std::uint64_t j = 0; j < std::uint64_t{1} << q; ++j) mean += data[j * block + T];
        mean *= 2.0 / double(std::uint64_t{1} << q);
        for (std::uint64_t j = 0; j < std::uint64_t{1} << q; ++j) {
            cdouble& v = data[j * block + T];
            v = mean - v;
        }
    }
}

}  // namespace detail

void grover_step(StateVector& s, const ClassicalOracle& f, int q) {
    if (f.out_bits != 1) throw std::domain_error("grover oracle needs out_bits == 1");
    if (f.in_bits != q) throw std::domain_error("oracle arity does not match search block");
    if (s.n_qubits() == q)
        detail::grover_step_span(s.amps().data(), f, q, 0);
    else if (s.n_qubits() == q + 1)
        detail::grover_step_span(s.amps().data(), f, q, 1);
    else
        throw std::domain_error("grover state must have q or q+1 qubits");
}

std::uint64_t apply_counting(StateVector& s, const ClassicalOracle& f, int p, int q) {
    if (f.out_bits != 1) throw std::domain_error("counting oracle needs out_bits == 1");
    if (f.in_bits != q) throw std::domain_error("oracle arity does not match search block");
    int trail;
    if (s.n_qubits() == p + q)
        trail = 0;
    else if (s.n_qubits() == p + q + 1)
        trail = 1;
    else
        throw std::domain_error("counting state must have p+q or p+q+1 qubits");
    const std::uint64_t slice = std::uint64_t{1} << (q + trail);
    const std::uint64_t counters = std::uint64_t{1} << p;
    auto& a = s.amps();
    std::uint64_t applications = 0;
    for (std::uint64_t m = 1; m < counters; ++m) {
        cdouble* base = a.data() + m * slice;
        for (std::uint64_t r = 0; r < m; ++r) detail::grover_step_span(base, f, q, trail);
        applications += m;
    }
    return applications;
}

}  // namespace qsim
