#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qsim/statevec.hpp"

namespace qsim {

/// Total function {0..2^n-1} -> {0..2^m-1} held as a truth table.
struct ClassicalOracle {
    int in_bits;
    int out_bits;
    std::vector<std::uint64_t> table;  // size 2^in_bits, entries < 2^out_bits

    std::uint64_t operator()(std::uint64_t j) const { return table[j]; }

    static ClassicalOracle from_function(int in_bits, int out_bits,
                                         const std::function<std::uint64_t(std::uint64_t)>& f);

    /// Text format: first line "n m", then one line "j f(j)" per input, all in
    /// decimal. Every input in range must be covered exactly once.
    static ClassicalOracle from_file(const std::string& path);

    static ClassicalOracle from_text(const std::string& text, const std::string& origin = "<text>");

    /// Number of inputs mapped to 1 (useful for m = 1 search oracles).
    std::uint64_t count_ones() const;
};

/// Raised when an oracle table file is malformed; carries a line diagnostic.
struct OracleLoadError : std::runtime_error {
    int line;
    OracleLoadError(const std::string& origin, int line_, const std::string& what_)
        : std::runtime_error(origin + ":" + std::to_string(line_) + ": " + what_), line(line_) {}
};

/// |j>_n (x) |k>_m  ->  |j>_n (x) |k xor f(j)>_m  with the n input qubits
/// leading and the m output qubits trailing. A permutation of amplitudes.
void apply_oracle(StateVector& s, const ClassicalOracle& f);

/// Same map with the input block on qubits [in_lo, in_lo+n) and the output
/// block on qubits [out_lo, out_lo+m); blocks must be disjoint.
void apply_oracle_blocks(StateVector& s, const ClassicalOracle& f, int in_lo, int out_lo);

/// Phase form of an m = 1 oracle: negates every amplitude whose leading
/// in_bits evaluate to 1. Equivalent to the ancilla form with the ancilla
/// held in |->.
void apply_phase_oracle(StateVector& s, const ClassicalOracle& f);

/// |j>_t (x) |k>_n -> |j>_t (x) |(k + x^j) mod N>_n for k < N; identity for
/// k >= N, keeping the map a permutation. Requires gcd(x, N) = 1, 1 < x < N,
/// 2^n >= N.
void apply_modexp(StateVector& s, std::uint64_t x, std::uint64_t N, int t_qubits, int n_qubits);

/// Fourier transform on the leading block of `block_qubits`. The forward
/// kernel is e^{-2*pi*i*j*k/2^q}; the inverse uses the positive sign.
/// Radix-2 butterflies, O(q 2^q) per trailing configuration.
void apply_qft(StateVector& s, int block_qubits, bool inverse = false);

/// Fourier transform on the contiguous qubit block [lo, hi].
void apply_qft_block(StateVector& s, int lo, int hi, bool inverse = false);

/// Inversion about the mean (2|gamma><gamma| - I) on the leading block.
void apply_diffusion(StateVector& s, int block_qubits);

/// Same on the contiguous qubit block [lo, hi].
void apply_diffusion_block(StateVector& s, int lo, int hi);

/// One Grover iteration G = (diffusion on the leading q qubits) after the
/// oracle. Accepts either a q-qubit state (phase-oracle form) or a
/// (q+1)-qubit state whose trailing ancilla is |->.
void grover_step(StateVector& s, const ClassicalOracle& f, int q);

/// Counter-controlled Grover powers: |m>_p (x) |psi>  ->  |m>_p (x) G^m |psi>
/// for every basis value m of the leading p-qubit counter. Returns the number
/// of G applications performed.
std::uint64_t apply_counting(StateVector& s, const ClassicalOracle& f, int p, int q);

}  // namespace qsim
