#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qsim/measure.hpp"
#include "qsim/statevec.hpp"
#include "qsim/transforms.hpp"

namespace qsim {

/// Optional observer invoked with labeled intermediate states (used by the
/// CLI's step-by-step narration). Never changes results.
using TraceFn = std::function<void(const std::string& label, const StateVector& state)>;

/// Seeded trace of one algorithm execution.
struct RunRecord {
    std::string algorithm;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::uint64_t>> measurements;
    std::map<std::string, std::uint64_t> iterations;
    std::uint64_t oracle_calls = 0;
    nlohmann::ordered_json result;

    bool failed() const { return result.contains("failure"); }
    nlohmann::ordered_json to_json() const;
};

struct DeutschResult {
    bool constant;
    RunRecord record;
};

/// Single-evaluation test of whether f: {0,1} -> {0,1} is constant.
/// The outcome is deterministic: constant iff the measured bit is 0.
DeutschResult deutsch(const ClassicalOracle& f, RngStream& rng, const TraceFn& trace = {});

struct DeutschJozsaResult {
    bool constant;
    std::uint64_t k_measured;
    RunRecord record;
};

/// Single-evaluation constant/balanced test for f: {0,1}^n -> {0,1} under
/// the promise. Constant iff the measured register reads 0.
DeutschJozsaResult deutsch_jozsa(const ClassicalOracle& f, RngStream& rng,
                                 const TraceFn& trace = {});

struct SimonResult {
    std::optional<std::uint64_t> s;  // xor-mask; nullopt on failure
    RunRecord record;
};

/// Recovers the xor-mask s of f (f(j) = f(k) iff j = k or j xor k = s).
/// Collects independent rows until rank n-1 or max_rounds is exhausted.
SimonResult simon(const ClassicalOracle& f, int max_rounds, RngStream& rng,
                  const TraceFn& trace = {});

struct ShorOrderResult {
    std::optional<std::uint64_t> order;
    RunRecord record;
};

/// Order finding: t = 2n counter qubits over an n-qubit work register,
/// n = ceil(log2 N). Retries up to max_attempts, rerunning with x^c when a
/// measurement only surfaces a divisor c of the order.
ShorOrderResult shor_order(std::uint64_t x, std::uint64_t N, int max_attempts, RngStream& rng,
                           const TraceFn& trace = {});

struct ShorFactorResult {
    std::optional<std::pair<std::uint64_t, std::uint64_t>> factors;
    std::uint64_t x = 0;      // witness used for the returned factors
    std::uint64_t order = 0;  // its multiplicative order (0 for gcd luck)
    RunRecord record;
};

/// Factors an odd composite N that is not a prime power. Each outer round
/// draws x (or uses forced_x), finds its order and applies the even-order /
/// x^{r/2} != -1 conditions.
ShorFactorResult shor_factor(std::uint64_t N, int max_outer, RngStream& rng,
                             std::optional<std::uint64_t> forced_x = std::nullopt,
                             int order_attempts = 8, const TraceFn& trace = {});

/// Iteration schedule for a search with t solutions among 2^n indices.
struct GroverSchedule {
    double theta;        // sin^2(theta) = t / 2^n
    std::uint64_t m_opt; // floor(pi / (4 theta))
};
GroverSchedule grover_schedule(int n_bits, std::uint64_t t_solutions);

struct GroverResult {
    std::uint64_t found = 0;
    bool hit = false;  // f(found) == 1
    RunRecord record;
};

/// Search with a promised unique solution: runs m_opt Grover iterations from
/// the uniform state and measures.
GroverResult grover_known(const ClassicalOracle& f, RngStream& rng, const TraceFn& trace = {});

struct GroverUnknownResult {
    std::optional<std::uint64_t> found;  // nullopt = no-solution verdict
    RunRecord record;
};

/// Search with an unknown number of solutions; the cutoff bounds the total
/// Grover iterations before declaring that no solution exists.
GroverUnknownResult grover_unknown(const ClassicalOracle& f, double lambda,
                                   std::uint64_t max_total_iters, RngStream& rng,
                                   const TraceFn& trace = {});

std::uint64_t default_grover_cutoff(int n_bits);

/// Solution-count estimate from phase estimation over p counter qubits.
struct CountEstimate {
    std::uint64_t l_measured;  // raw counter readout in [0, 2^p)
    std::uint64_t l_folded;    // folded to [0, 2^{p-1}]
    double omega_tilde;        // l_folded / 2^p
    double t_tilde;            // 2^n sin^2(pi * omega_tilde)
    double error_bound;        // theorem bound evaluated at the estimate
};

struct CountResult {
    CountEstimate estimate;
    RunRecord record;
};

/// Estimates |f^{-1}(1)| with p >= 2 counter qubits (p = n + 2 when 0).
CountResult quantum_count(const ClassicalOracle& f, int p, RngStream& rng,
                          const TraceFn& trace = {});

}  // namespace qsim
