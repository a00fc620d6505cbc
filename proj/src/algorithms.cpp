#include "qsim/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsim/gates.hpp"
#include "qsim/gf2.hpp"
#include "qsim/numtheory.hpp"

namespace qsim {

nlohmann::ordered_json RunRecord::to_json() const {
    nlohmann::ordered_json j;
    j["algorithm"] = algorithm;
    j["seed"] = seed;
    nlohmann::ordered_json ms = nlohmann::ordered_json::array();
    for (const auto& [reg, outcome] : measurements)
        ms.push_back({{"register", reg}, {"outcome", outcome}});
    j["measurements"] = std::move(ms);
    j["iterations"] = iterations;
    j["oracle_calls"] = oracle_calls;
    j["result"] = result;
    return j;
}

namespace {

void emit(const TraceFn& trace, const std::string& label, const StateVector& s) {
    if (trace) trace(label, s);
}

const GateMatrix& hadamard() {
    static const GateMatrix h = standard_gate("H");
    return h;
}

}  // namespace

DeutschResult deutsch(const ClassicalOracle& f, RngStream& rng, const TraceFn& trace) {
    if (f.in_bits != 1 || f.out_bits != 1)
        throw std::domain_error("deutsch needs a 1-bit to 1-bit oracle");
    RunRecord rec;
    rec.algorithm = "deutsch";
    rec.seed = rng.seed();
    StateVector s = basis_state(2, 1);  // |0> (x) |1>
    emit(trace, "psi_0", s);
    apply_hadamard_all(s);
    emit(trace, "psi_1", s);
    apply_oracle(s, f);
    rec.oracle_calls = 1;
    emit(trace, "psi_2", s);
    apply_1q(s, hadamard(), 0);
    emit(trace, "psi_3", s);
    const std::uint64_t delta = measure_subset_inplace(s, {0}, rng);
    rec.measurements.emplace_back("delta", delta);
    const bool constant = (delta == 0);
    rec.result["verdict"] = constant ? "constant" : "balanced";
    return {constant, std::move(rec)};
}

DeutschJozsaResult deutsch_jozsa(const ClassicalOracle& f, RngStream& rng, const TraceFn& trace) {
    if (f.out_bits != 1) throw std::domain_error("deutsch_jozsa needs a 1-bit output oracle");
    const int n = f.in_bits;
    RunRecord rec;
    rec.algorithm = "deutsch-jozsa";
    rec.seed = rng.seed();
    StateVector s = basis_state(n + 1, 1);  // |0>_n (x) |1>
    emit(trace, "psi_0", s);
    apply_hadamard_all(s);
    emit(trace, "psi_1", s);
    apply_oracle(s, f);
    rec.oracle_calls = 1;
    emit(trace, "psi_2", s);
    for (int q = 0; q < n; ++q) apply_1q(s, hadamard(), q);
    emit(trace, "psi_3", s);
    std::vector<int> first(n);
    for (int q = 0; q < n; ++q) first[q] = q;
    const std::uint64_t k = measure_subset_inplace(s, first, rng);
    rec.measurements.emplace_back("k", k);
    const bool constant = (k == 0);
    rec.result["verdict"] = constant ? "constant" : "balanced";
    rec.result["k"] = k;
    return {constant, k, std::move(rec)};
}

SimonResult simon(const ClassicalOracle& f, int max_rounds, RngStream& rng,
                  const TraceFn& trace) {
    const int n = f.in_bits;
    if (f.out_bits != n) throw std::domain_error("simon needs an n-bit to n-bit oracle");
    RunRecord rec;
    rec.algorithm = "simon";
    rec.seed = rng.seed();
    Gf2Basis basis(n);
    std::vector<int> first(n);
    for (int q = 0; q < n; ++q) first[q] = q;
    int rounds = 0;
    while (rounds < max_rounds && basis.rank() < n - 1) {
        ++rounds;
        StateVector s(2 * n);  // |0>_n (x) |0>_n
        for (int q = 0; q < n; ++q) apply_1q(s, hadamard(), q);
        emit(trace, "psi_1", s);
        apply_oracle(s, f);
        ++rec.oracle_calls;
        emit(trace, "psi_2", s);
        std::vector<int> second(n);
        for (int q = 0; q < n; ++q) second[q] = n + q;
        const std::uint64_t delta = measure_subset_inplace(s, second, rng);
        emit(trace, "psi_3", s);
        for (int q = 0; q < n; ++q) apply_1q(s, hadamard(), q);
        emit(trace, "psi_4", s);
        const std::uint64_t omega = measure_subset_inplace(s, first, rng);
        rec.measurements.emplace_back("delta_" + std::to_string(rounds), delta);
        rec.measurements.emplace_back("omega_" + std::to_string(rounds), omega);
        basis.add_if_independent(omega);
    }
    rec.iterations["rounds"] = static_cast<std::uint64_t>(rounds);
    if (basis.rank() < n - 1) {
        rec.result["failure"] = "rank below n-1 within max_rounds";
        return {std::nullopt, std::move(rec)};
    }
    const std::uint64_t s_mask = nullspace_nontrivial(basis);
    if (f.table[0] != f.table[s_mask]) {
        rec.result["failure"] = "recovered mask fails f(0) == f(s)";
        return {std::nullopt, std::move(rec)};
    }
    rec.result["s"] = s_mask;
    return {s_mask, std::move(rec)};
}

namespace {

int bits_for(std::uint64_t N) {
    int n = 0;
    while ((std::uint64_t{1} << n) < N) ++n;
    return n;  // ceil(log2 N)
}

// One pass of the order-finding quantum subroutine for the given base.
// Reuses `work` as the (t+n)-qubit register pair. Returns (delta, omega).
std::pair<std::uint64_t, std::uint64_t> order_run(StateVector& work, std::uint64_t base,
                                                  std::uint64_t N, int t, int n, RngStream& rng,
                                                  const TraceFn& trace) {
    auto& a = work.amps();
    std::fill(a.begin(), a.end(), cdouble{0.0, 0.0});
    const double amp = 1.0 / std::sqrt(double(std::uint64_t{1} << t));
    const std::uint64_t block = std::uint64_t{1} << n;
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << t); ++j) a[j * block] = amp;
    emit(trace, "psi_1", work);
    apply_modexp(work, base, N, t, n);
    emit(trace, "psi_2", work);
    auto [delta, first] = measure_trailing_and_extract(work, n, rng);
    emit(trace, "psi_3", first);
    apply_qft(first, t, /*inverse=*/false);
    emit(trace, "psi_4", first);
    const std::uint64_t omega = measure_all_inplace(first, rng);
    return {delta, omega};
}

}  // namespace

ShorOrderResult shor_order(std::uint64_t x, std::uint64_t N, int max_attempts, RngStream& rng,
                           const TraceFn& trace) {
    if (N < 3 || N > kModulusCap) throw std::domain_error("modulus out of supported range");
    if (x <= 1 || x >= N) throw std::domain_error("order finding needs 1 < x < N");
    if (gcd(x, N) != 1) throw std::domain_error("order finding needs gcd(x, N) = 1");
    const int n = bits_for(N);
    const int t = 2 * n;
    RunRecord rec;
    rec.algorithm = "shor-order";
    rec.seed = rng.seed();
    rec.iterations["attempts"] = 0;

    StateVector work(t + n);
    std::uint64_t multiplier = 1;  // product of divisors already peeled off
    std::uint64_t base = x;        // x^multiplier mod N
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        rec.iterations["attempts"] = static_cast<std::uint64_t>(attempt);
        const auto [delta, omega] = order_run(work, base, N, t, n, rng, trace);
        ++rec.oracle_calls;
        rec.measurements.emplace_back("delta_" + std::to_string(attempt), delta);
        rec.measurements.emplace_back("omega_" + std::to_string(attempt), omega);
        if (omega == 0) continue;  // zero peak carries no information
        if (const auto found = extract_order(omega, t, base, N)) {
            const std::uint64_t r = minimize_exponent(multiplier * *found, x, N);
            if (modpow(x, r, N) == 1) {
                rec.result["order"] = r;
                return {r, std::move(rec)};
            }
            multiplier = 1;
            base = x;
            continue;
        }
        // Only a divisor of the remaining order surfaced: continue with x^c.
        if (const auto c = order_divisor_candidate(omega, t, N)) {
            if (multiplier > N / *c) {  // runaway product; restart clean
                multiplier = 1;
                base = x;
                continue;
            }
            multiplier *= *c;
            base = modpow(base, *c, N);
            if (base == 1) {
                const std::uint64_t r = minimize_exponent(multiplier, x, N);
                rec.result["order"] = r;
                return {r, std::move(rec)};
            }
        }
    }
    rec.result["failure"] = "order extraction failed within max_attempts";
    return {std::nullopt, std::move(rec)};
}

namespace {

bool is_prime(std::uint64_t N) {
    if (N < 2) return false;
    for (std::uint64_t d = 2; d * d <= N; ++d)
        if (N % d == 0) return false;
    return true;
}

// k-th integer root probing for N = b^k with b prime, k >= 2.
bool is_prime_power(std::uint64_t N, std::uint64_t& base_out) {
    for (int k = 2; (std::uint64_t{1} << k) <= N; ++k) {
        const auto guess = static_cast<std::uint64_t>(std::llround(std::pow(double(N), 1.0 / k)));
        for (std::uint64_t b = (guess > 2 ? guess - 1 : 2); b <= guess + 1; ++b) {
            std::uint64_t p = 1;
            bool overflow = false;
            for (int i = 0; i < k && !overflow; ++i) {
                if (p > N / b) overflow = true;
                else p *= b;
            }
            if (!overflow && p == N && is_prime(b)) {
                base_out = b;
                return true;
            }
        }
    }
    return false;
}

}  // namespace

ShorFactorResult shor_factor(std::uint64_t N, int max_outer, RngStream& rng,
                             std::optional<std::uint64_t> forced_x, int order_attempts,
                             const TraceFn& trace) {
    if (N > kModulusCap) throw std::domain_error("modulus out of supported range");
    if (N < 9 || N % 2 == 0) throw std::domain_error("factoring needs an odd N >= 9");
    if (is_prime(N)) throw std::domain_error("N is prime");
    std::uint64_t pp = 0;
    if (is_prime_power(N, pp))
        throw std::domain_error("N is a prime power of " + std::to_string(pp));

    RunRecord rec;
    rec.algorithm = "shor-factor";
    rec.seed = rng.seed();
    rec.iterations["outer_rounds"] = 0;

    for (int round = 1; round <= max_outer; ++round) {
        rec.iterations["outer_rounds"] = static_cast<std::uint64_t>(round);
        const std::uint64_t x = forced_x ? *forced_x : 2 + rng.next_below(N - 3);
        rec.measurements.emplace_back("x_" + std::to_string(round), x);
        const std::uint64_t d = gcd(x, N);
        if (d > 1) {
            rec.result["factors"] = {std::min(d, N / d), std::max(d, N / d)};
            rec.result["x"] = x;
            rec.result["lucky_gcd"] = true;
            return {std::make_pair(std::min(d, N / d), std::max(d, N / d)), x, 0, std::move(rec)};
        }
        auto order = shor_order(x, N, order_attempts, rng, trace);
        rec.oracle_calls += order.record.oracle_calls;
        for (auto& m : order.record.measurements)
            rec.measurements.emplace_back("r" + std::to_string(round) + "_" + m.first, m.second);
        if (!order.order) continue;
        const std::uint64_t r = *order.order;
        if (r % 2 != 0) continue;
        const std::uint64_t half = modpow(x, r / 2, N);
        if (half == N - 1) continue;  // x^{r/2} = -1 mod N
        const std::uint64_t d1 = gcd((half + 1) % N, N);
        const std::uint64_t d2 = gcd((half + N - 1) % N, N);
        for (const std::uint64_t f : {d1, d2}) {
            if (f > 1 && f < N && N % f == 0) {
                const auto lo = std::min(f, N / f);
                const auto hi = std::max(f, N / f);
                rec.result["factors"] = {lo, hi};
                rec.result["x"] = x;
                rec.result["order"] = r;
                return {std::make_pair(lo, hi), x, r, std::move(rec)};
            }
        }
    }
    rec.result["failure"] = "no factor found within max_outer rounds";
    return {std::nullopt, 0, 0, std::move(rec)};
}

GroverSchedule grover_schedule(int n_bits, std::uint64_t t_solutions) {
    const double ratio = double(t_solutions) / double(std::uint64_t{1} << n_bits);
    const double theta = std::asin(std::sqrt(ratio));
    std::uint64_t m = 0;
    if (t_solutions >= 1 && theta > 0.0)
        m = static_cast<std::uint64_t>(std::floor(std::numbers::pi / (4.0 * theta)));
    return {theta, m};
}

GroverResult grover_known(const ClassicalOracle& f, RngStream& rng, const TraceFn& trace) {
    if (f.out_bits != 1) throw std::domain_error("grover needs a 1-bit output oracle");
    const int n = f.in_bits;
    RunRecord rec;
    rec.algorithm = "grover";
    rec.seed = rng.seed();
    const GroverSchedule sched = grover_schedule(n, 1);
    StateVector s = basis_state(n + 1, 1);  // |0>_n (x) |1>
    apply_hadamard_all(s);
    emit(trace, "psi_1", s);
    for (std::uint64_t it = 0; it < sched.m_opt; ++it) {
        grover_step(s, f, n);
        ++rec.oracle_calls;
        emit(trace, "iter_" + std::to_string(it + 1), s);
    }
    std::vector<int> first(n);
    for (int q = 0; q < n; ++q) first[q] = q;
    const std::uint64_t found = measure_subset_inplace(s, first, rng);
    rec.measurements.emplace_back("index", found);
    rec.iterations["grover"] = sched.m_opt;
    nlohmann::ordered_json amps = nlohmann::ordered_json::array();
    for (std::uint64_t j = 1; j <= sched.m_opt + 1; ++j)
        amps.push_back(std::sin((2.0 * double(j) - 1.0) * sched.theta));
    rec.result["found"] = found;
    rec.result["hit"] = (f.table[found] == 1);
    rec.result["theta"] = sched.theta;
    rec.result["iterations"] = sched.m_opt;
    rec.result["analytic_amplitudes"] = std::move(amps);
    return {found, f.table[found] == 1, std::move(rec)};
}

std::uint64_t default_grover_cutoff(int n_bits) {
    return static_cast<std::uint64_t>(
        std::ceil(9.0 * std::sqrt(double(std::uint64_t{1} << n_bits))));
}

GroverUnknownResult grover_unknown(const ClassicalOracle& f, double lambda,
                                   std::uint64_t max_total_iters, RngStream& rng,
                                   const TraceFn& trace) {
    if (f.out_bits != 1) throw std::domain_error("grover needs a 1-bit output oracle");
    if (!(lambda > 1.0 && lambda < 4.0 / 3.0))
        throw std::domain_error("lambda must lie in (1, 4/3)");
    const int n = f.in_bits;
    const double m_cap = std::sqrt(double(std::uint64_t{1} << n));
    RunRecord rec;
    rec.algorithm = "grover-unknown";
    rec.seed = rng.seed();
    double m = 1.0;
    std::uint64_t total_iters = 0;
    std::uint64_t rounds = 0;
    // Rounds with j = 1 apply no Grover iteration, so bound them separately.
    const std::uint64_t round_cap = 8 * (max_total_iters + 8);
    while (total_iters <= max_total_iters && rounds < round_cap) {
        ++rounds;
        const std::uint64_t m_int = std::max<std::uint64_t>(1, std::uint64_t(m));
        const std::uint64_t j = 1 + rng.next_below(m_int);
        StateVector s(n);
        apply_hadamard_all(s);  // phase-oracle form of G
        for (std::uint64_t it = 0; it + 1 < j; ++it) {
            grover_step(s, f, n);
            ++rec.oracle_calls;
            ++total_iters;
        }
        const std::uint64_t i = measure_all_inplace(s, rng);
        rec.measurements.emplace_back("index_" + std::to_string(rounds), i);
        if (f.table[i] == 1) {
            rec.iterations["rounds"] = rounds;
            rec.iterations["grover"] = total_iters;
            rec.result["found"] = i;
            rec.result["grover_iterations"] = total_iters;
            emit(trace, "final", s);
            return {i, std::move(rec)};
        }
        m = std::min(lambda * m, m_cap);
    }
    rec.iterations["rounds"] = rounds;
    rec.iterations["grover"] = total_iters;
    rec.result["no_solution"] = true;
    rec.result["grover_iterations"] = total_iters;
    return {std::nullopt, std::move(rec)};
}

CountResult quantum_count(const ClassicalOracle& f, int p, RngStream& rng, const TraceFn& trace) {
    if (f.out_bits != 1) throw std::domain_error("counting needs a 1-bit output oracle");
    const int n = f.in_bits;
    if (p == 0) p = n + 2;
    if (p < 2) throw std::domain_error("counting needs at least 2 counter qubits");
    RunRecord rec;
    rec.algorithm = "count";
    rec.seed = rng.seed();
    StateVector s(p + n);
    apply_hadamard_all(s);
    emit(trace, "psi_1", s);
    rec.oracle_calls = apply_counting(s, f, p, n);
    emit(trace, "psi_2", s);
    apply_qft(s, p, /*inverse=*/true);
    emit(trace, "psi_3", s);
    std::vector<int> counter(p);
    for (int q = 0; q < p; ++q) counter[q] = q;
    const std::uint64_t l = measure_subset_inplace(s, counter, rng);
    rec.measurements.emplace_back("l", l);
    const std::uint64_t half = std::uint64_t{1} << (p - 1);
    const std::uint64_t folded = (l > half) ? (std::uint64_t{1} << p) - l : l;
    const double omega = double(folded) / double(std::uint64_t{1} << p);
    const double dim = double(std::uint64_t{1} << n);
    const double sin_pw = std::sin(std::numbers::pi * omega);
    const double t_tilde = dim * sin_pw * sin_pw;
    const double bound = (2.0 * std::numbers::pi / double(std::uint64_t{1} << p)) *
                             std::sqrt(t_tilde * (dim - t_tilde)) +
                         (std::numbers::pi * std::numbers::pi /
                          double(std::uint64_t{1} << (2 * p))) *
                             std::abs(dim - 2.0 * t_tilde);
    CountEstimate est{l, folded, omega, t_tilde, bound};
    rec.iterations["counter_qubits"] = static_cast<std::uint64_t>(p);
    rec.result["l"] = l;
    rec.result["l_folded"] = folded;
    rec.result["omega"] = omega;
    rec.result["t_estimate"] = t_tilde;
    rec.result["error_bound"] = bound;
    return {est, std::move(rec)};
}

}  // namespace qsim
