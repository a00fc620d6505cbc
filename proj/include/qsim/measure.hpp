#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "qsim/statevec.hpp"

namespace qsim {

/// Probabilities below this are dropped from sampling CDFs.
inline constexpr double kProbabilityFloor = 1e-15;

/// Deterministic random stream: identical seed gives an identical draw
/// sequence on every platform. Single-owner; parallel sweeps derive
/// independent streams per run index.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    /// Uniform double in [0, 1). Consumes exactly one engine value.
    double next_double();

    /// Uniform integer in [0, k). Consumes one engine value.
    std::uint64_t next_below(std::uint64_t k);

    /// Independent stream for a sub-experiment.
    RngStream derived(std::uint64_t run_index) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t draws() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    std::mt19937_64 engine_;
};

/// Outcome of a measurement together with the collapsed state.
struct MeasureResult {
    std::uint64_t outcome;
    StateVector post_state;
};

/// Measures every qubit; outcome j drawn with probability |amp_j|^2 and the
/// state collapses to |j>.
MeasureResult measure_all(const StateVector& s, RngStream& rng);
std::uint64_t measure_all_inplace(StateVector& s, RngStream& rng);

/// Measures the listed qubits (first listed = most significant outcome bit).
/// The post state keeps only consistent components, renormalized; unmeasured
/// qubits stay in superposition.
MeasureResult measure_subset(const StateVector& s, const std::vector<int>& qubits,
                             RngStream& rng);
std::uint64_t measure_subset_inplace(StateVector& s, const std::vector<int>& qubits,
                                     RngStream& rng);

/// Measures the trailing register and hands back the factored-off leading
/// register, skipping the full-size collapse write. Equivalent to
/// measure_subset on the trailing qubits followed by factor_out_trailing.
std::pair<std::uint64_t, StateVector> measure_trailing_and_extract(const StateVector& s,
                                                                   int trailing_qubits,
                                                                   RngStream& rng);

/// Multinomial sample of `shots` outcomes from |amp_j|^2; the state is not
/// modified. One draw per shot.
std::map<std::uint64_t, std::uint64_t> sample_counts(const StateVector& s, std::uint64_t shots,
                                                     RngStream& rng);

/// Projects onto the given outcome of the listed qubits and renormalizes.
/// Throws when the outcome has (numerically) zero probability.
StateVector postselect(const StateVector& s, const std::vector<int>& qubits,
                       std::uint64_t outcome);

}  // namespace qsim
