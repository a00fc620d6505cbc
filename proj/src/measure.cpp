#include "qsim/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsim {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Outcome mask/shift table for a qubit subset; first listed qubit maps to the
// most significant outcome bit.
struct SubsetBits {
    std::vector<std::uint64_t> masks;  // state-index mask per subset qubit

    SubsetBits(const StateVector& s, const std::vector<int>& qubits) {
        if (qubits.empty()) throw std::domain_error("measured subset must be nonempty");
        if (qubits.size() > 62) throw std::domain_error("measured subset too large");
        masks.reserve(qubits.size());
        std::uint64_t seen = 0;
        for (int q : qubits) {
            const std::uint64_t m = s.qubit_mask(q);
            if (seen & m) throw std::domain_error("duplicate qubit in measured subset");
            seen |= m;
            masks.push_back(m);
        }
    }

    std::uint64_t outcome_of(std::uint64_t index) const {
        std::uint64_t v = 0;
        for (const std::uint64_t m : masks) v = (v << 1) | ((index & m) != 0);
        return v;
    }
};

std::uint64_t draw_from_weights(const std::vector<double>& w, RngStream& rng) {
    double total = 0.0;
    for (const double p : w)
        if (p >= kProbabilityFloor) total += p;
    if (total <= 0.0) throw std::domain_error("state carries no sampleable probability");
    const double u = rng.next_double() * total;
    double acc = 0.0;
    std::uint64_t last = 0;
    for (std::uint64_t j = 0; j < w.size(); ++j) {
        if (w[j] < kProbabilityFloor) continue;
        acc += w[j];
        last = j;
        if (u < acc) return j;
    }
    return last;  // u landed in the final rounding sliver
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RngStream::next_double() {
    ++counter_;
    return std::ldexp(static_cast<double>(engine_() >> 11), -53);
}

std::uint64_t RngStream::next_below(std::uint64_t k) {
    if (k == 0) throw std::domain_error("next_below(0)");
    const auto v = static_cast<std::uint64_t>(next_double() * static_cast<double>(k));
    return v < k ? v : k - 1;
}

RngStream RngStream::derived(std::uint64_t run_index) const {
    return RngStream(splitmix64(seed_ ^ splitmix64(run_index + 1)));
}

std::uint64_t measure_all_inplace(StateVector& s, RngStream& rng) {
    auto& a = s.amps();
    std::vector<double> w(a.size());
    for (std::uint64_t j = 0; j < a.size(); ++j) w[j] = std::norm(a[j]);
    const std::uint64_t outcome = draw_from_weights(w, rng);
    std::fill(a.begin(), a.end(), cdouble{0.0, 0.0});
    a[outcome] = cdouble{1.0, 0.0};
    return outcome;
}

MeasureResult measure_all(const StateVector& s, RngStream& rng) {
    StateVector post = s;
    const std::uint64_t outcome = measure_all_inplace(post, rng);
    return {outcome, std::move(post)};
}

std::uint64_t measure_subset_inplace(StateVector& s, const std::vector<int>& qubits,
                                     RngStream& rng) {
    const SubsetBits bits(s, qubits);
    auto& a = s.amps();
    std::vector<double> marginal(std::uint64_t{1} << qubits.size(), 0.0);
    for (std::uint64_t j = 0; j < a.size(); ++j) marginal[bits.outcome_of(j)] += std::norm(a[j]);
    const std::uint64_t outcome = draw_from_weights(marginal, rng);
    const double inv = 1.0 / std::sqrt(marginal[outcome]);
    for (std::uint64_t j = 0; j < a.size(); ++j) {
        if (bits.outcome_of(j) == outcome)
            a[j] *= inv;
        else
            a[j] = cdouble{0.0, 0.0};
    }
    return outcome;
}

MeasureResult measure_subset(const StateVector& s, const std::vector<int>& qubits,
                             RngStream& rng) {
    StateVector post = s;
    const std::uint64_t outcome = measure_subset_inplace(post, qubits, rng);
    return {outcome, std::move(post)};
}

std::pair<std::uint64_t, StateVector> measure_trailing_and_extract(const StateVector& s,
                                                                   int trailing_qubits,
                                                                   RngStream& rng) {
    const int lead = s.n_qubits() - trailing_qubits;
    if (trailing_qubits < 1 || lead < 1)
        throw std::domain_error("trailing register size out of range");
    const std::uint64_t block = std::uint64_t{1} << trailing_qubits;
    const auto& a = s.amps();
    std::vector<double> marginal(block, 0.0);
    for (std::uint64_t j = 0; j < a.size(); ++j) marginal[j & (block - 1)] += std::norm(a[j]);
    const std::uint64_t outcome = draw_from_weights(marginal, rng);
    return {outcome, factor_out_trailing(s, trailing_qubits, outcome)};
}

std::map<std::uint64_t, std::uint64_t> sample_counts(const StateVector& s, std::uint64_t shots,
                                                     RngStream& rng) {
    if (shots < 1) throw std::domain_error("shots must be positive");
    const auto& a = s.amps();
    // Compacted CDF over the basis states above the probability floor.
    std::vector<double> cdf;
    std::vector<std::uint64_t> index;
    cdf.reserve(1024);
    index.reserve(1024);
    double acc = 0.0;
    for (std::uint64_t j = 0; j < a.size(); ++j) {
        const double p = std::norm(a[j]);
        if (p < kProbabilityFloor) continue;
        acc += p;
        cdf.push_back(acc);
        index.push_back(j);
    }
    if (cdf.empty()) throw std::domain_error("state carries no sampleable probability");
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        const double u = rng.next_double() * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t pos = std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1);
        ++counts[index[pos]];
    }
    return counts;
}

StateVector postselect(const StateVector& s, const std::vector<int>& qubits,
                       std::uint64_t outcome) {
    const SubsetBits bits(s, qubits);
    StateVector post = s;
    auto& a = post.amps();
    double weight = 0.0;
    for (std::uint64_t j = 0; j < a.size(); ++j)
        if (bits.outcome_of(j) == outcome) weight += std::norm(a[j]);
    if (weight < kProbabilityFloor) throw std::domain_error("postselected outcome has no weight");
    const double inv = 1.0 / std::sqrt(weight);
    for (std::uint64_t j = 0; j < a.size(); ++j) {
        if (bits.outcome_of(j) == outcome)
            a[j] *= inv;
        else
            a[j] = cdouble{0.0, 0.0};
    }
    return post;
}

}  // namespace qsim
