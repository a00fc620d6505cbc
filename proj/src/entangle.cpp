#include "qsim/entangle.hpp"

#include <cmath>
#include <stdexcept>

namespace qsim {

bool is_product_2q(const StateVector& s, double tol) {
    if (s.n_qubits() != 2) throw std::domain_error("is_product_2q needs a 2-qubit state");
    const cdouble det = s.amp(0) * s.amp(3) - s.amp(1) * s.amp(2);
    return std::abs(det) <= tol;
}

namespace {

// Rank-1 peel of the leading qubit from a length-2M amplitude vector viewed
// as the 2 x M matrix [top; bottom]. On success writes the dominant left
// factor (u0, u1) and overwrites the first M entries with the right factor.
bool peel_leading(std::vector<cdouble>& amps, std::uint64_t M, double tol, cdouble& u0,
                  cdouble& u1) {
    const cdouble* top = amps.data();
    const cdouble* bottom = amps.data() + M;
    // 2x2 Gram matrix of the rows.
    double g00 = 0.0, g11 = 0.0;
    cdouble g01{0.0, 0.0};
    for (std::uint64_t j = 0; j < M; ++j) {
        g00 += std::norm(top[j]);
        g11 += std::norm(bottom[j]);
        g01 += top[j] * std::conj(bottom[j]);
    }
    const double tr = g00 + g11;
    if (tr <= 0.0) return false;
    const double gap = std::sqrt((g00 - g11) * (g00 - g11) + 4.0 * std::norm(g01));
    const double lam1 = 0.5 * (tr + gap);  // dominant singular value squared
    // Dominant eigenvector of the Gram matrix = the left factor; pick the
    // formulation whose leading component is at least gap/2.
    if (g00 >= g11) {
        u0 = cdouble{lam1 - g11, 0.0};
        u1 = std::conj(g01);
    } else {
        u0 = g01;
        u1 = cdouble{lam1 - g00, 0.0};
    }
    double un = std::sqrt(std::norm(u0) + std::norm(u1));
    if (un < 1e-150) {
        // Degenerate: one row is (numerically) zero.
        u0 = (g00 >= g11) ? 1.0 : 0.0;
        u1 = (g00 >= g11) ? 0.0 : 1.0;
        un = 1.0;
    }
    u0 /= un;
    u1 /= un;
    // Right factor w = u^H A; the rank-1 residual ||A - u w||_F^2 equals the
    // discarded singular weight and is free of the cancellation that the
    // (tr - gap)/2 eigenvalue route suffers.
    std::vector<cdouble> w(M);
    double residual = 0.0;
    for (std::uint64_t j = 0; j < M; ++j) {
        w[j] = std::conj(u0) * top[j] + std::conj(u1) * bottom[j];
        residual += std::norm(top[j] - u0 * w[j]) + std::norm(bottom[j] - u1 * w[j]);
    }
    if (residual > tol * tol * tr) return false;
    double rn = 0.0;
    for (std::uint64_t j = 0; j < M; ++j) rn += std::norm(w[j]);
    rn = std::sqrt(rn);
    for (std::uint64_t j = 0; j < M; ++j) amps[j] = w[j] / rn;
    return true;
}

}  // namespace

FactorResult factor_product(const StateVector& s, double tol) {
    const int n = s.n_qubits();
    if (n < 2) throw std::domain_error("factor_product needs at least 2 qubits");
    std::vector<cdouble> work = s.amps();
    std::vector<StateVector> factors;
    factors.reserve(n);
    std::uint64_t M = s.dim() >> 1;
    for (int q = 0; q + 1 < n; ++q) {
        cdouble u0, u1;
        if (!peel_leading(work, M, tol, u0, u1)) return {false, {}, q};
        factors.push_back(StateVector(1, {u0, u1}));
        work.resize(M);
        M >>= 1;
    }
    factors.push_back(StateVector(1, {work[0], work[1]}));
    // Canonical phases: every factor after the first has its first nonzero
    // amplitude real positive; factor 0 absorbs the leftovers so the tensor
    // reproduces s.
    cdouble carried{1.0, 0.0};
    for (int k = 1; k < n; ++k) {
        auto& f = factors[k].amps();
        const cdouble lead = (std::abs(f[0]) > 1e-12) ? f[0] : f[1];
        const cdouble phase = lead / std::abs(lead);
        f[0] *= std::conj(phase);
        f[1] *= std::conj(phase);
        carried *= phase;
    }
    factors[0].amps()[0] *= carried;
    factors[0].amps()[1] *= carried;
    return {true, std::move(factors), -1};
}

}  // namespace qsim
