#include "qsim/gates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsim {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Matrix adjoint(const Matrix& u) {
    Matrix a(u[0].size(), std::vector<cdouble>(u.size()));
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < u[0].size(); ++j) a[j][i] = std::conj(u[i][j]);
    return a;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    Matrix c(a.size(), std::vector<cdouble>(b[0].size(), cdouble{0.0, 0.0}));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            const cdouble aik = a[i][k];
            for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += aik * b[k][j];
        }
    return c;
}

double max_dev_from_identity(const Matrix& m) {
    double dev = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[0].size(); ++j) {
            const cdouble want = (i == j) ? cdouble{1.0, 0.0} : cdouble{0.0, 0.0};
            dev = std::max(dev, std::abs(m[i][j] - want));
        }
    return dev;
}

}  // namespace

GateMatrix standard_gate(const std::string& name) {
    std::string u;
    for (char c : name) u.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (u == "H")
        return {1, {{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}}};
    if (u == "X") return {1, {{0.0, 1.0}, {1.0, 0.0}}};
    if (u == "Y")
        return {1, {{cdouble{0, 0}, cdouble{0, -1}}, {cdouble{0, 1}, cdouble{0, 0}}}};
    if (u == "Z") return {1, {{1.0, 0.0}, {0.0, -1.0}}};
    if (u == "I") return {1, {{1.0, 0.0}, {0.0, 1.0}}};
    if (u == "CNOT")
        return {2,
                {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}};
    throw std::domain_error("unknown gate name: " + name);
}

bool is_unitary(const Matrix& u, double tol) {
    if (u.empty() || u.size() != u[0].size()) return false;
    const Matrix adj = adjoint(u);
    return max_dev_from_identity(matmul(u, adj)) <= tol &&
           max_dev_from_identity(matmul(adj, u)) <= tol;
}

void apply_1q(StateVector& s, const GateMatrix& g, int qubit) {
    if (g.k_qubits != 1) throw std::domain_error("apply_1q needs a single-qubit gate");
    const std::uint64_t mask = s.qubit_mask(qubit);
    const std::uint64_t lo = mask - 1;
    const std::uint64_t hi = ~lo;
    const cdouble m00 = g.entries[0][0], m01 = g.entries[0][1];
    const cdouble m10 = g.entries[1][0], m11 = g.entries[1][1];
    auto& a = s.amps();
    const std::uint64_t half = s.dim() >> 1;
    for (std::uint64_t i = 0; i < half; ++i) {
        const std::uint64_t i0 = ((i & hi) << 1) | (i & lo);
        const std::uint64_t i1 = i0 | mask;
        const cdouble a0 = a[i0], a1 = a[i1];
        a[i0] = m00 * a0 + m01 * a1;
        a[i1] = m10 * a0 + m11 * a1;
    }
}

void apply_hadamard_all(StateVector& s) {
    auto& a = s.amps();
    const std::uint64_t dim = s.dim();
    for (std::uint64_t mask = 1; mask < dim; mask <<= 1) {
        const std::uint64_t lo = mask - 1;
        const std::uint64_t hi = ~lo;
        for (std::uint64_t i = 0; i < dim / 2; ++i) {
            const std::uint64_t i0 = ((i & hi) << 1) | (i & lo);
            const std::uint64_t i1 = i0 | mask;
            const cdouble a0 = a[i0], a1 = a[i1];
            a[i0] = (a0 + a1) * kInvSqrt2;
            a[i1] = (a0 - a1) * kInvSqrt2;
        }
    }
}

void apply_cnot(StateVector& s, int control, int target) {
    if (control == target) throw std::domain_error("cnot control equals target");
    const std::uint64_t cmask = s.qubit_mask(control);
    const std::uint64_t tmask = s.qubit_mask(target);
    auto& a = s.amps();
    // Iterate indices with control bit set and target bit clear; swap with partner.
    for (std::uint64_t i = 0; i < s.dim(); ++i)
        if ((i & cmask) && !(i & tmask)) std::swap(a[i], a[i | tmask]);
}

ZyzAngles zyz_decompose(const GateMatrix& u) {
    if (u.k_qubits != 1 || !is_unitary(u.entries, 1e-10))
        throw std::domain_error("zyz_decompose needs a single-qubit unitary");
    const cdouble det = u.entries[0][0] * u.entries[1][1] - u.entries[0][1] * u.entries[1][0];
    const double alpha = 0.5 * std::arg(det);
    const cdouble phase = std::polar(1.0, -alpha);
    // v is in SU(2) up to rounding: v = [[v00, v01], [v10, conj(v00)]].
    const cdouble v00 = phase * u.entries[0][0];
    const cdouble v10 = phase * u.entries[1][0];
    const double gamma = 2.0 * std::atan2(std::abs(v10), std::abs(v00));
    // v00 = e^{-i(beta+delta)/2} cos(gamma/2), v10 = e^{i(beta-delta)/2} sin(gamma/2).
    double sum = (std::abs(v00) > 1e-14) ? -2.0 * std::arg(v00) : 0.0;
    double diff = (std::abs(v10) > 1e-14) ? 2.0 * std::arg(v10) : 0.0;
    if (sum <= -2.0 * std::numbers::pi) sum += 4.0 * std::numbers::pi;
    if (diff <= -2.0 * std::numbers::pi) diff += 4.0 * std::numbers::pi;
    return {alpha, 0.5 * (sum + diff), gamma, 0.5 * (sum - diff)};
}

Matrix zyz_reconstruct(const ZyzAngles& a) {
    const cdouble ea = std::polar(1.0, a.alpha);
    const cdouble ebm = std::polar(1.0, -0.5 * a.beta), ebp = std::polar(1.0, 0.5 * a.beta);
    const cdouble edm = std::polar(1.0, -0.5 * a.delta), edp = std::polar(1.0, 0.5 * a.delta);
    const double c = std::cos(0.5 * a.gamma), s = std::sin(0.5 * a.gamma);
    return {{ea * ebm * c * edm, -ea * ebm * s * edp},
            {ea * ebp * s * edm, ea * ebp * c * edp}};
}

BlochPoint bloch_coords(const StateVector& s) {
    if (s.n_qubits() != 1) throw std::domain_error("bloch_coords needs a single-qubit state");
    cdouble a0 = s.amp(0), a1 = s.amp(1);
    // Remove the global phase so the |0> amplitude is real nonnegative.
    if (std::abs(a0) > 1e-14) {
        const cdouble phase = std::conj(a0) / std::abs(a0);
        a0 *= phase;
        a1 *= phase;
    }
    const double mod0 = std::clamp(std::abs(a0), 0.0, 1.0);
    const double theta = 2.0 * std::acos(mod0);
    double phi = 0.0;
    if (std::abs(a0) > 1e-12 && std::abs(a1) > 1e-12) {
        phi = std::arg(a1 * std::conj(a0));
        if (phi < 0) phi += 2.0 * std::numbers::pi;
        if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
    }
    return {theta, phi};
}

}  // namespace qsim
