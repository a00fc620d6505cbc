#include "qsim/statevec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsim {

namespace {
int g_max_qubits = 26;
}

int max_qubits() { return g_max_qubits; }

void set_max_qubits(int n) {
    if (n < 1 || n > 62) throw std::domain_error("max_qubits must be in [1, 62]");
    g_max_qubits = n;
}

static void check_qubit_count(int n) {
    if (n < 1) throw std::domain_error("qubit count must be positive");
    if (n > g_max_qubits)
        throw std::domain_error("qubit count " + std::to_string(n) + " exceeds cap " +
                                std::to_string(g_max_qubits));
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
    amps_.assign(std::uint64_t{1} << n_qubits, cdouble{0.0, 0.0});
    amps_[0] = cdouble{1.0, 0.0};
}

StateVector::StateVector(int n_qubits, std::vector<cdouble> amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {
    check_qubit_count(n_qubits);
    if (amps_.size() != (std::uint64_t{1} << n_qubits))
        throw std::invalid_argument("amplitude vector length must be 2^n_qubits");
    const double nrm = norm();
    if (std::abs(nrm - 1.0) > kRenormTolerance)
        throw std::domain_error("amplitude vector is not normalized (norm " +
                                std::to_string(nrm) + ")");
    if (nrm != 1.0) {
        const double inv = 1.0 / nrm;
        for (auto& a : amps_) a *= inv;
    }
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

std::uint64_t StateVector::qubit_mask(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_) throw std::domain_error("qubit index out of range");
    return std::uint64_t{1} << (n_qubits_ - 1 - qubit);
}

StateVector basis_state(int n_qubits, std::uint64_t a) {
    check_qubit_count(n_qubits);
    if (a >> n_qubits) throw std::domain_error("basis index out of range");
    StateVector s(n_qubits);
    s.amps()[0] = cdouble{0.0, 0.0};
    s.amps()[a] = cdouble{1.0, 0.0};
    return s;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    check_qubit_count(a.n_qubits() + b.n_qubits());
    std::vector<cdouble> out(a.dim() * b.dim());
    const auto& av = a.amps();
    const auto& bv = b.amps();
    for (std::uint64_t i = 0; i < av.size(); ++i) {
        const cdouble ai = av[i];
        cdouble* dst = out.data() + i * bv.size();
        if (ai == cdouble{0.0, 0.0}) continue;  // output is zero-initialized
        for (std::uint64_t j = 0; j < bv.size(); ++j) dst[j] = ai * bv[j];
    }
    StateVector r(a.n_qubits() + b.n_qubits());
    r.amps() = std::move(out);
    return r;
}

cdouble inner(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::domain_error("inner product requires equal qubit counts");
    cdouble s{0.0, 0.0};
    for (std::uint64_t j = 0; j < a.dim(); ++j) s += std::conj(a.amp(j)) * b.amp(j);
    return s;
}

Matrix outer(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::domain_error("outer product requires equal qubit counts");
    Matrix m(a.dim(), std::vector<cdouble>(b.dim()));
    for (std::uint64_t i = 0; i < a.dim(); ++i)
        for (std::uint64_t j = 0; j < b.dim(); ++j) m[i][j] = a.amp(i) * std::conj(b.amp(j));
    return m;
}

std::vector<double> probabilities(const StateVector& s) {
    std::vector<double> p(s.dim());
    for (std::uint64_t j = 0; j < s.dim(); ++j) p[j] = std::norm(s.amp(j));
    return p;
}

Matrix kron(const Matrix& A, const Matrix& B) {
    if (A.empty() || B.empty()) throw std::invalid_argument("kron of empty matrix");
    const std::size_t ar = A.size(), ac = A[0].size();
    const std::size_t br = B.size(), bc = B[0].size();
    Matrix m(ar * br, std::vector<cdouble>(ac * bc));
    for (std::size_t i = 0; i < ar; ++i)
        for (std::size_t j = 0; j < ac; ++j) {
            const cdouble aij = A[i][j];
            for (std::size_t k = 0; k < br; ++k)
                for (std::size_t l = 0; l < bc; ++l) m[i * br + k][j * bc + l] = aij * B[k][l];
        }
    return m;
}

StateVector factor_out_trailing(const StateVector& s, int trailing_qubits, std::uint64_t value) {
    const int lead = s.n_qubits() - trailing_qubits;
    if (trailing_qubits < 1 || lead < 1)
        throw std::domain_error("trailing register size out of range");
    const std::uint64_t block = std::uint64_t{1} << trailing_qubits;
    if (value >= block) throw std::domain_error("trailing register value out of range");
    std::vector<cdouble> out(std::uint64_t{1} << lead);
    double weight = 0.0;
    for (std::uint64_t j = 0; j < out.size(); ++j) {
        out[j] = s.amp(j * block + value);
        weight += std::norm(out[j]);
    }
    if (weight < 1e-30) throw std::domain_error("trailing register has no weight at value");
    const double inv = 1.0 / std::sqrt(weight);
    for (auto& a : out) a *= inv;
    StateVector r(lead);
    r.amps() = std::move(out);
    return r;
}

}  // namespace qsim
