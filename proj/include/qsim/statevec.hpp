#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qsim {

using cdouble = std::complex<double>;

/// Dense complex matrix, row-major.
using Matrix = std::vector<std::vector<cdouble>>;

/// Tolerance for "this state is normalized" checks.
inline constexpr double kNormTolerance = 1e-10;

/// Raw amplitude vectors whose norm deviates by more than this are rejected;
/// smaller deviations are silently renormalized.
inline constexpr double kRenormTolerance = 1e-6;

/// Cap on qubit count (1 GiB of complex doubles at 26). Overridable.
int max_qubits();
void set_max_qubits(int n);

/// Pure state of n qubits: 2^n complex amplitudes indexed by basis integer.
/// Tensor factor 0 (the leftmost qubit) is the most significant bit of the
/// basis index.
class StateVector {
public:
    /// |0...0> on n qubits.
    explicit StateVector(int n_qubits);

    /// Adopts raw amplitudes. The length must be 2^n_qubits and the norm
    /// must be within kRenormTolerance of 1 (then renormalized exactly).
    StateVector(int n_qubits, std::vector<cdouble> amps);

    int n_qubits() const { return n_qubits_; }
    std::uint64_t dim() const { return amps_.size(); }

    const std::vector<cdouble>& amps() const { return amps_; }
    std::vector<cdouble>& amps() { return amps_; }

    cdouble amp(std::uint64_t j) const { return amps_[j]; }

    double norm() const;
    bool is_normalized(double tol = kNormTolerance) const;

    /// Bit mask selecting `qubit` inside a basis index.
    std::uint64_t qubit_mask(int qubit) const;

private:
    int n_qubits_;
    std::vector<cdouble> amps_;
};

/// Basis state |a>_n. Requires 0 <= a < 2^n.
StateVector basis_state(int n_qubits, std::uint64_t a);

/// Tensor product: amplitude at i*2^{n_b}+j equals a_i * b_j.
StateVector tensor(const StateVector& a, const StateVector& b);

/// <a|b> = sum conj(a_j) * b_j. Requires equal qubit counts.
cdouble inner(const StateVector& a, const StateVector& b);

/// |a><b|: entry (i,j) equals a_i * conj(b_j). Requires equal qubit counts.
Matrix outer(const StateVector& a, const StateVector& b);

/// |amp_j|^2 for every basis index.
std::vector<double> probabilities(const StateVector& s);

/// Kronecker product of rectangular matrices: block a_ij * B.
Matrix kron(const Matrix& A, const Matrix& B);

/// Given a state of the form |phi> (x) |value> on the trailing `trailing_qubits`
/// register (e.g. right after that register was measured), returns |phi|
/// renormalized. Throws if the slice carries no weight.
StateVector factor_out_trailing(const StateVector& s, int trailing_qubits,
                                std::uint64_t value);

/// Point on the unit sphere identifying a single-qubit state up to phase.
struct BlochPoint {
    double theta;  // [0, pi]
    double phi;    // [0, 2*pi)
};

}  // namespace qsim
