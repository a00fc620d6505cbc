#pragma once

#include <string>

#include "qsim/statevec.hpp"

namespace qsim {

/// Dense unitary on k qubits (2^k x 2^k).
struct GateMatrix {
    int k_qubits;
    Matrix entries;
};

/// Named constant gates: H, X, Y, Z, I (single qubit) and CNOT (two qubits,
/// first qubit controls).
GateMatrix standard_gate(const std::string& name);

/// max |(U U† - I)_ij| <= tol and same for U† U.
bool is_unitary(const Matrix& u, double tol = kNormTolerance);

/// Applies a single-qubit gate to one tensor factor via strided 2x2 updates;
/// the full 2^n x 2^n operator is never built.
void apply_1q(StateVector& s, const GateMatrix& g, int qubit);

/// H on every qubit. On |j>_n yields (1/sqrt(2^n)) sum_k (-1)^{j.k} |k>_n.
void apply_hadamard_all(StateVector& s);

/// Swaps amplitude pairs whose control bit is 1 and whose target bits differ.
void apply_cnot(StateVector& s, int control, int target);

/// Euler angles for U = e^{i*alpha} Rz(beta) Ry(gamma) Rz(delta).
struct ZyzAngles {
    double alpha;  // (-pi, pi]
    double beta;   // (-2*pi, 2*pi]
    double gamma;  // [0, pi]
    double delta;  // (-2*pi, 2*pi]
};

/// Decomposes a single-qubit unitary. Angles are not unique; the contract is
/// that zyz_reconstruct reproduces the input within 1e-10.
ZyzAngles zyz_decompose(const GateMatrix& u);

/// e^{i*alpha} Rz(beta) Ry(gamma) Rz(delta) as a 2x2 matrix.
Matrix zyz_reconstruct(const ZyzAngles& a);

/// Spherical coordinates of a single-qubit state, global phase removed.
/// At the poles phi is fixed to 0.
BlochPoint bloch_coords(const StateVector& s);

}  // namespace qsim
