#pragma once

#include <vector>

#include "qsim/statevec.hpp"

namespace qsim {

inline constexpr double kSeparabilityTolerance = 1e-8;

/// Two-qubit product test: |a0*a3 - a1*a2| <= tol.
bool is_product_2q(const StateVector& s, double tol = kSeparabilityTolerance);

/// Either the single-qubit factors of a product state, or the first qubit
/// position at which rank-1 peeling of the 2 x 2^{rest} amplitude reshaping
/// fails.
struct FactorResult {
    bool is_product;
    std::vector<StateVector> factors;  // set when is_product
    int entangled_at;                  // set when !is_product
};

/// Peels qubits left to right. When s is a product within tol, the factors
/// tensor back to s exactly (factor 0 carries the global phase; the others
/// have their first nonzero amplitude real positive).
FactorResult factor_product(const StateVector& s, double tol = kSeparabilityTolerance);

}  // namespace qsim
