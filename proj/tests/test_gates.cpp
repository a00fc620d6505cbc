#include <doctest.h>

#include <cmath>
#include <bit>
#include <numbers>

#include "qsim/gates.hpp"
#include "test_support.hpp"

using namespace qsim;
using qtest::dense_apply;
using qtest::embed_1q;
using qtest::max_amp_error;
using qtest::max_entry_error;
using qtest::random_state;
using qtest::random_unitary_1q;

TEST_CASE("standard gates are the expected matrices and unitary") {
    for (const char* name : {"H", "X", "Y", "Z", "I", "CNOT"}) {
        const GateMatrix g = standard_gate(name);
        CHECK(is_unitary(g.entries, 1e-12));
    }
    CHECK_THROWS_AS(standard_gate("T"), std::domain_error);

    const double r = 1.0 / std::sqrt(2.0);
    const GateMatrix h = standard_gate("H");
    CHECK(h.entries[0][0] == cdouble{r, 0.0});
    CHECK(h.entries[1][1] == cdouble{-r, 0.0});

    // Involutions: H^2 = X^2 = Y^2 = Z^2 = I.
    for (const char* name : {"H", "X", "Y", "Z"}) {
        const Matrix& m = standard_gate(name).entries;
        Matrix sq(2, std::vector<cdouble>(2, {0, 0}));
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k)
                for (int j = 0; j < 2; ++j) sq[i][j] += m[i][k] * m[k][j];
        CHECK(max_entry_error(sq, {{1, 0}, {0, 1}}) < 1e-15);
    }
}

TEST_CASE("pauli algebra: anticommutation and XY = iZ") {
    const Matrix X = standard_gate("X").entries, Y = standard_gate("Y").entries,
                 Z = standard_gate("Z").entries;
    auto mul = [](const Matrix& a, const Matrix& b) {
        Matrix c(2, std::vector<cdouble>(2, {0, 0}));
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k)
                for (int j = 0; j < 2; ++j) c[i][j] += a[i][k] * b[k][j];
        return c;
    };
    auto plus = [](const Matrix& a, const Matrix& b) {
        Matrix c = a;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) c[i][j] += b[i][j];
        return c;
    };
    const Matrix zero = {{cdouble{0, 0}, cdouble{0, 0}}, {cdouble{0, 0}, cdouble{0, 0}}};
    CHECK(max_entry_error(plus(mul(X, Y), mul(Y, X)), zero) < 1e-15);
    CHECK(max_entry_error(plus(mul(Y, Z), mul(Z, Y)), zero) < 1e-15);
    CHECK(max_entry_error(plus(mul(X, Z), mul(Z, X)), zero) < 1e-15);
    Matrix iZ = Z;
    for (auto& row : iZ)
        for (auto& v : row) v *= cdouble{0, 1};
    CHECK(max_entry_error(mul(X, Y), iZ) < 1e-15);
}

TEST_CASE("single-qubit gate application basics") {
    const GateMatrix h = standard_gate("H");
    StateVector s = basis_state(1, 0);
    apply_1q(s, h, 0);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s.amp(0) - cdouble{r, 0.0}) < 1e-15);
    CHECK(std::abs(s.amp(1) - cdouble{r, 0.0}) < 1e-15);

    // X flips each basis state.
    for (int j : {0, 1}) {
        StateVector b = basis_state(1, j);
        apply_1q(b, standard_gate("X"), 0);
        CHECK(std::abs(b.amp(1 - j) - cdouble{1.0, 0.0}) < 1e-15);
    }

    // Z negates the |1> amplitude.
    StateVector z(1, {cdouble{0.6, 0.0}, cdouble{0.8, 0.0}});
    apply_1q(z, standard_gate("Z"), 0);
    CHECK(std::abs(z.amp(0) - cdouble{0.6, 0.0}) < 1e-15);
    CHECK(std::abs(z.amp(1) - cdouble{-0.8, 0.0}) < 1e-15);

    // Identity leaves anything alone.
    std::mt19937_64 gen(7);
    StateVector any = random_state(3, gen);
    StateVector copy = any;
    apply_1q(any, standard_gate("I"), 1);
    CHECK(max_amp_error(any, copy) == 0.0);

    CHECK_THROWS_AS(apply_1q(any, h, 3), std::domain_error);
    CHECK_THROWS_AS(apply_1q(any, standard_gate("CNOT"), 0), std::domain_error);
}

TEST_CASE("apply_1q equals the dense kron-built operator") {
    std::mt19937_64 gen(21);
    for (int n = 2; n <= 8; n += 2) {
        for (int qubit = 0; qubit < n; ++qubit) {
            const GateMatrix g = random_unitary_1q(gen);
            const StateVector s = random_state(n, gen);
            StateVector fast = s;
            apply_1q(fast, g, qubit);
            const StateVector slow = dense_apply(embed_1q(g.entries, qubit, n), s);
            CHECK(max_amp_error(fast, slow) < 1e-10);
            CHECK(std::abs(fast.norm() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("H on qubit 0 of |00> matches kron(H, I)") {
    StateVector s = basis_state(2, 0);
    apply_1q(s, standard_gate("H"), 0);
    const StateVector slow =
        dense_apply(embed_1q(standard_gate("H").entries, 0, 2), basis_state(2, 0));
    CHECK(max_amp_error(s, slow) < 1e-15);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s.amp(0) - cdouble{r, 0}) < 1e-15);
    CHECK(std::abs(s.amp(2) - cdouble{r, 0}) < 1e-15);
}

TEST_CASE("hadamard_all on |0> is uniform; applied twice is identity") {
    StateVector s = basis_state(4, 0);
    apply_hadamard_all(s);
    for (std::uint64_t j = 0; j < 16; ++j)
        CHECK(std::abs(s.amp(j) - cdouble{0.25, 0.0}) < 1e-14);

    for (std::uint64_t j : {0ull, 3ull, 11ull}) {
        StateVector b = basis_state(4, j);
        apply_hadamard_all(b);
        apply_hadamard_all(b);
        CHECK(max_amp_error(b, basis_state(4, j)) < 1e-14);
    }
}

TEST_CASE("hadamard_all signs follow the bitwise inner product") {
    StateVector s = basis_state(3, 5);
    apply_hadamard_all(s);
    const double r = 1.0 / std::sqrt(8.0);
    for (std::uint64_t k = 0; k < 8; ++k) {
        const int parity = std::popcount(std::uint64_t{5} & k) & 1;
        CHECK(std::abs(s.amp(k) - cdouble{parity ? -r : r, 0.0}) < 1e-14);
    }
}

TEST_CASE("cnot entangles and is an involution") {
    // (|00> + |10>)/sqrt(2) -> (|00> + |11>)/sqrt(2)
    const double r = 1.0 / std::sqrt(2.0);
    StateVector s(2, {r, 0.0, r, 0.0});
    apply_cnot(s, 0, 1);
    CHECK(std::abs(s.amp(0) - cdouble{r, 0}) < 1e-15);
    CHECK(std::abs(s.amp(3) - cdouble{r, 0}) < 1e-15);

    StateVector zero = basis_state(2, 0);
    apply_cnot(zero, 0, 1);
    CHECK(max_amp_error(zero, basis_state(2, 0)) == 0.0);

    std::mt19937_64 gen(22);
    for (int trial = 0; trial < 20; ++trial) {
        StateVector any = random_state(4, gen);
        const StateVector copy = any;
        apply_cnot(any, 1, 3);
        apply_cnot(any, 1, 3);
        CHECK(max_amp_error(any, copy) == 0.0);
    }
    StateVector two(2);
    CHECK_THROWS_AS(apply_cnot(two, 1, 1), std::domain_error);
}

TEST_CASE("cnot equals its dense matrix on both qubit orders") {
    std::mt19937_64 gen(23);
    const Matrix cnot = standard_gate("CNOT").entries;
    for (int n : {2, 3, 5}) {
        const StateVector s = random_state(n, gen);
        for (int c = 0; c < n; ++c)
            for (int t = 0; t < n; ++t) {
                if (c == t) continue;
                StateVector fast = s;
                apply_cnot(fast, c, t);
                // Dense oracle: build the permutation directly.
                std::vector<cdouble> out(s.dim());
                const std::uint64_t cm = s.qubit_mask(c), tm = s.qubit_mask(t);
                for (std::uint64_t j = 0; j < s.dim(); ++j)
                    out[(j & cm) ? (j ^ tm) : j] = s.amp(j);
                CHECK(max_amp_error(fast, StateVector(n, std::move(out))) < 1e-14);
            }
    }
    // And against kron for the adjacent leading pair.
    const StateVector s = random_state(2, gen);
    StateVector fast = s;
    apply_cnot(fast, 0, 1);
    CHECK(max_amp_error(fast, dense_apply(cnot, s)) < 1e-15);
}

TEST_CASE("norm is preserved by gate application") {
    std::mt19937_64 gen(24);
    for (int trial = 0; trial < 50; ++trial) {
        StateVector s = random_state(6, gen);
        apply_1q(s, random_unitary_1q(gen), trial % 6);
        apply_cnot(s, (trial + 1) % 6, (trial + 3) % 6);
        apply_hadamard_all(s);
        CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("zyz decomposition reconstructs") {
    const ZyzAngles id = zyz_decompose(standard_gate("I"));
    CHECK(id.alpha == doctest::Approx(0.0));
    CHECK(id.beta == doctest::Approx(0.0));
    CHECK(id.gamma == doctest::Approx(0.0));
    CHECK(id.delta == doctest::Approx(0.0));

    const GateMatrix h = standard_gate("H");
    CHECK(max_entry_error(zyz_reconstruct(zyz_decompose(h)), h.entries) < 1e-10);

    std::mt19937_64 gen(25);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const GateMatrix u = random_unitary_1q(gen);
        const ZyzAngles a = zyz_decompose(u);
        CHECK(a.gamma >= 0.0);
        CHECK(a.gamma <= std::numbers::pi + 1e-12);
        CHECK(std::abs(a.alpha) <= std::numbers::pi + 1e-12);
        CHECK(std::abs(a.beta) <= 2 * std::numbers::pi + 1e-12);
        CHECK(std::abs(a.delta) <= 2 * std::numbers::pi + 1e-12);
        worst = std::max(worst, max_entry_error(zyz_reconstruct(a), u.entries));
    }
    CHECK(worst < 1e-9);

    const GateMatrix bogus{1, {{1.0, 1.0}, {0.0, 1.0}}};
    CHECK_THROWS_AS(zyz_decompose(bogus), std::domain_error);
}

TEST_CASE("bloch coordinates") {
    const BlochPoint p0 = bloch_coords(basis_state(1, 0));
    CHECK(p0.theta == doctest::Approx(0.0));
    CHECK(p0.phi == 0.0);

    const BlochPoint p1 = bloch_coords(basis_state(1, 1));
    CHECK(p1.theta == doctest::Approx(std::numbers::pi));
    CHECK(p1.phi == 0.0);

    const double r = 1.0 / std::sqrt(2.0);
    const BlochPoint pp = bloch_coords(StateVector(1, {r, r}));
    CHECK(pp.theta == doctest::Approx(std::numbers::pi / 2));
    CHECK(pp.phi == doctest::Approx(0.0));

    // i|1> differs from |1> only by global phase.
    const BlochPoint pi1 = bloch_coords(StateVector(1, {cdouble{0, 0}, cdouble{0, 1}}));
    CHECK(pi1.theta == doctest::Approx(std::numbers::pi));
    CHECK(pi1.phi == 0.0);

    // (|0> + i|1>)/sqrt(2) sits at phi = pi/2.
    const BlochPoint py = bloch_coords(StateVector(1, {cdouble{r, 0}, cdouble{0, r}}));
    CHECK(py.theta == doctest::Approx(std::numbers::pi / 2));
    CHECK(py.phi == doctest::Approx(std::numbers::pi / 2));
}
