#include <doctest.h>

#include <numbers>
#include <random>

#include "qneat/measure.hpp"
#include "qneat/mutation.hpp"

using namespace qneat;

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

Circuit random_circuit(int n, int gates, std::mt19937_64& rng) {
    Circuit c(n);
    for (int k = 0; k < gates; ++k) c.push_back(random_gate(n, rng, 0.0, two_pi));
    return c;
}

// Dense oracle: psi^dagger M psi with M from dense_matrix.
double dense_expectation(const StateVector& s, const Hamiltonian& h) {
    const auto m = dense_matrix(h);
    cplx acc{0, 0};
    for (std::size_t r = 0; r < s.dim(); ++r) {
        cplx row{0, 0};
        for (std::size_t c = 0; c < s.dim(); ++c) row += m[r][c] * s[c];
        acc += std::conj(s[r]) * row;
    }
    return acc.real();
}
}  // namespace

TEST_CASE("expectation on product states") {
    const auto h = local_pauli_sum(4, Axis::X);
    CHECK(expectation(init_product_state(4, Axis::X, -1), h) == doctest::Approx(-4.0));
    CHECK(std::abs(expectation(init_product_state(4, Axis::Y, +1), h)) < 1e-12);

    const auto other = init_product_state(3, Axis::Z, +1);
    CHECK_THROWS_AS(expectation(other, h), std::invalid_argument);
}

TEST_CASE("expectation matches the dense-matrix oracle") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);  // 2..5
        std::mt19937_64 hrng(rng());
        const auto h = (trial % 2 == 0) ? tfi(n) : sk(n, hrng);
        const auto state = run_circuit(random_circuit(n, 30, rng),
                                       init_product_state(n, Axis::Z, +1));
        CHECK(expectation(state, h) ==
              doctest::Approx(dense_expectation(state, h)).epsilon(1e-10));
    }
}

TEST_CASE("expectation bound by total weight") {
    std::mt19937_64 rng(23);
    const auto h = tfi(4, 1.3, 0.7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto state = run_circuit(random_circuit(4, 15, rng),
                                       init_product_state(4, Axis::Y, +1));
        CHECK(std::abs(expectation(state, h)) <= h.weight_norm() + 1e-12);
    }
}

TEST_CASE("measurement grouping and call counts") {
    CHECK(circuit_call_count(EvalMode::Exact, tfi(6)) == 1);
    CHECK(circuit_call_count(EvalMode::Sampled, local_pauli_sum(6, Axis::X)) == 1);
    CHECK(circuit_call_count(EvalMode::Sampled, tfi(6)) == 2);
    std::mt19937_64 rng(2);
    CHECK(circuit_call_count(EvalMode::Sampled, sk(6, rng)) == 1);

    // Conflicting assignments stay separate.
    const Hamiltonian mixed(2, {PauliString(1.0, {{0, Axis::X}, {1, Axis::X}}),
                                PauliString(1.0, {{0, Axis::Z}, {1, Axis::X}})});
    CHECK(circuit_call_count(EvalMode::Sampled, mixed) == 2);
}

TEST_CASE("sampled estimate is deterministic for an eigenstate") {
    const Hamiltonian h(1, {PauliString(0.75, {{0, Axis::Z}})});
    Circuit flip(1);
    flip.push_back(Gate(PauliGenerator(Axis::X, 0), std::numbers::pi));  // |0> -> |1>
    std::mt19937_64 rng(4);
    const auto est = estimate_energy_sampled(flip, init_product_state(1, Axis::Z, +1), h,
                                             64, rng);
    CHECK(est.energy == doctest::Approx(-0.75));
    CHECK(est.std_error == doctest::Approx(0.0));
}

TEST_CASE("sampled estimate guards") {
    const auto h = tfi(2);
    const auto init = init_product_state(2, Axis::Y, +1);
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(estimate_energy_sampled(Circuit(2), init, h, 0, rng),
                    std::invalid_argument);
}

TEST_CASE("sampled estimate converges to the exact expectation") {
    std::mt19937_64 rng(31);
    const auto h = tfi(4);
    const auto init = init_product_state(4, Axis::Y, +1);
    const auto circuit = random_circuit(4, 12, rng);
    const double exact = expectation(run_circuit(circuit, init), h);
    const auto est = estimate_energy_sampled(circuit, init, h, 100000, rng);
    CHECK(std::abs(est.energy - exact) <= 5.0 * est.std_error);
}

TEST_CASE("full depolarizing noise averages the four Pauli trajectories") {
    // Single gate, H = Z0, p = 1: the four equally likely errors I,X,Y,Z
    // give <Z>, -<Z>, -<Z>, <Z> respectively, so the mean estimate is 0.
    const Hamiltonian h(1, {PauliString(1.0, {{0, Axis::Z}})});
    Circuit c(1);
    c.push_back(Gate(PauliGenerator(Axis::Y, 0), 0.7));
    std::mt19937_64 rng(12);
    const auto est = estimate_energy_sampled(c, init_product_state(1, Axis::Z, +1), h,
                                             20000, rng, 1.0);
    CHECK(std::abs(est.energy) <= 5.0 * est.std_error);
    // Without noise the same circuit is far from 0.
    std::mt19937_64 rng2(12);
    const auto clean = estimate_energy_sampled(c, init_product_state(1, Axis::Z, +1), h,
                                               20000, rng2, 0.0);
    CHECK(clean.energy == doctest::Approx(std::cos(0.7)).epsilon(0.05));
}

TEST_CASE("sampled estimator is unbiased") {
    std::mt19937_64 rng(77);
    const auto h = tfi(3);
    const auto init = init_product_state(3, Axis::Y, +1);
    const auto circuit = random_circuit(3, 8, rng);
    const double exact = expectation(run_circuit(circuit, init), h);

    const int reps = 200;
    const std::int64_t shots = 10000;
    double sum = 0.0, var = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto est = estimate_energy_sampled(circuit, init, h, shots, rng);
        sum += est.energy;
        var += est.std_error * est.std_error;
    }
    const double mean = sum / reps;
    const double sem = std::sqrt(var) / reps;
    CHECK(std::abs(mean - exact) <= 3.0 * sem);
}
