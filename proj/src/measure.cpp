#include "qneat/measure.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace qneat {

double expectation(const StateVector& state, const Hamiltonian& hamiltonian) {
    if (state.num_qubits() != hamiltonian.num_qubits())
        throw std::invalid_argument("state and Hamiltonian qubit counts differ");

    static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::size_t dim = state.dim();
    cplx total{0.0, 0.0};
    for (const auto& t : hamiltonian.terms()) {
        if (t.is_constant()) {
            total += t.weight;
            continue;
        }
        const cplx base = ipow[t.y_count() & 3];
        cplx acc{0.0, 0.0};
        for (std::size_t y = 0; y < dim; ++y) {
            cplx phase = base;
            if (std::popcount(y & t.phase_mask()) & 1) phase = -phase;
            acc += std::conj(state[y ^ t.flip_mask()]) * phase * state[y];
        }
        total += t.weight * acc;
    }
    if (std::abs(total.imag()) > 1e-10)
        throw std::runtime_error("expectation has non-negligible imaginary part");
    return total.real();
}

std::vector<MeasurementGroup> measurement_groups(const Hamiltonian& hamiltonian) {
    std::vector<MeasurementGroup> groups;
    const auto& terms = hamiltonian.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].is_constant()) continue;
        bool placed = false;
        for (auto& g : groups) {
            bool compatible = true;
            for (const auto& [q, ax] : terms[i].paulis)
                if (g.basis[q].has_value() && *g.basis[q] != ax) {
                    compatible = false;
                    break;
                }
            if (!compatible) continue;
            for (const auto& [q, ax] : terms[i].paulis) g.basis[q] = ax;
            g.term_indices.push_back(i);
            placed = true;
            break;
        }
        if (!placed) {
            MeasurementGroup g;
            g.basis.assign(hamiltonian.num_qubits(), std::nullopt);
            for (const auto& [q, ax] : terms[i].paulis) g.basis[q] = ax;
            g.term_indices.push_back(i);
            groups.push_back(std::move(g));
        }
    }
    return groups;
}

std::int64_t circuit_call_count(EvalMode mode, const Hamiltonian& hamiltonian) {
    if (mode == EvalMode::Exact) return 1;
    return static_cast<std::int64_t>(measurement_groups(hamiltonian).size());
}

std::optional<Gate> basis_change_gate(Axis axis, int qubit) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    switch (axis) {
    case Axis::X: return Gate(PauliGenerator(Axis::Y, qubit), -half_pi);
    case Axis::Y: return Gate(PauliGenerator(Axis::X, qubit), half_pi);
    case Axis::Z: return std::nullopt;
    }
    return std::nullopt;
}

namespace {

// Sample one basis index from |amplitude|^2.
std::size_t sample_bitstring(const StateVector& state, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng) * state.norm_sq();
    const std::size_t dim = state.dim();
    double acc = 0.0;
    for (std::size_t x = 0; x < dim; ++x) {
        acc += std::norm(state[x]);
        if (u < acc) return x;
    }
    return dim - 1;
}

void apply_basis_rotations(StateVector& state, const MeasurementGroup& group) {
    for (std::size_t q = 0; q < group.basis.size(); ++q)
        if (group.basis[q])
            if (auto g = basis_change_gate(*group.basis[q], static_cast<int>(q)))
                apply_gate(state, *g);
}

// Run the circuit injecting, after every gate and per touched qubit, a
// uniform {I,X,Y,Z} error with probability p.
void run_noisy_trajectory(const Circuit& circuit, StateVector& state, double p,
                          std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> pauli(0, 3);
    constexpr double pi = std::numbers::pi;
    for (const auto& gate : circuit.gates) {
        apply_gate(state, gate);
        for (int q : gate.generator.qubits) {
            if (unif(rng) >= p) continue;
            const int which = pauli(rng);
            if (which == 0) continue;  // identity
            const Axis ax = static_cast<Axis>(which - 1);
            // A Pauli is exp(-i pi/2 P) up to global phase.
            apply_gate(state, Gate(PauliGenerator(ax, q), pi));
        }
    }
}

}  // namespace

SampledEstimate estimate_energy_sampled(const Circuit& circuit, const StateVector& init,
                                        const Hamiltonian& hamiltonian, std::int64_t shots,
                                        std::mt19937_64& rng, double noise) {
    if (shots < 1) throw std::invalid_argument("shots must be at least 1");
    if (circuit.num_qubits != init.num_qubits() ||
        init.num_qubits() != hamiltonian.num_qubits())
        throw std::invalid_argument("qubit counts differ");

    const auto groups = measurement_groups(hamiltonian);
    const auto& terms = hamiltonian.terms();

    double energy = 0.0;
    double variance = 0.0;
    for (const auto& t : terms)
        if (t.is_constant()) energy += t.weight;

    for (const auto& group : groups) {
        double sum = 0.0, sum_sq = 0.0;
        if (noise <= 0.0) {
            StateVector state = run_circuit(circuit, init);
            apply_basis_rotations(state, group);
            for (std::int64_t s = 0; s < shots; ++s) {
                const std::size_t x = sample_bitstring(state, rng);
                double v = 0.0;
                for (std::size_t ti : group.term_indices) {
                    const int par = std::popcount(x & terms[ti].support_mask()) & 1;
                    v += par ? -terms[ti].weight : terms[ti].weight;
                }
                sum += v;
                sum_sq += v * v;
            }
        } else {
            for (std::int64_t s = 0; s < shots; ++s) {
                StateVector state = init;
                run_noisy_trajectory(circuit, state, noise, rng);
                apply_basis_rotations(state, group);
                const std::size_t x = sample_bitstring(state, rng);
                double v = 0.0;
                for (std::size_t ti : group.term_indices) {
                    const int par = std::popcount(x & terms[ti].support_mask()) & 1;
                    v += par ? -terms[ti].weight : terms[ti].weight;
                }
                sum += v;
                sum_sq += v * v;
            }
        }
        const double mean = sum / static_cast<double>(shots);
        energy += mean;
        if (shots > 1) {
            const double var = (sum_sq - sum * mean) / static_cast<double>(shots - 1);
            variance += std::max(var, 0.0) / static_cast<double>(shots);
        }
    }
    return {energy, std::sqrt(variance)};
}

}  // namespace qneat
