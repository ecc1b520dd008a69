#include "qneat/statevector.hpp"

#include <bit>
#include <cmath>

namespace qneat {

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1) throw std::invalid_argument("need at least one qubit");
    if (num_qubits > kMaxQubits) throw std::invalid_argument("qubit count exceeds guard of 24");
    amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
    amps_[0] = cplx{1.0, 0.0};
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

StateVector init_product_state(int num_qubits, Axis axis, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    StateVector state(num_qubits);

    // Single-qubit eigenstate (amp of |0>, amp of |1>).
    const double r = 1.0 / std::sqrt(2.0);
    cplx c0, c1;
    switch (axis) {
    case Axis::Z:
        c0 = (sign > 0) ? 1.0 : 0.0;
        c1 = (sign > 0) ? 0.0 : 1.0;
        break;
    case Axis::X:
        c0 = r;
        c1 = (sign > 0) ? r : -r;
        break;
    case Axis::Y:
        c0 = r;
        c1 = (sign > 0) ? cplx{0.0, r} : cplx{0.0, -r};
        break;
    }

    const std::size_t dim = state.dim();
    for (std::size_t x = 0; x < dim; ++x) {
        cplx a{1.0, 0.0};
        for (int q = 0; q < num_qubits; ++q) a *= ((x >> q) & 1u) ? c1 : c0;
        state[x] = a;
    }
    return state;
}

void apply_gate(StateVector& state, const Gate& gate) {
    const auto& gen = gate.generator;
    gen.validate(state.num_qubits());

    const double c = std::cos(gate.theta / 2.0);
    const double s = std::sin(gate.theta / 2.0);
    const std::size_t dim = state.dim();

    std::uint64_t qmask = 0;
    for (int q : gen.qubits) qmask |= std::uint64_t{1} << q;

    if (gen.axis == Axis::Z) {
        // Diagonal: eigenvalue (-1)^parity, factor exp(-i theta/2 * eig).
        const cplx f_even{c, -s};
        const cplx f_odd{c, s};
        for (std::size_t x = 0; x < dim; ++x)
            state[x] *= (std::popcount(x & qmask) & 1) ? f_odd : f_even;
        return;
    }

    // X / Y: P couples x with x ^ qmask. P|y> = phase(y) |y ^ qmask> with
    // phase(y) = prod over qubits of (X: 1, Y: i*(-1)^bit).
    const bool is_y = (gen.axis == Axis::Y);
    const int ny = is_y ? static_cast<int>(gen.qubits.size()) : 0;
    // i^ny as a complex constant.
    static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx base = ipow[ny & 3];

    for (std::size_t x = 0; x < dim; ++x) {
        const std::size_t y = x ^ qmask;
        if (y < x) continue;  // handle each pair once
        cplx px = base, py = base;  // phase for P|x>, P|y>
        if (is_y) {
            if (std::popcount(x & qmask) & 1) px = -px;
            if (std::popcount(y & qmask) & 1) py = -py;
        }
        const cplx ax = state[x];
        const cplx ay = state[y];
        const cplx mis{0.0, -s};  // -i sin(theta/2)
        // (P psi)[x] = <x|P|y> psi[y] with P|y> = py |x>.
        state[x] = c * ax + mis * py * ay;
        state[y] = c * ay + mis * px * ax;
    }
}

void run_circuit(const Circuit& circuit, StateVector& state) {
    if (circuit.num_qubits != state.num_qubits())
        throw std::invalid_argument("circuit and state qubit counts differ");
    for (const auto& g : circuit.gates) apply_gate(state, g);
}

StateVector run_circuit(const Circuit& circuit, const StateVector& init) {
    StateVector out = init;
    run_circuit(circuit, out);
    return out;
}

}  // namespace qneat
