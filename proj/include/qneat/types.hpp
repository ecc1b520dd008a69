#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace qneat {

enum class Axis { X, Y, Z };

inline constexpr std::array<Axis, 3> kAllAxes{Axis::X, Axis::Y, Axis::Z};

inline char axis_char(Axis a) {
    switch (a) {
    case Axis::X: return 'X';
    case Axis::Y: return 'Y';
    case Axis::Z: return 'Z';
    }
    throw std::logic_error("bad axis");
}

inline Axis axis_from_char(char c) {
    switch (c) {
    case 'X': case 'x': return Axis::X;
    case 'Y': case 'y': return Axis::Y;
    case 'Z': case 'z': return Axis::Z;
    }
    throw std::invalid_argument(std::string("unknown axis: ") + c);
}

// Thrown when a Hamiltonian or state is too large for the requested
// dense/brute-force operation.
struct UnsupportedSizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rotation generator: a single-qubit Pauli or a same-axis two-qubit
// Pauli product.
struct PauliGenerator {
    Axis axis = Axis::Z;
    std::vector<int> qubits;  // 1 or 2 distinct indices

    PauliGenerator() = default;
    PauliGenerator(Axis a, int q) : axis(a), qubits{q} {}
    PauliGenerator(Axis a, int qi, int qj) : axis(a), qubits{qi, qj} {
        if (qi == qj) throw std::invalid_argument("two-qubit generator needs distinct qubits");
    }

    bool is_two_qubit() const { return qubits.size() == 2; }

    void validate(int num_qubits) const {
        if (qubits.empty() || qubits.size() > 2)
            throw std::invalid_argument("generator acts on 1 or 2 qubits");
        for (int q : qubits)
            if (q < 0 || q >= num_qubits)
                throw std::invalid_argument("generator qubit index out of range");
        if (qubits.size() == 2 && qubits[0] == qubits[1])
            throw std::invalid_argument("two-qubit generator needs distinct qubits");
    }

    // Short descriptor used in mutation statistics, e.g. "rz" or "ryy".
    std::string kind() const {
        std::string s = "r";
        char c = static_cast<char>(axis_char(axis) - 'X' + 'x');
        s += c;
        if (is_two_qubit()) s += c;
        return s;
    }

    bool operator==(const PauliGenerator&) const = default;
};

// A Pauli rotation exp(-i theta/2 * P). Theta is kept unreduced; the
// unitary is periodic with period 4*pi.
struct Gate {
    PauliGenerator generator;
    double theta = 0.0;

    Gate() = default;
    Gate(PauliGenerator g, double t) : generator(std::move(g)), theta(t) {
        if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
    }

    bool operator==(const Gate&) const = default;
};

// Ordered gate sequence over a fixed qubit count; the EA genotype.
// An empty sequence is the identity circuit.
struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;

    explicit Circuit(int n = 0) : num_qubits(n) {
        if (n < 0) throw std::invalid_argument("negative qubit count");
    }

    void push_back(Gate g) {
        g.generator.validate(num_qubits);
        gates.push_back(std::move(g));
    }

    std::size_t size() const { return gates.size(); }
};

}  // namespace qneat
