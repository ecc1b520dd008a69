#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qneat/types.hpp"

namespace qneat {

using cplx = std::complex<double>;

// Qubit 0 is the least-significant bit of the basis index.
inline constexpr int kMaxQubits = 24;

class StateVector {
  public:
    explicit StateVector(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }

    const cplx& operator[](std::size_t i) const { return amps_[i]; }
    cplx& operator[](std::size_t i) { return amps_[i]; }

    const std::vector<cplx>& amplitudes() const { return amps_; }

    double norm_sq() const;

  private:
    int num_qubits_;
    std::vector<cplx> amps_;
};

// n-fold tensor product of the single-qubit eigenstate of `axis` with
// eigenvalue `sign` (+1 or -1).
StateVector init_product_state(int num_qubits, Axis axis, int sign);

// In-place exp(-i theta/2 P) |psi> via cos(theta/2) I - i sin(theta/2) P.
void apply_gate(StateVector& state, const Gate& gate);

// Apply gates in sequence order (index 0 first).
void run_circuit(const Circuit& circuit, StateVector& state);

/// Convenience: copy init, run circuit, return result.
StateVector run_circuit(const Circuit& circuit, const StateVector& init);

}  // namespace qneat
