#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qneat/types.hpp"

namespace qneat {

// Weighted Pauli string: a per-qubit axis assignment over the non-identity
// positions. An empty assignment is the constant term.
struct PauliString {
    double weight = 0.0;
    std::vector<std::pair<int, Axis>> paulis;  // sorted by qubit, unique

    PauliString() = default;
    PauliString(double w, std::vector<std::pair<int, Axis>> p);

    // Bit masks over qubit indices, precomputed at construction.
    std::uint64_t flip_mask() const { return flip_mask_; }    // X and Y positions
    std::uint64_t phase_mask() const { return phase_mask_; }  // Y and Z positions
    std::uint64_t support_mask() const { return support_mask_; }
    int y_count() const { return y_count_; }

    bool is_constant() const { return paulis.empty(); }

  private:
    std::uint64_t flip_mask_ = 0, phase_mask_ = 0, support_mask_ = 0;
    int y_count_ = 0;
};

// Weighted sum of Pauli strings. Terms with identical axis assignments are
// merged at construction; immutable afterwards.
class Hamiltonian {
  public:
    Hamiltonian(int num_qubits, std::vector<PauliString> terms);

    int num_qubits() const { return num_qubits_; }
    const std::vector<PauliString>& terms() const { return terms_; }

    // Sum of |weight|; upper bound on |<H>|.
    double weight_norm() const;

    nlohmann::json to_json() const;
    static Hamiltonian from_json(const nlohmann::json& j);

  private:
    int num_qubits_;
    std::vector<PauliString> terms_;
};

// H = sum_i sigma_i^(axis), weight 1 each.
Hamiltonian local_pauli_sum(int num_qubits, Axis axis);

// Open-chain transverse-field Ising model:
// H = -J sum Z_i Z_{i+1} - h sum X_i.
Hamiltonian tfi(int num_qubits, double coupling = 1.0, double field = 1.0);

// Sherrington-Kirkpatrick spin glass: H = sum_{i<j} J_ij Z_i Z_j with
// J_ij drawn uniformly from {-1, +1}.
Hamiltonian sk(int num_qubits, std::mt19937_64& rng);

// Dense 2^n x 2^n matrix of H, row-major. Guard: n <= 12.
std::vector<std::vector<std::complex<double>>> dense_matrix(const Hamiltonian& h);

// Extreme eigenvalues. Z-diagonal Hamiltonians use a bitstring scan
// (n <= 24); otherwise dense diagonalization (n <= 12).
std::pair<double, double> exact_extremes(const Hamiltonian& h);

bool is_z_diagonal(const Hamiltonian& h);

// An axis absent from every term, preference order Y, X, Z. Throws if all
// three axes appear.
Axis neutral_initial_axis(const Hamiltonian& h);

}  // namespace qneat
