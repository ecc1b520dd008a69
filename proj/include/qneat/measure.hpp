#pragma once

#include <optional>
#include <random>
#include <vector>

#include "qneat/hamiltonian.hpp"
#include "qneat/statevector.hpp"

namespace qneat {

// Exact <psi|H|psi>. Asserts the imaginary residue is below 1e-10 and
// discards it.
double expectation(const StateVector& state, const Hamiltonian& hamiltonian);

// One measurement setting: a shared per-qubit basis assignment covering a
// set of Hamiltonian terms.
struct MeasurementGroup {
    std::vector<std::optional<Axis>> basis;  // per qubit; unset = don't care
    std::vector<std::size_t> term_indices;
};

// Greedy first-fit grouping of terms into measurement settings. A term
// joins the first group whose assignment agrees on every qubit the term
// touches. Deterministic in term order.
std::vector<MeasurementGroup> measurement_groups(const Hamiltonian& hamiltonian);

enum class EvalMode { Exact, Sampled };

// Circuit calls per loss evaluation: 1 in exact mode, one per measurement
// group in sampled mode.
std::int64_t circuit_call_count(EvalMode mode, const Hamiltonian& hamiltonian);

struct SampledEstimate {
    double energy = 0.0;
    double std_error = 0.0;  // estimated standard error of `energy`
};

// Shot-based energy estimate. For each measurement group the circuit is
// run with appended basis-change rotations (X via Ry(-pi/2), Y via
// Rx(pi/2), Z direct) and `shots` bitstrings are sampled; term eigenvalues
// are +-1 parities over the term support. With noise > 0 every circuit
// gate is followed, per touched qubit, by a depolarizing event: with
// probability `noise` a Pauli drawn uniformly from {I, X, Y, Z} is
// applied, re-sampled per shot (trajectory method).
SampledEstimate estimate_energy_sampled(const Circuit& circuit, const StateVector& init,
                                        const Hamiltonian& hamiltonian, std::int64_t shots,
                                        std::mt19937_64& rng, double noise = 0.0);

// Basis-change rotation mapping `axis` eigenstates onto the Z basis, or
// nothing for Z itself.
std::optional<Gate> basis_change_gate(Axis axis, int qubit);

}  // namespace qneat
