#pragma once

#include <functional>
#include <iosfwd>
#include <random>
#include <vector>

#include "qneat/measure.hpp"
#include "qneat/mutation.hpp"
#include "qneat/runlog.hpp"

namespace qneat {

// Expectation under one appended Pauli rotation is an exact sinusoid
// f(theta) = a + b cos(theta) + c sin(theta); reconstructed from f(0),
// f(pi/2), f(pi). A generator commuting with H gives b = c = 0.
struct SinusoidFit {
    double a = 0.0, b = 0.0, c = 0.0;

    double value(double theta) const;
    double minimum() const;  // a - sqrt(b^2 + c^2)
    double at_zero() const { return a + b; }
};

SinusoidFit fit_rotation_response(const StateVector& state, const Hamiltonian& hamiltonian,
                                  const PauliGenerator& generator);

// A generator is useful for (state, H) when some rotation angle strictly
// lowers the expectation beyond `tol`.
bool is_useful_generator(const StateVector& state, const Hamiltonian& hamiltonian,
                         const PauliGenerator& generator, double tol = 1e-9);

using StateSampler = std::function<StateVector(std::mt19937_64&)>;

// Uniform product states over single-qubit Bloch spheres.
StateSampler uniform_product_state_sampler(int num_qubits);

// Fraction of (sampled state, uniform generator) draws that are useful.
double useful_gate_fraction(const Hamiltonian& hamiltonian, const StateSampler& sampler,
                            int num_samples, std::mt19937_64& rng, double tol = 1e-9);

// Exhaustive variant over the whole generator set for a fixed state.
double useful_gate_fraction_exhaustive(const StateVector& state,
                                       const Hamiltonian& hamiltonian, double tol = 1e-9);

struct HistogramRow {
    std::string label;
    std::string gate_kind;
    std::int64_t count = 0;      // accepted improvements
    std::int64_t proposals = 0;  // proposals of this label
    double rate = 0.0;           // count / proposals of this label
};

// Per-(action label, gate kind) acceptance tallies with rates normalized
// by the number of proposals of that label.
std::vector<HistogramRow> success_histogram(const RunLog& log);

struct CurvePoint {
    std::int64_t calls = 0;
    double energy = 0.0;
};

// (cumulative circuit calls, parent energy) series, starting at the
// initial evaluation.
std::vector<CurvePoint> calls_vs_energy(const RunLog& log);

// CSV emitters; headers "label,gate_kind,count,proposals,rate" and
// "calls,energy".
void write_histogram_csv(std::ostream& out, const std::vector<HistogramRow>& rows);
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points);

}  // namespace qneat
