#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qneat/evolution.hpp"
#include "qneat/runlog.hpp"

namespace qneat {

// Fixed layered ansatz: per layer one Ry and one Rz on every qubit
// followed by Rzz gates on adjacent pairs; num_layers * (3n - 1)
// parameters in total.
class LayeredAnsatz {
  public:
    LayeredAnsatz(int num_qubits, int num_layers);

    int num_qubits() const { return num_qubits_; }
    int num_layers() const { return num_layers_; }
    std::size_t parameter_count() const {
        return static_cast<std::size_t>(num_layers_) * (3u * num_qubits_ - 1);
    }

    Circuit build(const std::vector<double>& theta) const;

    // Uniform [0, 2pi) initial parameters.
    std::vector<double> random_parameters(std::mt19937_64& rng) const;

    // Smallest layer count with at least `min_parameters` parameters.
    static int layers_for_parameter_count(int num_qubits, int min_parameters);

  private:
    int num_qubits_;
    int num_layers_;
};

// Exact parameter-shift gradient: component k equals
// (f(theta + pi/2 e_k) - f(theta - pi/2 e_k)) / 2, two circuit calls per
// parameter. Every gate angle counts as one parameter.
std::vector<double> parameter_shift_gradient(const Circuit& circuit, Evaluator& evaluator);

std::vector<double> parameter_shift_gradient(const LayeredAnsatz& ansatz,
                                             const std::vector<double>& theta,
                                             Evaluator& evaluator);

struct GradientConfig {
    int num_qubits = 0;
    int num_layers = 1;
    double learning_rate = 0.1;
    int steps = 100;
    std::uint64_t seed = 0;

    void validate() const;
};

// Plain gradient descent over the layered ansatz. Reuses the RunLog
// schema; mutation/acceptance fields stay null.
RunLog gradient_descent_run(const GradientConfig& cfg, Evaluator& evaluator);

}  // namespace qneat
