#include "qneat/gradient.hpp"

#include <numbers>

#include <nlohmann/json.hpp>

namespace qneat {

LayeredAnsatz::LayeredAnsatz(int num_qubits, int num_layers)
    : num_qubits_(num_qubits), num_layers_(num_layers) {
    if (num_qubits < 2) throw std::invalid_argument("ansatz needs at least two qubits");
    if (num_layers < 1) throw std::invalid_argument("ansatz needs at least one layer");
}

Circuit LayeredAnsatz::build(const std::vector<double>& theta) const {
    if (theta.size() != parameter_count())
        throw std::invalid_argument("parameter vector length does not match ansatz");
    Circuit c(num_qubits_);
    std::size_t k = 0;
    for (int layer = 0; layer < num_layers_; ++layer) {
        for (int q = 0; q < num_qubits_; ++q)
            c.push_back(Gate(PauliGenerator(Axis::Y, q), theta[k++]));
        for (int q = 0; q < num_qubits_; ++q)
            c.push_back(Gate(PauliGenerator(Axis::Z, q), theta[k++]));
        for (int q = 0; q + 1 < num_qubits_; ++q)
            c.push_back(Gate(PauliGenerator(Axis::Z, q, q + 1), theta[k++]));
    }
    return c;
}

std::vector<double> LayeredAnsatz::random_parameters(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> unif(0.0, 2.0 * std::numbers::pi);
    std::vector<double> theta(parameter_count());
    for (auto& t : theta) t = unif(rng);
    return theta;
}

int LayeredAnsatz::layers_for_parameter_count(int num_qubits, int min_parameters) {
    const int per_layer = 3 * num_qubits - 1;
    return (min_parameters + per_layer - 1) / per_layer;
}

std::vector<double> parameter_shift_gradient(const Circuit& circuit, Evaluator& evaluator) {
    constexpr double shift = std::numbers::pi / 2.0;
    std::mt19937_64 dummy_rng(0);  // exact evaluation ignores it
    std::vector<double> grad(circuit.size());
    Circuit shifted = circuit;
    for (std::size_t k = 0; k < circuit.size(); ++k) {
        shifted.gates[k].theta = circuit.gates[k].theta + shift;
        const double plus = evaluator.evaluate(shifted, dummy_rng);
        shifted.gates[k].theta = circuit.gates[k].theta - shift;
        const double minus = evaluator.evaluate(shifted, dummy_rng);
        shifted.gates[k].theta = circuit.gates[k].theta;
        grad[k] = (plus - minus) / 2.0;
    }
    return grad;
}

std::vector<double> parameter_shift_gradient(const LayeredAnsatz& ansatz,
                                             const std::vector<double>& theta,
                                             Evaluator& evaluator) {
    if (theta.size() != ansatz.parameter_count())
        throw std::invalid_argument("parameter vector length does not match ansatz");
    // Parameters map 1:1 onto gate angles in build order.
    return parameter_shift_gradient(ansatz.build(theta), evaluator);
}

void GradientConfig::validate() const {
    if (num_qubits < 2) throw std::invalid_argument("need at least two qubits");
    if (num_layers < 1) throw std::invalid_argument("need at least one layer");
    if (learning_rate < 0.0) throw std::invalid_argument("learning rate must be non-negative");
    if (steps < 1) throw std::invalid_argument("need at least one step");
}

RunLog gradient_descent_run(const GradientConfig& cfg, Evaluator& evaluator) {
    cfg.validate();
    const LayeredAnsatz ansatz(cfg.num_qubits, cfg.num_layers);

    RunLog log;
    log.set_config({{"num_qubits", cfg.num_qubits},
                    {"num_layers", cfg.num_layers},
                    {"parameters", ansatz.parameter_count()},
                    {"learning_rate", cfg.learning_rate},
                    {"steps", cfg.steps},
                    {"seed", cfg.seed}});

    std::mt19937_64 rng(split_seed(cfg.seed, 0));
    std::vector<double> theta = ansatz.random_parameters(rng);

    double energy = evaluator.evaluate(ansatz.build(theta), rng);
    log.initial_energy = energy;
    log.initial_calls = evaluator.total_calls();

    for (int step = 0; step < cfg.steps; ++step) {
        const auto grad = parameter_shift_gradient(ansatz, theta, evaluator);
        for (std::size_t k = 0; k < theta.size(); ++k)
            theta[k] -= cfg.learning_rate * grad[k];

        const double before = energy;
        energy = evaluator.evaluate(ansatz.build(theta), rng);  // logged energy

        GenerationRecord r;
        r.generation = step;
        r.parent_energy_before = before;
        r.best_offspring_energy = energy;
        r.accepted = energy < before;
        r.parent_gate_count = static_cast<std::int64_t>(ansatz.build(theta).size());
        r.cumulative_calls = evaluator.total_calls();
        log.records.push_back(std::move(r));
    }
    log.final_circuit = ansatz.build(theta);
    return log;
}

}  // namespace qneat
