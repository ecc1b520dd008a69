#include "qneat/mutation.hpp"

namespace qneat {

std::vector<PauliGenerator> all_generators(int num_qubits) {
    std::vector<PauliGenerator> out;
    out.reserve(generator_count(num_qubits));
    for (Axis ax : kAllAxes)
        for (int q = 0; q < num_qubits; ++q) out.emplace_back(ax, q);
    for (Axis ax : kAllAxes)
        for (int i = 0; i < num_qubits; ++i)
            for (int j = i + 1; j < num_qubits; ++j) out.emplace_back(ax, i, j);
    return out;
}

Gate random_gate(int num_qubits, std::mt19937_64& rng, double theta_min,
                 double theta_max) {
    if (num_qubits < 1) throw std::invalid_argument("need at least one qubit");
    const std::size_t singles = 3u * static_cast<std::size_t>(num_qubits);
    const std::size_t total = generator_count(num_qubits);
    std::uniform_int_distribution<std::size_t> pick(0, total - 1);
    std::uniform_real_distribution<double> theta(theta_min, theta_max);

    const std::size_t k = pick(rng);
    PauliGenerator gen;
    if (k < singles) {
        gen = PauliGenerator(static_cast<Axis>(k / num_qubits),
                             static_cast<int>(k % num_qubits));
    } else {
        const std::size_t pairs = static_cast<std::size_t>(num_qubits) * (num_qubits - 1) / 2;
        const std::size_t k2 = k - singles;
        const Axis ax = static_cast<Axis>(k2 / pairs);
        std::size_t p = k2 % pairs;
        // Unrank the (i, j) pair with i < j.
        int i = 0;
        std::size_t row = static_cast<std::size_t>(num_qubits) - 1;
        while (p >= row) {
            p -= row;
            --row;
            ++i;
        }
        gen = PauliGenerator(ax, i, i + 1 + static_cast<int>(p));
    }
    return Gate(gen, theta(rng));
}

MutationAction RandomMutationSource::next_action(const MutationConfig& cfg) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng_);
    if (u < cfg.p_insert) return MutationAction::Insert;
    if (u < cfg.p_insert + cfg.p_delete) return MutationAction::Delete;
    if (u < cfg.p_insert + cfg.p_delete + cfg.p_swap) return MutationAction::Swap;
    return MutationAction::Modify;
}

bool RandomMutationSource::repeat(const MutationConfig& cfg) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    return unif(rng_) < cfg.p_repeat;
}

std::size_t RandomMutationSource::position(std::size_t count) {
    if (count == 0) return 0;
    std::uniform_int_distribution<std::size_t> pick(0, count - 1);
    return pick(rng_);
}

Gate RandomMutationSource::new_gate(int num_qubits) {
    return random_gate(num_qubits, rng_, cfg_.theta_min, cfg_.theta_max);
}

double RandomMutationSource::epsilon(double sigma) {
    std::normal_distribution<double> nudge(0.0, sigma);
    return nudge(rng_);
}

MutationOutcome mutate(Circuit& circuit, const MutationConfig& cfg, MutationSource& src) {
    MutationOutcome outcome;
    do {
        MutationAction action = src.next_action(cfg);
        if (circuit.gates.empty() && action != MutationAction::Insert)
            action = MutationAction::Insert;  // degradation rule

        switch (action) {
        case MutationAction::Insert: {
            const std::size_t pos = src.position(circuit.gates.size() + 1);
            Gate g = src.new_gate(circuit.num_qubits);
            outcome.actions.push_back({action, pos, g.generator.kind()});
            circuit.gates.insert(circuit.gates.begin() + static_cast<std::ptrdiff_t>(pos),
                                 std::move(g));
            break;
        }
        case MutationAction::Delete: {
            const std::size_t pos = src.position(circuit.gates.size());
            outcome.actions.push_back({action, pos, circuit.gates[pos].generator.kind()});
            circuit.gates.erase(circuit.gates.begin() + static_cast<std::ptrdiff_t>(pos));
            break;
        }
        case MutationAction::Swap: {
            const std::size_t pos = src.position(circuit.gates.size());
            Gate g = src.new_gate(circuit.num_qubits);
            outcome.actions.push_back({action, pos, g.generator.kind()});
            circuit.gates[pos] = std::move(g);
            break;
        }
        case MutationAction::Modify: {
            const std::size_t pos = src.position(circuit.gates.size());
            outcome.actions.push_back({action, pos, circuit.gates[pos].generator.kind()});
            circuit.gates[pos].theta += src.epsilon(cfg.modify_sigma);
            break;
        }
        }
    } while (src.repeat(cfg));
    return outcome;
}

MutationOutcome mutate(Circuit& circuit, const MutationConfig& cfg, std::mt19937_64& rng) {
    RandomMutationSource src(rng, cfg);
    return mutate(circuit, cfg, src);
}

}  // namespace qneat
