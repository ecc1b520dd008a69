#include <utility>
#include "qneat/evolution.hpp"

#include <future>

#include <nlohmann/json.hpp>

namespace qneat {

ExactEvaluator::ExactEvaluator(StateVector init, Hamiltonian hamiltonian)
    : init_(std::move(init)), hamiltonian_(std::move(hamiltonian)) {
    if (init_.num_qubits() != hamiltonian_.num_qubits())
        throw std::invalid_argument("init state and Hamiltonian qubit counts differ");
}

double ExactEvaluator::evaluate(const Circuit& circuit, std::mt19937_64&) {
    const StateVector state = run_circuit(circuit, std::as_const(init_));
    add_calls(1);
    return expectation(state, hamiltonian_);
}

SampledEvaluator::SampledEvaluator(StateVector init, Hamiltonian hamiltonian,
                                   std::int64_t shots, double noise)
    : init_(std::move(init)),
      hamiltonian_(std::move(hamiltonian)),
      shots_(shots),
      noise_(noise),
      calls_per_eval_(circuit_call_count(EvalMode::Sampled, hamiltonian_)) {
    if (shots < 1) throw std::invalid_argument("shots must be at least 1");
}

double SampledEvaluator::evaluate(const Circuit& circuit, std::mt19937_64& rng) {
    const auto est = estimate_energy_sampled(circuit, init_, hamiltonian_, shots_, rng, noise_);
    add_calls(calls_per_eval_);
    return est.energy;
}

void EvolutionConfig::validate() const {
    if (num_qubits < 1) throw std::invalid_argument("need at least one qubit");
    if (lambda < 1) throw std::invalid_argument("lambda must be at least 1");
    if (max_generations < 1) throw std::invalid_argument("max_generations must be at least 1");
    if (stagnation_tau && *stagnation_tau < 1)
        throw std::invalid_argument("stagnation tau must be at least 1");
    if (threads < 1) throw std::invalid_argument("threads must be at least 1");
    mutation.validate();
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 step on seed + golden-ratio stride.
    std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

GenerationResult evolve_generation(const Circuit& parent, double parent_energy,
                                   int lambda, Evaluator& evaluator,
                                   const MutationConfig& mutation_cfg,
                                   std::uint64_t generation_seed, int threads) {
    if (lambda < 1) throw std::invalid_argument("lambda must be at least 1");

    struct Offspring {
        Circuit circuit{1};
        double energy = 0.0;
        MutationOutcome outcome;
    };
    std::vector<Offspring> offspring(static_cast<std::size_t>(lambda));

    auto produce = [&](int i) {
        std::mt19937_64 rng(split_seed(generation_seed, static_cast<std::uint64_t>(i)));
        Offspring o;
        o.circuit = parent;
        o.outcome = mutate(o.circuit, mutation_cfg, rng);
        try {
            o.energy = evaluator.evaluate(o.circuit, rng);
        } catch (const std::exception& e) {
            throw std::runtime_error("evaluation of offspring " + std::to_string(i) +
                                     " failed: " + e.what());
        }
        offspring[static_cast<std::size_t>(i)] = std::move(o);
    };

    if (threads > 1 && lambda > 1) {
        std::vector<std::future<void>> jobs;
        jobs.reserve(static_cast<std::size_t>(lambda));
        for (int i = 0; i < lambda; ++i)
            jobs.push_back(std::async(std::launch::async, produce, i));
        for (auto& j : jobs) j.get();
    } else {
        for (int i = 0; i < lambda; ++i) produce(i);
    }

    int best = 0;
    for (int i = 1; i < lambda; ++i)
        if (offspring[i].energy < offspring[best].energy) best = i;

    GenerationResult result{parent, parent_energy, {}, {}};
    result.record.parent_energy_before = parent_energy;
    result.record.best_offspring_energy = offspring[best].energy;
    result.record.accepted = offspring[best].energy < parent_energy;
    if (result.record.accepted) {
        result.parent = std::move(offspring[best].circuit);
        result.parent_energy = offspring[best].energy;
        result.record.outcome = offspring[best].outcome;
    }
    result.record.parent_gate_count = static_cast<std::int64_t>(result.parent.size());
    result.record.cumulative_calls = evaluator.total_calls();
    result.proposals.reserve(offspring.size());
    for (auto& o : offspring) result.proposals.push_back(std::move(o.outcome));
    return result;
}

RunLog run_evolution(const EvolutionConfig& cfg, Evaluator& evaluator) {
    cfg.validate();

    RunLog log;
    log.set_config({{"num_qubits", cfg.num_qubits},
                    {"lambda", cfg.lambda},
                    {"max_generations", cfg.max_generations},
                    {"stagnation_tau",
                     cfg.stagnation_tau ? nlohmann::json(*cfg.stagnation_tau)
                                        : nlohmann::json(nullptr)},
                    {"seed", cfg.seed}});

    // Minimal random initial parent: one uniformly drawn gate.
    std::mt19937_64 init_rng(split_seed(cfg.seed, 0));
    Circuit parent(cfg.num_qubits);
    parent.push_back(random_gate(cfg.num_qubits, init_rng, cfg.mutation.theta_min,
                                 cfg.mutation.theta_max));
    double parent_energy = evaluator.evaluate(parent, init_rng);
    log.initial_energy = parent_energy;
    log.initial_calls = evaluator.total_calls();

    int since_improvement = 0;
    for (int gen = 0; gen < cfg.max_generations; ++gen) {
        const std::uint64_t gen_seed =
            split_seed(cfg.seed, 1 + static_cast<std::uint64_t>(gen));
        auto result = evolve_generation(parent, parent_energy, cfg.lambda, evaluator,
                                        cfg.mutation, gen_seed, cfg.threads);
        result.record.generation = gen;
        for (const auto& o : result.proposals)
            ++log.proposal_tally[{o.label(), o.gate_kind()}];
        if (result.record.accepted) {
            ++log.accepted_tally[{result.record.outcome->label(),
                                  result.record.outcome->gate_kind()}];
            since_improvement = 0;
        } else {
            ++since_improvement;
        }
        parent = std::move(result.parent);
        parent_energy = result.parent_energy;
        log.records.push_back(std::move(result.record));
        if (cfg.stagnation_tau && since_improvement >= *cfg.stagnation_tau) break;
    }
    log.final_circuit = std::move(parent);
    return log;
}

}  // namespace qneat
