#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>

#include "qneat/measure.hpp"
#include "qneat/mutation.hpp"
#include "qneat/runlog.hpp"

namespace qneat {

// Loss evaluator with built-in circuit-call accounting. Implementations
// must be safe for concurrent evaluate() calls on distinct circuits.
class Evaluator {
  public:
    virtual ~Evaluator() = default;
    virtual double evaluate(const Circuit& circuit, std::mt19937_64& rng) = 0;

    std::int64_t total_calls() const { return calls_.load(); }

  protected:
    void add_calls(std::int64_t n) { calls_.fetch_add(n); }

  private:
    std::atomic<std::int64_t> calls_{0};
};

class ExactEvaluator : public Evaluator {
  public:
    ExactEvaluator(StateVector init, Hamiltonian hamiltonian);
    double evaluate(const Circuit& circuit, std::mt19937_64& rng) override;

  private:
    StateVector init_;
    Hamiltonian hamiltonian_;
};

class SampledEvaluator : public Evaluator {
  public:
    SampledEvaluator(StateVector init, Hamiltonian hamiltonian, std::int64_t shots,
                     double noise = 0.0);
    double evaluate(const Circuit& circuit, std::mt19937_64& rng) override;

  private:
    StateVector init_;
    Hamiltonian hamiltonian_;
    std::int64_t shots_;
    double noise_;
    std::int64_t calls_per_eval_;
};

struct EvolutionConfig {
    int num_qubits = 0;
    int lambda = 4;
    int max_generations = 150;
    std::optional<int> stagnation_tau;
    std::uint64_t seed = 0;
    MutationConfig mutation;
    int threads = 1;

    void validate() const;
};

// One (1+lambda) generation: mutate lambda offspring independently,
// evaluate, keep the strict argmin over offspring if it beats the cached
// parent energy. Ties retain the parent; equal-best improving offspring
// resolve to the lowest index. Offspring randomness is split from
// `generation_seed` so parallel evaluation matches sequential.
struct GenerationResult {
    Circuit parent;
    double parent_energy;
    GenerationRecord record;
    std::vector<MutationOutcome> proposals;  // all lambda outcomes
};

GenerationResult evolve_generation(const Circuit& parent, double parent_energy,
                                   int lambda, Evaluator& evaluator,
                                   const MutationConfig& mutation_cfg,
                                   std::uint64_t generation_seed, int threads = 1);

// Full run: initial parent is a single random gate; stops at
// max_generations or after stagnation_tau generations without improvement.
RunLog run_evolution(const EvolutionConfig& cfg, Evaluator& evaluator);

// splitmix64 stream used to derive per-generation and per-offspring seeds.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace qneat
