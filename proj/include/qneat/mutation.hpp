#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qneat/types.hpp"

namespace qneat {

struct MutationConfig {
    double p_insert = 0.5;
    double p_delete = 0.1;
    double p_swap = 0.1;
    double p_modify = 0.3;
    double p_repeat = 0.1;       // chance to chain another action
    double modify_sigma = 0.1;   // std deviation of the parameter nudge
    double theta_min = 0.0;
    double theta_max = 2.0 * std::numbers::pi;

    void validate() const {
        const double probs[] = {p_insert, p_delete, p_swap, p_modify};
        double sum = 0.0;
        for (double p : probs) {
            if (p < 0.0 || p > 1.0)
                throw std::invalid_argument("action probabilities must lie in [0,1]");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("action probabilities must sum to 1");
        if (p_repeat < 0.0 || p_repeat >= 1.0)
            throw std::invalid_argument("repeat probability must lie in [0,1)");
        if (modify_sigma <= 0.0)
            throw std::invalid_argument("modify sigma must be positive");
        if (!(theta_max > theta_min))
            throw std::invalid_argument("empty theta range");
    }
};

enum class MutationAction { Insert, Delete, Swap, Modify };

inline std::string action_name(MutationAction a) {
    switch (a) {
    case MutationAction::Insert: return "insert";
    case MutationAction::Delete: return "delete";
    case MutationAction::Swap: return "swap";
    case MutationAction::Modify: return "modify";
    }
    throw std::logic_error("bad action");
}

struct MutationStep {
    MutationAction action;
    std::size_t position;
    std::string gate_kind;  // kind of the inserted/removed/modified gate
};

struct MutationOutcome {
    std::vector<MutationStep> actions;

    // Fig.-4 style label: the single action name, or "multiple".
    std::string label() const {
        if (actions.empty()) throw std::logic_error("empty mutation outcome");
        return actions.size() == 1 ? action_name(actions[0].action) : "multiple";
    }

    // Gate kind credited in statistics: the first action's.
    const std::string& gate_kind() const { return actions.front().gate_kind; }
};

// Randomness source for one mutation; virtual so tests can script the
// exact sequence of draws.
class MutationSource {
  public:
    virtual ~MutationSource() = default;
    virtual MutationAction next_action(const MutationConfig& cfg) = 0;
    virtual bool repeat(const MutationConfig& cfg) = 0;
    virtual std::size_t position(std::size_t count) = 0;  // uniform in [0, count)
    virtual Gate new_gate(int num_qubits) = 0;
    virtual double epsilon(double sigma) = 0;
};

class RandomMutationSource : public MutationSource {
  public:
    RandomMutationSource(std::mt19937_64& rng, const MutationConfig& cfg)
        : rng_(rng), cfg_(cfg) {}

    MutationAction next_action(const MutationConfig& cfg) override;
    bool repeat(const MutationConfig& cfg) override;
    std::size_t position(std::size_t count) override;
    Gate new_gate(int num_qubits) override;
    double epsilon(double sigma) override;

  private:
    std::mt19937_64& rng_;
    const MutationConfig& cfg_;
};

// Uniform draw over the 3n single-qubit plus 3*n*(n-1)/2 two-qubit
// generators, theta uniform in [theta_min, theta_max).
Gate random_gate(int num_qubits, std::mt19937_64& rng, double theta_min,
                 double theta_max);

inline std::size_t generator_count(int num_qubits) {
    return 3u * static_cast<std::size_t>(num_qubits) +
           3u * static_cast<std::size_t>(num_qubits) * (num_qubits - 1) / 2;
}

// Enumerate the full generator set in the order random_gate indexes it.
std::vector<PauliGenerator> all_generators(int num_qubits);

// Two-level mutation: draw an action, apply it, chain
// with probability p_repeat. On an empty circuit Delete/Swap/Modify
// degrade to Insert and are recorded as Insert.
MutationOutcome mutate(Circuit& circuit, const MutationConfig& cfg, MutationSource& src);

// Convenience overload drawing from rng.
MutationOutcome mutate(Circuit& circuit, const MutationConfig& cfg, std::mt19937_64& rng);

}  // namespace qneat
