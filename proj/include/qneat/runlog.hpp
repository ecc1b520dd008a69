#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qneat/mutation.hpp"
#include "qneat/types.hpp"

namespace qneat {

inline constexpr int kRunLogSchemaVersion = 1;

struct GenerationRecord {
    std::int64_t generation = 0;
    double parent_energy_before = 0.0;
    double best_offspring_energy = 0.0;
    bool accepted = false;
    std::optional<MutationOutcome> outcome;  // of the accepted offspring
    std::int64_t parent_gate_count = 0;
    std::int64_t cumulative_calls = 0;

    nlohmann::json to_json() const;
    static GenerationRecord from_json(const nlohmann::json& j);
};

// Tally keyed by (outcome label, gate kind).
using SuccessTally = std::map<std::pair<std::string, std::string>, std::int64_t>;

struct RunLog {
    nlohmann::json config() const;
    void set_config(nlohmann::json cfg);

    std::vector<GenerationRecord> records;
    Circuit final_circuit{1};
    SuccessTally accepted_tally;   // accepted improvements
    SuccessTally proposal_tally;   // all proposed offspring mutations

    double initial_energy = 0.0;
    std::int64_t initial_calls = 0;  // calls spent evaluating the initial parent

    // JSON-lines: one GenerationRecord per line, then a trailing summary
    // object carrying schema version, config, tallies and final circuit.
    void write_jsonl(std::ostream& out) const;
    static RunLog read_jsonl(std::istream& in);

  private:
    std::string config_text_ = "{}";
};

nlohmann::json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);

}  // namespace qneat
