#include "qneat/runlog.hpp"

#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

namespace qneat {

namespace {

nlohmann::json outcome_to_json(const MutationOutcome& o) {
    nlohmann::json actions = nlohmann::json::array();
    for (const auto& step : o.actions)
        actions.push_back({{"action", action_name(step.action)},
                           {"position", step.position},
                           {"gate_kind", step.gate_kind}});
    return {{"label", o.label()}, {"actions", std::move(actions)}};
}

MutationAction action_from_name(const std::string& s) {
    if (s == "insert") return MutationAction::Insert;
    if (s == "delete") return MutationAction::Delete;
    if (s == "swap") return MutationAction::Swap;
    if (s == "modify") return MutationAction::Modify;
    throw std::invalid_argument("unknown mutation action: " + s);
}

MutationOutcome outcome_from_json(const nlohmann::json& j) {
    MutationOutcome o;
    for (const auto& a : j.at("actions"))
        o.actions.push_back({action_from_name(a.at("action").get<std::string>()),
                             a.at("position").get<std::size_t>(),
                             a.at("gate_kind").get<std::string>()});
    return o;
}

nlohmann::json tally_to_json(const SuccessTally& t) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [key, count] : t)
        out.push_back({{"label", key.first}, {"gate_kind", key.second}, {"count", count}});
    return out;
}

SuccessTally tally_from_json(const nlohmann::json& j) {
    SuccessTally t;
    for (const auto& e : j)
        t[{e.at("label").get<std::string>(), e.at("gate_kind").get<std::string>()}] =
            e.at("count").get<std::int64_t>();
    return t;
}

}  // namespace

nlohmann::json circuit_to_json(const Circuit& c) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto& g : c.gates)
        gates.push_back({{"generator",
                          {{"axis", std::string(1, axis_char(g.generator.axis))},
                           {"qubits", g.generator.qubits}}},
                         {"theta", g.theta}});
    return {{"num_qubits", c.num_qubits}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const nlohmann::json& j) {
    Circuit c(j.at("num_qubits").get<int>());
    for (const auto& g : j.at("gates")) {
        const auto& gen = g.at("generator");
        const Axis ax = axis_from_char(gen.at("axis").get<std::string>().at(0));
        const auto qubits = gen.at("qubits").get<std::vector<int>>();
        PauliGenerator pg;
        if (qubits.size() == 1)
            pg = PauliGenerator(ax, qubits[0]);
        else if (qubits.size() == 2)
            pg = PauliGenerator(ax, qubits[0], qubits[1]);
        else
            throw std::invalid_argument("generator acts on 1 or 2 qubits");
        c.push_back(Gate(pg, g.at("theta").get<double>()));
    }
    return c;
}

nlohmann::json GenerationRecord::to_json() const {
    nlohmann::json j{{"generation", generation},
                     {"parent_energy_before", parent_energy_before},
                     {"best_offspring_energy", best_offspring_energy},
                     {"accepted", accepted},
                     {"parent_gate_count", parent_gate_count},
                     {"cumulative_calls", cumulative_calls}};
    j["outcome"] = outcome ? outcome_to_json(*outcome) : nlohmann::json(nullptr);
    return j;
}

GenerationRecord GenerationRecord::from_json(const nlohmann::json& j) {
    GenerationRecord r;
    r.generation = j.at("generation").get<std::int64_t>();
    r.parent_energy_before = j.at("parent_energy_before").get<double>();
    r.best_offspring_energy = j.at("best_offspring_energy").get<double>();
    r.accepted = j.at("accepted").get<bool>();
    r.parent_gate_count = j.at("parent_gate_count").get<std::int64_t>();
    r.cumulative_calls = j.at("cumulative_calls").get<std::int64_t>();
    if (!j.at("outcome").is_null()) r.outcome = outcome_from_json(j.at("outcome"));
    return r;
}

nlohmann::json RunLog::config() const { return nlohmann::json::parse(config_text_); }

void RunLog::set_config(nlohmann::json cfg) { config_text_ = cfg.dump(); }

void RunLog::write_jsonl(std::ostream& out) const {
    for (const auto& r : records) out << r.to_json().dump() << '\n';
    nlohmann::json summary{{"schema", kRunLogSchemaVersion},
                           {"config", config()},
                           {"initial_energy", initial_energy},
                           {"initial_calls", initial_calls},
                           {"final_circuit", circuit_to_json(final_circuit)},
                           {"accepted_tally", tally_to_json(accepted_tally)},
                           {"proposal_tally", tally_to_json(proposal_tally)}};
    out << summary.dump() << '\n';
}

RunLog RunLog::read_jsonl(std::istream& in) {
    RunLog log;
    std::string line;
    nlohmann::json last;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        if (j.contains("schema")) {
            last = std::move(j);
            continue;
        }
        log.records.push_back(GenerationRecord::from_json(j));
    }
    if (last.is_null()) throw std::runtime_error("run log is missing its summary line");
    if (last.at("schema").get<int>() != kRunLogSchemaVersion)
        throw std::runtime_error("unsupported run log schema version");
    log.set_config(last.at("config"));
    log.initial_energy = last.at("initial_energy").get<double>();
    log.initial_calls = last.at("initial_calls").get<std::int64_t>();
    log.final_circuit = circuit_from_json(last.at("final_circuit"));
    log.accepted_tally = tally_from_json(last.at("accepted_tally"));
    log.proposal_tally = tally_from_json(last.at("proposal_tally"));
    return log;
}

}  // namespace qneat
