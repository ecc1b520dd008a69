#include "qneat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

namespace qneat {

double SinusoidFit::value(double theta) const {
    return a + b * std::cos(theta) + c * std::sin(theta);
}

double SinusoidFit::minimum() const { return a - std::sqrt(b * b + c * c); }

SinusoidFit fit_rotation_response(const StateVector& state, const Hamiltonian& hamiltonian,
                                  const PauliGenerator& generator) {
    generator.validate(state.num_qubits());
    constexpr double pi = std::numbers::pi;
    auto f = [&](double theta) {
        StateVector s = state;
        apply_gate(s, Gate(generator, theta));
        return expectation(s, hamiltonian);
    };
    const double f0 = f(0.0);
    const double f_half = f(pi / 2.0);
    const double f_pi = f(pi);
    SinusoidFit fit;
    fit.a = (f0 + f_pi) / 2.0;
    fit.b = (f0 - f_pi) / 2.0;
    fit.c = f_half - fit.a;
    return fit;
}

bool is_useful_generator(const StateVector& state, const Hamiltonian& hamiltonian,
                         const PauliGenerator& generator, double tol) {
    const auto fit = fit_rotation_response(state, hamiltonian, generator);
    return fit.minimum() < fit.at_zero() - tol;
}

StateSampler uniform_product_state_sampler(int num_qubits) {
    return [num_qubits](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        StateVector state(num_qubits);
        std::vector<std::pair<cplx, cplx>> locals(static_cast<std::size_t>(num_qubits));
        for (auto& [c0, c1] : locals) {
            const double cos_polar = 2.0 * u01(rng) - 1.0;
            const double half = std::acos(cos_polar) / 2.0;
            const double phi = 2.0 * std::numbers::pi * u01(rng);
            c0 = std::cos(half);
            c1 = std::polar(std::sin(half), phi);
        }
        const std::size_t dim = state.dim();
        for (std::size_t x = 0; x < dim; ++x) {
            cplx a{1.0, 0.0};
            for (int q = 0; q < num_qubits; ++q)
                a *= ((x >> q) & 1u) ? locals[static_cast<std::size_t>(q)].second
                                     : locals[static_cast<std::size_t>(q)].first;
            state[x] = a;
        }
        return state;
    };
}

double useful_gate_fraction(const Hamiltonian& hamiltonian, const StateSampler& sampler,
                            int num_samples, std::mt19937_64& rng, double tol) {
    if (num_samples < 1) throw std::invalid_argument("need at least one sample");
    const auto generators = all_generators(hamiltonian.num_qubits());
    std::uniform_int_distribution<std::size_t> pick(0, generators.size() - 1);
    int useful = 0;
    for (int s = 0; s < num_samples; ++s) {
        const StateVector state = sampler(rng);
        if (is_useful_generator(state, hamiltonian, generators[pick(rng)], tol)) ++useful;
    }
    return static_cast<double>(useful) / num_samples;
}

double useful_gate_fraction_exhaustive(const StateVector& state,
                                       const Hamiltonian& hamiltonian, double tol) {
    const auto generators = all_generators(state.num_qubits());
    int useful = 0;
    for (const auto& g : generators)
        if (is_useful_generator(state, hamiltonian, g, tol)) ++useful;
    return static_cast<double>(useful) / static_cast<double>(generators.size());
}

std::vector<HistogramRow> success_histogram(const RunLog& log) {
    std::map<std::string, std::int64_t> proposals_per_label;
    for (const auto& [key, count] : log.proposal_tally) proposals_per_label[key.first] += count;

    // Every (label, gate kind) seen in either tally gets a row.
    std::map<std::pair<std::string, std::string>, std::int64_t> counts = log.accepted_tally;
    for (const auto& [key, count] : log.proposal_tally) counts.try_emplace(key, 0);

    std::vector<HistogramRow> rows;
    rows.reserve(counts.size());
    for (const auto& [key, count] : counts) {
        HistogramRow row;
        row.label = key.first;
        row.gate_kind = key.second;
        row.count = count;
        row.proposals = proposals_per_label[key.first];
        row.rate = row.proposals > 0
                       ? static_cast<double>(row.count) / static_cast<double>(row.proposals)
                       : 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<CurvePoint> calls_vs_energy(const RunLog& log) {
    std::vector<CurvePoint> points;
    if (log.records.empty() && log.initial_calls == 0) return points;
    points.push_back({log.initial_calls, log.initial_energy});
    double best = log.initial_energy;
    for (const auto& r : log.records) {
        const double energy = r.accepted ? r.best_offspring_energy : r.parent_energy_before;
        best = std::min(best, energy);
        points.push_back({r.cumulative_calls, best});
    }
    return points;
}

void write_histogram_csv(std::ostream& out, const std::vector<HistogramRow>& rows) {
    out << "label,gate_kind,count,proposals,rate\n";
    for (const auto& r : rows)
        out << r.label << ',' << r.gate_kind << ',' << r.count << ',' << r.proposals << ','
            << r.rate << '\n';
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points) {
    out << "calls,energy\n";
    for (const auto& p : points) out << p.calls << ',' << p.energy << '\n';
}

}  // namespace qneat
