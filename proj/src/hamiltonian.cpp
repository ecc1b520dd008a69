#include "qneat/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

namespace qneat {

PauliString::PauliString(double w, std::vector<std::pair<int, Axis>> p)
    : weight(w), paulis(std::move(p)) {
    if (!std::isfinite(weight)) throw std::invalid_argument("weight must be finite");
    std::sort(paulis.begin(), paulis.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i + 1 < paulis.size(); ++i)
        if (paulis[i].first == paulis[i + 1].first)
            throw std::invalid_argument("duplicate qubit in Pauli string");
    for (const auto& [q, ax] : paulis) {
        if (q < 0 || q > 63) throw std::invalid_argument("qubit index out of range");
        const std::uint64_t bit = std::uint64_t{1} << q;
        support_mask_ |= bit;
        switch (ax) {
        case Axis::X: flip_mask_ |= bit; break;
        case Axis::Y: flip_mask_ |= bit; phase_mask_ |= bit; ++y_count_; break;
        case Axis::Z: phase_mask_ |= bit; break;
        }
    }
}

Hamiltonian::Hamiltonian(int num_qubits, std::vector<PauliString> terms)
    : num_qubits_(num_qubits) {
    if (num_qubits < 1) throw std::invalid_argument("need at least one qubit");
    // Merge terms with identical axis assignments.
    std::map<std::vector<std::pair<int, Axis>>, double> merged;
    std::vector<std::vector<std::pair<int, Axis>>> order;
    for (auto& t : terms) {
        for (const auto& [q, ax] : t.paulis)
            if (q >= num_qubits) throw std::invalid_argument("term qubit index out of range");
        auto [it, inserted] = merged.emplace(t.paulis, 0.0);
        if (inserted) order.push_back(t.paulis);
        it->second += t.weight;
    }
    terms_.reserve(order.size());
    for (auto& p : order) terms_.emplace_back(merged.at(p), std::move(p));
}

double Hamiltonian::weight_norm() const {
    double s = 0.0;
    for (const auto& t : terms_) s += std::abs(t.weight);
    return s;
}

nlohmann::json Hamiltonian::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : terms_) {
        nlohmann::json paulis = nlohmann::json::array();
        for (const auto& [q, ax] : t.paulis)
            paulis.push_back({{"qubit", q}, {"axis", std::string(1, axis_char(ax))}});
        terms.push_back({{"weight", t.weight}, {"paulis", std::move(paulis)}});
    }
    return {{"n", num_qubits_}, {"terms", std::move(terms)}};
}

Hamiltonian Hamiltonian::from_json(const nlohmann::json& j) {
    std::vector<PauliString> terms;
    for (const auto& t : j.at("terms")) {
        std::vector<std::pair<int, Axis>> paulis;
        for (const auto& p : t.at("paulis"))
            paulis.emplace_back(p.at("qubit").get<int>(),
                                axis_from_char(p.at("axis").get<std::string>().at(0)));
        terms.emplace_back(t.at("weight").get<double>(), std::move(paulis));
    }
    return Hamiltonian(j.at("n").get<int>(), std::move(terms));
}

Hamiltonian local_pauli_sum(int num_qubits, Axis axis) {
    std::vector<PauliString> terms;
    terms.reserve(num_qubits);
    for (int q = 0; q < num_qubits; ++q)
        terms.emplace_back(1.0, std::vector<std::pair<int, Axis>>{{q, axis}});
    return Hamiltonian(num_qubits, std::move(terms));
}

Hamiltonian tfi(int num_qubits, double coupling, double field) {
    if (num_qubits < 2) throw std::invalid_argument("tfi needs at least two qubits");
    std::vector<PauliString> terms;
    for (int q = 0; q + 1 < num_qubits; ++q)
        terms.emplace_back(-coupling, std::vector<std::pair<int, Axis>>{
                                          {q, Axis::Z}, {q + 1, Axis::Z}});
    for (int q = 0; q < num_qubits; ++q)
        terms.emplace_back(-field, std::vector<std::pair<int, Axis>>{{q, Axis::X}});
    return Hamiltonian(num_qubits, std::move(terms));
}

Hamiltonian sk(int num_qubits, std::mt19937_64& rng) {
    if (num_qubits < 2) throw std::invalid_argument("sk needs at least two qubits");
    std::vector<PauliString> terms;
    std::uniform_int_distribution<int> coin(0, 1);
    for (int i = 0; i < num_qubits; ++i)
        for (int j = i + 1; j < num_qubits; ++j) {
            const double w = coin(rng) ? 1.0 : -1.0;
            terms.emplace_back(w, std::vector<std::pair<int, Axis>>{
                                      {i, Axis::Z}, {j, Axis::Z}});
        }
    return Hamiltonian(num_qubits, std::move(terms));
}

bool is_z_diagonal(const Hamiltonian& h) {
    for (const auto& t : h.terms())
        if (t.flip_mask() != 0) return false;
    return true;
}

std::vector<std::vector<std::complex<double>>> dense_matrix(const Hamiltonian& h) {
    if (h.num_qubits() > 12)
        throw UnsupportedSizeError("dense_matrix limited to 12 qubits");
    const std::size_t dim = std::size_t{1} << h.num_qubits();
    std::vector<std::vector<std::complex<double>>> m(
        dim, std::vector<std::complex<double>>(dim, {0.0, 0.0}));
    static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const auto& t : h.terms()) {
        const std::complex<double> base = ipow[t.y_count() & 3];
        for (std::size_t y = 0; y < dim; ++y) {
            // P|y> = phase(y) |y ^ flip_mask|
            std::complex<double> phase = base;
            if (std::popcount(y & t.phase_mask()) & 1) phase = -phase;
            m[y ^ t.flip_mask()][y] += t.weight * phase;
        }
    }
    return m;
}

std::pair<double, double> exact_extremes(const Hamiltonian& h) {
    if (is_z_diagonal(h)) {
        if (h.num_qubits() > 24)
            throw UnsupportedSizeError("bitstring scan limited to 24 qubits");
        const std::size_t dim = std::size_t{1} << h.num_qubits();
        double lo = 0.0, hi = 0.0;
        for (std::size_t x = 0; x < dim; ++x) {
            double e = 0.0;
            for (const auto& t : h.terms())
                e += (std::popcount(x & t.phase_mask()) & 1) ? -t.weight : t.weight;
            if (x == 0) { lo = hi = e; }
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
        return {lo, hi};
    }
    if (h.num_qubits() > 12)
        throw UnsupportedSizeError("dense diagonalization limited to 12 qubits");
    const auto m = dense_matrix(h);
    const auto dim = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXcd em(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) em(r, c) = m[r][c];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.minCoeff(), ev.maxCoeff()};
}

Axis neutral_initial_axis(const Hamiltonian& h) {
    bool present[3] = {false, false, false};
    for (const auto& t : h.terms())
        for (const auto& [q, ax] : t.paulis) present[static_cast<int>(ax)] = true;
    for (Axis a : {Axis::Y, Axis::X, Axis::Z})
        if (!present[static_cast<int>(a)]) return a;
    throw std::runtime_error("no neutral axis: all three Pauli axes appear in the Hamiltonian");
}

}  // namespace qneat
