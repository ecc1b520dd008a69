#include "qneat/cli.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qneat/analysis.hpp"
#include "qneat/evolution.hpp"
#include "qneat/gradient.hpp"
#include "qneat/hamiltonian.hpp"

namespace qneat::cli {

namespace fs = std::filesystem;

namespace {

struct HamiltonianOptions {
    std::string name = "tfi";
    int qubits = 10;
    double coupling = 1.0;
    double field = 1.0;
    std::uint64_t sk_seed = 1;
};

void add_hamiltonian_options(CLI::App& cmd, HamiltonianOptions& opts) {
    cmd.add_option("--hamiltonian", opts.name, "Benchmark Hamiltonian")
        ->check(CLI::IsMember({"local-x", "local-z", "tfi", "sk"}))
        ->capture_default_str();
    cmd.add_option("--qubits", opts.qubits, "Qubit count")->capture_default_str();
    cmd.add_option("--coupling", opts.coupling, "TFI coupling J")->capture_default_str();
    cmd.add_option("--field", opts.field, "TFI field h")->capture_default_str();
    cmd.add_option("--sk-seed", opts.sk_seed,
                   "Seed for the SK coupling instance (separate from the run seed)")
        ->capture_default_str();
}

Hamiltonian make_hamiltonian(const HamiltonianOptions& opts) {
    if (opts.name == "local-x") return local_pauli_sum(opts.qubits, Axis::X);
    if (opts.name == "local-z") return local_pauli_sum(opts.qubits, Axis::Z);
    if (opts.name == "tfi") return tfi(opts.qubits, opts.coupling, opts.field);
    if (opts.name == "sk") {
        std::mt19937_64 rng(opts.sk_seed);
        return sk(opts.qubits, rng);
    }
    throw CLI::ValidationError("--hamiltonian", "unknown Hamiltonian: " + opts.name);
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed) {
    if (seed) return *seed;
    std::random_device entropy;
    return (static_cast<std::uint64_t>(entropy()) << 32) ^ entropy();
}

std::vector<double> parse_probs(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) out.push_back(std::stod(token));
    if (out.size() != 4)
        throw CLI::ValidationError("--mutation-probs",
                                   "expected four comma-separated probabilities");
    return out;
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write " + path.string());
    out << text;
}

void write_runlog(const fs::path& dir, const RunLog& log) {
    std::ofstream out(dir / "run.jsonl");
    if (!out) throw std::ios_base::failure("cannot write " + (dir / "run.jsonl").string());
    log.write_jsonl(out);
    write_text_file(dir / "final_circuit.json", circuit_to_json(log.final_circuit).dump(2) + "\n");
}

struct RunOptions {
    HamiltonianOptions ham;
    int lambda = 4;
    int generations = 150;
    int stagnation = 0;  // 0 = disabled
    std::optional<std::uint64_t> seed;
    std::string mode = "exact";
    std::int64_t shots = 8192;
    double noise = 0.0;
    std::string init_axis;  // empty = neutral axis of the Hamiltonian
    std::string mutation_probs = "0.5,0.1,0.1,0.3";
    double p_repeat = 0.1;
    double modify_sigma = 0.1;
    int threads = 1;
    std::string out_dir = "qneat_out";
};

void add_eval_options(CLI::App& cmd, std::string& mode, std::int64_t& shots, double& noise) {
    cmd.add_option("--mode", mode, "Loss evaluation mode")
        ->check(CLI::IsMember({"exact", "sampled"}))
        ->capture_default_str();
    cmd.add_option("--shots", shots, "Shots per measurement setting (sampled mode)")
        ->capture_default_str();
    cmd.add_option("--noise", noise, "Per-gate per-qubit Pauli error probability (sampled mode)")
        ->capture_default_str();
}

std::unique_ptr<Evaluator> make_evaluator(const Hamiltonian& h, const StateVector& init,
                                          const std::string& mode, std::int64_t shots,
                                          double noise) {
    if (mode == "sampled")
        return std::make_unique<SampledEvaluator>(init, h, shots, noise);
    return std::make_unique<ExactEvaluator>(init, h);
}

// Echo the resolved configuration as key=value lines loadable via --config.
std::string echo_config(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

int do_run(const RunOptions& opts) {
    const Hamiltonian h = make_hamiltonian(opts.ham);

    const Axis axis =
        opts.init_axis.empty() ? neutral_initial_axis(h) : axis_from_char(opts.init_axis[0]);
    const StateVector init = init_product_state(h.num_qubits(), axis, +1);

    const auto probs = parse_probs(opts.mutation_probs);
    EvolutionConfig cfg;
    cfg.num_qubits = h.num_qubits();
    cfg.lambda = opts.lambda;
    cfg.max_generations = opts.generations;
    if (opts.stagnation > 0) cfg.stagnation_tau = opts.stagnation;
    cfg.seed = resolve_seed(opts.seed);
    cfg.threads = opts.threads;
    cfg.mutation.p_insert = probs[0];
    cfg.mutation.p_delete = probs[1];
    cfg.mutation.p_swap = probs[2];
    cfg.mutation.p_modify = probs[3];
    cfg.mutation.p_repeat = opts.p_repeat;
    cfg.mutation.modify_sigma = opts.modify_sigma;
    cfg.validate();

    auto evaluator = make_evaluator(h, init, opts.mode, opts.shots, opts.noise);
    RunLog log = run_evolution(cfg, *evaluator);
    auto config = log.config();
    config["hamiltonian"] = h.to_json();
    config["init_axis"] = std::string(1, axis_char(axis));
    config["mode"] = opts.mode;
    log.set_config(config);

    fs::create_directories(opts.out_dir);
    write_runlog(opts.out_dir, log);
    write_text_file(
        fs::path(opts.out_dir) / "config.ini",
        echo_config({{"hamiltonian", opts.ham.name},
                     {"qubits", std::to_string(opts.ham.qubits)},
                     {"coupling", fmt(opts.ham.coupling)},
                     {"field", fmt(opts.ham.field)},
                     {"sk-seed", std::to_string(opts.ham.sk_seed)},
                     {"lambda", std::to_string(opts.lambda)},
                     {"generations", std::to_string(opts.generations)},
                     {"stagnation", std::to_string(opts.stagnation)},
                     {"seed", std::to_string(cfg.seed)},
                     {"mode", opts.mode},
                     {"shots", std::to_string(opts.shots)},
                     {"noise", fmt(opts.noise)},
                     {"init-axis", std::string(1, static_cast<char>(std::tolower(axis_char(axis))))},
                     {"mutation-probs", opts.mutation_probs},
                     {"p-repeat", fmt(opts.p_repeat)},
                     {"modify-sigma", fmt(opts.modify_sigma)},
                     {"threads", std::to_string(opts.threads)},
                     {"out", opts.out_dir}}));

    const double final_energy =
        log.records.empty() ? log.initial_energy
                            : (log.records.back().accepted
                                   ? log.records.back().best_offspring_energy
                                   : log.records.back().parent_energy_before);
    std::cout << "generations=" << log.records.size() << " final_energy=" << final_energy
              << " calls=" << evaluator->total_calls() << " gates="
              << log.final_circuit.size() << "\n";
    return kExitOk;
}

struct GradientOptions {
    HamiltonianOptions ham{"tfi", 8};
    int layers = 0;  // 0 = smallest layer count with >= 150 parameters
    double eta = 0.1;
    int steps = 60;
    std::optional<std::uint64_t> seed;
    std::string mode = "exact";
    std::int64_t shots = 8192;
    double noise = 0.0;
    std::string init_axis;
    std::string out_dir = "qneat_out";
};

int do_gradient(const GradientOptions& opts) {
    const Hamiltonian h = make_hamiltonian(opts.ham);
    const Axis axis =
        opts.init_axis.empty() ? neutral_initial_axis(h) : axis_from_char(opts.init_axis[0]);
    const StateVector init = init_product_state(h.num_qubits(), axis, +1);

    GradientConfig cfg;
    cfg.num_qubits = h.num_qubits();
    cfg.num_layers = opts.layers > 0
                         ? opts.layers
                         : LayeredAnsatz::layers_for_parameter_count(h.num_qubits(), 150);
    cfg.learning_rate = opts.eta;
    cfg.steps = opts.steps;
    cfg.seed = resolve_seed(opts.seed);
    cfg.validate();

    auto evaluator = make_evaluator(h, init, opts.mode, opts.shots, opts.noise);
    RunLog log = gradient_descent_run(cfg, *evaluator);
    auto config = log.config();
    config["hamiltonian"] = h.to_json();
    config["init_axis"] = std::string(1, axis_char(axis));
    config["mode"] = opts.mode;
    log.set_config(config);

    fs::create_directories(opts.out_dir);
    write_runlog(opts.out_dir, log);
    write_text_file(fs::path(opts.out_dir) / "config.ini",
                    echo_config({{"hamiltonian", opts.ham.name},
                                 {"qubits", std::to_string(opts.ham.qubits)},
                                 {"coupling", fmt(opts.ham.coupling)},
                                 {"field", fmt(opts.ham.field)},
                                 {"sk-seed", std::to_string(opts.ham.sk_seed)},
                                 {"layers", std::to_string(cfg.num_layers)},
                                 {"eta", fmt(opts.eta)},
                                 {"steps", std::to_string(opts.steps)},
                                 {"seed", std::to_string(cfg.seed)},
                                 {"mode", opts.mode},
                                 {"shots", std::to_string(opts.shots)},
                                 {"noise", fmt(opts.noise)},
                                 {"init-axis", std::string(1, static_cast<char>(std::tolower(axis_char(axis))))},
                                 {"out", opts.out_dir}}));

    const double final_energy =
        log.records.empty() ? log.initial_energy : log.records.back().best_offspring_energy;
    std::cout << "steps=" << log.records.size() << " parameters="
              << LayeredAnsatz(cfg.num_qubits, cfg.num_layers).parameter_count()
              << " final_energy=" << final_energy << " calls=" << evaluator->total_calls()
              << "\n";
    return kExitOk;
}

int do_spectrum(const HamiltonianOptions& ham, const std::string& out_dir) {
    const Hamiltonian h = make_hamiltonian(ham);
    const auto [lo, hi] = exact_extremes(h);
    std::cout << "E_min=" << lo << " E_max=" << hi << "\n";
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_text_file(fs::path(out_dir) / "hamiltonian.json", h.to_json().dump(2) + "\n");
    }
    return kExitOk;
}

int do_stats(const std::string& log_path, const std::string& out_dir) {
    std::ifstream in(log_path);
    if (!in) throw std::ios_base::failure("cannot read " + log_path);
    const RunLog log = RunLog::read_jsonl(in);

    fs::create_directories(out_dir);
    std::ofstream hist(fs::path(out_dir) / "histogram.csv");
    std::ofstream curve(fs::path(out_dir) / "curve.csv");
    if (!hist || !curve) throw std::ios_base::failure("cannot write CSVs to " + out_dir);
    write_histogram_csv(hist, success_histogram(log));
    write_curve_csv(curve, calls_vs_energy(log));
    return kExitOk;
}

int do_prop1(const HamiltonianOptions& ham, int samples, std::optional<std::uint64_t> seed,
             double tol) {
    const Hamiltonian h = make_hamiltonian(ham);
    std::mt19937_64 rng(resolve_seed(seed));
    const double fraction = useful_gate_fraction(
        h, uniform_product_state_sampler(h.num_qubits()), samples, rng, tol);
    std::cout << "useful_fraction=" << fraction << "\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"QNEAT: evolutionary circuit-architecture search for VQE problems"};
    app.require_subcommand(1);

    const char* env_threads = std::getenv("QNEAT_THREADS");

    RunOptions run_opts;
    if (env_threads) run_opts.threads = std::max(1, std::atoi(env_threads));
    auto* run_cmd = app.add_subcommand("run", "QNEAT evolutionary optimization");
    std::string run_config_path;
    run_cmd->add_option("--config", run_config_path,
                        "Key-value config file; command-line flags take precedence");
    add_hamiltonian_options(*run_cmd, run_opts.ham);
    run_cmd->add_option("--lambda", run_opts.lambda, "Offspring per generation")
        ->capture_default_str();
    run_cmd->add_option("--generations", run_opts.generations, "Generation budget")
        ->capture_default_str();
    run_cmd->add_option("--stagnation", run_opts.stagnation,
                        "Stop after this many generations without improvement (0 = off)")
        ->capture_default_str();
    run_cmd->add_option("--seed", run_opts.seed, "Run seed (default: entropy, recorded)");
    add_eval_options(*run_cmd, run_opts.mode, run_opts.shots, run_opts.noise);
    run_cmd->add_option("--init-axis", run_opts.init_axis,
                        "Initial product-state axis override (x|y|z)")
        ->check(CLI::IsMember({"x", "y", "z"}));
    run_cmd->add_option("--mutation-probs", run_opts.mutation_probs,
                        "insert,delete,swap,modify probabilities")
        ->capture_default_str();
    run_cmd->add_option("--p-repeat", run_opts.p_repeat, "Mutation chain probability")
        ->capture_default_str();
    run_cmd->add_option("--modify-sigma", run_opts.modify_sigma,
                        "Std deviation of the MODIFY parameter nudge")
        ->capture_default_str();
    run_cmd->add_option("--threads", run_opts.threads, "Parallel offspring evaluations")
        ->capture_default_str();
    run_cmd->add_option("--out", run_opts.out_dir, "Output directory")->capture_default_str();

    GradientOptions grad_opts;
    auto* grad_cmd = app.add_subcommand("gradient", "Parameter-shift gradient-descent baseline");
    std::string grad_config_path;
    grad_cmd->add_option("--config", grad_config_path,
                         "Key-value config file; command-line flags take precedence");
    add_hamiltonian_options(*grad_cmd, grad_opts.ham);
    grad_cmd->add_option("--layers", grad_opts.layers,
                         "Ansatz layers (0 = smallest with >= 150 parameters)")
        ->capture_default_str();
    grad_cmd->add_option("--eta", grad_opts.eta, "Learning rate")->capture_default_str();
    grad_cmd->add_option("--steps", grad_opts.steps, "Gradient steps")->capture_default_str();
    grad_cmd->add_option("--seed", grad_opts.seed, "Run seed (default: entropy, recorded)");
    add_eval_options(*grad_cmd, grad_opts.mode, grad_opts.shots, grad_opts.noise);
    grad_cmd->add_option("--init-axis", grad_opts.init_axis,
                         "Initial product-state axis override (x|y|z)")
        ->check(CLI::IsMember({"x", "y", "z"}));
    grad_cmd->add_option("--out", grad_opts.out_dir, "Output directory")->capture_default_str();

    HamiltonianOptions spectrum_ham;
    std::string spectrum_out;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Exact extreme eigenvalues");
    add_hamiltonian_options(*spectrum_cmd, spectrum_ham);
    spectrum_cmd->add_option("--out", spectrum_out,
                             "Directory for the serialized Hamiltonian (optional)");

    std::string stats_log, stats_out = "qneat_out";
    auto* stats_cmd = app.add_subcommand("stats", "Histogram and curve CSVs from a run log");
    stats_cmd->add_option("--log", stats_log, "run.jsonl path")->required();
    stats_cmd->add_option("--out", stats_out, "Output directory")->capture_default_str();

    HamiltonianOptions prop1_ham{"local-z", 4};
    int prop1_samples = 1000;
    std::optional<std::uint64_t> prop1_seed;
    double prop1_tol = 1e-9;
    auto* prop1_cmd =
        app.add_subcommand("prop1", "Empirical useful-gate-fraction experiment");
    add_hamiltonian_options(*prop1_cmd, prop1_ham);
    prop1_cmd->add_option("--samples", prop1_samples, "Sample count")->capture_default_str();
    prop1_cmd->add_option("--seed", prop1_seed, "Sampling seed");
    prop1_cmd->add_option("--tol", prop1_tol, "Usefulness tolerance")->capture_default_str();

    // Returns -1 when parsing succeeded, otherwise the process exit code.
    const auto parse_once = [&app](const std::vector<std::string>& argv) -> int {
        try {
            std::vector<std::string> reversed(argv.rbegin(), argv.rend());
            app.parse(reversed);
            return -1;
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e);
            return code == 0 ? kExitOk : kExitConfig;
        }
    };

    if (const int code = parse_once(args); code >= 0) return code;

    // A --config file is applied by parsing its key=value pairs first and the
    // real command line second, so explicit flags win over file values.
    const std::string config_path = run_cmd->parsed()    ? run_config_path
                                    : grad_cmd->parsed() ? grad_config_path
                                                         : std::string{};
    if (!config_path.empty()) {
        const std::string subcommand = run_cmd->parsed() ? "run" : "gradient";
        std::vector<std::string> from_file{subcommand};
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error (io): cannot read config file " << config_path << "\n";
            return kExitIo;
        }
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                std::cerr << "error (config): bad config line: " << line << "\n";
                return kExitConfig;
            }
            const std::string key = line.substr(0, eq);
            if (key == "config") continue;
            from_file.push_back("--" + key);
            from_file.push_back(line.substr(eq + 1));
        }
        app.clear();
        if (const int code = parse_once(from_file); code >= 0)
            return code == kExitOk ? kExitConfig : code;
        app.clear();
        if (const int code = parse_once(args); code >= 0) return code;
    }

    try {
        if (run_cmd->parsed()) return do_run(run_opts);
        if (grad_cmd->parsed()) return do_gradient(grad_opts);
        if (spectrum_cmd->parsed()) return do_spectrum(spectrum_ham, spectrum_out);
        if (stats_cmd->parsed()) return do_stats(stats_log, stats_out);
        if (prop1_cmd->parsed()) return do_prop1(prop1_ham, prop1_samples, prop1_seed, prop1_tol);
    } catch (const UnsupportedSizeError& e) {
        std::cerr << "error (unsupported-size): " << e.what() << "\n";
        return kExitUnsupportedSize;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error (io): " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error (config): " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace qneat::cli
