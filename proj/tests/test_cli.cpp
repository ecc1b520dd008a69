#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qneat/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CaptureStdout {
    CaptureStdout() : old_(std::cout.rdbuf(buffer_.rdbuf())) {}
    ~CaptureStdout() { std::cout.rdbuf(old_); }
    std::string str() const { return buffer_.str(); }

  private:
    std::ostringstream buffer_;
    std::streambuf* old_;
};

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("qneat_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("spectrum prints extremes") {
    CaptureStdout cap;
    const int rc = qneat::cli::run({"spectrum", "--hamiltonian", "local-x", "--qubits", "10"});
    CHECK(rc == qneat::cli::kExitOk);
    CHECK(cap.str() == "E_min=-10 E_max=10\n");
}

TEST_CASE("spectrum writes the Hamiltonian JSON") {
    const auto dir = fresh_dir("spectrum");
    CaptureStdout cap;
    const int rc = qneat::cli::run({"spectrum", "--hamiltonian", "tfi", "--qubits", "4",
                                    "--out", dir.string()});
    CHECK(rc == qneat::cli::kExitOk);
    CHECK(fs::exists(dir / "hamiltonian.json"));
    CHECK(slurp(dir / "hamiltonian.json").find("\"n\": 4") != std::string::npos);
}

TEST_CASE("run produces log, circuit and config echo") {
    const auto dir = fresh_dir("run");
    CaptureStdout cap;
    const int rc = qneat::cli::run({"run", "--hamiltonian", "local-x", "--qubits", "4",
                                    "--lambda", "4", "--generations", "20", "--seed", "7",
                                    "--out", dir.string()});
    CHECK(rc == qneat::cli::kExitOk);
    CHECK(fs::exists(dir / "run.jsonl"));
    CHECK(fs::exists(dir / "final_circuit.json"));
    CHECK(fs::exists(dir / "config.ini"));
    CHECK(slurp(dir / "config.ini").find("seed=7\n") != std::string::npos);
}

TEST_CASE("rerunning from the echoed config reproduces the log byte for byte") {
    const auto dir_a = fresh_dir("repro_a");
    const auto dir_b = fresh_dir("repro_b");
    {
        CaptureStdout cap;
        REQUIRE(qneat::cli::run({"run", "--hamiltonian", "tfi", "--qubits", "3",
                                 "--generations", "15", "--seed", "11", "--out",
                                 dir_a.string()}) == qneat::cli::kExitOk);
    }
    {
        CaptureStdout cap;
        REQUIRE(qneat::cli::run({"run", "--config", (dir_a / "config.ini").string(), "--out",
                                 dir_b.string()}) == qneat::cli::kExitOk);
    }
    CHECK(slurp(dir_a / "run.jsonl") == slurp(dir_b / "run.jsonl"));
    CHECK(slurp(dir_a / "final_circuit.json") == slurp(dir_b / "final_circuit.json"));
}

TEST_CASE("invalid mutation probabilities are a usage error with no outputs") {
    const auto dir = fresh_dir("badprobs");
    CaptureStdout cap;
    const int rc = qneat::cli::run({"run", "--hamiltonian", "tfi", "--qubits", "3",
                                    "--mutation-probs", "0.5,0.5,0.5,0.5", "--seed", "1",
                                    "--out", dir.string()});
    CHECK(rc == qneat::cli::kExitConfig);
    CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("unknown flag is a usage error") {
    CaptureStdout cap;
    CHECK(qneat::cli::run({"run", "--no-such-flag"}) == qneat::cli::kExitConfig);
}

TEST_CASE("oversize spectrum reports unsupported-size") {
    CaptureStdout cap;
    // local-x is not Z-diagonal, so n=14 exceeds the dense guard.
    CHECK(qneat::cli::run({"spectrum", "--hamiltonian", "local-x", "--qubits", "14"}) ==
          qneat::cli::kExitUnsupportedSize);
}

TEST_CASE("stats emits the CSVs") {
    const auto run_dir = fresh_dir("stats_run");
    const auto out_dir = fresh_dir("stats_out");
    {
        CaptureStdout cap;
        REQUIRE(qneat::cli::run({"run", "--hamiltonian", "local-x", "--qubits", "4",
                                 "--generations", "25", "--seed", "3", "--out",
                                 run_dir.string()}) == qneat::cli::kExitOk);
    }
    CaptureStdout cap;
    const int rc = qneat::cli::run({"stats", "--log", (run_dir / "run.jsonl").string(),
                                    "--out", out_dir.string()});
    CHECK(rc == qneat::cli::kExitOk);
    const auto hist = slurp(out_dir / "histogram.csv");
    const auto curve = slurp(out_dir / "curve.csv");
    CHECK(hist.rfind("label,gate_kind,count,proposals,rate\n", 0) == 0);
    CHECK(curve.rfind("calls,energy\n", 0) == 0);
}

TEST_CASE("prop1 subcommand prints a fraction meeting the bound") {
    CaptureStdout cap;
    const int rc = qneat::cli::run({"prop1", "--qubits", "4", "--samples", "200", "--seed", "3"});
    CHECK(rc == qneat::cli::kExitOk);
    const auto out = cap.str();
    REQUIRE(out.rfind("useful_fraction=", 0) == 0);
    CHECK(std::stod(out.substr(16)) >= 0.25);
}

TEST_CASE("gradient subcommand writes a reusable log") {
    const auto dir = fresh_dir("gradient");
    CaptureStdout cap;
    const int rc = qneat::cli::run({"gradient", "--hamiltonian", "tfi", "--qubits", "2",
                                    "--layers", "1", "--steps", "10", "--seed", "5", "--out",
                                    dir.string()});
    CHECK(rc == qneat::cli::kExitOk);
    CHECK(fs::exists(dir / "run.jsonl"));

    const auto stats_dir = fresh_dir("gradient_stats");
    CHECK(qneat::cli::run({"stats", "--log", (dir / "run.jsonl").string(), "--out",
                           stats_dir.string()}) == qneat::cli::kExitOk);
    CHECK(fs::exists(stats_dir / "curve.csv"));
}
