// Acceptance suite: ten numbered end-to-end criteria, one pass/fail line
// each. Run with no arguments for the full suite or with a criterion
// number to run one. The CuMiDa criterion is skipped (not failed) when the
// dataset file is absent; point QVC_CUMIDA_CSV at the CSV to enable it.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qvc/circuit.hpp"
#include "qvc/errors.hpp"
#include "qvc/evaluation.hpp"
#include "qvc/gradient.hpp"
#include "qvc/model.hpp"
#include "qvc/pipeline.hpp"
#include "qvc/preprocess.hpp"
#include "qvc/statevector.hpp"
#include "qvc/synthetic.hpp"

#include "test_helpers.hpp"

namespace fs = std::filesystem;
using namespace qvc;

namespace {

struct Outcome {
    bool pass = false;
    bool skipped = false;
    std::string detail;
};

double seconds_since(
    const std::chrono::steady_clock::time_point &start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(3);
    out << v;
    return out.str();
}

std::string slurp(const fs::path &path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path scratch_dir(const std::string &name) {
    const auto dir = fs::temp_directory_path() / "qvc_acceptance" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// ---------------------------------------------------------------------
// 1. stride gate kernels vs dense-matrix application, 1e-12, >= 1000 cases
Outcome criterion_gate_oracle() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20260801);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    const int cases = 1200;
    for (int trial = 0; trial < cases; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const auto original = qvc::testing::random_state(n, rng);
        int slot = 0;
        const GateOp gate = qvc::testing::random_gate(n, slot, rng);
        const double theta = angle(rng);

        auto state = original;
        apply_gate(state, gate,
                   gate.is_rotation() ? std::optional<double>(theta)
                                      : std::nullopt);
        const auto expected = qvc::testing::dense_apply(
            qvc::testing::dense_gate_matrix(gate, theta, n), original.amps);
        for (std::size_t i = 0; i < state.size(); ++i) {
            worst = std::max(worst, std::abs(state.amps[i] - expected[i]));
        }
    }
    const double elapsed = seconds_since(start);
    return {worst <= 1e-12 && elapsed < 30.0, false,
            std::to_string(cases) + " cases, max dev " + fmt(worst) + ", " +
                fmt(elapsed) + "s"};
}

// ---------------------------------------------------------------------
// 2. adjoint / parameter-shift / finite-difference triangle
Outcome criterion_gradient_triangle() {
    const auto start = std::chrono::steady_clock::now();
    GradCheckOptions options;
    options.n_circuits = 100;
    options.max_qubits = 6;
    options.max_layers = 3;
    options.seed = 20260802;
    const auto result = grad_check(options);
    const double elapsed = seconds_since(start);
    return {result.pass && elapsed < 120.0, false,
            std::to_string(result.circuits_run) + " circuits, |adj-shift| " +
                fmt(result.max_adjoint_shift_dev) + ", |shift-fd| " +
                fmt(result.max_shift_fd_dev) + ", " + fmt(elapsed) + "s"};
}

// ---------------------------------------------------------------------
// 3. norm conservation through the full 25-layer, 16-qubit circuit
Outcome criterion_norm_conservation() {
    std::mt19937_64 rng(20260803);
    std::normal_distribution<double> gauss;
    std::vector<double> features(54676);
    for (auto &f : features) f = gauss(rng);

    const auto circuit = build_circuit({16, 25, EntanglePattern::Linear});
    const auto theta = qvc::testing::random_angles(circuit.n_params, rng);
    auto state = amplitude_encode(features, 16);
    for (const auto &g : circuit.gates) {
        apply_gate(state, g,
                   g.is_rotation() ? std::optional<double>(theta[g.param_slot])
                                   : std::nullopt);
    }
    const double drift = std::abs(state.norm() - 1.0);
    return {drift <= 1e-10, false,
            "25 layers on 16 qubits, |norm-1| = " + fmt(drift)};
}

// ---------------------------------------------------------------------
// 4. closed forms: <Z> = cos(theta), d<Z>/dtheta = -sin(theta), softmax
//    of equal logits, cross-entropy of the uniform distribution
Outcome criterion_closed_forms() {
    CircuitSpec ry;
    ry.config.n_qubits = 1;
    ry.gates = {GateOp::ry(0, 0)};
    ry.n_params = 1;
    const auto input = init_zero_state(1);
    const std::vector<int> observe{0};

    double worst = 0.0;
    for (double theta : {0.0, std::numbers::pi / 4.0, std::numbers::pi / 2.0,
                         std::numbers::pi}) {
        const auto fwd = forward(ry, {theta}, input, observe);
        worst = std::max(worst,
                         std::abs(fwd.expectations[0] - std::cos(theta)));
        const auto adj = grad_adjoint(ry, {theta}, input, observe);
        worst = std::max(worst, std::abs(adj.at(0, 0) + std::sin(theta)));
        const auto shift = grad_parameter_shift(ry, {theta}, input, observe);
        worst = std::max(worst, std::abs(shift.at(0, 0) + std::sin(theta)));
    }

    const auto probs = softmax(std::vector<double>(5, 0.7));
    for (double p : probs) worst = std::max(worst, std::abs(p - 0.2));

    const double ce = cross_entropy(std::vector<double>(5, 0.2), 2);
    worst = std::max(worst, std::abs(ce - std::log(5.0)));

    return {worst <= 1e-12, false, "max closed-form deviation " + fmt(worst)};
}

// ---------------------------------------------------------------------
// 5. parameter count of the full-scale circuit
Outcome criterion_parameter_count() {
    const auto circuit = build_circuit({15, 25, EntanglePattern::Linear});
    return {circuit.n_params == 1500, false,
            "build_circuit(15, 25) has " + std::to_string(circuit.n_params) +
                " parameters"};
}

// ---------------------------------------------------------------------
// 6. preprocessing properties
Outcome criterion_preprocessing() {
    std::mt19937_64 rng(20260806);
    std::normal_distribution<double> gauss(0.0, 3.0);
    Matrix m(60, 12);
    for (auto &v : m.data) v = gauss(rng);

    const auto scaler = fit_scaler(m);
    const auto scaled = apply_scaler(scaler, m);
    double endpoint_worst = 0.0;
    for (std::size_t c = 0; c < scaled.cols; ++c) {
        double lo = 1e30, hi = -1e30;
        for (std::size_t r = 0; r < scaled.rows; ++r) {
            const double v = scaled.at(r, c);
            if (v < 0.0 || v > 1.0) {
                return {false, false, "scaled value escaped [0,1]"};
            }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        endpoint_worst = std::max(endpoint_worst, std::abs(lo));
        endpoint_worst = std::max(endpoint_worst, std::abs(hi - 1.0));
    }
    if (endpoint_worst > 1e-12) {
        return {false, false, "column endpoints missed 0/1"};
    }

    const double target = 0.95;
    const auto pca = fit_pca(scaled, target);
    const auto &comp = pca.components;
    double ortho_worst = 0.0;
    for (std::size_t i = 0; i < comp.rows; ++i) {
        for (std::size_t j = i; j < comp.rows; ++j) {
            double dot = 0.0;
            for (std::size_t c = 0; c < comp.cols; ++c) {
                dot += comp.at(i, c) * comp.at(j, c);
            }
            ortho_worst =
                std::max(ortho_worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
        }
    }
    if (ortho_worst > 1e-8) {
        return {false, false,
                "components not orthonormal, worst " + fmt(ortho_worst)};
    }

    double cumulative = 0.0;
    for (std::size_t i = 0; i + 1 < pca.explained_variance_ratios.size();
         ++i) {
        cumulative += pca.explained_variance_ratios[i];
    }
    if (cumulative >= target) {
        return {false, false, "selected k is not minimal"};
    }
    cumulative += pca.explained_variance_ratios.back();
    if (cumulative < target - 1e-12) {
        return {false, false, "selected k misses the variance target"};
    }

    // reconstruction check through the projected coordinates
    const auto projected = apply_pca(pca, scaled);
    double total_var = 0.0, residual = 0.0;
    for (std::size_t r = 0; r < scaled.rows; ++r) {
        for (std::size_t c = 0; c < scaled.cols; ++c) {
            const double centered = scaled.at(r, c) - pca.means[c];
            total_var += centered * centered;
            double rec = 0.0;
            for (std::size_t k = 0; k < comp.rows; ++k) {
                rec += projected.at(r, k) * comp.at(k, c);
            }
            residual += (centered - rec) * (centered - rec);
        }
    }
    const double retained = 1.0 - residual / total_var;
    if (retained < target - 1e-10) {
        return {false, false, "reconstruction retained " + fmt(retained)};
    }
    return {true, false,
            "k = " + std::to_string(comp.rows) + ", orthonormality " +
                fmt(ortho_worst) + ", retained " + fmt(retained)};
}

// ---------------------------------------------------------------------
// 7. end-to-end learning on the synthetic blob fixture
Outcome criterion_blob_learning() {
    const auto start = std::chrono::steady_clock::now();
    const auto dir = scratch_dir("blobs");
    const auto csv = dir / "blobs.csv";
    save_csv(make_blobs(100, 32, 5, 3.0, 1.0, 4242), csv.string());

    RunConfig config;
    config.data_path = csv.string();
    config.seed = 1;
    config.layers = 5;
    config.learning_rate = 0.01;
    config.epochs = 200;
    config.init_scale = InitScale::NormalSmall;
    config.val_fraction = 0.2;
    config.out_dir = (dir / "out").string();

    const auto report = run_train(config);
    const double train_acc = report["train"]["accuracy"].get<double>();
    const double val_acc = report["accuracy"].get<double>();
    const double elapsed = seconds_since(start);
    fs::remove_all(dir);

    return {train_acc >= 0.9 && val_acc >= 0.8 && elapsed < 600.0, false,
            "train acc " + fmt(train_acc) + ", val acc " + fmt(val_acc) +
                ", " + fmt(elapsed) + "s"};
}

// ---------------------------------------------------------------------
// 8. conditional CuMiDa reproduction
Outcome criterion_cumida() {
    std::string path = "data/Brain_GSE50161.csv";
    if (const char *env = std::getenv("QVC_CUMIDA_CSV")) {
        path = env;
    }
    if (!fs::exists(path)) {
        return {true, true, "dataset not present (" + path + ")"};
    }

    RunConfig config;
    config.data_path = path;
    config.out_dir = scratch_dir("cumida").string();

    const auto summary = run_ingest(config);
    if (summary["n_samples"] != 130 || summary["n_features"] != 54676 ||
        summary["class_names"].size() != 5) {
        return {false, false,
                "ingest mismatch: " + summary.dump()};
    }

    config.pca = true;
    config.pca_variance = 0.95;
    config.fit_scope = FitScope::All;
    const auto pp = run_preprocess(config);
    const int k = pp["n_components"].get<int>();
    if (k < 60 || k > 70) {
        return {false, false,
                "PCA kept " + std::to_string(k) + " components"};
    }

    // paper-scale cross-validation on the reduced features; the accuracy
    // band is reported but non-blocking
    config.layers = 25;
    config.epochs = 100;
    config.learning_rate = 0.01;
    config.folds = 3;
    const auto cv = run_crossval(config);
    const double mean_acc = cv["mean_test_accuracy"].get<double>();
    const bool within =
        cv["benchmark_comparison"]["within_band"].get<bool>();
    fs::remove_all(config.out_dir);
    return {true, false,
            "ingest ok, k = " + std::to_string(k) + ", cv accuracy " +
                fmt(mean_acc) + (within ? " (within" : " (outside") +
                " 0.85 +/- 0.10, non-blocking)"};
}

// ---------------------------------------------------------------------
// 9. determinism of artifacts and thread independence
Outcome criterion_determinism() {
    const auto dir = scratch_dir("determinism");
    const auto csv = dir / "blobs.csv";
    save_csv(make_blobs(40, 16, 5, 3.0, 1.0, 99), csv.string());

    RunConfig config;
    config.data_path = csv.string();
    config.seed = 31;
    config.layers = 1;
    config.epochs = 3;
    config.learning_rate = 0.05;
    config.init_scale = InitScale::NormalSmall;
    config.out_dir = (dir / "out").string();

    run_train(config);
    const std::string report1 = slurp(fs::path(config.out_dir) / "report.json");
    const std::string curves1 = slurp(fs::path(config.out_dir) / "curves.csv");
    const std::string ckpt1 =
        slurp(fs::path(config.out_dir) / "checkpoint.json");
    fs::remove_all(config.out_dir);
    run_train(config);
    if (report1 != slurp(fs::path(config.out_dir) / "report.json") ||
        curves1 != slurp(fs::path(config.out_dir) / "curves.csv") ||
        ckpt1 != slurp(fs::path(config.out_dir) / "checkpoint.json")) {
        return {false, false, "rerun artifacts differ"};
    }

    // cross-validation content must not depend on the worker cap
    const Dataset blobs = load_csv(csv.string());
    ModelConfig base;
    base.ansatz.n_qubits = 0;
    base.ansatz.n_layers = 1;
    base.epochs = 2;
    base.learning_rate = 0.05;
    base.init_scale = InitScale::NormalSmall;
    const auto serial =
        cross_validate(blobs, base, {false, 0.95}, FitScope::Train, 3, 7, 1);
    const auto parallel =
        cross_validate(blobs, base, {false, 0.95}, FitScope::Train, 3, 7, 4);
    fs::remove_all(dir);
    if (cv_report_json(serial, {}) != cv_report_json(parallel, {})) {
        return {false, false, "cross-validation depends on thread count"};
    }
    return {true, false, "rerun byte-identical; threads 1 == threads 4"};
}

// ---------------------------------------------------------------------
// 10. single-layer and full-circuit timing on 16 qubits
Outcome criterion_performance() {
    std::mt19937_64 rng(20260810);
    const auto one_layer = build_circuit({16, 1, EntanglePattern::Linear});
    const auto theta1 = qvc::testing::random_angles(one_layer.n_params, rng);
    auto state = qvc::testing::random_state(16, rng);

    auto start = std::chrono::steady_clock::now();
    for (const auto &g : one_layer.gates) {
        apply_gate(state, g,
                   g.is_rotation()
                       ? std::optional<double>(theta1[g.param_slot])
                       : std::nullopt);
    }
    const double layer_time = seconds_since(start);

    const auto full = build_circuit({16, 25, EntanglePattern::Linear});
    const auto theta25 = qvc::testing::random_angles(full.n_params, rng);
    const auto input = qvc::testing::random_state(16, rng);
    start = std::chrono::steady_clock::now();
    const std::vector<int> observe{0, 1, 2, 3, 4};
    forward(full, theta25, input, observe);
    const double full_time = seconds_since(start);

    return {layer_time < 1.0 && full_time < 10.0, false,
            "one layer " + fmt(layer_time) + "s, 25-layer forward " +
                fmt(full_time) + "s"};
}

struct Criterion {
    int id;
    const char *name;
    std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria{
    {1, "gate kernels match the dense-matrix oracle", criterion_gate_oracle},
    {2, "gradient oracle triangle (adjoint / shift / finite diff)",
     criterion_gradient_triangle},
    {3, "norm conservation through the deep circuit",
     criterion_norm_conservation},
    {4, "closed-form expectation, gradient, softmax and cross-entropy",
     criterion_closed_forms},
    {5, "parameter count of the 15-qubit, 25-layer circuit",
     criterion_parameter_count},
    {6, "preprocessing properties (scaler range, PCA orthonormality, "
        "minimal k, retained variance)",
     criterion_preprocessing},
    {7, "end-to-end learning on the synthetic blob fixture",
     criterion_blob_learning},
    {8, "CuMiDa ingest / PCA width / cross-validation (conditional)",
     criterion_cumida},
    {9, "byte-identical reruns and thread independence",
     criterion_determinism},
    {10, "layer and forward-pass timing on 16 qubits",
     criterion_performance},
};

} // namespace

int main(int argc, char **argv) {
    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > static_cast<int>(kCriteria.size())) {
            std::cerr << "usage: acceptance [1-" << kCriteria.size()
                      << "]\n";
            return 1;
        }
    }

    int failures = 0;
    for (const auto &criterion : kCriteria) {
        if (only != 0 && criterion.id != only) continue;
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception &e) {
            outcome = {false, false, std::string("exception: ") + e.what()};
        }
        const char *tag =
            outcome.skipped ? "SKIP" : (outcome.pass ? "PASS" : "FAIL");
        std::cout << '[' << tag << "] " << criterion.id << ". "
                  << criterion.name << ": " << outcome.detail << '\n';
        if (!outcome.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
