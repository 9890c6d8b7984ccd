// Copyright 2026 The qvc Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// qvc command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 data error,
//             3 numeric/tolerance failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "qvc/errors.hpp"
#include "qvc/pipeline.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

/// --config must be applied before flag parsing so explicit flags win.
qvc::RunConfig preload_config(int argc, char **argv) {
    qvc::RunConfig config;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            config = qvc::load_config_file(argv[i + 1], config);
        }
    }
    return config;
}

void add_common_options(CLI::App *cmd, qvc::RunConfig &config,
                        std::string &init_scale, std::string &fit_scope,
                        std::string &config_path) {
    cmd->add_option("--config", config_path,
                    "JSON config file (flags override)");
    cmd->add_option("--data", config.data_path, "input CSV path");
    cmd->add_option("--label-column", config.label_column,
                    "name of the class column");
    cmd->add_option("--seed", config.seed, "master random seed");
    cmd->add_option("--qubits", config.qubits,
                    "qubit count (0 = derive from feature count)")
        ->check(CLI::Range(0, qvc::kMaxQubits));
    cmd->add_option("--layers", config.layers, "ansatz layers")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--learning-rate", config.learning_rate,
                    "gradient-descent step size")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--epochs", config.epochs, "training epochs")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--pca,!--no-pca", config.pca, "apply PCA after scaling");
    cmd->add_option("--pca-variance", config.pca_variance,
                    "explained-variance target");
    cmd->add_option("--fit-scope", fit_scope,
                    "fit preprocessing on 'train' or 'all'")
        ->check(CLI::IsMember({"train", "all"}));
    cmd->add_option("--val-fraction", config.val_fraction,
                    "validation split fraction");
    cmd->add_option("--folds", config.folds, "cross-validation folds")
        ->check(CLI::Range(2, 1000));
    cmd->add_option("--out-dir", config.out_dir, "output directory");
    cmd->add_option("--threads", config.threads, "worker cap")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--init-scale", init_scale,
                    "parameter init: uniform_0_2pi or normal_small")
        ->check(CLI::IsMember({"uniform_0_2pi", "normal_small"}));
    cmd->add_option("--readout-qubits", config.readout_qubits,
                    "five readout qubit indices")
        ->expected(5);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Variational quantum classifier for gene-expression data"};
    app.require_subcommand(1);

    qvc::RunConfig config;
    try {
        config = preload_config(argc, argv);
    } catch (const qvc::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    std::string init_scale = qvc::init_scale_name(config.init_scale);
    std::string fit_scope = qvc::fit_scope_name(config.fit_scope);
    std::string config_path;
    int gradcheck_circuits = 100;

    auto *ingest = app.add_subcommand(
        "ingest", "load a CSV and print its class summary");
    auto *preprocess = app.add_subcommand(
        "preprocess", "fit scaling/PCA and write the transformed matrix");
    auto *train = app.add_subcommand(
        "train", "train on a stratified split and write reports");
    auto *crossval = app.add_subcommand(
        "crossval", "stratified k-fold cross-validation");
    auto *gradcheck = app.add_subcommand(
        "gradcheck", "randomized gradient consistency sweep");
    gradcheck->add_option("--circuits", gradcheck_circuits,
                          "number of random circuits")
        ->check(CLI::PositiveNumber);

    for (CLI::App *cmd : {ingest, preprocess, train, crossval, gradcheck}) {
        add_common_options(cmd, config, init_scale, fit_scope, config_path);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help
        }
        app.exit(e);
        return kExitUsage;
    }

    try {
        config.init_scale = qvc::init_scale_from_name(init_scale);
        config.fit_scope = qvc::fit_scope_from_name(fit_scope);

        if (*ingest) {
            std::cout << qvc::run_ingest(config).dump(2) << '\n';
        } else if (*preprocess) {
            std::cout << qvc::run_preprocess(config).dump(2) << '\n';
        } else if (*train) {
            const auto report = qvc::run_train(config);
            std::cout << "train accuracy "
                      << report["train"]["accuracy"].get<double>()
                      << ", validation accuracy "
                      << report["accuracy"].get<double>() << '\n';
        } else if (*crossval) {
            const auto report = qvc::run_crossval(config);
            std::cout << "mean test accuracy "
                      << report["mean_test_accuracy"].get<double>()
                      << ", mean test cost "
                      << report["mean_test_cost"].get<double>() << '\n';
        } else if (*gradcheck) {
            const auto result =
                qvc::run_gradcheck(config, gradcheck_circuits);
            std::printf("circuits: %d\n", result.circuits_run);
            std::printf("max |adjoint - shift|:      %.3e\n",
                        result.max_adjoint_shift_dev);
            std::printf("max |shift - finite diff|:  %.3e\n",
                        result.max_shift_fd_dev);
            if (!result.pass) {
                std::cerr << "gradient check FAILED (worst circuit seed "
                          << result.worst_circuit_seed << ")\n";
                return kExitNumeric;
            }
            std::cout << "gradient check passed\n";
        }
    } catch (const qvc::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return 0;
}
