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

#include "qvc/pipeline.hpp"

#include <filesystem>
#include <fstream>

#include "qvc/dataset.hpp"
#include "qvc/errors.hpp"

namespace qvc {

namespace {

namespace fs = std::filesystem;

void validate_run_config(const RunConfig &config) {
    if (config.layers < 1) throw ContractError("layers must be >= 1");
    if (config.epochs < 1) throw ContractError("epochs must be >= 1");
    if (!(config.learning_rate >= 0.0)) {
        throw ContractError("learning rate must be >= 0");
    }
    if (!(config.pca_variance > 0.0) || config.pca_variance > 1.0) {
        throw ContractError("pca_variance must be in (0, 1]");
    }
    if (!(config.val_fraction > 0.0) || !(config.val_fraction < 1.0)) {
        throw ContractError("val_fraction must be in (0, 1)");
    }
    if (config.folds < 2) throw ContractError("folds must be >= 2");
    if (config.threads < 1) throw ContractError("threads must be >= 1");
}

fs::path ensure_out_dir(const RunConfig &config) {
    fs::path dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create directory " + dir.string() + ": " +
                      ec.message());
    }
    return dir;
}

void write_json(const fs::path &path, const nlohmann::json &doc) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << doc.dump(2) << '\n';
}

ModelConfig model_config_for(const RunConfig &config,
                             std::size_t n_features) {
    ModelConfig mc;
    mc.ansatz.n_qubits = config.qubits > 0
                             ? config.qubits
                             : derive_qubit_count(n_features);
    mc.ansatz.n_layers = config.layers;
    mc.readout_qubits = config.readout_qubits;
    mc.learning_rate = config.learning_rate;
    mc.epochs = config.epochs;
    mc.init_seed = config.seed;
    mc.init_scale = config.init_scale;
    return mc;
}

PreprocessConfig preprocess_config_for(const RunConfig &config) {
    return {config.pca, config.pca_variance};
}

} // namespace

nlohmann::json config_json(const RunConfig &config) {
    return nlohmann::json{
        {"data", config.data_path},
        {"label_column", config.label_column},
        {"seed", config.seed},
        {"qubits", config.qubits},
        {"layers", config.layers},
        {"learning_rate", config.learning_rate},
        {"epochs", config.epochs},
        {"pca", config.pca},
        {"pca_variance", config.pca_variance},
        {"fit_scope", fit_scope_name(config.fit_scope)},
        {"val_fraction", config.val_fraction},
        {"folds", config.folds},
        {"out_dir", config.out_dir},
        {"threads", config.threads},
        {"init_scale", init_scale_name(config.init_scale)},
        {"readout_qubits", config.readout_qubits},
    };
}

RunConfig config_from_json(const nlohmann::json &doc, RunConfig base) {
    try {
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            const std::string &key = it.key();
            if (key == "data") base.data_path = it->get<std::string>();
            else if (key == "label_column")
                base.label_column = it->get<std::string>();
            else if (key == "seed") base.seed = it->get<std::uint64_t>();
            else if (key == "qubits") base.qubits = it->get<int>();
            else if (key == "layers") base.layers = it->get<int>();
            else if (key == "learning_rate")
                base.learning_rate = it->get<double>();
            else if (key == "epochs") base.epochs = it->get<int>();
            else if (key == "pca") base.pca = it->get<bool>();
            else if (key == "pca_variance")
                base.pca_variance = it->get<double>();
            else if (key == "fit_scope")
                base.fit_scope = fit_scope_from_name(it->get<std::string>());
            else if (key == "val_fraction")
                base.val_fraction = it->get<double>();
            else if (key == "folds") base.folds = it->get<int>();
            else if (key == "out_dir") base.out_dir = it->get<std::string>();
            else if (key == "threads") base.threads = it->get<int>();
            else if (key == "init_scale")
                base.init_scale =
                    init_scale_from_name(it->get<std::string>());
            else if (key == "readout_qubits")
                base.readout_qubits = it->get<std::vector<int>>();
            else
                throw ContractError("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    return base;
}

RunConfig load_config_file(const std::string &path, RunConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file " + path);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError("config file " + path + ": " + e.what());
    }
    return config_from_json(doc, std::move(base));
}

nlohmann::json run_ingest(const RunConfig &config) {
    validate_run_config(config);
    const Dataset dataset = load_csv(config.data_path, config.label_column);
    nlohmann::json summary = dataset_summary(dataset);
    summary["config"] = config_json(config);
    if (!config.out_dir.empty()) {
        write_json(ensure_out_dir(config) / "summary.json", summary);
    }
    return summary;
}

nlohmann::json run_preprocess(const RunConfig &config) {
    validate_run_config(config);
    const Dataset dataset = load_csv(config.data_path, config.label_column);

    PreprocessModel model;
    if (config.fit_scope == FitScope::All) {
        model = fit_preprocess(dataset.features,
                               preprocess_config_for(config));
    } else {
        const SplitResult split =
            stratified_split(dataset, config.val_fraction, config.seed);
        model = fit_preprocess(split.train.features,
                               preprocess_config_for(config));
    }

    Dataset transformed = dataset;
    transformed.features = apply_preprocess(model, dataset.features);

    const fs::path dir = ensure_out_dir(config);
    save_preprocess_model((dir / "preprocess_model.json").string(), model);
    save_csv(transformed, (dir / "transformed.csv").string(),
             config.label_column);

    nlohmann::json summary{
        {"config", config_json(config)},
        {"n_samples", transformed.n_samples()},
        {"n_features_in", dataset.n_features()},
        {"n_features_out", transformed.n_features()},
    };
    if (model.pca) {
        summary["n_components"] = model.pca->components.rows;
        summary["explained_variance_ratios"] =
            model.pca->explained_variance_ratios;
    }
    write_json(dir / "preprocess_summary.json", summary);
    return summary;
}

nlohmann::json run_train(const RunConfig &config) {
    validate_run_config(config);
    const Dataset dataset = load_csv(config.data_path, config.label_column);
    const SplitResult split =
        stratified_split(dataset, config.val_fraction, config.seed);

    const Matrix &fit_matrix = config.fit_scope == FitScope::All
                                   ? dataset.features
                                   : split.train.features;
    const PreprocessModel pp =
        fit_preprocess(fit_matrix, preprocess_config_for(config));
    const Matrix train_x = apply_preprocess(pp, split.train.features);
    const Matrix val_x = apply_preprocess(pp, split.val.features);

    const ModelConfig mc = model_config_for(config, train_x.cols);
    const TrainResult trained = train(train_x, split.train.labels, val_x,
                                      split.val.labels, mc, config.threads);

    const CircuitSpec circuit = build_circuit(mc.ansatz);
    const EvalResult on_train = evaluate_batch(
        trained.theta, mc, circuit, train_x, split.train.labels,
        config.threads);
    const EvalResult on_val = evaluate_batch(trained.theta, mc, circuit,
                                             val_x, split.val.labels,
                                             config.threads);

    const ConfusionMatrix cm_train =
        confusion(split.train.labels, on_train.predictions, kNumClasses);
    const ConfusionMatrix cm_val =
        confusion(split.val.labels, on_val.predictions, kNumClasses);

    const fs::path dir = ensure_out_dir(config);
    save_preprocess_model((dir / "preprocess_model.json").string(), pp);
    save_checkpoint((dir / "checkpoint.json").string(),
                    {mc, trained.theta, dataset.class_names});

    nlohmann::json extra{
        {"dataset", dataset_summary(dataset)},
        {"n_qubits", mc.ansatz.n_qubits},
        {"n_parameters", param_count(mc.ansatz)},
        {"train",
         {{"accuracy", on_train.accuracy},
          {"cost", on_train.cost},
          {"confusion_matrix", confusion_json(cm_train)},
          {"metrics", metrics_json(metrics(cm_train))}}},
        {"validation",
         {{"accuracy", on_val.accuracy}, {"cost", on_val.cost}}},
    };
    if (pp.pca) {
        extra["n_components"] = pp.pca->components.rows;
    }
    emit_report(trained.history, cm_val, metrics(cm_val),
                config_json(config), dir.string(), extra);

    std::ifstream report_in(dir / "report.json");
    nlohmann::json report;
    report_in >> report;
    return report;
}

nlohmann::json run_crossval(const RunConfig &config) {
    validate_run_config(config);
    const Dataset dataset = load_csv(config.data_path, config.label_column);

    ModelConfig base = model_config_for(config, dataset.n_features());
    if (config.qubits <= 0) {
        base.ansatz.n_qubits = 0; // re-derived per fold after preprocessing
    }

    const CvReport report = cross_validate(
        dataset, base, preprocess_config_for(config), config.fit_scope,
        config.folds, config.seed, config.threads);

    const fs::path dir = ensure_out_dir(config);
    nlohmann::json doc = cv_report_json(report, config_json(config));
    doc["dataset"] = dataset_summary(dataset);
    write_json(dir / "cv_report.json", doc);
    for (const auto &fold : report.folds) {
        write_curves_csv(fold.history,
                         (dir / ("curves_fold" + std::to_string(fold.fold) +
                                 ".csv"))
                             .string());
    }
    return doc;
}

GradCheckResult run_gradcheck(const RunConfig &config, int n_circuits) {
    GradCheckOptions options;
    options.n_circuits = n_circuits;
    options.seed = config.seed;
    return grad_check(options);
}

} // namespace qvc
