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

#include "qvc/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "qvc/errors.hpp"

namespace qvc {

namespace {

using EigenRowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenRowMatrix> map_matrix(const Matrix &m) {
    return {m.data.data(), static_cast<Eigen::Index>(m.rows),
            static_cast<Eigen::Index>(m.cols)};
}

void check_feature_count(std::size_t expected, std::size_t actual,
                         const char *what) {
    if (expected != actual) {
        throw ContractError(std::string(what) + ": expected " +
                            std::to_string(expected) + " features, got " +
                            std::to_string(actual));
    }
}

} // namespace

ScalerModel fit_scaler(const Matrix &train) {
    if (train.rows < 2) {
        throw ContractError("fit_scaler needs at least 2 samples");
    }
    const std::size_t d = train.cols;
    ScalerModel model;
    model.means.assign(d, 0.0);
    model.stds.assign(d, 0.0);
    model.mins.assign(d, 0.0);
    model.maxs.assign(d, 0.0);
    model.constant.assign(d, false);

    std::vector<double> raw_min(d, 0.0), raw_max(d, 0.0);
    for (std::size_t c = 0; c < d; ++c) {
        raw_min[c] = raw_max[c] = train.at(0, c);
    }
    for (std::size_t r = 0; r < train.rows; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const double v = train.at(r, c);
            model.means[c] += v;
            raw_min[c] = std::min(raw_min[c], v);
            raw_max[c] = std::max(raw_max[c], v);
        }
    }
    for (auto &m : model.means) m /= static_cast<double>(train.rows);

    for (std::size_t r = 0; r < train.rows; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const double delta = train.at(r, c) - model.means[c];
            model.stds[c] += delta * delta;
        }
    }
    for (std::size_t c = 0; c < d; ++c) {
        // exact-equality constancy check; a near-zero accumulated std from
        // rounding must not mark a genuinely constant column non-constant
        model.constant[c] = raw_min[c] == raw_max[c];
        model.stds[c] = model.constant[c]
                            ? 0.0
                            : std::sqrt(model.stds[c] /
                                        static_cast<double>(train.rows));
        if (!model.constant[c]) {
            model.mins[c] = (raw_min[c] - model.means[c]) / model.stds[c];
            model.maxs[c] = (raw_max[c] - model.means[c]) / model.stds[c];
        }
    }
    return model;
}

Matrix apply_scaler(const ScalerModel &model, const Matrix &matrix) {
    check_feature_count(model.means.size(), matrix.cols, "apply_scaler");
    Matrix out(matrix.rows, matrix.cols);
    for (std::size_t r = 0; r < matrix.rows; ++r) {
        for (std::size_t c = 0; c < matrix.cols; ++c) {
            if (model.constant[c] || model.maxs[c] == model.mins[c]) {
                out.at(r, c) = 0.5;
                continue;
            }
            const double z =
                (matrix.at(r, c) - model.means[c]) / model.stds[c];
            const double v =
                (z - model.mins[c]) / (model.maxs[c] - model.mins[c]);
            out.at(r, c) = std::clamp(v, 0.0, 1.0);
        }
    }
    return out;
}

PcaModel fit_pca(const Matrix &matrix, double variance_target) {
    if (!(variance_target > 0.0) || variance_target > 1.0) {
        throw ContractError("variance target must be in (0, 1]");
    }
    if (matrix.rows < 2) {
        throw ContractError("fit_pca needs at least 2 samples");
    }
    const auto m = static_cast<Eigen::Index>(matrix.rows);
    const auto d = static_cast<Eigen::Index>(matrix.cols);
    const auto X = map_matrix(matrix);

    PcaModel model;
    model.variance_target = variance_target;
    model.means.resize(matrix.cols);
    Eigen::Map<Eigen::RowVectorXd> mean(model.means.data(), d);
    mean = X.colwise().mean();

    const EigenRowMatrix centered = X.rowwise() - mean;

    // snapshot route: eigenpairs of the m x m Gram matrix give the right
    // singular vectors as X^T u / sigma without touching a d x d covariance
    const Eigen::MatrixXd gram = centered * centered.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success) {
        throw DegenerateInputError("fit_pca: eigendecomposition failed");
    }

    // ascending from Eigen; walk backwards for descending order
    const Eigen::VectorXd eigenvalues = solver.eigenvalues();
    const double total =
        std::max(0.0, eigenvalues.sum()); // == total variance * m
    if (total <= 0.0) {
        throw DegenerateInputError("fit_pca: matrix has zero variance");
    }

    const double rank_cutoff = eigenvalues(m - 1) * 1e-12;
    std::vector<double> ratios;
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = m - 1; i >= 0; --i) {
        const double ev = std::max(0.0, eigenvalues(i));
        if (ev <= rank_cutoff) break;
        kept.push_back(i);
        ratios.push_back(ev / total);
    }
    const auto rank = static_cast<std::size_t>(kept.size());

    std::size_t k = rank;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < rank; ++i) {
        cumulative += ratios[i];
        if (cumulative >= variance_target - 1e-12) {
            k = i + 1;
            break;
        }
    }

    model.explained_variance_ratios.assign(ratios.begin(),
                                           ratios.begin() + k);
    model.components = Matrix(k, matrix.cols);
    Eigen::Map<EigenRowMatrix> comp(model.components.data.data(),
                                    static_cast<Eigen::Index>(k), d);
    for (std::size_t i = 0; i < k; ++i) {
        const double sigma = std::sqrt(eigenvalues(kept[i]));
        comp.row(static_cast<Eigen::Index>(i)) =
            (centered.transpose() * solver.eigenvectors().col(kept[i]))
                .transpose() /
            sigma;
    }
    return model;
}

Matrix apply_pca(const PcaModel &model, const Matrix &matrix) {
    check_feature_count(model.means.size(), matrix.cols, "apply_pca");
    const auto X = map_matrix(matrix);
    const Eigen::Map<const Eigen::RowVectorXd> mean(
        model.means.data(), static_cast<Eigen::Index>(model.means.size()));
    const auto comp = map_matrix(model.components);

    Matrix out(matrix.rows, model.components.rows);
    Eigen::Map<EigenRowMatrix> Y(out.data.data(),
                                 static_cast<Eigen::Index>(out.rows),
                                 static_cast<Eigen::Index>(out.cols));
    Y = (X.rowwise() - mean) * comp.transpose();
    return out;
}

PreprocessModel fit_preprocess(const Matrix &train,
                               const PreprocessConfig &config) {
    PreprocessModel model;
    model.config = config;
    model.scaler = fit_scaler(train);
    if (config.use_pca) {
        model.pca = fit_pca(apply_scaler(model.scaler, train),
                            config.variance_target);
    }
    return model;
}

Matrix apply_preprocess(const PreprocessModel &model, const Matrix &matrix) {
    Matrix scaled = apply_scaler(model.scaler, matrix);
    if (model.pca) {
        return apply_pca(*model.pca, scaled);
    }
    return scaled;
}

nlohmann::json preprocess_to_json(const PreprocessModel &model) {
    nlohmann::json doc;
    doc["scaler"] = {
        {"means", model.scaler.means},   {"stds", model.scaler.stds},
        {"mins", model.scaler.mins},     {"maxs", model.scaler.maxs},
        {"constant", model.scaler.constant},
    };
    if (model.pca) {
        nlohmann::json components = nlohmann::json::array();
        for (std::size_t r = 0; r < model.pca->components.rows; ++r) {
            const auto row = model.pca->components.row(r);
            components.push_back(
                std::vector<double>(row.begin(), row.end()));
        }
        doc["pca"] = {
            {"means", model.pca->means},
            {"components", std::move(components)},
            {"explained_variance_ratios",
             model.pca->explained_variance_ratios},
            {"variance_target", model.pca->variance_target},
        };
    } else {
        doc["pca"] = nullptr;
    }
    doc["config"] = {
        {"use_pca", model.config.use_pca},
        {"variance_target", model.config.variance_target},
    };
    return doc;
}

PreprocessModel preprocess_from_json(const nlohmann::json &doc) {
    PreprocessModel model;
    try {
        const auto &scaler = doc.at("scaler");
        model.scaler.means = scaler.at("means").get<std::vector<double>>();
        model.scaler.stds = scaler.at("stds").get<std::vector<double>>();
        model.scaler.mins = scaler.at("mins").get<std::vector<double>>();
        model.scaler.maxs = scaler.at("maxs").get<std::vector<double>>();
        model.scaler.constant =
            scaler.at("constant").get<std::vector<bool>>();
        if (!doc.at("pca").is_null()) {
            const auto &pca = doc.at("pca");
            PcaModel p;
            p.means = pca.at("means").get<std::vector<double>>();
            const auto &components = pca.at("components");
            const std::size_t k = components.size();
            const std::size_t d = model.scaler.means.size();
            p.components = Matrix(k, d);
            for (std::size_t r = 0; r < k; ++r) {
                const auto row =
                    components.at(r).get<std::vector<double>>();
                if (row.size() != d) {
                    throw ParseError(
                        "preprocess model: ragged component row");
                }
                std::copy(row.begin(), row.end(),
                          p.components.row(r).begin());
            }
            p.explained_variance_ratios =
                pca.at("explained_variance_ratios")
                    .get<std::vector<double>>();
            p.variance_target = pca.at("variance_target").get<double>();
            model.pca = std::move(p);
        }
        model.config.use_pca = doc.at("config").at("use_pca").get<bool>();
        model.config.variance_target =
            doc.at("config").at("variance_target").get<double>();
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("preprocess model: ") + e.what());
    }
    return model;
}

void save_preprocess_model(const std::string &path,
                           const PreprocessModel &model) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write preprocess model to " + path);
    }
    out << preprocess_to_json(model).dump(2) << '\n';
}

PreprocessModel load_preprocess_model(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read preprocess model from " + path);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError("preprocess model " + path + ": " + e.what());
    }
    return preprocess_from_json(doc);
}

const char *fit_scope_name(FitScope scope) {
    return scope == FitScope::Train ? "train" : "all";
}

FitScope fit_scope_from_name(const std::string &name) {
    if (name == "train") return FitScope::Train;
    if (name == "all") return FitScope::All;
    throw ContractError("unknown fit scope '" + name + "'");
}

} // namespace qvc
