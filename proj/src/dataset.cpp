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

#include "qvc/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "qvc/errors.hpp"

namespace qvc {

namespace {

std::vector<std::string> split_line(const std::string &line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

void strip_cr(std::string &line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

double parse_cell(const std::string &cell, std::size_t row,
                  const std::string &column) {
    double value = 0.0;
    const char *begin = cell.data();
    const char *end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || cell.empty()) {
        throw ParseError("row " + std::to_string(row) + ", column '" +
                         column + "': '" + cell + "' is not numeric");
    }
    return value;
}

} // namespace

Dataset load_csv(const std::string &path, const std::string &label_column) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(path + ": empty file");
    }
    strip_cr(line);
    const std::vector<std::string> header = split_line(line);

    std::size_t label_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == label_column) {
            label_idx = i;
            break;
        }
    }
    if (label_idx == header.size()) {
        throw ParseError(path + ": no '" + label_column + "' column");
    }
    const bool has_id_column = label_idx != 0;
    const std::size_t id_idx = 0;

    std::vector<std::size_t> feature_columns;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i == label_idx || (has_id_column && i == id_idx)) continue;
        feature_columns.push_back(i);
    }
    if (feature_columns.empty()) {
        throw ParseError(path + ": no feature columns");
    }

    Dataset dataset;
    std::map<std::string, int> class_index;
    std::vector<std::vector<double>> rows;
    std::size_t row_number = 0; // data rows, 1-based in messages
    while (std::getline(in, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        ++row_number;
        const std::vector<std::string> fields = split_line(line);
        if (fields.size() != header.size()) {
            throw ParseError(path + ": row " + std::to_string(row_number) +
                             " has " + std::to_string(fields.size()) +
                             " fields, expected " +
                             std::to_string(header.size()));
        }
        dataset.sample_ids.push_back(
            has_id_column ? fields[id_idx] : std::to_string(row_number - 1));

        const std::string &label = fields[label_idx];
        auto [it, inserted] = class_index.try_emplace(
            label, static_cast<int>(dataset.class_names.size()));
        if (inserted) dataset.class_names.push_back(label);
        dataset.labels.push_back(it->second);

        std::vector<double> row;
        row.reserve(feature_columns.size());
        for (std::size_t col : feature_columns) {
            row.push_back(parse_cell(fields[col], row_number, header[col]));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw ParseError(path + ": no data rows");
    }

    dataset.features = Matrix(rows.size(), feature_columns.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::copy(rows[r].begin(), rows[r].end(),
                  dataset.features.row(r).begin());
    }
    return dataset;
}

void save_csv(const Dataset &dataset, const std::string &path,
              const std::string &label_column) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    out << "sample_id," << label_column;
    for (std::size_t c = 0; c < dataset.n_features(); ++c) {
        out << ",f" << c;
    }
    out << '\n';
    out.precision(17);
    for (std::size_t r = 0; r < dataset.n_samples(); ++r) {
        out << dataset.sample_ids[r] << ','
            << dataset.class_names[dataset.labels[r]];
        for (double v : dataset.features.row(r)) {
            out << ',' << v;
        }
        out << '\n';
    }
    if (!out) {
        throw IoError("failed writing " + path);
    }
}

std::vector<std::size_t> class_distribution(const Dataset &dataset) {
    std::vector<std::size_t> counts(dataset.class_names.size(), 0);
    for (int label : dataset.labels) {
        counts[label] += 1;
    }
    return counts;
}

nlohmann::json dataset_summary(const Dataset &dataset) {
    return nlohmann::json{
        {"n_samples", dataset.n_samples()},
        {"n_features", dataset.n_features()},
        {"class_names", dataset.class_names},
        {"class_counts", class_distribution(dataset)},
    };
}

Dataset subset(const Dataset &dataset,
               std::span<const std::size_t> indices) {
    Dataset out;
    out.class_names = dataset.class_names;
    out.features = Matrix(indices.size(), dataset.n_features());
    out.sample_ids.reserve(indices.size());
    out.labels.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const std::size_t r = indices[i];
        out.sample_ids.push_back(dataset.sample_ids[r]);
        out.labels.push_back(dataset.labels[r]);
        const auto src = dataset.features.row(r);
        std::copy(src.begin(), src.end(), out.features.row(i).begin());
    }
    return out;
}

namespace {

std::vector<std::vector<std::size_t>> indices_by_class(const Dataset &d) {
    std::vector<std::vector<std::size_t>> by_class(d.class_names.size());
    for (std::size_t i = 0; i < d.labels.size(); ++i) {
        by_class[d.labels[i]].push_back(i);
    }
    return by_class;
}

} // namespace

SplitResult stratified_split(const Dataset &dataset, double val_fraction,
                             std::uint64_t seed) {
    if (!(val_fraction > 0.0) || !(val_fraction < 1.0)) {
        throw ContractError("val_fraction must be in (0, 1)");
    }
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> train_idx, val_idx;
    for (auto &members : indices_by_class(dataset)) {
        if (members.size() < 2) {
            throw StratificationError(
                "stratified_split needs >= 2 samples per class");
        }
        std::shuffle(members.begin(), members.end(), rng);
        const auto count = static_cast<std::size_t>(std::clamp<long>(
            std::lround(static_cast<double>(members.size()) * val_fraction),
            1, static_cast<long>(members.size()) - 1));
        val_idx.insert(val_idx.end(), members.begin(),
                       members.begin() + count);
        train_idx.insert(train_idx.end(), members.begin() + count,
                         members.end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(val_idx.begin(), val_idx.end());
    return {subset(dataset, train_idx), subset(dataset, val_idx)};
}

std::vector<FoldIndices> stratified_kfold(const Dataset &dataset, int k,
                                          std::uint64_t seed) {
    if (k < 2) {
        throw ContractError("stratified_kfold needs k >= 2");
    }
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::size_t>> fold_test(k);
    std::vector<std::size_t> fold_load(k, 0);

    for (auto &members : indices_by_class(dataset)) {
        if (members.size() < static_cast<std::size_t>(k)) {
            throw StratificationError(
                "a class has fewer samples than folds");
        }
        std::shuffle(members.begin(), members.end(), rng);
        const std::size_t base = members.size() / k;
        const std::size_t extra = members.size() % k;

        // hand the remainder to the currently smallest folds
        std::vector<int> order(k);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return fold_load[a] < fold_load[b];
        });
        std::vector<std::size_t> take(k, base);
        for (std::size_t j = 0; j < extra; ++j) take[order[j]] += 1;

        std::size_t pos = 0;
        for (int f = 0; f < k; ++f) {
            fold_test[f].insert(fold_test[f].end(), members.begin() + pos,
                                members.begin() + pos + take[f]);
            fold_load[f] += take[f];
            pos += take[f];
        }
    }

    std::vector<FoldIndices> folds(k);
    for (int f = 0; f < k; ++f) {
        std::sort(fold_test[f].begin(), fold_test[f].end());
        folds[f].test = fold_test[f];
        for (std::size_t i = 0; i < dataset.n_samples(); ++i) {
            if (!std::binary_search(fold_test[f].begin(), fold_test[f].end(),
                                    i)) {
                folds[f].train.push_back(i);
            }
        }
    }
    return folds;
}

} // namespace qvc
