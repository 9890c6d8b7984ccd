#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>

#include "qvc/errors.hpp"
#include "qvc/model.hpp"
#include "qvc/synthetic.hpp"

#include "test_helpers.hpp"

using namespace qvc;

namespace {

ModelConfig toy_config(int n_qubits = 5, int n_layers = 1) {
    ModelConfig config;
    config.ansatz.n_qubits = n_qubits;
    config.ansatz.n_layers = n_layers;
    config.init_seed = 42;
    config.init_scale = InitScale::NormalSmall;
    return config;
}

/// Finite-difference oracle for the mean batch cost, going through the
/// forward path only (independent of the adjoint chain rule under test).
double batch_cost_at(const ParameterVector &theta, const ModelConfig &config,
                     const CircuitSpec &circuit, const Matrix &samples,
                     std::span<const int> labels) {
    double total = 0.0;
    for (std::size_t s = 0; s < samples.rows; ++s) {
        const auto probs =
            predict_proba(theta, config, circuit, samples.row(s));
        total += cross_entropy(probs, labels[s]);
    }
    return total / static_cast<double>(samples.rows);
}

} // namespace

TEST_CASE("softmax of equal logits is uniform") {
    const std::vector<double> logits(5, 1.0);
    const auto probs = softmax(logits);
    for (double p : probs) {
        CHECK(std::abs(p - 0.2) < 1e-15);
    }
}

TEST_CASE("softmax arithmetic on a spread of logits") {
    const std::vector<double> logits{1.0, -1.0, -1.0, -1.0, -1.0};
    const auto probs = softmax(logits);
    const double e1 = std::exp(1.0), em1 = std::exp(-1.0);
    const double denom = e1 + 4.0 * em1;
    CHECK(std::abs(probs[0] - e1 / denom) < 1e-15);
    for (int j = 1; j < 5; ++j) {
        CHECK(std::abs(probs[j] - em1 / denom) < 1e-15);
    }
    CHECK(probs[0] == doctest::Approx(0.6488).epsilon(1e-4));
}

TEST_CASE("softmax sums to one and is shift invariant") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> logits(5);
        for (auto &v : logits) v = dist(rng);
        const auto probs = softmax(logits);
        double sum = 0.0;
        for (double p : probs) {
            CHECK(p > 0.0);
            CHECK(p < 1.0);
            sum += p;
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);

        std::vector<double> shifted = logits;
        for (auto &v : shifted) v += 17.5;
        const auto probs2 = softmax(shifted);
        for (int j = 0; j < 5; ++j) {
            CHECK(std::abs(probs[j] - probs2[j]) < 1e-12);
        }
    }
}

TEST_CASE("cross_entropy closed forms") {
    const std::vector<double> uniform(5, 0.2);
    CHECK(std::abs(cross_entropy(uniform, 3) - std::log(5.0)) < 1e-15);

    const std::vector<double> onehot{1.0, 0.0, 0.0, 0.0, 0.0};
    CHECK(cross_entropy(onehot, 0) == 0.0);

    const std::vector<double> half{0.5, 0.2, 0.1, 0.1, 0.1};
    CHECK(std::abs(cross_entropy(half, 0) - std::log(2.0)) < 1e-15);

    CHECK_THROWS_AS(cross_entropy(onehot, 1), DegenerateInputError);
    CHECK_THROWS_AS(cross_entropy(uniform, 5), ContractError);
    const std::vector<double> wrong_size{0.5, 0.5};
    CHECK_THROWS_AS(cross_entropy(wrong_size, 0), ContractError);
}

TEST_CASE("predict_proba is uniform when every logit agrees") {
    // An empty circuit on |10000...> leaves <Z> = +1 on every qubit.
    CircuitSpec empty;
    empty.config.n_qubits = 5;
    const auto config = toy_config();
    const std::vector<double> sample{1.0};
    const auto probs = predict_proba({}, config, empty, sample);
    for (double p : probs) {
        CHECK(std::abs(p - 0.2) < 1e-12);
    }
    // uniform probabilities tie; the lowest class index wins
    CHECK(predict({}, config, empty, sample) == 0);
}

TEST_CASE("predict_proba rejects degenerate samples") {
    const auto config = toy_config();
    const auto circuit = build_circuit(config.ansatz);
    const auto theta = init_parameters(config, circuit.n_params);
    const std::vector<double> zeros(8, 0.0);
    CHECK_THROWS_AS(predict_proba(theta, config, circuit, zeros),
                    DegenerateInputError);
}

TEST_CASE("model config validation") {
    auto config = toy_config();
    config.readout_qubits = {0, 1, 2, 3};
    CHECK_THROWS_AS(validate_model_config(config), ContractError);
    config.readout_qubits = {0, 1, 2, 3, 3};
    CHECK_THROWS_AS(validate_model_config(config), ContractError);
    config.readout_qubits = {0, 1, 2, 3, 5};
    CHECK_THROWS_AS(validate_model_config(config), ContractError);
    config = toy_config();
    config.epochs = 0;
    CHECK_THROWS_AS(validate_model_config(config), ContractError);
}

TEST_CASE("derive_qubit_count fits features and readouts") {
    CHECK(derive_qubit_count(54676) == 16);
    CHECK(derive_qubit_count(65) == 7);
    CHECK(derive_qubit_count(32) == 5);
    CHECK(derive_qubit_count(2) == 5); // readout needs five qubits
    CHECK_THROWS_AS(derive_qubit_count(0), ContractError);
    CHECK_THROWS_AS(derive_qubit_count(std::size_t{1} << 21), CapacityError);
}

TEST_CASE("cost_gradient matches finite differences of the total cost") {
    const auto config = toy_config(5, 1);
    const auto circuit = build_circuit(config.ansatz);
    std::mt19937_64 rng(55);
    auto theta = qvc::testing::random_angles(circuit.n_params, rng);

    const Dataset blobs = make_blobs(4, 8, 5, 3.0, 1.0, 7);
    // only four samples; labels cover classes 0..3 which is fine here
    const auto bg = cost_gradient(theta, config, circuit, blobs.features,
                                  blobs.labels);

    const double step = 1e-5;
    for (std::size_t k = 0; k < theta.size(); ++k) {
        auto shifted = theta;
        shifted[k] = theta[k] + step;
        const double plus = batch_cost_at(shifted, config, circuit,
                                          blobs.features, blobs.labels);
        shifted[k] = theta[k] - step;
        const double minus = batch_cost_at(shifted, config, circuit,
                                           blobs.features, blobs.labels);
        const double fd = (plus - minus) / (2.0 * step);
        CHECK(std::abs(bg.grad[k] - fd) < 1e-6);
    }
}

TEST_CASE("cost_gradient is a mean: duplication leaves it unchanged") {
    const auto config = toy_config(5, 1);
    const auto circuit = build_circuit(config.ansatz);
    std::mt19937_64 rng(56);
    const auto theta = qvc::testing::random_angles(circuit.n_params, rng);

    const Dataset blobs = make_blobs(5, 8, 5, 3.0, 1.0, 8);
    const auto once = cost_gradient(theta, config, circuit, blobs.features,
                                    blobs.labels);

    Matrix doubled(blobs.features.rows * 2, blobs.features.cols);
    std::vector<int> labels2;
    for (int rep = 0; rep < 2; ++rep) {
        for (std::size_t r = 0; r < blobs.features.rows; ++r) {
            const auto src = blobs.features.row(r);
            auto dst = doubled.row(rep * blobs.features.rows + r);
            std::copy(src.begin(), src.end(), dst.begin());
            labels2.push_back(blobs.labels[r]);
        }
    }
    const auto twice = cost_gradient(theta, config, circuit, doubled, labels2);
    CHECK(std::abs(once.cost - twice.cost) < 1e-12);
    for (std::size_t k = 0; k < once.grad.size(); ++k) {
        CHECK(std::abs(once.grad[k] - twice.grad[k]) < 1e-12);
    }

    Matrix empty_batch;
    CHECK_THROWS_AS(
        cost_gradient(theta, config, circuit, empty_batch, {}),
        ContractError);
}

TEST_CASE("cost_gradient is independent of the thread count") {
    const auto config = toy_config(5, 2);
    const auto circuit = build_circuit(config.ansatz);
    std::mt19937_64 rng(57);
    const auto theta = qvc::testing::random_angles(circuit.n_params, rng);
    const Dataset blobs = make_blobs(30, 8, 5, 3.0, 1.0, 9);

    const auto serial = cost_gradient(theta, config, circuit, blobs.features,
                                      blobs.labels, 1);
    const auto parallel = cost_gradient(theta, config, circuit,
                                        blobs.features, blobs.labels, 4);
    CHECK(serial.cost == parallel.cost);
    CHECK(serial.grad == parallel.grad);
    CHECK(serial.n_correct == parallel.n_correct);
}

TEST_CASE("train with zero learning rate is frozen") {
    auto config = toy_config(5, 1);
    config.learning_rate = 0.0;
    config.epochs = 5;
    const Dataset blobs = make_blobs(20, 8, 5, 3.0, 1.0, 11);

    const auto before = init_parameters(config, param_count(config.ansatz));
    const auto result = train(blobs.features, blobs.labels, blobs.features,
                              blobs.labels, config);
    CHECK(result.theta == before);
    for (const auto &rec : result.history) {
        CHECK(rec.train_cost == result.history.front().train_cost);
        CHECK(rec.val_cost == result.history.front().val_cost);
    }
    CHECK(result.history.size() == 5);
}

TEST_CASE("training is deterministic given the seed") {
    auto config = toy_config(5, 1);
    config.epochs = 4;
    config.learning_rate = 0.05;
    const Dataset blobs = make_blobs(20, 8, 5, 3.0, 1.0, 13);

    const auto a = train(blobs.features, blobs.labels, blobs.features,
                         blobs.labels, config);
    const auto b = train(blobs.features, blobs.labels, blobs.features,
                         blobs.labels, config, 3);
    CHECK(a.theta == b.theta);
    CHECK(a.history == b.history);
}

TEST_CASE("train requires every class in the training set") {
    auto config = toy_config(5, 1);
    config.epochs = 1;
    const Dataset blobs = make_blobs(20, 8, 5, 3.0, 1.0, 17);
    std::vector<int> capped = blobs.labels;
    for (auto &y : capped) y = y % 4; // class 4 never appears
    CHECK_THROWS_AS(train(blobs.features, capped, blobs.features, capped,
                          config),
                    StratificationError);
}

TEST_CASE("gradient descent mostly decreases the training cost") {
    auto config = toy_config(5, 2);
    config.epochs = 40;
    config.learning_rate = 0.01;
    config.init_seed = 5;
    const Dataset blobs = make_blobs(40, 8, 5, 3.0, 1.0, 19);

    const auto result = train(blobs.features, blobs.labels, blobs.features,
                              blobs.labels, config);
    int non_increasing = 0;
    for (std::size_t e = 1; e < result.history.size(); ++e) {
        if (result.history[e].train_cost <=
            result.history[e - 1].train_cost + 1e-12) {
            ++non_increasing;
        }
    }
    CHECK(non_increasing >=
          static_cast<int>(0.9 * (result.history.size() - 1)));
}

TEST_CASE("checkpoints round-trip") {
    auto config = toy_config(5, 3);
    config.learning_rate = 0.123;
    config.epochs = 17;
    config.init_seed = 99;
    config.init_scale = InitScale::UniformZeroTwoPi;
    const auto theta = init_parameters(config, param_count(config.ansatz));

    const auto path = std::filesystem::temp_directory_path() /
                      "qvc_checkpoint_test.json";
    save_checkpoint(path.string(),
                    {config, theta, {"a", "b", "c", "d", "e"}});
    const auto loaded = load_checkpoint(path.string());
    std::filesystem::remove(path);

    CHECK(loaded.config.ansatz.n_qubits == config.ansatz.n_qubits);
    CHECK(loaded.config.ansatz.n_layers == config.ansatz.n_layers);
    CHECK(loaded.config.readout_qubits == config.readout_qubits);
    CHECK(loaded.config.learning_rate == config.learning_rate);
    CHECK(loaded.config.epochs == config.epochs);
    CHECK(loaded.config.init_seed == config.init_seed);
    CHECK(loaded.config.init_scale == config.init_scale);
    CHECK(loaded.theta == theta);
    CHECK(loaded.class_names == std::vector<std::string>{"a", "b", "c", "d",
                                                         "e"});
}
