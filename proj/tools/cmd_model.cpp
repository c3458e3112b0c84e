// Copyright 2026 The tensorfm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>

#include "cli_common.hpp"
#include "tensorfm/dataset_io.hpp"
#include "tensorfm/error.hpp"
#include "tensorfm/metrics.hpp"
#include "tensorfm/model_io.hpp"
#include "tensorfm/trainer.hpp"

namespace tfm::cli {

namespace {

struct ModelOpts {
  std::string kind = "tensorfm";
  std::size_t k = 8;
  std::size_t d = 2;
  std::size_t rank = 2;
  double init_scale = 0.01;
  std::string init_from;
};

struct FitOpts {
  std::string train_path;
  std::string valid_path;
  std::size_t epochs = 5;
  std::size_t batch_size = 1024;
  std::uint64_t seed = 0;
  std::string out = "model.txt";
  std::string log = "train_log.csv";
};

void add_model_options(CLI::App* cmd, ModelOpts& m) {
  cmd->add_option("--model", m.kind, "Model kind")
      ->check(CLI::IsMember({"lr", "fm", "fwfm", "fwfm-lr", "hofm", "tensorfm", "tensorfm-tucker"}));
  cmd->add_option("--k", m.k, "Embedding dimension")->check(at_least(1));
  cmd->add_option("--d", m.d, "Highest interaction order (hofm, tensorfm, tensorfm-tucker)");
  cmd->add_option("--rank", m.rank, "Rank of every factorized order (fwfm-lr, tensorfm, tensorfm-tucker)")
      ->check(at_least(1));
  cmd->add_option("--init-scale", m.init_scale, "Standard deviation of the random initialization");
  cmd->add_option("--init-from", m.init_from,
                  "Start from a saved model: same kind continues training, an fwfm model seeds fwfm-lr "
                  "through a rank --rank SVD");
}

void add_fit_options(CLI::App* cmd, FitOpts& f, bool valid_required) {
  cmd->add_option("--train", f.train_path, "Training set in the canonical text format")
      ->required();
  auto* valid = cmd->add_option("--valid", f.valid_path, "Validation set scored after every epoch");
  if (valid_required) valid->required();
  cmd->add_option("--epochs", f.epochs, "Passes over the training set")->check(at_least(1));
  cmd->add_option("--batch-size", f.batch_size, "Mini-batch size")->check(at_least(1));
  cmd->add_option("--seed", f.seed, "Seed for initialization and shuffling");
}

ModelBundle initial_bundle(const ModelOpts& m, const FieldSchema& schema, std::uint64_t seed) {
  const ModelConfig config = make_model_config(m.kind, m.k, m.d, m.rank, m.init_scale, seed);
  if (m.init_from.empty()) return init_model(schema, config);
  ModelBundle start = load_bundle(m.init_from);
  if (!(start.schema == schema)) throw SchemaError("--init-from model schema does not match the training set");
  if (config.kind == ModelKind::kFwFMLowRank && start.kind == ModelKind::kFwFM) {
    return lowrank_from_dense(start, m.rank);
  }
  if (start.kind != config.kind) {
    throw UsageError("--init-from holds a " + std::string(kind_name(start.kind)) + " model, expected " + m.kind);
  }
  return start;
}

std::string shortest(double value) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * fraction);
  return buf;
}

void print_epoch(const EpochLog& e) {
  std::cout << "epoch " << e.epoch << " train_loss " << shortest(e.train_loss) << " valid_logloss "
            << shortest(e.valid_logloss) << " valid_auc " << percent(e.valid_auc) << "\n";
}

}  // namespace

void add_train(CLI::App& app) {
  struct Opts {
    ModelOpts model;
    FitOpts fit;
    double lr = 0.05;
    double l2 = 0.0;
  };
  auto opts = std::make_shared<Opts>();
  CLI::App* cmd = add_command(app, "train", "Train one model with mini-batch AdaGrad");
  add_fit_options(cmd, opts->fit, false);
  add_model_options(cmd, opts->model);
  cmd->add_option("--lr", opts->lr, "AdaGrad learning rate")->check(at_least(0));
  cmd->add_option("--l2", opts->l2, "L2 coefficient for linear, embedding and interaction blocks")
      ->check(at_least(0));
  cmd->add_option("--out", opts->fit.out, "Model file to write");
  cmd->add_option("--log", opts->fit.log, "Per-epoch CSV log (wall_seconds is wall-clock time)");
  cmd->callback([opts] {
    TrainConfig config;
    config.learning_rate = opts->lr;
    config.l2_linear = config.l2_embedding = config.l2_factors = opts->l2;
    config.epochs = opts->fit.epochs;
    config.batch_size = opts->fit.batch_size;
    config.seed = opts->fit.seed;
    config.validate();

    const Dataset train_set = read_dataset(opts->fit.train_path);
    const Dataset valid_set = opts->fit.valid_path.empty() ? Dataset{train_set.schema, {}, {}}
                                                           : read_dataset(opts->fit.valid_path);
    const ModelBundle start = initial_bundle(opts->model, train_set.schema, opts->fit.seed);
    const TrainResult result = train(start, train_set, valid_set, config, print_epoch);
    std::ostringstream log;
    write_epoch_log(log, result.log);
    emit(opts->fit.log, log.str());
    save_bundle(opts->fit.out, result.model);
    std::cout << "model -> " << opts->fit.out << "\n";
  });
}

void add_eval(CLI::App& app) {
  struct Opts {
    std::string model;
    std::string data;
  };
  auto opts = std::make_shared<Opts>();
  CLI::App* cmd = add_command(app, "eval", "Print test_logloss,test_auc of a model on a dataset");
  cmd->add_option("--model-file", opts->model, "Saved model")->required();
  cmd->add_option("--data", opts->data, "Dataset in the canonical text format")->required();
  cmd->callback([opts] {
    const ModelBundle bundle = load_bundle(opts->model);
    const Dataset data = read_dataset(opts->data);
    const EvalReport report = evaluate(bundle, data);
    std::cout << "test_logloss,test_auc\n" << shortest(report.logloss) << ',' << shortest(report.auc) << "\n";
    std::cerr << "AUC " << percent(report.auc) << " logloss " << shortest(report.logloss) << " ("
              << report.n_pos << " positive, " << report.n_neg << " negative)\n";
  });
}

void add_grid(CLI::App& app) {
  struct Opts {
    ModelOpts model;
    FitOpts fit;
    std::string lrs = "0.01,0.05,0.1,0.2";
    std::string l2s = "0,1e-6,1e-5,1e-4";
    std::string report = "grid.csv";
  };
  auto opts = std::make_shared<Opts>();
  opts->fit.out = "best_model.txt";
  opts->fit.log = "best_log.csv";
  CLI::App* cmd = add_command(app, "grid", "Grid search over learning rate and L2, selecting by validation AUC");
  add_fit_options(cmd, opts->fit, true);
  add_model_options(cmd, opts->model);
  cmd->add_option("--lrs", opts->lrs, "Comma-separated learning rates");
  cmd->add_option("--l2s", opts->l2s, "Comma-separated L2 coefficients");
  cmd->add_option("--report", opts->report, "Grid report CSV");
  cmd->add_option("--out", opts->fit.out, "File for the selected model");
  cmd->add_option("--log", opts->fit.log, "Epoch log of the selected run (wall_seconds is wall-clock time)");
  cmd->callback([opts] {
    const auto grid = make_grid(parse_doubles(opts->lrs, "--lrs"), parse_doubles(opts->l2s, "--l2s"));
    TrainConfig base;
    base.epochs = opts->fit.epochs;
    base.batch_size = opts->fit.batch_size;
    base.seed = opts->fit.seed;
    for (const auto& point : grid) {
      TrainConfig probe = base;
      probe.learning_rate = point.learning_rate;
      probe.l2_linear = probe.l2_embedding = probe.l2_factors = point.l2;
      probe.validate();
    }

    const Dataset train_set = read_dataset(opts->fit.train_path);
    const Dataset valid_set = read_dataset(opts->fit.valid_path);
    const ModelBundle start = initial_bundle(opts->model, train_set.schema, opts->fit.seed);
    const GridResult result = grid_search(start, grid, train_set, valid_set, base);
    std::ostringstream report;
    write_grid_report(report, result.report);
    emit(opts->report, report.str());
    std::ostringstream log;
    write_epoch_log(log, result.best_log);
    emit(opts->fit.log, log.str());
    save_bundle(opts->fit.out, result.best);
    const GridPoint& best = grid[result.best_index];
    std::cout << "best lr " << shortest(best.learning_rate) << " l2 " << shortest(best.l2) << " valid_auc "
              << percent(result.report.front().valid_auc) << " -> " << opts->fit.out << "\n";
  });
}

}  // namespace tfm::cli
