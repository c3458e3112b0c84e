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

#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>

#include "cli_common.hpp"
#include "tensorfm/dataset_io.hpp"
#include "tensorfm/flops.hpp"
#include "tensorfm/interpret.hpp"
#include "tensorfm/latency.hpp"
#include "tensorfm/model_io.hpp"
#include "tensorfm/synthetic.hpp"

namespace tfm::cli {

namespace {

std::string fixed(double value, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

std::string join_ranks(const std::vector<std::size_t>& ranks) {
  std::string out;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(ranks[i]);
  }
  return out;
}

}  // namespace

void add_bench_flops(CLI::App& app) {
  struct Opts {
    std::string models = "lr,fm,fwfm,fwfm-lr,hofm,tensorfm,tensorfm-tucker";
    std::string sweep = "20:200:10";
    std::size_t k = 8;
    std::size_t d = 3;
    std::size_t rank = 3;
    std::string out = "-";
  };
  auto opts = std::make_shared<Opts>();
  CLI::App* cmd = add_command(app, "bench-flops",
                              "Analytic forward-pass operation counts over a range of field counts; "
                              "log-log slopes go to stderr");
  cmd->add_option("--models", opts->models, "Comma-separated model kinds");
  cmd->add_option("--sweep-n", opts->sweep, "Field counts as first:last:step");
  cmd->add_option("--k", opts->k, "Embedding dimension")->check(at_least(1));
  cmd->add_option("--d", opts->d, "Highest order for hofm and tensorfm kinds")->check(at_least(2));
  cmd->add_option("--rank", opts->rank, "Rank of every factorized order")->check(at_least(1));
  cmd->add_option("--out", opts->out, "CSV output path ('-' for stdout)");
  cmd->callback([opts] {
    const auto ns = parse_range(opts->sweep, "--sweep-n").values();
    std::vector<ModelKind> kinds;
    for (const auto& name : parse_names(opts->models)) kinds.push_back(parse_kind(name));
    std::vector<FlopsModel> rows;
    for (ModelKind kind : kinds) {
      std::vector<FlopsModel> sweep;
      for (std::size_t n : ns) sweep.push_back(flops_estimate(kind, n, opts->k, opts->d, {opts->rank}));
      if (sweep.size() >= 2) {
        std::cerr << kind_name(kind) << " log-log slope " << fixed(loglog_slope(sweep), 4) << "\n";
      }
      rows.insert(rows.end(), sweep.begin(), sweep.end());
    }
    std::ostringstream csv;
    write_flops_csv(csv, rows);
    emit(opts->out, csv.str());
  });
}

void add_bench_latency(CLI::App& app) {
  struct Opts {
    std::string data;
    std::size_t fields = 100;
    std::uint32_t card = 10;
    std::size_t samples = 2000;
    std::string models = "tensorfm:d=2:r=1,tensorfm:d=3:r=4,fwfm";
    std::size_t k = 8;
    std::size_t repeats = 5;
    std::size_t warmup = 1;
    std::uint64_t seed = 0;
    std::string out = "-";
  };
  auto opts = std::make_shared<Opts>();
  CLI::App* cmd = add_command(app, "bench-latency",
                              "Single-threaded per-instance inference latency of randomly initialized models");
  cmd->add_option("--data", opts->data, "Dataset to score (empty: generate one from --fields/--card/--samples)");
  cmd->add_option("--fields", opts->fields, "Fields of the generated dataset")->check(at_least(2));
  cmd->add_option("--card", opts->card, "Cardinality of every generated field")->check(at_least(1));
  cmd->add_option("--samples", opts->samples, "Instances in the generated dataset")->check(at_least(1));
  cmd->add_option("--models", opts->models, "Comma-separated specs kind[:k=K][:d=D][:r=R]");
  cmd->add_option("--k", opts->k, "Embedding dimension when a spec has no k=")->check(at_least(1));
  cmd->add_option("--repeats", opts->repeats, "Timed passes over the dataset")->check(at_least(3));
  cmd->add_option("--warmup", opts->warmup, "Untimed passes before timing");
  cmd->add_option("--seed", opts->seed, "Seed for the generated dataset and model initialization");
  cmd->add_option("--out", opts->out, "CSV output path ('-' for stdout); wall_* columns are wall-clock times");
  cmd->callback([opts] {
    std::vector<ModelSpec> specs;
    for (const auto& text : parse_names(opts->models)) specs.push_back(parse_model_spec(text, opts->k));
    Dataset data;
    if (opts->data.empty()) {
      SyntheticSpec spec;
      spec.n_signal = 1;
      spec.order = 1;
      spec.n_noise = opts->fields - 1;
      spec.cardinality = opts->card;
      spec.n_samples = opts->samples;
      spec.seed = opts->seed;
      data = generate_synthetic(spec);
    } else {
      data = read_dataset(opts->data);
    }
    std::ostringstream csv;
    csv << "model,kind,n,k,d,r,parameters,flops,wall_mean_ms,wall_stddev_ms,wall_median_ms\n";
    for (auto& spec : specs) {
      spec.config.seed = opts->seed;
      const ModelBundle bundle = init_model(data.schema, spec.config);
      const LatencyReport report = time_inference(bundle, data, opts->repeats, opts->warmup);
      const FlopsModel flops =
          flops_estimate(bundle.kind, bundle.num_fields(), bundle.k, bundle.d, bundle.ranks);
      csv << spec.label << ',' << kind_name(bundle.kind) << ',' << bundle.num_fields() << ',' << bundle.k << ','
          << bundle.d << ',' << join_ranks(bundle.ranks) << ',' << parameter_count(bundle) << ',' << flops.flops
          << ',' << fixed(report.mean_ms, 6) << ',' << fixed(report.stddev_ms, 6) << ','
          << fixed(report.median_ms, 6) << "\n";
    }
    emit(opts->out, csv.str());
  });
}

void add_interpret(CLI::App& app) {
  struct Opts {
    std::string model;
    std::string data;
    std::size_t order = 3;
    std::size_t topk = 36;
    std::string k_list;
    std::string field_names;
    std::string out = "interactions.csv";
    std::string json = "interactions.json";
  };
  auto opts = std::make_shared<Opts>();
  CLI::App* cmd = add_command(app, "interpret",
                              "Learned interaction strengths against mutual information with the label");
  cmd->add_option("--model-file", opts->model, "Trained model")->required();
  cmd->add_option("--data", opts->data, "Training set the strengths are averaged over")
      ->required();
  cmd->add_option("--order", opts->order, "Interaction order")->check(at_least(2));
  cmd->add_option("--topk", opts->topk, "Rows of the strength table (0: every tuple)");
  cmd->add_option("--k-list", opts->k_list, "Comma-separated k for the top-k overlap curve (empty: 1..#tuples)");
  cmd->add_option("--field-names", opts->field_names, "File with one field name per line, e.g. prep's fields.txt");
  cmd->add_option("--out", opts->out, "Strength table CSV ('-' for stdout)");
  cmd->add_option("--json", opts->json, "Summary JSON with Pearson correlation and overlap curve");
  cmd->callback([opts] {
    std::vector<std::size_t> ks;
    if (!opts->k_list.empty()) ks = parse_sizes(opts->k_list, "--k-list");
    const ModelBundle bundle = load_bundle(opts->model);
    const Dataset train_set = read_dataset(opts->data);
    std::vector<std::string> names;
    if (!opts->field_names.empty()) {
      names = read_lines(opts->field_names);
      if (names.size() != train_set.schema.num_fields()) {
        throw UsageError("--field-names lists " + std::to_string(names.size()) + " names for " +
                         std::to_string(train_set.schema.num_fields()) + " fields");
      }
    }
    if (ks.empty()) {
      const std::size_t tuples = field_combinations(train_set.schema.num_fields(), opts->order).size();
      for (std::size_t k = 1; k <= tuples; ++k) ks.push_back(k);
    }
    const InteractionReport report = interaction_report(bundle, train_set, opts->order, ks);
    std::ostringstream csv;
    write_interaction_csv(csv, report, opts->topk, names);
    emit(opts->out, csv.str());
    std::ostringstream json;
    write_interaction_json(json, report);
    emit(opts->json, json.str());
    std::cerr << report.tuples.size() << " tuples of order " << opts->order << ", pearson "
              << fixed(report.pearson, 4) << "\n";
  });
}

}  // namespace tfm::cli
