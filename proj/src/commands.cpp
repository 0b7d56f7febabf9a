// Copyright 2026 The Spikebar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spikebar/commands.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "spikebar/checkpoint.hpp"
#include "spikebar/network.hpp"

namespace spikebar {

namespace fs = std::filesystem;

namespace {

std::string fmt_rate(double rate) {
  std::ostringstream s;
  s << rate;
  return s.str();
}

std::string fmt_vec(const std::vector<double>& v) {
  std::ostringstream s;
  s << "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s << ", ";
    s << std::setprecision(4) << v[i];
  }
  s << "]";
  return s.str();
}

std::vector<LabeledSample> load_split(const fs::path& dir,
                                      const std::string& name) {
  const fs::path manifest = dir / (name + ".manifest");
  if (!fs::exists(manifest))
    throw RuntimeError("dataset manifest " + manifest.string() +
                       " not found; run gen-data first");
  return load_dataset(manifest);
}

void print_report(const RunReport& report, std::ostream& out) {
  for (const EpochRecord& e : report.epochs)
    out << "epoch " << e.epoch << ": accuracy=" << std::setprecision(4)
        << e.accuracy << " loss=" << e.mean_loss
        << " writes=" << e.total_writes
        << " rate_hz=" << fmt_vec(e.mean_event_rate)
        << " theta=" << fmt_vec(e.theta) << "\n";
  out << "final: accuracy=" << std::setprecision(4) << report.final_accuracy
      << " total_writes=" << report.total_writes << " rate_hz="
      << fmt_vec(report.epochs.empty() ? std::vector<double>{}
                                       : report.epochs.back().mean_event_rate)
      << "\n";
}

// One full training run for sweep rows; fresh network, own output directory.
RunReport run_once(RunConfig cfg, const std::string& tag,
                   const std::vector<LabeledSample>& train_set,
                   const std::vector<LabeledSample>* test_set) {
  cfg.train.out_dir = (fs::path(cfg.train.out_dir) / tag).string();
  fs::create_directories(cfg.train.out_dir);
  Network net(cfg.to_network_spec());
  const TrainRunConfig tc = cfg.to_train_config();
  RunReport report = train(net, train_set, test_set, tc);
  save_checkpoint(tc.checkpoint_path,
                  make_checkpoint(net, tc.epochs, report.total_events));
  return report;
}

}  // namespace

int run_command(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_gen_data(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const fs::path dir(cfg.data.dir);
  fs::create_directories(dir);

  const std::vector<LabeledSample> train_set =
      make_synthetic_dataset(cfg.to_synthetic_spec(false));
  write_dataset(dir, "train", train_set);
  out << "wrote " << train_set.size() << " train samples";

  if (cfg.data.test_per_class > 0) {
    const std::vector<LabeledSample> test_set =
        make_synthetic_dataset(cfg.to_synthetic_spec(true));
    write_dataset(dir, "test", test_set);
    out << ", " << test_set.size() << " test samples";
  }
  out << " (" << cfg.data.classes << " classes, " << cfg.data.channels
      << " channels, " << cfg.data.steps << " steps) to " << dir.string()
      << "\n";
  return kExitOk;
}

int cmd_train(const RunConfig& cfg, bool resume, std::ostream& out) {
  cfg.validate();
  const fs::path data_dir(cfg.data.dir);
  const std::vector<LabeledSample> train_set = load_split(data_dir, "train");
  std::vector<LabeledSample> test_set;
  if (fs::exists(data_dir / "test.manifest"))
    test_set = load_dataset(data_dir / "test.manifest");

  fs::create_directories(cfg.train.out_dir);
  TrainRunConfig tc = cfg.to_train_config();

  int start_epoch = 0;
  std::uint64_t prior_events = 0;
  std::unique_ptr<Network> net;
  if (resume) {
    const Checkpoint ckpt = load_checkpoint(tc.checkpoint_path);
    if (ckpt.epochs_completed > tc.epochs)
      throw ContractError("checkpoint already has " +
                          std::to_string(ckpt.epochs_completed) +
                          " epochs; train.epochs=" +
                          std::to_string(tc.epochs) + " asks for fewer");
    start_epoch = ckpt.epochs_completed;
    prior_events = ckpt.total_events;
    net = std::make_unique<Network>(ckpt.to_network());
    out << "resuming from " << tc.checkpoint_path << " at epoch "
        << start_epoch << "\n";
  } else {
    net = std::make_unique<Network>(cfg.to_network_spec());
  }

  const RunReport report =
      train(*net, train_set, test_set.empty() ? nullptr : &test_set, tc,
            start_epoch, prior_events);
  save_checkpoint(tc.checkpoint_path,
                  make_checkpoint(*net, tc.epochs, report.total_events));
  print_report(report, out);
  return kExitOk;
}

int cmd_eval(const fs::path& checkpoint_path, const fs::path& manifest_path,
             std::ostream& out) {
  const Checkpoint ckpt = load_checkpoint(checkpoint_path);
  Network net = ckpt.to_network();
  const std::vector<LabeledSample> samples = load_dataset(manifest_path);
  const double accuracy = net.evaluate(samples);

  out << "accuracy=" << std::setprecision(4) << accuracy
      << " n_samples=" << samples.size() << "\n";

  const fs::path metrics_path =
      checkpoint_path.parent_path() / "metrics.jsonl";
  std::ofstream metrics(metrics_path, std::ios::app);
  if (!metrics)
    throw RuntimeError("cannot append to " + metrics_path.string());
  metrics << nlohmann::json{{"record", "eval"},
                            {"accuracy", accuracy},
                            {"n_samples", samples.size()},
                            {"manifest", manifest_path.string()}}
                 .dump()
          << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const std::vector<double>& rates,
              std::ostream& out) {
  cfg.validate();
  for (double r : rates)
    SB_CHECK_MSG(r > 0.0, "sweep rates must be positive");

  const fs::path data_dir(cfg.data.dir);
  const std::vector<LabeledSample> train_set = load_split(data_dir, "train");
  std::vector<LabeledSample> test_set;
  if (fs::exists(data_dir / "test.manifest"))
    test_set = load_dataset(data_dir / "test.manifest");
  const std::vector<LabeledSample>* test_ptr =
      test_set.empty() ? nullptr : &test_set;

  struct Row {
    std::string rate;
    double accuracy;
    std::uint64_t writes;
  };
  std::vector<Row> rows;

  RunConfig base = cfg;
  base.train.rule = "continuous";
  const RunReport baseline =
      run_once(base, "sweep-continuous", train_set, test_ptr);
  rows.push_back({"continuous", baseline.final_accuracy,
                  baseline.total_writes});

  for (double rate : rates) {
    RunConfig variant = cfg;
    variant.train.rule = "error-triggered";
    variant.train.target_rate_hz = rate;
    const RunReport report = run_once(
        variant, "sweep-rate-" + fmt_rate(rate), train_set, test_ptr);
    rows.push_back({fmt_rate(rate), report.final_accuracy,
                    report.total_writes});
  }

  std::ostringstream table;
  table << "rate,accuracy,total_writes\n";
  for (const Row& row : rows)
    table << row.rate << "," << std::setprecision(6) << row.accuracy << ","
          << row.writes << "\n";

  const fs::path csv_path = fs::path(cfg.train.out_dir) / "sweep.csv";
  fs::create_directories(csv_path.parent_path());
  std::ofstream csv(csv_path, std::ios::trunc);
  if (!csv) throw RuntimeError("cannot write " + csv_path.string());
  csv << table.str();

  out << table.str();
  return kExitOk;
}

}  // namespace spikebar
