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

#include "spikebar/data.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "spikebar/rng.hpp"

namespace spikebar {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, int line,
                             const std::string& reason) {
  std::ostringstream os;
  os << path.string() << ":" << line << ": " << reason;
  throw RuntimeError(os.str());
}

int parse_int(std::string_view text, const std::filesystem::path& path,
              int line, const std::string& what) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    parse_fail(path, line, "malformed " + what + " '" + std::string(text) + "'");
  return value;
}

// Header line `key=value`; the key is fixed per line number.
int parse_header_line(std::istream& in, const std::filesystem::path& path,
                      int line, const std::string& key) {
  std::string text;
  if (!std::getline(in, text))
    parse_fail(path, line, "missing header line '" + key + "=...'");
  const auto eq = text.find('=');
  if (eq == std::string::npos || text.substr(0, eq) != key)
    parse_fail(path, line, "expected '" + key + "=...', got '" + text + "'");
  return parse_int(std::string_view(text).substr(eq + 1), path, line, key);
}

}  // namespace

void EventStream::validate() const {
  SB_CHECK_MSG(n_channels > 0 && n_steps > 0,
               "stream window must be positive");
  const SpikeEvent* prev = nullptr;
  for (const SpikeEvent& ev : events) {
    SB_CHECK_MSG(ev.step >= 0 && ev.step < n_steps, "event step out of range");
    SB_CHECK_MSG(ev.channel >= 0 && ev.channel < n_channels,
                 "event channel out of range");
    if (prev)
      SB_CHECK_MSG(*prev < ev, "events must be strictly (step, channel) sorted");
    prev = &ev;
  }
}

void EventStream::canonicalize() {
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
}

std::vector<SpikeVec> EventStream::to_raster() const {
  validate();
  std::vector<SpikeVec> raster(n_steps, SpikeVec(n_channels, 0));
  for (const SpikeEvent& ev : events) raster[ev.step][ev.channel] = 1;
  return raster;
}

LabeledSample read_sample(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw RuntimeError("cannot open sample file " + path.string());

  LabeledSample sample;
  sample.stream.n_channels = parse_header_line(in, path, 1, "n_channels");
  sample.stream.n_steps = parse_header_line(in, path, 2, "n_steps");
  sample.label = parse_header_line(in, path, 3, "label");
  if (sample.stream.n_channels <= 0 || sample.stream.n_steps <= 0)
    parse_fail(path, 1, "stream window must be positive");
  if (sample.label < 0) parse_fail(path, 3, "label must be non-negative");

  std::string text;
  int line = 3;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) parse_fail(path, line, "blank event line");
    const auto comma = text.find(',');
    if (comma == std::string::npos)
      parse_fail(path, line, "expected 'step,channel', got '" + text + "'");
    SpikeEvent ev;
    ev.step = parse_int(std::string_view(text).substr(0, comma), path, line,
                        "step");
    ev.channel = parse_int(std::string_view(text).substr(comma + 1), path,
                           line, "channel");
    if (ev.step < 0 || ev.step >= sample.stream.n_steps)
      parse_fail(path, line, "step " + std::to_string(ev.step) +
                                 " out of range [0, " +
                                 std::to_string(sample.stream.n_steps) + ")");
    if (ev.channel < 0 || ev.channel >= sample.stream.n_channels)
      parse_fail(path, line,
                 "channel " + std::to_string(ev.channel) +
                     " out of range [0, " +
                     std::to_string(sample.stream.n_channels) + ")");
    if (!sample.stream.events.empty() &&
        !(sample.stream.events.back() < ev))
      parse_fail(path, line, "events out of order or duplicated");
    sample.stream.events.push_back(ev);
  }
  sample.stream.validate();
  return sample;
}

void write_sample(const std::filesystem::path& path,
                  const LabeledSample& sample) {
  sample.stream.validate();
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw RuntimeError("cannot write sample file " + path.string());
  out << "n_channels=" << sample.stream.n_channels << "\n"
      << "n_steps=" << sample.stream.n_steps << "\n"
      << "label=" << sample.label << "\n";
  for (const SpikeEvent& ev : sample.stream.events)
    out << ev.step << "," << ev.channel << "\n";
  if (!out) throw RuntimeError("write failed for " + path.string());
}

std::vector<LabeledSample> load_dataset(
    const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in)
    throw RuntimeError("cannot open manifest " + manifest_path.string());
  const std::filesystem::path dir = manifest_path.parent_path();

  std::vector<LabeledSample> samples;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) parse_fail(manifest_path, line, "blank manifest line");
    const auto comma = text.rfind(',');
    if (comma == std::string::npos)
      parse_fail(manifest_path, line, "expected 'path,label'");
    const std::string rel = text.substr(0, comma);
    const int label = parse_int(std::string_view(text).substr(comma + 1),
                                manifest_path, line, "label");
    LabeledSample sample = read_sample(dir / rel);
    if (sample.label != label)
      parse_fail(manifest_path, line,
                 "label mismatch: manifest says " + std::to_string(label) +
                     ", sample header says " + std::to_string(sample.label));
    samples.push_back(std::move(sample));
  }
  return samples;
}

std::filesystem::path write_dataset(
    const std::filesystem::path& dir, const std::string& name,
    const std::vector<LabeledSample>& samples) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path manifest_path = dir / (name + ".manifest");
  std::ofstream manifest(manifest_path, std::ios::trunc);
  if (!manifest)
    throw RuntimeError("cannot write manifest " + manifest_path.string());

  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::ostringstream file;
    file << name << "_" << std::setw(5) << std::setfill('0') << i << ".events";
    write_sample(dir / file.str(), samples[i]);
    manifest << file.str() << "," << samples[i].label << "\n";
  }
  if (!manifest)
    throw RuntimeError("write failed for " + manifest_path.string());
  return manifest_path;
}

EventStream poisson_encode(const Vec& rates, int n_steps, std::uint64_t seed) {
  SB_CHECK_MSG(n_steps >= 0, "n_steps must be non-negative");
  for (double r : rates)
    SB_CHECK_MSG(r >= 0.0 && r <= 1.0, "rates must lie in [0, 1]");

  EventStream stream;
  stream.n_channels = static_cast<int>(rates.size());
  stream.n_steps = n_steps;
  Rng rng(seed);
  for (int n = 0; n < n_steps; ++n)
    for (int j = 0; j < stream.n_channels; ++j)
      if (uniform_unit(rng) < rates[j]) stream.events.push_back({n, j});
  stream.validate();
  return stream;
}

void SyntheticSpec::validate() const {
  SB_CHECK_MSG(n_classes >= 2, "need at least 2 classes");
  SB_CHECK_MSG(n_channels > 0 && n_steps > 0, "window must be positive");
  SB_CHECK_MSG(samples_per_class > 0, "samples_per_class must be positive");
  SB_CHECK_MSG(template_events > 0 &&
                   template_events <= n_channels * n_steps,
               "template_events out of range");
  SB_CHECK_MSG(jitter >= 0, "jitter must be non-negative");
  SB_CHECK_MSG(noise_rate >= 0.0 && noise_rate <= 1.0,
               "noise_rate must lie in [0, 1]");
  SB_CHECK_MSG(sample_offset >= 0, "sample_offset must be non-negative");
}

std::vector<LabeledSample> make_synthetic_dataset(const SyntheticSpec& spec) {
  spec.validate();

  // Fixed random anchor sets, one per class.
  std::vector<std::vector<SpikeEvent>> templates(spec.n_classes);
  for (int c = 0; c < spec.n_classes; ++c) {
    Rng rng(mix_seed(spec.seed, 100 + c));
    std::set<SpikeEvent> anchors;
    while (static_cast<int>(anchors.size()) < spec.template_events) {
      const int step =
          static_cast<int>(uniform_unit(rng) * spec.n_steps);
      const int channel =
          static_cast<int>(uniform_unit(rng) * spec.n_channels);
      anchors.insert({std::min(step, spec.n_steps - 1),
                      std::min(channel, spec.n_channels - 1)});
    }
    templates[c].assign(anchors.begin(), anchors.end());
  }

  std::vector<LabeledSample> samples;
  samples.reserve(static_cast<std::size_t>(spec.n_classes) *
                  spec.samples_per_class);
  for (int c = 0; c < spec.n_classes; ++c) {
    for (int s = 0; s < spec.samples_per_class; ++s) {
      Rng rng(mix_seed(mix_seed(spec.seed, 10000 + c),
                       static_cast<std::uint64_t>(spec.sample_offset + s)));
      LabeledSample sample;
      sample.label = c;
      sample.stream.n_channels = spec.n_channels;
      sample.stream.n_steps = spec.n_steps;
      for (const SpikeEvent& anchor : templates[c]) {
        int step = anchor.step;
        if (spec.jitter > 0) {
          const int offset =
              static_cast<int>(uniform_unit(rng) * (2 * spec.jitter + 1)) -
              spec.jitter;
          step = std::clamp(anchor.step + offset, 0, spec.n_steps - 1);
        }
        sample.stream.events.push_back({step, anchor.channel});
      }
      if (spec.noise_rate > 0.0) {
        for (int n = 0; n < spec.n_steps; ++n)
          for (int j = 0; j < spec.n_channels; ++j)
            if (uniform_unit(rng) < spec.noise_rate)
              sample.stream.events.push_back({n, j});
      }
      sample.stream.canonicalize();
      sample.stream.validate();
      samples.push_back(std::move(sample));
    }
  }
  return samples;
}

}  // namespace spikebar
