// Copyright 2026 The remccl Authors
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

#include "remccl/bench.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "remccl/oracle.hpp"

namespace remccl {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double local_ms(const PhaseTimes& p) { return p.scan_ms; }
double local_merge_ms(const PhaseTimes& p) {
  return p.scan_ms + p.merge_ms + p.flatten_ms;
}

struct Measured {
  std::vector<double> total_ms;
  std::vector<PhaseTimes> phases;
  Label components = 0;
  std::uint64_t hash = 0;
  LabelGrid first_output;
};

Measured measure(Algorithm algo, const BenchImage& img, std::size_t workers,
                 const BenchConfig& config) {
  for (std::size_t i = 0; i < config.warmup; ++i) {
    (void)run_algorithm(algo, img.image, workers, config.sequential_relabel);
  }
  Measured m;
  for (std::size_t i = 0; i < config.reps; ++i) {
    const auto t0 = Clock::now();
    LabelResult r =
        run_algorithm(algo, img.image, workers, config.sequential_relabel);
    const auto t1 = Clock::now();
    m.total_ms.push_back(
        std::chrono::duration<double, std::milli>(t1 - t0).count());
    m.phases.push_back(r.phases);

    const std::uint64_t h = hash_labels(r.labels);
    if (i == 0) {
      m.hash = h;
      m.components = r.components;
      m.first_output = std::move(r.labels);
    } else if (h != m.hash) {
      throw OutputMismatch(std::string(algorithm_name(algo)) + " on " +
                           img.id + " with " + std::to_string(workers) +
                           " workers: output changed between reps");
    }
  }
  return m;
}

PhaseTimes median_phases(const std::vector<PhaseTimes>& v) {
  auto pick = [&](auto field) {
    std::vector<double> xs;
    xs.reserve(v.size());
    for (const auto& p : v) xs.push_back(p.*field);
    return median(std::move(xs));
  };
  return PhaseTimes{pick(&PhaseTimes::scan_ms), pick(&PhaseTimes::merge_ms),
                    pick(&PhaseTimes::flatten_ms),
                    pick(&PhaseTimes::relabel_ms)};
}

BenchReport summarize(Algorithm algo, const BenchImage& img,
                      std::size_t workers, const Measured& m) {
  BenchReport r;
  r.algorithm = std::string(algorithm_name(algo));
  r.image = img.id;
  r.bytes = img.bytes;
  r.workers = workers;
  r.rep_ms = m.total_ms;
  r.min_ms = *std::min_element(m.total_ms.begin(), m.total_ms.end());
  r.max_ms = *std::max_element(m.total_ms.begin(), m.total_ms.end());
  r.avg_ms = std::accumulate(m.total_ms.begin(), m.total_ms.end(), 0.0) /
             static_cast<double>(m.total_ms.size());
  r.median_ms = median(m.total_ms);
  r.phases = median_phases(m.phases);
  r.components = m.components;
  r.output_hash = m.hash;
  return r;
}

double ratio(double base, double value) {
  return value > 0 ? base / value : 0.0;
}

std::string fmt_ms(double v) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << v;
  return out.str();
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  if (name == "cclremsp") return Algorithm::kCclRemSP;
  if (name == "aremsp") return Algorithm::kARemSP;
  if (name == "paremsp") return Algorithm::kPARemSP;
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "' (expected cclremsp, aremsp or paremsp)");
}

std::string_view algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::kCclRemSP: return "cclremsp";
    case Algorithm::kARemSP: return "aremsp";
    case Algorithm::kPARemSP: return "paremsp";
  }
  return "?";
}

LabelResult run_algorithm(Algorithm algo, const BinaryImage& image,
                          std::size_t workers, bool sequential_relabel) {
  switch (algo) {
    case Algorithm::kCclRemSP: return label_cclremsp(image);
    case Algorithm::kARemSP: return label_aremsp(image);
    case Algorithm::kPARemSP:
      return label_paremsp(
          image, ParallelOptions{.workers = workers,
                                 .sequential_relabel = sequential_relabel});
  }
  throw std::logic_error("unreachable");
}

std::uint64_t hash_labels(const LabelGrid& labels) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](std::uint64_t word, int bytes) {
    for (int i = 0; i < bytes; ++i) {
      h ^= (word >> (8 * i)) & 0xFF;
      h *= 0x100000001B3ULL;
    }
  };
  mix(labels.width(), 8);
  mix(labels.height(), 8);
  for (Label v : labels.data()) mix(v, 4);
  return h;
}

BenchImage load_bench_image(std::string_view id, PnmOptions pnm,
                            double level) {
  constexpr std::string_view kGen = "gen:";
  if (id.starts_with(kGen)) {
    try {
      BinaryImage image = generate(parse_generator_spec(id.substr(kGen.size())));
      const std::size_t bytes = image.size();
      return BenchImage{std::string(id), std::move(image), bytes};
    } catch (const std::invalid_argument& e) {
      throw ConfigError("image '" + std::string(id) + "': " + e.what());
    }
  }
  const std::filesystem::path path{std::string(id)};
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) {
    throw ConfigError("unknown image '" + std::string(id) +
                      "' (not a gen: spec or readable file)");
  }
  try {
    return BenchImage{std::string(id),
                      to_binary(read_pnm_file(path, pnm), level),
                      static_cast<std::size_t>(size)};
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

std::vector<BenchReport> run_bench(const BenchConfig& config) {
  std::vector<BenchImage> images;
  images.reserve(config.images.size());
  for (const auto& id : config.images) {
    images.push_back(load_bench_image(id, config.pnm, config.level));
  }
  return run_bench(config, images);
}

std::vector<BenchReport> run_bench(const BenchConfig& config,
                                   std::span<const BenchImage> images) {
  if (config.algorithms.empty()) throw ConfigError("no algorithms given");
  if (images.empty()) throw ConfigError("no images given");
  if (config.reps < 5) {
    throw ConfigError("at least 5 reps are required, got " +
                      std::to_string(config.reps));
  }
  std::vector<Algorithm> algos;
  for (const auto& name : config.algorithms) {
    algos.push_back(parse_algorithm(name));
  }
  std::set<std::size_t> worker_set(config.workers.begin(),
                                   config.workers.end());
  if (worker_set.contains(0)) throw ConfigError("workers must be >= 1");
  worker_set.insert(1);

  std::vector<BenchReport> reports;
  for (const BenchImage& img : images) {
    std::optional<LabelGrid> reference;  // canonical form, first algorithm
    for (Algorithm algo : algos) {
      const bool parallel = algo == Algorithm::kPARemSP;
      const std::size_t first = reports.size();
      std::optional<std::uint64_t> hash;
      for (std::size_t w : worker_set) {
        if (!parallel && w != 1) continue;
        Measured m = measure(algo, img, w, config);
        if (hash && *hash != m.hash) {
          throw OutputMismatch(std::string(algorithm_name(algo)) + " on " +
                               img.id + ": output with " + std::to_string(w) +
                               " workers differs from 1 worker");
        }
        hash = m.hash;
        if (!reference) {
          reference = canonicalize(m.first_output);
        } else if (canonicalize(m.first_output) != *reference) {
          throw OutputMismatch(std::string(algorithm_name(algo)) + " on " +
                               img.id + ": partition differs from " +
                               config.algorithms.front());
        }
        reports.push_back(summarize(algo, img, w, m));
      }
      const BenchReport& base = reports[first];  // workers == 1
      for (std::size_t i = first; i < reports.size(); ++i) {
        BenchReport& r = reports[i];
        r.speedup = ratio(base.median_ms, r.median_ms);
        r.local_speedup = ratio(local_ms(base.phases), local_ms(r.phases));
        r.local_merge_speedup =
            ratio(local_merge_ms(base.phases), local_merge_ms(r.phases));
      }
      reports[first].speedup = 1.0;
      reports[first].local_speedup = 1.0;
      reports[first].local_merge_speedup = 1.0;
    }
  }
  return reports;
}

std::string emit_csv(std::span<const BenchReport> reports) {
  if (reports.empty()) {
    throw std::invalid_argument("emit_csv: no reports");
  }
  std::size_t reps = 0;
  for (const auto& r : reports) reps = std::max(reps, r.rep_ms.size());

  std::string out = "algo,image,bytes,workers";
  for (std::size_t i = 1; i <= reps; ++i) {
    out += ",rep" + std::to_string(i) + "_ms";
  }
  out += ",min_ms,avg_ms,max_ms,scan_ms,merge_ms,flatten_ms,relabel_ms,"
         "speedup\n";
  for (const auto& r : reports) {
    out += r.algorithm + "," + r.image + "," + std::to_string(r.bytes) + "," +
           std::to_string(r.workers);
    for (std::size_t i = 0; i < reps; ++i) {
      out += ",";
      if (i < r.rep_ms.size()) out += fmt_ms(r.rep_ms[i]);
    }
    for (double v : {r.min_ms, r.avg_ms, r.max_ms, r.phases.scan_ms,
                     r.phases.merge_ms, r.phases.flatten_ms,
                     r.phases.relabel_ms, r.speedup}) {
      out += "," + fmt_ms(v);
    }
    out += "\n";
  }
  return out;
}

std::vector<SequentialSummary> compare_sequential(
    std::span<const Algorithm> algorithms, std::span<const BenchImage> images,
    std::size_t reps, std::size_t warmup) {
  if (reps == 0) throw ConfigError("reps must be >= 1");
  if (images.empty()) throw ConfigError("no images given");
  // Image-major: the algorithms take turns on each image.
  std::vector<std::vector<double>> medians(algorithms.size());
  for (const BenchImage& img : images) {
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      for (std::size_t i = 0; i < warmup; ++i) {
        (void)run_algorithm(algorithms[a], img.image);
      }
      std::vector<double> ms;
      for (std::size_t i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        (void)run_algorithm(algorithms[a], img.image);
        ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0)
                         .count());
      }
      medians[a].push_back(median(std::move(ms)));
    }
  }
  std::vector<SequentialSummary> out;
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    const auto& m = medians[a];
    out.push_back(SequentialSummary{
        std::string(algorithm_name(algorithms[a])), images.size(),
        *std::min_element(m.begin(), m.end()),
        std::accumulate(m.begin(), m.end(), 0.0) /
            static_cast<double>(m.size()),
        *std::max_element(m.begin(), m.end())});
  }
  return out;
}

std::string emit_sequential_csv(std::span<const SequentialSummary> rows) {
  std::string out = "algo,images,min_ms,avg_ms,max_ms\n";
  for (const auto& r : rows) {
    out += r.algorithm + "," + std::to_string(r.images) + "," +
           fmt_ms(r.min_ms) + "," + fmt_ms(r.avg_ms) + "," + fmt_ms(r.max_ms) +
           "\n";
  }
  return out;
}

}  // namespace remccl
