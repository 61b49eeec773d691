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

#include "remccl/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "remccl/bench.hpp"
#include "remccl/imageio.hpp"
#include "remccl/labeling.hpp"
#include "remccl/oracle.hpp"
#include "remccl/parallel.hpp"

namespace remccl {

namespace {

const CLI::Range kWorkerRange(std::size_t{1}, std::size_t{1} << 16);

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t default_workers() {
  if (const char* env = std::getenv("PAREMSP_WORKERS")) {
    std::size_t n = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto res = std::from_chars(env, end, n);
    if (res.ec != std::errc{} || res.ptr != end || n == 0) {
      throw UsageError(std::string("PAREMSP_WORKERS='") + env +
                       "' is not a positive integer");
    }
    return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct InputOptions {
  std::string path;
  std::string gen;
  double threshold = 0.5;
  bool no_invert_pbm = false;

  void attach(CLI::App& cmd) {
    auto* in = cmd.add_option("input,--input,-i", path, "PBM/PGM image");
    auto* g = cmd.add_option("--gen", gen,
                             "Synthetic image instead of a file, e.g. "
                             "random:512x512:0.5:7");
    in->excludes(g);
    cmd.add_option("--threshold", threshold,
                   "Gray level cut as a fraction of maxval")
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_flag("--no-invert-pbm", no_invert_pbm,
                 "Treat PBM 1 bits as foreground");
  }

  [[nodiscard]] BenchImage load() const {
    if (path.empty() == gen.empty()) {
      throw UsageError("give exactly one of an input path or --gen");
    }
    const std::string id = gen.empty() ? path : "gen:" + gen;
    return load_bench_image(id, PnmOptions{.invert_pbm = !no_invert_pbm},
                            threshold);
  }
};

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error(path + ": cannot open for writing");
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!file) throw std::runtime_error(path + ": write failed");
}

std::string fixed3(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << v;
  return s.str();
}

// --- label ------------------------------------------------------------------

struct LabelCommand {
  InputOptions input;
  std::string algo = "paremsp";
  std::size_t workers = 0;
  std::string output;
  std::string format = "pgm16";
  bool sequential_relabel = false;

  void attach(CLI::App& cmd) {
    input.attach(cmd);
    cmd.add_option("--algo", algo)
        ->check(CLI::IsMember({"cclremsp", "aremsp", "paremsp"}))
        ->capture_default_str();
    cmd.add_option("--workers", workers,
                   "Worker threads (default: $PAREMSP_WORKERS or all cores)")
        ->check(kWorkerRange);
    cmd.add_option("--output,-o", output, "Where to write the label map");
    cmd.add_option("--format", format)
        ->check(CLI::IsMember({"pgm16", "csv"}))
        ->capture_default_str();
    cmd.add_flag("--sequential-relabel", sequential_relabel,
                 "Relabel on one thread after the parallel phases");
  }

  int run(std::ostream& out, std::ostream& err) const {
    const BenchImage img = input.load();
    const Algorithm a = parse_algorithm(algo);
    const std::size_t w = workers != 0 ? workers : default_workers();

    const auto t0 = std::chrono::steady_clock::now();
    const LabelResult r = run_algorithm(a, img.image, w, sequential_relabel);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();

    if (!output.empty()) {
      LabelFormat fmt =
          format == "csv" ? LabelFormat::kCsv : LabelFormat::kPgm16;
      std::string bytes;
      try {
        bytes = write_labels(r.labels, fmt);
      } catch (const FormatOverflow& e) {
        err << "warning: " << e.what() << "; writing csv instead\n";
        bytes = write_labels(r.labels, LabelFormat::kCsv);
      }
      write_file(output, bytes);
    }
    out << "algo=" << algo << " workers="
        << (a == Algorithm::kPARemSP ? w : 1)
        << " components=" << r.components << " ms=" << fixed3(ms) << "\n";
    return kExitOk;
  }
};

// --- verify -----------------------------------------------------------------

struct VerifyCommand {
  InputOptions input;
  std::size_t workers = 0;

  void attach(CLI::App& cmd) {
    input.attach(cmd);
    cmd.add_option("--workers", workers, "Worker threads for paremsp")
        ->check(kWorkerRange);
  }

  int run(std::ostream& out, std::ostream&) const {
    const BenchImage img = input.load();
    const std::size_t w = workers != 0 ? workers : default_workers();
    const OracleResult oracle = flood_fill_label(img.image);

    int agree = 1;  // the oracle itself
    out << "oracle   components=" << oracle.components << "\n";
    const auto check = [&](std::string_view name, const LabelResult& r,
                           bool extra_ok) {
      const bool ok = extra_ok && r.components == oracle.components &&
                      labels_are_consecutive(r.labels, r.components) &&
                      partitions_equal(r.labels, oracle.labels);
      out << std::left << std::setw(9) << name
          << "components=" << r.components << (ok ? " ok" : " MISMATCH")
          << "\n";
      agree += ok ? 1 : 0;
    };
    const LabelResult ccl = label_cclremsp(img.image);
    const LabelResult arem = label_aremsp(img.image);
    const LabelResult parem = label_paremsp(img.image, w);
    check("cclremsp", ccl, true);
    check("aremsp", arem, true);
    check("paremsp", parem, parem.labels == arem.labels);
    out << agree << "/4 agree\n";
    return agree == 4 ? kExitOk : kExitMismatch;
  }
};

// --- bench ------------------------------------------------------------------

struct BenchCommand {
  std::vector<std::string> algos{"cclremsp", "aremsp", "paremsp"};
  std::vector<std::string> images;
  std::vector<std::size_t> workers;
  std::size_t reps = 5;
  std::size_t warmup = 1;
  std::string csv_path;
  std::string mode = "scaling";
  bool sequential_relabel = false;
  double threshold = 0.5;
  bool no_invert_pbm = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--algo", algos, "Algorithms to time")
        ->delimiter(',')
        ->capture_default_str();
    cmd.add_option("--image", images,
                   "Image ids: gen:<spec> or a PBM/PGM path (repeatable)")
        ->delimiter(',')
        ->required();
    cmd.add_option("--workers", workers,
                   "Worker counts, e.g. 1,2,4 (default: $PAREMSP_WORKERS "
                   "or all cores)")
        ->delimiter(',')
        ->check(kWorkerRange);
    cmd.add_option("--reps", reps, "Timed reps per configuration (>= 5)")
        ->capture_default_str();
    cmd.add_option("--warmup", warmup)->capture_default_str();
    cmd.add_option("--csv", csv_path, "Write CSV here instead of stdout");
    cmd.add_option("--mode", mode,
                   "scaling: per worker count; seq: sequential comparison")
        ->check(CLI::IsMember({"scaling", "seq"}))
        ->capture_default_str();
    cmd.add_flag("--sequential-relabel", sequential_relabel);
    cmd.add_option("--threshold", threshold)->check(CLI::Range(0.0, 1.0));
    cmd.add_flag("--no-invert-pbm", no_invert_pbm);
  }

  int run(std::ostream& out, std::ostream&) const {
    const PnmOptions pnm{.invert_pbm = !no_invert_pbm};
    std::vector<BenchImage> loaded;
    for (const auto& id : images) {
      loaded.push_back(load_bench_image(id, pnm, threshold));
    }

    std::string csv;
    if (mode == "seq") {
      std::vector<Algorithm> list;
      for (const auto& a : algos) list.push_back(parse_algorithm(a));
      csv = emit_sequential_csv(compare_sequential(list, loaded, reps, warmup));
    } else {
      BenchConfig config;
      config.algorithms = algos;
      config.workers =
          workers.empty() ? std::vector<std::size_t>{default_workers()}
                          : workers;
      config.reps = reps;
      config.warmup = warmup;
      config.sequential_relabel = sequential_relabel;
      csv = emit_csv(run_bench(config, loaded));
    }
    if (csv_path.empty()) {
      out << csv;
    } else {
      write_file(csv_path, csv);
    }
    return kExitOk;
  }
};

// --- generate ---------------------------------------------------------------

struct GenerateCommand {
  std::string kind = "random";
  GeneratorSpec spec;
  std::string output;
  bool no_invert_pbm = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--kind", kind)
        ->check(CLI::IsMember({"random", "checkerboard", "stripes", "blocks"}))
        ->capture_default_str();
    cmd.add_option("--width", spec.width)->required();
    cmd.add_option("--height", spec.height)->required();
    cmd.add_option("--density", spec.density, "Foreground probability")
        ->capture_default_str();
    cmd.add_option("--seed", spec.seed)->capture_default_str();
    cmd.add_option("--period", spec.period, "Stripe period in rows")
        ->capture_default_str();
    cmd.add_option("--block", spec.block, "Block side length")
        ->capture_default_str();
    cmd.add_option("--output,-o", output, "PBM output path (default stdout)");
    cmd.add_flag("--no-invert-pbm", no_invert_pbm);
  }

  int run(std::ostream& out, std::ostream& err) const {
    static const std::map<std::string, GeneratorKind> kinds{
        {"random", GeneratorKind::kRandom},
        {"checkerboard", GeneratorKind::kCheckerboard},
        {"stripes", GeneratorKind::kStripes},
        {"blocks", GeneratorKind::kBlocks}};
    GeneratorSpec s = spec;
    s.kind = kinds.at(kind);
    const std::string bytes = write_pbm(generate(s), !no_invert_pbm);
    if (output.empty()) {
      out << bytes;
    } else {
      write_file(output, bytes);
      err << "wrote " << s.width << "x" << s.height << " " << kind << " to "
          << output << "\n";
    }
    return kExitOk;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Connected component labeling with Rem's union-find"};
  app.require_subcommand(1);

  LabelCommand label;
  VerifyCommand verify;
  BenchCommand bench;
  GenerateCommand gen;
  auto* label_cmd = app.add_subcommand("label", "Label an image");
  auto* verify_cmd = app.add_subcommand(
      "verify", "Check all algorithms against the flood-fill oracle");
  auto* bench_cmd = app.add_subcommand("bench", "Time algorithms, emit CSV");
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic PBM");
  label.attach(*label_cmd);
  verify.attach(*verify_cmd);
  bench.attach(*bench_cmd);
  gen.attach(*gen_cmd);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*label_cmd) return label.run(out, err);
    if (*verify_cmd) return verify.run(out, err);
    if (*bench_cmd) return bench.run(out, err);
    return gen.run(out, err);
  } catch (const OutputMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace remccl
