// nckit command-line tool: synthesize fields, simulate detection, reconstruct,
// and evaluate non-classicality criteria, depths and quasi-distributions.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>
#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "nckit/criteria.hpp"
#include "nckit/detection.hpp"
#include "nckit/diagnostics.hpp"
#include "nckit/error.hpp"
#include "nckit/field_io.hpp"
#include "nckit/ncd.hpp"
#include "nckit/parallel.hpp"
#include "nckit/presets.hpp"
#include "nckit/quasiprob.hpp"
#include "nckit/report.hpp"
#include "nckit/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nckit;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Globals {
  std::uint64_t seed = 0;
  int threads = 0;
  double tol = 1e-10;
  std::string out;
  bool strict = false;
};

struct Run {
  std::string command;
  json config = json::object();
  std::vector<fs::path> inputs;
};

std::string sha256_file(const fs::path& path) {
  const std::string data = io::read_text(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 failed for " + path.string());
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

// Writes the output (stdout when --out is empty) and its manifest sidecar.
void emit(const Globals& g, const Run& run, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  io::write_text(g.out, text);
  json m;
  m["command"] = run.command;
  m["config"] = run.config;
  m["seed"] = g.seed;
  m["threads"] = g.threads;
  m["tol"] = g.tol;
  m["tool_version"] = kVersion;
  m["timestamp"] = utc_timestamp();
  m["output"] = fs::path(g.out).filename().string();
  json inputs = json::array();
  for (const auto& p : run.inputs) inputs.push_back({{"path", p.string()}, {"sha256", sha256_file(p)}});
  m["inputs"] = inputs;
  io::write_text(g.out + ".manifest.json", m.dump(2) + "\n");
}

MultiIndex parse_index(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) v.push_back(std::stoi(item));
  return MultiIndex(v);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) v.push_back(std::stod(item));
  return v;
}

ModeSpec modes_for(const std::string& text, int dims) {
  if (text.empty()) return ModeSpec::uniform(dims, 1.0);
  auto v = parse_list(text);
  if (v.size() == 1) return ModeSpec::uniform(dims, v[0]);
  if (static_cast<int>(v.size()) != dims) throw ArgumentError("--modes needs 1 or " + std::to_string(dims) + " values");
  return ModeSpec(v);
}

PhotonNumberDistribution load_distribution(const fs::path& path) {
  const io::FieldFile f = io::read_field(path);
  if (f.kind == io::FieldKind::histogram) {
    warn("treating histogram " + path.string() + " as a photon-number distribution (ideal detector)");
    return f.histogram().as_distribution();
  }
  return f.distribution();
}

PhotocountHistogram load_histogram(const fs::path& path) {
  const io::FieldFile f = io::read_field(path);
  if (f.kind != io::FieldKind::histogram) throw FormatError(path.string() + " is not a histogram file");
  return f.histogram();
}

std::string row_indices(const CriterionExpr& e, const std::string& argmin) {
  return argmin.empty() ? e.indices : e.indices + ";argmin=" + argmin;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon-number non-classicality toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--tol", g.tol, "Relative tolerance for calling a criterion violated")->capture_default_str();
  app.add_option("--out", g.out, "Output file (stdout when omitted)");
  app.add_flag("--strict", g.strict, "Exit with status 3 if any warning was raised");

  // synth
  auto* synth = app.add_subcommand("synth", "Build a photon-number distribution from a Gaussian field spec");
  std::string spec_file;
  double twin_modes = 0.0, tail = 1e-12;
  long long sample = 0;
  auto* spec_opt = synth->add_option("--spec", spec_file, "Spec JSON")->check(CLI::ExistingFile);
  synth->add_option("--twin-beam-modes", twin_modes, "Use the built-in two-twin-beam model with this mode number")
      ->excludes(spec_opt);
  synth->add_option("--tail", tail, "Tail mass for automatic cutoffs of the built-in model")->capture_default_str();
  synth->add_option("--sample", sample, "Emit a histogram of this many sampled frames instead");

  // detect
  auto* detect = app.add_subcommand("detect", "Predict the photocount histogram of a field");
  std::string field_file, det_file;
  long long detect_sample = 0;
  detect->add_option("--field", field_file, "Field JSON")->required()->check(CLI::ExistingFile);
  detect->add_option("--detection", det_file, "Detection config JSON")->required()->check(CLI::ExistingFile);
  detect->add_option("--sample", detect_sample, "Sample this many frames from the prediction");

  // reconstruct
  auto* recon = app.add_subcommand("reconstruct", "EM reconstruction of p(n) from a histogram");
  std::string hist_file, cutoff_text;
  double em_tol = 1e-9;
  long max_iter = 100000;
  recon->add_option("--hist", hist_file, "Histogram JSON")->required()->check(CLI::ExistingFile);
  recon->add_option("--detection", det_file, "Detection config JSON")->required()->check(CLI::ExistingFile);
  recon->add_option("--cutoffs", cutoff_text, "Photon-number cutoffs (default: histogram cutoffs)");
  recon->add_option("--em-tol", em_tol, "Stop when max |change| falls below this")->capture_default_str();
  recon->add_option("--max-iter", max_iter, "Iteration cap")->capture_default_str();

  // criteria
  auto* crit = app.add_subcommand("criteria", "Evaluate a criterion suite");
  std::string suite_name, n_text = "0,0,0", modes_text;
  double s_value = 1.0;
  crit->add_option("--field", field_file, "Field JSON")->required()->check(CLI::ExistingFile);
  crit->add_option("--suite", suite_name, "Suite name")->required();
  crit->add_option("--s", s_value, "Ordering parameter")->capture_default_str();
  crit->add_option("--n", n_text, "Photon numbers for parameterized suites")->capture_default_str();
  crit->add_option("--modes", modes_text, "Effective modes per dimension (one value or one per dimension)");

  // ncd
  auto* ncdc = app.add_subcommand("ncd", "Non-classicality depths of a criterion suite");
  int bootstrap = 0;
  double grid_step = 0.01;
  ncdc->add_option("--field", field_file, "Field or histogram JSON")->required()->check(CLI::ExistingFile);
  ncdc->add_option("--suite", suite_name, "Suite name")->required();
  ncdc->add_option("--n", n_text, "Photon numbers for parameterized suites")->capture_default_str();
  ncdc->add_option("--modes", modes_text, "Effective modes per dimension");
  ncdc->add_option("--grid", grid_step, "Coarse scan step in s")->capture_default_str();
  ncdc->add_option("--bootstrap", bootstrap, "Bootstrap replicates for tau_stderr (histogram input)");
  ncdc->add_option("--detection", det_file, "Reconstruct each replicate with this detector")
      ->check(CLI::ExistingFile);

  // quasiprob
  auto* quasi = app.add_subcommand("quasiprob", "s-ordered intensity quasi-distribution on a grid");
  std::string cut_text;
  int points = 200;
  bool extended = false;
  quasi->add_option("--field", field_file, "Field JSON")->required()->check(CLI::ExistingFile);
  quasi->add_option("--s", s_value, "Ordering parameter in (-1, 1)")->required();
  quasi->add_option("--cut", cut_text, "Per-dimension variable names or fixed values, e.g. u,u,v");
  quasi->add_option("--points", points, "Grid points per axis")->capture_default_str();
  quasi->add_flag("--extended", extended, "Long-double evaluation");

  // resample
  auto* resample = app.add_subcommand("resample", "Multinomial bootstrap replicates of a histogram");
  int replicates = 100;
  resample->add_option("--hist", hist_file, "Histogram JSON")->required()->check(CLI::ExistingFile);
  resample->add_option("--replicates", replicates, "Number of replicates")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  int warnings = 0;
  set_warning_handler([&](const std::string& msg) {
#pragma omp critical(nckit_cli_warn)
    {
      ++warnings;
      std::cerr << "warning: " << msg << "\n";
    }
  });
  set_thread_count(g.threads);
  if (g.threads > 0) omp_set_num_threads(g.threads);

  try {
    Run run;
    NcdOptions ncd_opts;
    ncd_opts.relative_tol = g.tol;

    if (*synth) {
      run.command = "synth";
      GaussianFieldSpec spec;
      if (!spec_file.empty()) {
        spec = io::synth_spec_from_json(io::read_text(spec_file));
        run.inputs.push_back(spec_file);
      } else if (twin_modes > 0.0) {
        spec = twin_beam_3d_spec(twin_modes, MultiIndex{1, 1, 1});
        spec.cutoffs = cutoffs_for_tail(spec, tail);
        run.config["twin_beam_modes"] = twin_modes;
        run.config["tail"] = tail;
      } else {
        throw ArgumentError("synth needs --spec or --twin-beam-modes");
      }
      run.config["spec"] = json::parse(io::synth_spec_to_json(spec));
      const PhotonNumberDistribution p = compose_field(spec);
      if (sample > 0) {
        run.config["sample"] = sample;
        emit(g, run, io::field_to_json(sample_histogram(p, sample, g.seed)));
      } else {
        emit(g, run, io::field_to_json(p));
      }
    } else if (*detect) {
      run.command = "detect";
      run.inputs = {field_file, det_file};
      const PhotonNumberDistribution p = load_distribution(field_file);
      const auto model = build_detection(io::detection_config_from_json(io::read_text(det_file)), p.cutoffs());
      PhotocountHistogram f = forward(p, model);
      if (detect_sample > 0) {
        run.config["sample"] = detect_sample;
        f = sample_histogram(f.as_distribution(), detect_sample, g.seed);
      }
      emit(g, run, io::field_to_json(f));
    } else if (*recon) {
      run.command = "reconstruct";
      run.inputs = {hist_file, det_file};
      const PhotocountHistogram f = load_histogram(hist_file);
      const MultiIndex cut = cutoff_text.empty() ? f.cutoffs() : parse_index(cutoff_text);
      const auto model = build_detection(io::detection_config_from_json(io::read_text(det_file)), cut);
      EmOptions em;
      em.tol = em_tol;
      em.max_iter = max_iter;
      const EmResult res = em_reconstruct(f, model, em);
      run.config = {{"cutoffs", cut.values()},
                    {"em_tol", em_tol},
                    {"max_iter", max_iter},
                    {"iterations", res.iterations},
                    {"converged", res.converged},
                    {"log_likelihood", res.log_likelihood},
                    {"column_deficit", res.column_deficit}};
      if (!res.converged) warn("EM stopped at the iteration cap before converging");
      emit(g, run, io::field_to_json(res.p));
    } else if (*crit) {
      run.command = "criteria";
      run.inputs = {field_file};
      const PhotonNumberDistribution p = load_distribution(field_file);
      const ModeSpec modes = modes_for(modes_text, p.dims());
      const auto exprs = presets::suite(suite_name, parse_index(n_text));
      run.config = {{"suite", presets::canonical_suite_name(suite_name)},
                    {"s", s_value},
                    {"n", n_text},
                    {"modes", modes.values()}};
      const MomentTable table(p, modes);
      std::vector<report::CriterionRow> rows;
      for (const auto& e : exprs) {
        const Evaluation ev = evaluate(e, table, s_value);
        rows.push_back({e.id, to_string(e.family), row_indices(e, ev.argmin), s_value, ev.value, std::nullopt,
                        ev.violated(g.tol)});
      }
      emit(g, run, report::criteria_csv(rows));
    } else if (*ncdc) {
      run.command = "ncd";
      run.inputs = {field_file};
      const io::FieldFile file = io::read_field(field_file);
      const bool is_hist = file.kind == io::FieldKind::histogram;
      std::optional<DetectionModel> model;
      if (!det_file.empty()) {
        if (!is_hist) throw ArgumentError("--detection needs a histogram input");
        run.inputs.push_back(det_file);
        model = build_detection(io::detection_config_from_json(io::read_text(det_file)), file.table.extents());
      }
      PhotonNumberDistribution p;
      if (model)
        p = em_reconstruct(file.histogram(), *model).p;
      else
        p = is_hist ? file.histogram().as_distribution() : file.distribution();
      const ModeSpec modes = modes_for(modes_text, p.dims());
      ncd_opts.grid = grid_step;
      const auto exprs = presets::suite(suite_name, parse_index(n_text));
      run.config = {{"suite", presets::canonical_suite_name(suite_name)},
                    {"n", n_text},
                    {"modes", modes.values()},
                    {"grid", grid_step},
                    {"bootstrap", bootstrap}};
      const MomentTable table(p, modes);
      std::vector<report::NcdRow> rows;
      for (const auto& e : exprs) {
        const NcdResult r = ncd(e, table, ncd_opts);
        rows.push_back({e.id, row_indices(e, r.argmin), r.tau, std::nullopt, r.s_threshold, r.saturated,
                        r.nonmonotone});
      }
      if (bootstrap > 0) {
        if (!is_hist) throw ArgumentError("--bootstrap needs a histogram input with total_counts");
        const PhotocountHistogram f = file.histogram();
        const auto sd = bootstrap_tau_stddev(
            exprs, bootstrap,
            [&](int r) {
              const PhotocountHistogram rep = bootstrap_replicate(f, r, g.seed);
              return model ? em_reconstruct(rep, *model).p : rep.as_distribution();
            },
            modes, ncd_opts);
        for (std::size_t k = 0; k < rows.size(); ++k) rows[k].tau_stderr = sd[k];
      }
      emit(g, run, report::ncd_csv(rows));
    } else if (*quasi) {
      run.command = "quasiprob";
      run.inputs = {field_file};
      const PhotonNumberDistribution p = load_distribution(field_file);
      const CutSpec cut = parse_cut(cut_text, p.dims());
      QuasiOptions qo;
      qo.extended_precision = extended;
      const IntensityGrid grid = quasi_distribution(p, s_value, cut, default_axes(p, cut, points), qo);
      const NegativityReport neg = negativity_scan(grid);
      run.config = {{"s", s_value},
                    {"cut", cut_text},
                    {"points", points},
                    {"extended", extended},
                    {"truncation_bound", grid.truncation_bound},
                    {"min_value", neg.min_value},
                    {"argmin", neg.argmin},
                    {"negative", neg.negative}};
      std::cerr << "min P = " << neg.min_value << " (bound " << grid.truncation_bound << ")"
                << (neg.negative ? ", negative" : "") << "\n";
      emit(g, run, report::grid_csv(grid));
    } else if (*resample) {
      run.command = "resample";
      run.inputs = {hist_file};
      if (g.out.empty()) throw ArgumentError("resample needs --out as a directory");
      const PhotocountHistogram f = load_histogram(hist_file);
      const auto reps = bootstrap_resample(f, replicates, g.seed);
      fs::create_directories(g.out);
      json index = json::array();
      const int width = static_cast<int>(std::to_string(std::max(replicates - 1, 0)).size());
      for (std::size_t r = 0; r < reps.size(); ++r) {
        std::ostringstream name;
        name << "replicate_" << std::setw(width) << std::setfill('0') << r << ".json";
        io::write_text(fs::path(g.out) / name.str(), io::field_to_json(reps[r]));
        index.push_back(name.str());
      }
      run.config = {{"replicates", replicates}, {"files", index}};
      Globals g2 = g;
      g2.out = (fs::path(g.out) / "index.json").string();
      emit(g2, run, index.dump(2) + "\n");
    }
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (g.strict && warnings > 0) return 3;
  return 0;
}
