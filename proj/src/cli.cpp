#include "epe/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "epe/errors.hpp"
#include "epe/jc.hpp"
#include "epe/parallel.hpp"

#ifndef EPE_VERSION
#define EPE_VERSION "0.0.0"
#endif

namespace epe::cli {
namespace {

using json = nlohmann::json;

struct Context {
  const std::vector<std::string>& argv;
  std::ostream& out;
  std::ostream& err;
};

struct OutputSpec {
  std::string path;
  std::string format = "csv";
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json table_json(const sampler::Table& table) {
  json rows = json::array();
  for (const auto& r : table.rows) rows.push_back(r);
  return {{"columns", table.columns}, {"rows", rows}};
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) return false;
  f << content;
  f.close();
  return static_cast<bool>(f);
}

// Writes the table and, for file output, its sidecar manifest. The inline
// JSON manifest carries no timestamp so repeated runs stay byte-identical.
int emit(const sampler::Table& table, const OutputSpec& o, const std::string& command, const json& config,
         const Context& ctx) {
  json manifest = {{"command", command},
                   {"argv", ctx.argv},
                   {"config", config},
                   {"tool_version", EPE_VERSION}};
  if (config.contains("seed")) manifest["seed"] = config["seed"];
  std::string content;
  if (o.format == "json") {
    json doc = table_json(table);
    doc["manifest"] = manifest;
    content = doc.dump(1) + "\n";
  } else {
    content = to_csv(table);
  }
  if (o.path.empty()) {
    ctx.out << content;
    return kExitOk;
  }
  if (!write_file(o.path, content)) {
    ctx.err << "error: cannot write " << o.path << "\n";
    return kExitIo;
  }
  manifest["timestamp"] = utc_timestamp();
  manifest["outputs"] = {o.path};
  const std::string manifest_path = o.path + ".manifest.json";
  if (!write_file(manifest_path, manifest.dump(2) + "\n")) {
    ctx.err << "error: cannot write " << manifest_path << "\n";
    return kExitIo;
  }
  return kExitOk;
}

std::optional<qubit::Measure> parse_measure(const std::string& name) {
  if (name == "concurrence") return qubit::Measure::Concurrence;
  if (name == "tangle") return qubit::Measure::Tangle;
  if (name == "eof") return qubit::Measure::EntanglementOfFormation;
  if (name == "negativity") return qubit::Measure::Negativity;
  if (name == "logneg") return qubit::Measure::LogNegativity;
  return std::nullopt;
}

std::optional<sampler::Curve> parse_curve(const std::string& name) {
  using sampler::Curve;
  if (name == "separable") return Curve::Separable;
  if (name == "mems") return Curve::Mems;
  if (name == "pure") return Curve::Pure;
  if (name == "band") return Curve::Band;
  if (name == "tmsv") return Curve::Tmsv;
  if (name == "gmems") return Curve::Gmems;
  if (name == "glems") return Curve::Glems;
  return std::nullopt;
}

struct SampleArgs {
  std::string system = "qubit";
  long long count = 1000;
  std::uint64_t seed = 0;
  std::string measure;
  int rank = 0;
  double emin = 0.0;
  double emax = 2.0;
  bool pure_only = false;
  OutputSpec output;
};

int cmd_sample(const SampleArgs& a, const Context& ctx) {
  using namespace sampler;
  if (a.count < 1) {
    ctx.err << "error: --count must be at least 1\n";
    return kExitUsage;
  }
  SamplerConfig cfg;
  cfg.seed = a.seed;
  cfg.count = static_cast<std::size_t>(a.count);
  cfg.system = a.system == "gaussian" ? System::Gaussian : System::Qubit;
  const std::string measure_name =
      a.measure.empty() ? (cfg.system == System::Qubit ? "concurrence" : "logneg") : a.measure;
  const auto measure = parse_measure(measure_name);
  if (!measure) {
    ctx.err << "error: unknown measure '" << measure_name << "'\n";
    return kExitUsage;
  }
  cfg.measure = *measure;
  if (a.rank != 0) cfg.rank_filter = a.rank;
  cfg.energy_min = a.emin;
  cfg.energy_max = a.emax;
  cfg.pure_only = a.pure_only;

  Table table{{"energy", "entanglement", "purity", "flags"}, {}};
  std::vector<std::string> violations;
  try {
    validate(cfg);
    const unsigned threads = default_threads();
    auto add = [&](const EPERecord& r, std::vector<std::string> bad, std::size_t i) {
      if (!r.below_mems) bad.push_back("record flagged above the maximal-entanglement frontier");
      for (auto& v : bad) violations.push_back("sample " + std::to_string(i) + ": " + v);
      table.rows.push_back({r.energy, r.entanglement, r.purity, static_cast<double>(r.flags())});
    };
    if (cfg.system == System::Qubit) {
      const auto samples = sample_qubit_states(cfg, threads);
      for (std::size_t i = 0; i < samples.size(); ++i)
        add(samples[i].record, containment_violations(samples[i].state), i);
    } else {
      const auto samples = sample_gaussian_states(cfg, threads);
      for (std::size_t i = 0; i < samples.size(); ++i)
        add(samples[i].record, containment_violations(samples[i].cm), i);
    }
  } catch (const ConfigError& ex) {
    ctx.err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
  if (!violations.empty()) {
    for (const auto& v : violations) ctx.err << "invariant violation: " << v << "\n";
    return kExitInvariant;
  }
  json config = {{"system", a.system}, {"count", a.count},       {"seed", a.seed},
                 {"measure", measure_name}, {"rank", a.rank},    {"emin", a.emin},
                 {"emax", a.emax},          {"pure_only", a.pure_only}, {"format", a.output.format}};
  return emit(table, a.output, "sample", config, ctx);
}

struct BoundaryArgs {
  std::string system = "qubit";
  std::string curve;
  std::string grid;
  double energy = 2.0;
  OutputSpec output;
};

int cmd_boundary(const BoundaryArgs& a, const Context& ctx) {
  using namespace sampler;
  const auto curve = parse_curve(a.curve);
  if (!curve) {
    ctx.err << "error: unknown curve '" << a.curve << "'\n";
    return kExitUsage;
  }
  const System system = a.system == "gaussian" ? System::Gaussian : System::Qubit;
  Table table;
  try {
    const std::vector<double> grid = parse_grid(a.grid);
    if (grid.empty()) {
      ctx.err << "error: grid '" << a.grid << "' is empty\n";
      return kExitDomain;
    }
    table = boundary_table(system, *curve, grid, a.energy);
  } catch (const ConfigError& ex) {
    ctx.err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& ex) {
    ctx.err << "error: " << ex.what() << "\n";
    return kExitDomain;
  }
  json config = {{"system", a.system}, {"curve", a.curve}, {"grid", a.grid},
                 {"energy", a.energy}, {"format", a.output.format}};
  return emit(table, a.output, "boundary", config, ctx);
}

struct JcArgs {
  std::string input;
  std::string n = "1";
  std::string alpha = "1";
  std::string gamma = "0.5";
  double tmax = 4.0 * std::numbers::pi;
  int tsteps = 2000;
  int nmax = 0;
  OutputSpec output;
};

constexpr double kMaxGamma = 0.95;

int cmd_jc(const JcArgs& a, const Context& ctx) {
  using namespace jc;
  std::vector<std::pair<double, InputFieldSpec>> specs;
  try {
    if (a.input == "single-photon") {
      specs.emplace_back(1.0, SinglePhoton{});
    } else if (a.input == "n-photon") {
      for (double v : sampler::parse_grid(a.n)) {
        if (v < 1.0 || std::abs(v - std::round(v)) > 1e-9) throw ConfigError("--n values must be integers >= 1");
        specs.emplace_back(v, NPhoton{static_cast<int>(std::lround(v))});
      }
    } else if (a.input == "coherent") {
      for (double v : sampler::parse_grid(a.alpha)) specs.emplace_back(v, EntangledCoherent{Complex(v, 0.0)});
    } else if (a.input == "squeezed") {
      for (double v : sampler::parse_grid(a.gamma)) {
        if (v < 0.0 || v > kMaxGamma) throw ConfigError("--gamma values must lie in [0, 0.95]");
        specs.emplace_back(v, TwoModeSqueezed{v});
      }
    } else {
      throw ConfigError("unknown --input '" + a.input + "'");
    }
    if (specs.empty()) throw ConfigError("parameter scan is empty");
    if (a.tsteps < 2 || !(a.tmax > 0.0)) throw ConfigError("need --tsteps >= 2 and --tmax > 0");
    if (a.nmax < 0) throw ConfigError("--nmax must be positive");
  } catch (const ConfigError& ex) {
    ctx.err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }

  const std::vector<double> grid = default_time_grid(static_cast<std::size_t>(a.tsteps), a.tmax);
  const unsigned threads = default_threads();
  sampler::Table table{{"param", "input_energy", "input_entropy", "lambda_t_max", "concurrence_max",
                        "purity_at_max", "analytic_deviation"},
                       {}};
  for (const auto& [param, spec] : specs) {
    try {
      const FockTruncation trunc = a.nmax > 0 ? FockTruncation{a.nmax} : auto_truncation(spec);
      const TransferResult r = max_transfer(spec, grid, trunc, threads);
      const double dev = analytic_deviation(spec, grid, trunc, threads);
      table.rows.push_back({param, r.input_energy, r.input_entropy, r.lambda_t, r.concurrence, r.purity, dev});
    } catch (const TruncationError& ex) {
      ctx.err << "error: " << ex.what() << " (suggested --nmax " << ex.required_n_max << ")\n";
      return kExitTruncation;
    } catch (const DomainError& ex) {
      ctx.err << "error: " << ex.what() << "\n";
      return kExitUsage;
    }
  }
  json config = {{"input", a.input}, {"n", a.n},         {"alpha", a.alpha}, {"gamma", a.gamma},
                 {"tmax", a.tmax},   {"tsteps", a.tsteps}, {"nmax", a.nmax},   {"format", a.output.format}};
  return emit(table, a.output, "jc", config, ctx);
}

int cmd_replay(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream f(path);
  if (!f) {
    err << "error: cannot read manifest " << path << "\n";
    return kExitIo;
  }
  json manifest;
  try {
    f >> manifest;
  } catch (const json::exception& ex) {
    err << "error: malformed manifest: " << ex.what() << "\n";
    return kExitUsage;
  }
  if (!manifest.contains("argv") || !manifest["argv"].is_array()) {
    err << "error: manifest has no argv\n";
    return kExitUsage;
  }
  const auto argv = manifest["argv"].get<std::vector<std::string>>();
  if (!argv.empty() && argv.front() == "replay") {
    err << "error: manifest refers to another replay\n";
    return kExitUsage;
  }
  return run(argv, out, err);
}

void add_output_options(CLI::App* cmd, OutputSpec& o) {
  cmd->add_option("--out", o.path, "Output file (stdout when absent)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const sampler::Table& table) {
  std::string s;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) s += ',';
    s += table.columns[i];
  }
  s += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += format_number(row[i]);
    }
    s += '\n';
  }
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement-purity-energy toolkit", "epe"};
  app.require_subcommand(1);

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Monte-Carlo EPE records for random states");
  sample->add_option("--system", sample_args.system)->check(CLI::IsMember({"qubit", "gaussian"}));
  sample->add_option("--count", sample_args.count, "Number of samples");
  sample->add_option("--seed", sample_args.seed, "64-bit seed");
  sample->add_option("--measure", sample_args.measure, "concurrence|tangle|eof|negativity|logneg");
  sample->add_option("--rank", sample_args.rank, "Ginibre rank 1..4 (qubit)");
  sample->add_option("--emin", sample_args.emin, "Energy window lower edge (gaussian)");
  sample->add_option("--emax", sample_args.emax, "Energy window upper edge (gaussian)");
  sample->add_flag("--pure-only", sample_args.pure_only, "Force pure gaussian states");
  add_output_options(sample, sample_args.output);

  BoundaryArgs boundary_args;
  auto* boundary = app.add_subcommand("boundary", "Closed-form boundary curves");
  boundary->add_option("--system", boundary_args.system)->check(CLI::IsMember({"qubit", "gaussian"}));
  boundary->add_option("--curve", boundary_args.curve, "separable|mems|pure|band|tmsv|gmems|glems")->required();
  boundary->add_option("--grid", boundary_args.grid, "start:stop:step")->required();
  boundary->add_option("--energy", boundary_args.energy, "Fixed energy for gmems/glems");
  add_output_options(boundary, boundary_args.output);

  JcArgs jc_args;
  auto* jc = app.add_subcommand("jc", "Jaynes-Cummings entanglement transfer scans");
  jc->add_option("--input", jc_args.input, "single-photon|n-photon|coherent|squeezed")->required();
  jc->add_option("--n", jc_args.n, "Photon number or scan start:stop:step");
  jc->add_option("--alpha", jc_args.alpha, "|alpha| or scan");
  jc->add_option("--gamma", jc_args.gamma, "tanh r or scan, at most 0.95");
  jc->add_option("--tmax", jc_args.tmax, "Largest lambda*t");
  jc->add_option("--tsteps", jc_args.tsteps, "Time grid points");
  jc->add_option("--nmax", jc_args.nmax, "Fock truncation (auto when absent)");
  add_output_options(jc, jc_args.output);

  std::string manifest_path;
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("manifest", manifest_path)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Context ctx{args, out, err};
  if (*sample) return cmd_sample(sample_args, ctx);
  if (*boundary) return cmd_boundary(boundary_args, ctx);
  if (*jc) return cmd_jc(jc_args, ctx);
  if (*replay) return cmd_replay(manifest_path, out, err);
  return kExitUsage;
}

}  // namespace epe::cli
