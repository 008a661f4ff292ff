#include "freemin/experiment.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "freemin/errors.hpp"
#include "freemin/kernel.hpp"

namespace freemin {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& s, int line, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty() || errno == ERANGE || !std::isfinite(v)) {
    fail(line, "value of '" + key + "' is not a finite number: '" + s + "'");
  }
  return v;
}

long long parse_int(const std::string& s, int line, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || s.empty() || errno == ERANGE) {
    fail(line, "value of '" + key + "' is not an integer: '" + s + "'");
  }
  return v;
}

bool parse_bool(const std::string& s, int line, const std::string& key) {
  if (s == "true") return true;
  if (s == "false") return false;
  fail(line, "value of '" + key + "' must be true or false, got '" + s + "'");
}

/// Splits "ident(a, b)" into the identifier and numeric arguments; a bare
/// identifier yields no arguments.
std::pair<std::string, std::vector<double>> parse_call(const std::string& s, int line,
                                                       const std::string& key) {
  size_t open = s.find('(');
  if (open == std::string::npos) return {trim(s), {}};
  if (s.back() != ')') fail(line, "value of '" + key + "' has unbalanced parentheses");
  std::string ident = trim(s.substr(0, open));
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  std::vector<double> args;
  size_t pos = 0;
  while (pos <= inner.size()) {
    size_t comma = inner.find(',', pos);
    std::string tok = trim(comma == std::string::npos ? inner.substr(pos)
                                                      : inner.substr(pos, comma - pos));
    args.push_back(parse_double(tok, line, key));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return {ident, args};
}

void expect_args(const std::string& ident, const std::vector<double>& args, size_t count,
                 int line, const std::string& key) {
  if (args.size() != count) {
    fail(line, "'" + ident + "' in '" + key + "' takes " + std::to_string(count) +
                   " argument(s), got " + std::to_string(args.size()));
  }
}

struct PendingValue {
  std::string value;
  int line = 0;
};

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  static const char* kKeys[] = {"name",   "divergence", "metric_mode", "n",
                                "periodic", "potential", "mu",         "kernel",
                                "dt",     "iterations", "seed",        "output_dir"};
  std::map<std::string, PendingValue> seen;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    size_t eq = stripped.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value', got '" + stripped + "'");
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    if (!known) fail(line, "unknown key '" + key + "'");
    if (seen.count(key)) fail(line, "duplicate key '" + key + "'");
    if (value.empty()) fail(line, "key '" + key + "' has an empty value");
    seen[key] = PendingValue{value, line};
  }

  for (const char* k : kKeys) {
    if (std::string(k) != "output_dir" && !seen.count(k)) {
      throw ConfigError("config: missing required key '" + std::string(k) + "'");
    }
  }

  ExperimentConfig cfg;
  cfg.name = seen["name"].value;

  {
    auto& [v, ln] = seen["divergence"];
    if (v == "kl") cfg.divergence = DivergenceKind::kl;
    else if (v == "rkl") cfg.divergence = DivergenceKind::reverse_kl;
    else if (v == "hellinger") cfg.divergence = DivergenceKind::hellinger;
    else fail(ln, "divergence must be kl, rkl, or hellinger, got '" + v + "'");
  }
  {
    auto& [v, ln] = seen["metric_mode"];
    if (v == "plain") cfg.shifted_metric = false;
    else if (v == "shifted") cfg.shifted_metric = true;
    else fail(ln, "metric_mode must be plain or shifted, got '" + v + "'");
  }
  {
    auto& [v, ln] = seen["n"];
    long long n = parse_int(v, ln, "n");
    if (n < 2 || n > (1 << 24)) fail(ln, "invariant violated: n must be in [2, 2^24]");
    cfg.n = static_cast<int>(n);
  }
  cfg.periodic = parse_bool(seen["periodic"].value, seen["periodic"].line, "periodic");
  {
    auto& [v, ln] = seen["potential"];
    auto [ident, args] = parse_call(v, ln, "potential");
    if (ident == "zero") {
      expect_args(ident, args, 0, ln, "potential");
      cfg.potential = PotentialSpec{PotentialSpec::Kind::zero, 0.0, 0.0};
    } else if (ident == "sine") {
      expect_args(ident, args, 2, ln, "potential");
      cfg.potential = PotentialSpec{PotentialSpec::Kind::sine, args[0], args[1]};
    } else {
      fail(ln, "potential must be zero or sine(frequency, amplitude), got '" + v + "'");
    }
  }
  {
    auto& [v, ln] = seen["mu"];
    auto [ident, args] = parse_call(v, ln, "mu");
    if (ident == "uniform") {
      expect_args(ident, args, 0, ln, "mu");
      cfg.mu = MeasureSpec{MeasureSpec::Kind::uniform, 0.0};
    } else if (ident == "power") {
      expect_args(ident, args, 1, ln, "mu");
      if (!(args[0] >= 0.0)) fail(ln, "invariant violated: power exponent must be >= 0");
      cfg.mu = MeasureSpec{MeasureSpec::Kind::power, args[0]};
    } else {
      fail(ln, "mu must be uniform or power(exponent), got '" + v + "'");
    }
  }
  {
    auto& [v, ln] = seen["kernel"];
    auto [ident, args] = parse_call(v, ln, "kernel");
    if (ident == "zero") {
      expect_args(ident, args, 0, ln, "kernel");
      cfg.kernel = KernelSpec{KernelSpec::Kind::zero, 0.0, 0.0, 0.0};
    } else if (ident == "log") {
      expect_args(ident, args, 2, ln, "kernel");
      if (!(args[1] > 0.0)) fail(ln, "invariant violated: log kernel epsilon must be > 0");
      cfg.kernel = KernelSpec{KernelSpec::Kind::log, args[0], args[1], 0.0};
    } else if (ident == "tridiagonal") {
      expect_args(ident, args, 1, ln, "kernel");
      if (!(args[0] > 0.0)) fail(ln, "invariant violated: tridiagonal alpha must be > 0");
      cfg.kernel = KernelSpec{KernelSpec::Kind::tridiagonal, 0.0, 0.0, args[0]};
    } else {
      fail(ln, "kernel must be zero, log(scale, epsilon), or tridiagonal(alpha), got '" + v + "'");
    }
  }
  {
    auto& [v, ln] = seen["dt"];
    cfg.dt = parse_double(v, ln, "dt");
    if (!(cfg.dt > 0.0)) fail(ln, "invariant violated: dt must be > 0");
  }
  {
    auto& [v, ln] = seen["iterations"];
    long long iters = parse_int(v, ln, "iterations");
    if (iters < 1) fail(ln, "invariant violated: iterations must be >= 1");
    cfg.iterations = static_cast<int>(iters);
  }
  {
    auto& [v, ln] = seen["seed"];
    long long seed = parse_int(v, ln, "seed");
    if (seed < 0) fail(ln, "invariant violated: seed must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(seed);
  }
  if (seen.count("output_dir")) cfg.output_dir = seen["output_dir"].value;

  if (cfg.shifted_metric && cfg.kernel.kind != KernelSpec::Kind::tridiagonal) {
    throw ConfigError(
        "config: invariant violated: metric_mode = shifted requires kernel = tridiagonal");
  }
  if (cfg.kernel.kind == KernelSpec::Kind::tridiagonal && !cfg.periodic) {
    throw ConfigError(
        "config: invariant violated: kernel = tridiagonal requires periodic = true");
  }
  return cfg;
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "name = " << c.name << '\n';
  out << "divergence = "
      << (c.divergence == DivergenceKind::kl
              ? "kl"
              : c.divergence == DivergenceKind::reverse_kl ? "rkl" : "hellinger")
      << '\n';
  out << "metric_mode = " << (c.shifted_metric ? "shifted" : "plain") << '\n';
  out << "n = " << c.n << '\n';
  out << "periodic = " << (c.periodic ? "true" : "false") << '\n';
  switch (c.potential.kind) {
    case PotentialSpec::Kind::zero:
      out << "potential = zero\n";
      break;
    case PotentialSpec::Kind::sine:
      out << "potential = sine(" << format_g17(c.potential.frequency) << ", "
          << format_g17(c.potential.amplitude) << ")\n";
      break;
  }
  switch (c.mu.kind) {
    case MeasureSpec::Kind::uniform:
      out << "mu = uniform\n";
      break;
    case MeasureSpec::Kind::power:
      out << "mu = power(" << format_g17(c.mu.exponent) << ")\n";
      break;
  }
  switch (c.kernel.kind) {
    case KernelSpec::Kind::zero:
      out << "kernel = zero\n";
      break;
    case KernelSpec::Kind::log:
      out << "kernel = log(" << format_g17(c.kernel.scale) << ", "
          << format_g17(c.kernel.epsilon) << ")\n";
      break;
    case KernelSpec::Kind::tridiagonal:
      out << "kernel = tridiagonal(" << format_g17(c.kernel.alpha) << ")\n";
      break;
  }
  out << "dt = " << format_g17(c.dt) << '\n';
  out << "iterations = " << c.iterations << '\n';
  out << "seed = " << c.seed << '\n';
  out << "output_dir = " << c.output_dir << '\n';
  return out.str();
}

ProblemSpec build_problem(const ExperimentConfig& c) {
  Grid grid = make_uniform_grid(c.n, c.periodic);
  ReferenceMeasure mu = c.mu.kind == MeasureSpec::Kind::uniform
                            ? ReferenceMeasure::uniform(c.n)
                            : make_power_measure(grid, c.mu.exponent);
  Potential V = c.potential.kind == PotentialSpec::Kind::zero
                    ? Potential::zero(c.n)
                    : make_sine_potential(grid, c.potential.frequency, c.potential.amplitude);
  InteractionKernel W = InteractionKernel::zero(c.n);
  switch (c.kernel.kind) {
    case KernelSpec::Kind::zero:
      break;
    case KernelSpec::Kind::log:
      W = make_log_kernel(grid, c.kernel.scale, c.kernel.epsilon);
      break;
    case KernelSpec::Kind::tridiagonal:
      W = make_tridiagonal_kernel(grid, c.kernel.alpha);
      break;
  }
  MetricMode mode = c.shifted_metric ? MetricMode::shifted(W.diagonal()) : MetricMode::plain();
  return ProblemSpec(c.divergence, std::move(grid), std::move(mu), std::move(V), std::move(W),
                     std::move(mode), c.dt);
}

Density initial_density(const ExperimentConfig& c) { return random_density(c.n, c.seed); }

namespace {

/// Minimizer of the same problem with the interaction switched off, used
/// as the dashed overlay column. One explicit Euler step with dt = 1 lands
/// on it exactly for every divergence.
Density no_interaction_minimizer(const ExperimentConfig& c) {
  ExperimentConfig reduced = c;
  reduced.kernel = KernelSpec{KernelSpec::Kind::zero, 0.0, 0.0, 0.0};
  reduced.shifted_metric = false;
  reduced.dt = 1.0;
  ProblemSpec spec = build_problem(reduced);
  Density start = Density::from_values(
      std::vector<double>(static_cast<size_t>(c.n), 1.0 / c.n));
  return step(spec, initial_state(spec, start)).p;
}

void write_or_throw(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

int run_experiment(const ExperimentConfig& c) {
  try {
    ProblemSpec spec = build_problem(c);
    Density p0 = initial_density(c);
    RunResult result = run(spec, p0, c.iterations);
    double residual = stationarity_residual(spec, result.state.p);
    Density overlay = no_interaction_minimizer(c);

    std::filesystem::path dir(c.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());

    {
      std::ostringstream csv;
      write_trace_csv(csv, result.trace);
      write_or_throw(dir / (c.name + "_trace.csv"), csv.str());
    }
    {
      std::ostringstream final_txt;
      final_txt << "index x p mu reference\n";
      for (int i = 0; i < spec.n(); ++i) {
        final_txt << (i + 1) << ' ' << format_g17(spec.grid()[i]) << ' '
                  << format_g17(result.state.p[i]) << ' ' << format_g17(spec.mu()[i]) << ' '
                  << format_g17(overlay[i]) << '\n';
      }
      write_or_throw(dir / (c.name + "_final.txt"), final_txt.str());
    }
    {
      std::ostringstream meta;
      meta << "# configuration\n" << serialize_config(c) << "# results\n";
      meta << "final_energy = " << format_g17(result.trace.energies.back()) << '\n';
      meta << "final_error = " << format_g17(result.trace.errors.back()) << '\n';
      meta << "stationarity_residual = " << format_g17(residual) << '\n';
      meta << "iterations_recorded = " << (result.trace.energies.size() - 1) << '\n';
      write_or_throw(dir / (c.name + "_meta.txt"), meta.str());
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

namespace {

struct Preset {
  const char* name;
  const char* summary;
  const char* text;
};

const Preset kPresets[] = {
    {"kl_nonpd",
     "KL divergence, plain metric, attractive log kernel (Keller-Segel)",
     R"(# Keller-Segel attraction under the KL divergence; the kernel is not
# positive-definite, so the metric keeps only the divergence Hessian.
name = kl_nonpd
divergence = kl
metric_mode = plain
n = 1024
periodic = false
potential = zero
mu = uniform
kernel = log(1.5, 1e-06)
dt = 1
iterations = 100
seed = 0
)"},
    {"kl_pd",
     "KL divergence, shifted metric, sine potential, tridiagonal kernel",
     R"(# Sine potential with a strong positive-definite circulant kernel whose
# diagonal shifts the descent metric.
name = kl_pd
divergence = kl
metric_mode = shifted
n = 1024
periodic = true
potential = sine(4, 1)
mu = uniform
kernel = tridiagonal(1000)
dt = 1
iterations = 100
seed = 0
)"},
    {"rkl_nonpd",
     "reverse KL, plain metric, log kernel, steep power-law reference",
     R"(# Keller-Segel attraction under the reverse KL divergence. The power-law
# reference spans twelve orders of magnitude between its extreme weights.
name = rkl_nonpd
divergence = rkl
metric_mode = plain
n = 1024
periodic = false
potential = zero
mu = power(4)
kernel = log(0.66666666666666663, 1e-06)
dt = 1
iterations = 100
seed = 0
)"},
    {"rkl_pd",
     "reverse KL, shifted metric, tridiagonal kernel",
     R"(# Positive-definite circulant kernel under the reverse KL divergence.
# The reference measure is a free choice in this setup; uniform is the
# shipped default.
name = rkl_pd
divergence = rkl
metric_mode = shifted
n = 1024
periodic = true
potential = zero
mu = uniform
kernel = tridiagonal(100)
dt = 1
iterations = 100
seed = 0
)"},
    {"h_nonpd",
     "Hellinger, plain metric, log kernel, steep power-law reference",
     R"(# Keller-Segel attraction under the Hellinger divergence with a power-law
# reference measure.
name = h_nonpd
divergence = hellinger
metric_mode = plain
n = 1024
periodic = false
potential = zero
mu = power(4)
kernel = log(0.33333333333333331, 1e-06)
dt = 1
iterations = 100
seed = 0
)"},
    {"h_pd",
     "Hellinger, shifted metric, tridiagonal kernel",
     R"(# Positive-definite circulant kernel under the Hellinger divergence.
# The reference measure is a free choice in this setup; uniform is the
# shipped default.
name = h_pd
divergence = hellinger
metric_mode = shifted
n = 1024
periodic = true
potential = zero
mu = uniform
kernel = tridiagonal(100)
dt = 1
iterations = 100
seed = 0
)"},
};

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const Preset& p : kPresets) v.emplace_back(p.name);
    return v;
  }();
  return names;
}

const std::string& preset_text(const std::string& name) {
  static const std::map<std::string, std::string> texts = [] {
    std::map<std::string, std::string> m;
    for (const Preset& p : kPresets) m.emplace(p.name, p.text);
    return m;
  }();
  auto it = texts.find(name);
  if (it == texts.end()) {
    throw ConfigError("unknown preset '" + name + "'; run 'freemin presets' for the list");
  }
  return it->second;
}

std::string list_presets() {
  std::ostringstream out;
  for (const Preset& p : kPresets) {
    out << p.name;
    for (size_t pad = std::string(p.name).size(); pad < 12; ++pad) out << ' ';
    out << p.summary << '\n';
  }
  return out.str();
}

}  // namespace freemin
