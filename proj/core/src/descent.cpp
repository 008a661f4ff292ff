#include "freemin/descent.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "freemin/errors.hpp"

namespace freemin {

namespace {

Reparameterization reparam_of(const ProblemSpec& spec) {
  return Reparameterization(spec.kind(), spec.mode(), spec.mu());
}

/// KL runs on the absorbed potential V - ln mu; the other divergences keep
/// V as given (their phi already carries mu).
std::vector<double> effective_potential(const ProblemSpec& spec) {
  std::vector<double> v = spec.V().values();
  if (spec.kind() == DivergenceKind::kl) {
    for (int i = 0; i < spec.n(); ++i) v[static_cast<size_t>(i)] -= std::log(spec.mu()[i]);
  }
  return v;
}

}  // namespace

IterateState initial_state(const ProblemSpec& spec, const Density& p0) {
  if (p0.size() != spec.n()) throw std::invalid_argument("initial_state: dimension mismatch");
  Reparameterization r = reparam_of(spec);
  return IterateState{0, r.phi(p0), p0, 0.0};
}

std::vector<double> drift(const ProblemSpec& spec, const IterateState& state) {
  const std::vector<double> v_eff = effective_potential(spec);
  std::vector<double> d = spec.W().apply(state.p.values());
  if (spec.mode().is_shifted()) {
    const auto& alpha = spec.mode().alpha();
    for (int i = 0; i < spec.n(); ++i) {
      d[static_cast<size_t>(i)] -= alpha[static_cast<size_t>(i)] * state.p[i];
    }
  }
  for (int i = 0; i < spec.n(); ++i) {
    d[static_cast<size_t>(i)] += state.g[static_cast<size_t>(i)] + v_eff[static_cast<size_t>(i)];
  }
  return d;
}

IterateState step(const ProblemSpec& spec, const IterateState& state) {
  std::vector<double> g_tilde = drift(spec, state);
  for (int i = 0; i < spec.n(); ++i) {
    g_tilde[static_cast<size_t>(i)] =
        state.g[static_cast<size_t>(i)] - spec.dt() * g_tilde[static_cast<size_t>(i)];
  }
  NormalizedState next = normalize_state(reparam_of(spec), g_tilde);
  return IterateState{state.k + 1, std::move(next.g), std::move(next.p), next.c};
}

RunResult run(const ProblemSpec& spec, const Density& p0, int max_iters, double tol) {
  if (max_iters < 1) throw std::invalid_argument("run: max_iters must be >= 1");
  constexpr int kReferenceExtension = 50;

  EnergyTrace trace;
  IterateState state = initial_state(spec, p0);
  double energy = free_energy(spec, state.p);
  trace.energies.push_back(energy);

  for (int k = 0; k < max_iters; ++k) {
    state = step(spec, state);
    double next_energy = free_energy(spec, state.p);
    if (!std::isfinite(next_energy)) {
      throw SolverError("run: non-finite energy at iteration " + std::to_string(state.k));
    }
    trace.energies.push_back(next_energy);
    bool converged = tol > 0.0 &&
                     std::abs(next_energy - energy) <= tol * std::max(1.0, std::abs(next_energy));
    energy = next_energy;
    if (converged) break;
  }

  // Reference: the lowest energy the same dynamics reaches with 50 extra
  // steps, so terminal errors land at the scheme's own floor.
  double reference = *std::min_element(trace.energies.begin(), trace.energies.end());
  IterateState probe = state;
  for (int k = 0; k < kReferenceExtension; ++k) {
    probe = step(spec, probe);
    reference = std::min(reference, free_energy(spec, probe.p));
  }
  trace.reference_energy = reference;
  trace.errors.reserve(trace.energies.size());
  for (double e : trace.energies) trace.errors.push_back(e - reference);

  return RunResult{std::move(state), std::move(trace)};
}

Density baseline_md(const std::function<std::vector<double>(const Density&)>& energy_gradient,
                    const Density& p0, double eta, int iters) {
  if (!(eta > 0.0)) throw std::invalid_argument("baseline_md: eta must be > 0");
  Density p = p0;
  for (int k = 0; k < iters; ++k) {
    std::vector<double> grad = energy_gradient(p);
    if (static_cast<int>(grad.size()) != p.size()) {
      throw std::invalid_argument("baseline_md: gradient dimension mismatch");
    }
    for (double x : grad) {
      if (!std::isfinite(x)) throw SolverError("baseline_md: non-finite energy gradient");
    }
    std::vector<double> w(grad.size());
    for (size_t i = 0; i < grad.size(); ++i) w[i] = -eta * grad[i];
    double shift = *std::max_element(w.begin(), w.end());
    std::vector<double> next(w.size());
    for (size_t i = 0; i < w.size(); ++i) {
      next[i] = p[static_cast<int>(i)] * std::exp(w[i] - shift);
    }
    p = Density::renormalized(std::move(next));
  }
  return p;
}

double stationarity_residual(const ProblemSpec& spec, const Density& p) {
  std::vector<double> g = gradient(spec, p);
  auto [lo, hi] = std::minmax_element(g.begin(), g.end());
  return *hi - *lo;
}

void write_trace_csv(std::ostream& out, const EnergyTrace& trace) {
  out << "iter,energy,error\n";
  for (size_t k = 0; k < trace.energies.size(); ++k) {
    out << k << ',' << format_g17(trace.energies[k]) << ',' << format_g17(trace.errors[k])
        << '\n';
  }
}

EnergyTrace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "iter,energy,error") {
    throw ConfigError("trace csv: missing 'iter,energy,error' header");
  }
  EnergyTrace trace;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    size_t c1 = line.find(',');
    size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      throw ConfigError("trace csv row " + std::to_string(row) + ": expected three columns");
    }
    try {
      trace.energies.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
      trace.errors.push_back(std::stod(line.substr(c2 + 1)));
    } catch (const std::exception&) {
      throw ConfigError("trace csv row " + std::to_string(row) + ": malformed number");
    }
  }
  if (trace.energies.empty()) throw ConfigError("trace csv: no data rows");
  double reference = trace.energies.front() - trace.errors.front();
  for (size_t k = 0; k < trace.energies.size(); ++k) {
    reference = std::min(reference, trace.energies[k] - trace.errors[k]);
  }
  trace.reference_energy = reference;
  return trace;
}

}  // namespace freemin
