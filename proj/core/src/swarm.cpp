#include "qgsqpo/swarm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qgsqpo/qmath.hpp"

namespace qgsqpo {

std::string to_string(Termination t) { return t == Termination::converged ? "converged" : "cap"; }

std::string to_string(AttractorRMode m) {
  return m == AttractorRMode::per_particle ? "per_particle" : "per_dimension";
}

std::string to_string(BoundsMode m) { return m == BoundsMode::free ? "free" : "clamp"; }

AttractorRMode parse_attractor_r_mode(const std::string& s) {
  if (s == "per_particle") return AttractorRMode::per_particle;
  if (s == "per_dimension") return AttractorRMode::per_dimension;
  throw std::invalid_argument("unknown attractor_r_mode '" + s + "'");
}

BoundsMode parse_bounds_mode(const std::string& s) {
  if (s == "free") return BoundsMode::free;
  if (s == "clamp") return BoundsMode::clamp;
  throw std::invalid_argument("unknown bounds_mode '" + s + "'");
}

void SwarmConfig::validate() const {
  if (num_particles < 1) throw std::invalid_argument("num_particles must be >= 1");
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(q >= kMinQ && q < kMaxQ)) throw std::invalid_argument("q must lie in [1, 3)");
  if (!(p0 > 0.5 && p0 < 1.0)) throw std::invalid_argument("p0 must lie in (0.5, 1)");
  if (!(g > 0.0 && g < 1.0)) throw std::invalid_argument("g must lie in (0, 1)");
  if (!(amplitude_a >= 0.0) || !std::isfinite(amplitude_a)) {
    throw std::invalid_argument("amplitude A must be finite and >= 0");
  }
  if (!std::isfinite(omega)) throw std::invalid_argument("omega must be finite");
  if (!(diversity_tol > 0.0)) throw std::invalid_argument("diversity_tol must be positive");
  if (!(w_cap > 0.0)) throw std::invalid_argument("w_cap must be positive");
}

std::vector<double> mean_best(std::span<const Particle> particles) {
  if (particles.empty()) throw std::invalid_argument("mean_best of an empty swarm");
  std::vector<double> mean(particles.front().local_best_position.size(), 0.0);
  for (const auto& p : particles) {
    for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += p.local_best_position[j];
  }
  const double n = static_cast<double>(particles.size());
  for (auto& m : mean) m /= n;
  return mean;
}

double beta_schedule(std::size_t t, double y0, double amplitude_a, double omega) {
  return y0 + y0 * std::abs(amplitude_a * std::sin(omega * static_cast<double>(t)));
}

double effective_width(double beta_t, double y0, double g, double w_cap) {
  return std::min(g * beta_t / y0, w_cap);
}

double move_coordinate(double attractor, double mean_best, double x, double width,
                       double deviate, double z) {
  const double step = width * std::abs(mean_best - x) * std::abs(deviate);
  return z >= 0.5 ? attractor + step : attractor - step;
}

void update_position(std::span<double> position, std::span<const double> attractor,
                     std::span<const double> mean_best, double width, double q, Rng& rng) {
  if (attractor.size() != position.size() || mean_best.size() != position.size()) {
    throw std::invalid_argument("update_position: dimension mismatch");
  }
  for (std::size_t j = 0; j < position.size(); ++j) {
    const double deviate = sample_q_gaussian(rng, q);
    const double z = rng.uniform();
    position[j] = move_coordinate(attractor[j], mean_best[j], position[j], width, deviate, z);
  }
}

double diversity(std::span<const Particle> particles, std::span<const double> mean_best) {
  if (particles.empty()) throw std::invalid_argument("diversity of an empty swarm");
  double total = 0.0;
  for (const auto& p : particles) {
    double sq = 0.0;
    for (std::size_t j = 0; j < mean_best.size(); ++j) {
      const double d = p.local_best_position[j] - mean_best[j];
      sq += d * d;
    }
    total += std::sqrt(sq);
  }
  return total / static_cast<double>(particles.size());
}

Swarm::Swarm(SwarmConfig config, const ObjectiveFunction& objective)
    : Swarm(config, objective, solve_y0_q(config.p0, config.q)) {}

Swarm::Swarm(SwarmConfig config, const ObjectiveFunction& objective, double y0)
    : config_(std::move(config)), objective_(objective), y0_(y0), rng_(config_.seed) {
  config_.validate();
  if (config_.dimension != objective_.dimension()) {
    throw std::invalid_argument("swarm dimension " + std::to_string(config_.dimension) +
                                " does not match objective dimension " +
                                std::to_string(objective_.dimension()));
  }
  if (!(y0_ > 0.0)) throw std::invalid_argument("y0 must be positive");
  initialize();
}

double Swarm::score(std::span<const double> x) const {
  const double value = objective_.evaluate(x);
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg << "objective '" << objective_.name() << "' returned " << value << " at iteration "
        << state_.iteration << " (x[0] = " << x[0] << ")";
    throw std::runtime_error(msg.str());
  }
  return value;
}

void Swarm::initialize() {
  const std::size_t n = config_.num_particles;
  const std::size_t d = config_.dimension;
  const auto& lo = objective_.lower_bound();
  const auto& hi = objective_.upper_bound();

  state_ = SwarmState{};
  state_.particles.resize(n);
  for (auto& p : state_.particles) {
    p.position.resize(d);
    for (std::size_t j = 0; j < d; ++j) p.position[j] = rng_.uniform(lo[j], hi[j]);
    p.local_best_position = p.position;
    p.local_best_score = score(p.position);
  }
  refresh_global_best();
  state_.mean_best = mean_best(state_.particles);
  state_.iteration = 0;
  state_.beta_t = beta_schedule(0, y0_, config_.amplitude_a, config_.omega);
  diversity_ = diversity(state_.particles, state_.mean_best);
  attractors_.assign(n * d, 0.0);
}

void Swarm::refresh_global_best() {
  std::size_t best = 0;
  for (std::size_t i = 1; i < state_.particles.size(); ++i) {
    if (state_.particles[i].local_best_score < state_.particles[best].local_best_score) best = i;
  }
  state_.global_best_score = state_.particles[best].local_best_score;
  state_.global_best_position = state_.particles[best].local_best_position;
}

StepInfo Swarm::step() {
  const std::size_t d = config_.dimension;
  const std::size_t t = state_.iteration;

  StepInfo info;
  info.iteration = t;
  info.beta_t = beta_schedule(t, y0_, config_.amplitude_a, config_.omega);
  info.raw_width = config_.g * info.beta_t / y0_;
  info.width = effective_width(info.beta_t, y0_, config_.g, config_.w_cap);
  state_.beta_t = info.beta_t;

  gbest_before_ = state_.global_best_position;
  const auto& lo = objective_.lower_bound();
  const auto& hi = objective_.upper_bound();

  for (std::size_t i = 0; i < state_.particles.size(); ++i) {
    Particle& p = state_.particles[i];
    std::span<double> attractor(attractors_.data() + i * d, d);
    if (config_.attractor_r_mode == AttractorRMode::per_particle) {
      const double r = rng_.uniform();
      for (std::size_t j = 0; j < d; ++j) {
        attractor[j] = local_attractor(p.local_best_position[j], gbest_before_[j], r);
      }
    } else {
      for (std::size_t j = 0; j < d; ++j) {
        attractor[j] = local_attractor(p.local_best_position[j], gbest_before_[j], rng_.uniform());
      }
    }

    update_position(p.position, attractor, state_.mean_best, info.width, config_.q, rng_);
    if (config_.bounds_mode == BoundsMode::clamp) {
      for (std::size_t j = 0; j < d; ++j) p.position[j] = std::clamp(p.position[j], lo[j], hi[j]);
    }

    const double s = score(p.position);
    if (s < p.local_best_score) {
      p.local_best_score = s;
      p.local_best_position = p.position;
    }
  }

  refresh_global_best();
  state_.mean_best = mean_best(state_.particles);
  diversity_ = diversity(state_.particles, state_.mean_best);
  ++state_.iteration;

  info.attractors = attractors_;
  info.gbest_before = gbest_before_;
  info.diversity = diversity_;
  return info;
}

RunResult run(const SwarmConfig& config, const ObjectiveFunction& objective,
              const IterationObserver& observer) {
  config.validate();
  return run(config, objective, solve_y0_q(config.p0, config.q), observer);
}

RunResult run(const SwarmConfig& config, const ObjectiveFunction& objective, double y0,
              const IterationObserver& observer) {
  const auto start = std::chrono::steady_clock::now();

  Swarm swarm(config, objective, y0);
  RunResult result;
  if (config.record_diversity_trace) {
    result.diversity_trace.reserve(std::min<std::size_t>(config.max_iterations + 1, 4096));
    result.diversity_trace.push_back(swarm.current_diversity());
  }

  while (swarm.state().iteration < config.max_iterations) {
    const StepInfo info = swarm.step();
    if (observer) observer(swarm.state(), info);
    if (config.record_diversity_trace) result.diversity_trace.push_back(info.diversity);
    if (info.diversity < config.diversity_tol) {
      result.termination = Termination::converged;
      break;
    }
  }

  result.iterations_used = swarm.state().iteration;
  result.best_score = swarm.state().global_best_score;
  result.best_position = swarm.state().global_best_position;
  result.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace qgsqpo
