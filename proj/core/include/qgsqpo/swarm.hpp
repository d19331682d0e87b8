#pragma once

// Quantum-behaved swarm with Gaussian (q = 1) or q-Gaussian position updates.
//
// Per iteration t, every particle i and coordinate j moves to
//
//   X_ij(t+1) = p_ij +/- w * |M_j - X_ij(t)| * |F|,   w = min(g * beta_t / y0, w_cap)
//
// where p_i is a random convex combination of the particle's local best and
// the global best, M is the mean of all local bests, F is a standard
// (q-)Gaussian deviate, and the sign is chosen by a fresh uniform z.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgsqpo/objectives.hpp"
#include "qgsqpo/rng.hpp"

namespace qgsqpo {

enum class AttractorRMode { per_particle, per_dimension };
enum class BoundsMode { free, clamp };
enum class Termination { converged, cap };

std::string to_string(Termination t);
std::string to_string(AttractorRMode m);
std::string to_string(BoundsMode m);
AttractorRMode parse_attractor_r_mode(const std::string& s);
BoundsMode parse_bounds_mode(const std::string& s);

struct SwarmConfig {
  std::size_t num_particles = 20;
  std::size_t dimension = 2;
  double q = 1.0;  // 1 selects the Gaussian update
  double p0 = 0.75;
  double g = 0.5;
  double amplitude_a = 0.0;
  double omega = 0.1;
  double diversity_tol = 1e-5;
  std::size_t max_iterations = 5000;
  double w_cap = 1.71;
  std::uint64_t seed = 0;
  AttractorRMode attractor_r_mode = AttractorRMode::per_particle;
  BoundsMode bounds_mode = BoundsMode::free;
  bool record_diversity_trace = true;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

struct Particle {
  std::vector<double> position;
  std::vector<double> local_best_position;
  double local_best_score = 0.0;
};

struct SwarmState {
  std::vector<Particle> particles;
  std::vector<double> global_best_position;
  double global_best_score = 0.0;
  std::vector<double> mean_best;
  std::size_t iteration = 0;
  double beta_t = 0.0;
};

/// r * lbest + (1 - r) * gbest.
constexpr double local_attractor(double lbest_j, double gbest_j, double r) {
  return r * lbest_j + (1.0 - r) * gbest_j;
}

/// Coordinate-wise mean of the local best positions. Rejects an empty swarm.
std::vector<double> mean_best(std::span<const Particle> particles);

/// y0 + y0 |A sin(omega t)|.
double beta_schedule(std::size_t t, double y0, double amplitude_a, double omega);

/// min(g * beta_t / y0, w_cap).
double effective_width(double beta_t, double y0, double g, double w_cap);

/// One coordinate of the update rule given an already drawn deviate and sign
/// uniform: attractor + s * width * |mean_best - x| * |deviate|, s = +1 iff z >= 0.5.
double move_coordinate(double attractor, double mean_best, double x, double width,
                       double deviate, double z);

/// Overwrites `position` with its updated value. Per coordinate it draws one
/// q-Gaussian deviate (two uniforms) then one sign uniform.
void update_position(std::span<double> position, std::span<const double> attractor,
                     std::span<const double> mean_best, double width, double q, Rng& rng);

/// Mean Euclidean distance of the local bests from `mean_best`.
double diversity(std::span<const Particle> particles, std::span<const double> mean_best);

/// What one iteration did, for observers and diagnostics.
struct StepInfo {
  std::size_t iteration = 0;  // t used in the beta schedule
  double beta_t = 0.0;
  double raw_width = 0.0;
  double width = 0.0;                     // after the w_cap clamp
  std::span<const double> attractors;     // row-major, num_particles x dimension
  std::span<const double> gbest_before;   // global best used by the attractors
  double diversity = 0.0;                 // after the move
};

struct RunResult {
  std::size_t iterations_used = 0;
  double best_score = 0.0;
  std::vector<double> best_position;
  Termination termination = Termination::cap;
  std::vector<double> diversity_trace;  // entry k: diversity after k iterations
  double wall_time_ms = 0.0;
};

class Swarm {
 public:
  /// Solves for y0 from (p0, q).
  Swarm(SwarmConfig config, const ObjectiveFunction& objective);
  /// Uses a precomputed y0 (must match solve_y0_q(p0, q) for faithful runs).
  Swarm(SwarmConfig config, const ObjectiveFunction& objective, double y0);

  const SwarmConfig& config() const { return config_; }
  const SwarmState& state() const { return state_; }
  double y0() const { return y0_; }
  double current_diversity() const { return diversity_; }

  /// Advances one iteration and returns what happened.
  StepInfo step();

 private:
  void initialize();
  double score(std::span<const double> x) const;
  void refresh_global_best();

  SwarmConfig config_;
  ObjectiveFunction objective_;
  double y0_;
  Rng rng_;
  SwarmState state_;
  std::vector<double> attractors_;
  std::vector<double> gbest_before_;
  double diversity_ = 0.0;
};

using IterationObserver = std::function<void(const SwarmState&, const StepInfo&)>;

/// Full run: initialize, iterate until diversity < diversity_tol or the cap.
/// Throws std::invalid_argument on a dimension mismatch and std::runtime_error
/// if the objective returns a non-finite value.
RunResult run(const SwarmConfig& config, const ObjectiveFunction& objective,
              const IterationObserver& observer = {});
RunResult run(const SwarmConfig& config, const ObjectiveFunction& objective, double y0,
              const IterationObserver& observer = {});

}  // namespace qgsqpo
