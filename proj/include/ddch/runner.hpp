#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ddch/config.hpp"
#include "ddch/diagnostics.hpp"
#include "ddch/scheme.hpp"
#include "ddch/transform.hpp"
#include "ddch/wetting.hpp"

namespace ddch {

/// Periodic signed distance of a shape, negative inside.
DistanceFunction shape_distance(const Grid &grid, const ShapeSpec &shape);

struct InitialState {
  std::vector<Field> u; ///< the integrated unknowns (u_L alone for single-phase wetting)
  std::optional<SolidSupport> support;
};

/// Noise: L uniforms per node divided by their sum. Shapes: q(d/eps) per
/// phase, background = 1 - rest; bodies of different phases may overlap by
/// at most 6 eps (OverlappingShapes otherwise) and are renormalized where
/// they do. Droplet: the body cut by the support.
InitialState build_initial_condition(const RunConfig &config, const Grid &grid);

/// Binary restart file:
///   "DDCHCKP1", uint64 config hash, int64 step, double time,
///   uint32 ndim, uint32 phases, uint64 dims[3],
///   u (phases x nodes), mu (phases x nodes), lambda (nodes),
///   uint64 seed, uint64 n, n bytes of engine state text.
/// All little-endian; fields row-major doubles.
struct Checkpoint {
  std::uint64_t config_hash = 0;
  std::int64_t step = 0;
  double time = 0.0;
  std::vector<Field> u;
  std::vector<Field> mu;
  Field lambda;
  std::uint64_t seed = 0;
  std::string rng_state;
};

void write_checkpoint(const std::string &path, const Grid &grid, const Checkpoint &checkpoint);
/// Throws FormatError if the file is damaged or was written for another grid.
Checkpoint read_checkpoint(const std::string &path, const Grid &grid);

/// One run: owns its grid, transform, state and stepper.
class Simulation {
public:
  explicit Simulation(RunConfig config);
  /// Continues from a checkpoint; the config hash must match.
  Simulation(RunConfig config, const Checkpoint &checkpoint);
  ~Simulation();
  Simulation(const Simulation &) = delete;
  Simulation &operator=(const Simulation &) = delete;

  const RunConfig &config() const noexcept { return config_; }
  const Grid &grid() const noexcept { return transform_->grid(); }
  Transform &transform() noexcept { return *transform_; }
  const PhaseSystem &state() const noexcept { return system_; }
  const SolidSupport *support() const noexcept { return support_ ? &*support_ : nullptr; }

  /// Every phase of the physical system. Single-phase wetting reports
  /// (u_S, u_L, 1 - u_L - u_S), the same layout as the three-phase run.
  std::vector<Field> phase_fields() const;

  /// Throws DivergenceDetected on NaN or |u| > 10; the state is then
  /// undefined and must not be checkpointed.
  void step();
  DiagnosticsReport report();
  Checkpoint checkpoint() const;

private:
  void setup();

  RunConfig config_;
  std::unique_ptr<Transform> transform_;
  std::optional<SolidSupport> support_;
  PhaseSystem system_;
  std::unique_ptr<Scheme> scheme_;
  std::unique_ptr<WettingSolver> wetting_;
  std::string rng_state_;
};

struct RunOptions {
  std::optional<std::string> output_dir; ///< overrides output.dir
  std::optional<std::string> resume;     ///< checkpoint file
  std::optional<std::int64_t> steps_override;
  std::ostream *log = nullptr;
};

struct RunOutcome {
  int exit_code = 0; ///< 0 ok, 3 divergence
  std::int64_t step = 0;
  std::string message;
};

/// Output directory layout:
///   diagnostics.csv                 one row per diagnostics stride
///   snapshot_SSSSSSSS.ppm           composite image per snapshot stride
///   snapshot_SSSSSSSS_uK.raw        phase K, if raw snapshots are enabled
///   checkpoint.bin                  latest checkpoint (atomic replace)
RunOutcome run(const RunConfig &config, const RunOptions &options);

} // namespace ddch
