#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddch/params.hpp"
#include "ddch/phase_system.hpp"
#include "ddch/wetting.hpp"

namespace ddch {

/// One `key = value` line of a config document.
struct ConfigEntry {
  int line = 0;
  std::string key;
  std::string value;
};

/// Splits a document into entries. `#` starts a comment, blank lines are
/// skipped, keys are unique (ParseError with the line and key otherwise).
std::vector<ConfigEntry> parse_entries(std::string_view text);

enum class RunModel { mch, nmnch, wetting };
enum class InitKind { noise, shapes, droplet, raw };

/// Signed-distance primitive. A disc is a ball in 3D. A tube is a capped
/// cylinder of the given length along the first axis (infinite when the
/// length reaches the box).
struct ShapeSpec {
  enum class Kind { disc, tube } kind = Kind::disc;
  int phase = 1; ///< 1-based; unused for droplet bodies
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double radius = 0.0;
  double length = 0.0;
};

struct RunConfig {
  std::vector<int> dims;
  std::vector<double> lengths;
  RunModel model = RunModel::nmnch;
  SchemeParams params;

  std::vector<PhaseCoefficients> phases;

  InitKind init = InitKind::noise;
  std::uint64_t seed = 0;
  double noise_smoothing = 0.0; ///< Gaussian correlation length of the noise
  std::vector<ShapeSpec> shapes;
  int background = 1;
  std::vector<std::string> raw_files;

  SupportSpec support;
  WettingConfig wetting;
  bool three_phase = false;

  std::int64_t steps = 0;
  std::int64_t diagnostics_every = 1;
  std::int64_t snapshot_every = 0; ///< 0: initial and final only
  std::int64_t checkpoint_every = 0;
  std::string output_dir = "out";
  bool snapshot_ppm = true;
  bool snapshot_raw = false;
  int shape_phase = 0; ///< phase whose isoperimetric ratio is logged (2D)

  /// Entries as parsed (plus CLI overrides), used for the hash.
  std::vector<ConfigEntry> entries;

  std::size_t phase_count() const noexcept { return phases.size(); }
};

/// Parses and validates a run config. Unknown keys are rejected; missing
/// numeric parameters get the documented defaults.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string &path);

/// Replaces a key (or adds it) and re-validates, e.g. for --seed.
RunConfig override_entry(const RunConfig &config, const std::string &key,
                         const std::string &value);

/// FNV-1a over the sorted entries, ignoring run.steps and output.dir so a
/// run can be extended or relocated and still resume.
std::uint64_t config_hash(const RunConfig &config);

/// Order-of-accuracy sweep document (keys under `sweep.`).
struct SweepConfig {
  Model model = Model::nmnch;
  std::vector<double> epsilons;
  OvershootCase test_case;
};
SweepConfig parse_sweep_config(std::string_view text);

std::string read_text_file(const std::string &path);

} // namespace ddch
