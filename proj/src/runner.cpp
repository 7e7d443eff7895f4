#include "ddch/runner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "ddch/error.hpp"
#include "ddch/field_io.hpp"
#include "ddch/physics.hpp"
#include "ddch/solvers.hpp"

namespace fs = std::filesystem;

namespace ddch {

namespace {

constexpr double divergence_bound = 10.0;
constexpr char checkpoint_magic[8] = {'D', 'D', 'C', 'H', 'C', 'K', 'P', '1'};

double unit(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double wrapped(double dx, double len) { return dx - len * std::round(dx / len); }

} // namespace

DistanceFunction shape_distance(const Grid &grid, const ShapeSpec &shape) {
  if (shape.kind == ShapeSpec::Kind::disc) return disc_distance(grid, shape.center, shape.radius);
  const int d = grid.ndim();
  const std::vector<double> len = grid.lengths();
  const ShapeSpec s = shape;
  const bool infinite = s.length >= len[0];
  return [d, len, s, infinite](const std::array<double, 3> &x) {
    double r2 = 0.0;
    for (int a = 1; a < d; ++a) {
      const double dx = wrapped(x[a] - s.center[a], len[a]);
      r2 += dx * dx;
    }
    const double radial = std::sqrt(r2) - s.radius;
    if (infinite) return radial;
    const double axial = std::abs(wrapped(x[0] - s.center[0], len[0])) - 0.5 * s.length;
    const double outside = std::hypot(std::max(radial, 0.0), std::max(axial, 0.0));
    return outside + std::min(std::max(radial, axial), 0.0);
  };
}

namespace {

DistanceFunction union_distance(const Grid &grid, const std::vector<ShapeSpec> &shapes,
                                int phase, bool any_phase) {
  std::vector<DistanceFunction> parts;
  for (const ShapeSpec &s : shapes)
    if (any_phase || s.phase == phase) parts.push_back(shape_distance(grid, s));
  if (parts.empty()) return {};
  return [parts](const std::array<double, 3> &x) {
    double d = parts[0](x);
    for (std::size_t i = 1; i < parts.size(); ++i) d = std::min(d, parts[i](x));
    return d;
  };
}

/// Uniform draws per phase, optionally Gaussian-filtered over `smoothing`,
/// then divided by their sum at every node.
std::vector<Field> noise_fields(const Grid &grid, std::size_t phases, std::mt19937_64 &rng,
                                double smoothing) {
  std::vector<Field> u(phases, Field(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t k = 0; k < phases; ++k) u[k][i] = unit(rng);
  if (smoothing > 0.0) {
    Transform tr(grid);
    const auto &s = grid.laplacian_symbol();
    for (Field &f : u) {
      Spectrum h = tr.forward(f);
      for (std::size_t j = 0; j < h.size(); ++j) h[j] *= std::exp(0.5 * smoothing * smoothing * s[j]);
      f = tr.inverse(h);
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < phases; ++k) sum += u[k][i];
    if (!(sum > 0.0)) {
      for (std::size_t k = 0; k < phases; ++k) u[k][i] = 1.0 / static_cast<double>(phases);
      continue;
    }
    for (std::size_t k = 0; k < phases; ++k) u[k][i] /= sum;
  }
  return u;
}

std::vector<Field> shape_fields(const RunConfig &c, const Grid &grid) {
  const double eps = c.params.epsilon;
  const std::size_t L = c.phase_count();
  const std::size_t bg = static_cast<std::size_t>(c.background - 1);
  std::vector<Field> d(L);
  for (std::size_t k = 0; k < L; ++k) {
    if (k == bg) continue;
    if (auto f = union_distance(grid, c.shapes, static_cast<int>(k + 1), false)) d[k] = grid.sample(f);
  }
  for (std::size_t a = 0; a < L; ++a)
    for (std::size_t b = a + 1; b < L; ++b) {
      if (d[a].empty() || d[b].empty()) continue;
      for (std::size_t i = 0; i < grid.size(); ++i)
        if (std::max(d[a][i], d[b][i]) < -6.0 * eps)
          throw OverlappingShapes("phases " + std::to_string(a + 1) + " and " +
                                  std::to_string(b + 1) + " overlap by more than 6 eps");
    }
  std::vector<Field> u(L, Field(grid.size(), 0.0));
  for (std::size_t k = 0; k < L; ++k)
    if (!d[k].empty())
      for (std::size_t i = 0; i < grid.size(); ++i) u[k][i] = physics::profile(d[k][i] / eps);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < L; ++k)
      if (k != bg) sum += u[k][i];
    if (sum > 1.0)
      for (std::size_t k = 0; k < L; ++k)
        if (k != bg) u[k][i] /= sum;
    double rest = 1.0;
    for (std::size_t k = 0; k < L; ++k)
      if (k != bg) rest -= u[k][i];
    u[bg][i] = std::max(rest, 0.0);
  }
  return u;
}

std::vector<Field> raw_fields(const RunConfig &c, const Grid &grid) {
  std::vector<Field> u;
  for (const std::string &path : c.raw_files) {
    RawField f = read_raw(path);
    if (!(f.grid == grid)) throw FormatError(path + ": grid does not match the config");
    u.push_back(std::move(f.values));
  }
  return u;
}

} // namespace

InitialState build_initial_condition(const RunConfig &config, const Grid &grid) {
  InitialState s;
  const double eps = config.params.epsilon;
  if (config.model == RunModel::wetting) {
    s.support = build_support(grid, eps, config.support);
    Field u_l = config.init == InitKind::raw
                    ? raw_fields(config, grid).front()
                    : liquid_on_support(grid, eps, *s.support,
                                        union_distance(grid, config.shapes, 0, true));
    if (config.three_phase) {
      Field u_v(u_l.size());
      for (std::size_t i = 0; i < u_v.size(); ++i) u_v[i] = 1.0 - u_l[i] - s.support->u_s[i];
      s.u = {s.support->u_s, std::move(u_l), std::move(u_v)};
    } else {
      s.u = {std::move(u_l)};
    }
    return s;
  }
  switch (config.init) {
  case InitKind::noise: {
    std::mt19937_64 rng(config.seed);
    s.u = noise_fields(grid, config.phase_count(), rng, config.noise_smoothing);
    break;
  }
  case InitKind::shapes: s.u = shape_fields(config, grid); break;
  case InitKind::raw: s.u = raw_fields(config, grid); break;
  case InitKind::droplet: throw ValidationError("droplets need a wetting run");
  }
  return s;
}

// ---------------------------------------------------------------- checkpoint

namespace {

class ByteWriter {
public:
  template <class T> void put(T v) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    out.append(reinterpret_cast<const char *>(b), sizeof(T));
  }
  void put(const Field &f) {
    for (double v : f) put(v);
  }
  std::string out;
};

class ByteReader {
public:
  ByteReader(std::string bytes, std::string path) : bytes_(std::move(bytes)), path_(std::move(path)) {}
  template <class T> T get() {
    need(sizeof(T));
    unsigned char b[sizeof(T)];
    std::memcpy(b, bytes_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    pos_ += sizeof(T);
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
  }
  Field field(std::size_t n) {
    need(8 * n);
    Field f(n);
    for (double &v : f) v = get<double>();
    return f;
  }
  std::string text(std::size_t n) {
    need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }

private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw FormatError(path_ + ": truncated checkpoint");
  }
  std::string bytes_, path_;
  std::size_t pos_ = 0;
};

} // namespace

void write_checkpoint(const std::string &path, const Grid &grid, const Checkpoint &c) {
  ByteWriter w;
  w.out.assign(checkpoint_magic, sizeof checkpoint_magic);
  w.put<std::uint64_t>(c.config_hash);
  w.put<std::int64_t>(c.step);
  w.put<double>(c.time);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(grid.ndim()));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(c.u.size()));
  for (int a = 0; a < 3; ++a)
    w.put<std::uint64_t>(a < grid.ndim() ? static_cast<std::uint64_t>(grid.dim(a)) : 1);
  for (const Field &f : c.u) w.put(f);
  for (const Field &f : c.mu) w.put(f);
  w.put(c.lambda);
  w.put<std::uint64_t>(c.seed);
  w.put<std::uint64_t>(c.rng_state.size());
  w.out += c.rng_state;

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out.write(w.out.data(), static_cast<std::streamsize>(w.out.size()));
    if (!out) throw std::runtime_error("failed writing " + tmp);
  }
  fs::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::string &path, const Grid &grid) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  ByteReader r(std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>()),
               path);
  if (r.text(8) != std::string(checkpoint_magic, 8)) throw FormatError(path + ": not a checkpoint");
  Checkpoint c;
  c.config_hash = r.get<std::uint64_t>();
  c.step = r.get<std::int64_t>();
  c.time = r.get<double>();
  const auto ndim = r.get<std::uint32_t>();
  const auto phases = r.get<std::uint32_t>();
  bool same = ndim == static_cast<std::uint32_t>(grid.ndim());
  for (int a = 0; a < 3; ++a) {
    const auto n = r.get<std::uint64_t>();
    same = same && n == (a < grid.ndim() ? static_cast<std::uint64_t>(grid.dim(a)) : 1);
  }
  if (!same) throw FormatError(path + ": checkpoint grid differs from the config");
  if (phases == 0 || phases > 64) throw FormatError(path + ": bad phase count");
  for (std::uint32_t k = 0; k < phases; ++k) c.u.push_back(r.field(grid.size()));
  for (std::uint32_t k = 0; k < phases; ++k) c.mu.push_back(r.field(grid.size()));
  c.lambda = r.field(grid.size());
  c.seed = r.get<std::uint64_t>();
  const auto n = r.get<std::uint64_t>();
  c.rng_state = r.text(static_cast<std::size_t>(n));
  if (!r.done()) throw FormatError(path + ": trailing bytes in checkpoint");
  return c;
}

// ---------------------------------------------------------------- simulation

Simulation::Simulation(RunConfig config) : config_(std::move(config)) {
  transform_ = std::make_unique<Transform>(Grid(config_.dims, config_.lengths));
  InitialState init = build_initial_condition(config_, grid());
  support_ = std::move(init.support);
  system_ = make_system(*transform_, std::move(init.u), config_.phases, config_.params.epsilon);
  // Engine state after the initial-condition draws.
  std::mt19937_64 rng(config_.seed);
  if (config_.init == InitKind::noise && config_.model != RunModel::wetting)
    rng.discard(grid().size() * config_.phase_count());
  std::ostringstream state;
  state << rng;
  rng_state_ = state.str();
  setup();
}

Simulation::Simulation(RunConfig config, const Checkpoint &checkpoint)
    : config_(std::move(config)) {
  if (checkpoint.config_hash != config_hash(config_))
    throw ValidationError("checkpoint was written for a different config");
  transform_ = std::make_unique<Transform>(Grid(config_.dims, config_.lengths));
  if (checkpoint.u.size() != config_.phase_count())
    throw FormatError("checkpoint phase count differs from the config");
  if (config_.model == RunModel::wetting)
    support_ = build_support(grid(), config_.params.epsilon, config_.support);
  system_.u = checkpoint.u;
  system_.mu = checkpoint.mu;
  system_.lambda = checkpoint.lambda;
  system_.coefficients = config_.phases;
  system_.step_index = checkpoint.step;
  system_.time = checkpoint.time;
  rng_state_ = checkpoint.rng_state;
  setup();
}

Simulation::~Simulation() = default;

void Simulation::setup() {
  if (config_.model == RunModel::wetting && !config_.three_phase)
    wetting_ = std::make_unique<WettingSolver>(*transform_, config_.params, config_.wetting, *support_);
  else
    scheme_ = make_scheme(*transform_, config_.params, config_.phases);
}

std::vector<Field> Simulation::phase_fields() const {
  if (!wetting_) return system_.u;
  const Field &u_s = support_->u_s, &u_l = system_.u[0];
  Field u_v(u_l.size());
  for (std::size_t i = 0; i < u_v.size(); ++i) u_v[i] = 1.0 - u_l[i] - u_s[i];
  return {u_s, u_l, std::move(u_v)};
}

void Simulation::step() {
  if (wetting_) {
    wetting_->step(system_.u[0], system_.mu[0]);
    system_.step_index += 1;
    system_.time += config_.params.dt;
  } else if (config_.model == RunModel::wetting) {
    three_phase_wetting_step(*scheme_, system_);
  } else {
    scheme_->step(system_);
  }
  for (std::size_t k = 0; k < system_.u.size(); ++k)
    for (double v : system_.u[k])
      if (!(std::abs(v) <= divergence_bound))
        throw DivergenceDetected("step " + std::to_string(system_.step_index) + ": phase " +
                                 std::to_string(k + 1) + " left [-10, 10] or became NaN");
}

DiagnosticsReport Simulation::report() {
  const double eps = config_.params.epsilon;
  DiagnosticsReport r;
  if (wetting_) {
    PhaseSystem view;
    view.u = phase_fields();
    view.coefficients = three_phase_coefficients(config_.wetting);
    view.step_index = system_.step_index;
    view.time = system_.time;
    r = make_report(*transform_, view, eps);
  } else {
    r = make_report(*transform_, system_, eps);
  }
  if (config_.model == RunModel::wetting && grid().ndim() == 2) {
    try {
      const Field &u_l = wetting_ ? system_.u[0] : system_.u[1];
      r.contact_angle = measure_contact_angle(grid(), u_l, *support_, eps);
    } catch (const NoContactLine &) {
    }
  }
  if (config_.shape_phase > 0) {
    try {
      const std::vector<Field> u = phase_fields();
      const Field &shape = u[static_cast<std::size_t>(config_.shape_phase - 1)];
      const MatchedDisc disc = matched_disc(grid(), shape);
      r.profile_error = profile_error(grid(), shape, disc_distance(grid(), disc.center, disc.radius), eps);
      r.isoperimetric_ratio = level_set_geometry(grid(), shape).isoperimetric_ratio;
    } catch (const EmptyLevelSet &) {
    }
  }
  return r;
}

Checkpoint Simulation::checkpoint() const {
  Checkpoint c;
  c.config_hash = config_hash(config_);
  c.step = system_.step_index;
  c.time = system_.time;
  c.u = system_.u;
  c.mu = system_.mu;
  c.lambda = system_.lambda;
  c.seed = config_.seed;
  c.rng_state = rng_state_;
  return c;
}

// ---------------------------------------------------------------- run

namespace {

std::string snapshot_name(std::int64_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%08lld", static_cast<long long>(step));
  return buf;
}

void write_snapshot(Simulation &sim, const fs::path &dir) {
  const std::string base = (dir / snapshot_name(sim.state().step_index)).string();
  const std::vector<Field> u = sim.phase_fields();
  if (sim.config().snapshot_ppm && sim.grid().ndim() >= 2)
    write_ppm(base + ".ppm", sim.grid(), composite(u),
              u.size() > 1 ? static_cast<double>(u.size() - 1) : 1.0);
  if (sim.config().snapshot_raw)
    for (std::size_t k = 0; k < u.size(); ++k)
      write_raw(base + "_u" + std::to_string(k + 1) + ".raw", sim.grid(), u[k]);
}

/// Keeps the header and the rows up to `step` of an existing CSV.
void truncate_csv(const fs::path &path, std::int64_t step, const std::string &header) {
  std::string kept = header + "\n";
  if (std::ifstream in(path); in) {
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (std::stoll(line.substr(0, line.find(','))) > step) break;
      kept += line + "\n";
    }
  }
  std::ofstream(path, std::ios::trunc) << kept;
}

} // namespace

RunOutcome run(const RunConfig &config_in, const RunOptions &options) {
  RunConfig config = config_in;
  if (options.output_dir) config.output_dir = *options.output_dir;
  if (options.steps_override) {
    if (*options.steps_override < 0) throw ValidationError("steps override must be non-negative");
    config.steps = *options.steps_override;
  }
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  const fs::path csv_path = dir / "diagnostics.csv";
  const std::string checkpoint_path = (dir / "checkpoint.bin").string();

  std::unique_ptr<Simulation> sim;
  const std::size_t logged = config.model == RunModel::wetting ? 3 : config.phase_count();
  const std::string header = csv_header(logged);
  if (options.resume) {
    const Grid grid(config.dims, config.lengths);
    sim = std::make_unique<Simulation>(config, read_checkpoint(*options.resume, grid));
    truncate_csv(csv_path, sim->state().step_index, header);
  } else {
    sim = std::make_unique<Simulation>(config);
    std::ofstream(csv_path, std::ios::trunc) << header << "\n" << csv_row(sim->report()) << "\n";
    write_snapshot(*sim, dir);
    write_checkpoint(checkpoint_path, sim->grid(), sim->checkpoint());
  }

  std::ofstream csv(csv_path, std::ios::app);
  RunOutcome outcome;
  bool snapped = true;
  try {
    while (sim->state().step_index < config.steps) {
      sim->step();
      const std::int64_t s = sim->state().step_index;
      snapped = false;
      if (s % config.diagnostics_every == 0) csv << csv_row(sim->report()) << "\n" << std::flush;
      if (config.snapshot_every > 0 && s % config.snapshot_every == 0) {
        write_snapshot(*sim, dir);
        snapped = true;
      }
      if (config.checkpoint_every > 0 && s % config.checkpoint_every == 0)
        write_checkpoint(checkpoint_path, sim->grid(), sim->checkpoint());
      if (options.log && s % std::max<std::int64_t>(1, config.steps / 10) == 0)
        *options.log << "step " << s << " / " << config.steps << "\n";
    }
  } catch (const DivergenceDetected &e) {
    outcome.exit_code = 3;
    outcome.step = sim->state().step_index;
    outcome.message = e.what();
    return outcome;
  }
  if (!snapped) write_snapshot(*sim, dir);
  write_checkpoint(checkpoint_path, sim->grid(), sim->checkpoint());
  outcome.step = sim->state().step_index;
  return outcome;
}

} // namespace ddch
