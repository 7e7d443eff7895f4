#include "ddch/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ddch/error.hpp"
#include "ddch/physics.hpp"

namespace ddch {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto end = s.find(sep, start);
    const auto piece = trim(s.substr(start, end == std::string_view::npos ? s.npos : end - start));
    if (!piece.empty()) out.emplace_back(piece);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

/// Typed access to the entries with per-key error reporting.
class Reader {
public:
  explicit Reader(const std::vector<ConfigEntry> &entries) {
    for (const ConfigEntry &e : entries) map_.emplace(e.key, &e);
  }

  bool has(const std::string &key) const { return map_.count(key) != 0; }

  const ConfigEntry &entry(const std::string &key) const {
    used_.insert(key);
    return *map_.at(key);
  }

  [[noreturn]] void fail(const std::string &key, const std::string &what) const {
    const auto it = map_.find(key);
    throw ParseError(it == map_.end() ? 0 : it->second->line, key, what);
  }

  double number(const std::string &key, std::string_view text) const {
    double v = 0.0;
    const char *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) fail(key, "'" + std::string(text) + "' is not a number");
    return v;
  }

  std::int64_t integer(const std::string &key, std::string_view text) const {
    std::int64_t v = 0;
    const char *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) fail(key, "'" + std::string(text) + "' is not an integer");
    return v;
  }

  std::optional<double> real(const std::string &key) const {
    if (!has(key)) return std::nullopt;
    return number(key, trim(entry(key).value));
  }
  std::optional<std::int64_t> whole(const std::string &key) const {
    if (!has(key)) return std::nullopt;
    return integer(key, trim(entry(key).value));
  }
  std::optional<std::string> text(const std::string &key) const {
    if (!has(key)) return std::nullopt;
    return std::string(trim(entry(key).value));
  }
  std::vector<double> reals(const std::string &key) const {
    std::vector<double> out;
    for (const std::string &w : words(entry(key).value)) out.push_back(number(key, w));
    return out;
  }

  void reject_unused() const {
    for (const auto &[key, e] : map_)
      if (!used_.count(key)) throw ParseError(e->line, key, "unknown key");
  }

private:
  std::map<std::string, const ConfigEntry *> map_;
  mutable std::set<std::string> used_;
};

ShapeSpec parse_shape(const Reader &r, const std::string &key, const std::string &text,
                      int ndim, bool with_phase) {
  const std::vector<std::string> w = words(text);
  if (w.empty()) r.fail(key, "empty shape");
  ShapeSpec s;
  if (w[0] == "disc")
    s.kind = ShapeSpec::Kind::disc;
  else if (w[0] == "tube")
    s.kind = ShapeSpec::Kind::tube;
  else
    r.fail(key, "unknown shape '" + w[0] + "' (disc or tube)");
  const std::size_t expected =
      1 + (with_phase ? 1 : 0) + ndim + 1 + (s.kind == ShapeSpec::Kind::tube ? 1 : 0);
  if (w.size() != expected)
    r.fail(key, "'" + text + "' needs " + std::to_string(expected - 1) + " numbers");
  std::size_t i = 1;
  if (with_phase) s.phase = static_cast<int>(r.integer(key, w[i++]));
  for (int a = 0; a < ndim; ++a) s.center[a] = r.number(key, w[i++]);
  s.radius = r.number(key, w[i++]);
  if (s.kind == ShapeSpec::Kind::tube) s.length = r.number(key, w[i++]);
  if (!(s.radius > 0.0)) r.fail(key, "shape radius must be positive");
  if (s.kind == ShapeSpec::Kind::tube && !(s.length > 0.0))
    r.fail(key, "tube length must be positive");
  return s;
}

RunConfig build(const std::vector<ConfigEntry> &entries) {
  const Reader r(entries);
  RunConfig c;
  c.entries = entries;

  if (!r.has("grid.dims")) throw ParseError(0, "grid.dims", "missing");
  for (double d : r.reals("grid.dims")) {
    if (d != std::floor(d) || d < 1) r.fail("grid.dims", "dimensions must be positive integers");
    c.dims.push_back(static_cast<int>(d));
  }
  if (c.dims.empty() || c.dims.size() > 3) r.fail("grid.dims", "1 to 3 dimensions");
  const int ndim = static_cast<int>(c.dims.size());
  c.lengths = r.has("grid.lengths") ? r.reals("grid.lengths")
                                    : std::vector<double>(c.dims.size(), 1.0);
  if (c.lengths.size() != c.dims.size()) r.fail("grid.lengths", "one length per dimension");
  const Grid grid(c.dims, c.lengths); // validates sizes

  if (!r.has("model")) throw ParseError(0, "model", "missing");
  const std::string model = *r.text("model");
  if (model == "mch")
    c.model = RunModel::mch;
  else if (model == "nmnch")
    c.model = RunModel::nmnch;
  else if (model == "wetting")
    c.model = RunModel::wetting;
  else
    r.fail("model", "expected mch, nmnch or wetting");

  Model scheme = c.model == RunModel::mch ? Model::mch : Model::nmnch;
  if (c.model == RunModel::wetting) {
    scheme = Model::mch;
    if (auto s = r.text("wetting.scheme")) {
      try {
        scheme = parse_model(*s);
      } catch (const ValidationError &e) {
        r.fail("wetting.scheme", e.what());
      }
    }
  }

  double hmax = 0.0, lmin = c.lengths[0];
  for (int a = 0; a < ndim; ++a) {
    hmax = std::max(hmax, grid.spacing(a));
    lmin = std::min(lmin, grid.length(a));
  }
  const double eps = r.real("scheme.epsilon").value_or(hmax);
  c.params = SchemeParams::defaults(scheme, eps);
  if (auto v = r.real("scheme.dt")) c.params.dt = *v;
  if (auto v = r.real("scheme.alpha")) c.params.alpha = *v;
  if (auto v = r.real("scheme.beta")) c.params.beta = *v;
  if (auto v = r.real("scheme.m")) c.params.m = *v;
  if (auto v = r.real("scheme.gamma")) c.params.gamma = *v;
  if (eps < hmax * (1.0 - 1e-12))
    throw ValidationError("epsilon must be at least one cell (" + std::to_string(hmax) + ")");
  if (eps > lmin / 16.0 * (1.0 + 1e-12))
    throw ValidationError("epsilon must not exceed box / 16");
  c.params.validate();

  if (c.model == RunModel::wetting) {
    for (const char *key : {"phases.count", "phases.sigma", "phases.sigma_pairwise", "phases.nu"})
      if (r.has(key)) r.fail(key, "wetting runs take tensions from wetting.*");
    c.wetting.sigma_lv = r.real("wetting.sigma_lv").value_or(1.0);
    c.wetting.sigma_sv = r.real("wetting.sigma_sv").value_or(1.0);
    c.wetting.sigma_ls = r.real("wetting.sigma_ls").value_or(1.0);
    c.wetting.nu = r.real("wetting.nu").value_or(1.0);
    if (!(c.wetting.nu > 0.0)) throw ValidationError("wetting.nu must be positive");
    physics::decompose_tensions(c.wetting.sigma_lv, c.wetting.sigma_sv, c.wetting.sigma_ls);
    if (auto p = r.text("wetting.penalization")) {
      if (*p == "R")
        c.wetting.stabilized = false;
      else if (*p == "R_tilde")
        c.wetting.stabilized = true;
      else
        r.fail("wetting.penalization", "expected R or R_tilde");
    }
    if (auto f = r.text("wetting.formulation")) {
      if (*f == "single")
        c.three_phase = false;
      else if (*f == "three")
        c.three_phase = true;
      else
        r.fail("wetting.formulation", "expected single or three");
    }
    c.phases = c.three_phase ? three_phase_coefficients(c.wetting)
                             : std::vector<PhaseCoefficients>{{0.5 * c.wetting.sigma_lv, c.wetting.nu}};

    if (auto k = r.text("support.kind")) {
      try {
        c.support.kind = parse_support_kind(*k);
      } catch (const ValidationError &e) {
        r.fail("support.kind", e.what());
      }
      if (c.support.kind == SupportKind::custom)
        r.fail("support.kind", "custom supports are only available through the library");
    }
    if (auto v = r.real("support.height")) c.support.height = *v;
    if (auto v = r.real("support.amplitude")) c.support.amplitude = *v;
    if (auto v = r.real("support.wavelength")) c.support.wavelength = *v;
    if (auto v = r.whole("support.seed")) c.support.seed = static_cast<std::uint64_t>(*v);
    if (ndim < 2) throw ValidationError("wetting runs need 2D or 3D grids");
  } else {
    for (const char *key : {"wetting.scheme", "wetting.sigma_lv", "wetting.sigma_sv",
                            "wetting.sigma_ls", "wetting.nu", "wetting.penalization",
                            "wetting.formulation", "support.kind", "support.height",
                            "support.amplitude", "support.wavelength", "support.seed"})
      if (r.has(key)) r.fail(key, "only wetting runs take this key");
    if (!r.has("phases.count")) throw ParseError(0, "phases.count", "missing");
    const std::int64_t count = *r.whole("phases.count");
    if (count < 1 || count > 64) r.fail("phases.count", "between 1 and 64 phases");
    const auto L = static_cast<std::size_t>(count);
    std::vector<double> sigma(L, 1.0);
    if (r.has("phases.sigma") && r.has("phases.sigma_pairwise"))
      r.fail("phases.sigma_pairwise", "give either phases.sigma or phases.sigma_pairwise");
    if (r.has("phases.sigma")) {
      sigma = r.reals("phases.sigma");
      if (sigma.size() != L) r.fail("phases.sigma", "one value per phase");
      for (double s : sigma)
        if (!(s > 0.0)) throw ValidationError("phase tensions must be positive");
    } else if (r.has("phases.sigma_pairwise")) {
      const std::vector<double> pairs = r.reals("phases.sigma_pairwise");
      if (pairs.size() != L * (L - 1) / 2) r.fail("phases.sigma_pairwise", "one value per pair");
      sigma = physics::per_phase_tensions(pairs);
    }
    std::vector<double> nu(L, 1.0);
    if (r.has("phases.nu")) {
      nu = r.reals("phases.nu");
      if (nu.size() != L) r.fail("phases.nu", "one value per phase");
      for (double v : nu)
        if (v < 0.0) throw ValidationError("phase mobilities must be non-negative");
      if (std::all_of(nu.begin(), nu.end(), [](double v) { return v == 0.0; }))
        throw AllMobilitiesZero("at least one phase must be mobile");
    }
    for (std::size_t k = 0; k < L; ++k) c.phases.push_back({sigma[k], nu[k]});
  }

  if (!r.has("init.kind")) throw ParseError(0, "init.kind", "missing");
  const std::string init = *r.text("init.kind");
  if (init == "noise")
    c.init = InitKind::noise;
  else if (init == "shapes")
    c.init = InitKind::shapes;
  else if (init == "droplet")
    c.init = InitKind::droplet;
  else if (init == "raw")
    c.init = InitKind::raw;
  else
    r.fail("init.kind", "expected noise, shapes, droplet or raw");
  if ((c.init == InitKind::droplet) != (c.model == RunModel::wetting))
    r.fail("init.kind", "wetting runs start from a droplet, other runs cannot");

  auto only = [&](const char *key, bool allowed) {
    if (r.has(key) && !allowed) r.fail(key, "not used by init.kind = " + init);
  };
  only("init.seed", c.init == InitKind::noise);
  only("init.smoothing", c.init == InitKind::noise);
  only("init.shapes", c.init == InitKind::shapes);
  only("init.background", c.init == InitKind::shapes);
  only("init.body", c.init == InitKind::droplet);
  only("init.files", c.init == InitKind::raw);

  if (auto s = r.whole("init.seed")) c.seed = static_cast<std::uint64_t>(*s);
  c.noise_smoothing = r.real("init.smoothing").value_or(c.params.epsilon);
  if (!(c.noise_smoothing >= 0.0)) r.fail("init.smoothing", "must be non-negative");
  if (c.init == InitKind::shapes) {
    if (!r.has("init.shapes")) throw ParseError(0, "init.shapes", "missing");
    for (const std::string &piece : split(r.entry("init.shapes").value, ';'))
      c.shapes.push_back(parse_shape(r, "init.shapes", piece, ndim, true));
    if (c.shapes.empty()) r.fail("init.shapes", "no shapes");
    c.background = static_cast<int>(r.whole("init.background").value_or(1));
    const int L = static_cast<int>(c.phase_count());
    if (c.background < 1 || c.background > L) r.fail("init.background", "no such phase");
    for (const ShapeSpec &s : c.shapes)
      if (s.phase < 1 || s.phase > L || s.phase == c.background)
        r.fail("init.shapes", "shape phase must exist and differ from the background");
  }
  if (c.init == InitKind::droplet) {
    if (!r.has("init.body")) throw ParseError(0, "init.body", "missing");
    for (const std::string &piece : split(r.entry("init.body").value, ';'))
      c.shapes.push_back(parse_shape(r, "init.body", piece, ndim, false));
    if (c.shapes.empty()) r.fail("init.body", "no shapes");
  }
  if (c.init == InitKind::raw) {
    if (!r.has("init.files")) throw ParseError(0, "init.files", "missing");
    c.raw_files = words(r.entry("init.files").value);
    const std::size_t need = c.model == RunModel::wetting ? 1 : c.phase_count();
    if (c.raw_files.size() != need) r.fail("init.files", "one file per phase");
  }

  if (!r.has("run.steps")) throw ParseError(0, "run.steps", "missing");
  c.steps = *r.whole("run.steps");
  if (c.steps < 0) r.fail("run.steps", "must be non-negative");
  c.diagnostics_every = r.whole("run.diagnostics_every").value_or(1);
  c.snapshot_every = r.whole("run.snapshot_every").value_or(0);
  c.checkpoint_every = r.whole("run.checkpoint_every").value_or(0);
  if (c.diagnostics_every < 1) r.fail("run.diagnostics_every", "must be positive");
  if (c.snapshot_every < 0) r.fail("run.snapshot_every", "must be non-negative");
  if (c.checkpoint_every < 0) r.fail("run.checkpoint_every", "must be non-negative");

  if (auto d = r.text("output.dir")) c.output_dir = *d;
  if (r.has("output.snapshots")) {
    c.snapshot_ppm = c.snapshot_raw = false;
    for (const std::string &w : words(r.entry("output.snapshots").value)) {
      if (w == "ppm")
        c.snapshot_ppm = true;
      else if (w == "raw")
        c.snapshot_raw = true;
      else if (w != "none")
        r.fail("output.snapshots", "expected ppm, raw or none");
    }
  }
  c.shape_phase = static_cast<int>(r.whole("diagnostics.shape_phase").value_or(0));
  const int logged = c.model == RunModel::wetting ? 3 : static_cast<int>(c.phase_count());
  if (c.shape_phase < 0 || c.shape_phase > logged)
    r.fail("diagnostics.shape_phase", "no such phase");
  if (c.shape_phase > 0 && ndim != 2)
    r.fail("diagnostics.shape_phase", "level-set geometry is measured in 2D only");

  r.reject_unused();
  return c;
}

} // namespace

std::vector<ConfigEntry> parse_entries(std::string_view text) {
  std::vector<ConfigEntry> out;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
    ++line_no;
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(line_no, std::string(line), "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(line_no, key, "empty key");
    if (key.find_first_of(" \t") != std::string::npos)
      throw ParseError(line_no, key, "keys contain no spaces");
    if (value.empty()) throw ParseError(line_no, key, "empty value");
    if (!seen.insert(key).second) throw ParseError(line_no, key, "duplicate key");
    out.push_back({line_no, key, value});
  }
  return out;
}

RunConfig parse_config(std::string_view text) { return build(parse_entries(text)); }

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig load_config(const std::string &path) { return parse_config(read_text_file(path)); }

RunConfig override_entry(const RunConfig &config, const std::string &key,
                         const std::string &value) {
  std::vector<ConfigEntry> entries = config.entries;
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const ConfigEntry &e) { return e.key == key; });
  if (it != entries.end())
    it->value = value;
  else
    entries.push_back({0, key, value});
  return build(entries);
}

std::uint64_t config_hash(const RunConfig &config) {
  std::vector<std::pair<std::string, std::string>> items;
  for (const ConfigEntry &e : config.entries)
    if (e.key != "run.steps" && e.key != "output.dir") items.emplace_back(e.key, e.value);
  std::sort(items.begin(), items.end());
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&](const std::string &s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
    h ^= 0xff; // separator
    h *= 1099511628211ULL;
  };
  for (const auto &[k, v] : items) {
    feed(k);
    feed(v);
  }
  return h;
}

SweepConfig parse_sweep_config(std::string_view text) {
  const std::vector<ConfigEntry> entries = parse_entries(text);
  const Reader r(entries);
  SweepConfig s;
  if (!r.has("sweep.model")) throw ParseError(0, "sweep.model", "missing");
  try {
    s.model = parse_model(*r.text("sweep.model"));
  } catch (const ValidationError &e) {
    r.fail("sweep.model", e.what());
  }
  if (!r.has("sweep.epsilons")) throw ParseError(0, "sweep.epsilons", "missing");
  s.epsilons = r.reals("sweep.epsilons");
  OvershootCase &t = s.test_case;
  if (auto v = r.real("sweep.radius")) t.radius = *v;
  if (auto v = r.real("sweep.box")) t.box_length = *v;
  if (auto v = r.real("sweep.cells_per_epsilon")) t.cells_per_epsilon = *v;
  if (auto v = r.real("sweep.dt_coefficient")) t.dt_coefficient = *v;
  if (auto v = r.real("sweep.dt_exponent")) t.dt_exponent = *v;
  if (auto v = r.real("sweep.time_coefficient")) t.time_coefficient = *v;
  if (auto v = r.real("sweep.time_exponent")) t.time_exponent = *v;
  r.reject_unused();
  if (s.epsilons.size() < 3) throw ValidationError("a sweep needs at least 3 epsilons");
  return s;
}

} // namespace ddch
