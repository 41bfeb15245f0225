#include "aircoh/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aircoh/coherence.hpp"
#include "aircoh/error.hpp"
#include "aircoh/finite_beams.hpp"
#include "aircoh/gridlab.hpp"
#include "aircoh/simd.hpp"
#include "aircoh/table_io.hpp"

namespace aircoh::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using grid::FieldTable;
using grid::GridSpec;
using io::Column;

struct RunConfig {
  std::string command;
  std::string family = "infinite";
  std::string base = "infinite";
  double sigma = 0.5;
  double alpha = 1.0;
  double beta = 0.5;
  double a = 100.0;
  double b = 4.0;
  double f_amp = 0.05;
  double f_width = 1.0;
  double z = 0.0;
  double from = -15.0;
  double to = 15.0;
  std::size_t n = 601;
  double rel_tol = quad::kDefaultFieldTol;
  std::string out;
  std::string outdir = ".";
  std::string figure;
  std::optional<unsigned> threads;
  std::string simd = "auto";
  std::string config;
};

json config_json(const RunConfig& c, bool beam, bool grid_opts, bool z_opt) {
  json j;
  if (beam) {
    j["family"] = c.family;
    j["base"] = c.base;
    j["sigma"] = c.sigma;
    j["alpha"] = c.alpha;
    j["beta"] = c.beta;
    j["a"] = c.a;
    j["b"] = c.b;
    j["f_amp"] = c.f_amp;
    j["f_width"] = c.f_width;
  }
  if (z_opt) j["z"] = c.z;
  if (grid_opts) {
    j["from"] = c.from;
    j["to"] = c.to;
    j["n"] = c.n;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Validation and model construction.

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

void check_finite(double v, const char* name) { require(std::isfinite(v), std::string("--") + name + " must be finite"); }

void validate_common(const RunConfig& c) {
  require(c.rel_tol > 1e-14 && c.rel_tol < 1e-2, "--rel-tol must lie in (1e-14, 1e-2)");
  if (c.threads) require(*c.threads >= 1 && *c.threads <= 1024, "--threads must lie in [1, 1024]");
}

void validate_grid(const RunConfig& c) {
  check_finite(c.from, "from");
  check_finite(c.to, "to");
  require(c.from < c.to, "malformed range: --from must be less than --to");
  require(c.n >= 2, "--n must be at least 2");
  require(c.n <= 4'000'000, "--n is too large");
}

std::shared_ptr<const CsdModel> make_model(const RunConfig& c, const std::string& family) {
  if (family == "infinite") {
    require(c.sigma > 1e-6 && c.sigma <= kSigmaCap, "--sigma must lie in (1e-6, 1e3]");
    return std::make_shared<InfiniteBeam>(SpreadParams(c.sigma));
  }
  if (family == "type1") return finite::type1_beam(finite::TypeIParams(c.alpha, c.beta));
  if (family == "type2") return finite::type2_beam(finite::TypeIIParams(c.a, c.b));
  if (family == "gauge") {
    require(c.base != "gauge", "--base cannot be gauge");
    return std::make_shared<GaugeBeam>(make_model(c, c.base), GaugeParams(c.f_amp, c.f_width));
  }
  throw DomainError("unknown family '" + family + "'");
}

json model_json(const CsdModel& m) {
  json j;
  j["family"] = m.family();
  for (const auto& [k, v] : m.parameters()) j["parameters"][k] = v;
  return j;
}

Parallel make_parallel(const RunConfig& c) {
  if (c.threads) return Parallel(*c.threads);
  if (const char* env = std::getenv("AIRCOH_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    require(end && *end == '\0' && v >= 1 && v <= 1024, "AIRCOH_THREADS must be an integer in [1, 1024]");
    return Parallel(static_cast<unsigned>(v));
  }
  return Parallel::hardware();
}

// ---------------------------------------------------------------------------
// Output handling.

/// Writes files atomically (temporary + rename) and removes everything it
/// wrote when the run fails.
class Sink {
 public:
  void emit(const fs::path& path, const std::string& content) {
    if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      if (!os) throw DomainError("cannot open '" + tmp.string() + "' for writing");
      os << content;
      if (!os) throw DomainError("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, path);
    written_.push_back(path);
  }

  void claim(const fs::path& path) { claimed_.push_back(path); }

  void rollback() noexcept {
    std::error_code ec;
    for (const auto& p : written_) fs::remove(p, ec);
    for (const auto& p : claimed_) {
      fs::remove(p, ec);
      fs::remove(p.string() + ".tmp", ec);
    }
  }

  const std::vector<fs::path>& written() const noexcept { return written_; }

 private:
  std::vector<fs::path> written_;
  std::vector<fs::path> claimed_;
};

fs::path sidecar_path(const fs::path& csv) {
  fs::path p = csv;
  if (p.extension() == ".csv") return p.replace_extension(".json");
  return fs::path(csv.string() + ".json");
}

std::vector<double> real_values(const FieldTable& t) {
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) v[i] = t.real(i);
  return v;
}

std::vector<double> imag_values(const FieldTable& t) {
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) v[i] = t.values[i].imag();
  return v;
}

std::vector<double> coherent_intensity(const GridSpec& g, double z) {
  const double s = specfun::ballistic_shift(z);
  std::vector<double> v(g.count());
  for (std::size_t i = 0; i < g.count(); ++i) {
    const double ai = specfun::airy_ai(g.at(i) - s);
    v[i] = ai * ai;
  }
  return v;
}

std::vector<double> coherent_slice(const GridSpec& g, double z) {
  const double s = specfun::ballistic_shift(z);
  std::vector<double> v(g.count());
  for (std::size_t i = 0; i < g.count(); ++i) v[i] = specfun::airy_ai(g.at(i) - s) * specfun::airy_ai(-g.at(i) - s);
  return v;
}

json optional_landmarks(const FieldTable& t) {
  try {
    const auto lm = grid::landmark_metrics(t);
    return {{"peak_x", lm.peak_x}, {"peak_val", lm.peak_val}, {"fwhm", lm.fwhm}};
  } catch (const LandmarkError& e) {
    return {{"error", e.what()}};
  }
}

// ---------------------------------------------------------------------------
// Products shared by the single commands and the figure presets.

struct Product {
  std::vector<Column> columns;
  json summary;
};

Product intensity_product(const CsdModel& m, const GridSpec& g, double z, const Parallel& par, double tol,
                          bool with_coherent) {
  const FieldTable it = grid::intensity_profile(m, g, z, par, tol);
  const FieldTable ref = grid::shifted_input_intensity(m, g, z, par, tol);
  Product p;
  p.columns = {{"x", g.values()}, {"intensity", real_values(it)}, {"shifted_input", real_values(ref)}};
  if (with_coherent) p.columns.push_back({"coherent", coherent_intensity(g, z)});
  p.summary["landmarks"] = optional_landmarks(it);
  p.summary["lobe_contrast"] = grid::lobe_contrast(it);
  p.summary["relative_rms_vs_shifted_input"] = grid::relative_rms(it, ref);
  return p;
}

Product slice_product(const CsdModel& m, const GridSpec& g, double z, const Parallel& par, double tol,
                      bool with_coherent) {
  const FieldTable sl = grid::antidiagonal_slice(m, g, z, par, tol);
  const FieldTable ref = grid::shifted_input_slice(m, g, z, par, tol);
  Product p;
  p.columns = {{"x", g.values()},
               {"w0_re", real_values(sl)},
               {"w0_im", imag_values(sl)},
               {"shifted_re", real_values(ref)},
               {"shifted_im", imag_values(ref)}};
  if (with_coherent) p.columns.push_back({"coherent", coherent_slice(g, z)});
  p.summary["relative_rms_vs_shifted_input"] = grid::relative_rms(sl, ref);
  return p;
}

Product density_product(const CsdModel& m, const GridSpec& g, double z, const Parallel& par, double tol) {
  const FieldTable map = grid::density_map(m, g, g, z, par, tol);
  Product p;
  p.columns = io::table_columns(map, {"x", "xp"}, "w0");
  p.summary["off_diagonal_mass_band_2"] = grid::off_diagonal_mass(map, 2.0);
  return p;
}

json overlap_json(const finite::OverlapReport& r) {
  return {{"z", r.z},
          {"eps_numeric", r.eps_numeric},
          {"eps_closed_paper", r.eps_closed_paper},
          {"eps_closed_derived", r.eps_closed_derived},
          {"discrepancy_flag", r.discrepancy_flag},
          {"matches", finite::branch_name(finite::adjudicate(r))}};
}

// ---------------------------------------------------------------------------
// Commands. Each returns the CSV text and a summary for the sidecar.

struct Single {
  std::string csv;
  json summary;
};

Single cmd_airy(const RunConfig& c, const Parallel& par) {
  validate_grid(c);
  const GridSpec g(c.from, c.to, c.n);
  const FieldTable t = grid::eval_profile([](double x) { return specfun::airy_ai(x); }, g, par);
  return {io::to_csv({{"x", g.values()}, {"ai", real_values(t)}}), json::object()};
}

Single cmd_intensity(const RunConfig& c, const Parallel& par, json& model) {
  validate_grid(c);
  check_finite(c.z, "z");
  const auto m = make_model(c, c.family);
  model = model_json(*m);
  const Product p = intensity_product(*m, GridSpec(c.from, c.to, c.n), c.z, par, c.rel_tol, false);
  return {io::to_csv(p.columns), p.summary};
}

Single cmd_csd_slice(const RunConfig& c, const Parallel& par, json& model) {
  validate_grid(c);
  check_finite(c.z, "z");
  const auto m = make_model(c, c.family);
  model = model_json(*m);
  const Product p = slice_product(*m, GridSpec(c.from, c.to, c.n), c.z, par, c.rel_tol, false);
  return {io::to_csv(p.columns), p.summary};
}

Single cmd_density(const RunConfig& c, const Parallel& par, json& model) {
  validate_grid(c);
  check_finite(c.z, "z");
  const auto m = make_model(c, c.family);
  model = model_json(*m);
  const Product p = density_product(*m, GridSpec(c.from, c.to, c.n), c.z, par, c.rel_tol);
  return {io::to_csv(p.columns), p.summary};
}

Single cmd_flow(const RunConfig& c, const Parallel& par, json& model) {
  validate_grid(c);
  check_finite(c.z, "z");
  require(c.family == "infinite", "flow is available for the infinite family only");
  const auto m = make_model(c, c.family);
  model = model_json(*m);
  const GridSpec g(c.from, c.to, c.n);
  const FieldTable i0 = grid::shifted_input_intensity(*m, g, c.z, par, c.rel_tol);
  std::vector<double> jx(g.count()), jz(g.count());
  for (std::size_t k = 0; k < g.count(); ++k) {
    jx[k] = c.z * i0.real(k);
    jz[k] = 2.0 * i0.real(k);
  }
  return {io::to_csv({{"x", g.values()}, {"jx", jx}, {"jz", jz}}), json::object()};
}

Single cmd_overlap(const RunConfig& c, json& model) {
  validate_grid(c);
  require(c.family == "type1" || c.family == "type2", "overlap is defined for the type1 and type2 families");
  const GridSpec g(c.from, c.to, c.n);
  std::vector<finite::OverlapReport> rows;
  json summary;
  if (c.family == "type1") {
    const finite::TypeIParams p(c.alpha, c.beta);
    model = model_json(*finite::type1_beam(p));
    for (std::size_t i = 0; i < g.count(); ++i) rows.push_back(finite::overlap_report(p, g.at(i)));
    summary["critical_distance"] = finite::critical_distance_type1(p);
  } else {
    const finite::TypeIIParams p(c.a, c.b);
    model = model_json(*finite::type2_beam(p));
    for (std::size_t i = 0; i < g.count(); ++i) rows.push_back(finite::overlap_report(p, g.at(i)));
    summary["critical_distance_printed"] = finite::critical_distance_type2(p);
    summary["critical_distance_derived"] = finite::critical_distance_type2_derived(p);
    summary["headline_values"] = {{"exp(-1/4)", std::exp(-0.25)}, {"exp(-1)", std::exp(-1.0)}};
  }
  Column z{"z", {}}, en{"eps_numeric", {}}, ep{"eps_closed_paper", {}}, ed{"eps_closed_derived", {}},
      fl{"discrepancy_flag", {}};
  std::set<std::string> branches;
  for (const auto& r : rows) {
    z.values.push_back(r.z);
    en.values.push_back(r.eps_numeric);
    ep.values.push_back(r.eps_closed_paper);
    ed.values.push_back(r.eps_closed_derived);
    fl.values.push_back(r.discrepancy_flag ? 1.0 : 0.0);
    const auto br = finite::adjudicate(r);
    if (br != finite::Branch::kBoth) branches.insert(finite::branch_name(br));
    summary["rows"].push_back(overlap_json(r));
  }
  summary["adjudication"] = branches.size() == 1 ? json(*branches.begin()) : json(std::vector(branches.begin(), branches.end()));
  return {io::to_csv({z, en, ep, ed, fl}), summary};
}

// ---------------------------------------------------------------------------
// Figure presets.

std::string tag(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

json figure_bundle(const std::string& id, const RunConfig& c, const Parallel& par, const fs::path& dir, Sink& sink) {
  json j;
  j["figure"] = id;
  auto emit = [&](const std::string& name, const Product& p, json extra) {
    sink.emit(dir / name, io::to_csv(p.columns));
    extra["file"] = name;
    extra["summary"] = p.summary;
    j["files"].push_back(extra);
  };
  const GridSpec profile(-15.0, 15.0, 601);
  const GridSpec wide(-15.0, 25.0, 801);
  const GridSpec map(-12.0, 12.0, 241);
  j["grids"] = {{"profile", {profile.start(), profile.stop(), profile.count()}},
                {"wide_profile", {wide.start(), wide.stop(), wide.count()}},
                {"density", {map.start(), map.stop(), map.count()}}};

  if (id == "fig1" || id == "fig2") {
    const double sigmas[] = {1e-3, 0.1, 0.5, 5.0};
    const double zs[] = {0.0, 6.0};
    j["note"] = "sigma = 1e-3 is the coherent reference";
    for (double s : sigmas) {
      const InfiniteBeam m{SpreadParams(s)};
      for (double z : zs) {
        const std::string stem = id + "_sigma" + tag(s) + "_z" + tag(z);
        const json params = {{"family", "infinite"}, {"sigma", s}, {"z", z}};
        if (id == "fig1") {
          emit(stem + "_intensity.csv", intensity_product(m, profile, z, par, c.rel_tol, false), params);
          emit(stem + "_slice.csv", slice_product(m, profile, z, par, c.rel_tol, false), params);
        } else {
          emit(stem + "_density.csv", density_product(m, map, z, par, c.rel_tol), params);
        }
      }
    }
    return j;
  }

  const double zs[] = {0.0, 4.0, 8.0};
  const bool type1 = (id == "fig3" || id == "fig4");
  const bool intensity = (id == "fig3" || id == "fig5");
  std::vector<std::shared_ptr<KernelBeam>> beams;
  std::vector<json> params;
  if (type1) {
    for (double beta : {0.5, 24.5}) {
      const finite::TypeIParams p(1.0, beta);
      beams.push_back(finite::type1_beam(p));
      params.push_back({{"family", "type1"}, {"alpha", 1.0}, {"beta", beta}});
    }
  } else {
    j["note"] = "parameters follow the body text (b = 4, a in {100, 4}); the caption lists a = 4 with b = 1 and b = 5";
    for (double a : {100.0, 4.0}) {
      const finite::TypeIIParams p(a, 4.0);
      beams.push_back(finite::type2_beam(p));
      params.push_back({{"family", "type2"}, {"a", a}, {"b", 4.0}});
    }
  }
  for (std::size_t k = 0; k < beams.size(); ++k) {
    const std::string pstem = type1 ? "_beta" + tag(params[k]["beta"].get<double>())
                                    : "_a" + tag(params[k]["a"].get<double>());
    for (double z : zs) {
      json pz = params[k];
      pz["z"] = z;
      const finite::OverlapReport r = type1
                                          ? finite::overlap_report(finite::TypeIParams(1.0, params[k]["beta"]), z)
                                          : finite::overlap_report(finite::TypeIIParams(params[k]["a"], 4.0), z);
      pz["overlap"] = overlap_json(r);
      const std::string stem = id + pstem + "_z" + tag(z);
      if (intensity) {
        emit(stem + "_intensity.csv", intensity_product(*beams[k], wide, z, par, c.rel_tol, true), pz);
      } else {
        emit(stem + "_slice.csv", slice_product(*beams[k], profile, z, par, c.rel_tol, true), pz);
      }
    }
  }
  return j;
}

// ---------------------------------------------------------------------------
// Option wiring.

void add_common(CLI::App* s, RunConfig& c) {
  s->add_option("--threads", c.threads, "Worker threads (default: AIRCOH_THREADS, else all cores)");
  s->add_option("--simd", c.simd, "Kernel backend")->check(CLI::IsMember({"auto", "scalar", "avx2", "neon"}));
  s->add_option("--rel-tol", c.rel_tol, "Relative tolerance of grid evaluations")->capture_default_str();
  s->add_option("--config", c.config, "Config file with 'key = value' lines");
}

void add_output(CLI::App* s, RunConfig& c) {
  s->add_option("--out", c.out, "Output CSV path; the sidecar goes next to it as .json");
}

void add_grid(CLI::App* s, RunConfig& c) {
  s->add_option("--from", c.from, "Grid start")->capture_default_str();
  s->add_option("--to", c.to, "Grid stop")->capture_default_str();
  s->add_option("--n", c.n, "Grid points")->capture_default_str();
}

void add_beam(CLI::App* s, RunConfig& c) {
  s->add_option("--family", c.family, "Beam family")
      ->check(CLI::IsMember({"infinite", "type1", "type2", "gauge"}))
      ->capture_default_str();
  s->add_option("--base", c.base, "Base family of a gauge beam")
      ->check(CLI::IsMember({"infinite", "type1", "type2"}))
      ->capture_default_str();
  s->add_option("--sigma", c.sigma, "Spread width (infinite)")->capture_default_str();
  s->add_option("--alpha", c.alpha, "Type-I alpha")->capture_default_str();
  s->add_option("--beta", c.beta, "Type-I beta")->capture_default_str();
  s->add_option("--a", c.a, "Type-II a")->capture_default_str();
  s->add_option("--b", c.b, "Type-II b")->capture_default_str();
  s->add_option("--f-amp", c.f_amp, "Gauge amplitude")->capture_default_str();
  s->add_option("--f-width", c.f_width, "Gauge spectral width")->capture_default_str();
}

void add_z(CLI::App* s, RunConfig& c) { s->add_option("--z", c.z, "Propagation distance")->capture_default_str(); }

/// Appends config-file entries for every option not given on the command
/// line, so flags win over the file and the file wins over defaults.
std::vector<std::string> merge_config(const std::vector<std::string>& args, CLI::App& app) {
  if (args.empty()) return args;
  CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(args.front());
  } catch (const CLI::OptionNotFound&) {
    return args;
  }
  std::string path;
  std::set<std::string> given;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) continue;
    const auto eq = a.find('=');
    const std::string name = a.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
    given.insert(name);
    if (name == "config") {
      if (eq != std::string::npos) {
        path = a.substr(eq + 1);
      } else if (i + 1 < args.size()) {
        path = args[i + 1];
      }
    }
  }
  if (path.empty()) return args;
  std::vector<std::string> merged = args;
  for (const auto& [key, value] : io::read_config(path)) {
    if (key == "config" || key == "help" || !sub->get_option_no_throw("--" + key)) {
      throw DomainError("config file: unknown key '" + key + "' for command '" + args.front() + "'");
    }
    if (given.count(key)) continue;
    merged.push_back("--" + key);
    merged.push_back(value);
  }
  return merged;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partially coherent Airy beams: CSD evaluation, overlap adjudication and figure datasets", "aircoh"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::map<std::string, RunConfig> cfg;
  auto sub = [&](const std::string& name, const std::string& help) {
    RunConfig& c = cfg[name];
    c.command = name;
    return std::pair<CLI::App*, RunConfig*>{app.add_subcommand(name, help), &c};
  };

  {
    auto [s, c] = sub("airy", "Tabulate Ai(x)");
    add_grid(s, *c);
    add_output(s, *c);
    add_common(s, *c);
  }
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"intensity", "Intensity profile I(x, z) with the shifted input reference"},
           {"csd-slice", "Anti-diagonal amplitude W0(x, -x, z) with the shifted input reference"},
           {"density", "Density map Re W0(x, x', z) on a square grid"},
           {"flow", "Energy flow (jx, jz) of the infinite-energy beam"}}) {
    auto [s, c] = sub(name, help);
    if (name == "density") {
      c->from = -12.0;
      c->to = 12.0;
      c->n = 241;
    }
    add_beam(s, *c);
    add_z(s, *c);
    add_grid(s, *c);
    add_output(s, *c);
    add_common(s, *c);
  }
  {
    auto [s, c] = sub("overlap", "Overlap with the shifted input CSD over a z grid, with both closed forms");
    c->family = "type1";
    c->from = 0.0;
    c->to = 8.0;
    c->n = 9;
    add_beam(s, *c);
    add_grid(s, *c);
    add_output(s, *c);
    add_common(s, *c);
  }
  {
    auto [s, c] = sub("figure", "Dataset bundle for one figure preset");
    s->add_option("id", c->figure, "Figure id")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"}));
    s->add_option("--outdir", c->outdir, "Output directory")->capture_default_str();
    add_common(s, *c);
  }

  std::vector<std::string> argv;
  try {
    argv = merge_config(args, app);
  } catch (const Error& e) {
    err << "aircoh: error: " << e.what() << '\n';
    return kUsage;
  }
  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  RunConfig& c = cfg.at(chosen->get_name());
  Sink sink;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    validate_common(c);
    if (c.simd != "auto") simd::set_backend(simd::parse_backend(c.simd));
    const Parallel par = make_parallel(c);

    json side;
    side["schema_version"] = kSidecarSchema;
    side["library_version"] = kVersion;
    side["command"] = c.command;
    side["tolerances"] = {{"grid_rel_tol", c.rel_tol},
                          {"point_rel_tol", quad::kDefaultScalarTol},
                          {"overlap_rel_tol", finite::kOverlapTol},
                          {"adjudication_rel_tol", finite::kAdjudicationTol}};
    side["threads"] = par.threads();
    side["simd_backend"] = std::string(simd::backend_name(simd::active_backend()));
    if (!c.config.empty()) side["config_file"] = c.config;

    fs::path sidecar;
    if (c.command == "figure") {
      const fs::path dir = c.outdir;
      sidecar = dir / (c.figure + ".json");
      sink.claim(sidecar);
      side["bundle"] = figure_bundle(c.figure, c, par, dir, sink);
      side["parameters"] = {{"id", c.figure}, {"outdir", c.outdir}};
    } else {
      const fs::path path = c.out.empty() ? fs::path(c.command + ".csv") : fs::path(c.out);
      sidecar = sidecar_path(path);
      sink.claim(path);
      sink.claim(sidecar);
      json model;
      Single r;
      const bool beam = c.command != "airy";
      if (c.command == "airy") {
        r = cmd_airy(c, par);
      } else if (c.command == "intensity") {
        r = cmd_intensity(c, par, model);
      } else if (c.command == "csd-slice") {
        r = cmd_csd_slice(c, par, model);
      } else if (c.command == "density") {
        r = cmd_density(c, par, model);
      } else if (c.command == "flow") {
        r = cmd_flow(c, par, model);
      } else {
        r = cmd_overlap(c, model);
      }
      sink.emit(path, r.csv);
      side["parameters"] = config_json(c, beam, true, beam && c.command != "overlap");
      if (!model.is_null()) side["model"] = model;
      side["summary"] = r.summary;
      side["output"] = path.string();
    }
    side["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    sink.emit(sidecar, side.dump(2) + "\n");
    return kOk;
  } catch (const GridEvalError& e) {
    sink.rollback();
    err << "aircoh: numerical failure: " << e.what() << '\n';
    return e.numerical() ? kNumerical : kUsage;
  } catch (const ConvergenceError& e) {
    sink.rollback();
    err << "aircoh: numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const UndefinedValueError& e) {
    sink.rollback();
    err << "aircoh: numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const LandmarkError& e) {
    sink.rollback();
    err << "aircoh: numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const DomainError& e) {
    sink.rollback();
    err << "aircoh: error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    sink.rollback();
    err << "aircoh: error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace aircoh::cli
