#pragma once

// The named experiments. run_experiment is pure: it returns file contents and
// leaves writing them (and the manifest) to the caller.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "speclab/burgers.hpp"
#include "speclab/diagnostics.hpp"
#include "speclab/euler2d.hpp"
#include "speclab/fourier.hpp"
#include "speclab/harness/config.hpp"
#include "speclab/harness/output.hpp"
#include "speclab/harness/pool.hpp"
#include "speclab/isentropic.hpp"
#include "speclab/smoothing.hpp"
#include "speclab/timestepping.hpp"
#include "speclab/transport.hpp"

namespace speclab::harness {

inline constexpr const char* kVersion = "1.0.0";

struct ExperimentInfo {
  std::string name;
  std::string description;
  std::vector<std::string> variants;  // first entry is the default
  std::vector<std::string> initials;  // first entry is the default
  ExperimentConfig defaults;
};

namespace detail {

inline ExperimentConfig make_defaults(std::string name, std::string variant, std::vector<int> ns,
                                      double t_end, double interval, std::string initial,
                                      double amplitude) {
  ExperimentConfig c;
  c.experiment = std::move(name);
  c.variant = std::move(variant);
  c.n_list = std::move(ns);
  c.t_end = t_end;
  c.observe_interval = interval;
  c.initial = std::move(initial);
  c.amplitude = amplitude;
  return c;
}

}  // namespace detail

inline const std::vector<ExperimentInfo>& registry() {
  using detail::make_defaults;
  static const std::vector<ExperimentInfo> experiments = [] {
    std::vector<ExperimentInfo> r;
    const std::vector<std::string> linear_variants{"b-model", "spectral", "pseudospectral",
                                                   "two_thirds"};
    const std::vector<std::string> linear_initials{"under-resolved", "cubic-decay"};
    {
      auto c = make_defaults("linear-weak-instability", "b-model", {100, 200, 400}, 1.0, 0.05,
                             "under-resolved", 1.0);
      c.snapshots = {0.0, 0.5, 1.0};
      r.push_back({c.experiment, "sin x transport, under-resolved data: growth of max |b_k| with N",
                   linear_variants, linear_initials, c});
    }
    {
      auto c = make_defaults("linear-resolved-decay", "b-model", {100, 200, 400, 800}, 3.0, 0.1,
                             "cubic-decay", 1.0);
      c.snapshots = {0.0, 1.0, 2.0, 3.0};
      r.push_back({c.experiment, "sin x transport, k^-3 data: decay of the top mode b_N(t)",
                   linear_variants, {"cubic-decay", "under-resolved"}, c});
    }
    r.push_back({"burgers-smooth-rate", "Burgers before the shock: error against the exact solution",
                 {"spectral", "two_thirds"}, {"sine"},
                 make_defaults("burgers-smooth-rate", "spectral", {16, 32, 64}, 1.0, 0.1, "sine",
                               0.5)});
    r.push_back({"burgers-postshock-tv", "Burgers after the shock: max|u_m| TV(u_m)^2 / sqrt(m)",
                 {"two_thirds", "spectral", "sv"}, {"sine"},
                 make_defaults("burgers-postshock-tv", "two_thirds", {64, 128, 256, 512}, 2.0, 0.25,
                               "sine", 1.0)});
    r.push_back({"burgers-sv", "spectral viscosity after the shock: distance to the entropy solution",
                 {"sv"}, {"sine"},
                 make_defaults("burgers-sv", "sv", {64, 128, 256}, 2.0, 0.25, "sine", 1.0)});
    r.push_back({"euler2d-conserve", "2D Euler: energy (spectral) or weighted energy (2/3) budget",
                 {"spectral", "two_thirds", "sv"}, {"shear-layer", "random", "taylor-green"},
                 make_defaults("euler2d-conserve", "spectral", {32}, 2.0, 0.1, "shear-layer", 1.0)});
    r.push_back({"euler2d-taylor-green", "2D Euler: stationarity of the Taylor-Green vortex",
                 {"spectral", "two_thirds", "sv"}, {"taylor-green"},
                 make_defaults("euler2d-taylor-green", "spectral", {32}, 1.0, 0.1, "taylor-green",
                               1.0)});
    r.push_back({"isentropic-entropy", "Lagrangian isentropic system: total entropy budget",
                 {"spectral"}, {"smooth"},
                 make_defaults("isentropic-entropy", "spectral", {64}, 1.0, 0.1, "smooth", 0.1)});
    return r;
  }();
  return experiments;
}

inline std::string registered_names() {
  std::string s;
  for (const auto& e : registry()) s += (s.empty() ? "" : ", ") + e.name;
  return s;
}

inline const ExperimentInfo& find_experiment(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return e;
  throw ConfigError("unknown experiment '" + name + "'; registered: " + registered_names());
}

inline ExperimentConfig default_config(const std::string& name) {
  return find_experiment(name).defaults;
}

inline void validate(const ExperimentConfig& c) {
  const auto& info = find_experiment(c.experiment);
  auto one_of = [](const std::string& key, const std::string& v,
                   const std::vector<std::string>& allowed) {
    if (std::find(allowed.begin(), allowed.end(), v) != allowed.end()) return;
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw ConfigError("'" + key + "' = '" + v + "' is not one of: " + list);
  };
  one_of("variant", c.variant, info.variants);
  one_of("initial", c.initial, info.initials);
  one_of("profile", c.profile, {"mollifier", "sharp"});
  one_of("law", c.law, {"linear", "exp", "gamma"});
  if (c.n_list.empty()) throw ConfigError("'N' must list at least one resolution");
  for (int n : c.n_list)
    if (n < 3 || n > 1 << 16) throw ConfigError("'N' entries must lie in [3, 65536]");
  if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end)) throw ConfigError("'t_end' must be >= 0");
  if (!(c.cfl > 0.0)) throw ConfigError("'cfl' must be positive");
  if (!std::isfinite(c.dt) || !std::isfinite(c.observe_interval))
    throw ConfigError("'dt' and 'observe_interval' must be finite");
  if (c.sv_order < 1) throw ConfigError("'sv_order' must be at least 1");
  if (c.reference_cells < 128) throw ConfigError("'reference_cells' must be at least 128");
  if (c.workers < 0) throw ConfigError("'workers' must be nonnegative");
  if (!(c.gamma > 0.0)) throw ConfigError("'gamma' must be positive");
  if (!std::isfinite(c.amplitude)) throw ConfigError("'amplitude' must be finite");
  if (c.experiment == "burgers-smooth-rate") {
    const double tc = std::abs(c.amplitude) > 0 ? 1.0 / std::abs(c.amplitude)
                                                : std::numeric_limits<double>::infinity();
    if (c.t_end >= tc)
      throw ConfigError("'t_end' must lie before the critical time 1/amplitude = " +
                        csv_number(tc));
  }
}

struct ExperimentResult {
  FileSet files;
  bool blew_up = false;
  std::map<std::string, std::string> notes;  // manifest extras, e.g. blow-up times
};

namespace detail {

inline std::string tag(const ExperimentConfig& c, int n, const std::string& what) {
  return c.experiment + "_N" + std::to_string(n) + "_" + what + ".csv";
}

inline double step_for(const ExperimentConfig& c, int n, double speed) {
  return c.dt > 0.0 ? c.dt : default_dt(n, speed, c.cfl);
}

inline SmoothingProfile two_thirds_profile(const ExperimentConfig& c, int n) {
  return c.profile == "sharp" ? build_sharp_two_thirds(n) : build_mollifier(n);
}

/// Per-resolution output: files plus one summary row.
struct Member {
  FileSet files;
  std::vector<double> summary;
  bool blew_up = false;
  double blowup_time = 0.0;
};

struct Summary {
  std::vector<std::string> columns;
  std::vector<std::string> fit_series;  // summary columns to fit against N
};

// ---------------------------------------------------------------- linear

inline transport::TransportProblem negative_sine(int degree) {
  auto p = transport::TransportProblem::sine(degree);
  p.q = [](double x) { return -std::sin(x); };
  p.dq = [](double x) { return -std::cos(x); };
  p.q_hat *= -1.0;
  return p;
}

inline std::vector<double> mode_rows(const SpectralField& f) {
  std::vector<double> v;
  for (int k = 0; k <= f.degree(); ++k) v.insert(v.end(), {double(k), f[k].real(), f[k].imag()});
  return v;
}

inline std::vector<double> norm_row(const SpectralField& f, const SmoothingProfile& prof) {
  const auto r = norms(f, &prof);
  return {r.l2, *r.weighted_l2, r.linf, r.tv};
}

inline Member run_linear(const ExperimentConfig& c, int n) {
  const auto prof = build_mollifier(n);
  const auto init = c.initial == "cubic-decay" ? transport::cubic_decay_initial(n)
                                               : transport::under_resolved_initial(n);
  const double dt = step_for(c, n, 1.0);
  const StepControl control{dt, c.t_end, c.cfl};
  Member m;
  auto finish = [&](const RunRecord& rec, const transport::ImagModeState& b) {
    m.files[tag(c, n, "modes")] = csv_text(rec.tables.at("modes"));
    m.files[tag(c, n, "norms")] = csv_text(rec.tables.at("norms"));
    m.blew_up = rec.blew_up;
    m.blowup_time = rec.blowup_time;
    m.summary = {double(n), b.max_abs(), b[n], b.norm(), init.norm()};
  };
  if (c.variant == "b-model") {
    using S = transport::ImagModeState;
    S b = init;
    std::vector<Observer<S>> obs{
        {"modes", {"k", "re", "im"}, 0.0,
         [](double, const S& s) { return mode_rows(s.to_field()); }, c.snapshots},
        {"norms", {"l2", "l2_sigma", "linf", "tv"}, c.observe_interval,
         [&](double, const S& s) { return norm_row(s.to_field(), prof); }}};
    const bool fix = c.zero_last_mode;
    if (fix) b[n] = 0.0;
    auto rec = integrate(b, [fix](const S& s) { return transport::rhs_sinx_imag(s, fix); }, control,
                         obs);
    finish(rec, b);
    return m;
  }
  // Full solvers for u_t = (sin x u)_x, i.e. q = -sin x.
  const auto prob = negative_sine(2 * n);
  SpectralField u = init.to_field();
  std::function<SpectralField(const SpectralField&)> rhs;
  if (c.variant == "spectral")
    rhs = [&](const SpectralField& f) { return transport::rhs_spectral(f, prob); };
  else if (c.variant == "pseudospectral")
    rhs = [&](const SpectralField& f) { return transport::rhs_pseudospectral(f, prob); };
  else
    rhs = [&](const SpectralField& f) { return transport::rhs_two_thirds(f, prob, prof); };
  const bool fix = c.zero_last_mode;
  auto fixed_rhs = [&](const SpectralField& f) {
    SpectralField r = rhs(f);
    if (fix) r[n] = r[-n] = 0.0;
    return r;
  };
  if (fix) u[n] = u[-n] = 0.0;
  std::vector<Observer<SpectralField>> obs{
      {"modes", {"k", "re", "im"}, 0.0, [](double, const SpectralField& f) { return mode_rows(f); },
       c.snapshots},
      {"norms", {"l2", "l2_sigma", "linf", "tv"}, c.observe_interval,
       [&](double, const SpectralField& f) { return norm_row(f, prof); }}};
  auto rec = integrate(u, fixed_rhs, control, obs);
  finish(rec, transport::ImagModeState::from_field(u));
  return m;
}

// ---------------------------------------------------------------- Burgers

inline const std::vector<std::string>& burgers_columns() {
  static const std::vector<std::string> cols{"l2",  "l2_sigma", "l6", "maxabs",
                                             "tv", "tv_product_over_sqrt_m", "energy_production"};
  return cols;
}

inline std::vector<double> burgers_row(const SpectralField& u, const std::string& variant,
                                       const SmoothingProfile& prof) {
  const SpectralField um = variant == "two_thirds" ? apply_profile(u, prof) : u;
  const auto r = norms(um, nullptr);
  const auto inst = burgers::instability_functional(um);
  return {l2_norm(u), weighted_l2(u, prof), r.l6, r.linf, r.tv, inst.product_over_sqrt_m,
          burgers::energy_production(um, prof)};
}

struct BurgersRun {
  SpectralField u;
  RunRecord record;
};

inline BurgersRun run_burgers_solver(const ExperimentConfig& c, int n) {
  const auto data = burgers::InitialData::sine(c.amplitude);
  const auto prof = two_thirds_profile(c, n);
  const auto sv = build_sv_profile(n, c.sv_order);
  SpectralField u = data.project(n);
  std::function<SpectralField(const SpectralField&)> rhs;
  if (c.variant == "spectral")
    rhs = [](const SpectralField& f) { return burgers::rhs_spectral(f); };
  else if (c.variant == "two_thirds")
    rhs = [&](const SpectralField& f) { return burgers::rhs_two_thirds(f, prof); };
  else
    rhs = [&](const SpectralField& f) { return burgers::rhs_sv(f, sv); };
  const double dt = step_for(c, n, std::abs(c.amplitude));
  std::vector<Observer<SpectralField>> obs{
      {"series", burgers_columns(), c.observe_interval,
       [&](double, const SpectralField& f) { return burgers_row(f, c.variant, prof); }}};
  auto rec = integrate(u, rhs, StepControl{dt, c.t_end, c.cfl}, obs);
  return {std::move(u), std::move(rec)};
}

inline Member run_burgers_smooth(const ExperimentConfig& c, int n) {
  auto run = run_burgers_solver(c, n);
  Member m;
  m.files[tag(c, n, "series")] = csv_text(run.record.tables.at("series"));
  m.blew_up = run.record.blew_up;
  m.blowup_time = run.record.blowup_time;
  const auto data = burgers::InitialData::sine(c.amplitude);
  const double t = run.record.t_final;
  auto exact = [&](const std::vector<double>& xs) {
    return burgers::exact_smooth_solution(data, t, xs);
  };
  const SpectralField um =
      c.variant == "two_thirds" ? apply_profile(run.u, two_thirds_profile(c, n)) : run.u;
  m.summary = {double(n), burgers::l2_error(run.u, exact), burgers::l2_error(um, exact)};
  return m;
}

inline Member run_burgers_postshock(const ExperimentConfig& c, int n) {
  auto run = run_burgers_solver(c, n);
  Member m;
  m.files[tag(c, n, "series")] = csv_text(run.record.tables.at("series"));
  m.blew_up = run.record.blew_up;
  m.blowup_time = run.record.blowup_time;
  const SpectralField um =
      c.variant == "two_thirds" ? apply_profile(run.u, two_thirds_profile(c, n)) : run.u;
  const auto inst = burgers::instability_functional(um);
  m.summary = {double(n), inst.maxabs, inst.tv, inst.product, inst.product_over_sqrt_m};
  return m;
}

inline Member run_burgers_sv(const ExperimentConfig& c, int n,
                             const burgers::EntropyReference& ref) {
  auto run = run_burgers_solver(c, n);
  Member m;
  m.files[tag(c, n, "series")] = csv_text(run.record.tables.at("series"));
  m.blew_up = run.record.blew_up;
  m.blowup_time = run.record.blowup_time;
  m.summary = {double(n), burgers::l2_distance(run.u, ref), total_variation(run.u),
               total_variation(ref.values)};
  return m;
}

// ---------------------------------------------------------------- Euler

inline euler2d::VelocityField2D euler_initial(const ExperimentConfig& c, int n) {
  if (c.initial == "taylor-green") return euler2d::taylor_green(n);
  if (c.initial == "random") return euler2d::random_divergence_free(n, c.seed);
  return euler2d::shear_layer_smooth(n);
}

/// Vorticity on the (2N+1)^2 grid as "x1,x2,omega" rows.
inline std::string vorticity_csv(const euler2d::VelocityField2D& u) {
  const auto w = euler2d::vorticity(u);
  const int pts = w.width();
  const auto vals = euler2d::synthesize(w);
  std::vector<std::vector<double>> rows;
  rows.reserve(vals.size());
  for (int i = 0; i < pts; ++i)
    for (int j = 0; j < pts; ++j)
      rows.push_back({kTwoPi * i / pts, kTwoPi * j / pts,
                      vals[static_cast<std::size_t>(i) * pts + j]});
  return csv_text({"x1", "x2", "omega"}, rows);
}

inline Member run_euler(const ExperimentConfig& c, int n) {
  using V = euler2d::VelocityField2D;
  const auto prof = euler2d::build_radial_mollifier(n);
  const auto sv = euler2d::build_radial_sv(n, c.sv_order);
  V u = euler_initial(c, n);
  const V u0 = u;
  std::function<V(const V&)> rhs;
  if (c.variant == "spectral")
    rhs = [](const V& v) { return euler2d::rhs_spectral(v); };
  else if (c.variant == "two_thirds")
    rhs = [&](const V& v) { return euler2d::rhs_two_thirds(v, prof); };
  else
    rhs = [&](const V& v) { return euler2d::add_sv_filter(euler2d::rhs_spectral(v), v, sv); };
  auto conserved = [&](const V& v) {
    return c.variant == "two_thirds" ? euler2d::weighted_energy(v, prof) : euler2d::energy(v);
  };
  double max_div = 0.0;
  Member m;
  std::vector<Observer<V>> obs{
      {"series", {"energy", "weighted_energy", "enstrophy", "max_divergence"}, c.observe_interval,
       [&](double, const V& v) {
         const double d = euler2d::max_divergence(v);
         max_div = std::max(max_div, d);
         return std::vector<double>{euler2d::energy(v), euler2d::weighted_energy(v, prof),
                                    euler2d::enstrophy(v), d};
       }},
      {"snapshots", {}, 0.0,
       [&](double t, const V& v) {
         m.files[tag(c, n, "vorticity_t" + detail::format_double(t))] = vorticity_csv(v);
         return std::vector<double>{};
       },
       c.snapshots.empty() ? std::vector<double>{c.t_end} : c.snapshots}};
  const double dt = step_for(c, n, euler2d::max_speed(u0));
  auto rec = integrate(u, rhs, StepControl{dt, c.t_end, c.cfl}, obs);
  m.files[tag(c, n, "series")] = csv_text(rec.tables.at("series"));
  m.blew_up = rec.blew_up;
  m.blowup_time = rec.blowup_time;
  const double e0 = conserved(u0), e1 = conserved(u);
  V diff = u;
  diff -= u0;
  m.summary = {double(n), e0, e1, std::abs(e1 - e0) / e0, max_div,
               std::sqrt(euler2d::inner(diff, diff))};
  return m;
}

// ---------------------------------------------------------------- isentropic

inline isentropic::PressureLaw law_of(const ExperimentConfig& c) {
  if (c.law == "linear") return isentropic::PressureLaw::linear();
  if (c.law == "gamma") return isentropic::PressureLaw::gamma_law(c.gamma);
  return isentropic::PressureLaw::exponential();
}

inline Member run_isentropic(const ExperimentConfig& c, int n) {
  using S = isentropic::IsentropicState;
  const auto law = law_of(c);
  const double a = c.amplitude;
  const double base = c.law == "gamma" ? 1.0 : 0.0;  // keep v > 0 for the gamma law
  const std::function<double(double)> u0 = [a](double x) { return a * std::sin(x); };
  const std::function<double(double)> v0 = [a, base](double x) {
    return base + a * std::cos(2 * x);
  };
  S s{coefficients_of(u0, n, 4 * n), coefficients_of(v0, n, 4 * n)};
  std::vector<Observer<S>> obs{{"series", {"l2_u", "l2_v", "total_entropy"}, c.observe_interval,
                                [&](double, const S& x) {
                                  return std::vector<double>{l2_norm(x.u), l2_norm(x.v),
                                                             isentropic::total_entropy(x, law)};
                                }}};
  const double e0 = isentropic::total_entropy(s, law);
  const double dt = step_for(c, n, isentropic::max_sound_speed(s, law));
  auto rec = integrate(s, [&](const S& x) { return isentropic::rhs_spectral(x, law); },
                       StepControl{dt, c.t_end, c.cfl}, obs);
  Member m;
  m.files[tag(c, n, "series")] = csv_text(rec.tables.at("series"));
  m.blew_up = rec.blew_up;
  m.blowup_time = rec.blowup_time;
  const double e1 = isentropic::total_entropy(s, law);
  m.summary = {double(n), e0, e1, std::abs(e1 - e0) / std::abs(e0)};
  if (c.law == "linear") {
    const int pts = 2 * n + 1;
    std::vector<double> xs(pts);
    for (int j = 0; j < pts; ++j) xs[j] = kTwoPi * j / pts;
    const auto [ue, ve] = isentropic::dalembert(u0, v0, rec.t_final, xs);
    const auto un = sample_on_grid(s.u, pts), vn = sample_on_grid(s.v, pts);
    double err = 0.0;
    for (int j = 0; j < pts; ++j)
      err = std::max({err, std::abs(un[j] - ue[j]), std::abs(vn[j] - ve[j])});
    m.summary.push_back(err);
  }
  return m;
}

inline Summary summary_layout(const ExperimentConfig& c) {
  const std::string& e = c.experiment;
  if (e.starts_with("linear"))
    return {{"N", "max_abs_b", "b_N", "norm_b", "norm_b_initial"}, {"max_abs_b"}};
  if (e == "burgers-smooth-rate") return {{"N", "error_uN", "error_um"}, {"error_uN", "error_um"}};
  if (e == "burgers-postshock-tv")
    return {{"N", "maxabs", "tv", "product", "product_over_sqrt_m"}, {"tv"}};
  if (e == "burgers-sv") return {{"N", "l2_error", "tv", "reference_tv"}, {"l2_error"}};
  if (e.starts_with("euler2d"))
    return {{"N", "conserved_initial", "conserved_final", "relative_drift", "max_divergence",
             "l2_deviation"},
            {}};
  Summary s{{"N", "entropy_initial", "entropy_final", "relative_drift"}, {}};
  if (c.law == "linear") s.columns.push_back("dalembert_max_error");
  return s;
}

}  // namespace detail

/// Runs the sweep over c.n_list in a worker pool. Throws ConfigError for an
/// invalid configuration; a blow-up is reported in the result, not thrown.
inline ExperimentResult run_experiment(const ExperimentConfig& c) {
  validate(c);
  std::function<detail::Member(int)> member;
  burgers::EntropyReference reference;
  const std::string& e = c.experiment;
  if (e.starts_with("linear")) {
    member = [&](int n) { return detail::run_linear(c, n); };
  } else if (e == "burgers-smooth-rate") {
    member = [&](int n) { return detail::run_burgers_smooth(c, n); };
  } else if (e == "burgers-postshock-tv") {
    member = [&](int n) { return detail::run_burgers_postshock(c, n); };
  } else if (e == "burgers-sv") {
    reference = burgers::godunov_reference(burgers::InitialData::sine(c.amplitude).u0, c.t_end,
                                           c.reference_cells);
    member = [&](int n) { return detail::run_burgers_sv(c, n, reference); };
  } else if (e.starts_with("euler2d")) {
    member = [&](int n) { return detail::run_euler(c, n); };
  } else {
    member = [&](int n) { return detail::run_isentropic(c, n); };
  }
  const auto members = parallel_map(c.n_list, c.workers, member);

  ExperimentResult result;
  const auto layout = detail::summary_layout(c);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& m = members[i];
    result.files.insert(m.files.begin(), m.files.end());
    rows.push_back(m.summary);
    if (m.blew_up) {
      result.blew_up = true;
      result.notes["blowup_time.N" + std::to_string(c.n_list[i])] = csv_number(m.blowup_time);
    }
  }
  result.files[c.experiment + "_summary.csv"] = csv_text(layout.columns, rows);

  if (!layout.fit_series.empty() && rows.size() >= 3) {
    std::vector<std::vector<double>> fit_rows;
    for (std::size_t s = 0; s < layout.fit_series.size(); ++s) {
      const auto col = static_cast<std::size_t>(
          std::find(layout.columns.begin(), layout.columns.end(), layout.fit_series[s]) -
          layout.columns.begin());
      std::vector<std::pair<double, double>> pairs;
      for (const auto& r : rows) pairs.emplace_back(r[0], std::abs(r[col]));
      try {
        const auto fit = fit_rate(pairs);
        fit_rows.push_back({double(s), fit.slope, fit.residual, double(fit.pairs.size())});
        for (const auto& w : fit.warnings) result.notes["fit_warning." + layout.fit_series[s]] = w;
      } catch (const InvalidArgument& err) {
        result.notes["fit_warning." + layout.fit_series[s]] = err.what();
      }
    }
    std::string text = "series,slope,residual,points\n";
    for (const auto& r : fit_rows)
      text += layout.fit_series[static_cast<std::size_t>(r[0])] + "," + csv_number(r[1]) + "," +
              csv_number(r[2]) + "," + csv_number(r[3]) + "\n";
    result.files[c.experiment + "_rate_fit.csv"] = text;
  }
  return result;
}

}  // namespace speclab::harness
