#pragma once

// Method-of-lines driver: fixed-step classical RK4 with observers.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "speclab/error.hpp"
#include "speclab/fourier.hpp"

namespace speclab {

/// Anything RK4 can advance: a copyable vector-space element that can report
/// whether its entries are finite.
template <class S>
concept OdeState = std::copyable<S> && requires(S a, const S b, double s) {
  { a += b };
  { a *= s };
  { b.all_finite() } -> std::convertible_to<bool>;
};

struct StepControl {
  double dt = 0.0;  // <= 0 selects default_dt
  double t_end = 0.0;
  double cfl = 0.5;
};

/// cfl * 2 pi / ((2N+1) V), V = max(1, speed_estimate).
inline double default_dt(int n, double speed_estimate, double cfl = 0.5) {
  const double v = std::max(1.0, speed_estimate);
  return cfl * kTwoPi / ((2 * n + 1) * v);
}

template <OdeState S, class Rhs>
  requires std::invocable<Rhs&, const S&>
S rk4_step(const S& state, Rhs&& rhs, double dt) {
  require(dt > 0.0, "rk4_step: dt must be positive");
  auto eval = [&](const S& s) {
    S k = rhs(s);
    if (!k.all_finite())
      throw NumericalBlowup(std::numeric_limits<double>::quiet_NaN(),
                            "rk4_step: non-finite tendency");
    return k;
  };
  auto shifted = [&](const S& k, double c) {
    S s = k;
    s *= c;
    s += state;
    return s;
  };
  const S k1 = eval(state);
  const S k2 = eval(shifted(k1, 0.5 * dt));
  const S k3 = eval(shifted(k2, 0.5 * dt));
  const S k4 = eval(shifted(k3, dt));
  S incr = k1;
  S tmp = k2;
  tmp *= 2.0;
  incr += tmp;
  tmp = k3;
  tmp *= 2.0;
  incr += tmp;
  incr += k4;
  incr *= dt / 6.0;
  S next = state;
  next += incr;
  return next;
}

/// A diagnostic table: one row per observation time, first column is t.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  const std::vector<double>& last() const { return rows.back(); }
  double value(std::size_t row, const std::string& column) const {
    auto it = std::find(columns.begin(), columns.end(), column);
    require(it != columns.end(), "Table: no column '" + column + "'");
    return rows.at(row)[static_cast<std::size_t>(it - columns.begin())];
  }
  std::vector<double> column(const std::string& name) const {
    std::vector<double> out;
    for (std::size_t r = 0; r < rows.size(); ++r) out.push_back(value(r, name));
    return out;
  }
};

struct RunRecord {
  std::map<std::string, Table> tables;
  bool blew_up = false;
  double blowup_time = std::numeric_limits<double>::quiet_NaN();
  double t_final = 0.0;
  long steps = 0;
};

/// Fires every `interval` time units (and always at t = 0 and t = t_end);
/// interval <= 0 means only the endpoints. A nonempty `times` list replaces
/// that schedule: the observer fires exactly at those times (within [0, t_end]).
/// `columns` excludes the leading t; fn may return several rows at once by
/// returning a multiple of columns.size() values.
template <class S>
struct Observer {
  std::string name;
  std::vector<std::string> columns;
  double interval = 0.0;
  std::function<std::vector<double>(double, const S&)> fn;
  std::vector<double> times = {};
};

/// Advances `state` to control.t_end. Steps land exactly on observation times
/// and on t_end. A non-finite tendency stops the run and is recorded, leaving
/// `state` at the last finite value.
template <OdeState S, class Rhs>
RunRecord integrate(S& state, Rhs&& rhs, const StepControl& control,
                    const std::vector<Observer<S>>& observers, double dt) {
  require(control.t_end >= 0.0, "integrate: t_end must be nonnegative");
  require(dt > 0.0, "integrate: dt must be positive");
  RunRecord record;
  const double eps = 1e-12 * std::max(1.0, control.t_end);
  constexpr double never = std::numeric_limits<double>::infinity();
  std::vector<double> next_time(observers.size(), never);
  std::vector<double> last_time(observers.size(), -1.0);
  std::vector<std::vector<double>> schedule(observers.size());
  std::vector<std::size_t> cursor(observers.size(), 0);
  for (std::size_t i = 0; i < observers.size(); ++i) {
    Table table;
    table.columns.push_back("t");
    table.columns.insert(table.columns.end(), observers[i].columns.begin(),
                         observers[i].columns.end());
    record.tables[observers[i].name] = std::move(table);
    for (double t : observers[i].times)
      if (t >= -eps && t <= control.t_end + eps)
        schedule[i].push_back(std::clamp(t, 0.0, control.t_end));
    std::sort(schedule[i].begin(), schedule[i].end());
    schedule[i].erase(std::unique(schedule[i].begin(), schedule[i].end(),
                                  [&](double a, double b) { return b - a <= eps; }),
                      schedule[i].end());
  }
  auto observe = [&](std::size_t i, double t) {
    const auto vals = observers[i].fn(t, state);
    const std::size_t width = observers[i].columns.size();
    auto& rows = record.tables[observers[i].name].rows;
    if (width == 0) {
      rows.push_back({t});
    } else {
      require(vals.size() % width == 0, "integrate: observer returned a partial row");
      for (std::size_t off = 0; off < vals.size(); off += width) {
        std::vector<double> row{t};
        row.insert(row.end(), vals.begin() + static_cast<std::ptrdiff_t>(off),
                   vals.begin() + static_cast<std::ptrdiff_t>(off + width));
        rows.push_back(std::move(row));
      }
    }
    last_time[i] = t;
  };
  // Schedules the next firing strictly after time t.
  auto advance = [&](std::size_t i, double t) {
    if (!observers[i].times.empty()) {
      while (cursor[i] < schedule[i].size() && schedule[i][cursor[i]] <= t + eps) ++cursor[i];
      next_time[i] = cursor[i] < schedule[i].size() ? schedule[i][cursor[i]] : never;
      return;
    }
    const double step = observers[i].interval > 0.0 ? observers[i].interval : control.t_end;
    if (step <= 0.0) {
      next_time[i] = never;
      return;
    }
    double nt = next_time[i] == never ? step : next_time[i];
    while (nt <= t + eps) nt += step;
    nt = std::min(nt, control.t_end);
    next_time[i] = nt <= t + eps ? never : nt;
  };
  for (std::size_t i = 0; i < observers.size(); ++i) {
    const bool timed = !observers[i].times.empty();
    if (!timed || (!schedule[i].empty() && schedule[i].front() <= eps)) observe(i, 0.0);
    advance(i, 0.0);
  }

  double t = 0.0;
  while (control.t_end - t > eps) {
    double target = control.t_end;
    for (double nt : next_time) target = std::min(target, nt);
    double h = std::min(dt, target - t);
    if (target - (t + h) < eps) h = target - t;
    try {
      state = rk4_step(state, rhs, h);
    } catch (const NumericalBlowup&) {
      record.blew_up = true;
      record.blowup_time = t;
      record.t_final = t;
      return record;
    }
    ++record.steps;
    t = (std::abs(target - (t + h)) <= eps) ? target : t + h;
    for (std::size_t i = 0; i < observers.size(); ++i) {
      if (t >= next_time[i] - eps) {
        observe(i, t);
        advance(i, t);
      }
    }
  }
  for (std::size_t i = 0; i < observers.size(); ++i)
    if (observers[i].times.empty() && last_time[i] != t) observe(i, t);
  record.t_final = t;
  return record;
}

template <OdeState S, class Rhs>
RunRecord integrate(S& state, Rhs&& rhs, const StepControl& control,
                    const std::vector<Observer<S>>& observers = {}) {
  require(control.dt > 0.0, "integrate: StepControl.dt must be set (see default_dt)");
  return integrate(state, std::forward<Rhs>(rhs), control, observers, control.dt);
}

}  // namespace speclab
