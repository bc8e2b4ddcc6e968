#include "collapse/horizon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace collapse {

std::string_view to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::expanding: return "expanding";
    case RegionKind::contracting: return "contracting";
    case RegionKind::future_trapped: return "future_trapped";
    case RegionKind::past_trapped: return "past_trapped";
  }
  return "?";
}

namespace {

double expansion_at(const InitialData& data, double r, bool future) {
  const PointGeometry p = evaluate_point(data.at(r));
  return future ? p.theta_plus : p.theta_minus;
}

double bisect(const InitialData& data, double a, double b, double fa, bool future) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = expansion_at(data, mid, future);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

struct RootSet {
  std::vector<HorizonRoot> roots;
  std::vector<double> degenerate;
};

RootSet find_roots(const InitialData& data, const GeometryProfile& prof, bool future) {
  const auto& theta = future ? prof.theta_plus : prof.theta_minus;
  const std::size_t n = prof.size();
  const std::size_t start = prof.center_limit ? 1 : 0;
  double scale = 0.0;
  for (std::size_t i = start; i < n; ++i) scale = std::max(scale, std::abs(theta[i]));
  const double tiny = 1e-8 * scale;

  RootSet out;
  for (std::size_t i = start; i + 1 < n; ++i) {
    const double a = theta[i];
    const double b = theta[i + 1];
    if (a == 0.0) {
      // Exact node zero: a crossing if the neighbors straddle it.
      const double before = i > start ? theta[i - 1] : a;
      if ((before < 0.0 && b > 0.0) || (before > 0.0 && b < 0.0)) {
        out.roots.push_back({prof.r[i], prof.r[i], prof.r[i], b > 0.0 ? 1 : -1});
      } else if (i > start) {
        out.degenerate.push_back(prof.r[i]);
      }
      continue;
    }
    if (b == 0.0) continue;
    if ((a < 0.0) != (b < 0.0)) {
      const double root = bisect(data, prof.r[i], prof.r[i + 1], a, future);
      out.roots.push_back({root, prof.r[i], prof.r[i + 1], b > a ? 1 : -1});
      continue;
    }
    // Tangential approach: a local minimum of |theta| close to zero.
    if (i > start && std::abs(a) <= tiny && std::abs(a) <= std::abs(theta[i - 1]) &&
        std::abs(a) <= std::abs(b)) {
      out.degenerate.push_back(prof.r[i]);
    }
  }
  return out;
}

RegionKind classify(double tp, double tm) {
  if (tp > 0.0 && tm > 0.0) return RegionKind::expanding;
  if (tp < 0.0 && tm < 0.0) return RegionKind::contracting;
  return tp < 0.0 ? RegionKind::future_trapped : RegionKind::past_trapped;
}

bool untrapped_kind(RegionKind k) {
  return k == RegionKind::expanding || k == RegionKind::contracting;
}

}  // namespace

bool HorizonScan::horizon_free() const {
  return future_roots.empty() && past_roots.empty() && degenerate_future.empty() &&
         degenerate_past.empty();
}

std::optional<double> HorizonScan::outermost() const {
  if (!outermost_future) return outermost_past;
  if (!outermost_past) return outermost_future;
  return std::max(*outermost_future, *outermost_past);
}

HorizonScan scan(const InitialData& data, const GeometryProfile& prof) {
  HorizonScan s;
  s.inner_boundary = prof.r.front();
  s.outer_boundary = prof.r.back();
  RootSet fut = find_roots(data, prof, true);
  RootSet past = find_roots(data, prof, false);
  s.future_roots = std::move(fut.roots);
  s.past_roots = std::move(past.roots);
  s.degenerate_future = std::move(fut.degenerate);
  s.degenerate_past = std::move(past.degenerate);
  if (!s.future_roots.empty()) s.outermost_future = s.future_roots.back().r;
  if (!s.past_roots.empty()) s.outermost_past = s.past_roots.back().r;

  // Runs of nodes with the same sign pattern; nodes where an expansion is
  // exactly zero belong to no run.
  std::optional<RegionInterval> run;
  auto flush = [&] {
    if (!run) return;
    (untrapped_kind(run->kind) ? s.untrapped : s.trapped).push_back(*run);
    run.reset();
  };
  for (std::size_t i = 0; i < prof.size(); ++i) {
    const double tp = prof.theta_plus[i];
    const double tm = prof.theta_minus[i];
    if (tp == 0.0 || tm == 0.0) {
      flush();
      continue;
    }
    const RegionKind k = classify(tp, tm);
    if (run && run->kind == k) {
      run->last = i;
      run->b = prof.r[i];
    } else {
      flush();
      run = RegionInterval{prof.r[i], prof.r[i], i, i, k};
    }
  }
  flush();
  return s;
}

bool contains_horizon(const HorizonScan& s, double r) {
  if (r < s.inner_boundary || r > s.outer_boundary) {
    throw std::out_of_range("radius outside the scanned domain");
  }
  auto inside = [&](double x) { return x > s.inner_boundary && x <= r; };
  for (const auto& root : s.future_roots) {
    if (inside(root.r)) return true;
  }
  for (const auto& root : s.past_roots) {
    if (inside(root.r)) return true;
  }
  for (double x : s.degenerate_future) {
    if (inside(x)) return true;
  }
  for (double x : s.degenerate_past) {
    if (inside(x)) return true;
  }
  return false;
}

nlohmann::json to_json(const HorizonScan& s) {
  using nlohmann::json;
  auto roots = [](const std::vector<HorizonRoot>& v) {
    json a = json::array();
    for (const auto& r : v) {
      a.push_back({{"r", r.r}, {"bracket", {r.bracket_lo, r.bracket_hi}}, {"slope", r.slope_sign}});
    }
    return a;
  };
  auto intervals = [](const std::vector<RegionInterval>& v) {
    json a = json::array();
    for (const auto& iv : v) a.push_back(json::array({iv.a, iv.b}));
    return a;
  };
  auto kinds = [](const std::vector<RegionInterval>& v) {
    json a = json::array();
    for (const auto& iv : v) a.push_back(std::string(to_string(iv.kind)));
    return a;
  };
  json outer = json::object();
  outer["future"] = s.outermost_future ? json(*s.outermost_future) : json(nullptr);
  outer["past"] = s.outermost_past ? json(*s.outermost_past) : json(nullptr);
  return {{"future_roots", roots(s.future_roots)},
          {"past_roots", roots(s.past_roots)},
          {"degenerate_candidates",
           {{"future", s.degenerate_future}, {"past", s.degenerate_past}}},
          {"outermost", outer},
          {"untrapped", intervals(s.untrapped)},
          {"untrapped_kind", kinds(s.untrapped)},
          {"trapped", intervals(s.trapped)},
          {"trapped_kind", kinds(s.trapped)}};
}

}  // namespace collapse
