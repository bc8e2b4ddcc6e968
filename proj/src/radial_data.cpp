#include "collapse/radial_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "collapse/numerics.hpp"

namespace collapse {

namespace {

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

std::string_view to_string(DomainKind kind) {
  return kind == DomainKind::ball ? "ball" : "annulus";
}

DomainKind parse_domain(std::string_view text) {
  if (text == "ball") return DomainKind::ball;
  if (text == "annulus") return DomainKind::annulus;
  throw DataError("unknown domain '" + std::string(text) + "' (expected ball or annulus)");
}

// ---------------------------------------------------------------------------
// RadialGrid

RadialGrid::RadialGrid(std::vector<double> r, DomainKind kind) : r_(std::move(r)), kind_(kind) {
  if (r_.size() < kMinGridSamples) {
    throw DataError("grid has " + std::to_string(r_.size()) + " samples; at least " +
                    std::to_string(kMinGridSamples) + " required");
  }
  for (std::size_t i = 0; i < r_.size(); ++i) {
    if (!std::isfinite(r_[i])) {
      throw DataError("grid value not finite at index " + std::to_string(i));
    }
    if (i > 0 && !(r_[i] > r_[i - 1])) {
      throw DataError("grid not strictly increasing at index " + std::to_string(i));
    }
  }
  if (kind_ == DomainKind::ball && r_.front() != 0.0) {
    throw DataError("ball domain must start at r = 0 (grid[0] = " + format_number(r_.front()) +
                    ")");
  }
  if (kind_ == DomainKind::annulus && !(r_.front() > 0.0)) {
    throw DataError("annulus domain must start at r_min > 0 (grid[0] = " +
                    format_number(r_.front()) + ")");
  }
}

RadialGrid RadialGrid::uniform(DomainKind kind, double r_min, double r_max, std::size_t count) {
  if (count < 2 || !(r_max > r_min)) {
    throw DataError("uniform grid needs count >= 2 and r_max > r_min");
  }
  std::vector<double> r(count);
  const double h = (r_max - r_min) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) r[i] = r_min + h * static_cast<double>(i);
  r.back() = r_max;
  return RadialGrid(std::move(r), kind);
}

RadialGrid RadialGrid::geometric(DomainKind kind, double r_min, double r_max, std::size_t count,
                                 double stretch) {
  if (count < 2 || !(r_max > r_min) || !(stretch > 0.0)) {
    throw DataError("geometric grid needs count >= 2, r_max > r_min and stretch > 0");
  }
  if (stretch == 1.0) return uniform(kind, r_min, r_max, count);
  const double cells = static_cast<double>(count - 1);
  const double total = (std::pow(stretch, cells) - 1.0) / (stretch - 1.0);
  std::vector<double> r(count);
  r[0] = r_min;
  double width = (r_max - r_min) / total;
  for (std::size_t i = 1; i < count; ++i) {
    r[i] = r[i - 1] + width;
    width *= stretch;
  }
  r.back() = r_max;
  return RadialGrid(std::move(r), kind);
}

double RadialGrid::max_spacing() const {
  double h = 0.0;
  for (std::size_t i = 1; i < r_.size(); ++i) h = std::max(h, r_[i] - r_[i - 1]);
  return h;
}

RadialGrid RadialGrid::refined(int factor) const {
  if (factor < 2) throw DataError("refinement factor must be >= 2");
  std::vector<double> r;
  r.reserve((r_.size() - 1) * factor + 1);
  for (std::size_t i = 0; i + 1 < r_.size(); ++i) {
    const double a = r_[i];
    const double h = (r_[i + 1] - a) / factor;
    for (int j = 0; j < factor; ++j) r.push_back(a + h * j);
  }
  r.push_back(r_.back());
  return RadialGrid(std::move(r), kind_);
}

// ---------------------------------------------------------------------------
// Field

Field Field::analytic(Function fn, Units units) {
  Field f;
  f.fn_ = std::move(fn);
  f.units_ = units;
  return f;
}

Field Field::tabulated(std::vector<double> r, std::vector<double> samples, Units units) {
  if (r.size() != samples.size()) {
    throw DataError("tabulated field has " + std::to_string(samples.size()) +
                    " samples for a grid of " + std::to_string(r.size()));
  }
  auto table = std::make_shared<Table>();
  table->d1 = differentiate(r, samples, 1);
  table->d2 = differentiate(r, samples, 2);
  table->r = std::move(r);
  table->f = std::move(samples);
  Field f;
  f.table_ = std::move(table);
  f.units_ = units;
  return f;
}

Jet Field::at(double r) const {
  if (fn_) return fn_(r);
  const Table& t = *table_;
  const std::size_t cell = locate_cell(t.r, r);
  for (std::size_t i : {cell, cell + 1}) {
    if (t.r[i] == r) return {t.f[i], t.d1[i], t.d2[i]};
  }
  return {interpolate_cubic(t.r, t.f, r), interpolate_cubic(t.r, t.d1, r),
          interpolate_cubic(t.r, t.d2, r)};
}

const std::vector<double>& Field::samples() const {
  if (!table_) throw std::logic_error("samples() requires a tabulated field");
  return table_->f;
}

const std::vector<double>& Field::first_derivative() const {
  if (!table_) throw std::logic_error("first_derivative() requires a tabulated field");
  return table_->d1;
}

const std::vector<double>& Field::second_derivative() const {
  if (!table_) throw std::logic_error("second_derivative() requires a tabulated field");
  return table_->d2;
}

std::string_view to_string(FieldName name) {
  switch (name) {
    case FieldName::g11: return "g11";
    case FieldName::rho: return "rho";
    case FieldName::ka: return "ka";
    case FieldName::kb: return "kb";
  }
  return "?";
}

FieldName parse_field_name(std::string_view text) {
  for (FieldName f : kAllFields) {
    if (to_string(f) == text) return f;
  }
  throw DataError("unknown field '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// InitialData

InitialData::InitialData(RadialGrid grid, Field g11, Field rho, Field ka, Field kb,
                         std::string label, std::optional<FamilySpec> family)
    : grid_(std::move(grid)),
      fields_{std::move(g11), std::move(rho), std::move(ka), std::move(kb)},
      label_(std::move(label)),
      family_(std::move(family)) {
  for (FieldName name : kAllFields) {
    const Field& f = field(name);
    if (!f.is_analytic() && f.samples().size() != grid_.size()) {
      throw DataError("field " + std::string(to_string(name)) + " has " +
                      std::to_string(f.samples().size()) + " samples for a grid of " +
                      std::to_string(grid_.size()));
    }
  }
}

bool InitialData::is_analytic() const {
  return std::all_of(fields_.begin(), fields_.end(),
                     [](const Field& f) { return f.is_analytic(); });
}

FieldJets InitialData::at(double r) const {
  return {g11().at(r), rho().at(r), ka().at(r), kb().at(r)};
}

std::vector<double> InitialData::samples(FieldName name) const {
  const Field& f = field(name);
  if (!f.is_analytic()) return f.samples();
  std::vector<double> out(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) out[i] = f.at(grid_[i]).value;
  return out;
}

// ---------------------------------------------------------------------------
// Families

std::string_view to_string(Family family) {
  switch (family) {
    case Family::minkowski: return "minkowski";
    case Family::schwarzschild_ts: return "schwarzschild_ts";
    case Family::painleve_gullstrand: return "painleve_gullstrand";
    case Family::constant_density_star: return "constant_density_star";
    case Family::uniform_collapse: return "uniform_collapse";
    case Family::gaussian_blob: return "gaussian_blob";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  struct Alias {
    std::string_view name;
    Family family;
  };
  static constexpr Alias aliases[] = {
      {"minkowski", Family::minkowski},
      {"mk", Family::minkowski},
      {"schwarzschild_ts", Family::schwarzschild_ts},
      {"ts", Family::schwarzschild_ts},
      {"painleve_gullstrand", Family::painleve_gullstrand},
      {"pg", Family::painleve_gullstrand},
      {"constant_density_star", Family::constant_density_star},
      {"cds", Family::constant_density_star},
      {"uniform_collapse", Family::uniform_collapse},
      {"uc", Family::uniform_collapse},
      {"gaussian_blob", Family::gaussian_blob},
      {"blob", Family::gaussian_blob},
  };
  for (const auto& a : aliases) {
    if (a.name == text) return a.family;
  }
  throw DataError("unknown family '" + std::string(text) + "'");
}

RadialGrid make_grid(const GridSpec& spec) {
  if (spec.domain == DomainKind::ball && spec.r_min != 0.0) {
    throw DataError("ball domain requires r_min = 0 (got " + format_number(spec.r_min) + ")");
  }
  if (spec.spacing == Spacing::geometric) {
    return RadialGrid::geometric(spec.domain, spec.r_min, spec.r_max, spec.count, spec.stretch);
  }
  return RadialGrid::uniform(spec.domain, spec.r_min, spec.r_max, spec.count);
}

namespace {

constexpr double kPi = std::numbers::pi;

Jet constant(double c) { return {c, 0.0, 0.0}; }

// g11 = (1 - u)^{-1} from the jet of u.
Jet inverse_one_minus(const Jet& u) {
  const double d = 1.0 - u.value;
  return {1.0 / d, u.d1 / (d * d), u.d2 / (d * d) + 2.0 * u.d1 * u.d1 / (d * d * d)};
}

// u = 2M/r.
Jet schwarzschild_u(double mass, double r) {
  return {2.0 * mass / r, -2.0 * mass / (r * r), 4.0 * mass / (r * r * r)};
}

// S(x) = P(x)/x with P(x) = erf(x) - (2/sqrt(pi)) x exp(-x^2), the normalized
// mass inside radius x of a Gaussian density. Returns S, S', S''.
Jet gaussian_mass_ratio(double x) {
  const double norm = 4.0 / std::sqrt(kPi);
  if (x < 1.0) {
    double s = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double fact = 1.0;
    const double x2 = x * x;
    double xp = 1.0;  // x^{2k}
    for (int k = 0; k < 40; ++k) {
      if (k > 0) fact *= k;
      const double a = ((k % 2 == 0) ? 1.0 : -1.0) / (fact * (2.0 * k + 3.0));
      s += a * xp * x2;
      s1 += a * (2.0 * k + 2.0) * xp * x;
      s2 += a * (2.0 * k + 2.0) * (2.0 * k + 1.0) * xp;
      xp *= x2;
    }
    return {norm * s, norm * s1, norm * s2};
  }
  const double e = std::exp(-x * x);
  const double p = std::erf(x) - 2.0 / std::sqrt(kPi) * x * e;
  const double p1 = norm * x * x * e;
  const double p2 = norm * (2.0 * x - 2.0 * x * x * x) * e;
  return {p / x, p1 / x - p / (x * x), p2 / x - 2.0 * p1 / (x * x) + 2.0 * p / (x * x * x)};
}

void require_positive(double value, std::string_view name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DataError("parameter " + std::string(name) + " must be positive (got " +
                    format_number(value) + ")");
  }
}

void require_annulus(const RadialGrid& grid, Family family, double r_floor) {
  if (grid.kind() != DomainKind::annulus || !(grid.front() > r_floor)) {
    throw DataError(std::string(to_string(family)) + " requires an annulus domain with r_min > " +
                    format_number(r_floor) + " (got " + std::string(to_string(grid.kind())) +
                    " starting at " + format_number(grid.front()) + ")");
  }
}

struct Providers {
  Field::Function g11;
  Field::Function rho;
  Field::Function ka;
  Field::Function kb;
  std::string label;
};

Providers family_providers(const FamilySpec& spec, const RadialGrid& grid) {
  const auto areal = [](double r) { return Jet{r, 1.0, 0.0}; };
  const auto zero = [](double) { return constant(0.0); };
  const auto one = [](double) { return constant(1.0); };
  switch (spec.family) {
    case Family::minkowski:
      return {one, areal, zero, zero, "minkowski"};

    case Family::schwarzschild_ts: {
      require_positive(spec.mass, "mass");
      require_annulus(grid, spec.family, 2.0 * spec.mass);
      const double m = spec.mass;
      return {[m](double r) { return inverse_one_minus(schwarzschild_u(m, r)); }, areal, zero,
              zero, "schwarzschild_ts m=" + format_number(m)};
    }

    case Family::painleve_gullstrand: {
      require_positive(spec.mass, "mass");
      require_annulus(grid, spec.family, 0.0);
      const double a = std::sqrt(2.0 * spec.mass);
      auto kb = [a](double r) {
        return Jet{-a * std::pow(r, -1.5), 1.5 * a * std::pow(r, -2.5),
                   -3.75 * a * std::pow(r, -3.5)};
      };
      auto ka = [kb](double r) {
        const Jet b = kb(r);
        return Jet{-0.5 * b.value, -0.5 * b.d1, -0.5 * b.d2};
      };
      return {one, areal, ka, kb, "painleve_gullstrand m=" + format_number(spec.mass)};
    }

    case Family::constant_density_star: {
      require_positive(spec.mu0, "mu0");
      require_positive(spec.star_radius, "star_radius");
      const double c = 8.0 * kPi / 3.0 * spec.mu0;
      const double rs = spec.star_radius;
      if (!(c * rs * rs < 1.0)) {
        throw DataError("constant_density_star needs (8 pi/3) mu0 r_*^2 < 1 (got " +
                        format_number(c * rs * rs) + ")");
      }
      const double total_mass = 0.5 * c * rs * rs * rs;
      auto g11 = [c, rs, total_mass](double r) {
        if (r <= rs) {
          return inverse_one_minus(Jet{c * r * r, 2.0 * c * r, 2.0 * c});
        }
        return inverse_one_minus(schwarzschild_u(total_mass, r));
      };
      return {g11, areal, zero, zero,
              "constant_density_star mu0=" + format_number(spec.mu0) +
                  " r_star=" + format_number(rs)};
    }

    case Family::uniform_collapse: {
      require_positive(spec.collapse_rate, "collapse_rate");
      require_positive(spec.scale, "scale");
      if (spec.anisotropy < 0.0) throw DataError("parameter anisotropy must be >= 0");
      const double k0 = spec.collapse_rate;
      const double slope = k0 * spec.anisotropy / spec.scale;
      return {one, areal, [k0, slope](double r) { return Jet{-k0 - slope * r, -slope, 0.0}; },
              [k0](double) { return constant(-k0); },
              "uniform_collapse K0=" + format_number(k0) +
                  " beta=" + format_number(spec.anisotropy) + " L=" + format_number(spec.scale)};
    }

    case Family::gaussian_blob: {
      require_positive(spec.amplitude, "amplitude");
      require_positive(spec.width, "width");
      const double a = spec.amplitude;
      const double w = spec.width;
      auto u = [a, w](double r) {
        const Jet s = gaussian_mass_ratio(r / w);
        return Jet{2.0 * a / w * s.value, 2.0 * a / (w * w) * s.d1,
                   2.0 * a / (w * w * w) * s.d2};
      };
      for (double r : grid.values()) {
        if (!(u(r).value < 1.0)) {
          throw DataError("gaussian_blob has 2m(r)/r >= 1 at r = " + format_number(r) +
                          "; lower the amplitude or widen the blob");
        }
      }
      return {[u](double r) { return inverse_one_minus(u(r)); }, areal, zero, zero,
              "gaussian_blob A=" + format_number(a) + " w=" + format_number(w)};
    }
  }
  throw DataError("unsupported family");
}

InitialData build_on_grid(const FamilySpec& spec, RadialGrid grid) {
  Providers p = family_providers(spec, grid);
  auto make = [&](Field::Function fn, Units units) {
    if (!spec.tabulated) return Field::analytic(std::move(fn), units);
    std::vector<double> samples(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) samples[i] = fn(grid[i]).value;
    return Field::tabulated(grid.values(), std::move(samples), units);
  };
  Field g11 = make(std::move(p.g11), Units::dimensionless);
  Field rho = make(std::move(p.rho), Units::length);
  Field ka = make(std::move(p.ka), Units::inverse_length);
  Field kb = make(std::move(p.kb), Units::inverse_length);
  FamilySpec meta = spec;
  meta.grid.count = grid.size();
  meta.grid.r_min = grid.front();
  meta.grid.r_max = grid.back();
  meta.grid.domain = grid.kind();
  return InitialData(std::move(grid), std::move(g11), std::move(rho), std::move(ka),
                     std::move(kb), std::move(p.label), meta);
}

}  // namespace

InitialData build_family(const FamilySpec& spec) { return build_on_grid(spec, make_grid(spec.grid)); }

// ---------------------------------------------------------------------------
// validate / refine / derivative

std::vector<double> breakpoints(const InitialData& data) {
  std::vector<double> out;
  const auto& family = data.family();
  if (family && family->family == Family::constant_density_star) {
    const double rs = family->star_radius;
    if (rs > data.grid().front() && rs < data.grid().back()) out.push_back(rs);
  }
  return out;
}

std::vector<Violation> validate(const InitialData& data) {
  std::vector<Violation> out;
  const RadialGrid& grid = data.grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    const FieldJets j = data.at_node(i);
    const std::array<std::pair<FieldName, Jet>, 4> all{{{FieldName::g11, j.g11},
                                                        {FieldName::rho, j.rho},
                                                        {FieldName::ka, j.ka},
                                                        {FieldName::kb, j.kb}}};
    for (const auto& [name, jet] : all) {
      if (!std::isfinite(jet.value) || !std::isfinite(jet.d1) || !std::isfinite(jet.d2)) {
        out.push_back({std::string(to_string(name)) + " not finite", i, r, jet.value});
      }
    }
    if (r > 0.0) {
      if (!(j.g11.value > 0.0)) out.push_back({"g11 not positive", i, r, j.g11.value});
      if (!(j.rho.value > 0.0)) out.push_back({"rho not positive", i, r, j.rho.value});
    }
  }
  if (grid.is_ball()) {
    const double h = grid.max_spacing();
    const double tol = data.is_analytic() ? 1e-8 : 10.0 * h * h;
    const FieldJets c = data.at_node(0);
    auto check = [&](std::string_view what, double value, double expected) {
      if (std::abs(value - expected) > tol) {
        out.push_back({"center: " + std::string(what) + "(0)=" + format_number(value) +
                           " != " + format_number(expected),
                       0, 0.0, value - expected});
      }
    };
    check("rho", c.rho.value, 0.0);
    check("rho_r", c.rho.d1, 1.0);
    check("g11", c.g11.value, 1.0);
  }
  return out;
}

InitialData refine(const InitialData& data, int factor) {
  RadialGrid grid = data.grid().refined(factor);
  if (data.family() && !data.is_analytic()) {
    return build_on_grid(*data.family(), std::move(grid));
  }
  auto resample = [&](FieldName name) {
    const Field& f = data.field(name);
    if (f.is_analytic()) return f;
    std::vector<double> samples(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      samples[i] = interpolate_cubic(data.grid().r(), f.samples(), grid[i]);
    }
    return Field::tabulated(grid.values(), std::move(samples), f.units());
  };
  std::optional<FamilySpec> family = data.family();
  if (family) family->grid.count = grid.size();
  return InitialData(grid, resample(FieldName::g11), resample(FieldName::rho),
                     resample(FieldName::ka), resample(FieldName::kb), data.label(), family);
}

std::vector<double> derivative(const InitialData& data, FieldName name, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("derivative order must be 1 or 2");
  const Field& f = data.field(name);
  if (!f.is_analytic()) return order == 1 ? f.first_derivative() : f.second_derivative();
  const RadialGrid& grid = data.grid();
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Jet j = f.at(grid[i]);
    out[i] = order == 1 ? j.d1 : j.d2;
  }
  return out;
}

}  // namespace collapse
