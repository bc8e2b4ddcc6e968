#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace collapse {

// Raised for malformed data: bad grids, schema violations, invalid family
// parameters. Messages name the offending field and index.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DomainKind { ball, annulus };

std::string_view to_string(DomainKind kind);
DomainKind parse_domain(std::string_view text);

inline constexpr std::size_t kMinGridSamples = 16;

// Ordered sample radii. A ball starts at r = 0 (regular center); an annulus at
// r_min > 0.
class RadialGrid {
 public:
  RadialGrid(std::vector<double> r, DomainKind kind);

  static RadialGrid uniform(DomainKind kind, double r_min, double r_max, std::size_t count);
  // Cell widths grow by `stretch` from one cell to the next.
  static RadialGrid geometric(DomainKind kind, double r_min, double r_max, std::size_t count,
                              double stretch);

  std::span<const double> r() const { return r_; }
  const std::vector<double>& values() const { return r_; }
  std::size_t size() const { return r_.size(); }
  double operator[](std::size_t i) const { return r_[i]; }
  double front() const { return r_.front(); }
  double back() const { return r_.back(); }
  DomainKind kind() const { return kind_; }
  bool is_ball() const { return kind_ == DomainKind::ball; }
  bool contains(double x) const { return x >= r_.front() && x <= r_.back(); }
  double max_spacing() const;

  // Each cell split into `factor` equal parts: (n - 1) * factor + 1 points.
  RadialGrid refined(int factor) const;

  bool operator==(const RadialGrid&) const = default;

 private:
  std::vector<double> r_;
  DomainKind kind_;
};

// Value and first two radial derivatives of a field at one radius.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

enum class Units { dimensionless, length, inverse_length };

// A radial profile: either analytic (exact value and derivatives anywhere) or
// tabulated on a grid (second-order finite-difference derivatives at the nodes,
// cubic interpolation of value and node derivatives in between).
class Field {
 public:
  using Function = std::function<Jet(double)>;

  static Field analytic(Function fn, Units units);
  static Field tabulated(std::vector<double> r, std::vector<double> samples, Units units);

  bool is_analytic() const { return static_cast<bool>(fn_); }
  Units units() const { return units_; }
  Jet at(double r) const;

  // Tabulated only.
  const std::vector<double>& samples() const;
  const std::vector<double>& first_derivative() const;
  const std::vector<double>& second_derivative() const;

 private:
  struct Table {
    std::vector<double> r;
    std::vector<double> f;
    std::vector<double> d1;
    std::vector<double> d2;
  };

  Field() = default;

  Function fn_;
  std::shared_ptr<const Table> table_;
  Units units_ = Units::dimensionless;
};

enum class FieldName { g11, rho, ka, kb };

inline constexpr std::array<FieldName, 4> kAllFields{FieldName::g11, FieldName::rho,
                                                     FieldName::ka, FieldName::kb};

std::string_view to_string(FieldName name);
FieldName parse_field_name(std::string_view text);

struct FieldJets {
  Jet g11;
  Jet rho;
  Jet ka;
  Jet kb;
};

enum class Family {
  minkowski,
  schwarzschild_ts,
  painleve_gullstrand,
  constant_density_star,
  uniform_collapse,
  gaussian_blob
};

std::string_view to_string(Family family);
// Accepts canonical names and the short aliases mk, ts, pg, cds, uc, blob.
Family parse_family(std::string_view text);

enum class Spacing { uniform, geometric };

struct GridSpec {
  DomainKind domain = DomainKind::ball;
  double r_min = 0.0;
  double r_max = 1.0;
  std::size_t count = 257;
  Spacing spacing = Spacing::uniform;
  double stretch = 1.01;

  bool operator==(const GridSpec&) const = default;
};

RadialGrid make_grid(const GridSpec& spec);

// Closed-form initial-data family plus the grid it is sampled on.
struct FamilySpec {
  Family family = Family::minkowski;
  double mass = 1.0;           // schwarzschild_ts, painleve_gullstrand
  double mu0 = 0.0;            // constant_density_star central density
  double collapse_rate = 1.0;  // uniform_collapse K0
  double anisotropy = 0.0;     // uniform_collapse beta
  double scale = 1.0;          // uniform_collapse L
  double star_radius = 1.0;    // constant_density_star r_*
  double amplitude = 0.1;      // gaussian_blob total mass A
  double width = 1.0;          // gaussian_blob width w
  GridSpec grid;
  bool tabulated = false;      // sample into tables instead of analytic providers

  bool operator==(const FamilySpec&) const = default;
};

// Immutable spherically symmetric initial data (g11, rho, k_a, k_b) on a grid.
class InitialData {
 public:
  InitialData(RadialGrid grid, Field g11, Field rho, Field ka, Field kb, std::string label,
              std::optional<FamilySpec> family = std::nullopt);

  const RadialGrid& grid() const { return grid_; }
  const Field& field(FieldName name) const { return fields_[static_cast<std::size_t>(name)]; }
  const Field& g11() const { return field(FieldName::g11); }
  const Field& rho() const { return field(FieldName::rho); }
  const Field& ka() const { return field(FieldName::ka); }
  const Field& kb() const { return field(FieldName::kb); }
  const std::string& label() const { return label_; }
  const std::optional<FamilySpec>& family() const { return family_; }

  bool is_analytic() const;
  FieldJets at(double r) const;
  FieldJets at_node(std::size_t i) const { return at(grid_[i]); }
  std::vector<double> samples(FieldName name) const;

 private:
  RadialGrid grid_;
  std::array<Field, 4> fields_;
  std::string label_;
  std::optional<FamilySpec> family_;
};

InitialData build_family(const FamilySpec& spec);

// Interior radii where the family's fields lose smoothness (the star surface of
// constant_density_star), ascending; empty without family metadata.
std::vector<double> breakpoints(const InitialData& data);

struct Violation {
  std::string what;
  std::size_t index = 0;
  double r = 0.0;
  double residual = 0.0;
};

// Empty iff every data invariant holds (positivity, finiteness, regular center).
std::vector<Violation> validate(const InitialData& data);

// Analytic providers and family-backed tables are re-sampled exactly; other
// tables are interpolated with local cubics.
InitialData refine(const InitialData& data, int factor);

// Node derivative of one data field: exact for analytic providers, second-order
// stencils for tabulated ones.
std::vector<double> derivative(const InitialData& data, FieldName name, int order);

}  // namespace collapse
