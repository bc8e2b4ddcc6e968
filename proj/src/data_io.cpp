#include "collapse/data_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "collapse/report.hpp"

namespace collapse {

using nlohmann::json;

namespace {

std::string_view spacing_name(Spacing s) { return s == Spacing::uniform ? "uniform" : "geometric"; }

Spacing parse_spacing(std::string_view text) {
  if (text == "uniform") return Spacing::uniform;
  if (text == "geometric") return Spacing::geometric;
  throw DataError("unknown spacing '" + std::string(text) + "'");
}

void write_array(std::ostream& os, const std::vector<double>& values) {
  os << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    if (!std::isfinite(values[i])) {
      throw DataError("cannot serialize non-finite sample at index " + std::to_string(i));
    }
    os << full_precision(values[i]);
  }
  os << ']';
}

std::vector<double> read_array(std::string_view name, const json& node) {
  if (!node.is_array()) throw DataError("field '" + std::string(name) + "' must be an array");
  std::vector<double> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    const json& x = node[i];
    if (!x.is_number()) {
      throw DataError("field '" + std::string(name) + "' has a non-finite or non-numeric " +
                      "sample at index " + std::to_string(i));
    }
    const double v = x.get<double>();
    if (!std::isfinite(v)) {
      throw DataError("field '" + std::string(name) + "' has a non-finite sample at index " +
                      std::to_string(i));
    }
    out.push_back(v);
  }
  return out;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

json family_to_json(const FamilySpec& spec) {
  json j;
  j["name"] = std::string(to_string(spec.family));
  j["mass"] = spec.mass;
  j["mu0"] = spec.mu0;
  j["collapse_rate"] = spec.collapse_rate;
  j["anisotropy"] = spec.anisotropy;
  j["scale"] = spec.scale;
  j["star_radius"] = spec.star_radius;
  j["amplitude"] = spec.amplitude;
  j["width"] = spec.width;
  j["tabulated"] = spec.tabulated;
  j["grid"] = {{"domain", std::string(to_string(spec.grid.domain))},
               {"r_min", spec.grid.r_min},
               {"r_max", spec.grid.r_max},
               {"count", spec.grid.count},
               {"spacing", std::string(spacing_name(spec.grid.spacing))},
               {"stretch", spec.grid.stretch}};
  return j;
}

FamilySpec family_from_json(const json& j) {
  try {
    FamilySpec spec;
    spec.family = parse_family(j.at("name").get<std::string>());
    spec.mass = get_or(j, "mass", spec.mass);
    spec.mu0 = get_or(j, "mu0", spec.mu0);
    spec.collapse_rate = get_or(j, "collapse_rate", spec.collapse_rate);
    spec.anisotropy = get_or(j, "anisotropy", spec.anisotropy);
    spec.scale = get_or(j, "scale", spec.scale);
    spec.star_radius = get_or(j, "star_radius", spec.star_radius);
    spec.amplitude = get_or(j, "amplitude", spec.amplitude);
    spec.width = get_or(j, "width", spec.width);
    spec.tabulated = get_or(j, "tabulated", spec.tabulated);
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      spec.grid.domain = parse_domain(get_or<std::string>(g, "domain", "ball"));
      spec.grid.r_min = get_or(g, "r_min", spec.grid.r_min);
      spec.grid.r_max = get_or(g, "r_max", spec.grid.r_max);
      spec.grid.count = get_or(g, "count", spec.grid.count);
      spec.grid.spacing = parse_spacing(get_or<std::string>(g, "spacing", "uniform"));
      spec.grid.stretch = get_or(g, "stretch", spec.grid.stretch);
    }
    return spec;
  } catch (const json::exception& e) {
    throw DataError(std::string("family metadata: ") + e.what());
  }
}

void write_data(std::ostream& os, const InitialData& data) {
  os << "{\n  \"schema\": \"" << kDataSchema << "\",\n";
  os << "  \"domain\": \"" << to_string(data.grid().kind()) << "\",\n";
  os << "  \"label\": " << json(data.label()).dump() << ",\n";
  if (data.family()) os << "  \"family\": " << family_to_json(*data.family()).dump() << ",\n";
  os << "  \"grid\": ";
  write_array(os, data.grid().values());
  os << ",\n  \"fields\": {\n";
  for (std::size_t k = 0; k < kAllFields.size(); ++k) {
    const FieldName name = kAllFields[k];
    os << "    \"" << to_string(name) << "\": ";
    write_array(os, data.samples(name));
    os << (k + 1 < kAllFields.size() ? ",\n" : "\n");
  }
  os << "  }\n}\n";
}

InitialData read_data(std::istream& is, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("data file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("data file must be a JSON object");
  for (const char* key : {"schema", "domain", "grid", "fields"}) {
    if (!doc.contains(key)) throw DataError(std::string("data file is missing '") + key + "'");
  }
  if (doc.at("schema") != kDataSchema) {
    throw DataError("unsupported schema '" + doc.at("schema").dump() + "' (expected " +
                    kDataSchema + ")");
  }
  const DomainKind kind = parse_domain(doc.at("domain").get<std::string>());
  RadialGrid grid(read_array("grid", doc.at("grid")), kind);

  const json& fields = doc.at("fields");
  if (!fields.is_object()) throw DataError("'fields' must be an object");
  std::array<std::vector<double>, 4> samples;
  for (FieldName name : kAllFields) {
    const std::string key(to_string(name));
    if (!fields.contains(key)) throw DataError("data file is missing field '" + key + "'");
    auto values = read_array(key, fields.at(key));
    if (values.size() != grid.size()) {
      throw DataError("field '" + key + "' has " + std::to_string(values.size()) +
                      " samples for a grid of " + std::to_string(grid.size()));
    }
    samples[static_cast<std::size_t>(name)] = std::move(values);
  }
  for (const auto& [key, value] : fields.items()) {
    (void)value;
    parse_field_name(key);
  }

  std::optional<FamilySpec> family;
  if (doc.contains("family") && !doc.at("family").is_null()) {
    family = family_from_json(doc.at("family"));
  }
  const std::string label = doc.contains("label") ? doc.at("label").get<std::string>() : "";

  if (options.use_family) {
    if (!family) throw DataError("--use-family requested but the file has no family metadata");
    FamilySpec spec = *family;
    spec.tabulated = false;
    spec.grid.domain = kind;
    spec.grid.count = grid.size();
    spec.grid.r_min = grid.front();
    spec.grid.r_max = grid.back();
    InitialData rebuilt = build_family(spec);
    if (rebuilt.grid() != grid) {
      // Family grid spec does not reproduce the stored grid; keep the stored one.
      rebuilt = InitialData(grid, rebuilt.g11(), rebuilt.rho(), rebuilt.ka(), rebuilt.kb(),
                            rebuilt.label(), spec);
    }
    for (FieldName name : kAllFields) {
      const auto expect = rebuilt.samples(name);
      const auto& have = samples[static_cast<std::size_t>(name)];
      for (std::size_t i = 0; i < have.size(); ++i) {
        const double scale = std::max(1.0, std::abs(expect[i]));
        if (std::abs(have[i] - expect[i]) > 1e-12 * scale) {
          throw DataError("field '" + std::string(to_string(name)) +
                          "' disagrees with its family metadata at index " + std::to_string(i));
        }
      }
    }
    return InitialData(grid, rebuilt.g11(), rebuilt.rho(), rebuilt.ka(), rebuilt.kb(),
                       label.empty() ? rebuilt.label() : label, spec);
  }

  auto field = [&](FieldName name, Units units) {
    return Field::tabulated(grid.values(), samples[static_cast<std::size_t>(name)], units);
  };
  return InitialData(grid, field(FieldName::g11, Units::dimensionless),
                     field(FieldName::rho, Units::length),
                     field(FieldName::ka, Units::inverse_length),
                     field(FieldName::kb, Units::inverse_length), label, family);
}

void save_data(const InitialData& data, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open '" + path.string() + "' for writing");
  write_data(os, data);
  if (!os) throw DataError("failed writing '" + path.string() + "'");
}

InitialData load_data(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open data file '" + path.string() + "'");
  return read_data(is, options);
}

void write_data_csv(std::ostream& os, const InitialData& data) {
  CsvWriter csv(os);
  csv.header({"r", "g11", "rho", "ka", "kb"});
  const auto g11 = data.samples(FieldName::g11);
  const auto rho = data.samples(FieldName::rho);
  const auto ka = data.samples(FieldName::ka);
  const auto kb = data.samples(FieldName::kb);
  for (std::size_t i = 0; i < data.grid().size(); ++i) {
    csv.cell(data.grid()[i]).cell(g11[i]).cell(rho[i]).cell(ka[i]).cell(kb[i]);
    csv.end_row();
  }
}

}  // namespace collapse
