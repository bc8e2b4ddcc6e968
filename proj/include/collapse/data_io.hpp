#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "collapse/radial_data.hpp"

namespace collapse {

inline constexpr const char* kDataSchema = "collapse-kit/v1";

nlohmann::json family_to_json(const FamilySpec& spec);
FamilySpec family_from_json(const nlohmann::json& j);

struct LoadOptions {
  // Rebuild analytic providers from the embedded family metadata (after
  // checking that the stored samples agree with it).
  bool use_family = false;
};

// Data file: {"schema", "domain", "grid", "fields": {g11, rho, ka, kb},
// "family" (optional), "label"}. Samples are written with 17 significant digits
// so a save/load round trip is bit-exact.
void write_data(std::ostream& os, const InitialData& data);
InitialData read_data(std::istream& is, const LoadOptions& options = {});

void save_data(const InitialData& data, const std::filesystem::path& path);
InitialData load_data(const std::filesystem::path& path, const LoadOptions& options = {});

// Columns r,g11,rho,ka,kb.
void write_data_csv(std::ostream& os, const InitialData& data);

}  // namespace collapse
