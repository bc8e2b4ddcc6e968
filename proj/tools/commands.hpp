#pragma once

#include <optional>
#include <string>
#include <vector>

#include "collapse/criteria.hpp"
#include "collapse/jang.hpp"
#include "collapse/radial_data.hpp"

namespace collapse::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kVerificationFailure = 2;

struct InputOptions {
  std::string path;
  bool use_family = false;
};

struct GenerateOptions {
  std::string family;
  FamilySpec spec;
  std::string domain;  // empty: ball when r_min = 0, annulus otherwise
  std::string spacing = "uniform";
  std::string label;
  std::string out;
  std::string csv;
};

struct AnalyzeOptions {
  InputOptions input;
  std::string out;
  std::string json;
};

struct CriterionOptions {
  InputOptions input;
  std::string mode = "future";
  std::string out;
  std::string malec;
  double max_trace_tol = 1e-8;
};

struct JangCliOptions {
  InputOptions input;
  std::string bc;  // empty: the default for the domain
  JangOptions jang;
  std::string out;
};

struct EnergyOptions {
  InputOptions input;
  std::string out;
};

struct VerifyCliOptions {
  InputOptions input;
  std::string checks = "geroch,de,chain,pg";
  int refine = 3;
  std::string bc;
  JangOptions jang;
  std::string out;
};

struct SweepCliOptions {
  SweepConfig config;
  std::string out;
};

// Each command writes its artifacts (stdout when no path is given), prints a
// rounded summary on stderr, and returns an exit status. `digest` identifies
// the effective configuration.
int run_generate(const GenerateOptions& opt, const std::string& digest);
int run_analyze(const AnalyzeOptions& opt, const std::string& digest);
int run_criterion(const CriterionOptions& opt, const std::string& digest);
int run_jang(const JangCliOptions& opt, const std::string& digest);
int run_energy(const EnergyOptions& opt, const std::string& digest);
int run_verify(const VerifyCliOptions& opt, const std::string& digest);
int run_sweep(const SweepCliOptions& opt, const std::string& digest);

}  // namespace collapse::cli
