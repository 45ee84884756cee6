#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pmlwave/bounds.hpp"
#include "pmlwave/csv.hpp"
#include "pmlwave/reference.hpp"
#include "pmlwave/run_config.hpp"
#include "pmlwave/solver.hpp"

namespace pmlwave {

struct Verdict {
  std::string name;
  double value = 0.0;
  std::string threshold;  // human-readable acceptance band
  bool pass = false;
};

struct ExperimentReport {
  std::string id;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::map<std::string, CsvTable> tables;  // file stem -> table
  std::vector<Verdict> verdicts;
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;

  bool passed() const;
  /// Writes every table as <dir>/<stem>.csv with the provenance line.
  void write_tables(const std::string& dir, const std::string& provenance) const;
  /// Parameter table, verdicts and warnings as plain text.
  std::string summary() const;
};

/// Expansion radius used for a reference evaluated up to time T.
double reference_radius(const SourceSpec& source, double T);

struct Comparison {
  DiskSamples samples;
  SupError sup;
  std::vector<std::string> warnings;
};

/// Runs the solver to T and samples u_pml and the reference on the unit disk.
Comparison compare_with_reference(const SolverConfig& config, const ReferenceSeries& reference, double T,
                                  int jobs, PolarSampling sampling = {});

ExperimentReport experiment1(const RunConfig& config, int jobs = 1);
ExperimentReport experiment2(const RunConfig& config, int jobs = 1);
ExperimentReport experiment3(const RunConfig& config, int jobs = 1);

/// Verification checks: "i1i2", "ratio", "moments", "symmetry" (default set) and "w".
ExperimentReport verify(const RunConfig& config, const std::vector<std::string>& only = {}, int jobs = 1);

/// Snapshot of every modal field at T: columns mode, parity, r, u, q, v, w.
ExperimentReport run_snapshot(const RunConfig& config, int jobs = 1);

struct PropertyCheck {
  std::string name;
  int samples = 0;
  double max_relative = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Reflection symmetries of J, H1 and their z-derivatives, and the real-axis Wronskian, at random points.
std::vector<PropertyCheck> special_function_properties(int samples = 100, unsigned seed = 1729);

struct WCheckSpec {
  std::vector<double> a{1.0, 0.5, 0.25};
  double L = 3.0;
  double alpha0 = 1.0;
  double R = 2.2;
  double dt = 0.005;
  double dr = 0.01;
  double mollify = 0.01;
  double t_min = 3.0;
  double t_max = 5.0;
  int points = 20;
  unsigned seed = 4242;
  std::vector<double> envelope_radii{2.2, 2.6, 3.0};
  double envelope_t_max = 8.0;  // the echo reaches the unit disk near t = 2R - 1
  double envelope_t_step = 0.5;
};

struct WPoint {
  double t = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double w = 0.0;               // eval_W
  double w_error = 0.0;         // quadrature estimate
  double difference = 0.0;      // u_pml - u from the fine solver run
  double discretization = 0.0;  // |u_pml(coarse) - u_pml(fine)|
  double reference_tail = 0.0;
  double budget() const { return w_error + discretization + reference_tail; }
  bool agrees() const { return std::abs(w - difference) <= budget(); }
};

struct WCrossCheck {
  std::vector<WPoint> points;
  std::vector<double> envelope_constants;  // max |W| / envelope, one per envelope radius
  bool agrees = false;
  bool envelope_stable = false;
};

/// Compares eval_W with the solver-minus-reference difference for the windowed modal indicator source.
WCrossCheck w_cross_check(const WCheckSpec& spec = {}, int jobs = 1);

}  // namespace pmlwave
