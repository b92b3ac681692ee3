#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mplab/barriers.hpp"
#include "mplab/solver.hpp"
#include "mplab/structure.hpp"
#include "mplab/verify.hpp"

namespace mplab {

enum class TheoremId { MP, ABP, NARROW, PL };

const char* theorem_name(TheoremId id);
TheoremId theorem_from_name(const std::string& s);

struct TheoremOptions {
  double h = 1.0 / 32.0;
  double R = 4.0;
  double tolerance = 1e-10;
  std::uint64_t seed = 42;
  SolveOptions solve;
  PlanOptions plan;
  SourceData forcing;                    // ABP empirical side; default -1
  BoundaryData boundary;                 // default 0
  double beta0 = 1.0;                    // PL growth exponent
  WidthOptions width;
  std::string counterexample;            // run the bundle for this scenario name
};

/// One theorem, one scenario: the structure evidence, the quantitative
/// outputs computed from it, the pointwise certificates, and the discrete
/// cross-check, all with their provenance.
struct TheoremReport {
  TheoremId id = TheoremId::MP;
  std::string scenario;
  StructureReport structure;
  std::vector<std::string> hypothesis_failures;
  std::map<std::string, double> inputs;
  std::map<std::string, double> outputs;
  std::vector<Certificate> certificates;
  std::vector<SolveReport> solves;
  std::vector<std::pair<std::string, Field>> fields;        // exported as CSV
  std::vector<std::shared_ptr<const Grid>> field_grids;     // owns the fields' grids
  std::optional<CounterexampleBundle> counterexample;
  std::optional<LatticeScenarioResult> lattice;
  bool verdict = false;
  std::string verdict_note;

  bool hypotheses_ok() const { return hypothesis_failures.empty(); }
  std::string summary() const;
};

TheoremReport run_theorem(TheoremId id, const OperatorSpec& op, const DomainSpec& dom,
                          const TheoremOptions& opt = {});

}  // namespace mplab
