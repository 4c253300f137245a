#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vdg/config.hpp"
#include "vdg/dg.hpp"
#include "vdg/greens.hpp"
#include "vdg/verify.hpp"

namespace vdg {

struct RunSummary {
    double dt = 0.0;
    int steps = 0;
    double final_energy = 0.0;
    double wall_seconds = 0.0;
    std::string config_digest;
};

// Forward simulation with sources/receivers/snapshots; writes one trace CSV
// per receiver, optional VTK snapshots and a run summary into out_dir.
RunSummary run_simulation(const RunConfig& config, const std::string& config_text,
                          const std::string& out_dir);

struct ConvergenceRow {
    int degree = 0;
    int resolution = 0;  // elements per side
    double h = 0.0;
    double error = 0.0;
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    // least-squares slope of log(error) vs log(h) per degree
    std::map<int, double> slope;
};

ConvergenceResult run_convergence(const RunConfig& config, const std::string& out_dir);

struct SpectrumResult {
    SpectrumSummary summary;
    Eigen::VectorXcd eigenvalues;
};

SpectrumResult run_spectrum(const RunConfig& config, const std::string& out_dir);

struct GreensCompareResult {
    double misfit_v1 = 0.0;  // relative L2 trace misfits
    double misfit_v3 = 0.0;
    std::vector<double> t;
    std::vector<double> solver_v1, solver_v3;
    std::vector<double> analytic_v1, analytic_v3;
};

GreensCompareResult run_greens_compare(const RunConfig& config, const std::string& out_dir);

// VTK legacy ASCII unstructured grid with per-node state fields.
void write_snapshot(const StateVector& q, const Mesh& mesh, const ReferenceOperators& ops,
                    const std::string& path);

// Relative L2 misfit between two sampled traces on the same grid.
double trace_misfit(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace vdg
