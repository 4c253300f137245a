#include "vdg/workflows.hpp"

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "vdg/source.hpp"
#include "vdg/timeint.hpp"

namespace vdg {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    const fs::path p = fs::path(dir) / name;
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out.precision(17);
    return out;
}

void write_trace_csv(const std::string& dir, const std::string& name, const ReceiverSet& recs,
                     int r) {
    auto out = open_out(dir, name);
    out << "t,s11,s33,s13,a1,a2,a5,v1,v3\n";
    for (size_t i = 0; i < recs.times.size(); ++i) {
        out << recs.times[i];
        for (int f = 0; f < NFIELDS; ++f) out << "," << recs.samples[r][i](f);
        out << "\n";
    }
}

}  // namespace

double trace_misfit(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("trace_misfit: length mismatch");
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

void write_snapshot(const StateVector& q, const Mesh& mesh, const ReferenceOperators& ops,
                    const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write snapshot " + path);
    out.precision(17);
    Eigen::MatrixXd x, z;
    nodal_coordinates(mesh, ops, x, z);
    const int K = mesh.num_elements();
    const int Np = ops.Np;
    out << "# vtk DataFile Version 3.0\nviscodg snapshot t=" << q.t
        << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << K * Np << " double\n";
    for (int k = 0; k < K; ++k)
        for (int n = 0; n < Np; ++n) out << x(k, n) << " " << z(k, n) << " 0\n";
    // one linear cell per element through its corner nodes
    std::array<int, 3> corners{};
    {
        int c = 0;
        for (int n = 0; n < Np; ++n) {
            const bool v0 = std::abs(ops.r(n) + 1) < 1e-12 && std::abs(ops.s(n) + 1) < 1e-12;
            const bool v1 = std::abs(ops.r(n) - 1) < 1e-12 && std::abs(ops.s(n) + 1) < 1e-12;
            const bool v2 = std::abs(ops.r(n) + 1) < 1e-12 && std::abs(ops.s(n) - 1) < 1e-12;
            if (v0) corners[0] = n;
            if (v1) corners[1] = n;
            if (v2) corners[2] = n;
            c += v0 || v1 || v2;
        }
        if (c != 3) throw std::logic_error("write_snapshot: corner nodes not found");
    }
    out << "CELLS " << K << " " << 4 * K << "\n";
    for (int k = 0; k < K; ++k)
        out << "3 " << k * Np + corners[0] << " " << k * Np + corners[1] << " "
            << k * Np + corners[2] << "\n";
    out << "CELL_TYPES " << K << "\n";
    for (int k = 0; k < K; ++k) out << "5\n";
    out << "POINT_DATA " << K * Np << "\n";
    static const char* names[NFIELDS] = {"s11", "s33", "s13", "a1", "a2", "a5", "v1", "v3"};
    for (int f = 0; f < NFIELDS; ++f) {
        out << "SCALARS " << names[f] << " double 1\nLOOKUP_TABLE default\n";
        for (int k = 0; k < K; ++k)
            for (int n = 0; n < Np; ++n) out << q.data(f * Np + n, k) << "\n";
    }
}

RunSummary run_simulation(const RunConfig& config, const std::string& config_text,
                          const std::string& out_dir) {
    const auto t_start = std::chrono::steady_clock::now();
    const Mesh mesh = config.build_mesh();
    const ReferenceOperators ops = build_reference(config.degree);
    auto materials = config.build_materials();
    FluxOperators flux;
    flux.alpha_sigma = config.alpha_sigma;
    flux.alpha_v = config.alpha_v;
    DGSystem sys(mesh, ops, materials, flux, nullptr, config.threads);

    std::optional<PointSource> source;
    if (config.source) source.emplace(*config.source, mesh, ops);
    ReceiverSet receivers(config.receivers, mesh, ops);

    const double dt = estimate_dt(mesh, sys.materials(), config.degree, config.cfl);
    StateVector q = sys.make_state();

    auto rhs = [&](const StateVector& state, double t, StateVector& out) {
        sys.rhs(state, t, out);
        if (source) source->inject(out, sys.materials(), t);
    };

    int snapshots = 0;
    double next_record = 0.0;
    if (receivers.count() > 0) receivers.record(q, 0.0);
    if (config.snapshot_every > 0) {
        write_snapshot(q, mesh, ops, (fs::path(out_dir) / "snapshot_000000.vtk").string());
        ++snapshots;
    }
    int steps = 0;
    auto monitor = [&](int step, double t, const StateVector& state) {
        steps = step;
        if (receivers.count() > 0 &&
            (config.record_interval <= 0.0 || t + 1e-12 >= next_record + config.record_interval)) {
            receivers.record(state, t);
            if (config.record_interval > 0.0) next_record += config.record_interval;
        }
        if (config.snapshot_every > 0 && step % config.snapshot_every == 0) {
            char name[64];
            std::snprintf(name, sizeof name, "snapshot_%06d.vtk", step);
            write_snapshot(state, mesh, ops, (fs::path(out_dir) / name).string());
            ++snapshots;
        }
    };
    advance(rhs, q, 0.0, config.t_final, dt, monitor, config.nan_check_interval);

    RunSummary sum;
    sum.dt = dt;
    sum.steps = steps;
    sum.final_energy = sys.energy(q);
    sum.config_digest = config_hash(config_text);
    sum.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    fs::create_directories(out_dir);
    for (int r = 0; r < receivers.count(); ++r)
        write_trace_csv(out_dir, "receiver_" + std::to_string(r) + ".csv", receivers, r);
    auto out = open_out(out_dir, "summary.txt");
    out << "dt = " << sum.dt << "\n"
        << "steps = " << sum.steps << "\n"
        << "final_energy = " << sum.final_energy << "\n"
        << "wall_seconds = " << sum.wall_seconds << "\n"
        << "config_hash = " << sum.config_digest << "\n"
        << "snapshots = " << snapshots << "\n";
    return sum;
}

ConvergenceResult run_convergence(const RunConfig& config, const std::string& out_dir) {
    std::vector<int> degrees = config.conv_degrees.empty() ? std::vector<int>{1, 2, 3}
                                                           : config.conv_degrees;
    std::vector<int> res = config.conv_resolutions.empty() ? std::vector<int>{2, 4, 8, 16}
                                                           : config.conv_resolutions;
    MaterialSpec mat = config.elastic_limit ? config.material.elastic_limit() : config.material;
    const PlaneWaveSolution pw = plane_wave_modes(mat, config.kx, config.kz);
    const ExactSolution exact = plane_wave_exact(pw);

    ConvergenceResult result;
    for (int N : degrees) {
        const ReferenceOperators ops = build_reference(N);
        std::vector<double> logh, logerr;
        for (int n : res) {
            Mesh mesh = uniform_tri_mesh(n, n, config.x0, config.x1, config.z0, config.z1,
                                         BoundaryTag::exact, BoundaryTag::exact,
                                         BoundaryTag::exact, BoundaryTag::exact);
            FluxOperators flux;
            flux.alpha_sigma = config.alpha_sigma;
            flux.alpha_v = config.alpha_v;
            DGSystem sys(mesh, ops, {pw.coeffs}, flux, exact, config.threads);
            const double dt = estimate_dt(mesh, sys.materials(), N, config.cfl);
            StateVector q = sys.make_state();
            sys.project(exact, 0.0, q);
            advance([&](const StateVector& s, double t, StateVector& o) { sys.rhs(s, t, o); }, q,
                    0.0, config.t_final, dt, nullptr, config.nan_check_interval);
            ConvergenceRow row;
            row.degree = N;
            row.resolution = n;
            row.h = (config.x1 - config.x0) / n;
            row.error = sys.l2_error(q, exact, config.t_final);
            result.rows.push_back(row);
            logh.push_back(std::log(row.h));
            logerr.push_back(std::log(row.error));
        }
        // least-squares slope
        const int m = static_cast<int>(logh.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < m; ++i) {
            sx += logh[i];
            sy += logerr[i];
            sxx += logh[i] * logh[i];
            sxy += logh[i] * logerr[i];
        }
        result.slope[N] = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }

    auto out = open_out(out_dir, "convergence.csv");
    out << "degree,resolution,h,rel_l2_error\n";
    for (const auto& r : result.rows)
        out << r.degree << "," << r.resolution << "," << r.h << "," << r.error << "\n";
    auto slopes = open_out(out_dir, "rates.csv");
    slopes << "degree,ls_slope\n";
    for (const auto& [n, s] : result.slope) slopes << n << "," << s << "\n";
    return result;
}

SpectrumResult run_spectrum(const RunConfig& config, const std::string& out_dir) {
    const Mesh mesh = config.build_mesh();
    const ReferenceOperators ops = build_reference(config.degree);
    FluxOperators flux;
    flux.alpha_sigma = config.alpha_sigma;
    flux.alpha_v = config.alpha_v;
    DGSystem sys(mesh, ops, config.build_materials(), flux, nullptr, config.threads);
    const Eigen::MatrixXd A = assemble_global_operator(sys);
    SpectrumResult res;
    res.eigenvalues = operator_spectrum(A);
    res.summary = summarize_spectrum(res.eigenvalues);

    auto out = open_out(out_dir, "spectrum.csv");
    out << "re,im\n";
    for (int i = 0; i < res.eigenvalues.size(); ++i)
        out << res.eigenvalues(i).real() << "," << res.eigenvalues(i).imag() << "\n";
    auto sum = open_out(out_dir, "spectrum_summary.txt");
    sum << "n = " << res.eigenvalues.size() << "\n"
        << "max_real = " << res.summary.max_real << "\n"
        << "spectral_radius = " << res.summary.spectral_radius << "\n";
    return res;
}

GreensCompareResult run_greens_compare(const RunConfig& config, const std::string& out_dir) {
    MaterialSpec mat = config.isotropize ? config.material.isotropized() : config.material;
    if (config.elastic_limit) mat = mat.elastic_limit();

    SourceSpec wavelet;
    wavelet.kind = WaveletKind::gauss_cosine;
    wavelet.f0 = config.greens_f0;
    wavelet.t0 = (config.greens_t0 > 0.0) ? config.greens_t0 : 1.2 / config.greens_f0;
    wavelet.x = 0.5 * (config.x0 + config.x1);
    wavelet.z = 0.5 * (config.z0 + config.z1);
    wavelet.amplitude = 1.0;
    wavelet.weights(V3) = 1.0;  // point force along +z, the Eason geometry

    RunConfig run = config;
    run.material = mat;
    run.elastic_limit = false;  // already applied
    run.source = wavelet;
    run.receivers = {Eigen::Vector2d(wavelet.x + config.receiver_x,
                                     wavelet.z + config.receiver_z)};

    const Mesh mesh = run.build_mesh();
    const ReferenceOperators ops = build_reference(run.degree);
    auto materials = run.build_materials();
    FluxOperators flux;
    flux.alpha_sigma = run.alpha_sigma;
    flux.alpha_v = run.alpha_v;
    DGSystem sys(mesh, ops, materials, flux, nullptr, run.threads);
    PointSource source(wavelet, mesh, ops);
    ReceiverSet receivers(run.receivers, mesh, ops);
    const double dt = estimate_dt(mesh, sys.materials(), run.degree, run.cfl);
    StateVector q = sys.make_state();
    receivers.record(q, 0.0);
    advance(
        [&](const StateVector& s, double t, StateVector& o) {
            sys.rhs(s, t, o);
            source.inject(o, sys.materials(), t);
        },
        q, 0.0, run.t_final, dt,
        [&](int, double t, const StateVector& s) { receivers.record(s, t); },
        run.nan_check_interval);

    GreensCompareResult res;
    res.t = receivers.times;
    for (size_t i = 0; i < receivers.times.size(); ++i) {
        res.solver_v1.push_back(receivers.samples[0][i](V1));
        res.solver_v3.push_back(receivers.samples[0][i](V3));
    }

    GreensSetup setup;
    setup.material = mat;
    setup.F0 = wavelet.amplitude;
    setup.x = config.receiver_x;
    setup.z = config.receiver_z;
    setup.model = config.velocity_model;
    const GreensTrace analytic = mat.is_elastic() ? eason_elastic_trace(setup, wavelet, res.t)
                                                  : greens_trace(setup, wavelet, res.t);
    res.analytic_v1 = analytic.v1;
    res.analytic_v3 = analytic.v3;
    res.misfit_v1 = trace_misfit(res.solver_v1, res.analytic_v1);
    res.misfit_v3 = trace_misfit(res.solver_v3, res.analytic_v3);

    auto out = open_out(out_dir, "greens_compare.csv");
    out << "t,solver_v1,solver_v3,analytic_v1,analytic_v3\n";
    for (size_t i = 0; i < res.t.size(); ++i)
        out << res.t[i] << "," << res.solver_v1[i] << "," << res.solver_v3[i] << ","
            << res.analytic_v1[i] << "," << res.analytic_v3[i] << "\n";
    auto sum = open_out(out_dir, "greens_misfit.txt");
    sum << "misfit_v1 = " << res.misfit_v1 << "\n"
        << "misfit_v3 = " << res.misfit_v3 << "\n";
    return res;
}

}  // namespace vdg
