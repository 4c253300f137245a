// Command-line driver: simulate | convergence | spectrum | greens-compare,
// each taking --config PATH and --out DIR.
// Exit codes: 0 success, 2 configuration/validation error, 3 numerical abort.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "vdg/config.hpp"
#include "vdg/workflows.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw vdg::ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"High-order DG solver for 2D anisotropic viscoelastic waves"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    for (const char* name : {"simulate", "convergence", "spectrum", "greens-compare"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "configuration file")->required();
        sub->add_option("--out", out_dir, "output directory");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string cmd = app.get_subcommands().front()->get_name();

    try {
        const std::string text = slurp(config_path);
        const vdg::RunConfig config = vdg::parse_config(text);
        if (cmd == "simulate") {
            const auto sum = vdg::run_simulation(config, text, out_dir);
            std::cout << "done: " << sum.steps << " steps, dt = " << sum.dt
                      << ", final energy = " << sum.final_energy << "\n";
        } else if (cmd == "convergence") {
            const auto res = vdg::run_convergence(config, out_dir);
            for (const auto& [n, s] : res.slope)
                std::cout << "N = " << n << ": least-squares rate " << s << "\n";
        } else if (cmd == "spectrum") {
            const auto res = vdg::run_spectrum(config, out_dir);
            std::cout << "max Re = " << res.summary.max_real
                      << ", spectral radius = " << res.summary.spectral_radius << "\n";
        } else {
            const auto res = vdg::run_greens_compare(config, out_dir);
            std::cout << "relative L2 misfit: v1 = " << res.misfit_v1
                      << ", v3 = " << res.misfit_v3 << "\n";
        }
    } catch (const vdg::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
