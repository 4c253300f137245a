#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vdg/greens.hpp"
#include "vdg/materials.hpp"
#include "vdg/mesh.hpp"
#include "vdg/source.hpp"

namespace vdg {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Flat key-value document: `key = value` lines, '#' comments.  Scalar values
/// may carry a unit suffix (GPa, MPa, Pa, km, m, cm, ms, s, us, kHz, Hz,
/// kg/m3, g/cm3) and are normalized to SI.  Reads are tracked so that unknown
/// keys can be rejected after parsing (fail-closed).
class KeyValueFile {
  public:
    static KeyValueFile parse(const std::string& text);

    bool has(const std::string& key) const;
    double number(const std::string& key);
    double number(const std::string& key, double fallback);
    int integer(const std::string& key);
    int integer(const std::string& key, int fallback);
    bool boolean(const std::string& key, bool fallback);
    std::string string(const std::string& key);
    std::string string(const std::string& key, const std::string& fallback);

    // Throws ConfigError naming every key never read, with line numbers.
    void reject_unknown() const;

  private:
    struct Entry {
        std::string raw;
        int line = 0;
        mutable bool used = false;
    };
    std::map<std::string, Entry> entries_;
};

double parse_quantity(const std::string& text);  // "25.6 GPa" -> 2.56e10

struct RunConfig {
    MaterialSpec material;
    std::string material_name;
    bool elastic_limit = false;

    double x0 = 0, x1 = 1, z0 = 0, z1 = 1;
    int nx = 1, nz = 1;
    std::string mesh_file;  // if nonempty, load instead of the uniform mesh

    int degree = 3;
    double alpha_sigma = 0.5;
    double alpha_v = 0.5;
    double cfl = 0.5;
    double t_final = 1.0;
    BoundaryTag bc_left = BoundaryTag::absorbing;
    BoundaryTag bc_right = BoundaryTag::absorbing;
    BoundaryTag bc_bottom = BoundaryTag::absorbing;
    BoundaryTag bc_top = BoundaryTag::absorbing;

    std::optional<SourceSpec> source;
    std::vector<Eigen::Vector2d> receivers;
    double record_interval = 0.0;  // 0: every step
    int snapshot_every = 0;        // steps; 0: no snapshots
    int nan_check_interval = 50;
    int threads = 1;
    unsigned long long seed = 0;

    // convergence study
    std::vector<int> conv_degrees;
    std::vector<int> conv_resolutions;  // elements per side
    double kx = 2.0 * M_PI, kz = 2.0 * M_PI;

    // greens comparison
    double greens_f0 = 45.0;
    double greens_t0 = 0.0;  // 0: auto (1.2/f0)
    double receiver_x = 250.0, receiver_z = 250.0;
    VelocityModel velocity_model = VelocityModel::consistent;
    bool isotropize = true;

    Mesh build_mesh() const;
    std::vector<ViscoCoefficients> build_materials() const;  // honors elastic_limit
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

std::string config_hash(const std::string& text);  // FNV-1a hex digest

}  // namespace vdg
