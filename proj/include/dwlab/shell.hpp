#pragma once
#include "dwlab/attract.hpp"
#include "dwlab/diagnose.hpp"
#include "dwlab/integrate.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace dwlab::shell {

// Flat `key = value` configuration ('#' comments, blank lines allowed).
// A persisted config reproduces its run byte-for-byte.
struct RunConfig {
    std::map<std::string, std::string> kv;

    static RunConfig from_file(const std::string& path);
    static RunConfig from_string(const std::string& text);
    std::string serialize() const;

    bool has(const std::string& key) const { return kv.count(key) != 0; }
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::vector<double> get_list(const std::string& key) const;   // comma separated
    void reject_unknown_keys(const std::vector<std::string>& allowed) const;
};

// Experiment assembly from a config: grid, model, initial states.
geometry::GridPtr grid_from_config(const RunConfig& cfg);
model::ModelConfig model_from_config(const RunConfig& cfg, const geometry::GridPtr& grid);
phase::State initial_from_config(const RunConfig& cfg, const geometry::GridPtr& grid,
                                 const model::ModelConfig& m);

// Radial C1 bump: height cos^2(pi |x - center| / (2 radius)) inside the
// radius, zero outside. Compact support by construction.
geometry::ScalarField make_bump(const geometry::GridPtr& grid, double radius, double height,
                                const std::vector<double>& center = {});

// Rescales to the requested L2 norm.
geometry::ScalarField scaled_to_l2_norm(geometry::ScalarField f, double norm);

// Time series CSV: header t,E,X2,flux,u_l2,grad_l2,v_l2,tail_k<k>...; the
// norm columns carry squared norms; 17 significant digits per entry.
void write_timeseries(const std::string& path, const integrate::Trajectory& traj,
                      const std::vector<double>& tail_radii);

struct LoadedTrajectory {
    integrate::Trajectory traj;
    std::vector<double> tail_radii;
};

LoadedTrajectory read_timeseries(const std::string& path);

// Binary snapshot, magic DWAF1, little-endian: dim u32, per-axis n u32,
// per-axis extents 2x f64, variant u8, t f64, then u and v row-major f64.
void write_snapshot(const std::string& path, const phase::State& w, model::Variant variant);

struct LoadedSnapshot {
    phase::State state;
    model::Variant variant;
};

LoadedSnapshot read_snapshot(const std::string& path);

struct SuiteOptions {
    std::vector<double> lambdas{0.5, 1.0, 2.0, 4.0};
    int samples = 1000;
    std::uint64_t seed = 7;
    bool negative_control = false;
    std::string out_dir;
};

// Verification suites: accretivity, energy, decay, absorbing, tail,
// gronwall, poincare, nonlinearity. Prints a margins table and per-check
// verdict lines; returns 0 on all-pass, 1 on any failure.
int run_verify_suite(const std::string& suite, const SuiteOptions& opt, std::ostream& out);

int run_simulate(const RunConfig& cfg, std::ostream& out);
int run_attractor(const RunConfig& cfg, std::ostream& out);
int run_report(const std::string& timeseries_path, std::ostream& out);

// Full command-line surface; exit 0 all-pass, 1 check failure, 2 usage error.
int cli_main(int argc, const char* const* argv);

}  // namespace dwlab::shell
