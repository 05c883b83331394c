#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stickmin/equilateral.hpp"
#include "stickmin/lattice_anneal.hpp"
#include "stickmin/polygon.hpp"
#include "stickmin/stick_anneal.hpp"
#include "stickmin/verify.hpp"

namespace stickmin {

struct SeedSpec {
    enum class Kind { File, TorusKnot, BuiltinLatticeTrefoil };
    Kind kind = Kind::BuiltinLatticeTrefoil;
    std::filesystem::path path;  // Kind::File
    int p = 2, q = 3;            // Kind::TorusKnot
    int samples = 0;             // 0: max(64, 8(p+q))
};

enum class Stage { Lattice, UnitStick, FreeStick, Equilateralize };

std::string stage_name(Stage s);

struct PipelineConfig {
    SeedSpec seed;
    std::vector<Stage> stages;  // must follow the canonical order
    AnnealConfig lattice;
    StageConfig unit_stage;
    StageConfig free_stage;
    double eq_target_band = 5e-6;
    long eq_max_iters = 200000;
    double eq_close_tol = 1e-14;
    int restarts = 1;
    std::uint64_t master_seed = 1;
    int sample_count = 100;
    double invariant_rel_tol = 1e-6;
    int max_threads = 0;  // 0: STICKMIN_THREADS env or hardware concurrency
    std::filesystem::path out_dir;  // empty: no files written
    std::filesystem::path report_path;
    bool write_svg = false;
};

struct StageReport {
    Stage stage;
    long iters = 0;
    long accepted = 0;
    int initial_edges = 0;
    int best_edges = 0;
    double seconds = 0.0;
};

struct ChainReport {
    int restart = 0;
    std::uint64_t rng_seed = 0;
    std::vector<StageReport> stages;
    int final_edges = 0;
    bool eq_converged = true;
    std::optional<EquilateralCertificate> certificate;
};

struct RunReport {
    std::vector<ChainReport> chains;
    int best_restart = 0;
    int best_edges = 0;
    Polygon best_polygon{std::vector<Point3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}};
    InvariantReport initial_invariants;
    InvariantReport final_invariants;
    bool verdict = false;  // compare_invariants(initial, final)
    std::optional<EquilateralCertificate> certificate;
    std::filesystem::path polygon_path;  // set when out_dir given
    std::uint64_t master_seed = 0;
    double seconds = 0.0;
};

/// Resolves a seed spec to a lattice or off-lattice polygon.
std::variant<LatticePolygon, Polygon> resolve_seed(const SeedSpec& seed);

/// Stage list for a seed when none is given: lattice seeds run
/// lattice -> unit -> free; unit-edge off-lattice seeds run unit -> free;
/// anything else runs free only.
std::vector<Stage> default_stages(const std::variant<LatticePolygon, Polygon>& seed);

/// Runs cfg.restarts independent annealing chains (derived rng streams),
/// keeps the global best by edge count, verifies the invariant fingerprint
/// before stage 1 and after the last stage, and writes the final polygon,
/// JSON report and optional SVG when out_dir is set. The report's verdict
/// must be true for a successful exit.
RunReport run_pipeline(const PipelineConfig& cfg);

/// Serialized form of the report (the CLI writes this to report_path).
std::string report_to_json(const PipelineConfig& cfg, const RunReport& report);

} // namespace stickmin
