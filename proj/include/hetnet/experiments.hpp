#ifndef HETNET_EXPERIMENTS_HPP
#define HETNET_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hetnet/network.hpp"
#include "hetnet/sim.hpp"

// Configuration-driven experiment runner: a JSON document describes a
// deployment, a parameter grid (nulling budgets, request-threshold
// pairs, SIR thresholds), and one or more computational engines; `run`
// produces a deterministic result table persisted as CSV.

namespace hetnet::exp {

// Computational engines. `value` semantics per engine:
//   analytic          coverage probability (exact engine)
//   asymptotic_low    vanishing-threshold outage approximation b * beta^d
//   asymptotic_high   diverging-threshold coverage approximation; with
//                     distinct path-loss exponents two rows are emitted
//                     per grid point (upper/lower envelope)
//   monte_carlo       simulated coverage with binomial stderr
//   abs_baseline      simulated coverage of the resource-partition
//                     baseline, one row per resource split
//   optimize_u_low    asymptotically outage-minimizing nulling budget
//                     (row's u column and value both carry the answer)
//   optimize_u_high   asymptotically coverage-maximizing budget
//   compare           three-scheme comparison at the first grid point:
//                     nulling at the analytically optimal budget,
//                     resource partition at the best split, and simple
//                     beamforming, all simulated with a common seed
enum class engine {
    analytic,
    asymptotic_low,
    asymptotic_high,
    monte_carlo,
    abs_baseline,
    optimize_u_low,
    optimize_u_high,
    compare,
};

std::string engine_name(engine e);

struct mc_settings {
    std::int64_t realizations = 100000;
    double window_side = 240.0;
    sim::channel_mode mode = sim::channel_mode::distributional;
    sim::user_field field = sim::user_field::full;
    bool toroidal = false;
    std::uint64_t seed = 1;
};

// A parsed and validated experiment. SIR thresholds appear in dB in
// the configuration document and are converted to linear exactly once,
// at parse time; request thresholds are linear ratios throughout.
struct experiment {
    network_params params;
    std::vector<int> dof_grid;  // U values
    // (T1, T2) pairs: the Cartesian product of the two configured
    // threshold lists, macro-major.
    std::vector<std::pair<double, double>> threshold_grid;
    std::vector<double> beta_db_grid;  // as written in the config
    std::vector<double> beta_grid;     // linear, aligned with beta_db_grid
    std::vector<engine> engines;
    mc_settings mc;
    std::vector<double> eta_grid{0.1, 0.2, 0.3, 0.4, 0.5,
                                 0.6, 0.7, 0.8, 0.9};
    std::string output_path;        // empty = standard output
    std::uint64_t config_hash = 0;  // FNV-1a over the raw document bytes
};

// Parses and fully validates a configuration document; throws
// config_error listing every violated invariant. `load_experiment`
// reads the document from a file first.
experiment parse_experiment(const std::string& json_text);
experiment load_experiment(const std::string& path);

// All diagnostics for a document without running anything; an empty
// list means the configuration is valid.
std::vector<std::string> validate_config(const std::string& json_text);

// Bundled desk-scale study presets (fig2a, fig2b, fig3 .. fig10).
const std::vector<std::string>& preset_names();
bool is_preset(const std::string& name);
experiment load_preset(const std::string& name);
std::string preset_text(const std::string& name);

// One result-table row. Cells that do not apply to a row's engine
// (eta outside the resource-partition baseline, stderr for
// deterministic engines, beta for the threshold-free optimizers, u for
// baseline rows) are NaN / -1 internally and empty in the CSV.
struct result_row {
    int u = -1;
    double t1 = 1.0;
    double t2 = 1.0;
    double beta_db = 0.0;       // NaN when not applicable
    std::string method;         // engine label, envelope-qualified
    std::string scheme;         // nulling | resource-partition | simple
    double eta = 0.0;           // NaN when not applicable
    double value = 0.0;
    double std_err = 0.0;       // NaN for deterministic engines
    double wall_time_ms = 0.0;  // diagnostic; excluded from determinism
};

// Runs every engine over the grid. Row order is deterministic:
// engines as listed, then lexicographic over the sweep grid — nulling
// budget, macro threshold, pico threshold, SIR threshold, each axis in
// its configured order (envelope/split sub-rows in fixed order).
// Engine failures carry the grid point in their message.
std::vector<result_row> run(const experiment& e);

// CSV persistence: a comment line (tool version + config hash), a
// header row, then one line per row with 17-significant-digit
// numbers, so reloading reproduces every double bit-for-bit. All
// columns except wall_time_ms are deterministic for a fixed
// configuration and seed.
void write_csv(const std::vector<result_row>& rows,
               std::uint64_t config_hash, std::ostream& out);
std::vector<result_row> read_csv(std::istream& in);

std::uint64_t fnv1a_hash(const std::string& text);

}  // namespace hetnet::exp

#endif
