#include <utility>

#include "hetnet/errors.hpp"
#include "hetnet/experiments.hpp"

// Bundled desk-scale studies. Each preset pins one published-figure
// parameter set; realization counts default to 1e5 and are meant to be
// overridden from the command line when a quick look suffices.

namespace hetnet::exp {
namespace {

struct preset {
    const char* name;
    const char* text;
};

// Deployment A: 10/8 antennas, exponents 4.5/4.7, 15 dB power ratio.
// Deployment B: 6/4 antennas, equal exponents 4.
constexpr const char* kFig2a = R"({
  "network": {"macro_density": 5e-4, "pico_density": 1e-3, "power_ratio_db": 15,
              "macro_antennas": 10, "pico_antennas": 8,
              "macro_pathloss": 4.5, "pico_pathloss": 4.7},
  "nulling": {"max_in_dof": [0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
              "macro_threshold": [2, 4], "pico_threshold": [2, 4]},
  "beta_db": 10,
  "engine": ["analytic", "monte-carlo"],
  "monte_carlo": {"realizations": 100000, "window_side": 240,
                  "mode": "distributional", "field": "full", "seed": 1}
})";

constexpr const char* kFig2b = R"({
  "network": {"macro_density": 5e-4, "pico_density": 1e-3, "power_ratio_db": 15,
              "macro_antennas": 10, "pico_antennas": 8,
              "macro_pathloss": 4.5, "pico_pathloss": 4.7},
  "nulling": {"max_in_dof": 5,
              "macro_threshold": [2, 4], "pico_threshold": [2, 4]},
  "beta_db": [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15],
  "engine": ["analytic", "monte-carlo"],
  "monte_carlo": {"realizations": 100000, "window_side": 240,
                  "mode": "distributional", "field": "full", "seed": 1}
})";

constexpr const char* kFig3 = R"({
  "network": {"macro_density": 5e-4, "pico_density": 1e-3, "power_ratio_db": 15,
              "macro_antennas": 10, "pico_antennas": 8,
              "macro_pathloss": 4.5, "pico_pathloss": 4.7},
  "nulling": {"max_in_dof": [6, 7],
              "macro_threshold": [2, 4], "pico_threshold": [2, 4]},
  "beta_db": [-30, -27.5, -25, -22.5, -20, -17.5, -15, -12.5, -10, -7.5, -5],
  "engine": ["analytic", "asymptotic-low"]
})";

constexpr const char* kFig4 = R"({
  "network": {"macro_density": 5e-4, "pico_density": 1e-3, "power_ratio_db": 15,
              "macro_antennas": 6, "pico_antennas": 4,
              "macro_pathloss": 4, "pico_pathloss": 4},
  "nulling": {"max_in_dof": [0, 1, 2, 3, 4, 5],
              "macro_threshold": 1.8, "pico_threshold": 1.8},
  "beta_db": [-10, -8, -6, -4],
  "engine": ["analytic", "optimize-u-low"]
})";

constexpr const char* kFig5 = R"({
  "network": {"macro_density": 5e-4, "pico_density": 1e-3, "power_ratio_db": 15,
              "macro_antennas": 6, "pico_antennas": 4,
              "macro_pathloss": 4, "pico_pathloss": 4},
  "nulling": {"max_in_dof": [0, 1, 2, 3, 4, 5],
              "macro_threshold": 2, "pico_threshold": 2},
  "beta_db": [-30, -28, -26, -24, -22, -20, -18, -16, -14, -12, -10, -8, -6, -4],
  "engine": ["analytic", "optimize-u-low"]
})";

constexpr const char* kFig6 = R"({
  "network": {"macro_density": 5e-4, "pico_density": 1e-3, "power_ratio_db": 15,
              "macro_antennas": 10, "pico_antennas": 8,
              "macro_pathloss": 4, "pico_pathloss": 3.5},
  "nulling": {"max_in_dof": [2, 5, 8],
              "macro_threshold": 4, "pico_threshold": 4},
  "beta_db": [20, 22.5, 25, 27.5, 30, 32.5, 35, 37.5, 40],
  "engine": ["analytic", "asymptotic-high"]
})";

constexpr const char* kFig7 = R"({
  "network": {"macro_density": 5e-4, "pico_density": 1e-3, "power_ratio_db": 15,
              "macro_antennas": 16, "pico_antennas": 8,
              "macro_pathloss": 4.5, "pico_pathloss": 4.5},
  "nulling": {"max_in_dof": [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15],
              "macro_threshold": 6, "pico_threshold": 6},
  "beta_db": 10,
  "engine": "compare",
  "monte_carlo": {"realizations": 100000, "window_side": 240,
                  "mode": "distributional", "field": "full", "seed": 1}
})";

constexpr const char* kFig8 = R"({
  "network": {"macro_density": 5e-4, "pico_density": 1e-3, "power_ratio_db": 15,
              "macro_antennas": 16, "pico_antennas": 8,
              "macro_pathloss": 4.5, "pico_pathloss": 4},
  "nulling": {"max_in_dof": [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15],
              "macro_threshold": 6, "pico_threshold": 6},
  "beta_db": 10,
  "engine": "compare",
  "monte_carlo": {"realizations": 100000, "window_side": 240,
                  "mode": "distributional", "field": "full", "seed": 1}
})";

constexpr const char* kFig9 = R"({
  "network": {"macro_density": 5e-4, "pico_density": 1e-3, "power_ratio_db": 15,
              "macro_antennas": 6, "pico_antennas": 4,
              "macro_pathloss": 4, "pico_pathloss": 4},
  "nulling": {"max_in_dof": [0, 1, 2, 3, 4, 5],
              "macro_threshold": 4, "pico_threshold": 4},
  "beta_db": [16, 18, 20, 22, 24],
  "engine": ["analytic", "optimize-u-high"]
})";

constexpr const char* kFig10 = R"({
  "network": {"macro_density": 5e-4, "pico_density": 1e-3, "power_ratio_db": 15,
              "macro_antennas": 6, "pico_antennas": 4,
              "macro_pathloss": 4, "pico_pathloss": 4},
  "nulling": {"max_in_dof": [0, 1, 2, 3, 4, 5],
              "macro_threshold": 2, "pico_threshold": 2},
  "beta_db": [16, 18, 20, 22, 24, 26, 28, 30, 32, 34, 36, 38, 40],
  "engine": ["analytic", "optimize-u-high"]
})";

constexpr preset kPresets[] = {
    {"fig2a", kFig2a}, {"fig2b", kFig2b}, {"fig3", kFig3}, {"fig4", kFig4},
    {"fig5", kFig5},   {"fig6", kFig6},   {"fig7", kFig7}, {"fig8", kFig8},
    {"fig9", kFig9},   {"fig10", kFig10},
};

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& p : kPresets) v.emplace_back(p.name);
        return v;
    }();
    return names;
}

bool is_preset(const std::string& name) {
    for (const auto& p : kPresets)
        if (name == p.name) return true;
    return false;
}

std::string preset_text(const std::string& name) {
    for (const auto& p : kPresets)
        if (name == p.name) return p.text;
    std::string known;
    for (const auto& p : kPresets) {
        if (!known.empty()) known += ", ";
        known += p.name;
    }
    throw config_error("unknown preset '" + name + "' (available: " + known + ")");
}

experiment load_preset(const std::string& name) {
    return parse_experiment(preset_text(name));
}

}  // namespace hetnet::exp
