#pragma once

#include <optional>
#include <string>

#include "ablation/bioheat.hpp"
#include "ablation/fluence.hpp"
#include "ablation/params.hpp"

namespace ablation::scenario {

// Command-line style overrides applied on top of the registry defaults.
struct Overrides {
    std::optional<double> lambda_nm;
    std::optional<double> power_w;
    std::optional<double> t_p;
    std::optional<double> delta_t;
    std::optional<double> t_end;
    std::optional<double> g;        // applied to both tissues
    std::optional<double> gamma_r;
    std::optional<int> series_terms;
};

// A resolved tumor/healthy pair with its laser protocol and geometry.
struct Scenario {
    std::string tumor;
    std::string healthy;
    params::Registry registry;
    fluence::FieldConfig field;

    // Temperature parameter bundle for the tumor core; t_crit must be chosen
    // by the caller (bounds or fixed point).
    bioheat::TemperatureParams temperature_params(double t_crit) const;
};

// `pair` is "breast", "prostate", or an explicit tumor tissue name.
Scenario make_scenario(const params::Registry& reg, const std::string& pair,
                       const Overrides& ov = {});

// Canonical one-line description (used for output headers and hashing).
std::string describe(const Scenario& s);

}  // namespace ablation::scenario
