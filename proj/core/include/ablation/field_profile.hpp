#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ablation {

// A sampled scalar field (S, phi, or T) as a flat table of (r, z, t) rows,
// the shared output schema of the FD oracle and the CLI:
//   r_m, z_m, t_s, value, unit, region
struct FieldProfile {
    struct Sample {
        double r = 0.0;
        double z = 0.0;
        double t = 0.0;
        double value = 0.0;
        std::string region;  // "tumor" or "healthy"
    };

    std::string unit;
    std::vector<Sample> samples;
    // '# key: value' header lines for provenance (config echo, hash)
    std::vector<std::pair<std::string, std::string>> header;
};

// CSV with '#' header lines, '.' decimal separator, >= 12 significant digits,
// exact zeros written as 0. Byte-deterministic for identical inputs.
void write_csv(std::ostream& out, const FieldProfile& profile);
// JSON mirror of the same table.
void write_json(std::ostream& out, const FieldProfile& profile);

// FNV-1a over a canonical config string; used to stamp outputs.
std::string config_hash(const std::string& canonical);

}  // namespace ablation
