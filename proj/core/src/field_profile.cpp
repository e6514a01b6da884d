#include "ablation/field_profile.hpp"

#include <cinttypes>
#include <cstdio>
#include <ostream>

namespace ablation {

namespace {

// %.12e, except exact zeros stay "0" so semilog plots can drop them cleanly.
std::string num(double v) {
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

void write_csv(std::ostream& out, const FieldProfile& profile) {
    for (const auto& [k, v] : profile.header) out << "# " << k << ": " << v << "\n";
    out << "r_m,z_m,t_s,value,unit,region\n";
    for (const auto& s : profile.samples) {
        out << num(s.r) << ',' << num(s.z) << ',' << num(s.t) << ',' << num(s.value)
            << ',' << profile.unit << ',' << s.region << "\n";
    }
}

void write_json(std::ostream& out, const FieldProfile& profile) {
    out << "{\n  \"header\": {";
    bool first = true;
    for (const auto& [k, v] : profile.header) {
        out << (first ? "" : ",") << "\n    \"" << json_escape(k) << "\": \""
            << json_escape(v) << '"';
        first = false;
    }
    out << "\n  },\n  \"unit\": \"" << json_escape(profile.unit) << "\",\n"
        << "  \"columns\": [\"r_m\", \"z_m\", \"t_s\", \"value\", \"region\"],\n"
        << "  \"rows\": [";
    first = true;
    for (const auto& s : profile.samples) {
        out << (first ? "" : ",") << "\n    [" << num(s.r) << ", " << num(s.z) << ", "
            << num(s.t) << ", " << num(s.value) << ", \"" << json_escape(s.region)
            << "\"]";
        first = false;
    }
    out << "\n  ]\n}\n";
}

std::string config_hash(const std::string& canonical) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

}  // namespace ablation
