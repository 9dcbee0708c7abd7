#pragma once

#include <string>
#include <vector>

#include "pwlab/experiments.hpp"

namespace pwlab::report {

inline constexpr const char* kVersion = "0.1.0";

struct EmitOptions {
    std::string out_dir = "out";
    bool json = true, csv = false, svg = false;
    bool dump_fields = false;
    bool quiet = false;
};

// FNV-1a 64 over the canonical (sorted-key) serialization.
std::string canonical_config_hash(const std::string& config_json);

// Each emitter writes report.json (always), the documented CSV tables
// and SVG plots on request, a manifest.json (config hash, seed, version,
// verdicts -- fully deterministic) and run.log (wall-clock timestamps;
// the one non-reproducible file). Returns the written file paths.
std::vector<std::string> emit_bell(const xp::BellReport& rep, const std::string& config_json,
                                   const EmitOptions& opts);
std::vector<std::string> emit_two_time(const xp::TwoTimeReport& rep,
                                       const std::string& config_json, const EmitOptions& opts);
std::vector<std::string> emit_semi(const xp::SemiResult& res, const std::string& config_json,
                                   const EmitOptions& opts);
std::vector<std::string> emit_sweep(const std::vector<xp::RegimeReport>& reps,
                                    const std::vector<double>& values,
                                    const std::string& config_json, const EmitOptions& opts);

// Binary field snapshot: "PWFD" magic, version, dims, per-axis
// (n, extent, mass), dt, hbar, time, then row-major complex amplitudes
// as little-endian float64 (re, im) pairs. A JSON sidecar at
// path + ".json" documents the layout.
void save_field(const wave::WaveField& f, const std::string& path);
wave::WaveField load_field(const std::string& path);

}  // namespace pwlab::report
