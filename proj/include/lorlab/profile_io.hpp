#pragma once

// Plain-text profile catalogs and probe configs: one key per line, nested lists
// by indentation (a YAML subset). Unknown keys are rejected.
//
//   profiles:
//     - name: c1power
//       a:
//         - {kind: constant, coeff: 1}
//         - {kind: power, coeff: 1, center: 0, exponent: 1.5}
//       b:
//         - {kind: constant, coeff: 1}
//       domain: {lo: -inf, hi: inf}
//       alpha: 1

#include <string>
#include <vector>

#include "lorlab/probes.hpp"
#include "lorlab/profile.hpp"

namespace lorlab {

/// Throws InvalidProfile on malformed text or a profile that fails validation.
std::vector<MetricProfile> parse_profiles(const std::string& text);
std::vector<MetricProfile> load_profiles(const std::string& path);

/// Round-trips through parse_profiles exactly (17 significant digits).
std::string format_profiles(const std::vector<MetricProfile>& profiles);

/// Overlays keys from a probe config onto `base`. Recognized keys: p, q (as
/// "t, x"), fc_bound, ca_bounds, directions, cauchy_sequence, cauchy_bounds,
/// cauchy_terms, slices, witness_terms, cauchy_tol. Throws Usage otherwise.
ImplicationConfig parse_probe_config(const std::string& text, ImplicationConfig base);
ImplicationConfig load_probe_config(const std::string& path, ImplicationConfig base);

/// Reads a whole file; throws Usage when it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace lorlab
