#ifndef SCAT_SERIALIZATION_HPP
#define SCAT_SERIALIZATION_HPP

#include <string>
#include <vector>

#include "scat/classifier.hpp"
#include "scat/filterbank.hpp"
#include "scat/pipeline.hpp"

namespace scat {

// Binary container family. All files share an 8-byte preamble
//   "SCTB" | u16 version (1) | u16 kind
// followed by a kind-specific little-endian header and body.
// The exact byte layouts are documented in docs/FORMATS.md.

/// kind 1: filter bank cache. Filters stored as complex64 (float32 re/im);
/// the imaginary parts are zero for this family. Loading therefore
/// round-trips at float32 precision.
void save_filterbank(const FilterBank& bank, const std::string& path);
FilterBank load_filterbank(const std::string& path);

/// kind 2: scattering features of one split, float32 coefficient block plus
/// the path table and optional labels.
void save_features(const FeatureSet& set, const std::string& path);
FeatureSet load_features(const std::string& path);

/// kind 3: per-class affine models, float64 payload.
void save_models(const std::vector<AffineModel>& models, int K, const std::string& path);
std::pair<std::vector<AffineModel>, int> load_models(const std::string& path);

}  // namespace scat

#endif
