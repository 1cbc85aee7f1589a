#ifndef SCAT_DATASETS_HPP
#define SCAT_DATASETS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scat/array2d.hpp"

namespace scat {

struct LabeledDataset {
  std::vector<RealImage> images;
  std::vector<int> labels;
  std::string name;
  int class_count = 0;

  std::size_t size() const { return images.size(); }
};

/// Load an IDX image/label file pair (the standard MNIST container).
/// Pixel values are scaled to [0, 1]. Malformed files raise FormatError with
/// the offending byte offset.
LabeledDataset load_idx(const std::string& images_path, const std::string& labels_path);

/// Write a dataset back to an IDX pair. Pixels are rounded to the nearest
/// 1/255 step, so load_idx(write_idx(d)) reproduces loaded data bit-exactly.
void write_idx(const LabeledDataset& dataset, const std::string& images_path,
               const std::string& labels_path);

/// Load a texture directory tree: one subdirectory per class (lexicographic
/// class ids), each holding grayscale .png/.pgm images (lexicographic file
/// order). Images are center-cropped to patch_size. per_class limits how
/// many images are taken per class (0 = all). With l2_normalize each image
/// is divided by its L2 norm.
LabeledDataset load_texture_dir(const std::string& root_path, int patch_size, int per_class = 0,
                                bool l2_normalize = true);

/// Stratified, seeded, reproducible subset of `size` samples (balanced per
/// class up to remainder; remainders go to the lowest class ids). Selected
/// indices keep the original dataset order. size == dataset.size() returns
/// the dataset unchanged.
LabeledDataset subsample_train(const LabeledDataset& dataset, std::size_t size, std::uint64_t seed);

/// Stratified fit/validation index split. Per class, round(fraction * n)
/// samples (at least 1, at most n-1) go to validation. Indices within each
/// part are sorted ascending.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_holdout(
    const LabeledDataset& dataset, double validation_fraction, std::uint64_t seed);

}  // namespace scat

#endif
