#include "scat/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include <png.h>

namespace scat {

namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803;
constexpr std::uint32_t kLabelsMagic = 0x00000801;

std::uint32_t read_be32(std::ifstream& in, const std::string& path, std::size_t offset) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4))
    throw FormatError(path + ": truncated while reading 32-bit field", offset);
  return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) | (std::uint32_t(b[2]) << 8) |
         std::uint32_t(b[3]);
}

void write_be32(std::ofstream& out, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v >> 24),
                              static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::mt19937_64 class_rng(std::uint64_t seed, int class_id) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(class_id) + 1};
  return std::mt19937_64(seq);
}

std::vector<std::vector<std::size_t>> indices_by_class(const LabeledDataset& d) {
  std::vector<std::vector<std::size_t>> by_class(d.class_count);
  for (std::size_t i = 0; i < d.size(); ++i) by_class[d.labels[i]].push_back(i);
  return by_class;
}

RealImage load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path + ": cannot open");
  std::string magic;
  in >> magic;
  if (magic != "P5" && magic != "P2") throw FormatError(path + ": not a PGM file", 0);
  auto next_token = [&]() {
    std::string tok;
    while (in >> tok) {
      if (tok[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return tok;
    }
    throw FormatError(path + ": truncated PGM header");
  };
  const int w = std::stoi(next_token());
  const int h = std::stoi(next_token());
  const int maxval = std::stoi(next_token());
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535)
    throw FormatError(path + ": bad PGM dimensions");
  RealImage img(h, w);
  if (magic == "P2") {
    for (std::size_t i = 0; i < img.size(); ++i) {
      int v;
      if (!(in >> v)) throw FormatError(path + ": truncated PGM data");
      img.data[i] = static_cast<double>(v) / maxval;
    }
  } else {
    in.get();  // single whitespace after maxval
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> buf(img.size() * bytes);
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size())))
      throw FormatError(path + ": truncated PGM data");
    for (std::size_t i = 0; i < img.size(); ++i) {
      const int v = bytes == 1 ? buf[i] : (buf[2 * i] << 8) | buf[2 * i + 1];
      img.data[i] = static_cast<double>(v) / maxval;
    }
  }
  return img;
}

RealImage load_png(const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw FormatError(path + ": cannot open");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw FormatError(path + ": libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw FormatError(path + ": png decode failed");
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  // normalize any input to 8-bit grayscale
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_palette_to_rgb(png);
  png_set_expand_gray_1_2_4_to_8(png);
  if ((png_get_color_type(png, info) & PNG_COLOR_MASK_COLOR) != 0)
    png_set_rgb_to_gray_fixed(png, 1, -1, -1);
  png_read_update_info(png, info);
  const int h = static_cast<int>(png_get_image_height(png, info));
  const int w = static_cast<int>(png_get_image_width(png, info));
  std::vector<unsigned char> row(png_get_rowbytes(png, info));
  RealImage img(h, w);
  for (int r = 0; r < h; ++r) {
    png_read_row(png, row.data(), nullptr);
    for (int c = 0; c < w; ++c) img(r, c) = row[c] / 255.0;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);
  return img;
}

RealImage center_crop(const RealImage& img, int patch) {
  if (img.rows < patch || img.cols < patch)
    throw DataError("texture image " + std::to_string(img.rows) + "x" + std::to_string(img.cols) +
                    " smaller than patch size " + std::to_string(patch));
  const int r0 = (img.rows - patch) / 2;
  const int c0 = (img.cols - patch) / 2;
  RealImage out(patch, patch);
  for (int r = 0; r < patch; ++r)
    for (int c = 0; c < patch; ++c) out(r, c) = img(r0 + r, c0 + c);
  return out;
}

}  // namespace

LabeledDataset load_idx(const std::string& images_path, const std::string& labels_path) {
  std::ifstream imgs(images_path, std::ios::binary);
  if (!imgs) throw FormatError(images_path + ": cannot open");
  const std::uint32_t img_magic = read_be32(imgs, images_path, 0);
  if (img_magic != kImagesMagic)
    throw FormatError(images_path + ": bad images magic 0x" + std::to_string(img_magic) +
                          ", expected 0x00000803",
                      0);
  const std::uint32_t count = read_be32(imgs, images_path, 4);
  const std::uint32_t rows = read_be32(imgs, images_path, 8);
  const std::uint32_t cols = read_be32(imgs, images_path, 12);

  std::ifstream labs(labels_path, std::ios::binary);
  if (!labs) throw FormatError(labels_path + ": cannot open");
  const std::uint32_t lab_magic = read_be32(labs, labels_path, 0);
  if (lab_magic != kLabelsMagic)
    throw FormatError(labels_path + ": bad labels magic 0x" + std::to_string(lab_magic) +
                          ", expected 0x00000801",
                      0);
  const std::uint32_t lab_count = read_be32(labs, labels_path, 4);
  if (lab_count != count)
    throw FormatError(labels_path + ": label count " + std::to_string(lab_count) +
                          " does not match image count " + std::to_string(count),
                      4);

  LabeledDataset d;
  d.name = std::filesystem::path(images_path).filename().string();
  d.images.reserve(count);
  d.labels.reserve(count);
  std::vector<unsigned char> buf(static_cast<std::size_t>(rows) * cols);
  int max_label = -1;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (!imgs.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size())))
      throw FormatError(images_path + ": truncated at image " + std::to_string(i),
                        16 + static_cast<std::size_t>(i) * buf.size());
    RealImage img(static_cast<int>(rows), static_cast<int>(cols));
    for (std::size_t p = 0; p < buf.size(); ++p) img.data[p] = buf[p] / 255.0;
    d.images.push_back(std::move(img));
    char lab;
    if (!labs.read(&lab, 1))
      throw FormatError(labels_path + ": truncated at label " + std::to_string(i),
                        8 + static_cast<std::size_t>(i));
    d.labels.push_back(static_cast<unsigned char>(lab));
    max_label = std::max(max_label, d.labels.back());
  }
  d.class_count = max_label + 1;
  return d;
}

void write_idx(const LabeledDataset& dataset, const std::string& images_path,
               const std::string& labels_path) {
  if (dataset.images.empty()) throw DataError("write_idx: empty dataset");
  const int rows = dataset.images[0].rows, cols = dataset.images[0].cols;
  std::ofstream imgs(images_path, std::ios::binary);
  std::ofstream labs(labels_path, std::ios::binary);
  if (!imgs || !labs) throw DataError("write_idx: cannot open output files");
  write_be32(imgs, kImagesMagic);
  write_be32(imgs, static_cast<std::uint32_t>(dataset.size()));
  write_be32(imgs, static_cast<std::uint32_t>(rows));
  write_be32(imgs, static_cast<std::uint32_t>(cols));
  write_be32(labs, kLabelsMagic);
  write_be32(labs, static_cast<std::uint32_t>(dataset.size()));
  std::vector<unsigned char> buf(static_cast<std::size_t>(rows) * cols);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const RealImage& img = dataset.images[i];
    if (img.rows != rows || img.cols != cols)
      throw DataError("write_idx: inhomogeneous image shapes");
    for (std::size_t p = 0; p < buf.size(); ++p)
      buf[p] = static_cast<unsigned char>(std::lround(std::clamp(img.data[p], 0.0, 1.0) * 255.0));
    imgs.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    const char lab = static_cast<char>(dataset.labels[i]);
    labs.write(&lab, 1);
  }
}

LabeledDataset load_texture_dir(const std::string& root_path, int patch_size, int per_class,
                                bool l2_normalize) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root_path)) throw DataError(root_path + ": not a directory");
  std::vector<std::string> class_dirs;
  for (const auto& e : fs::directory_iterator(root_path))
    if (e.is_directory()) class_dirs.push_back(e.path().string());
  std::sort(class_dirs.begin(), class_dirs.end());
  if (class_dirs.empty()) throw DataError(root_path + ": no class subdirectories");

  LabeledDataset d;
  d.name = fs::path(root_path).filename().string();
  d.class_count = static_cast<int>(class_dirs.size());
  for (int cls = 0; cls < d.class_count; ++cls) {
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(class_dirs[cls])) {
      const std::string ext = e.path().extension().string();
      if (ext == ".png" || ext == ".pgm") files.push_back(e.path().string());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw DataError(class_dirs[cls] + ": empty class directory");
    if (per_class > 0 && static_cast<int>(files.size()) > per_class) files.resize(per_class);
    for (const std::string& f : files) {
      RealImage img = f.ends_with(".png") ? load_png(f) : load_pgm(f);
      img = center_crop(img, patch_size);
      if (l2_normalize) {
        const double n = std::sqrt(sum_sq(img));
        if (n > 0)
          for (double& v : img.data) v /= n;
      }
      d.images.push_back(std::move(img));
      d.labels.push_back(cls);
    }
  }
  return d;
}

LabeledDataset subsample_train(const LabeledDataset& dataset, std::size_t size,
                               std::uint64_t seed) {
  if (size > dataset.size()) throw DataError("subsample_train: size exceeds dataset");
  if (size == dataset.size()) return dataset;
  if (dataset.class_count <= 0) throw DataError("subsample_train: dataset has no classes");
  if (size < static_cast<std::size_t>(dataset.class_count))
    throw DataError("subsample_train: size " + std::to_string(size) + " below class count " +
                    std::to_string(dataset.class_count));

  const auto by_class = indices_by_class(dataset);
  const std::size_t base = size / dataset.class_count;
  const std::size_t rem = size % dataset.class_count;

  std::vector<std::size_t> selected;
  for (int cls = 0; cls < dataset.class_count; ++cls) {
    const std::size_t want = base + (static_cast<std::size_t>(cls) < rem ? 1 : 0);
    if (want > by_class[cls].size())
      throw DataError("subsample_train: class " + std::to_string(cls) + " has only " +
                      std::to_string(by_class[cls].size()) + " samples, need " +
                      std::to_string(want));
    std::vector<std::size_t> idx = by_class[cls];
    auto rng = class_rng(seed, cls);
    std::shuffle(idx.begin(), idx.end(), rng);
    selected.insert(selected.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(want));
  }
  std::sort(selected.begin(), selected.end());

  LabeledDataset out;
  out.name = dataset.name;
  out.class_count = dataset.class_count;
  for (std::size_t i : selected) {
    out.images.push_back(dataset.images[i]);
    out.labels.push_back(dataset.labels[i]);
  }
  return out;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_holdout(
    const LabeledDataset& dataset, double validation_fraction, std::uint64_t seed) {
  if (validation_fraction <= 0.0 || validation_fraction >= 1.0)
    throw ArgumentError("stratified_holdout: fraction must be in (0, 1)");
  const auto by_class = indices_by_class(dataset);
  std::vector<std::size_t> fit, val;
  for (int cls = 0; cls < dataset.class_count; ++cls) {
    const std::size_t n = by_class[cls].size();
    if (n < 2)
      throw DataError("stratified_holdout: class " + std::to_string(cls) +
                      " needs at least 2 samples");
    std::size_t nv = static_cast<std::size_t>(std::lround(validation_fraction * n));
    nv = std::clamp<std::size_t>(nv, 1, n - 1);
    std::vector<std::size_t> idx = by_class[cls];
    auto rng = class_rng(seed, cls);
    std::shuffle(idx.begin(), idx.end(), rng);
    val.insert(val.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(nv));
    fit.insert(fit.end(), idx.begin() + static_cast<std::ptrdiff_t>(nv), idx.end());
  }
  std::sort(fit.begin(), fit.end());
  std::sort(val.begin(), val.end());
  return {fit, val};
}

}  // namespace scat
