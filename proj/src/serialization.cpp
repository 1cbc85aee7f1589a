#include "scat/serialization.hpp"

#include <cstring>
#include <fstream>

namespace scat {

namespace {

constexpr char kMagic[4] = {'S', 'C', 'T', 'B'};
constexpr std::uint16_t kVersion = 1;
constexpr std::uint16_t kKindFilterBank = 1;
constexpr std::uint16_t kKindFeatures = 2;
constexpr std::uint16_t kKindModels = 3;

// Little-endian scalar IO (the build targets little-endian hosts; asserted
// in the writers' round-trip tests).

class Writer {
public:
  explicit Writer(const std::string& path) : out_(path, std::ios::binary), path_(path) {
    if (!out_) throw DataError(path + ": cannot open for writing");
  }
  template <typename T>
  void put(T v) {
    out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
  }
  void put_bytes(const void* p, std::size_t n) {
    out_.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n));
  }
  void finish() {
    out_.flush();
    if (!out_) throw DataError(path_ + ": write failed");
  }

private:
  std::ofstream out_;
  std::string path_;
};

class Reader {
public:
  explicit Reader(const std::string& path) : in_(path, std::ios::binary), path_(path) {
    if (!in_) throw FormatError(path + ": cannot open");
  }
  template <typename T>
  T get() {
    T v;
    if (!in_.read(reinterpret_cast<char*>(&v), sizeof(T)))
      throw FormatError(path_ + ": truncated", offset_);
    offset_ += sizeof(T);
    return v;
  }
  void get_bytes(void* p, std::size_t n) {
    if (!in_.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(n)))
      throw FormatError(path_ + ": truncated", offset_);
    offset_ += n;
  }
  std::size_t offset() const { return offset_; }
  const std::string& path() const { return path_; }

private:
  std::ifstream in_;
  std::string path_;
  std::size_t offset_ = 0;
};

void write_preamble(Writer& w, std::uint16_t kind) {
  w.put_bytes(kMagic, 4);
  w.put(kVersion);
  w.put(kind);
}

void check_preamble(Reader& r, std::uint16_t kind) {
  char magic[4];
  r.get_bytes(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw FormatError(r.path() + ": bad magic", 0);
  const auto version = r.get<std::uint16_t>();
  if (version != kVersion)
    throw FormatError(r.path() + ": unsupported version " + std::to_string(version), 4);
  const auto k = r.get<std::uint16_t>();
  if (k != kind)
    throw FormatError(r.path() + ": container kind " + std::to_string(k) + ", expected " +
                          std::to_string(kind),
                      6);
}

void write_params(Writer& w, const GaborParams& p) {
  w.put(p.xi);
  w.put(p.sigma);
  w.put(p.lowpass_sigma);
  w.put(static_cast<std::uint32_t>(p.num_orientations));
  w.put(static_cast<std::uint32_t>(p.max_scale));
  w.put(static_cast<std::uint8_t>(p.dc_correction ? 1 : 0));
}

GaborParams read_params(Reader& r) {
  GaborParams p;
  p.xi = r.get<double>();
  p.sigma = r.get<double>();
  p.lowpass_sigma = r.get<double>();
  p.num_orientations = static_cast<int>(r.get<std::uint32_t>());
  p.max_scale = static_cast<int>(r.get<std::uint32_t>());
  p.dc_correction = r.get<std::uint8_t>() != 0;
  return p;
}

void write_filter_c64(Writer& w, const FreqFilter& f) {
  std::vector<float> buf(f.size() * 2, 0.0f);
  for (std::size_t i = 0; i < f.size(); ++i) buf[2 * i] = static_cast<float>(f.data[i]);
  w.put_bytes(buf.data(), buf.size() * sizeof(float));
}

FreqFilter read_filter_c64(Reader& r, int rows, int cols) {
  FreqFilter f(rows, cols);
  std::vector<float> buf(f.size() * 2);
  r.get_bytes(buf.data(), buf.size() * sizeof(float));
  for (std::size_t i = 0; i < f.size(); ++i) f.data[i] = buf[2 * i];
  return f;
}

}  // namespace

void save_filterbank(const FilterBank& bank, const std::string& path) {
  Writer w(path);
  write_preamble(w, kKindFilterBank);
  w.put(static_cast<std::uint32_t>(bank.rows));
  w.put(static_cast<std::uint32_t>(bank.cols));
  write_params(w, bank.params);
  w.put(bank.amplitude);
  w.put(bank.frame_defect);
  for (const FreqFilter& f : bank.bandpass) write_filter_c64(w, f);
  write_filter_c64(w, bank.lowpass);
  w.finish();
}

FilterBank load_filterbank(const std::string& path) {
  Reader r(path);
  check_preamble(r, kKindFilterBank);
  FilterBank bank;
  bank.rows = static_cast<int>(r.get<std::uint32_t>());
  bank.cols = static_cast<int>(r.get<std::uint32_t>());
  bank.params = read_params(r);
  bank.amplitude = r.get<double>();
  bank.frame_defect = r.get<double>();
  const int n_band = bank.params.max_scale * bank.params.num_orientations;
  bank.bandpass.reserve(n_band);
  for (int i = 0; i < n_band; ++i) bank.bandpass.push_back(read_filter_c64(r, bank.rows, bank.cols));
  bank.lowpass = read_filter_c64(r, bank.rows, bank.cols);
  return bank;
}

void save_features(const FeatureSet& set, const std::string& path) {
  Writer w(path);
  write_preamble(w, kKindFeatures);
  write_params(w, set.config.params);
  w.put(static_cast<std::uint32_t>(set.config.max_order));
  w.put(static_cast<std::uint8_t>(set.config.fast_intermediate_subsampling ? 1 : 0));
  w.put(static_cast<std::uint32_t>(set.source_rows));
  w.put(static_cast<std::uint32_t>(set.source_cols));
  w.put(static_cast<std::uint32_t>(set.padded));
  w.put(static_cast<std::uint32_t>(set.grid_rows));
  w.put(static_cast<std::uint32_t>(set.grid_cols));
  w.put(static_cast<std::uint32_t>(set.paths.size()));
  w.put(static_cast<std::uint64_t>(set.dim()));
  w.put(static_cast<std::uint32_t>(set.count()));
  w.put(static_cast<std::uint8_t>(set.labels.empty() ? 0 : 1));
  w.put(static_cast<std::uint32_t>(set.class_count));
  for (const Path& p : set.paths) {
    w.put(static_cast<std::uint8_t>(p.size()));
    for (const PathStep& s : p) {
      w.put(static_cast<std::uint8_t>(s.j));
      w.put(static_cast<std::uint8_t>(s.gamma));
    }
  }
  if (!set.labels.empty())
    for (int lab : set.labels) w.put(static_cast<std::uint32_t>(lab));
  std::vector<float> row(set.dim());
  for (Eigen::Index i = 0; i < set.features.rows(); ++i) {
    for (Eigen::Index c = 0; c < set.features.cols(); ++c)
      row[static_cast<std::size_t>(c)] = static_cast<float>(set.features(i, c));
    w.put_bytes(row.data(), row.size() * sizeof(float));
  }
  w.finish();
}

FeatureSet load_features(const std::string& path) {
  Reader r(path);
  check_preamble(r, kKindFeatures);
  FeatureSet set;
  set.config.params = read_params(r);
  set.config.max_order = static_cast<int>(r.get<std::uint32_t>());
  set.config.fast_intermediate_subsampling = r.get<std::uint8_t>() != 0;
  set.source_rows = static_cast<int>(r.get<std::uint32_t>());
  set.source_cols = static_cast<int>(r.get<std::uint32_t>());
  set.padded = static_cast<int>(r.get<std::uint32_t>());
  set.grid_rows = static_cast<int>(r.get<std::uint32_t>());
  set.grid_cols = static_cast<int>(r.get<std::uint32_t>());
  const auto n_paths = r.get<std::uint32_t>();
  const auto dim = r.get<std::uint64_t>();
  const auto count = r.get<std::uint32_t>();
  const bool has_labels = r.get<std::uint8_t>() != 0;
  set.class_count = static_cast<int>(r.get<std::uint32_t>());
  set.paths.reserve(n_paths);
  for (std::uint32_t i = 0; i < n_paths; ++i) {
    const auto len = r.get<std::uint8_t>();
    Path p;
    for (int s = 0; s < len; ++s) {
      const int j = r.get<std::uint8_t>();
      const int g = r.get<std::uint8_t>();
      p.push_back({j, g});
    }
    set.paths.push_back(std::move(p));
  }
  if (has_labels) {
    set.labels.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i)
      set.labels.push_back(static_cast<int>(r.get<std::uint32_t>()));
  }
  const std::size_t expect = static_cast<std::size_t>(n_paths) * set.grid_rows * set.grid_cols;
  if (dim != expect)
    throw FormatError(path + ": dimension " + std::to_string(dim) + " does not match path table (" +
                          std::to_string(expect) + ")",
                      r.offset());
  set.features.resize(count, static_cast<Eigen::Index>(dim));
  std::vector<float> row(dim);
  for (std::uint32_t i = 0; i < count; ++i) {
    r.get_bytes(row.data(), row.size() * sizeof(float));
    for (std::size_t c = 0; c < dim; ++c)
      set.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = row[c];
  }
  return set;
}

void save_models(const std::vector<AffineModel>& models, int K, const std::string& path) {
  if (models.empty()) throw DataError("save_models: empty model list");
  Writer w(path);
  write_preamble(w, kKindModels);
  w.put(static_cast<std::uint32_t>(models.size()));
  w.put(static_cast<std::uint64_t>(models[0].dim()));
  w.put(static_cast<std::uint32_t>(K));
  for (const AffineModel& m : models) {
    w.put(static_cast<std::uint32_t>(m.class_id));
    w.put(static_cast<std::uint32_t>(m.train_count));
    w.put(static_cast<std::uint32_t>(m.rank()));
    w.put_bytes(m.mean.data(), static_cast<std::size_t>(m.dim()) * sizeof(double));
    w.put_bytes(m.eigenvalues.data(), static_cast<std::size_t>(m.rank()) * sizeof(double));
    // row per eigenvector
    for (int l = 0; l < m.rank(); ++l) {
      const Eigen::VectorXd col = m.eigenvectors.col(l);
      w.put_bytes(col.data(), static_cast<std::size_t>(m.dim()) * sizeof(double));
    }
  }
  w.finish();
}

std::pair<std::vector<AffineModel>, int> load_models(const std::string& path) {
  Reader r(path);
  check_preamble(r, kKindModels);
  const auto n_models = r.get<std::uint32_t>();
  const auto dim = static_cast<Eigen::Index>(r.get<std::uint64_t>());
  const int K = static_cast<int>(r.get<std::uint32_t>());
  std::vector<AffineModel> models;
  models.reserve(n_models);
  for (std::uint32_t i = 0; i < n_models; ++i) {
    AffineModel m;
    m.class_id = static_cast<int>(r.get<std::uint32_t>());
    m.train_count = static_cast<int>(r.get<std::uint32_t>());
    const auto rank = static_cast<Eigen::Index>(r.get<std::uint32_t>());
    m.mean.resize(dim);
    r.get_bytes(m.mean.data(), static_cast<std::size_t>(dim) * sizeof(double));
    m.eigenvalues.resize(rank);
    r.get_bytes(m.eigenvalues.data(), static_cast<std::size_t>(rank) * sizeof(double));
    m.eigenvectors.resize(dim, rank);
    for (Eigen::Index l = 0; l < rank; ++l) {
      Eigen::VectorXd col(dim);
      r.get_bytes(col.data(), static_cast<std::size_t>(dim) * sizeof(double));
      m.eigenvectors.col(l) = col;
    }
    models.push_back(std::move(m));
  }
  return {models, K};
}

}  // namespace scat
