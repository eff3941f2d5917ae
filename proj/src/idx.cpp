#include "graphssr/idx.hpp"

#include "graphssr/experiment.hpp"
#include "graphssr/rng.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>

namespace graphssr {

namespace {

std::uint32_t read_be32(const std::vector<std::uint8_t>& raw, std::size_t at) {
  return (std::uint32_t{raw[at]} << 24) | (std::uint32_t{raw[at + 1]} << 16) |
         (std::uint32_t{raw[at + 2]} << 8) | std::uint32_t{raw[at + 3]};
}

void write_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

}  // namespace

IdxArray parse_idx(const std::vector<std::uint8_t>& raw) {
  if (raw.size() < 4) throw Error("IDX: file shorter than the magic number");
  IdxArray a;
  a.magic = read_be32(raw, 0);
  std::size_t rank = 0;
  if (a.magic == kIdxImagesMagic) {
    rank = 3;
  } else if (a.magic == kIdxLabelsMagic) {
    rank = 1;
  } else {
    std::ostringstream msg;
    msg << "IDX: bad magic 0x" << std::hex << a.magic;
    throw Error(msg.str());
  }
  const std::size_t header = 4 + 4 * rank;
  if (raw.size() < header) throw Error("IDX: truncated header");
  std::size_t payload = 1;
  for (std::size_t d = 0; d < rank; ++d) {
    a.dims.push_back(read_be32(raw, 4 + 4 * d));
    if (a.dims.back() != 0 && payload > raw.size() / a.dims.back())
      throw Error("IDX: truncated payload");
    payload *= a.dims.back();
  }
  if (raw.size() < header + payload) throw Error("IDX: truncated payload");
  if (raw.size() > header + payload) throw Error("IDX: trailing bytes after payload");
  a.bytes.assign(raw.begin() + static_cast<std::ptrdiff_t>(header), raw.end());
  return a;
}

IdxArray read_idx(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IDX: cannot open " + path.string());
  std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
  return parse_idx(raw);
}

std::vector<std::uint8_t> encode_idx(const IdxArray& a) {
  std::vector<std::uint8_t> out;
  write_be32(out, a.magic);
  for (std::uint32_t d : a.dims) write_be32(out, d);
  out.insert(out.end(), a.bytes.begin(), a.bytes.end());
  return out;
}

MnistSubset mnist_from_idx(const IdxArray& images, const IdxArray& labels) {
  if (images.magic != kIdxImagesMagic) throw Error("IDX: expected an image file");
  if (labels.magic != kIdxLabelsMagic) throw Error("IDX: expected a label file");
  const Index count = images.dims[0];
  const Index width = static_cast<Index>(images.dims[1]) * images.dims[2];
  if (labels.dims[0] != images.dims[0]) {
    std::ostringstream msg;
    msg << "IDX: " << images.dims[0] << " images but " << labels.dims[0] << " labels";
    throw Error(msg.str());
  }
  MnistSubset s;
  s.images.resize(count, width);
  for (Index i = 0; i < count; ++i)
    for (Index p = 0; p < width; ++p)
      s.images(i, p) = images.bytes[static_cast<std::size_t>(i * width + p)] / 255.0;
  s.labels.assign(labels.bytes.begin(), labels.bytes.end());
  return s;
}

MnistSubset load_mnist(const std::filesystem::path& images, const std::filesystem::path& labels) {
  return mnist_from_idx(read_idx(images), read_idx(labels));
}

MnistExperiment build_mnist_experiment(const MnistSubset& subset, const MnistOptions& opt,
                                       Execution exec) {
  if (opt.digits.empty()) throw Error("MNIST: no digits selected");
  if (opt.per_digit < 1) throw Error("MNIST: per-digit sample size must be positive");
  if (static_cast<Index>(subset.labels.size()) != subset.images.rows())
    throw Error("MNIST: image and label counts differ");
  Rng rng(opt.seed);
  std::vector<Index> source;
  std::vector<Index> sizes;
  for (int digit : opt.digits) {
    std::vector<Index> pool;
    for (std::size_t i = 0; i < subset.labels.size(); ++i)
      if (subset.labels[i] == digit) pool.push_back(static_cast<Index>(i));
    if (static_cast<Index>(pool.size()) < opt.per_digit) {
      std::ostringstream msg;
      msg << "MNIST: digit " << digit << " has " << pool.size() << " images, "
          << opt.per_digit << " requested";
      throw Error(msg.str());
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(static_cast<std::size_t>(opt.per_digit));
    std::sort(pool.begin(), pool.end());
    source.insert(source.end(), pool.begin(), pool.end());
    sizes.push_back(opt.per_digit);
  }

  Matrix points(static_cast<Index>(source.size()), subset.images.cols());
  for (std::size_t v = 0; v < source.size(); ++v)
    points.row(static_cast<Index>(v)) = subset.images.row(source[v]);
  WeightMatrix w = zelnik_perona_weights(PointCloud(points), opt.k_nn, exec);
  Clustering clustering = Clustering::blocks(sizes);

  const Dataset data = ScaledGraphDataset{w, clustering};
  SweepProblem prob = sweep_problem(data, opt.p, opt.label_seed);
  return MnistExperiment{std::move(points), std::move(source), std::move(w),
                         std::move(clustering), std::move(prob.labels), std::move(prob.truth)};
}

}  // namespace graphssr
