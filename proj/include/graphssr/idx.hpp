#pragma once

#include "graphssr/graph.hpp"
#include "graphssr/inference.hpp"
#include "graphssr/types.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace graphssr {

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

// Unsigned-byte IDX container: images (rank 3) or labels (rank 1).
struct IdxArray {
  std::uint32_t magic = 0;
  std::vector<std::uint32_t> dims;
  std::vector<std::uint8_t> bytes;
};

IdxArray read_idx(const std::filesystem::path& path);
IdxArray parse_idx(const std::vector<std::uint8_t>& raw);
std::vector<std::uint8_t> encode_idx(const IdxArray& array);

struct MnistSubset {
  Matrix images;            // one flattened image per row, pixels in [0, 1]
  std::vector<int> labels;  // digit per image
};

MnistSubset mnist_from_idx(const IdxArray& images, const IdxArray& labels);
MnistSubset load_mnist(const std::filesystem::path& images, const std::filesystem::path& labels);

struct MnistOptions {
  std::vector<int> digits{1, 4, 7};
  Index per_digit = 100;
  int k_nn = 15;
  std::uint64_t seed = 1;
  double p = 0.0;  // normalization used for the chi_k ground truth
  std::optional<std::uint64_t> label_seed;
};

struct MnistExperiment {
  Matrix points;                  // selected images, grouped by digit
  std::vector<Index> source;      // row of each vertex in the input subset
  WeightMatrix weights;           // Zelnik-Perona weights on the selection
  Clustering clustering;          // true digit classes
  LabelSet labels;
  GroundTruth truth;
};

MnistExperiment build_mnist_experiment(const MnistSubset& subset, const MnistOptions& options,
                                       Execution exec = Execution::parallel);

}  // namespace graphssr
