#pragma once

#include "graphssr/contraction.hpp"
#include "graphssr/experiment.hpp"
#include "graphssr/graph.hpp"
#include "graphssr/spectral.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace graphssr::csv {

// Shortest decimal string that parses back to the same double.
std::string format(double v);
double parse_double(const std::string& text);

void write_matrix(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix(const std::filesystem::path& path);

// Columns i,j,weight with 0-based indices; each unordered pair appears once (i <= j).
void write_edge_list(const std::filesystem::path& path, const WeightMatrix& w);
WeightMatrix read_edge_list(const std::filesystem::path& path,
                            std::optional<Index> vertices = std::nullopt);

// Columns vertex,cluster_id with ids starting at 1.
void write_clustering(const std::filesystem::path& path, const Clustering& c);
Clustering read_clustering(const std::filesystem::path& path);

// Header row of vertex ids, then one row per matrix row.
void write_vertex_matrix(const std::filesystem::path& path, const Matrix& m,
                         const std::vector<Index>& vertex_ids);
Matrix read_vertex_matrix(const std::filesystem::path& path, std::vector<Index>* vertex_ids);

void write_spectrum(const std::filesystem::path& path, const Spectrum& s);
void write_perturb_reports(const std::filesystem::path& path,
                           const std::vector<PerturbReport>& reports);

inline constexpr const char* kSweepHeader =
    "eps,gamma,alpha,tau,trace_term,variance_term,bias_term,I";

// The error column is appended only when some cell failed. A leading '#' line
// carries run metadata unless meta is empty.
void write_sweep(std::ostream& out, const std::vector<SweepCell>& cells,
                 const std::string& meta = {});
std::vector<SweepCell> read_sweep(std::istream& in);

// First row: gamma values; first column: eps values.
void write_slopes(const std::filesystem::path& path, const SlopeSurface& s);

void write_mc_check(const std::filesystem::path& path, const std::vector<McCheckRow>& rows);

}  // namespace graphssr::csv
