#include "graphssr/csvio.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace graphssr::csv {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  return in;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Next line that is neither blank nor a '#' comment; strips a trailing '\r'.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    return true;
  }
  return false;
}

Index parse_index(const std::string& text) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw Error("CSV: bad integer '" + text + "'");
  return static_cast<Index>(v);
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

}  // namespace

std::string format(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw Error("CSV: bad number '" + text + "'");
  return v;
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
  auto out = open_out(path);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format(m(i, j));
    out << '\n';
  }
}

Matrix read_matrix(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (next_line(in, line)) {
    std::vector<double> row;
    for (const auto& cell : split(line)) row.push_back(parse_double(cell));
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error("CSV: ragged matrix in " + path.string());
    rows.push_back(std::move(row));
  }
  Matrix m(static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

void write_edge_list(const std::filesystem::path& path, const WeightMatrix& w) {
  auto out = open_out(path);
  out << "i,j,weight\n";
  for (Index i = 0; i < w.size(); ++i)
    for (Index j = i; j < w.size(); ++j)
      if (w(i, j) != 0.0) out << i << ',' << j << ',' << format(w(i, j)) << '\n';
}

WeightMatrix read_edge_list(const std::filesystem::path& path, std::optional<Index> vertices) {
  auto in = open_in(path);
  std::string line;
  if (!next_line(in, line) || line != "i,j,weight")
    throw Error("edge list " + path.string() + " lacks the i,j,weight header");
  std::vector<std::tuple<Index, Index, double>> edges;
  Index n = 0;
  while (next_line(in, line)) {
    const auto cells = split(line);
    if (cells.size() != 3) throw Error("edge list: expected 3 columns: " + line);
    const Index i = parse_index(cells[0]);
    const Index j = parse_index(cells[1]);
    if (i < 0 || j < 0) throw Error("edge list: negative vertex index");
    edges.emplace_back(i, j, parse_double(cells[2]));
    n = std::max(n, std::max(i, j) + 1);
  }
  if (vertices) {
    if (*vertices < n) throw Error("edge list references vertices beyond the given count");
    n = *vertices;
  }
  Matrix w = Matrix::Zero(n, n);
  for (const auto& [i, j, v] : edges) w(i, j) = w(j, i) = v;
  return WeightMatrix(std::move(w));
}

void write_clustering(const std::filesystem::path& path, const Clustering& c) {
  auto out = open_out(path);
  out << "vertex,cluster_id\n";
  for (Index v = 0; v < c.size(); ++v) out << v << ',' << c.cluster_of(v) + 1 << '\n';
}

Clustering read_clustering(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!next_line(in, line) || line != "vertex,cluster_id")
    throw Error("clustering " + path.string() + " lacks the vertex,cluster_id header");
  std::map<Index, int> entries;
  int k = 0;
  while (next_line(in, line)) {
    const auto cells = split(line);
    if (cells.size() != 2) throw Error("clustering: expected 2 columns: " + line);
    const Index v = parse_index(cells[0]);
    const auto id = static_cast<int>(parse_index(cells[1]));
    if (id < 1) throw Error("clustering: cluster ids start at 1");
    if (!entries.emplace(v, id - 1).second) throw Error("clustering: vertex listed twice");
    k = std::max(k, id);
  }
  std::vector<int> a;
  for (const auto& [v, id] : entries) {
    if (v != static_cast<Index>(a.size())) throw Error("clustering: vertex ids not contiguous");
    a.push_back(id);
  }
  return Clustering(std::move(a), k);
}

void write_vertex_matrix(const std::filesystem::path& path, const Matrix& m,
                         const std::vector<Index>& ids) {
  if (static_cast<Index>(ids.size()) != m.cols()) throw Error("vertex id count mismatch");
  auto out = open_out(path);
  for (std::size_t j = 0; j < ids.size(); ++j) out << (j ? "," : "") << ids[j];
  out << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format(m(i, j));
    out << '\n';
  }
}

Matrix read_vertex_matrix(const std::filesystem::path& path, std::vector<Index>* ids) {
  auto in = open_in(path);
  std::string line;
  if (!next_line(in, line)) throw Error("vertex matrix " + path.string() + " is empty");
  std::vector<Index> header;
  for (const auto& cell : split(line)) header.push_back(parse_index(cell));
  std::vector<std::vector<double>> rows;
  while (next_line(in, line)) {
    std::vector<double> row;
    for (const auto& cell : split(line)) row.push_back(parse_double(cell));
    if (row.size() != header.size()) throw Error("vertex matrix: row width mismatch");
    rows.push_back(std::move(row));
  }
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(header.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < header.size(); ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  if (ids) *ids = std::move(header);
  return m;
}

void write_spectrum(const std::filesystem::path& path, const Spectrum& s) {
  auto out = open_out(path);
  out << "eigenvalue";
  for (Index i = 0; i < s.size(); ++i) out << ',' << i;
  out << '\n';
  for (Index j = 0; j < s.size(); ++j) {
    out << format(s.values(j));
    for (Index i = 0; i < s.size(); ++i) out << ',' << format(s.vectors(i, j));
    out << '\n';
  }
}

void write_perturb_reports(const std::filesystem::path& path,
                           const std::vector<PerturbReport>& reports) {
  auto out = open_out(path);
  const std::size_t k = reports.empty() ? 0 : reports.front().residuals.size();
  out << "eps,subspace_distance,sigma_next,lower_bound";
  for (std::size_t c = 0; c < k; ++c) out << ",residual_" << c + 1;
  out << '\n';
  for (const auto& r : reports) {
    out << format(r.eps) << ',' << format(r.subspace_distance) << ',' << format(r.sigma_next)
        << ',' << (r.lower_bound ? format(*r.lower_bound) : std::string());
    for (double v : r.residuals) out << ',' << format(v);
    out << '\n';
  }
}

void write_sweep(std::ostream& out, const std::vector<SweepCell>& cells,
                 const std::string& meta) {
  bool any_error = false;
  for (const auto& c : cells) any_error = any_error || !c.error.empty();
  if (!meta.empty()) out << "# " << sanitize(meta) << '\n';
  out << kSweepHeader << (any_error ? ",error" : "") << '\n';
  for (const auto& c : cells) {
    const ContractionReport& r = c.report;
    out << format(r.eps) << ',' << format(r.gamma) << ',' << format(r.alpha) << ','
        << format(r.tau) << ',';
    if (c.error.empty()) {
      out << format(r.trace_term) << ',' << format(r.variance_term) << ','
          << format(r.bias_term) << ',' << format(r.total);
    } else {
      out << ",,,";
    }
    if (any_error) out << ',' << sanitize(c.error);
    out << '\n';
  }
}

std::vector<SweepCell> read_sweep(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw Error("sweep CSV is empty");
  const std::string header = kSweepHeader;
  const bool has_error = line == header + ",error";
  if (line != header && !has_error) throw Error("sweep CSV has an unexpected header: " + line);
  std::vector<SweepCell> cells;
  while (next_line(in, line)) {
    auto f = split(line);
    if (f.size() < 8) throw Error("sweep CSV: short row: " + line);
    SweepCell c;
    ContractionReport& r = c.report;
    r.eps = parse_double(f[0]);
    r.gamma = parse_double(f[1]);
    r.alpha = parse_double(f[2]);
    r.tau = parse_double(f[3]);
    if (has_error && f.size() > 8) c.error = f[8];
    if (c.error.empty()) {
      r.trace_term = parse_double(f[4]);
      r.variance_term = parse_double(f[5]);
      r.bias_term = parse_double(f[6]);
      r.total = parse_double(f[7]);
    }
    cells.push_back(std::move(c));
  }
  return cells;
}

void write_slopes(const std::filesystem::path& path, const SlopeSurface& s) {
  auto out = open_out(path);
  out << "eps\\gamma";
  for (double g : s.gamma) out << ',' << format(g);
  out << '\n';
  for (std::size_t i = 0; i < s.eps.size(); ++i) {
    out << format(s.eps[i]);
    for (std::size_t j = 0; j < s.gamma.size(); ++j)
      out << ',' << format(s.slope(static_cast<Index>(i), static_cast<Index>(j)));
    out << '\n';
  }
}

void write_mc_check(const std::filesystem::path& path, const std::vector<McCheckRow>& rows) {
  auto out = open_out(path);
  out << "eps,gamma,alpha,I,mc_estimate,mc_stderr,samples\n";
  for (const auto& r : rows)
    out << format(r.eps) << ',' << format(r.gamma) << ',' << format(r.alpha) << ','
        << format(r.exact) << ',' << format(r.estimate.mean) << ','
        << format(r.estimate.std_error) << ',' << r.estimate.samples << '\n';
}

}  // namespace graphssr::csv
