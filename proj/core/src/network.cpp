#include "tvnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "tvnet/error.hpp"
#include "tvnet/text_io.hpp"

namespace tvnet {

namespace {

double median_of(std::vector<double>& v) {
  const std::size_t n = v.size();
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

// Dense directed magnitude table |b^(i)_{t,j}| indexed [t][i * p + j].
std::vector<std::vector<double>> directed_magnitudes(std::span<const LocalFitSummary> summaries,
                                                     std::size_t p, std::size_t& T) {
  T = summaries.empty() ? 0 : summaries.front().num_times();
  std::vector<std::vector<double>> mag(T, std::vector<double>(p * p, 0.0));
  std::set<std::size_t> seen;
  for (const auto& s : summaries) {
    require(s.target < p, ErrorKind::kInvalidInput, "summary target outside the node list");
    require(seen.insert(s.target).second, ErrorKind::kInvalidInput,
            "duplicate summary for target " + std::to_string(s.target));
    require(s.num_times() == T, ErrorKind::kInvalidInput, "summaries disagree on the number of times");
    require(static_cast<std::size_t>(s.median.cols()) == s.predictors.size(), ErrorKind::kInvalidInput,
            "summary dimensions are inconsistent");
    for (std::size_t c = 0; c < s.predictors.size(); ++c) {
      const std::size_t j = s.predictors[c];
      require(j < p && j != s.target, ErrorKind::kInvalidInput, "invalid predictor in summary");
      for (std::size_t t = 0; t < T; ++t)
        mag[t][s.target * p + j] = std::abs(s.median(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(c)));
    }
  }
  return mag;
}

}  // namespace

LocalFitSummary summarize(const PosteriorDraws& draws) {
  const std::size_t n = draws.size();
  require(n >= 2, ErrorKind::kInvalidInput, "summaries need at least two retained draws");
  const std::size_t m = draws.num_predictors();
  const std::size_t T = draws.meta.num_times;
  LocalFitSummary s;
  s.target = draws.meta.target;
  s.predictors = draws.meta.predictors;
  s.median.resize(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(m));
  s.sd.resize(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(m));
  std::vector<double> buf(n);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t j = 0; j < m; ++j) {
      const Eigen::VectorXd col = draws.b_series(t, j);
      const double mean = col.mean();
      const double var = (col.array() - mean).square().sum() / static_cast<double>(n - 1);
      std::copy(col.data(), col.data() + n, buf.begin());
      s.median(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = median_of(buf);
      s.sd(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = std::sqrt(var);
    }
  return s;
}

TimeVaryingNetwork assemble_network(std::span<const LocalFitSummary> summaries,
                                    const std::vector<std::string>& nodes, double phi) {
  require(phi >= 0.0, ErrorKind::kInvalidParameter, "phi must be nonnegative", "phi");
  const std::size_t p = nodes.size();
  std::size_t T = 0;
  const auto mag = directed_magnitudes(summaries, p, T);
  TimeVaryingNetwork net;
  net.nodes = nodes;
  net.num_times = T;
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j) {
        const double forward = mag[t][i * p + j];
        const double backward = mag[t][j * p + i];
        if (forward > phi && backward > phi) net.edges.push_back({i, j, t + 1, std::min(forward, backward)});
      }
  return net;
}

std::vector<std::size_t> sweep_threshold(std::span<const LocalFitSummary> summaries,
                                         const std::vector<std::string>& nodes,
                                         std::span<const double> phi_grid) {
  std::vector<std::size_t> counts;
  counts.reserve(phi_grid.size());
  for (double phi : phi_grid) counts.push_back(assemble_network(summaries, nodes, phi).edges.size());
  return counts;
}

void export_edges(const TimeVaryingNetwork& net, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "t,i,j,weight\n";
  for (const auto& e : net.edges) {
    out << e.t << ',' << net.nodes.at(e.i) << ',' << net.nodes.at(e.j) << ',' << text::format_double(e.weight)
        << '\n';
  }
  text::write_file_atomic(path, out.str());
}

TimeVaryingNetwork import_edges(const std::filesystem::path& path, const std::vector<std::string>& nodes,
                                std::size_t num_times) {
  const auto lines = text::read_lines(path);
  if (lines.empty() || lines[0] != "t,i,j,weight") {
    fail(ErrorKind::kFormatError, "edge file must start with t,i,j,weight", path.string());
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < nodes.size(); ++k) index.emplace(nodes[k], k);
  auto lookup = [&](const std::string& name) {
    const auto it = index.find(name);
    if (it == index.end()) fail(ErrorKind::kFormatError, "unknown node '" + name + "'", path.string());
    return it->second;
  };
  TimeVaryingNetwork net;
  net.nodes = nodes;
  net.num_times = num_times;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (text::trim(lines[k]).empty()) continue;
    const auto f = text::split(lines[k], ',');
    if (f.size() != 4) fail(ErrorKind::kFormatError, "malformed edge row", path.string());
    net.edges.push_back({lookup(f[1]), lookup(f[2]), static_cast<std::size_t>(text::parse_int(f[0], "t")),
                         text::parse_double(f[3], "weight")});
  }
  return net;
}

void save_summary(const LocalFitSummary& s, const std::vector<std::string>& nodes,
                  const std::filesystem::path& path) {
  std::ostringstream out;
  out << "# target=" << nodes.at(s.target) << '\n';
  out << "# target_index=" << s.target << '\n';
  out << "# T=" << s.num_times() << '\n';
  out << "t,predictor,predictor_index,median,sd\n";
  for (std::size_t t = 0; t < s.num_times(); ++t)
    for (std::size_t c = 0; c < s.predictors.size(); ++c) {
      const auto tt = static_cast<Eigen::Index>(t);
      const auto cc = static_cast<Eigen::Index>(c);
      out << t + 1 << ',' << nodes.at(s.predictors[c]) << ',' << s.predictors[c] << ','
          << text::format_double(s.median(tt, cc)) << ',' << text::format_double(s.sd(tt, cc)) << '\n';
    }
  text::write_file_atomic(path, out.str());
}

LocalFitSummary load_summary(const std::filesystem::path& path) {
  const auto lines = text::read_lines(path);
  if (lines.size() < 4 || lines[0].rfind("# target=", 0) != 0 || lines[1].rfind("# target_index=", 0) != 0 ||
      lines[2].rfind("# T=", 0) != 0 || lines[3] != "t,predictor,predictor_index,median,sd") {
    fail(ErrorKind::kFormatError, "not a summary file", path.string());
  }
  LocalFitSummary s;
  s.target = static_cast<std::size_t>(text::parse_int(lines[1].substr(15), "target_index"));
  const auto T = static_cast<std::size_t>(text::parse_int(lines[2].substr(4), "T"));
  const std::size_t rows = lines.size() - 4;
  require(T > 0 && rows % T == 0, ErrorKind::kFormatError, "summary row count is not a multiple of T");
  const std::size_t m = rows / T;
  s.median.resize(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(m));
  s.sd.resize(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(m));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto f = text::split(lines[r + 4], ',');
    if (f.size() != 5) fail(ErrorKind::kFormatError, "malformed summary row", path.string());
    const std::size_t t = r / m;
    const std::size_t c = r % m;
    if (static_cast<std::size_t>(text::parse_int(f[0], "t")) != t + 1) {
      fail(ErrorKind::kFormatError, "summary rows out of order", path.string());
    }
    const auto idx = static_cast<std::size_t>(text::parse_int(f[2], "predictor_index"));
    if (t == 0) s.predictors.push_back(idx);
    else if (s.predictors[c] != idx) fail(ErrorKind::kFormatError, "summary predictors differ across t", path.string());
    s.median(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(c)) = text::parse_double(f[3], "median");
    s.sd(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(c)) = text::parse_double(f[4], "sd");
  }
  return s;
}

}  // namespace tvnet
