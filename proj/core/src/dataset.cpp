#include "tvnet/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "tvnet/error.hpp"
#include "tvnet/text_io.hpp"

namespace tvnet {

PseudoTimeDataset::PseudoTimeDataset(Eigen::MatrixXd values, std::vector<int> time_label,
                                     std::vector<std::string> node_names,
                                     std::vector<long long> original_labels)
    : values_(std::move(values)),
      time_(std::move(time_label)),
      names_(std::move(node_names)),
      original_labels_(std::move(original_labels)) {
  require(static_cast<std::size_t>(values_.rows()) == time_.size(), ErrorKind::kValidationError,
          "one time label is required per sample row", "time");
  require(static_cast<std::size_t>(values_.cols()) == names_.size(), ErrorKind::kValidationError,
          "one name is required per node column");
  require(values_.rows() > 0 && values_.cols() > 0, ErrorKind::kValidationError,
          "dataset must have at least one row and one node");
  if (!values_.allFinite()) fail(ErrorKind::kValidationError, "all values must be finite");

  std::set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty()) fail(ErrorKind::kValidationError, "node names must be non-empty");
    if (!seen.insert(name).second) fail(ErrorKind::kValidationError, "duplicate node name", name);
  }

  const int max_t = *std::max_element(time_.begin(), time_.end());
  for (int t : time_) {
    if (t < 1) fail(ErrorKind::kValidationError, "time labels must be 1-based", "time");
  }
  group_rows_.assign(static_cast<std::size_t>(max_t), {});
  for (std::size_t r = 0; r < time_.size(); ++r) group_rows_[time_[r] - 1].push_back(r);
  for (std::size_t t = 0; t < group_rows_.size(); ++t) {
    if (group_rows_[t].empty()) {
      fail(ErrorKind::kValidationError, "time group " + std::to_string(t + 1) + " is empty", "time");
    }
  }
  if (!original_labels_.empty() && original_labels_.size() != group_rows_.size()) {
    fail(ErrorKind::kValidationError, "label mapping must have one entry per time group");
  }
}

std::vector<std::size_t> PseudoTimeDataset::group_sizes() const {
  std::vector<std::size_t> n;
  n.reserve(group_rows_.size());
  for (const auto& g : group_rows_) n.push_back(g.size());
  return n;
}

const std::vector<std::size_t>& PseudoTimeDataset::rows_at(int t) const {
  require(t >= 1 && static_cast<std::size_t>(t) <= group_rows_.size(), ErrorKind::kInvalidParameter,
          "time index out of range", "t");
  return group_rows_[static_cast<std::size_t>(t) - 1];
}

std::size_t PseudoTimeDataset::node_index(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) fail(ErrorKind::kInvalidParameter, "unknown node '" + name + "'", name);
  return static_cast<std::size_t>(it - names_.begin());
}

PseudoTimeDataset load_dataset(const std::filesystem::path& path) {
  const auto lines = text::read_lines(path);
  std::vector<std::string> header;
  std::size_t first_data = 0;
  for (; first_data < lines.size(); ++first_data) {
    if (!text::trim(lines[first_data]).empty()) {
      header = text::split(lines[first_data], ',');
      ++first_data;
      break;
    }
  }
  if (header.empty() || text::trim(header[0]) != "time") {
    fail(ErrorKind::kFormatError, "first column must be 'time'", "time");
  }
  std::vector<std::string> names;
  for (std::size_t c = 1; c < header.size(); ++c) names.emplace_back(text::trim(header[c]));

  std::vector<long long> raw_time;
  std::vector<double> cells;
  for (std::size_t i = first_data; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    const auto fields = text::split(lines[i], ',');
    if (fields.size() != header.size()) {
      fail(ErrorKind::kFormatError,
           "line " + std::to_string(i + 1) + " has " + std::to_string(fields.size()) +
               " fields, expected " + std::to_string(header.size()));
    }
    raw_time.push_back(text::parse_int(fields[0], "time"));
    for (std::size_t c = 1; c < fields.size(); ++c) cells.push_back(text::parse_double(fields[c], names[c - 1]));
  }
  if (raw_time.empty()) fail(ErrorKind::kValidationError, "dataset has no rows");

  std::set<long long> distinct(raw_time.begin(), raw_time.end());
  if (*distinct.begin() < 1) {
    fail(ErrorKind::kValidationError, "time labels must be positive integers starting at 1", "time");
  }
  std::map<long long, int> remap;
  std::vector<long long> original;
  for (long long label : distinct) {
    remap.emplace(label, static_cast<int>(remap.size()) + 1);
    original.push_back(label);
  }
  const bool identity = original.back() == static_cast<long long>(original.size());

  const auto n = static_cast<Eigen::Index>(raw_time.size());
  const auto p = static_cast<Eigen::Index>(names.size());
  Eigen::MatrixXd values(n, p);
  std::vector<int> time(raw_time.size());
  for (Eigen::Index r = 0; r < n; ++r) {
    time[static_cast<std::size_t>(r)] = remap.at(raw_time[static_cast<std::size_t>(r)]);
    for (Eigen::Index c = 0; c < p; ++c) values(r, c) = cells[static_cast<std::size_t>(r * p + c)];
  }
  return PseudoTimeDataset(std::move(values), std::move(time), std::move(names),
                           identity ? std::vector<long long>{} : std::move(original));
}

void save_dataset(const PseudoTimeDataset& ds, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "time";
  for (const auto& name : ds.node_names()) out << ',' << name;
  out << '\n';
  const auto& labels = ds.original_labels();
  for (std::size_t r = 0; r < ds.num_samples(); ++r) {
    const int t = ds.time_label()[r];
    out << (labels.empty() ? static_cast<long long>(t) : labels[static_cast<std::size_t>(t) - 1]);
    for (std::size_t c = 0; c < ds.num_nodes(); ++c) {
      out << ',' << text::format_double(ds.values()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
    }
    out << '\n';
  }
  text::write_file_atomic(path, out.str());
}

PseudoTimeDataset standardize(const PseudoTimeDataset& ds) {
  Eigen::MatrixXd v = ds.values();
  const auto n = v.rows();
  require(n >= 2, ErrorKind::kValidationError, "standardization needs at least two samples");
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    const double mean = v.col(c).mean();
    v.col(c).array() -= mean;
    const double var = v.col(c).squaredNorm() / static_cast<double>(n - 1);
    if (!(var > 1e-12)) {
      fail(ErrorKind::kDegenerateColumn,
           "column '" + ds.node_names()[static_cast<std::size_t>(c)] + "' has (near-)zero variance",
           ds.node_names()[static_cast<std::size_t>(c)]);
    }
    v.col(c) /= std::sqrt(var);
  }
  return PseudoTimeDataset(std::move(v), ds.time_label(), ds.node_names(), ds.original_labels());
}

}  // namespace tvnet
