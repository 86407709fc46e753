#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace tvnet {

/// Observations grouped by pseudo-time. Rows are samples, columns are nodes;
/// every row carries a time label in 1..T and every group is non-empty.
class PseudoTimeDataset {
 public:
  /// `original_labels[t - 1]` is the label that was mapped to time t; empty
  /// means labels were already 1..T.
  PseudoTimeDataset(Eigen::MatrixXd values, std::vector<int> time_label,
                    std::vector<std::string> node_names, std::vector<long long> original_labels = {});

  const Eigen::MatrixXd& values() const noexcept { return values_; }
  const std::vector<int>& time_label() const noexcept { return time_; }
  const std::vector<std::string>& node_names() const noexcept { return names_; }
  const std::vector<long long>& original_labels() const noexcept { return original_labels_; }

  std::size_t num_samples() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t num_nodes() const noexcept { return static_cast<std::size_t>(values_.cols()); }
  std::size_t num_times() const noexcept { return group_rows_.size(); }
  /// n_t for t = 1..T, stored at index t - 1.
  std::vector<std::size_t> group_sizes() const;
  /// Row indices of group t (1-based t), in file order.
  const std::vector<std::size_t>& rows_at(int t) const;

  /// Index of a node by name; throws invalid-parameter when absent.
  std::size_t node_index(const std::string& name) const;

 private:
  Eigen::MatrixXd values_;
  std::vector<int> time_;
  std::vector<std::string> names_;
  std::vector<long long> original_labels_;
  std::vector<std::vector<std::size_t>> group_rows_;
};

/// Reads the dataset CSV: header `time,<node>,...`, one row per sample.
/// Positive integer time labels are re-mapped in increasing order onto 1..T.
PseudoTimeDataset load_dataset(const std::filesystem::path& path);

/// Writes the CSV contract with round-trip exact numbers and original labels.
void save_dataset(const PseudoTimeDataset& ds, const std::filesystem::path& path);

/// Centers every column and scales it to unit sample variance, pooled over
/// all rows. Throws degenerate-column naming the column when its variance is
/// at most 1e-12.
PseudoTimeDataset standardize(const PseudoTimeDataset& ds);

}  // namespace tvnet
