#include "tvnet/draws_io.hpp"

#include <map>
#include <sstream>

#include "tvnet/error.hpp"
#include "tvnet/text_io.hpp"

namespace tvnet {

using text::format_double;

void save_draws(const PosteriorDraws& d, const std::filesystem::path& path) {
  const auto& meta = d.meta;
  const std::size_t m = d.num_predictors();
  const std::size_t T = meta.num_times;
  std::ostringstream out;
  out << kDrawsMagic << '\n';
  out << "target=" << meta.target_name << '\n';
  out << "target_index=" << meta.target << '\n';
  out << "predictors=";
  for (std::size_t j = 0; j < meta.predictor_names.size(); ++j) out << (j ? ";" : "") << meta.predictor_names[j];
  out << "\npredictor_indices=";
  for (std::size_t j = 0; j < meta.predictors.size(); ++j) out << (j ? "," : "") << meta.predictors[j];
  out << "\nlambda=" << format_double(meta.hp.lambda) << '\n';
  out << "k=" << format_double(meta.hp.k) << '\n';
  out << "T=" << T << '\n';
  out << "seed=" << meta.config.seed << '\n';
  out << "iterations=" << meta.config.iterations << '\n';
  out << "burn_in=" << meta.config.burn_in << '\n';
  out << "thin=" << meta.config.thin << '\n';
  out << "fixed_rho=" << (meta.config.fixed_rho ? format_double(*meta.config.fixed_rho) : "") << '\n';
  out << "draws=" << d.size() << '\n';

  auto name = [&](std::size_t j) {
    return j < meta.predictor_names.size() ? meta.predictor_names[j] : std::to_string(j);
  };
  out << "a,tau,log_lik";
  for (std::size_t j = 0; j < m; ++j) out << ",rho:" << name(j);
  for (std::size_t j = 0; j < m; ++j) out << ",nu:" << name(j);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t j = 0; j < m; ++j) out << ",b:" << t + 1 << ':' << name(j);
  out << '\n';

  for (std::size_t r = 0; r < d.size(); ++r) {
    const auto rr = static_cast<Eigen::Index>(r);
    out << format_double(d.a[rr]) << ',' << format_double(d.tau[rr]) << ',' << format_double(d.log_lik[rr]);
    for (Eigen::Index j = 0; j < d.rho.cols(); ++j) out << ',' << format_double(d.rho(rr, j));
    for (Eigen::Index j = 0; j < d.nu.cols(); ++j) out << ',' << format_double(d.nu(rr, j));
    for (Eigen::Index c = 0; c < d.B.cols(); ++c) out << ',' << format_double(d.B(rr, c));
    out << '\n';
  }
  text::write_file_atomic(path, out.str());
}

PosteriorDraws load_draws(const std::filesystem::path& path) {
  const auto lines = text::read_lines(path);
  if (lines.empty() || lines[0] != kDrawsMagic) {
    fail(ErrorKind::kFormatError, "not a tvnet draws file (v1)", path.string());
  }
  std::map<std::string, std::string> kv;
  std::size_t i = 1;
  for (; i < lines.size(); ++i) {
    const auto eq = lines[i].find('=');
    if (eq == std::string::npos) break;
    kv[lines[i].substr(0, eq)] = lines[i].substr(eq + 1);
  }
  auto get = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) fail(ErrorKind::kFormatError, "missing header key '" + key + "'", path.string());
    return it->second;
  };

  PosteriorDraws d;
  auto& meta = d.meta;
  meta.target_name = get("target");
  meta.target = static_cast<std::size_t>(text::parse_int(get("target_index"), "target_index"));
  if (!get("predictors").empty()) meta.predictor_names = text::split(get("predictors"), ';');
  if (!get("predictor_indices").empty()) {
    for (const auto& s : text::split(get("predictor_indices"), ','))
      meta.predictors.push_back(static_cast<std::size_t>(text::parse_int(s, "predictor_indices")));
  }
  meta.hp.lambda = text::parse_double(get("lambda"), "lambda");
  meta.hp.k = text::parse_double(get("k"), "k");
  meta.num_times = static_cast<std::size_t>(text::parse_int(get("T"), "T"));
  meta.config.seed = std::stoull(get("seed"));
  meta.config.iterations = static_cast<std::size_t>(text::parse_int(get("iterations"), "iterations"));
  meta.config.burn_in = static_cast<std::size_t>(text::parse_int(get("burn_in"), "burn_in"));
  meta.config.thin = static_cast<std::size_t>(text::parse_int(get("thin"), "thin"));
  if (!get("fixed_rho").empty()) meta.config.fixed_rho = text::parse_double(get("fixed_rho"), "fixed_rho");
  const auto count = static_cast<Eigen::Index>(text::parse_int(get("draws"), "draws"));

  const auto m = static_cast<Eigen::Index>(meta.predictor_names.size());
  const auto T = static_cast<Eigen::Index>(meta.num_times);
  const auto width = static_cast<std::size_t>(3 + 2 * m + T * m);
  if (i >= lines.size() || text::split(lines[i], ',').size() != width) {
    fail(ErrorKind::kFormatError, "draws column header does not match metadata", path.string());
  }
  ++i;

  d.a.resize(count);
  d.tau.resize(count);
  d.log_lik.resize(count);
  d.rho.resize(count, m);
  d.nu.resize(count, m);
  d.B.resize(count, T * m);
  for (Eigen::Index r = 0; r < count; ++r, ++i) {
    if (i >= lines.size()) fail(ErrorKind::kFormatError, "draws file is truncated", path.string());
    const auto f = text::split(lines[i], ',');
    if (f.size() != width) fail(ErrorKind::kFormatError, "malformed draw row", path.string());
    std::size_t c = 0;
    d.a[r] = text::parse_double(f[c++], "a");
    d.tau[r] = text::parse_double(f[c++], "tau");
    d.log_lik[r] = text::parse_double(f[c++], "log_lik");
    for (Eigen::Index j = 0; j < m; ++j) d.rho(r, j) = text::parse_double(f[c++], "rho");
    for (Eigen::Index j = 0; j < m; ++j) d.nu(r, j) = text::parse_double(f[c++], "nu");
    for (Eigen::Index k = 0; k < T * m; ++k) d.B(r, k) = text::parse_double(f[c++], "b");
  }
  return d;
}

}  // namespace tvnet
