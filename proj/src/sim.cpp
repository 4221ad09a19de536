#include "glstat/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "glstat/kernels.hpp"
#include "glstat/special.hpp"

namespace glstat {

using nlohmann::json;

Estimator MChoice::estimator(std::uint64_t budget) const {
  if (m_eq_n) return [](const Sample& s) { return ml_estimate(s); };
  GMConfig cfg;
  cfg.m = m;
  cfg.budget = budget;
  return [cfg](const Sample& s) { return gm_estimate(s, cfg); };
}

namespace {

std::string kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::table_coverage: return "table_coverage";
    case ExperimentKind::sensitivity_curve: return "sensitivity_curve";
    case ExperimentKind::clt_check: return "clt_check";
    case ExperimentKind::bahadur_decay: return "bahadur_decay";
  }
  return "unknown";
}

ExperimentKind kind_from_name(const std::string& s) {
  if (s == "table_coverage") return ExperimentKind::table_coverage;
  if (s == "sensitivity_curve") return ExperimentKind::sensitivity_curve;
  if (s == "clt_check") return ExperimentKind::clt_check;
  if (s == "bahadur_decay") return ExperimentKind::bahadur_decay;
  throw std::invalid_argument("unknown experiment: " + s);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

double mean_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double variance_of(std::span<const double> xs, double mean) {
  double s = 0.0;
  for (double x : xs) s += (x - mean) * (x - mean);
  return s / static_cast<double>(xs.size() - 1);
}

}  // namespace

void ExperimentConfig::validate() const {
  process.validate();
  if (replicates < 1) throw std::invalid_argument("ExperimentConfig: replicates must be >= 1");
  for (const auto& s : sub) s.validate();
  for (const auto& m : m_values)
    if (!m.m_eq_n && m.m < 2)
      throw std::invalid_argument("ExperimentConfig: kernel dimension must be >= 2");
}

std::vector<double> default_y_grid(int count, double lo, double hi) {
  std::vector<double> grid(static_cast<std::size_t>(count));
  double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] =
        std::exp(llo + (lhi - llo) * i / static_cast<double>(count - 1));
  grid.back() = hi;
  return grid;
}

std::string ExperimentConfig::json_dump() const {
  json j;
  j["experiment"] = kind_name(experiment);
  j["process"] = {{"kind", process.kind == ProcessKind::iid_pareto ? "iid_pareto" : "ar1_pareto"},
                  {"sigma", process.pareto.sigma},
                  {"alpha", process.pareto.alpha},
                  {"rho", process.rho},
                  {"n", process.n}};
  j["m_values"] = json::array();
  for (const auto& m : m_values) {
    if (m.m_eq_n)
      j["m_values"].push_back("n");
    else
      j["m_values"].push_back(m.m);
  }
  j["sub"] = json::array();
  for (const auto& s : sub)
    j["sub"].push_back({{"block_length", s.block_length}, {"gamma", s.gamma}});
  j["replicates"] = replicates;
  j["output_path"] = output_path;
  j["seed"] = seed;
  j["y_grid"] = y_grid;
  j["n_ladder"] = n_ladder;
  j["quantile_p"] = quantile_p;
  return j.dump();
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j = json::parse(text);
  ExperimentConfig cfg;
  cfg.experiment = kind_from_name(j.at("experiment").get<std::string>());

  const json& p = j.at("process");
  std::string kind = p.value("kind", std::string("iid_pareto"));
  if (kind == "iid_pareto")
    cfg.process.kind = ProcessKind::iid_pareto;
  else if (kind == "ar1_pareto")
    cfg.process.kind = ProcessKind::ar1_pareto;
  else
    throw std::invalid_argument("unknown process kind: " + kind);
  cfg.process.pareto.sigma = p.value("sigma", 2.0);
  cfg.process.pareto.alpha = p.value("alpha", 1.0);
  cfg.process.rho = p.value("rho", 0.0);
  cfg.process.n = p.value("n", 100);

  if (j.contains("m_values")) {
    for (const auto& mv : j.at("m_values")) {
      MChoice c;
      if (mv.is_string()) {
        if (mv.get<std::string>() != "n")
          throw std::invalid_argument("m_values entries must be integers or \"n\"");
        c.m_eq_n = true;
      } else {
        c.m = mv.get<int>();
      }
      cfg.m_values.push_back(c);
    }
  } else {
    cfg.m_values.push_back(MChoice{});
  }

  if (j.contains("sub")) {
    for (const auto& s : j.at("sub")) {
      SubsamplingConfig sc;
      sc.block_length = s.at("block_length").get<int>();
      sc.gamma = s.at("gamma").get<double>();
      cfg.sub.push_back(sc);
    }
  } else {
    SubsamplingConfig sc;
    sc.block_length = 15;
    sc.gamma = cfg.experiment == ExperimentKind::sensitivity_curve ? 0.05 : 0.10;
    cfg.sub.push_back(sc);
  }

  cfg.replicates = j.value("replicates", cfg.experiment == ExperimentKind::sensitivity_curve
                                             ? 100
                                             : 500);
  cfg.output_path = j.value("output_path", std::string("out.csv"));
  cfg.seed = j.value("seed", std::uint64_t(0));
  cfg.quantile_p = j.value("quantile_p", 0.5);

  if (j.contains("y_grid")) {
    const json& g = j.at("y_grid");
    if (g.is_array()) {
      cfg.y_grid = g.get<std::vector<double>>();
    } else {
      cfg.y_grid = default_y_grid(g.value("count", 200), g.value("min", 0.1),
                                  g.value("max", 100.0));
    }
  } else if (cfg.experiment == ExperimentKind::sensitivity_curve) {
    cfg.y_grid = default_y_grid();
  }

  if (j.contains("n_ladder")) {
    cfg.n_ladder = j.at("n_ladder").get<std::vector<int>>();
  } else if (cfg.experiment == ExperimentKind::clt_check) {
    cfg.n_ladder = {200, 800, 3200};
  } else if (cfg.experiment == ExperimentKind::bahadur_decay) {
    cfg.n_ladder = {100, 400, 1600};
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json_text(text);
}

std::string config_hash(const ExperimentConfig& config) {
  std::string text = config.json_dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<CoverageRow> run_table_coverage(const ExperimentConfig& config) {
  config.validate();
  if (config.m_values.empty() || config.sub.empty())
    throw std::invalid_argument("table_coverage: m_values and sub must be non-empty");
  int reps = config.replicates;
  double alpha = config.process.pareto.alpha;

  // The same replicate samples feed every (m, b, gamma) row.
  std::vector<Sample> samples(static_cast<std::size_t>(reps));
  for (int r = 0; r < reps; ++r) {
    Rng rng = Rng::stream(config.seed, static_cast<std::uint64_t>(r));
    samples[static_cast<std::size_t>(r)] = generate(config.process, rng);
  }

  std::string process_name =
      config.process.kind == ProcessKind::iid_pareto ? "iid_pareto" : "ar1_pareto";
  std::vector<CoverageRow> rows;
  for (const auto& m : config.m_values) {
    Estimator est = m.estimator();
    for (const auto& sub : config.sub) {
      std::vector<char> covered(static_cast<std::size_t>(reps), 0);
      std::vector<double> lengths(static_cast<std::size_t>(reps), 0.0);
#pragma omp parallel for schedule(dynamic)
      for (int r = 0; r < reps; ++r) {
        SubsampleResult res = confidence_interval(samples[static_cast<std::size_t>(r)], est, sub);
        covered[static_cast<std::size_t>(r)] = res.covers(alpha) ? 1 : 0;
        lengths[static_cast<std::size_t>(r)] = res.length();
      }
      CoverageRow row;
      row.process = process_name;
      row.rho = config.process.rho;
      row.m_label = m.label();
      row.b = sub.block_length;
      row.gamma = sub.gamma;
      row.replicates = reps;
      int hits = 0;
      for (char c : covered) hits += c;
      row.coverage = static_cast<double>(hits) / reps;
      row.mc_stderr = std::sqrt(row.coverage * (1.0 - row.coverage) / reps);
      row.mean_length = mean_of(lengths);
      row.sd_length = reps > 1 ? std::sqrt(variance_of(lengths, row.mean_length)) : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<SensitivityRow> run_sensitivity_curve(const ExperimentConfig& config) {
  config.validate();
  if (config.y_grid.empty()) throw std::invalid_argument("sensitivity_curve: empty y grid");
  double alpha = config.process.pareto.alpha;
  SubsamplingConfig sub = config.sub.empty() ? SubsamplingConfig{15, 0.05} : config.sub.front();

  GMConfig gm;
  for (const auto& m : config.m_values)
    if (!m.m_eq_n) {
      gm.m = m.m;
      break;
    }
  Estimator gm_est = [gm](const Sample& s) { return gm_estimate(s, gm); };
  Estimator ml_est = [](const Sample& s) { return ml_estimate(s); };

  int reps = config.replicates;
  std::vector<Sample> bases(static_cast<std::size_t>(reps));
  for (int r = 0; r < reps; ++r) {
    Rng rng = Rng::stream(config.seed, static_cast<std::uint64_t>(r));
    bases[static_cast<std::size_t>(r)] = generate(config.process, rng);
  }

  // Clean-sample indicators are shared by every grid point.
  std::vector<char> clean_gm(static_cast<std::size_t>(reps)), clean_ml(static_cast<std::size_t>(reps));
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < reps; ++r) {
    clean_gm[static_cast<std::size_t>(r)] =
        confidence_interval(bases[static_cast<std::size_t>(r)], gm_est, sub).covers(alpha) ? 1 : 0;
    clean_ml[static_cast<std::size_t>(r)] =
        confidence_interval(bases[static_cast<std::size_t>(r)], ml_est, sub).covers(alpha) ? 1 : 0;
  }

  std::vector<SensitivityRow> rows(config.y_grid.size());
  for (std::size_t yi = 0; yi < config.y_grid.size(); ++yi) {
    double y = config.y_grid[yi];
    double sum_gm = 0.0, sum_ml = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(+ : sum_gm, sum_ml)
    for (int r = 0; r < reps; ++r) {
      Sample contaminated = bases[static_cast<std::size_t>(r)];
      contaminated.values.push_back(y);
      bool dirty_gm = confidence_interval(contaminated, gm_est, sub).covers(alpha);
      bool dirty_ml = confidence_interval(contaminated, ml_est, sub).covers(alpha);
      sum_gm += clean_gm[static_cast<std::size_t>(r)] - (dirty_gm ? 1.0 : 0.0);
      sum_ml += clean_ml[static_cast<std::size_t>(r)] - (dirty_ml ? 1.0 : 0.0);
    }
    rows[yi] = SensitivityRow{y, sum_gm / reps, sum_ml / reps};
  }
  return rows;
}

std::vector<CltRow> run_clt_check(const ExperimentConfig& config) {
  config.validate();
  if (config.n_ladder.empty()) throw std::invalid_argument("clt_check: empty n ladder");
  double alpha = config.process.pareto.alpha;
  GMConfig gm;
  for (const auto& m : config.m_values)
    if (!m.m_eq_n) {
      gm.m = m.m;
      break;
    }
  int reps = config.replicates;

  std::vector<CltRow> rows;
  for (std::size_t li = 0; li < config.n_ladder.size(); ++li) {
    int n = config.n_ladder[li];
    std::vector<double> draws(static_cast<std::size_t>(reps));
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < reps; ++r) {
      Rng rng = Rng::stream(config.seed,
                            (static_cast<std::uint64_t>(li) << 32) + static_cast<std::uint64_t>(r));
      ProcessConfig pc = config.process;
      pc.n = n;
      Sample s = generate(pc, rng);
      draws[static_cast<std::size_t>(r)] =
          std::sqrt(static_cast<double>(n)) * (gm_estimate(s, gm) - alpha);
    }
    CltRow row;
    row.n = n;
    row.replicates = reps;
    row.mean = mean_of(draws);
    row.variance = variance_of(draws, row.mean);
    double sd = std::sqrt(row.variance);
    double skew = 0.0;
    for (double d : draws) skew += std::pow((d - row.mean) / sd, 3.0);
    row.skewness = skew / reps;
    std::vector<double> standardized(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i) standardized[i] = (draws[i] - row.mean) / sd;
    row.ks_distance = ks_distance_to_normal(std::move(standardized));

    // Batch-means cross-check from one long series: 32 batches of length n.
    {
      ProcessConfig pc = config.process;
      pc.n = 32 * n;
      Rng rng = Rng::stream(config.seed, (static_cast<std::uint64_t>(li) << 32) + 0x80000000ull);
      Sample series = generate(pc, rng);
      Estimator est = [gm](const Sample& s) { return gm_estimate(s, gm); };
      row.lrv_batch_means = long_run_variance_batch_means(series, n, est);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<BahadurRow> run_bahadur_decay(const ExperimentConfig& config) {
  config.validate();
  if (config.n_ladder.empty()) throw std::invalid_argument("bahadur_decay: empty n ladder");
  double alpha = config.process.pareto.alpha;
  double p = config.quantile_p;
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("bahadur_decay: quantile_p must be in (0,1)");
  GMConfig gm;
  for (const auto& m : config.m_values)
    if (!m.m_eq_n) {
      gm.m = m.m;
      break;
    }
  KernelLaw law = gm_pareto_kernel_law(gm.m, alpha);
  double xi = (p == 0.5) ? alpha : law.quantile(p);
  double hf = law.pdf(xi);
  double hF = law.cdf(xi);
  int reps = config.replicates;

  std::vector<BahadurRow> rows;
  for (std::size_t li = 0; li < config.n_ladder.size(); ++li) {
    int n = config.n_ladder[li];
    std::vector<double> scaled(static_cast<std::size_t>(reps));
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < reps; ++r) {
      Rng rng = Rng::stream(config.seed,
                            (static_cast<std::uint64_t>(li) << 32) + static_cast<std::uint64_t>(r));
      ProcessConfig pc = config.process;
      pc.n = n;
      Sample s = generate(pc, rng);
      std::vector<double> values = gm_kernel_values(s, gm);
      auto N = static_cast<double>(values.size());
      std::uint64_t below = 0;
      for (double v : values)
        if (v <= xi) ++below;
      double hn = static_cast<double>(below) / N;
      double pn = p * N;
      auto k = static_cast<std::uint64_t>(std::ceil(pn - 16.0 * pn * 2.2e-16));
      if (k < 1) k = 1;
      if (k > values.size()) k = values.size();
      std::nth_element(values.begin(), values.begin() + (k - 1), values.end());
      double xi_hat = values[k - 1];
      double remainder = xi_hat - xi - (hF - hn) / hf;
      scaled[static_cast<std::size_t>(r)] =
          std::sqrt(static_cast<double>(n)) * std::fabs(remainder);
    }
    std::sort(scaled.begin(), scaled.end());
    BahadurRow row;
    row.n = n;
    row.replicates = reps;
    row.median_scaled_remainder = reps % 2 == 1
                                      ? scaled[static_cast<std::size_t>(reps / 2)]
                                      : 0.5 * (scaled[static_cast<std::size_t>(reps / 2) - 1] +
                                               scaled[static_cast<std::size_t>(reps / 2)]);
    rows.push_back(row);
  }
  return rows;
}

double long_run_variance_batch_means(std::span<const double> series, int batch_len) {
  if (batch_len < 1) throw std::invalid_argument("batch_len must be >= 1");
  std::size_t batches = series.size() / static_cast<std::size_t>(batch_len);
  if (batches < 2) throw std::invalid_argument("need at least two full batches");
  std::vector<double> means(batches);
  for (std::size_t b = 0; b < batches; ++b)
    means[b] = mean_of(series.subspan(b * static_cast<std::size_t>(batch_len),
                                      static_cast<std::size_t>(batch_len)));
  double mu = mean_of(means);
  return batch_len * variance_of(means, mu);
}

double long_run_variance_batch_means(const Sample& series, int batch_len,
                                     const Estimator& estimator) {
  if (batch_len < 1) throw std::invalid_argument("batch_len must be >= 1");
  std::size_t batches = series.n() / static_cast<std::size_t>(batch_len);
  if (batches < 2) throw std::invalid_argument("need at least two full batches");
  std::vector<double> ests(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    Sample seg;
    seg.values.assign(series.values.begin() + static_cast<std::ptrdiff_t>(b * batch_len),
                      series.values.begin() + static_cast<std::ptrdiff_t>((b + 1) * batch_len));
    ests[b] = estimator(seg);
  }
  double mu = mean_of(ests);
  return batch_len * variance_of(ests, mu);
}

double ks_distance_to_normal(std::vector<double> standardized) {
  if (standardized.empty()) throw std::invalid_argument("ks_distance_to_normal: empty input");
  std::sort(standardized.begin(), standardized.end());
  auto n = static_cast<double>(standardized.size());
  double d = 0.0;
  for (std::size_t i = 0; i < standardized.size(); ++i) {
    double phi = normal_cdf(standardized[i]);
    d = std::max(d, std::fabs((i + 1) / n - phi));
    d = std::max(d, std::fabs(phi - i / n));
  }
  return d;
}

double ks_two_sample_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty input");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / a.size() -
                              static_cast<double>(j) / b.size()));
  }
  return d;
}

double ks_two_sample_pvalue(std::size_t na, std::size_t nb, double distance) {
  double ne = static_cast<double>(na) * nb / (na + nb);
  double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * distance;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::fabs(term) < 1e-12) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

namespace {

std::string manifest_line(const ExperimentConfig& config) {
  return std::string("# glstat ") + kVersion + " experiment=" + kind_name(config.experiment) +
         " config=" + config_hash(config) + " seed=" + std::to_string(config.seed) +
         " replicates=" + std::to_string(config.replicates) + "\n";
}

}  // namespace

std::string csv_text(const ExperimentConfig& config, const std::vector<CoverageRow>& rows) {
  std::string out = manifest_line(config);
  out += "process,rho,m,b,gamma,replicates,coverage,mc_stderr,mean_length,sd_length\n";
  for (const auto& r : rows)
    out += r.process + "," + fmt(r.rho) + "," + r.m_label + "," + std::to_string(r.b) + "," +
           fmt(r.gamma) + "," + std::to_string(r.replicates) + "," + fmt(r.coverage) + "," +
           fmt(r.mc_stderr) + "," + fmt(r.mean_length) + "," + fmt(r.sd_length) + "\n";
  return out;
}

std::string csv_text(const ExperimentConfig& config, const std::vector<SensitivityRow>& rows) {
  std::string out = manifest_line(config);
  out += "y,cp_gm,cp_ml\n";
  for (const auto& r : rows) out += fmt(r.y) + "," + fmt(r.cp_gm) + "," + fmt(r.cp_ml) + "\n";
  return out;
}

std::string csv_text(const ExperimentConfig& config, const std::vector<CltRow>& rows) {
  std::string out = manifest_line(config);
  out += "n,replicates,mean,variance,skewness,ks_distance,lrv_batch_means\n";
  for (const auto& r : rows)
    out += std::to_string(r.n) + "," + std::to_string(r.replicates) + "," + fmt(r.mean) + "," +
           fmt(r.variance) + "," + fmt(r.skewness) + "," + fmt(r.ks_distance) + "," +
           fmt(r.lrv_batch_means) + "\n";
  return out;
}

std::string csv_text(const ExperimentConfig& config, const std::vector<BahadurRow>& rows) {
  std::string out = manifest_line(config);
  out += "n,replicates,median_sqrtn_abs_remainder\n";
  for (const auto& r : rows)
    out += std::to_string(r.n) + "," + std::to_string(r.replicates) + "," +
           fmt(r.median_scaled_remainder) + "\n";
  return out;
}

void run_experiment(const ExperimentConfig& config) {
  std::string csv;
  switch (config.experiment) {
    case ExperimentKind::table_coverage:
      csv = csv_text(config, run_table_coverage(config));
      break;
    case ExperimentKind::sensitivity_curve:
      csv = csv_text(config, run_sensitivity_curve(config));
      break;
    case ExperimentKind::clt_check:
      csv = csv_text(config, run_clt_check(config));
      break;
    case ExperimentKind::bahadur_decay:
      csv = csv_text(config, run_bahadur_decay(config));
      break;
  }

  std::filesystem::path out(config.output_path);
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write output file: " + config.output_path);
    f << csv;
  }
  json manifest;
  manifest["version"] = kVersion;
  manifest["experiment"] = kind_name(config.experiment);
  manifest["config_hash"] = config_hash(config);
  manifest["seed"] = config.seed;
  manifest["replicates"] = config.replicates;
  manifest["output"] = config.output_path;
  std::ofstream mf(config.output_path + ".manifest.json", std::ios::binary);
  mf << manifest.dump(2) << "\n";
}

}  // namespace glstat
