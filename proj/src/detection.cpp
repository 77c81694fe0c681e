#include "nckit/detection.hpp"

#include <cmath>

#include "nckit/error.hpp"
#include "nckit/sampling.hpp"

namespace nckit {
namespace {

constexpr double kDarkTail = 1e-16;

std::vector<double> binomial_pmf(int n, double eta) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  if (eta <= 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (eta >= 1.0) {
    out[static_cast<std::size_t>(n)] = 1.0;
    return out;
  }
  const double le = std::log(eta), lq = std::log1p(-eta);
  for (int a = 0; a <= n; ++a)
    out[static_cast<std::size_t>(a)] =
        std::exp(std::lgamma(n + 1.0) - std::lgamma(a + 1.0) - std::lgamma(n - a + 1.0) + a * le + (n - a) * lq);
  return out;
}

std::vector<double> dark_pmf(double d) {
  std::vector<double> out;
  if (d == 0.0) return {1.0};
  for (int b = 0;; ++b) {
    const double v = std::exp(b * std::log(d) - d - std::lgamma(b + 1.0));
    out.push_back(v);
    // Geometric bound on the Poisson mass beyond b.
    if (b + 2 > d) {
      const double rest = v * (d / (b + 1.0)) / (1.0 - d / (b + 2.0));
      if (rest < kDarkTail) break;
    }
  }
  return out;
}

void check_channel(const ChannelConfig& c) {
  if (!(c.eta >= 0.0 && c.eta <= 1.0)) throw ArgumentError("detection efficiency must lie in [0, 1]");
  if (!(c.dark >= 0.0) || !std::isfinite(c.dark)) throw ArgumentError("dark-count mean must be nonnegative");
  if (c.saturation && *c.saturation < 0) throw ArgumentError("saturation count must be nonnegative");
}

Tensor apply_channels(const Tensor& t, const std::vector<Matrix>& ms) {
  Tensor cur = t;
  for (std::size_t d = ms.size(); d-- > 0;) cur = kernels::apply_axis(cur, d, ms[d], Summation::plain);
  return cur;
}

double log_likelihood(std::span<const double> f, std::span<const double> pred) {
  double acc = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c)
    if (f[c] > 0.0) acc += f[c] * std::log(pred[c]);
  return acc;
}

}  // namespace

Matrix detection_matrix(const ChannelConfig& channel, int photon_cutoff) {
  check_channel(channel);
  if (photon_cutoff <= 0) throw ArgumentError("photon cutoff must be positive");
  const auto dark = dark_pmf(channel.dark);
  const int natural = photon_cutoff + static_cast<int>(dark.size()) - 1;
  const int rows = channel.saturation ? *channel.saturation + 1 : natural;
  Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(photon_cutoff));
  for (int n = 0; n < photon_cutoff; ++n) {
    const auto loss = binomial_pmf(n, channel.eta);
    double placed = 0.0;
    for (std::size_t a = 0; a < loss.size(); ++a)
      for (std::size_t b = 0; b < dark.size(); ++b) {
        const int c = std::min(static_cast<int>(a + b), rows - 1);
        m(static_cast<std::size_t>(c), static_cast<std::size_t>(n)) += loss[a] * dark[b];
        placed += loss[a] * dark[b];
      }
    // Dark-count tail beyond the tabulated pmf.
    m(static_cast<std::size_t>(rows - 1), static_cast<std::size_t>(n)) += std::max(0.0, 1.0 - placed);
  }
  return m;
}

DetectionModel::DetectionModel(std::vector<ChannelConfig> channels, MultiIndex photon_cutoffs)
    : channels_(std::move(channels)), photon_cutoffs_(std::move(photon_cutoffs)) {
  if (channels_.empty()) throw ArgumentError("detection model needs at least one channel");
  if (channels_.size() != photon_cutoffs_.size()) throw ArgumentError("one photon cutoff per channel required");
  for (std::size_t j = 0; j < channels_.size(); ++j)
    matrices_.push_back(detection_matrix(channels_[j], photon_cutoffs_[j]));
}

MultiIndex DetectionModel::outcome_cutoffs() const {
  MultiIndex out(matrices_.size());
  for (std::size_t j = 0; j < matrices_.size(); ++j) out[j] = static_cast<int>(matrices_[j].rows);
  return out;
}

DetectionModel build_detection(const std::vector<ChannelConfig>& channels, const MultiIndex& photon_cutoffs) {
  return DetectionModel(channels, photon_cutoffs);
}

PhotocountHistogram forward(const PhotonNumberDistribution& p, const DetectionModel& model) {
  if (p.cutoffs() != model.photon_cutoffs())
    throw ArgumentError("distribution cutoffs do not match the detection model");
  std::vector<Matrix> ms;
  for (int j = 0; j < model.dims(); ++j) ms.push_back(model.matrix(j));
  Tensor f = apply_channels(p.table(), ms);
  const double mass = f.sum();
  if (!(mass > 0.0)) throw DegenerateInputError("forward prediction has no mass");
  for (double& x : f.data()) x = std::max(0.0, x) / mass;
  return PhotocountHistogram(std::move(f), std::nullopt);
}

EmResult em_reconstruct(const PhotocountHistogram& f, const DetectionModel& model, const EmOptions& opts) {
  if (f.dims() != model.dims()) throw ArgumentError("histogram and detection model dimensions differ");
  if (!(opts.tol > 0.0) || opts.max_iter <= 0) throw ArgumentError("EM needs positive tol and max_iter");
  const double fmass = f.table().sum();
  if (!(fmass > 0.0)) throw DegenerateInputError("histogram is empty");

  // Response restricted to the observed outcome box.
  EmResult out;
  std::vector<Matrix> fwd, back;
  for (int j = 0; j < model.dims(); ++j) {
    const Matrix& full = model.matrix(j);
    const std::size_t rows = static_cast<std::size_t>(f.cutoffs()[static_cast<std::size_t>(j)]);
    Matrix m(rows, full.cols);
    for (std::size_t c = 0; c < std::min(rows, full.rows); ++c)
      for (std::size_t n = 0; n < full.cols; ++n) m(c, n) = full(c, n);
    for (std::size_t n = 0; n < m.cols; ++n) {
      double col = 0.0;
      for (std::size_t c = 0; c < rows; ++c) col += m(c, n);
      out.column_deficit = std::max(out.column_deficit, 1.0 - col);
      if (col > 0.0 && col != 1.0)
        for (std::size_t c = 0; c < rows; ++c) m(c, n) /= col;
    }
    back.push_back(m.transposed());
    fwd.push_back(std::move(m));
  }

  Tensor fn = f.table();
  for (double& x : fn.data()) x /= fmass;
  Tensor p = opts.init ? *opts.init : Tensor(model.photon_cutoffs(), 1.0);
  if (p.extents() != model.photon_cutoffs()) throw ArgumentError("EM initial table has the wrong shape");
  const double pm = p.sum();
  if (!(pm > 0.0)) throw DegenerateInputError("EM initial table has no mass");
  for (double& x : p.data()) x /= pm;

  Tensor ratio(fn.extents());
  for (long it = 0; it < opts.max_iter; ++it) {
    const Tensor pred = apply_channels(p, fwd);
    if (kernels::safe_ratio(fn.data(), pred.data(), ratio.data()) > 0)
      throw ModelSupportError("observed photocounts have zero predicted probability under the detection model");
    out.likelihood_trace.push_back(log_likelihood(fn.data(), pred.data()));
    Tensor update = apply_channels(ratio, back);
    kernels::multiply_inplace(update.data(), p.data());
    double change = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) change = std::max(change, std::abs(update[k] - p[k]));
    p = std::move(update);
    out.iterations = it + 1;
    if (change < opts.tol) {
      out.converged = true;
      break;
    }
  }
  const Tensor pred = apply_channels(p, fwd);
  out.likelihood_trace.push_back(log_likelihood(fn.data(), pred.data()));
  out.log_likelihood = out.likelihood_trace.back();
  out.p = PhotonNumberDistribution(std::move(p), 0.0);
  return out;
}

PhotocountHistogram bootstrap_replicate(const PhotocountHistogram& f, int replicate, std::uint64_t seed) {
  if (!f.total_counts()) throw ArgumentError("bootstrap needs the histogram's total_counts");
  const long long total = *f.total_counts();
  auto rng = make_engine(seed, static_cast<std::uint64_t>(replicate));
  const auto counts = sample_multinomial(f.data(), total, rng);
  Tensor t(f.cutoffs(), 0.0);
  for (std::size_t k = 0; k < counts.size(); ++k) t[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
  return PhotocountHistogram(std::move(t), total);
}

std::vector<PhotocountHistogram> bootstrap_resample(const PhotocountHistogram& f, int replicates, std::uint64_t seed) {
  if (replicates < 0) throw ArgumentError("replicate count must be nonnegative");
  if (!f.total_counts()) throw ArgumentError("bootstrap needs the histogram's total_counts");
  std::vector<PhotocountHistogram> out(static_cast<std::size_t>(replicates));
#pragma omp parallel for schedule(static)
  for (int r = 0; r < replicates; ++r) out[static_cast<std::size_t>(r)] = bootstrap_replicate(f, r, seed);
  return out;
}

}  // namespace nckit
