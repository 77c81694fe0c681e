#include "nckit/synth.hpp"

#include <cmath>
#include <sstream>

#include "nckit/diagnostics.hpp"
#include "nckit/error.hpp"
#include "nckit/sampling.hpp"

namespace nckit {
namespace {

constexpr double kTailWarn = 1e-6;

std::vector<double> mandel_rice_values(double mean, double modes, int cutoff) {
  std::vector<double> p(static_cast<std::size_t>(cutoff), 0.0);
  if (mean == 0.0) {
    p[0] = 1.0;
    return p;
  }
  const double x = mean / modes;
  const double log_ratio = std::log(x) - std::log1p(x);
  double log_p = -modes * std::log1p(x);
  for (int n = 0; n < cutoff; ++n) {
    if (n > 0) log_p += log_ratio + std::log((n - 1.0 + modes) / n);
    p[static_cast<std::size_t>(n)] = std::exp(log_p);
  }
  return p;
}

void check_component(double mean, double modes) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw ArgumentError("component mean must be nonnegative");
  if (!(modes > 0.0) || !std::isfinite(modes)) throw ArgumentError("component mode number must be positive");
}

// out(n) = sum_k w(k) in(n - k * shift), shift a 0/1 vector over dimensions.
Tensor shift_convolve(const Tensor& in, const std::vector<double>& w, const std::vector<int>& dims) {
  const auto& ext = in.extents();
  std::vector<std::size_t> stride(ext.size(), 1);
  for (std::size_t d = ext.size(); d-- > 1;) stride[d - 1] = stride[d] * static_cast<std::size_t>(ext[d]);
  std::size_t step = 0;
  for (int d : dims) step += stride[static_cast<std::size_t>(d)];
  Tensor out(ext, 0.0);
  const double* src = in.data().data();
  double* dst = out.data().data();
  const long total = static_cast<long>(in.size());
#pragma omp parallel for schedule(static) if (total > 4096)
  for (long flat = 0; flat < total; ++flat) {
    std::size_t kmax = w.size() - 1;
    for (int d : dims) {
      const auto sd = static_cast<std::size_t>(d);
      kmax = std::min(kmax, (static_cast<std::size_t>(flat) / stride[sd]) % static_cast<std::size_t>(ext[sd]));
    }
    double acc = 0.0;
    const double* base = src + flat;
    for (std::size_t k = 0; k <= kmax; ++k) acc += w[k] * *(base - k * step);
    dst[flat] = acc;
  }
  return out;
}

}  // namespace

PhotonNumberDistribution mandel_rice(double mean, double modes, int cutoff) {
  check_component(mean, modes);
  if (cutoff <= 0) throw ArgumentError("cutoff must be positive");
  auto values = mandel_rice_values(mean, modes, cutoff);
  double mass = 0.0;
  for (double v : values) mass += v;
  const double tail = std::max(0.0, 1.0 - mass);
  if (tail > kTailWarn) {
    std::ostringstream msg;
    msg << "Mandel-Rice cutoff " << cutoff << " leaves tail mass " << tail;
    warn(msg.str());
  }
  return PhotonNumberDistribution(Tensor(MultiIndex{cutoff}, std::move(values)), tail);
}

PhotonNumberDistribution poisson(double mean, int cutoff) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw ArgumentError("Poisson mean must be nonnegative");
  if (cutoff <= 0) throw ArgumentError("cutoff must be positive");
  std::vector<double> p(static_cast<std::size_t>(cutoff), 0.0);
  double mass = 0.0;
  for (int n = 0; n < cutoff; ++n) {
    p[static_cast<std::size_t>(n)] =
        mean == 0.0 ? (n == 0 ? 1.0 : 0.0) : std::exp(n * std::log(mean) - mean - std::lgamma(n + 1.0));
    mass += p[static_cast<std::size_t>(n)];
  }
  return PhotonNumberDistribution(Tensor(MultiIndex{cutoff}, std::move(p)), std::max(0.0, 1.0 - mass));
}

PhotonNumberDistribution compose_field(const GaussianFieldSpec& spec) {
  const auto& cut = spec.cutoffs;
  const int dims = static_cast<int>(cut.size());
  if (dims == 0) throw ArgumentError("field spec needs cutoffs");
  Tensor t(cut, 0.0);
  t[0] = 1.0;
  for (const auto& pc : spec.pairs) {
    check_component(pc.mean, pc.modes);
    if (pc.a == pc.b || pc.a < 0 || pc.b < 0 || pc.a >= dims || pc.b >= dims)
      throw ArgumentError("pair component dimensions invalid");
    const int len = std::min(cut[static_cast<std::size_t>(pc.a)], cut[static_cast<std::size_t>(pc.b)]);
    t = shift_convolve(t, mandel_rice_values(pc.mean, pc.modes, len), {pc.a, pc.b});
  }
  for (const auto& nc : spec.noise) {
    check_component(nc.mean, nc.modes);
    if (nc.dim < 0 || nc.dim >= dims) throw ArgumentError("noise component dimension invalid");
    t = shift_convolve(t, mandel_rice_values(nc.mean, nc.modes, cut[static_cast<std::size_t>(nc.dim)]), {nc.dim});
  }
  const double tail = std::max(0.0, 1.0 - t.sum());
  if (tail > kTailWarn) {
    std::ostringstream msg;
    msg << "field cutoffs leave tail mass " << tail;
    warn(msg.str());
  }
  return PhotonNumberDistribution(std::move(t), tail);
}

GaussianFieldSpec twin_beam_3d_spec(double pair_modes, const MultiIndex& cutoffs) {
  if (cutoffs.size() != 3) throw ArgumentError("twin-beam field needs three cutoffs");
  GaussianFieldSpec spec;
  spec.pairs = {{0, 2, 6.15, pair_modes}, {1, 2, 5.95, pair_modes}};
  spec.noise = {{0, 0.11, pair_modes}, {1, 0.07, pair_modes}, {2, 0.02, pair_modes}};
  spec.cutoffs = cutoffs;
  return spec;
}

ModeSpec twin_beam_3d_modes(double pair_modes) { return ModeSpec({pair_modes, pair_modes, 2.0 * pair_modes}); }

MultiIndex cutoffs_for_tail(const GaussianFieldSpec& spec, double tail, int max_cutoff) {
  const std::size_t dims = spec.cutoffs.size();
  MultiIndex out(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    // Marginal of dimension d: convolution of every component touching it.
    std::vector<double> m(static_cast<std::size_t>(max_cutoff), 0.0);
    m[0] = 1.0;
    auto convolve = [&](double mean, double modes) {
      const auto w = mandel_rice_values(mean, modes, max_cutoff);
      std::vector<double> r(m.size(), 0.0);
      for (std::size_t n = 0; n < m.size(); ++n)
        for (std::size_t k = 0; k <= n; ++k) r[n] += w[k] * m[n - k];
      m.swap(r);
    };
    for (const auto& pc : spec.pairs)
      if (static_cast<std::size_t>(pc.a) == d || static_cast<std::size_t>(pc.b) == d) convolve(pc.mean, pc.modes);
    for (const auto& nc : spec.noise)
      if (static_cast<std::size_t>(nc.dim) == d) convolve(nc.mean, nc.modes);
    double mass = 0.0;
    int k = 0;
    while (k < max_cutoff && 1.0 - mass > tail) mass += m[static_cast<std::size_t>(k++)];
    out[d] = std::max(k, 1);
  }
  return out;
}

PhotocountHistogram sample_histogram(const PhotonNumberDistribution& p, long long total_counts, std::uint64_t seed) {
  if (total_counts <= 0) throw ArgumentError("histogram needs a positive number of frames");
  auto rng = make_engine(seed);
  const auto counts = sample_multinomial(p.data(), total_counts, rng);
  Tensor f(p.cutoffs(), 0.0);
  for (std::size_t k = 0; k < counts.size(); ++k)
    f[k] = static_cast<double>(counts[k]) / static_cast<double>(total_counts);
  return PhotocountHistogram(std::move(f), total_counts);
}

}  // namespace nckit
