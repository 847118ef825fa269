#include "cfmimo/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <numeric>
#include <thread>

#include "cfmimo/channel.hpp"
#include "cfmimo/estimation.hpp"
#include "cfmimo/schemes.hpp"
#include "cfmimo/selection.hpp"
#include "cfmimo/streams.hpp"

namespace cfmimo::mc {

double percentile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("percentile: empty samples");
  if (p < 0.0 || p > 1.0) throw std::domain_error("percentile: p outside [0,1]");
  const auto n = static_cast<double>(sorted.size());
  const auto idx = static_cast<std::size_t>(
      std::max<double>(std::ceil(p * n) - 1.0, 0.0));
  return sorted[std::min(idx, sorted.size() - 1)];
}

CdfSummary empirical_cdf(std::vector<double> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("empirical_cdf: at least one sample required");
  }
  std::sort(samples.begin(), samples.end());
  CdfSummary out;
  out.mean = std::accumulate(samples.begin(), samples.end(), 0.0) /
             static_cast<double>(samples.size());
  out.sorted = std::move(samples);
  out.percentile_05 = percentile(out.sorted, 0.05);
  out.percentile_50 = percentile(out.sorted, 0.50);
  return out;
}

namespace {

std::string curve_name(SchemeKind scheme, PowerMode mode) {
  if (scheme == SchemeKind::kFullAp) return "full_ap";
  return to_string(scheme) + "_" + to_string(mode);
}

}  // namespace

std::string SchemeCurve::name() const { return curve_name(scheme, mode); }

std::string RawCurve::name() const { return curve_name(scheme, mode); }

double active_power_fraction(const SystemConfig& cfg, SchemeKind scheme,
                             PowerMode mode) {
  if (scheme == SchemeKind::kFullAp) return 1.0;
  if (mode == PowerMode::kEqualTotalPower) return 1.0;
  return static_cast<double>(cfg.m_select) / static_cast<double>(cfg.aps);
}

namespace {

struct CurveSpec {
  SchemeKind scheme;
  PowerMode mode;
  std::size_t samples_per_drop = 0;
};

// Shared read-only state for the drop workers.
struct ExperimentContext {
  explicit ExperimentContext(const SystemConfig& c) : cfg(c) {}

  const SystemConfig& cfg;
  chan::SampledTaps taps;
  sel::Allocation allocation;
  // Per user: tap-major twiddle table exp(-2*pi*i * index_l * n / N) for the
  // user's assigned subcarriers, so the hot path avoids trigonometry.
  std::vector<std::vector<std::complex<double>>> twiddle;
  std::vector<CurveSpec> curves;
  double noise_w = 0.0;
  double gamma_t = 0.0;
};

double mode_scale(const SystemConfig& cfg, SchemeKind scheme, PowerMode mode) {
  if (scheme != SchemeKind::kFullAp && mode == PowerMode::kEqualTotalPower) {
    return static_cast<double>(cfg.aps) / static_cast<double>(cfg.m_select);
  }
  return 1.0;
}

ExperimentContext make_context(const SystemConfig& cfg) {
  ExperimentContext ctx(cfg);
  ctx.noise_w = cfg.noise_power_w();
  ctx.gamma_t = cfg.gamma_t();

  const auto profile = chan::resolve_profile(cfg.tap_profile);
  ctx.taps = chan::sample_taps(profile, cfg.sample_rate(),
                               static_cast<std::size_t>(cfg.subcarriers));
  if (ctx.taps.span() > static_cast<std::size_t>(cfg.cp_length) + 1) {
    throw ConfigError("cp_length " + std::to_string(cfg.cp_length) +
                      " shorter than channel filter span " +
                      std::to_string(ctx.taps.span()) + " - 1");
  }

  ctx.allocation = sel::allocate_round_robin(cfg.subcarriers, cfg.users,
                                             cfg.rate_weights);

  const std::size_t n_taps = ctx.taps.index.size();
  ctx.twiddle.resize(cfg.users);
  for (int k = 0; k < cfg.users; ++k) {
    const auto& subs = ctx.allocation.per_user[k];
    auto& tab = ctx.twiddle[k];
    tab.resize(n_taps * subs.size());
    for (std::size_t l = 0; l < n_taps; ++l) {
      for (std::size_t s = 0; s < subs.size(); ++s) {
        const double arg = -2.0 * std::numbers::pi *
                           static_cast<double>(ctx.taps.index[l]) *
                           static_cast<double>(subs[s]) / cfg.subcarriers;
        tab[l * subs.size() + s] = {std::cos(arg), std::sin(arg)};
      }
    }
  }

  for (SchemeKind s : cfg.schemes) {
    if (s == SchemeKind::kFullAp) {
      ctx.curves.push_back({s, PowerMode::kPowerSaving,
                            static_cast<std::size_t>(cfg.users)});
      continue;
    }
    for (PowerMode m : cfg.power_modes) {
      std::size_t per_drop = cfg.users;
      if (s == SchemeKind::kOasDp) {
        if (cfg.sample_unit == SampleUnit::kPerUser) {
          per_drop = static_cast<std::size_t>(cfg.users) * cfg.realizations;
        } else {
          std::size_t subs = 0;
          for (const auto& b : ctx.allocation.per_user) subs += b.size();
          per_drop = subs * cfg.realizations;
        }
      }
      ctx.curves.push_back({s, m, per_drop});
    }
  }
  return ctx;
}

// Evaluates one drop and writes each curve's samples into its slice of the
// preallocated pool. Slice layout keeps the merge order independent of the
// worker schedule.
void evaluate_drop(const ExperimentContext& ctx, std::uint64_t drop_index,
                   std::vector<std::span<double>> slices) {
  const SystemConfig& cfg = ctx.cfg;
  const auto m_all = static_cast<std::size_t>(cfg.aps);
  const auto n_users = static_cast<std::size_t>(cfg.users);

  const chan::Drop drop = chan::generate_drop(cfg, drop_index);
  const Matrix<double>& beta = drop.large_scale.beta;

  Matrix<double> alpha(m_all, n_users);
  for (std::size_t i = 0; i < m_all; ++i) {
    for (std::size_t j = 0; j < n_users; ++j) {
      alpha(i, j) = est::mmse_alpha(beta(i, j), cfg.p_uplink_w, ctx.noise_w);
    }
  }

  // Global full-power coefficients, if requested: eta_m = 1/sum_k alpha_mk.
  std::vector<double> eta_global;
  if (cfg.eta_mode == EtaMode::kGlobal) {
    eta_global.resize(m_all);
    for (std::size_t i = 0; i < m_all; ++i) {
      eta_global[i] = sel::full_power_eta(alpha.row(i));
    }
  }

  std::vector<std::size_t> written(ctx.curves.size(), 0);
  auto emit = [&](std::size_t curve, double value) {
    slices[curve][written[curve]++] = value;
  };

  const std::size_t n_taps = ctx.taps.index.size();
  std::vector<double> a_full(m_all), b_full(m_all), e_full(m_all);
  std::vector<double> a_sel(cfg.m_select), b_sel(cfg.m_select),
      e_sel(cfg.m_select), sqrt_e(cfg.m_select);
  std::vector<std::complex<double>> gains(n_taps);
  std::vector<double> acc;   // sum_m sqrt(eta) |g_hat|^2 per subcarrier
  std::vector<double> se_ps, se_etp;

  for (std::size_t k = 0; k < n_users; ++k) {
    for (std::size_t i = 0; i < m_all; ++i) {
      a_full[i] = alpha(i, k);
      b_full[i] = beta(i, k);
      e_full[i] = cfg.eta_mode == EtaMode::kGlobal
                      ? eta_global[i]
                      : 1.0 / std::max(a_full[i], 1e-300);
    }
    const std::vector<int> selected = sel::select_aps(b_full, cfg.m_select);
    for (int s = 0; s < cfg.m_select; ++s) {
      a_sel[s] = a_full[selected[s]];
      b_sel[s] = b_full[selected[s]];
      e_sel[s] = e_full[selected[s]];
      sqrt_e[s] = std::sqrt(e_sel[s]);
    }

    // statistical-CSI error term of the coherent scheme, per selected AP sum
    double dp_stat = 0.0;
    for (int s = 0; s < cfg.m_select; ++s) {
      dp_stat += e_sel[s] * (b_sel[s] - a_sel[s]) * a_sel[s];
    }

    const auto& subs = ctx.allocation.per_user[k];
    const std::size_t n_subs = subs.size();

    bool needs_dp = false;
    for (const auto& spec : ctx.curves) {
      if (spec.scheme == SchemeKind::kOasDp) needs_dp = true;
    }

    // realization-based sampling for OAS-DP, both power modes in one pass
    std::vector<double> dp_samples_ps, dp_samples_etp;
    if (needs_dp) {
      const double x_ps =
          1.0 / (ctx.gamma_t * mode_scale(cfg, SchemeKind::kOasDp,
                                          PowerMode::kPowerSaving));
      const double x_etp =
          1.0 / (ctx.gamma_t * mode_scale(cfg, SchemeKind::kOasDp,
                                          PowerMode::kEqualTotalPower));
      std::vector<Rng> tap_rng, est_rng;
      tap_rng.reserve(cfg.m_select);
      est_rng.reserve(cfg.m_select);
      for (int s = 0; s < cfg.m_select; ++s) {
        const auto link = static_cast<std::uint64_t>(selected[s]);
        tap_rng.push_back(Rng::stream(
            {cfg.seed, kStreamSmallScale, drop_index, k, link}));
        est_rng.push_back(Rng::stream(
            {cfg.seed, kStreamEstimationNoise, drop_index, k, link}));
      }
      acc.assign(n_subs, 0.0);
      se_ps.resize(n_subs);
      se_etp.resize(n_subs);
      dp_samples_ps.reserve(cfg.realizations *
                            (cfg.sample_unit == SampleUnit::kPerUser ? 1 : n_subs));
      dp_samples_etp.reserve(dp_samples_ps.capacity());

      for (int r = 0; r < cfg.realizations; ++r) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int s = 0; s < cfg.m_select; ++s) {
          const double bk = b_sel[s];
          const double ak = a_sel[s];
          const double sqrt_beta = std::sqrt(bk);
          for (std::size_t l = 0; l < n_taps; ++l) {
            gains[l] = sqrt_beta * tap_rng[s].cnormal(ctx.taps.variance[l]);
          }
          const double shrink = ak / bk;
          const double err_sd = std::sqrt(ak * (bk - ak) / bk);
          const auto* tw = ctx.twiddle[k].data();
          for (std::size_t n = 0; n < n_subs; ++n) {
            std::complex<double> g{0.0, 0.0};
            for (std::size_t l = 0; l < n_taps; ++l) {
              g += gains[l] * tw[l * n_subs + n];
            }
            const std::complex<double> g_hat =
                shrink * g + err_sd * est_rng[s].cnormal(1.0);
            acc[n] += sqrt_e[s] * std::norm(g_hat);
          }
        }
        for (std::size_t n = 0; n < n_subs; ++n) {
          const double num = acc[n] * acc[n];
          se_ps[n] = std::log2(1.0 + num / (dp_stat + x_ps));
          se_etp[n] = std::log2(1.0 + num / (dp_stat + x_etp));
        }
        if (cfg.sample_unit == SampleUnit::kPerUser) {
          const double inv = 1.0 / static_cast<double>(n_subs);
          dp_samples_ps.push_back(
              std::accumulate(se_ps.begin(), se_ps.end(), 0.0) * inv);
          dp_samples_etp.push_back(
              std::accumulate(se_etp.begin(), se_etp.end(), 0.0) * inv);
        } else {
          dp_samples_ps.insert(dp_samples_ps.end(), se_ps.begin(), se_ps.end());
          dp_samples_etp.insert(dp_samples_etp.end(), se_etp.begin(),
                                se_etp.end());
        }
      }
    }

    for (std::size_t c = 0; c < ctx.curves.size(); ++c) {
      const CurveSpec& spec = ctx.curves[c];
      const double scale = mode_scale(cfg, spec.scheme, spec.mode);
      switch (spec.scheme) {
        case SchemeKind::kFullAp:
          emit(c, scheme::se(scheme::sinr_full_ap(a_full, b_full, e_full,
                                                  ctx.gamma_t * scale)));
          break;
        case SchemeKind::kOas:
          emit(c, scheme::se(scheme::sinr_oas(a_sel, b_sel, e_sel,
                                              ctx.gamma_t * scale)));
          break;
        case SchemeKind::kOasDp: {
          const auto& src = spec.mode == PowerMode::kPowerSaving
                                ? dp_samples_ps
                                : dp_samples_etp;
          for (double v : src) emit(c, v);
          break;
        }
      }
    }
  }
}

}  // namespace

std::vector<RawCurve> run_experiment_raw(const SystemConfig& cfg) {
  cfg.validate();
  const ExperimentContext ctx = make_context(cfg);
  const auto drops = static_cast<std::size_t>(cfg.drops);

  std::vector<std::vector<double>> pools(ctx.curves.size());
  for (std::size_t c = 0; c < ctx.curves.size(); ++c) {
    pools[c].resize(ctx.curves[c].samples_per_drop * drops);
  }

  unsigned workers = cfg.threads > 0
                         ? static_cast<unsigned>(cfg.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, drops);

  std::atomic<std::uint64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&] {
    for (;;) {
      const std::uint64_t di = next.fetch_add(1);
      if (di >= drops) return;
      try {
        std::vector<std::span<double>> slices(ctx.curves.size());
        for (std::size_t c = 0; c < ctx.curves.size(); ++c) {
          const std::size_t per = ctx.curves[c].samples_per_drop;
          slices[c] = std::span<double>(pools[c]).subspan(di * per, per);
        }
        evaluate_drop(ctx, di, std::move(slices));
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(drops);  // stop remaining work
        return;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<RawCurve> out;
  out.reserve(ctx.curves.size());
  for (std::size_t c = 0; c < ctx.curves.size(); ++c) {
    RawCurve curve;
    curve.scheme = ctx.curves[c].scheme;
    curve.mode = ctx.curves[c].mode;
    curve.samples_per_drop = ctx.curves[c].samples_per_drop;
    curve.samples = std::move(pools[c]);
    out.push_back(std::move(curve));
  }
  return out;
}

std::vector<SchemeCurve> run_experiment(const SystemConfig& cfg) {
  auto raw = run_experiment_raw(cfg);
  std::vector<SchemeCurve> out;
  out.reserve(raw.size());
  for (auto& r : raw) {
    SchemeCurve curve;
    curve.scheme = r.scheme;
    curve.mode = r.mode;
    curve.cdf = empirical_cdf(std::move(r.samples));
    curve.active_power_fraction =
        active_power_fraction(cfg, curve.scheme, curve.mode);
    out.push_back(std::move(curve));
  }
  return out;
}

}  // namespace cfmimo::mc
