#include "cfmimo/ofdm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfmimo::ofdm {

namespace {

std::size_t smallest_factor(std::size_t n) {
  if (n % 2 == 0) return 2;
  for (std::size_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return f;
  }
  return n;
}

}  // namespace

DftPlan::DftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("DftPlan: size must be positive");
  twiddle_.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double arg = -2.0 * std::numbers::pi * static_cast<double>(t) /
                       static_cast<double>(n);
    twiddle_[t] = {std::cos(arg), std::sin(arg)};
  }
}

// Recursive mixed-radix decimation in time. For n = r*m the input is split
// into r interleaved subsequences of length m; sub-results are combined as
//   X[k] = sum_j twiddle[(j*k) % n] * Y_j[k % m].
// Prime n falls through to the O(n^2) direct sum, which is also the defining
// formula (the test oracle).
void DftPlan::transform(const cxd* in, cxd* out, std::size_t n,
                        std::size_t stride, bool inverse) const {
  const std::size_t step = n_ / n;  // twiddle stride for this level
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  const std::size_t r = smallest_factor(n);
  if (r == n) {
    for (std::size_t k = 0; k < n; ++k) {
      cxd acc{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) {
        cxd w = twiddle_[(j * k) % n * step];
        if (inverse) w = std::conj(w);
        acc += w * in[j * stride];
      }
      out[k] = acc;
    }
    return;
  }
  const std::size_t m = n / r;
  cvec sub(n);
  for (std::size_t j = 0; j < r; ++j) {
    transform(in + j * stride, sub.data() + j * m, m, stride * r, inverse);
  }
  for (std::size_t k = 0; k < n; ++k) {
    cxd acc{0.0, 0.0};
    const std::size_t km = k % m;
    for (std::size_t j = 0; j < r; ++j) {
      cxd w = twiddle_[(j * k) % n * step];
      if (inverse) w = std::conj(w);
      acc += w * sub[j * m + km];
    }
    out[k] = acc;
  }
}

cvec DftPlan::dft(const cvec& x) const {
  if (x.size() != n_) {
    throw std::invalid_argument("dft: input length does not match plan size");
  }
  cvec out(n_);
  transform(x.data(), out.data(), n_, 1, false);
  return out;
}

cvec DftPlan::idft(const cvec& x) const {
  if (x.size() != n_) {
    throw std::invalid_argument("idft: input length does not match plan size");
  }
  cvec out(n_);
  transform(x.data(), out.data(), n_, 1, true);
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : out) v *= scale;
  return out;
}

OfdmSymbol modulate(const DftPlan& plan, cvec freq, std::size_t cp_len) {
  if (cp_len > plan.size()) {
    throw std::invalid_argument("modulate: cyclic prefix longer than symbol");
  }
  OfdmSymbol sym;
  sym.time = plan.idft(freq);
  sym.freq = std::move(freq);
  sym.cp_len = cp_len;
  return sym;
}

cvec add_cp(const cvec& x, std::size_t cp_len) {
  if (cp_len > x.size()) {
    throw std::invalid_argument("add_cp: cyclic prefix longer than symbol");
  }
  cvec out;
  out.reserve(x.size() + cp_len);
  out.insert(out.end(), x.end() - static_cast<std::ptrdiff_t>(cp_len), x.end());
  out.insert(out.end(), x.begin(), x.end());
  return out;
}

cvec add_cp(const OfdmSymbol& sym) { return add_cp(sym.time, sym.cp_len); }

cvec remove_cp(const cvec& x_cp, std::size_t cp_len, std::size_t n) {
  if (x_cp.size() < cp_len + n) {
    throw std::invalid_argument("remove_cp: block shorter than cp_len + N");
  }
  return cvec(x_cp.begin() + static_cast<std::ptrdiff_t>(cp_len),
              x_cp.begin() + static_cast<std::ptrdiff_t>(cp_len + n));
}

cvec cyclic_convolve(const cvec& g_n, const cvec& x) {
  const std::size_t n = x.size();
  if (g_n.size() != n) {
    throw std::invalid_argument("cyclic_convolve: length mismatch");
  }
  cvec out(n, cxd{0.0, 0.0});
  for (std::size_t l = 0; l < n; ++l) {
    const cxd g = g_n[l];
    if (g == cxd{0.0, 0.0}) continue;  // zero-padded tap vectors are sparse
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t src = i >= l ? i - l : i + n - l;
      out[i] += g * x[src];
    }
  }
  return out;
}

cvec linear_channel_pass(const cvec& x_cp, const cvec& taps,
                         std::size_t cp_len) {
  if (taps.empty()) throw std::invalid_argument("linear_channel_pass: no taps");
  if (taps.size() > cp_len + 1) {
    throw std::domain_error(
        "linear_channel_pass: filter exceeds cyclic prefix, "
        "inter-symbol interference");
  }
  cvec out(x_cp.size() + taps.size() - 1, cxd{0.0, 0.0});
  for (std::size_t l = 0; l < taps.size(); ++l) {
    const cxd g = taps[l];
    for (std::size_t i = 0; i < x_cp.size(); ++i) out[i + l] += g * x_cp[i];
  }
  return out;
}

}  // namespace cfmimo::ofdm
