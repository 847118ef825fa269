#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace cfmimo::ofdm {

using cxd = std::complex<double>;
using cvec = std::vector<cxd>;

// N-point DFT plan for arbitrary N (mixed-radix decimation in time, with a
// direct transform for prime factors). Forward transform is unnormalized,
// the inverse carries the 1/N factor:
//
//   dft(x)[n]  = sum_{n'} x[n'] exp(-2*pi*i*n*n'/N)
//   idft(x)[n'] = (1/N) sum_{n} x[n] exp(+2*pi*i*n*n'/N)
class DftPlan {
 public:
  explicit DftPlan(std::size_t n);

  std::size_t size() const { return n_; }

  // Forward twiddle table, twiddles()[t] = exp(-2*pi*i*t/N). The matrix
  // entry for row n, column n' is twiddles()[(n * n') % N].
  const cvec& twiddles() const { return twiddle_; }

  cvec dft(const cvec& x) const;
  cvec idft(const cvec& x) const;

 private:
  void transform(const cxd* in, cxd* out, std::size_t n, std::size_t stride,
                 bool inverse) const;

  std::size_t n_;
  cvec twiddle_;
};

// One OFDM block: frequency-domain symbols, their time-domain counterpart
// and the cyclic-prefix length in samples.
struct OfdmSymbol {
  cvec freq;
  cvec time;
  std::size_t cp_len = 0;
};

// Builds the time-domain block as idft(freq). Throws if cp_len > N.
OfdmSymbol modulate(const DftPlan& plan, cvec freq, std::size_t cp_len);

// Prepends the last cp_len samples of x; result has length N + cp_len.
cvec add_cp(const cvec& x, std::size_t cp_len);
cvec add_cp(const OfdmSymbol& sym);

// Drops the first cp_len samples and trims to n.
cvec remove_cp(const cvec& x_cp, std::size_t cp_len, std::size_t n);

// output[n] = sum_l g_n[l] * x[(n - l) mod N]; both inputs length N.
cvec cyclic_convolve(const cvec& g_n, const cvec& x);

// Full linear convolution of a CP-extended block with a tap filter.
// Throws if the filter is longer than cp_len + 1 (inter-symbol interference).
cvec linear_channel_pass(const cvec& x_cp, const cvec& taps,
                         std::size_t cp_len);

}  // namespace cfmimo::ofdm
