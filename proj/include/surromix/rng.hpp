#ifndef SURROMIX_RNG_HPP
#define SURROMIX_RNG_HPP

#include <cstdint>

namespace surromix {

// Counter-based 64-bit generator. Each draw hashes (key, counter) through a
// SplitMix64-style finalizer, so a stream is a pure function of its key and
// draw index: no hidden state, identical output regardless of how draws are
// batched across calls or threads.
//
// Streams for Monte Carlo work are derived from (seed, cell, replicate,
// purpose); distinct tuples give distinct keys, so no two replicates ever
// share a stream.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  // Stream key derivation. `purpose` separates the independent draws inside
  // one replicate (train-original, train-surrogate, validation, test).
  static CounterRng stream(std::uint64_t seed, std::uint64_t cell,
                           std::uint64_t replicate, std::uint64_t purpose = 0);

  std::uint64_t next_u64();

  // Uniform on the open interval (0,1); never returns 0 or 1, so it can be
  // fed to the normal quantile directly.
  double next_uniform();

  // Standard normal via inverse-CDF. One uniform per normal, which keeps the
  // draw count (and therefore the stream position) independent of any
  // rejection loop.
  double next_normal();

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Quantile of the standard normal distribution (Wichura's PPND16 rational
// approximations, accurate to ~1e-15 over (0,1)).
double normal_quantile(double p);

// Standard normal CDF, via erfc.
double normal_cdf(double x);

}  // namespace surromix

#endif
