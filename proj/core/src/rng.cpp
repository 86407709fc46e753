#include "tvnet/rng.hpp"

#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <cmath>

#include "tvnet/error.hpp"

namespace tvnet {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

RngStream::engine_type make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(stream_id + 0x632be59bd9b4e019ULL));
  const std::uint64_t c = splitmix64(b);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
  return RngStream::engine_type(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open() {
  double u;
  do {
    u = uniform();
  } while (u == 0.0);
  return u;
}

double RngStream::normal() {
  boost::random::normal_distribution<double> dist(0.0, 1.0);
  return dist(engine_);
}

double RngStream::gamma(double shape, double scale) {
  require(shape > 0.0 && scale > 0.0 && std::isfinite(shape) && std::isfinite(scale),
          ErrorKind::kInvalidParameter, "gamma requires positive finite shape and scale");
  boost::random::gamma_distribution<double> dist(shape, scale);
  return dist(engine_);
}

double RngStream::exponential(double rate) {
  require(rate > 0.0, ErrorKind::kInvalidParameter, "exponential rate must be positive");
  return -std::log(uniform_open()) / rate;
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  require(lo <= hi, ErrorKind::kInvalidParameter, "uniform_int requires lo <= hi");
  boost::random::uniform_int_distribution<std::int64_t> dist(lo, hi);
  return dist(engine_);
}

}  // namespace tvnet
