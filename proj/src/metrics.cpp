#include "smis/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "smis/errors.hpp"

namespace smis {

__extension__ using i128 = __int128;

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ParameterError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return static_cast<i128>(a.num_) * b.den_ <=> static_cast<i128>(b.num_) * a.den_;
}

std::string Rational::to_fixed(int digits) const {
  i128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const bool negative = num_ < 0;
  const i128 mag = negative ? -static_cast<i128>(num_) : num_;
  const i128 scaled = (mag * scale * 2 + den_) / (2 * static_cast<i128>(den_));
  auto whole = static_cast<std::uint64_t>(scaled / scale);
  auto frac = static_cast<std::uint64_t>(scaled % scale);
  std::string f = std::to_string(frac);
  if (static_cast<int>(f.size()) < digits) f.insert(0, static_cast<std::size_t>(digits) - f.size(), '0');
  std::string out = (negative && scaled != 0 ? "-" : "") + std::to_string(whole);
  if (digits > 0) out += "." + f;
  return out;
}

ComplexityMetrics compute_metrics(const Graph& g, const Trace& trace, bool allow_incomplete) {
  const auto n = g.n();
  if (trace.awake_rounds.size() != n || trace.outputs.size() != n) {
    throw ParameterError("trace does not match the graph");
  }
  if (!allow_incomplete && !trace.complete()) throw ParameterError("incomplete trace without failure flag");

  ComplexityMetrics m;
  m.total_rounds = trace.total_rounds;
  if (n == 0) return m;
  const std::int64_t awake_sum =
      std::accumulate(trace.awake_rounds.begin(), trace.awake_rounds.end(), std::int64_t{0});
  const std::int64_t finish_sum =
      std::accumulate(trace.last_awake.begin(), trace.last_awake.end(), std::int64_t{0});
  m.avg_awake = Rational(awake_sum, static_cast<std::int64_t>(n));
  m.avg_finish = Rational(finish_sum, static_cast<std::int64_t>(n));
  m.max_awake = *std::max_element(trace.awake_rounds.begin(), trace.awake_rounds.end());
  m.mis_size = static_cast<std::size_t>(
      std::count(trace.outputs.begin(), trace.outputs.end(), MisStatus::True));
  m.verdict = check_mis(g, trace.outputs);
  return m;
}

}  // namespace smis
