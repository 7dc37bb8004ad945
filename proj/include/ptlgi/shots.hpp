#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ptlgi/lgi.hpp"
#include "ptlgi/params.hpp"
#include "ptlgi/types.hpp"

namespace ptlgi {

// splitmix64, the only randomness source in the toolkit; fully specified so
// every run is reproducible from the seed alone
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// decorrelated seed for the stream with the given index; used to give every
// scan point its own substream of the user seed
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream_index) {
  return SplitMix64(seed ^ ((stream_index + 1) * 0xD1B54A32D192ED03ULL)).next();
}

// one simulated two-time measurement: a categorical draw for the first
// outcome from its marginal, then one for the second outcome from the
// conditional row; always consumes exactly two uniforms
template <typename Scalar>
int sample_pair_product(const JointDistribution<Scalar>& d, SplitMix64& rng) {
  const double u1 = rng.uniform();
  const double p_first_plus = static_cast<double>(d.pp + d.pm);
  if (u1 < p_first_plus) {
    const double cp = p_first_plus > 0 ? static_cast<double>(d.pp) / p_first_plus : 0.5;
    return rng.uniform() < cp ? +1 : -1;
  }
  const double p_first_minus = static_cast<double>(d.mp + d.mm);
  const double cm = p_first_minus > 0 ? static_cast<double>(d.mp) / p_first_minus : 0.5;
  return rng.uniform() < cm ? -1 : +1;
}

// estimate of one quantity from a finite-shot run: the mean of the
// per-round means and their 1 sigma spread (sample standard deviation over
// rounds, ddof 1)
template <typename Scalar>
struct ShotEstimate {
  std::string label;
  Scalar estimate;
  Scalar std_error;
  std::int64_t shots;
  int rounds;
};

template <typename Scalar>
struct KnShotResult {
  std::vector<ShotEstimate<Scalar>> correlators;  // chain pairs first, closing pair last
  ShotEstimate<Scalar> kn;
};

namespace detail {

inline std::string correlator_label(int i, int j) {
  if (i <= 9 && j <= 9) {
    return "C" + std::to_string(i) + std::to_string(j);
  }
  return "C" + std::to_string(i) + "_" + std::to_string(j);
}

template <typename Scalar>
std::pair<Scalar, Scalar> mean_and_sd(const std::vector<Scalar>& xs) {
  const std::size_t n = xs.size();
  Scalar mean = Scalar(0);
  for (const Scalar x : xs) {
    mean += x;
  }
  mean /= Scalar(n);
  Scalar ss = Scalar(0);
  for (const Scalar x : xs) {
    ss += (x - mean) * (x - mean);
  }
  return {mean, std::sqrt(ss / Scalar(n - 1))};
}

}  // namespace detail

// finite-shot Monte Carlo estimate of Kn and of each correlator in its
// decomposition; all pairs of one round are drawn before the next round
// starts, from a single sequential stream
template <typename Scalar>
KnShotResult<Scalar> estimate_kn(const PtParams<Scalar>& p, const CorrelationSchedule<Scalar>& sched,
                                 const QubitState<Scalar>& target,
                                 const DichotomicObservable<Scalar>& obs, std::int64_t shots,
                                 int rounds, std::uint64_t stream_seed) {
  if (shots < 1) {
    throw std::invalid_argument("estimate_kn: shots must be at least 1");
  }
  if (rounds < 2) {
    throw std::invalid_argument("estimate_kn: need at least 2 rounds");
  }
  const int n = sched.order;
  std::vector<JointDistribution<Scalar>> joints;
  joints.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n - 1; ++k) {
    joints.push_back(joint_probabilities(target, p, Scalar(k - 1) * sched.tau, sched.tau, obs));
  }
  joints.push_back(joint_probabilities(target, p, Scalar(0), Scalar(n - 1) * sched.tau, obs));

  SplitMix64 rng(stream_seed);
  std::vector<std::vector<Scalar>> means(static_cast<std::size_t>(rounds),
                                         std::vector<Scalar>(joints.size()));
  for (int r = 0; r < rounds; ++r) {
    for (std::size_t q = 0; q < joints.size(); ++q) {
      std::int64_t sum = 0;
      for (std::int64_t s = 0; s < shots; ++s) {
        sum += sample_pair_product(joints[q], rng);
      }
      means[static_cast<std::size_t>(r)][q] = Scalar(sum) / Scalar(shots);
    }
  }

  KnShotResult<Scalar> out;
  out.correlators.reserve(joints.size());
  std::vector<Scalar> column(static_cast<std::size_t>(rounds));
  for (std::size_t q = 0; q < joints.size(); ++q) {
    for (int r = 0; r < rounds; ++r) {
      column[static_cast<std::size_t>(r)] = means[static_cast<std::size_t>(r)][q];
    }
    const auto [est, sd] = detail::mean_and_sd(column);
    const std::string label = q + 1 < joints.size()
                                  ? detail::correlator_label(static_cast<int>(q) + 2,
                                                             static_cast<int>(q) + 1)
                                  : detail::correlator_label(n, 1);
    out.correlators.push_back({label, est, sd, shots, rounds});
  }
  std::vector<Scalar> k_rounds(static_cast<std::size_t>(rounds));
  for (int r = 0; r < rounds; ++r) {
    Scalar k = Scalar(0);
    for (std::size_t q = 0; q + 1 < joints.size(); ++q) {
      k += means[static_cast<std::size_t>(r)][q];
    }
    k -= means[static_cast<std::size_t>(r)][joints.size() - 1];
    k_rounds[static_cast<std::size_t>(r)] = k;
  }
  const auto [kest, ksd] = detail::mean_and_sd(k_rounds);
  out.kn = {"K" + std::to_string(n), kest, ksd, shots, rounds};
  return out;
}

template <typename Scalar>
KnShotResult<Scalar> estimate_kn(const PtParams<Scalar>& p, const CorrelationSchedule<Scalar>& sched,
                                 std::int64_t shots, int rounds, std::uint64_t stream_seed) {
  const DichotomicObservable<Scalar> obs = sigma_y_observable<Scalar>();
  return estimate_kn(p, sched, obs.plus, obs, shots, rounds, stream_seed);
}

// binomial prediction for the 1 sigma spread of a single-round Kn estimate:
// each pair contributes (1 - C^2) / shots to the variance
template <typename Scalar>
Scalar predicted_kn_sigma(const PtParams<Scalar>& p, const CorrelationSchedule<Scalar>& sched,
                          const QubitState<Scalar>& target,
                          const DichotomicObservable<Scalar>& obs, std::int64_t shots) {
  if (shots < 1) {
    throw std::invalid_argument("predicted_kn_sigma: shots must be at least 1");
  }
  const int n = sched.order;
  Scalar var = Scalar(0);
  const auto add = [&](Scalar t_i, Scalar t_ji) {
    const Scalar c = correlation(joint_probabilities(target, p, t_i, t_ji, obs));
    var += (Scalar(1) - c * c) / Scalar(shots);
  };
  for (int k = 1; k <= n - 1; ++k) {
    add(Scalar(k - 1) * sched.tau, sched.tau);
  }
  add(Scalar(0), Scalar(n - 1) * sched.tau);
  return std::sqrt(var);
}

template <typename Scalar>
Scalar predicted_kn_sigma(const PtParams<Scalar>& p, const CorrelationSchedule<Scalar>& sched,
                          std::int64_t shots) {
  const DichotomicObservable<Scalar> obs = sigma_y_observable<Scalar>();
  return predicted_kn_sigma(p, sched, obs.plus, obs, shots);
}

}  // namespace ptlgi
