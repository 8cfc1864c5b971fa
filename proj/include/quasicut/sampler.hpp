// Copyright 2026 The quasicut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Quasiprobability Monte-Carlo estimator for circuits with cut gates.
//
// Each shot walks the circuit from |0...0>. At a cut gate it draws a term of
// that gate's decomposition with probability |c_i| / W, multiplies the shot
// phase by c_i / |c_i|, and realizes the term's local channels on the two
// qubits. The sample is x = W_total Re(phase * o'), where o' is either the
// exact trace of O on the final state or a sampled eigenvalue bounded by
// o_max. E[x] = <O>.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "quasicut/circuit.hpp"
#include "quasicut/decomposition.hpp"
#include "quasicut/local_basis.hpp"
#include "quasicut/rng.hpp"

namespace quasicut {

enum class MeasureMode { kExactTrace, kEigenvalueSample };

struct ShotTarget {
  double epsilon = 0.0;
  double delta = 0.0;
};

struct EstimatorConfig {
  std::optional<std::uint64_t> shots;
  std::optional<ShotTarget> target;
  std::uint64_t seed = 0;
  MeasureMode mode = MeasureMode::kExactTrace;
  /// Worker cap. Results do not depend on it.
  unsigned threads = 1;

  void validate() const {
    if (shots.has_value() == target.has_value()) {
      throw std::invalid_argument("give exactly one of a shot count or an (epsilon, delta) target");
    }
    if (shots && *shots == 0) throw std::invalid_argument("shot count must be positive");
  }
};

struct EstimatorResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t shots_used = 0;
  double w_total = 1.0;
  double o_max = 0.0;
  std::uint64_t seed = 0;
};

struct ShotRecord {
  cd phase{1.0, 0.0};
  double sample = 0.0;
  double x = 0.0;
};

class MissingDecomposition : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shots needed so that |estimate - <O>| <= epsilon with probability at least
/// 1 - delta when every sample lies in [-W o_max, W o_max] (two-sided
/// Hoeffding bound): S = ceil(2 (W o_max / epsilon)^2 ln(2 / delta)).
inline std::uint64_t plan_shots(double epsilon, double delta, double o_max, double weight) {
  if (!(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0) || !(o_max > 0.0) || !(weight >= 1.0) ||
      !std::isfinite(epsilon) || !std::isfinite(o_max) || !std::isfinite(weight)) {
    throw std::invalid_argument("plan_shots needs epsilon > 0, 0 < delta < 1, o_max > 0, W >= 1");
  }
  const double ratio = weight * o_max / epsilon;
  const double exact = 2.0 * ratio * ratio * std::log(2.0 / delta);
  if (!(exact < 9.0e18)) throw std::overflow_error("planned shot count is too large");
  // Values within rounding noise of an integer are not bumped to the next one.
  const double nearest = std::round(exact);
  const double shots = std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact) ? nearest : std::ceil(exact);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(shots));
}

using DecompositionCache = std::map<std::size_t, QPDecomposition>;

/// Decomposition of every cut gate, keyed by gate index.
inline DecompositionCache build_decompositions(const Circuit &c) {
  DecompositionCache cache;
  for (std::size_t i : c.cut_indices()) {
    cache.emplace(i, decompose(pauli_coefficients(std::get<CanonicalGate>(c.gates()[i]).theta)));
  }
  return cache;
}

class QuasiprobabilitySampler {
 public:
  QuasiprobabilitySampler(const Circuit &c, const Observable &o, const DecompositionCache &cache,
                          MeasureMode mode)
      : circuit_(c), observable_(o), mode_(mode) {
    if (o.num_qubits() != c.num_qubits()) {
      throw std::invalid_argument("observable width does not match circuit");
    }
    for (std::size_t i : c.cut_indices()) {
      auto it = cache.find(i);
      if (it == cache.end()) {
        throw MissingDecomposition("no decomposition for cut gate " + std::to_string(i));
      }
      if (it->second.terms.empty()) {
        throw std::invalid_argument("decomposition for gate " + std::to_string(i) + " is empty");
      }
      Prepared p;
      p.decomposition = &it->second;
      const double total = it->second.sum_abs_coefficients();
      double cumulative = 0.0;
      for (const auto &t : it->second.terms) {
        cumulative += std::abs(t.coefficient) / total;
        p.cdf.push_back(cumulative);
        p.phases.push_back(t.coefficient / std::abs(t.coefficient));
      }
      w_total_ *= it->second.weight;
      prepared_.emplace(i, std::move(p));
    }
    double cumulative = 0.0;
    for (const auto &t : o.terms()) {
      cumulative += std::abs(t.coeff) / o.o_max();
      term_cdf_.push_back(cumulative);
    }
  }

  /// Product of per-cut weights.
  double w_total() const { return w_total_; }
  double o_max() const { return observable_.o_max(); }

  ShotRecord run_shot(Rng &rng) const {
    StateVector state(circuit_.num_qubits());
    ShotRecord rec;
    const auto &gates = circuit_.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
      const auto *cg = std::get_if<CanonicalGate>(&gates[i]);
      if (!cg || !cg->cut) {
        apply_gate(state, gates[i]);
        continue;
      }
      const Prepared &p = prepared_.at(i);
      const std::size_t k = draw(p.cdf, rng);
      const QPTerm &term = p.decomposition->terms[k];
      rec.phase *= p.phases[k];
      for (const auto &id : term.left) rec.phase *= run_program(realization_program(id), state, cg->q0, rng);
      for (const auto &id : term.right) rec.phase *= run_program(realization_program(id), state, cg->q1, rng);
      if (state.is_zero()) break;
    }
    if (state.is_zero()) {
      rec.phase = 0.0;
      rec.sample = 0.0;
    } else if (mode_ == MeasureMode::kExactTrace) {
      rec.sample = state.expectation(observable_);
    } else {
      const std::size_t k = draw(term_cdf_, rng);
      const double mean = state.pauli_expectation(observable_.strings()[k]).real() / state.norm2();
      const double p_plus = std::clamp(0.5 * (1.0 + mean), 0.0, 1.0);
      const double eigenvalue = rng.uniform() < p_plus ? 1.0 : -1.0;
      const double sign = observable_.terms()[k].coeff < 0.0 ? -1.0 : 1.0;
      rec.sample = observable_.o_max() * sign * eigenvalue;
    }
    rec.x = w_total_ * (rec.phase * rec.sample).real();
    const double bound = w_total_ * observable_.o_max();
    if (!(std::abs(rec.x) <= bound * (1.0 + 1e-9) + 1e-12)) {
      throw std::logic_error("shot sample exceeds the W_total * o_max bound");
    }
    return rec;
  }

 private:
  struct Prepared {
    const QPDecomposition *decomposition = nullptr;
    std::vector<double> cdf;
    std::vector<cd> phases;
  };

  static std::size_t draw(const std::vector<double> &cdf, Rng &rng) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return it == cdf.end() ? cdf.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
  }

  const Circuit &circuit_;
  const Observable &observable_;
  MeasureMode mode_;
  std::map<std::size_t, Prepared> prepared_;
  std::vector<double> term_cdf_;
  double w_total_ = 1.0;
};

inline ShotRecord run_shot(const Circuit &c, const Observable &o, const DecompositionCache &cache,
                           Rng &rng, MeasureMode mode = MeasureMode::kExactTrace) {
  return QuasiprobabilitySampler(c, o, cache, mode).run_shot(rng);
}

namespace detail {

/// Running mean and sum of squared deviations, merged in a fixed order.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments &o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double n = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / n;
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / n;
    count += o.count;
  }
};

inline constexpr std::uint64_t kShotBlock = 1024;

}  // namespace detail

/// Shot s uses the random stream (seed, s); shots are grouped in fixed blocks
/// whose statistics are merged in block order, so the result is identical
/// for any worker count.
inline EstimatorResult estimate(const Circuit &c, const Observable &o, const DecompositionCache &cache,
                                const EstimatorConfig &cfg) {
  cfg.validate();
  const QuasiprobabilitySampler sampler(c, o, cache, cfg.mode);
  EstimatorResult result;
  result.w_total = sampler.w_total();
  result.o_max = sampler.o_max();
  result.seed = cfg.seed;
  result.shots_used = cfg.shots ? *cfg.shots
                                : plan_shots(cfg.target->epsilon, cfg.target->delta, result.o_max, result.w_total);

  const std::uint64_t shots = result.shots_used;
  const std::uint64_t blocks = (shots + detail::kShotBlock - 1) / detail::kShotBlock;
  std::vector<detail::Moments> block_moments(blocks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto worker = [&] {
    try {
      for (std::uint64_t b = next++; b < blocks && !failed; b = next++) {
        const std::uint64_t end = std::min(shots, (b + 1) * detail::kShotBlock);
        detail::Moments m;
        for (std::uint64_t s = b * detail::kShotBlock; s < end; ++s) {
          Rng rng = Rng::for_stream(cfg.seed, s);
          m.add(sampler.run_shot(rng).x);
        }
        block_moments[b] = m;
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::uint64_t>(cfg.threads == 0 ? 1 : cfg.threads, 1, blocks));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  detail::Moments total;
  for (const auto &m : block_moments) total.merge(m);
  result.mean = total.mean;
  result.std_error =
      shots > 1 ? std::sqrt(std::max(0.0, total.m2) / static_cast<double>(shots - 1) / static_cast<double>(shots))
                : 0.0;
  return result;
}

inline EstimatorResult estimate(const Circuit &c, const Observable &o, const EstimatorConfig &cfg) {
  return estimate(c, o, build_decompositions(c), cfg);
}

}  // namespace quasicut
