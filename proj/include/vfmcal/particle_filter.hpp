#ifndef VFMCAL_PARTICLE_FILTER_HPP
#define VFMCAL_PARTICLE_FILTER_HPP

#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Core>

#include "vfmcal/rng.hpp"

namespace vfmcal {

enum class ResamplingScheme { systematic, multinomial, stratified };

struct FilterConfig {
    int n_particles = 10000;
    ResamplingScheme scheme = ResamplingScheme::systematic;
    std::uint64_t seed = 0;
    // Algorithm default: resample at every step. When disabled, resampling
    // triggers only when the relative ESS drops below resample_ess_fraction.
    bool resample_every_step = true;
    double resample_ess_fraction = 0.5;
    int n_threads = 1;
};

// The weighted particle population at one time step. particles[i] carries
// ancestor ancestors[i] of the previous population; weights are normalized.
template <class State>
struct ParticleSet {
    std::vector<State> particles;
    Eigen::VectorXd log_weights;
    Eigen::VectorXd weights;
    Eigen::VectorXi ancestors;
    int t = 0;

    // propagation workspace, swapped with particles each step
    std::vector<State> scratch;

    int size() const { return static_cast<int>(particles.size()); }
};

// Weighted mean and percentile bands per state component, plus the ESS of
// the weights the summary was computed from.
struct PosteriorSummary {
    int t = 0;
    double ess = 0.0;
    double rel_ess = 0.0;
    Eigen::VectorXd mean, p5, p25, p75, p95;
};

struct StepDiagnostics {
    double ess = 0.0;
    bool resampled = false;
    // Set when normalization leaves a single particle with all the mass.
    bool degenerate = false;
};

// The filter cannot continue: every particle has zero weight.
class DegenerateFilterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 1 / sum(W_i^2), clamped to its mathematical range [1, N].
double effective_sample_size(const Eigen::Ref<const Eigen::VectorXd>& weights);

// Exp-normalize after subtracting the maximum. Throws DegenerateFilterError
// when no entry is finite.
Eigen::VectorXd normalize_log_weights(const Eigen::Ref<const Eigen::VectorXd>& log_weights);

// Ancestor indices drawn from normalized weights. Systematic and stratified
// keep offspring counts within one of N*W_i; multinomial draws are iid.
Eigen::VectorXi resample(const Eigen::Ref<const Eigen::VectorXd>& weights, ResamplingScheme scheme,
                         CounterRng& rng);

// Smallest value whose cumulative weight reaches q. Weights need not be
// normalized; they are divided by their sum.
double weighted_quantile(const Eigen::Ref<const Eigen::VectorXd>& values,
                         const Eigen::Ref<const Eigen::VectorXd>& weights, double q);

namespace detail {

template <class Fn>
void parallel_for(int n, int n_threads, Fn&& fn) {
    if (n_threads <= 1 || n < 2) {
        fn(0, n);
        return;
    }
    const int workers = std::min(n_threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = w * chunk;
        const int hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

// Percentiles of one component: sort-and-scan over (value, weight) pairs.
void weighted_percentiles(std::vector<std::pair<double, double>>& pairs, double* p5, double* p25,
                          double* p75, double* p95);

}  // namespace detail

// Bootstrap initialization: N prior draws weighted by the first
// observation's likelihood. prior(rng) -> State, log_lik(state) -> double.
template <class State, class PriorFn, class LogLikFn>
ParticleSet<State> init_filter(const FilterConfig& cfg, PriorFn&& prior, LogLikFn&& log_lik) {
    if (cfg.n_particles < 2) {
        throw std::invalid_argument("FilterConfig: n_particles must be at least 2");
    }
    const int n = cfg.n_particles;
    ParticleSet<State> ps;
    ps.t = 0;
    ps.particles.resize(n);
    ps.scratch.resize(n);
    ps.log_weights.resize(n);
    ps.ancestors = Eigen::VectorXi::LinSpaced(n, 0, n - 1);
    detail::parallel_for(n, cfg.n_threads, [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            CounterRng rng(cfg.seed, rng_stream::prior, 0, static_cast<std::uint64_t>(i));
            ps.particles[i] = prior(rng);
            ps.log_weights[i] = log_lik(ps.particles[i]);
        }
    });
    ps.weights = normalize_log_weights(ps.log_weights);
    return ps;
}

// One bootstrap step: resample, propagate through the transition proposal,
// reweight by the likelihood (the proposal cancels the transition density,
// leaving the likelihood), renormalize.
// transition(prev, next, rng) fills next; log_lik(state) -> double.
template <class State, class TransitionFn, class LogLikFn>
StepDiagnostics advance_filter(ParticleSet<State>& ps, TransitionFn&& transition,
                               LogLikFn&& log_lik, const FilterConfig& cfg) {
    const int n = ps.size();
    const int t_next = ps.t + 1;
    StepDiagnostics diag;

    diag.resampled = cfg.resample_every_step ||
                     effective_sample_size(ps.weights) < cfg.resample_ess_fraction * n;
    if (diag.resampled) {
        CounterRng rng(cfg.seed, rng_stream::resample, static_cast<std::uint64_t>(t_next), 0);
        ps.ancestors = resample(ps.weights, cfg.scheme, rng);
    } else {
        ps.ancestors = Eigen::VectorXi::LinSpaced(n, 0, n - 1);
    }

    // Carried log-weights are zero after resampling, log W otherwise.
    Eigen::VectorXd carried;
    if (!diag.resampled) carried = ps.weights.array().log();

    detail::parallel_for(n, cfg.n_threads, [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            CounterRng rng(cfg.seed, rng_stream::transition, static_cast<std::uint64_t>(t_next),
                           static_cast<std::uint64_t>(i));
            transition(ps.particles[ps.ancestors[i]], ps.scratch[i], rng);
            ps.log_weights[i] = log_lik(ps.scratch[i]);
            if (!diag.resampled) ps.log_weights[i] += carried[i];
        }
    });
    ps.particles.swap(ps.scratch);
    ps.weights = normalize_log_weights(ps.log_weights);
    ps.t = t_next;

    diag.ess = effective_sample_size(ps.weights);
    diag.degenerate = (ps.weights.array() > 0.0).count() <= 1;
    return diag;
}

// Propagate through the transition without an observation: weights carry
// over unchanged and no resampling takes place. Used when an observation is
// excluded from inference but time still advances.
template <class State, class TransitionFn>
void predict_filter(ParticleSet<State>& ps, TransitionFn&& transition, const FilterConfig& cfg) {
    const int n = ps.size();
    const int t_next = ps.t + 1;
    ps.ancestors = Eigen::VectorXi::LinSpaced(n, 0, n - 1);
    detail::parallel_for(n, cfg.n_threads, [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            CounterRng rng(cfg.seed, rng_stream::transition, static_cast<std::uint64_t>(t_next),
                           static_cast<std::uint64_t>(i));
            transition(ps.particles[i], ps.scratch[i], rng);
        }
    });
    ps.particles.swap(ps.scratch);
    ps.t = t_next;
}

// Weighted mean and 5/25/75/95 percentiles of each state component.
// component(state, d) -> double extracts component d.
template <class State, class ComponentFn>
PosteriorSummary summarize(const ParticleSet<State>& ps, int n_components, ComponentFn&& component,
                           int n_threads = 1) {
    const int n = ps.size();
    PosteriorSummary s;
    s.t = ps.t;
    s.ess = effective_sample_size(ps.weights);
    s.rel_ess = s.ess / n;
    s.mean.resize(n_components);
    s.p5.resize(n_components);
    s.p25.resize(n_components);
    s.p75.resize(n_components);
    s.p95.resize(n_components);

    detail::parallel_for(n_components, n_threads, [&](int lo, int hi) {
        std::vector<std::pair<double, double>> pairs(n);
        for (int d = lo; d < hi; ++d) {
            double mean = 0.0;
            for (int i = 0; i < n; ++i) {
                const double v = component(ps.particles[i], d);
                pairs[i] = {v, ps.weights[i]};
                mean += ps.weights[i] * v;
            }
            s.mean[d] = mean;
            detail::weighted_percentiles(pairs, &s.p5[d], &s.p25[d], &s.p75[d], &s.p95[d]);
        }
    });
    return s;
}

}  // namespace vfmcal

#endif
