#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "vfmcal/normal.hpp"
#include "vfmcal/particle_filter.hpp"

using namespace vfmcal;

namespace {

Eigen::VectorXd uniform_weights(int n) {
    return Eigen::VectorXd::Constant(n, 1.0 / n);
}

}  // namespace

TEST_CASE("effective sample size formula") {
    CHECK(effective_sample_size(uniform_weights(100)) == doctest::Approx(100.0));
    Eigen::VectorXd point = Eigen::VectorXd::Zero(10);
    point[3] = 1.0;
    CHECK(effective_sample_size(point) == doctest::Approx(1.0));
    Eigen::VectorXd half(4);
    half << 0.5, 0.5, 0.0, 0.0;
    CHECK(effective_sample_size(half) == doctest::Approx(2.0));
}

TEST_CASE("ESS stays in [1, N] over random weight vectors") {
    CounterRng rng(21);
    for (int rep = 0; rep < 50000; ++rep) {
        const int n = 1 + static_cast<int>(rng.uniform01() * 64);
        Eigen::VectorXd w(n);
        for (int i = 0; i < n; ++i) {
            const double roll = rng.uniform01();
            w[i] = roll < 0.2 ? 0.0 : std::pow(rng.uniform01(), 8.0);
        }
        if (w.sum() == 0.0) w[0] = 1.0;
        w /= w.sum();
        const double ess = effective_sample_size(w);
        CHECK(ess >= 1.0);
        CHECK(ess <= static_cast<double>(n));
    }
}

TEST_CASE("log-weight normalization") {
    Eigen::VectorXd two(2);
    two << 0.0, 0.0;
    CHECK(normalize_log_weights(two)[0] == doctest::Approx(0.5));

    Eigen::VectorXd shifted(2);
    shifted << 1000.0, 1000.0 + std::log(3.0);
    const Eigen::VectorXd w = normalize_log_weights(shifted);
    CHECK(w[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(0.75).epsilon(1e-12));

    SUBCASE("shift invariance") {
        CounterRng rng(22);
        Eigen::VectorXd lw(50);
        for (int i = 0; i < 50; ++i) lw[i] = 10.0 * rng.uniform01();
        const Eigen::VectorXd a = normalize_log_weights(lw);
        const Eigen::VectorXd b = normalize_log_weights(lw.array() + 123.456);
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("extreme spreads still sum to one") {
        CounterRng rng(23);
        for (int rep = 0; rep < 200; ++rep) {
            Eigen::VectorXd lw(100);
            for (int i = 0; i < 100; ++i) lw[i] = 2000.0 * rng.uniform01() - 1000.0;
            const Eigen::VectorXd w = normalize_log_weights(lw);
            CHECK(std::abs(w.sum() - 1.0) < 1e-10);
            CHECK(w.minCoeff() >= 0.0);
        }
    }

    SUBCASE("all -inf is degenerate") {
        Eigen::VectorXd lw = Eigen::VectorXd::Constant(
            4, -std::numeric_limits<double>::infinity());
        CHECK_THROWS_AS(normalize_log_weights(lw), DegenerateFilterError);
    }
}

TEST_CASE("systematic resampling: equal weights give a permutation of all") {
    CounterRng rng(24);
    const Eigen::VectorXi anc = resample(uniform_weights(64), ResamplingScheme::systematic, rng);
    std::vector<int> counts(64, 0);
    for (int i = 0; i < 64; ++i) counts[anc[i]]++;
    for (int c : counts) CHECK(c == 1);
}

TEST_CASE("resampling a point mass returns only that ancestor") {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(8);
    w[0] = 1.0;
    for (auto scheme : {ResamplingScheme::systematic, ResamplingScheme::multinomial,
                        ResamplingScheme::stratified}) {
        CounterRng rng(25);
        const Eigen::VectorXi anc = resample(w, scheme, rng);
        for (int i = 0; i < 8; ++i) CHECK(anc[i] == 0);
    }
}

TEST_CASE("systematic offspring counts are within one of N*W") {
    CounterRng rng(26);
    for (int rep = 0; rep < 2000; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform01() * 30);
        Eigen::VectorXd w(n);
        for (int i = 0; i < n; ++i) w[i] = std::pow(rng.uniform01(), 3.0);
        w /= w.sum();
        const Eigen::VectorXi anc = resample(w, ResamplingScheme::systematic, rng);
        std::vector<int> counts(n, 0);
        for (int i = 0; i < n; ++i) counts[anc[i]]++;
        for (int i = 0; i < n; ++i) {
            const double expect = n * w[i];
            CHECK(counts[i] >= static_cast<int>(std::floor(expect)));
            CHECK(counts[i] <= static_cast<int>(std::ceil(expect)));
        }
    }
}

TEST_CASE("multinomial offspring counts are unbiased") {
    const int n = 8;
    Eigen::VectorXd w(n);
    w << 0.30, 0.05, 0.20, 0.10, 0.02, 0.08, 0.15, 0.10;
    const int reps = 100000;
    std::vector<long> counts(n, 0);
    CounterRng rng(27);
    for (int rep = 0; rep < reps; ++rep) {
        const Eigen::VectorXi anc = resample(w, ResamplingScheme::multinomial, rng);
        for (int i = 0; i < n; ++i) counts[anc[i]]++;
    }
    for (int i = 0; i < n; ++i) {
        const double mean = static_cast<double>(counts[i]) / reps;
        const double expect = n * w[i];
        const double se = std::sqrt(n * w[i] * (1.0 - w[i]) / reps);
        CHECK(std::abs(mean - expect) < 3.0 * se);
    }
}

TEST_CASE("stratified resampling means match N*W as well") {
    const int n = 6;
    Eigen::VectorXd w(n);
    w << 0.4, 0.1, 0.1, 0.2, 0.15, 0.05;
    const int reps = 50000;
    std::vector<long> counts(n, 0);
    CounterRng rng(28);
    for (int rep = 0; rep < reps; ++rep) {
        const Eigen::VectorXi anc = resample(w, ResamplingScheme::stratified, rng);
        for (int i = 0; i < n; ++i) counts[anc[i]]++;
    }
    for (int i = 0; i < n; ++i) {
        const double mean = static_cast<double>(counts[i]) / reps;
        const double se = std::sqrt(n * w[i] * (1.0 - w[i]) / reps);  // conservative
        CHECK(std::abs(mean - n * w[i]) < 3.0 * se);
    }
}

TEST_CASE("weighted quantile against a brute-force oracle") {
    CounterRng rng(29);
    for (int rep = 0; rep < 500; ++rep) {
        const int n = 1 + static_cast<int>(rng.uniform01() * 40);
        Eigen::VectorXd values(n), weights(n);
        for (int i = 0; i < n; ++i) {
            values[i] = std::floor(rng.uniform01() * 10.0);  // duplicates on purpose
            weights[i] = rng.uniform01();
        }
        weights /= weights.sum();
        const double q = rng.uniform01();
        const double got = weighted_quantile(values, weights, q);

        // oracle: smallest candidate whose total weight of values <= cand
        // reaches q, computed by direct summation
        double best = values.maxCoeff();
        std::vector<double> cands(values.data(), values.data() + n);
        std::sort(cands.begin(), cands.end());
        for (double cand : cands) {
            double mass = 0.0;
            for (int i = 0; i < n; ++i) {
                if (values[i] <= cand) mass += weights[i];
            }
            if (mass >= q - 1e-15) {
                best = cand;
                break;
            }
        }
        CHECK(got == best);
    }
}

TEST_CASE("summarize: identical particles and two-point sets") {
    FilterConfig cfg;
    cfg.n_particles = 100;
    ParticleSet<double> ps;
    ps.particles.assign(100, 3.25);
    ps.weights = uniform_weights(100);
    ps.log_weights = Eigen::VectorXd::Zero(100);

    const auto comp = [](const double& s, int) { return s; };
    const PosteriorSummary all_same = summarize(ps, 1, comp);
    CHECK(all_same.mean[0] == doctest::Approx(3.25));
    CHECK(all_same.p5[0] == 3.25);
    CHECK(all_same.p95[0] == 3.25);
    CHECK(all_same.ess == doctest::Approx(100.0));

    for (int i = 0; i < 50; ++i) ps.particles[i] = 0.0;
    for (int i = 50; i < 100; ++i) ps.particles[i] = 1.0;
    const PosteriorSummary two = summarize(ps, 1, comp);
    CHECK(two.mean[0] == doctest::Approx(0.5));
    CHECK(two.p5[0] == 0.0);
    CHECK(two.p25[0] == 0.0);
    CHECK(two.p75[0] == 1.0);
    CHECK(two.p95[0] == 1.0);
}

TEST_CASE("bootstrap init: uniform weights under a flat likelihood") {
    FilterConfig cfg;
    cfg.n_particles = 500;
    cfg.seed = 31;
    auto ps = init_filter<double>(
        cfg, [](CounterRng& rng) { return rng.uniform01(); },
        [](const double&) { return -1.25; });
    CHECK(effective_sample_size(ps.weights) == doctest::Approx(500.0));
    CHECK(std::abs(ps.weights.sum() - 1.0) < 1e-10);

    SUBCASE("a single supported particle gives ESS 1") {
        auto spiky = init_filter<double>(
            cfg, [](CounterRng& rng) { return rng.uniform01(); },
            [](const double& s) {
                return s < 0.5 ? -std::numeric_limits<double>::infinity() : 0.0;
            });
        // half the particles survive -> ESS about N/2
        CHECK(effective_sample_size(spiky.weights) > 200.0);
        auto one = init_filter<double>(
            cfg, [](CounterRng& rng) { return rng.uniform01(); },
            [&ps](const double& s) {
                return s == ps.particles[7] ? 0.0
                                            : -std::numeric_limits<double>::infinity();
            });
        CHECK(effective_sample_size(one.weights) == doctest::Approx(1.0));
    }

    SUBCASE("all-zero likelihood raises the degenerate error") {
        CHECK_THROWS_AS(init_filter<double>(
                            cfg, [](CounterRng& rng) { return rng.uniform01(); },
                            [](const double&) {
                                return -std::numeric_limits<double>::infinity();
                            }),
                        DegenerateFilterError);
    }
}

TEST_CASE("advance: uninformative observations keep ESS at N") {
    FilterConfig cfg;
    cfg.n_particles = 400;
    cfg.seed = 33;
    auto ps = init_filter<double>(
        cfg, [](CounterRng& rng) { return rng.uniform01(); },
        [](const double&) { return 0.0; });
    const auto trans = [](const double& prev, double& next, CounterRng& rng) {
        next = prev + 0.1 * standard_normal(rng);
    };
    const StepDiagnostics diag =
        advance_filter(ps, trans, [](const double&) { return 3.5; }, cfg);
    CHECK(diag.resampled);
    CHECK(diag.ess == doctest::Approx(400.0));
    CHECK_FALSE(diag.degenerate);
    CHECK(ps.t == 1);
}

TEST_CASE("determinism: same seed bitwise-identical, threads do not matter") {
    const auto run_once = [](int n_threads) {
        FilterConfig cfg;
        cfg.n_particles = 2000;
        cfg.seed = 777;
        cfg.n_threads = n_threads;
        auto ps = init_filter<double>(
            cfg, [](CounterRng& rng) { return standard_normal(rng); },
            [](const double& s) { return -0.5 * s * s; });
        const auto trans = [](const double& prev, double& next, CounterRng& rng) {
            next = 0.9 * prev + 0.2 * standard_normal(rng);
        };
        std::vector<PosteriorSummary> sums;
        for (int t = 1; t <= 10; ++t) {
            advance_filter(ps, trans,
                           [t](const double& s) {
                               const double d = s - 0.05 * t;
                               return -0.5 * d * d / 0.09;
                           },
                           cfg);
            sums.push_back(summarize(ps, 1, [](const double& s, int) { return s; },
                                     cfg.n_threads));
        }
        return sums;
    };
    const auto serial_a = run_once(1);
    const auto serial_b = run_once(1);
    const auto parallel = run_once(4);
    for (std::size_t i = 0; i < serial_a.size(); ++i) {
        CHECK(serial_a[i].mean[0] == serial_b[i].mean[0]);
        CHECK(serial_a[i].mean[0] == parallel[i].mean[0]);
        CHECK(serial_a[i].p25[0] == parallel[i].p25[0]);
        CHECK(serial_a[i].ess == parallel[i].ess);
    }
}

TEST_CASE("ESS-threshold mode skips resampling while weights are healthy") {
    FilterConfig cfg;
    cfg.n_particles = 300;
    cfg.seed = 35;
    cfg.resample_every_step = false;
    cfg.resample_ess_fraction = 0.5;
    auto ps = init_filter<double>(
        cfg, [](CounterRng& rng) { return standard_normal(rng); },
        [](const double&) { return 0.0; });
    const auto trans = [](const double& prev, double& next, CounterRng& rng) {
        next = prev + 0.05 * standard_normal(rng);
    };
    const StepDiagnostics d1 =
        advance_filter(ps, trans, [](const double&) { return 1.0; }, cfg);
    CHECK_FALSE(d1.resampled);  // flat likelihood keeps ESS = N
    const StepDiagnostics d2 = advance_filter(
        ps, trans, [](const double& s) { return -50.0 * s * s; }, cfg);
    // strongly informative step collapses ESS, so the next one resamples
    const StepDiagnostics d3 =
        advance_filter(ps, trans, [](const double&) { return 0.0; }, cfg);
    CHECK((d2.ess < 150.0));
    CHECK(d3.resampled);
}
