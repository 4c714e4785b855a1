#include "tcw/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "tcw/clock.hpp"
#include "tcw/csv.hpp"
#include "tcw/parallel.hpp"
#include "tcw/sde.hpp"

namespace tcw {

namespace {

namespace fs = std::filesystem;

// Disjoint path-index families keep the two constructions independent.
constexpr std::uint64_t kLimitSide = std::uint64_t{1} << 32;
constexpr std::uint64_t kHalfStepSide = std::uint64_t{1} << 33;
constexpr std::uint64_t kDiagSide = std::uint64_t{1} << 34;

std::string num_label(double v) {
    std::ostringstream os;
    os << v;
    std::string s = os.str();
    for (char& c : s)
        if (c == '+' || c == '.') c = '_';
    return s;
}

class Builder {
  public:
    Builder(const ExperimentConfig& cfg, const char* kind) : cfg_(cfg) {
        rep_.kind = kind;
        rep_.path_count = cfg.path_count;
        rep_.config_echo = cfg.echo();
        outdir_ = cfg.output_dir;
        fs::create_directories(outdir_);
        if (cfg.threshold_overridden)
            info("threshold_override", cfg.threshold);
    }

    TestReport& assert_row(std::string name, double value, double threshold, bool pass,
                           std::size_t n_a = 0, std::size_t n_b = 0, double se = 0.0) {
        TestReport t;
        t.name = std::move(name);
        t.value = value;
        t.threshold = threshold;
        t.pass = pass;
        t.n_a = n_a;
        t.n_b = n_b;
        t.se = se;
        rep_.tests.push_back(std::move(t));
        return rep_.tests.back();
    }

    TestReport& info(std::string name, double value, std::size_t n_a = 0, double se = 0.0) {
        return assert_row(std::move(name), value, 0.0, true, n_a, 0, se);
    }

    std::string out_path(const std::string& name) {
        const std::string p = (outdir_ / name).string();
        rep_.csv_files.push_back(p);
        return p;
    }

    ExperimentReport finish(std::chrono::steady_clock::time_point started) {
        rep_.overall_pass = true;
        for (const auto& t : rep_.tests) rep_.overall_pass &= t.pass;

        std::ofstream report(outdir_ / "report.csv", std::ios::binary);
        report << "statistic,value,n_a,n_b,threshold,pass,se\n";
        for (const auto& t : rep_.tests)
            report << t.name << "," << format_double(t.value) << "," << t.n_a << ","
                   << t.n_b << "," << format_double(t.threshold) << ","
                   << (t.pass ? 1 : 0) << "," << format_double(t.se) << "\n";
        rep_.csv_files.push_back((outdir_ / "report.csv").string());

        std::ofstream echo(outdir_ / "config_echo.cfg", std::ios::binary);
        echo << rep_.config_echo;

        rep_.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return std::move(rep_);
    }

  private:
    const ExperimentConfig& cfg_;
    ExperimentReport rep_;
    fs::path outdir_;
};

double fraction(const std::vector<std::uint8_t>& flags) {
    std::size_t n = 0;
    for (auto f : flags) n += f;
    return static_cast<double>(n) / static_cast<double>(flags.size());
}

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// flt
// ---------------------------------------------------------------------------

ExperimentReport run_flt(const ExperimentConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    Builder b(cfg, "flt");
    const std::size_t d = cfg.model.dimension;
    const std::size_t P = cfg.path_count;
    const auto times = cfg.eval_times;
    const auto ns = sorted_unique(cfg.n_values);
    const std::size_t T = times.size();

    // Limit side: W(nu^{-1}(t)) marginals, shared across all n.  The
    // normalized side resolves occupation times at an effective step of
    // cfg.step / n, so the limit clock gets a finer grid to match; otherwise
    // its left-rule bias dominates the comparison.
    const double limit_step = cfg.step / 25.0;
    std::vector<std::vector<double>> lim(T * d, std::vector<double>(P));
    std::vector<std::vector<double>> nu_inv(T, std::vector<double>(P));
    parallel_for(P, cfg.workers, [&](std::size_t i) {
        auto w = sample_wiener(d, TimeGrid(limit_step, cfg.horizon), cfg.master_seed,
                               kLimitSide + i);
        auto res = limit_process(std::move(w), cfg.model, times, cfg.extension_budget);
        for (std::size_t t = 0; t < T; ++t) {
            for (std::size_t c = 0; c < d; ++c) lim[t * d + c][i] = res.points[t * d + c];
            nu_inv[t][i] = res.nu_inv[t];
        }
    });

    // ks[t*d+c or nu slot][n index]
    const std::size_t stats_per_t = d + 1;
    std::vector<std::vector<double>> ks(T * stats_per_t, std::vector<double>(ns.size()));

    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
        const double n = ns[ni];
        std::vector<std::vector<double>> norm(T * d, std::vector<double>(P));
        std::vector<std::vector<double>> nu_n(T, std::vector<double>(P));
        parallel_for(P, cfg.workers, [&](std::size_t i) {
            auto path = sample_wiener(d, TimeGrid(cfg.step, cfg.horizon), cfg.master_seed, i);
            auto res = normalized_process(std::move(path), cfg.model, n, times, cfg.cap,
                                          cfg.extension_budget);
            for (std::size_t t = 0; t < T; ++t) {
                for (std::size_t c = 0; c < d; ++c)
                    norm[t * d + c][i] = res.points[t * d + c];
                nu_n[t][i] = res.nu[t];
            }
        });

        const bool largest = (ni + 1 == ns.size());
        for (std::size_t t = 0; t < T; ++t) {
            std::vector<std::string> header;
            std::vector<std::vector<double>> cols;
            for (std::size_t c = 0; c < d; ++c) {
                auto r = ks_two_sample(EmpiricalDistribution(norm[t * d + c]),
                                       EmpiricalDistribution(lim[t * d + c]));
                ks[t * stats_per_t + c][ni] = r.value;
                const std::string name = "flt_n" + num_label(n) + "_t" + num_label(times[t]) +
                                         "_x" + std::to_string(c + 1);
                if (largest)
                    b.assert_row(name, r.value, cfg.threshold, r.value < cfg.threshold, P, P,
                                 r.se);
                else
                    b.info(name, r.value, P, r.se);
                header.push_back("norm_x" + std::to_string(c + 1));
                cols.push_back(norm[t * d + c]);
            }
            auto rn = ks_two_sample(EmpiricalDistribution(nu_n[t]),
                                    EmpiricalDistribution(nu_inv[t]));
            ks[t * stats_per_t + d][ni] = rn.value;
            const std::string nu_name = "flt_n" + num_label(n) + "_t" + num_label(times[t]) + "_nu";
            if (largest)
                b.assert_row(nu_name, rn.value, cfg.threshold, rn.value < cfg.threshold, P, P,
                             rn.se);
            else
                b.info(nu_name, rn.value, P, rn.se);

            for (std::size_t c = 0; c < d; ++c) {
                header.push_back("lim_x" + std::to_string(c + 1));
                cols.push_back(lim[t * d + c]);
            }
            header.push_back("nu_n");
            cols.push_back(nu_n[t]);
            header.push_back("nu_inv");
            cols.push_back(nu_inv[t]);
            write_csv(b.out_path("samples_flt_n" + num_label(n) + "_t" + num_label(times[t]) +
                                 ".csv"),
                      header, cols);
        }
    }

    // Distances must not increase with n, up to 2 SE of sampling noise.
    if (ns.size() > 1) {
        const double slack = 2.0 * std::sqrt(2.0 / static_cast<double>(P));
        for (std::size_t t = 0; t < T; ++t)
            for (std::size_t s = 0; s < stats_per_t; ++s) {
                double worst = 0.0;
                for (std::size_t ni = 0; ni + 1 < ns.size(); ++ni)
                    worst = std::max(worst, ks[t * stats_per_t + s][ni + 1] -
                                                ks[t * stats_per_t + s][ni] - slack);
                const std::string what =
                    s < d ? "_x" + std::to_string(s + 1) : std::string("_nu");
                b.assert_row("flt_monotone_t" + num_label(times[t]) + what,
                             std::max(0.0, worst), slack, worst <= 0.0, P, P);
            }
    }

    // Step-halving sensitivity of the normalized construction (degenerate
    // profiles only; constant profiles have no quadrature bias to probe).
    if (cfg.model.profile != ProfileKind::constant && !ns.empty()) {
        const double n = ns.back();
        const std::size_t P2 = std::min<std::size_t>(P, 2000);
        std::vector<std::vector<double>> coarse(d, std::vector<double>(P2));
        std::vector<std::vector<double>> fine(d, std::vector<double>(P2));
        const std::vector<double> t_last = {times.back()};
        parallel_for(P2, cfg.workers, [&](std::size_t i) {
            auto pa = sample_wiener(d, TimeGrid(cfg.step, cfg.horizon), cfg.master_seed,
                                    kDiagSide + i);
            auto ra = normalized_process(std::move(pa), cfg.model, n, t_last, cfg.cap,
                                         cfg.extension_budget);
            auto pb = sample_wiener(d, TimeGrid(cfg.step / 2.0, cfg.horizon), cfg.master_seed,
                                    kHalfStepSide + i);
            auto rb = normalized_process(std::move(pb), cfg.model, n, t_last, cfg.cap,
                                         cfg.extension_budget);
            for (std::size_t c = 0; c < d; ++c) {
                coarse[c][i] = ra.points[c];
                fine[c][i] = rb.points[c];
            }
        });
        for (std::size_t c = 0; c < d; ++c) {
            auto r = ks_two_sample(EmpiricalDistribution(coarse[c]),
                                   EmpiricalDistribution(fine[c]));
            b.info("flt_step_halving_x" + std::to_string(c + 1), r.value, P2, r.se);
        }
    }

    // Modulus-of-continuity diagnostic for Z_n (no asserted bound).
    {
        const double n = ns.back();
        const std::size_t M = std::min<std::size_t>(P, 100);
        const double t_max = times.back();
        for (const double h : {0.1, 0.05, 0.025}) {
            std::vector<double> sup(M);
            parallel_for(M, cfg.workers, [&](std::size_t i) {
                auto path = sample_wiener(d, TimeGrid(cfg.step, std::max(cfg.step, n * t_max)),
                                          cfg.master_seed, kDiagSide + i);
                const double dt = h / 5.0;
                double worst = 0.0;
                std::vector<double> a(d), bpt(d);
                for (double t1 = 0.0; t1 + h <= t_max + 1e-12; t1 += dt) {
                    path.at(n * t1, a);
                    path.at(n * (t1 + h), bpt);
                    double s2 = 0.0;
                    for (std::size_t c = 0; c < d; ++c) s2 += (bpt[c] - a[c]) * (bpt[c] - a[c]);
                    worst = std::max(worst, std::sqrt(s2 / n));
                }
                sup[i] = worst;
            });
            b.info("flt_modulus_h" + num_label(h), mc_mean(sup).mean, M);
        }
    }

    return b.finish(started);
}

// ---------------------------------------------------------------------------
// kr
// ---------------------------------------------------------------------------

ExperimentReport run_kr(const ExperimentConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    Builder b(cfg, "kr");
    const std::size_t P = cfg.path_count;
    const auto ts = sorted_unique(cfg.t_values);
    const double h = cfg.step;
    const double R = cfg.kr_radius;
    const bool disc = cfg.kr_function == KrFunction::disc;
    const double g_l1 = disc ? std::numbers::pi * R * R
                             : 2.0 * std::numbers::pi * R * R;

    std::vector<std::vector<double>> f(ts.size(), std::vector<double>(P));
    parallel_for(P, cfg.workers, [&](std::size_t i) {
        rng::NormalCursor z(rng::Stream::derive(cfg.master_seed, i, rng::kTagIncrements));
        const double sd = std::sqrt(h);
        double x = 0.0, y = 0.0, acc = 0.0;
        std::uint64_t k = 0;
        for (std::size_t ti = 0; ti < ts.size(); ++ti) {
            const auto steps = static_cast<std::uint64_t>(std::llround(ts[ti] / h));
            for (; k < steps; ++k) {
                const double r2 = x * x + y * y;
                acc += h * (disc ? (r2 <= R * R ? 1.0 : 0.0)
                                 : std::exp(-r2 / (2.0 * R * R)));
                x += sd * z();
                y += sd * z();
            }
            f[ti][i] = 2.0 * std::numbers::pi / (g_l1 * std::log(ts[ti])) * acc;
        }
    });

    std::vector<double> ks(ts.size());
    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
        auto r = ks_one_sample(EmpiricalDistribution(f[ti]), exp1_cdf);
        ks[ti] = r.value;
        const bool largest = ti + 1 == ts.size();
        if (largest)
            b.assert_row("kr_ks_T" + num_label(ts[ti]), r.value, cfg.threshold,
                         r.value < cfg.threshold, P, 0, r.se);
        else
            b.info("kr_ks_T" + num_label(ts[ti]), r.value, P, r.se);
    }
    if (ts.size() > 1) {
        double worst = 0.0;
        for (std::size_t ti = 0; ti + 1 < ts.size(); ++ti)
            worst = std::max(worst, ks[ti + 1] - ks[ti]);
        b.assert_row("kr_ks_decreasing", std::max(0.0, worst), 0.0, worst <= 0.0, P);
    }
    // The limit law has mean 1, but the finite-T expectation carries an
    // O(1/log T) excess; compare the empirical mean against the exact
    // expectation of the discrete estimator instead, and check the excess
    // itself shrinks with T.  E[1_disc(B_t)] = 1 - exp(-R^2/2t) and
    // E[bump(B_t)] = R^2/(R^2 + t) in two dimensions.
    std::vector<double> exact(ts.size());
    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
        const auto steps = static_cast<std::uint64_t>(std::llround(ts[ti] / h));
        double sum = 1.0;  // k = 0 term: both test functions equal 1 at the origin
        for (std::uint64_t k = 1; k < steps; ++k) {
            const double t = static_cast<double>(k) * h;
            sum += disc ? -std::expm1(-R * R / (2.0 * t)) : R * R / (R * R + t);
        }
        exact[ti] = 2.0 * std::numbers::pi / (g_l1 * std::log(ts[ti])) * h * sum;
        b.info("kr_mean_exact_T" + num_label(ts[ti]), exact[ti], P);
    }
    {
        auto m = mc_mean(f.back());
        b.assert_row("kr_mean_T" + num_label(ts.back()), m.mean, 3.0 * m.se,
                     std::abs(m.mean - exact.back()) <= 3.0 * m.se, P, 0, m.se);
    }
    if (ts.size() > 1) {
        bool shrinking = true;
        for (std::size_t ti = 0; ti + 1 < ts.size(); ++ti)
            shrinking &= std::abs(exact[ti + 1] - 1.0) < std::abs(exact[ti] - 1.0);
        b.assert_row("kr_mean_excess_shrinking", shrinking ? 1.0 : 0.0, 1.0, shrinking, P);
    }

    std::vector<std::string> header;
    for (double t : ts) header.push_back("F_T" + num_label(t));
    write_csv(b.out_path("samples_kr.csv"), header, f);
    return b.finish(started);
}

// ---------------------------------------------------------------------------
// divergence
// ---------------------------------------------------------------------------

ExperimentReport run_divergence(const ExperimentConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    Builder b(cfg, "divergence");
    const std::size_t d = cfg.model.dimension;
    const std::size_t P = cfg.path_count;
    const auto ts = sorted_unique(cfg.t_values);
    const double h = cfg.step;

    std::vector<std::vector<double>> s_at(ts.size(), std::vector<double>(P));
    parallel_for(P, cfg.workers, [&](std::size_t i) {
        rng::NormalCursor z(rng::Stream::derive(cfg.master_seed, i, rng::kTagIncrements));
        const double sd = std::sqrt(h);
        std::vector<double> x(d, 0.0);
        double acc = 0.0;
        // prev < 0 marks the first interval, integrated by right-endpoint
        // rectangle: the start point sits where vanishing profiles are
        // singular, so its trapezoid value would be pure cap.
        double prev = -1.0;
        std::uint64_t k = 0;
        for (std::size_t ti = 0; ti < ts.size(); ++ti) {
            const auto steps = static_cast<std::uint64_t>(std::llround(ts[ti] / h));
            for (; k < steps; ++k) {
                for (std::size_t c = 0; c < d; ++c) x[c] += sd * z();
                const double cur = std::min(1.0 / intensity_at(cfg.model, x), cfg.cap);
                acc += prev < 0.0 ? cur * h : 0.5 * (prev + cur) * h;
                prev = cur;
            }
            s_at[ti][i] = acc;
        }
    });

    std::vector<double> means(ts.size()), exceed(ts.size());
    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
        auto m = mc_mean(s_at[ti]);
        means[ti] = m.mean;
        std::vector<std::uint8_t> flags(P);
        for (std::size_t i = 0; i < P; ++i)
            flags[i] = s_at[ti][i] > cfg.exceed_level ? 1 : 0;
        exceed[ti] = fraction(flags);
        b.info("div_mean_t" + num_label(ts[ti]), m.mean, P, m.se);
        b.info("div_exceed_t" + num_label(ts[ti]), exceed[ti], P);
    }
    {
        bool increasing = true;
        for (std::size_t ti = 0; ti + 1 < ts.size(); ++ti)
            increasing &= means[ti + 1] > means[ti];
        b.assert_row("div_mean_increasing", increasing ? 1.0 : 0.0, 1.0, increasing, P);
        bool nondecr = true;
        for (std::size_t ti = 0; ti + 1 < ts.size(); ++ti)
            nondecr &= exceed[ti + 1] >= exceed[ti];
        b.assert_row("div_exceed_nondecreasing", nondecr ? 1.0 : 0.0, 1.0, nondecr, P);
        b.assert_row("div_exceed_final", exceed.back(), cfg.min_fraction,
                     exceed.back() >= cfg.min_fraction, P);
    }

    std::vector<std::string> header;
    for (double t : ts) header.push_back("S_t" + num_label(t));
    write_csv(b.out_path("samples_divergence.csv"), header, s_at);
    return b.finish(started);
}

// ---------------------------------------------------------------------------
// tau_moment
// ---------------------------------------------------------------------------

ExperimentReport run_tau_moment(const ExperimentConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    Builder b(cfg, "tau_moment");
    if (!cfg.model.bounded_above)
        throw refusal_error("tau_moment: model has no bounded_above constant");
    const double C = *cfg.model.bounded_above;
    const std::size_t d = cfg.model.dimension;
    const std::size_t P = cfg.path_count;
    const auto ts = cfg.eval_times;
    const double t_max = *std::max_element(ts.begin(), ts.end());
    const double horizon0 = std::max(cfg.horizon, 1.1 * C * t_max);

    std::vector<std::vector<double>> tau(ts.size(), std::vector<double>(P));
    parallel_for(P, cfg.workers, [&](std::size_t i) {
        auto path = sample_wiener(d, TimeGrid(cfg.step, horizon0), cfg.master_seed, i);
        auto res = normalized_process(std::move(path), cfg.model, 1.0, ts, cfg.cap,
                                      cfg.extension_budget);
        for (std::size_t ti = 0; ti < ts.size(); ++ti) tau[ti][i] = res.nu[ti];
    });

    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
        auto m = mc_mean(tau[ti]);
        const double bound = C * ts[ti] + 3.0 * m.se;
        b.assert_row("tau_mean_t" + num_label(ts[ti]), m.mean, bound, m.mean <= bound, P, 0,
                     m.se);
    }

    std::vector<std::string> header;
    for (double t : ts) header.push_back("tau_t" + num_label(t));
    write_csv(b.out_path("samples_tau.csv"), header, tau);
    return b.finish(started);
}

// ---------------------------------------------------------------------------
// escape_rate
// ---------------------------------------------------------------------------

ExperimentReport run_escape_rate(const ExperimentConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    Builder b(cfg, "escape_rate");
    const std::size_t d = cfg.model.dimension;
    const std::size_t P = cfg.path_count;
    const auto ts = sorted_unique(cfg.t_values);
    const double h = cfg.step;
    const double expo = 0.5 - 1.0 / static_cast<double>(d);

    double level = cfg.min_fraction;
    if (level < 0.0) {
        if (d != 3)
            throw refusal_error(
                "escape_rate: no built-in endpoint level for d != 3; set min_fraction");
        // |B_T|/sqrt(T) is chi(3); the endpoint bound is |B_T| > T^{1/6}.
        const double p = chi3_sf(std::pow(ts.back(), -1.0 / 3.0));
        level = p - 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(P));
    }

    std::vector<std::vector<double>> norm_at(ts.size(), std::vector<double>(P));
    std::vector<std::vector<std::uint8_t>> endpoint(ts.size(), std::vector<std::uint8_t>(P));
    std::vector<std::vector<std::uint8_t>> violated(ts.size(), std::vector<std::uint8_t>(P, 0));
    parallel_for(P, cfg.workers, [&](std::size_t i) {
        rng::NormalCursor z(rng::Stream::derive(cfg.master_seed, i, rng::kTagIncrements));
        const double sd = std::sqrt(h);
        std::vector<double> x(d, 0.0);
        std::uint64_t k = 0;
        for (std::size_t ti = 0; ti < ts.size(); ++ti) {
            const auto steps = static_cast<std::uint64_t>(std::llround(ts[ti] / h));
            const auto half = static_cast<std::uint64_t>(std::llround(0.5 * ts[ti] / h));
            for (; k < steps; ++k) {
                for (std::size_t c = 0; c < d; ++c) x[c] += sd * z();
                const std::uint64_t kk = k + 1;
                if (kk >= half && kk <= steps) {
                    const double t = static_cast<double>(kk) * h;
                    double r2 = 0.0;
                    for (double xc : x) r2 += xc * xc;
                    if (std::sqrt(r2) <= std::pow(t, expo)) violated[ti][i] = 1;
                }
            }
            double r2 = 0.0;
            for (double xc : x) r2 += xc * xc;
            norm_at[ti][i] = std::sqrt(r2);
            endpoint[ti][i] = norm_at[ti][i] > std::pow(ts[ti], expo) ? 1 : 0;
        }
    });

    std::vector<double> fracs(ts.size());
    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
        fracs[ti] = fraction(endpoint[ti]);
        const bool largest = ti + 1 == ts.size();
        if (largest)
            b.assert_row("escape_endpoint_T" + num_label(ts[ti]), fracs[ti], level,
                         fracs[ti] >= level, P);
        else
            b.info("escape_endpoint_T" + num_label(ts[ti]), fracs[ti], P);
        b.info("escape_violate_T" + num_label(ts[ti]), fraction(violated[ti]), P);
    }
    if (ts.size() > 1) {
        const double slack = 2.0 / std::sqrt(static_cast<double>(P));
        double worst = 0.0;
        for (std::size_t ti = 0; ti + 1 < ts.size(); ++ti)
            worst = std::max(worst, fracs[ti] - fracs[ti + 1] - slack);
        b.assert_row("escape_fraction_nondecreasing", std::max(0.0, worst), slack,
                     worst <= 0.0, P);
    }

    std::vector<std::string> header;
    for (double t : ts) header.push_back("normB_T" + num_label(t));
    write_csv(b.out_path("samples_escape.csv"), header, norm_at);
    return b.finish(started);
}

// ---------------------------------------------------------------------------
// sde_crosscheck
// ---------------------------------------------------------------------------

ExperimentReport run_sde_crosscheck(const ExperimentConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    Builder b(cfg, "sde_crosscheck");
    const std::size_t d = cfg.model.dimension;
    const std::size_t P = cfg.path_count;
    const auto ts = cfg.eval_times;
    const double t_max = *std::max_element(ts.begin(), ts.end());
    const std::size_t T = ts.size();

    std::vector<std::vector<double>> em(T * d, std::vector<double>(P));
    std::vector<std::vector<double>> lim(T * d, std::vector<double>(P));
    const std::vector<double> origin(d, 0.0);
    SdeConfig sde{cfg.model, DiffusionKind::limit, cfg.step, std::max(cfg.step, t_max)};

    parallel_for(P, cfg.workers, [&](std::size_t i) {
        auto y = euler_maruyama(sde, origin, cfg.master_seed, i);
        std::vector<double> pt(d);
        for (std::size_t t = 0; t < T; ++t) {
            y.at(ts[t], pt);
            for (std::size_t c = 0; c < d; ++c) em[t * d + c][i] = pt[c];
        }
        auto w = sample_wiener(d, TimeGrid(cfg.step, cfg.horizon), cfg.master_seed,
                               kLimitSide + i);
        auto res = limit_process(std::move(w), cfg.model, ts, cfg.extension_budget);
        for (std::size_t t = 0; t < T; ++t)
            for (std::size_t c = 0; c < d; ++c) lim[t * d + c][i] = res.points[t * d + c];
    });

    for (std::size_t t = 0; t < T; ++t) {
        std::vector<std::string> header;
        std::vector<std::vector<double>> cols;
        for (std::size_t c = 0; c < d; ++c) {
            auto r = ks_two_sample(EmpiricalDistribution(em[t * d + c]),
                                   EmpiricalDistribution(lim[t * d + c]));
            b.assert_row("sde_t" + num_label(ts[t]) + "_x" + std::to_string(c + 1), r.value,
                         cfg.threshold, r.value < cfg.threshold, P, P, r.se);
            header.push_back("em_x" + std::to_string(c + 1));
            cols.push_back(em[t * d + c]);
        }
        for (std::size_t c = 0; c < d; ++c) {
            header.push_back("lim_x" + std::to_string(c + 1));
            cols.push_back(lim[t * d + c]);
        }
        write_csv(b.out_path("samples_sde_t" + num_label(ts[t]) + ".csv"), header, cols);
    }
    return b.finish(started);
}

// ---------------------------------------------------------------------------
// cauchy_mc
// ---------------------------------------------------------------------------

namespace {

double payoff_value(const ExperimentConfig& cfg, std::span<const double> x) {
    switch (cfg.payoff) {
        case Payoff::coordinate:
            return x[cfg.payoff_coordinate];
        case Payoff::sqnorm: {
            double s = 0.0;
            for (double xc : x) s += xc * xc;
            return s;
        }
        case Payoff::bump: {
            double s = 0.0;
            for (double xc : x) s += xc * xc;
            return std::exp(-s / (2.0 * cfg.payoff_scale * cfg.payoff_scale));
        }
    }
    return 0.0;
}

}  // namespace

ExperimentReport run_cauchy_mc(const ExperimentConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    Builder b(cfg, "cauchy_mc");
    const std::size_t d = cfg.model.dimension;
    const std::size_t P = cfg.path_count;
    const auto ts = cfg.eval_times;
    auto starts = cfg.start_points;
    if (starts.empty()) starts.emplace_back(d, 0.0);

    std::vector<double> col_t, col_est, col_se;
    std::vector<std::vector<double>> col_start(d);

    std::size_t expect_idx = 0;
    for (std::size_t si = 0; si < starts.size(); ++si) {
        const auto& start = starts[si];
        std::vector<std::vector<double>> payoff(ts.size(), std::vector<double>(P));
        parallel_for(P, cfg.workers, [&](std::size_t i) {
            auto base = sample_wiener(d, TimeGrid(cfg.step, cfg.horizon), cfg.master_seed,
                                      (si << 24) + i);
            // Shift to the start point; S then integrates 1/lambda along X.
            std::vector<double> shifted = base.values();
            for (std::size_t k = 0; k < base.grid().size(); ++k)
                for (std::size_t c = 0; c < d; ++c) shifted[k * d + c] += start[c];
            SampledPath x(d, base.grid(), base.provenance(), std::move(shifted));
            auto res = normalized_process(std::move(x), cfg.model, 1.0, ts, cfg.cap,
                                          cfg.extension_budget);
            for (std::size_t t = 0; t < ts.size(); ++t)
                payoff[t][i] =
                    payoff_value(cfg, {res.points.data() + t * d, d});
        });

        for (std::size_t t = 0; t < ts.size(); ++t) {
            auto m = mc_mean(payoff[t]);
            std::string name = "u_s" + std::to_string(si + 1) + "_t" + num_label(ts[t]);
            if (expect_idx < cfg.expected.size()) {
                const double want = cfg.expected[expect_idx++];
                b.assert_row(name, m.mean, 3.0 * m.se,
                             std::abs(m.mean - want) <= 3.0 * m.se, P, 0, m.se);
            } else {
                b.info(name, m.mean, P, m.se);
            }
            for (std::size_t c = 0; c < d; ++c) col_start[c].push_back(start[c]);
            col_t.push_back(ts[t]);
            col_est.push_back(m.mean);
            col_se.push_back(m.se);
        }
    }

    std::vector<std::string> header;
    std::vector<std::vector<double>> cols;
    for (std::size_t c = 0; c < d; ++c) {
        header.push_back("x" + std::to_string(c + 1));
        cols.push_back(col_start[c]);
    }
    header.insert(header.end(), {"t", "estimate", "se"});
    cols.push_back(col_t);
    cols.push_back(col_est);
    cols.push_back(col_se);
    write_csv(b.out_path("cauchy.csv"), header, cols);
    return b.finish(started);
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

void check_preconditions(const ExperimentConfig& cfg) {
    const auto rep = validate_assumptions(cfg.model);
    switch (cfg.kind) {
        case ExperimentKind::flt:
            if (!rep.theorem_separated && !rep.theorem_radial && !rep.theorem_diagonal)
                throw refusal_error("flt: no limit theorem applies to this model: " +
                                    rep.summary());
            break;
        case ExperimentKind::kr:
            if (cfg.model.dimension != 2)
                throw refusal_error("kr: the normalized-functional limit law is planar; "
                                    "dimension must be 2");
            break;
        case ExperimentKind::divergence:
            if (rep.i != AssumptionStatus::holds || rep.iii != AssumptionStatus::holds)
                throw refusal_error("divergence: model must satisfy local integrability of "
                                    "1/lambda and a finite limsup of lambda: " +
                                    rep.summary());
            break;
        case ExperimentKind::tau_moment:
            if (!cfg.model.bounded_above)
                throw refusal_error("tau_moment: the expectation bound needs a model with "
                                    "bounded_above set");
            break;
        case ExperimentKind::escape_rate:
            if (cfg.model.dimension < 3)
                throw refusal_error(
                    "escape_rate: requires dimension >= 3; planar Brownian motion admits no "
                    "polynomial escape lower bound of this form");
            break;
        case ExperimentKind::sde_crosscheck:
            if (cfg.model.profile != ProfileKind::constant)
                throw refusal_error("sde_crosscheck: the limit-kind coefficients are octant "
                                    "constants; use a constant-profile model");
            break;
        case ExperimentKind::cauchy_mc:
            break;
    }
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    if (!cfg.force) check_preconditions(cfg);
    switch (cfg.kind) {
        case ExperimentKind::flt: return run_flt(cfg);
        case ExperimentKind::kr: return run_kr(cfg);
        case ExperimentKind::divergence: return run_divergence(cfg);
        case ExperimentKind::tau_moment: return run_tau_moment(cfg);
        case ExperimentKind::escape_rate: return run_escape_rate(cfg);
        case ExperimentKind::sde_crosscheck: return run_sde_crosscheck(cfg);
        case ExperimentKind::cauchy_mc: return run_cauchy_mc(cfg);
    }
    throw config_error("unknown experiment kind");
}

}  // namespace tcw
