#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "parhyp/errors.hpp"
#include "parhyp/warping.hpp"

namespace parhyp {

/// Philox 4x32-10 counter-based generator (Salmon et al., SC 2011).
/// Streams are addressed, not seeded: the output depends only on
/// (key, counter), so per-path streams are reproducible under any
/// scheduling of the work.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
        constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = static_cast<std::uint64_t>(M0) * ctr[0];
            std::uint64_t p1 = static_cast<std::uint64_t>(M1) * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
            key[0] += W0;
            key[1] += W1;
        }
        return ctr;
    }
};

/// Per-path stream: key from the seed, counter from (path index, block).
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t path_index)
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)},
          path_(path_index) {}

    double uniform() { // (0, 1)
        if (buffered_ == 0) refill();
        std::uint32_t u = buffer_[--buffered_];
        return (static_cast<double>(u) + 0.5) * (1.0 / 4294967296.0);
    }

    double normal() { // standard normal, Box-Muller pairs
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double rad = std::sqrt(-2.0 * std::log(u1));
        double ang = 6.28318530717958647692 * u2;
        cached_ = rad * std::sin(ang);
        has_cached_ = true;
        return rad * std::cos(ang);
    }

private:
    void refill() {
        std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(path_),
            static_cast<std::uint32_t>(path_ >> 32),
            static_cast<std::uint32_t>(block_),
            static_cast<std::uint32_t>(block_ >> 32)};
        buffer_ = Philox4x32::block(ctr, key_);
        ++block_;
        buffered_ = 4;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t path_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int buffered_ = 0;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Radial diffusion dX = b(X) dt + sqrt(2) dW, generator f'' + b f'.
/// No reflecting floor: absorption at both ends of the annulus.
struct DiffusionSpec {
    std::function<double(double)> drift;
};

struct SimConfig {
    std::uint64_t seed = 0;
    long n_paths = 10000;
    double dt_max = 1e-3;
    double r0 = 2.0;
    double rho = 1.0; // inner absorbing level
    double R = 4.0;   // outer absorbing level
    int threads = 1;
    long max_steps_per_path = 100000000;
};

struct HittingEstimate {
    double p_hat = 0.0;
    double std_err = 0.0;
    long n_paths = 0;
    long step_limit_hits = 0;
};

struct PathExit {
    std::uint64_t path = 0;
    int side = 0; // -1 inner, +1 outer, 0 step limit
    double t_exit = 0.0;
    long steps = 0;
};

namespace detail {

struct PathResult {
    int side;
    double t_exit;
    long steps;
};

template <typename Drift>
PathResult run_path(const Drift& drift, const SimConfig& c,
                    std::uint64_t path_index) {
    PathRng rng(c.seed, path_index);
    double x = c.r0;
    double t = 0.0;
    if (x <= c.rho) return {-1, 0.0, 0};
    if (x >= c.R) return {+1, 0.0, 0};

    const double sdt_max = std::sqrt(2.0 * c.dt_max);
    for (long step = 0; step < c.max_steps_per_path; ++step) {
        double b = drift(x);
        double ab = 1.0 + std::fabs(b);
        double cap = 0.1 / (ab * ab);
        double dt, sdt;
        if (cap >= c.dt_max) {
            dt = c.dt_max;
            sdt = sdt_max;
        } else {
            dt = cap;
            sdt = std::sqrt(2.0 * cap);
        }
        double x_new = x + b * dt + sdt * rng.normal();
        if (x_new <= c.rho) {
            double theta = (c.rho - x) / (x_new - x);
            return {-1, t + theta * dt, step + 1};
        }
        if (x_new >= c.R) {
            double theta = (c.R - x) / (x_new - x);
            return {+1, t + theta * dt, step + 1};
        }
        x = x_new;
        t += dt;
    }
    return {0, t, c.max_steps_per_path};
}

} // namespace detail

/// Euler-Maruyama with dt = min(dt_max, 0.1/(1+|b|)^2), absorption at the
/// first crossing of rho or R with the crossing time interpolated linearly
/// within the step. p_hat is the fraction of paths reaching R. Integer
/// counts make the aggregate independent of the thread partition.
template <typename Drift>
HittingEstimate simulate_hitting_with(const Drift& drift, const SimConfig& c,
                                      std::vector<PathExit>* exit_log = nullptr) {
    if (!(c.rho < c.R)) throw DomainError("simulate: requires rho < R");
    if (c.r0 < c.rho || c.r0 > c.R)
        throw DomainError("simulate: start point outside [rho, R]");
    if (c.n_paths <= 0) throw DomainError("simulate: n_paths must be positive");
    if (!(c.dt_max > 0.0)) throw DomainError("simulate: dt_max must be positive");

    if (exit_log) exit_log->assign(static_cast<std::size_t>(c.n_paths), PathExit{});

    const int n_workers = std::max(1, c.threads);
    std::vector<long> outer_counts(n_workers, 0);
    std::vector<long> limit_counts(n_workers, 0);

    auto worker = [&](int widx, long begin, long end) {
        long outer = 0, limit = 0;
        for (long i = begin; i < end; ++i) {
            detail::PathResult pr =
                detail::run_path(drift, c, static_cast<std::uint64_t>(i));
            if (pr.side > 0) ++outer;
            if (pr.side == 0) ++limit;
            if (exit_log)
                (*exit_log)[static_cast<std::size_t>(i)] =
                    PathExit{static_cast<std::uint64_t>(i), pr.side, pr.t_exit,
                             pr.steps};
        }
        outer_counts[widx] = outer;
        limit_counts[widx] = limit;
    };

    if (n_workers == 1) {
        worker(0, 0, c.n_paths);
    } else {
        std::vector<std::thread> pool;
        long chunk = (c.n_paths + n_workers - 1) / n_workers;
        for (int widx = 0; widx < n_workers; ++widx) {
            long begin = widx * chunk;
            long end = std::min(c.n_paths, begin + chunk);
            if (begin >= end) continue;
            pool.emplace_back(worker, widx, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    long outer = 0, limit = 0;
    for (int widx = 0; widx < n_workers; ++widx) {
        outer += outer_counts[widx];
        limit += limit_counts[widx];
    }

    HittingEstimate est;
    est.n_paths = c.n_paths;
    est.step_limit_hits = limit;
    est.p_hat = static_cast<double>(outer) / static_cast<double>(c.n_paths);
    est.std_err =
        std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(c.n_paths));
    return est;
}

HittingEstimate simulate_hitting(const DiffusionSpec& d, const SimConfig& c,
                                 std::vector<PathExit>* exit_log = nullptr);

/// Escape probability proxy for the intrinsic model: drift (m-1) eta_w,
/// absorbing at c.rho and R_far.
double estimate_escape(const ModelSpace& model, const SimConfig& c, double R_far);

} // namespace parhyp
