#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace gmatch {

// Deterministic mapping behind the normal-approximated binomial sampler:
// round(y * sqrt(N p (1-p)) + N p). May fall outside [0, N]; callers redraw y.
inline std::int64_t binomial_round(double y, std::uint64_t n_trials, double p) {
    double mu = static_cast<double>(n_trials) * p;
    double sigma = std::sqrt(static_cast<double>(n_trials) * p * (1.0 - p));
    return std::llround(y * sigma + mu);
}

// Seedable random source. MT19937 as the base generator; all derived draws
// (uniform ints, unit reals, polar-method normals, binomial counts) are built
// from raw 32-bit words so streams are reproducible across platforms.
class SeededRng {
public:
    explicit SeededRng(std::uint32_t seed) : engine_(seed), seed_(seed) {}

    std::uint32_t seed() const { return seed_; }

    std::uint32_t next_u32() { return engine_(); }

    // Unbiased uniform integer in [0, k), rejection-based.
    std::uint64_t uniform_below(std::uint64_t k) {
        if (k == 0) throw std::invalid_argument("uniform_below: k must be >= 1");
        if (k == 1) return 0;
        if (k <= (std::uint64_t{1} << 32)) {
            std::uint64_t span = std::uint64_t{1} << 32;
            std::uint64_t limit = span - span % k;
            std::uint64_t r;
            do {
                r = next_u32();
            } while (r >= limit);
            return r % k;
        }
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / k * k;
        std::uint64_t r;
        do {
            r = (static_cast<std::uint64_t>(next_u32()) << 32) | next_u32();
        } while (r >= limit);
        return r % k;
    }

    // Uniform real in [0, 1).
    double uniform_unit() { return next_u32() * 0x1p-32; }

    // Standard normal via the polar (Marsaglia) method; the second deviate of
    // each accepted pair is cached.
    double standard_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double a, b, s;
        do {
            a = next_u32() * (2.0 / 4294967295.0) - 1.0;
            b = next_u32() * (2.0 / 4294967295.0) - 1.0;
            s = a * a + b * b;
        } while (s <= 0.0 || s >= 1.0);
        double factor = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = b * factor;
        have_spare_ = true;
        return a * factor;
    }

    // Binomial(N, p) count approximated through a normal deviate; infeasible
    // values (< 0 or > N) trigger a redraw of the normal.
    std::uint64_t binomial_via_normal(std::uint64_t n_trials, double p) {
        if (n_trials == 0) throw std::invalid_argument("binomial_via_normal: N must be >= 1");
        if (!(p > 0.0 && p < 1.0))
            throw std::invalid_argument("binomial_via_normal: p must be in (0, 1)");
        for (;;) {
            std::int64_t x = binomial_round(standard_normal(), n_trials, p);
            if (x >= 0 && static_cast<std::uint64_t>(x) <= n_trials)
                return static_cast<std::uint64_t>(x);
        }
    }

private:
    std::mt19937 engine_;
    std::uint32_t seed_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace gmatch
