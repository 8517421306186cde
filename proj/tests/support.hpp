#pragma once

// Shared helpers for the test suites: seeded RNG, random configurations and
// random valid control schedules.

#include "dubint/geometry.hpp"
#include "dubint/motion.hpp"
#include "dubint/solver.hpp"

#include <cstdlib>
#include <random>
#include <string>
#include <utility>

namespace dubint::test {

/// Corpus seed; override with DUBINS_INTERCEPT_SEED.
inline std::uint64_t corpus_seed() {
    if (const char* env = std::getenv("DUBINS_INTERCEPT_SEED"))
        return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
    return 0x5eed5eed1234ULL;
}

inline std::mt19937_64 make_rng(std::uint64_t salt = 0) {
    return std::mt19937_64{corpus_seed() + salt};
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline TurnSign random_sign(std::mt19937_64& rng) {
    return std::bernoulli_distribution(0.5)(rng) ? TurnSign::kLeft : TurnSign::kRight;
}

inline Configuration random_configuration(std::mt19937_64& rng, double box = 6.0) {
    return {uniform(rng, -box, box), uniform(rng, -box, box), uniform(rng, 0.0, kTwoPi)};
}

/// Any valid schedule plus an evaluation time t >= tau2, t <= t_max.
inline std::pair<ControlSchedule, double> random_schedule(std::mt19937_64& rng,
                                                          double t_max = kDefaultHorizon) {
    const bool csc = std::bernoulli_distribution(0.5)(rng);
    const double tau1 = uniform(rng, 0.0, std::min(kTwoPi * 0.999, t_max));
    if (csc) {
        const double tau2 = uniform(rng, tau1, t_max);
        const double t = uniform(rng, tau2, t_max);
        return {make_csc(random_sign(rng), random_sign(rng), tau1, tau2), t};
    }
    const double tau2 = uniform(rng, tau1, std::min(tau1 + kTwoPi * 0.999, t_max));
    const double t = uniform(rng, tau2, t_max);
    return {make_ccc(random_sign(rng), tau1, tau2), t};
}

/// A schedule of the given family satisfying the cycle constraints: either a
/// terminal arc below 2*pi, or (for SC/CC) tau1 = 0 with an exact 2*pi cycle.
inline std::pair<ControlSchedule, double> random_family_schedule(std::mt19937_64& rng,
                                                                 const FamilyId& fam,
                                                                 double t_max = kDefaultHorizon) {
    switch (fam.kind) {
        case FamilyKind::kCsc: {
            const double tau1 = uniform(rng, 0.0, kTwoPi * 0.999);
            const double budget = std::max(0.5, t_max - tau1 - kTwoPi);
            const double tau2 = tau1 + uniform(rng, 0.0, budget);
            const double t = tau2 + uniform(rng, 0.0,
                                            std::max(0.0, std::min(kTwoPi * 0.999,
                                                                   t_max - tau2)));
            return {make_csc(fam.s, fam.second, tau1, tau2), t};
        }
        case FamilyKind::kCcc: {
            const double tau1 = uniform(rng, 0.0, kTwoPi * 0.999);
            const double gap = fam.second == TurnSign::kLeft
                                   ? uniform(rng, 0.0, kPi)           // middle arc <= pi
                                   : uniform(rng, kPi * 1.001, kTwoPi * 0.999);
            const double tau2 = tau1 + gap;
            const double t = tau2 + uniform(rng, 0.0,
                                            std::max(0.0, std::min(kTwoPi * 0.999,
                                                                   t_max - tau2)));
            return {make_ccc(fam.s, tau1, tau2), t};
        }
        case FamilyKind::kSc: {
            const double seg = uniform(rng, 0.1, t_max - kTwoPi);
            return {make_csc(TurnSign::kLeft, TurnSign::kLeft, 0.0, seg), seg + kTwoPi};
        }
        case FamilyKind::kCc: {
            const double gap = uniform(rng, 0.1, kTwoPi * 0.999);
            return {make_ccc(random_sign(rng), 0.0, gap), gap + kTwoPi};
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace dubint::test
