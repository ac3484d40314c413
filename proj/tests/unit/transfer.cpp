#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "longwalk/chain.hpp"
#include "longwalk/error.hpp"
#include "longwalk/transfer.hpp"

using namespace longwalk;

namespace {
const std::vector<double> kHand{1, 2, 2, 1};
}

TEST_SUITE("transfer") {

TEST_CASE("transfer time and Rabi frequency") {
    const auto s = channel_spectrum(kHand);
    const auto m = attach_endpoints(s, kHand, 0.1);
    CHECK(m.time == doctest::Approx(std::numbers::pi / (std::sqrt(2.0) * 0.1 * (2.0 / 3))).epsilon(1e-13));
    CHECK(m.time == doctest::Approx(33.32).epsilon(1e-3));

    const std::vector<double> flat{1, 1, 1, 1};
    const auto u = attach_endpoints(channel_spectrum(flat), flat, 0.1);
    CHECK(u.rabi(2) == doctest::Approx(std::sqrt(2.0) * 0.1 / std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("chiral symmetry") {
    for (double alpha : {0.6, 1.0, 1.7}) {
        const auto c = build_effective_chain(1, alpha, 8);
        CHECK(anticommutator_residual(attach_endpoints(c, 0.03)) <= 1e-12);
    }
}

TEST_CASE("eigenbasis and site-basis fidelity agree") {
    const auto c = build_effective_chain(1, 1.3, 6);
    const auto m = attach_endpoints(c, 0.02);
    for (double t : {0.0, 0.25 * m.time, m.time, 1.7 * m.time})
        CHECK(std::abs(transfer_fidelity(m, t) - transfer_fidelity_eigenbasis(m, t)) < 1e-10);
}

TEST_CASE("hand chain at weak coupling") {
    const double g = 0.01;
    const auto m = attach_endpoints(channel_spectrum(kHand), kHand, g);
    const auto out = exact_transfer(m);
    CHECK(out.infidelity_exact <= 1.1 * 4 * g * g * 41.0 / 81);
    CHECK(m.weak_coupling_sum() == doctest::Approx(2 * g * g * 41.0 / 81).epsilon(1e-12));

    const auto b = infidelity_rigorous_bound(m);
    CHECK(b.bound == doctest::Approx(6 * g * g * 41.0 / 81).epsilon(1e-12));
    CHECK(b.conditions.both());
    CHECK(out.infidelity_exact <= b.bound);
}

TEST_CASE("perturbative infidelity envelope") {
    for (double alpha : {0.6, 1.0, 1.4}) {
        const auto c = build_effective_chain(1, alpha, 10);
        for (double g : {1e-4, 1e-3, 1e-2}) {
            const auto m = attach_endpoints(c, g);
            const double p = perturbative_infidelity(m);
            CHECK(p >= 0.0);
            CHECK(p <= 2.0 * m.weak_coupling_sum() * (1 + 1e-12));
        }
    }
}

TEST_CASE("small-g limit sits below the envelope") {
    const auto c = build_effective_chain(1, 0.8, 24);
    const auto s = chain_spectrum(c);
    const double g = 1e-4 * min_gap(s) / s.endpoint(s.zero_index());
    const auto m = attach_endpoints(s, c.bonds, g);
    CHECK(exact_transfer(m).infidelity_exact <= 2.0 * m.weak_coupling_sum());
}

TEST_CASE("gap condition flag turns off at large g") {
    const auto m = attach_endpoints(channel_spectrum(kHand), kHand, 2.0);
    CHECK_FALSE(infidelity_rigorous_bound(m).conditions.gap);
}

TEST_CASE("choose_g") {
    const auto s = channel_spectrum(kHand);
    const double g = choose_g(s, 0.06);
    CHECK(g == doctest::Approx(0.1 / ((2.0 / 3) * (std::sqrt(41.0) / 6))).epsilon(1e-12));
    CHECK(g == doctest::Approx(0.14056).epsilon(1e-4));
    CHECK(choose_g(s, 0.03) / g == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(choose_g(s, 0.0), Error);

    for (double alpha : {0.5, 0.9, 1.0, 1.5, 2.4}) {
        for (int l : {2, 6, 12}) {
            const auto c = build_effective_chain(1, alpha, l);
            const auto sp = chain_spectrum(c);
            for (double eps : {1e-1, 1e-3}) {
                const auto b = infidelity_rigorous_bound(attach_endpoints(sp, c.bonds, choose_g(sp, eps)));
                CHECK(b.bound <= eps);
                CHECK(b.conditions.both());
            }
        }
    }
}

TEST_CASE("exact transfer at the chosen coupling") {
    const auto c = build_effective_chain(1, 1.2, 24);
    const auto s = chain_spectrum(c);
    const auto out = exact_transfer(attach_endpoints(s, c.bonds, choose_g(s, 0.01)));
    CHECK(out.infidelity_exact <= 0.01);
    CHECK(out.fidelity_exact == doctest::Approx(1.0 - out.infidelity_exact));
}

TEST_CASE("transfer time report") {
    const auto r = transfer_time_report(1, 1.2, 8, 0.01);
    CHECK(r.distance == transfer_distance(8));
    CHECK(r.time > 0.0);
    CHECK(r.g > 0.0);
}

}
