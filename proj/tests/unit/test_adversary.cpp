#include <doctest.h>

#include <cmath>
#include <vector>

#include "mc.hpp"
#include "qcsim/adversary.hpp"
#include "qcsim/errors.hpp"

using namespace qcsim;

namespace {

struct BellMoments {
    mc::Moments plus;
    mc::Moments minus;
    mc::CoMoments eve_vs_signal;
};

// Honest source, noiseless Bob, with `hook` applied to the signal beam.
template <class Hook>
BellMoments through(double r, std::size_t n, std::uint64_t seed, Hook hook) {
    const SqueezeParam sp(r);
    BellMoments m;
    RngStream unused(0, 0);
    for (std::size_t k = 0; k < n; ++k) {
        auto src = RngStream::for_slot(seed, StreamTag::Source, k);
        auto atk = RngStream::for_slot(seed, StreamTag::Attack, k);
        const auto s = sample_slot(sp, src);
        double eve = 0.0;
        const Beam out = hook(s.signal(), atk, eve);
        const auto j = bell_measure(out, s.idler(), DetectorConfig::noiseless(), unused);
        m.plus.add(j.d_plus);
        m.minus.add(j.d_minus);
        m.eve_vs_signal.add(eve, s.x1);
    }
    return m;
}

auto tap_hook(double tau) {
    return [tau](Beam b, RngStream& rng, double& eve) {
        const auto res = tap(b, tau, rng);
        eve = res.eve.x;
        return res.to_bob;
    };
}

auto qnd_hook(Quadrature q, double sigma) {
    return [q, sigma](Beam b, RngStream& rng, double& eve) {
        const auto res = qnd_measure(b, q, sigma, rng);
        eve = res.eve_estimate;
        return res.disturbed;
    };
}

}  // namespace

TEST_CASE("attack parameter validation") {
    CHECK_NOTHROW(validate(AttackSpec{NoAttack{}}));
    CHECK_THROWS_AS(validate(AttackSpec{TapAttack{1.5}}), DomainError);
    CHECK_THROWS_AS(validate(AttackSpec{InterceptResendAttack{-1.0}}), DomainError);
    CHECK_THROWS_AS(validate(AttackSpec{QndAttack{Quadrature::X, 0.0}}), DomainError);
    CHECK(attack_name(AttackSpec{QndAttack{Quadrature::X, 1.0}}) == "qnd");
    CHECK(attack_name(AttackSpec{InterceptResendAttack{1.0}}) == "intercept_resend");
}

TEST_CASE("tap with tau = 0 forwards the beam untouched and gives Eve vacuum") {
    mc::Moments eve;
    for (std::size_t k = 0; k < 200000; ++k) {
        auto rng = RngStream::for_slot(1, StreamTag::Attack, k);
        const Beam in{1.5, -0.25};
        const auto res = tap(in, 0.0, rng);
        REQUIRE(res.to_bob == in);
        eve.add(res.eve.x);
    }
    CHECK(eve.mean() == doctest::Approx(0.0).epsilon(0.01).scale(1.0));
    CHECK(eve.variance() == doctest::Approx(1.0).epsilon(0.02));
    RngStream rng(1, 1);
    CHECK_THROWS_AS(tap({}, -0.1, rng), DomainError);
}

TEST_CASE("full tap destroys the correlation") {
    const auto m = through(0.4375, 1000000, 2, tap_hook(1.0));
    // 1 + cosh(2r): vacuum in the signal port plus the bare idler.
    CHECK(m.plus.variance() == doctest::Approx(2.407868656822803).epsilon(0.02));
    CHECK(m.plus.variance() > 2.0);
}

TEST_CASE("tapping lowers Bob's correlation degree and raises Eve's information") {
    const std::size_t n = 200000;
    double last_cd = 1e9;
    double last_info = -1.0;
    for (double tau : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
        CAPTURE(tau);
        const auto m = through(0.4375, n, 3, tap_hook(tau));
        const double cd = mc::cd_db(m.plus.variance());
        const double info = tau == 0.0 ? 0.0 : m.eve_vs_signal.correlation();
        CHECK(cd < last_cd - 3.0 * std::sqrt(2.0) * mc::cd_sigma_db(n));
        CHECK(info > last_info);
        last_cd = cd;
        last_info = info;
    }
    const auto base = through(0.4375, n, 4, tap_hook(0.0));
    const auto tapped = through(0.4375, n, 4, tap_hook(0.2));
    CHECK(mc::cd_db(tapped.plus.variance()) < mc::cd_db(base.plus.variance()));
}

TEST_CASE("QND measurement disturbs the conjugate quadrature") {
    const std::size_t n = 1000000;
    SUBCASE("negligible disturbance for a very coarse measurement") {
        const auto m = through(0.4375, n, 5, qnd_hook(Quadrature::X, 1e6));
        CHECK(std::abs(m.minus.variance() - 0.8337240393570168) < 3.0 * mc::variance_sigma(0.834, n));
        CHECK(std::abs(m.plus.variance() - 0.8337240393570168) < 3.0 * mc::variance_sigma(0.834, n));
    }
    SUBCASE("X measured with sigma_m = 1") {
        const auto m = through(0.4375, n, 6, qnd_hook(Quadrature::X, 1.0));
        CHECK(m.minus.variance() == doctest::Approx(0.8337240393570168 + 1.0).epsilon(0.02));
        CHECK(std::abs(m.plus.variance() - 0.8337240393570168) < 3.0 * mc::variance_sigma(0.834, n));
    }
    SUBCASE("Y measured with sigma_m = 0.5") {
        const auto m = through(0.4375, n, 7, qnd_hook(Quadrature::Y, 0.5));
        CHECK(m.plus.variance() == doctest::Approx(0.8337240393570168 + 2.0).epsilon(0.02));
    }
    SUBCASE("information times disturbance is one") {
        for (double sigma : {0.25, 1.0, 4.0}) {
            mc::Moments readout;
            mc::Moments kick;
            for (std::size_t k = 0; k < 200000; ++k) {
                auto rng = RngStream::for_slot(8, StreamTag::Attack, k);
                const auto res = qnd_measure({0.0, 0.0}, Quadrature::X, sigma, rng);
                CHECK(res.disturbed.x == 0.0);
                readout.add(res.eve_estimate);
                kick.add(res.disturbed.y);
            }
            CHECK(readout.variance() == doctest::Approx(sigma).epsilon(0.02));
            CHECK(readout.variance() * kick.variance() == doctest::Approx(1.0).epsilon(0.03));
        }
    }
    RngStream rng(1, 1);
    CHECK_THROWS_AS(qnd_measure({}, Quadrature::X, -1.0, rng), DomainError);
}

TEST_CASE("intercept-resend Eve decodes with her own EPR source") {
    const SqueezeParam r(0.4375);
    const auto window = hiding_window(r);
    const double s = signal_amplitude_for(r, 0.5);

    // Eve's bit error rate on frames of `m` slots when her source has fake_r.
    auto eve_ber = [&](double fake_r, std::size_t m, std::size_t frames) {
        InterceptResendEve eve(SqueezeParam(fake_r), s, window);
        RngStream bits(5, 0);
        std::vector<std::uint8_t> sent;
        for (std::size_t f = 0; f < frames; ++f) {
            const auto bit = static_cast<std::uint8_t>(bits.uniform() < 0.5);
            sent.push_back(bit);
            const auto frame = make_frame(f, bit, s, m);
            std::vector<Beam> to_alice;
            for (std::size_t k = 0; k < m; ++k) {
                auto src = RngStream::for_slot(1, StreamTag::Source, f * m + k);
                auto fake = RngStream::for_slot(1, StreamTag::FakeSource, f * m + k);
                to_alice.push_back(eve.intercept_outbound(sample_slot(r, src).signal(), fake));
            }
            for (const Beam& b : to_alice) eve.intercept_return(encode_bit(frame, b, window));
            const auto forwarded = eve.release_frame(f);
            REQUIRE(forwarded.size() == m);
        }
        std::size_t errors = 0;
        for (std::size_t f = 0; f < frames; ++f) errors += eve.record().decoded_bits[f] != sent[f];
        return static_cast<double>(errors) / static_cast<double>(frames);
    };

    CHECK(eve_ber(1.0, 64, 500) == 0.0);
    // With no correlation Eve's per-slot decoding is far worse than with
    // a strongly squeezed fake source; averaging many slots recovers it.
    const double uncorrelated = eve_ber(0.0, 1, 20000);
    const double squeezed = eve_ber(1.0, 1, 20000);
    CAPTURE(uncorrelated);
    CAPTURE(squeezed);
    CHECK(uncorrelated > 0.25);
    CHECK(uncorrelated > squeezed + 0.1);
}

TEST_CASE("intercept-resend step ordering") {
    const SqueezeParam r(0.4375);
    InterceptResendEve eve(SqueezeParam(1.0), signal_amplitude_for(r, 0.5), hiding_window(r));
    CHECK_THROWS_AS(eve.intercept_return({}), ProtocolError);
    CHECK_THROWS_AS(eve.release_frame(0), ProtocolError);
    RngStream fake(1, 1);
    eve.intercept_outbound({}, fake);
    eve.drop_frame();
    CHECK_THROWS_AS(eve.intercept_return({}), ProtocolError);
}
