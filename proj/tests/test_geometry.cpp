#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hcmc/geometry.hpp"
#include "oracles.hpp"

using namespace hcmc;

namespace {

constexpr double kPi = std::numbers::pi;
const double kLn3 = 1.0986122886681098;

// refine a coarse nearest-point scan by golden-section search
template <class F>
double min_over(F&& f, double lo, double hi, double coarse_step) {
    double best_t = lo, best = f(lo);
    for (double t = lo; t <= hi; t += coarse_step) {
        const double v = f(t);
        if (v < best) {
            best = v;
            best_t = t;
        }
    }
    double a = best_t - coarse_step, b = best_t + coarse_step;
    const double phi = 0.6180339887498949;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return std::min(f1, f2);
}

} // namespace

TEST_CASE("dist basics") {
    const HPoint o;
    CHECK(dist(o, o) == 0.0);
    CHECK(dist(o, HPoint(0.5, 0.0)) == doctest::Approx(kLn3).epsilon(1e-14));

    // independent oracle: arclength of the straight diameter segment
    const double len =
        oracles::tanh_sinh([](double x) { return 2.0 / (1.0 - x * x); }, 0.0, 0.5);
    CHECK(dist(o, HPoint(0.5, 0.0)) == doctest::Approx(len).epsilon(1e-11));

    oracles::Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        const HPoint a = rng.disk_point(), b = rng.disk_point(), c = rng.disk_point();
        CHECK(dist(a, b) == doctest::Approx(dist(b, a)).epsilon(1e-13));
        CHECK(dist(a, b) >= 0.0);
        CHECK(dist(a, c) <= dist(a, b) + dist(b, c) + 1e-12);
    }
}

TEST_CASE("dist is rotation invariant") {
    oracles::Rng rng(5);
    for (int k = 0; k < 100; ++k) {
        const HPoint a = rng.disk_point(), b = rng.disk_point();
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        const auto rot = [phi](const HPoint& p) {
            return HPoint(p.x * std::cos(phi) - p.y * std::sin(phi),
                          p.x * std::sin(phi) + p.y * std::cos(phi));
        };
        CHECK(std::abs(dist(rot(a), rot(b)) - dist(a, b)) <= 1e-12);
    }
}

TEST_CASE("dist_to_circle") {
    const HCircle c(HPoint(), 1.0);
    const HPoint on_boundary = geodesic_ray(HPoint(), IdealPoint(0.3), 1.0);
    CHECK(dist_to_circle(on_boundary, c) == doctest::Approx(0.0).epsilon(1e-12));

    const HCircle pt(HPoint(0.1, 0.2), 0.0);
    oracles::Rng rng(7);
    for (int k = 0; k < 20; ++k) {
        const HPoint x = rng.disk_point();
        CHECK(dist_to_circle(x, pt) == doctest::Approx(dist(x, pt.center)));
    }

    const HPoint far = geodesic_ray(HPoint(), IdealPoint(1.0), 2.5);
    CHECK(dist_to_circle(far, c) == doctest::Approx(1.5).epsilon(1e-12));

    const HPoint inside = geodesic_ray(HPoint(), IdealPoint(1.0), 0.5);
    CHECK_THROWS_AS((void)dist_to_circle(inside, c), InsideDomainError);
}

TEST_CASE("dist_to_horocycle") {
    const Horocycle h{IdealPoint(0.0), 0.0};
    CHECK(dist_to_horocycle(HPoint(), h) == 0.0);

    const HorocycleFrame frame(h);
    for (double tau : {-2.0, 0.4, 3.0}) {
        CHECK(dist_to_horocycle(frame.point(tau, 0.0), h) ==
              doctest::Approx(0.0).epsilon(1e-10));
        CHECK(dist_to_horocycle(frame.point(tau, 1.3), h) ==
              doctest::Approx(1.3).epsilon(1e-9));
    }
    CHECK_THROWS_AS((void)dist_to_horocycle(HPoint(0.5, 0.0), h), InsideDomainError);

    // nearest-point oracle over a dense sampling of the horocycle
    oracles::Rng rng(3);
    int done = 0;
    while (done < 8) {
        HPoint x = rng.disk_point(0.8);
        double s;
        try {
            s = dist_to_horocycle(x, h);
        } catch (const InsideDomainError&) {
            continue;
        }
        const double best =
            min_over([&](double t) { return dist(x, frame.point(t, 0.0)); }, -40.0, 40.0, 0.01);
        CHECK(std::abs(s - best) <= 1e-6);
        ++done;
    }
}

TEST_CASE("signed distance to a geodesic") {
    const Geodesic g(IdealPoint(kPi), IdealPoint(0.0), IdealPoint(0.5 * kPi));
    CHECK(signed_dist_to_geodesic(HPoint(0.3, 0.0), g) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(signed_dist_to_geodesic(HPoint(0.0, 0.4), g) > 0.0);
    CHECK(signed_dist_to_geodesic(HPoint(0.0, -0.4), g) < 0.0);

    const Geodesic flipped(IdealPoint(kPi), IdealPoint(0.0), IdealPoint(1.5 * kPi));
    oracles::Rng rng(19);
    for (int k = 0; k < 50; ++k) {
        const HPoint x = rng.disk_point();
        CHECK(signed_dist_to_geodesic(x, g) ==
              doctest::Approx(-signed_dist_to_geodesic(x, flipped)).epsilon(1e-12));
    }

    // generic geodesic, nearest-point oracle
    const Geodesic gen(IdealPoint(0.7), IdealPoint(2.9), IdealPoint(1.8));
    const GeodesicFrame frame(gen);
    for (int k = 0; k < 8; ++k) {
        const HPoint x = rng.disk_point(0.85);
        const double s = signed_dist_to_geodesic(x, gen);
        const double best = min_over(
            [&](double t) { return dist(x, frame.point_on_geodesic(t)); }, -30.0, 30.0, 0.01);
        CHECK(std::abs(std::abs(s) - best) <= 1e-6);
    }

    // Fermi coordinates invert the signed distance
    for (double tau : {-1.5, 0.0, 2.0})
        for (double sg : {-1.0, -0.2, 0.7, 2.2})
            CHECK(signed_dist_to_geodesic(frame.fermi_point(tau, sg), gen) ==
                  doctest::Approx(sg).epsilon(1e-11));
}

TEST_CASE("geodesic rays") {
    oracles::Rng rng(23);
    const HPoint x = HPoint(0.2, -0.3);
    const IdealPoint q(1.1);
    CHECK(geodesic_ray(x, q, 0.0).x == doctest::Approx(x.x));
    CHECK(geodesic_ray(x, q, 0.0).y == doctest::Approx(x.y));

    for (int k = 0; k < 50; ++k) {
        const double t = rng.uniform(0.0, 8.0);
        CHECK(dist(x, geodesic_ray(x, q, t)) == doctest::Approx(t).epsilon(1e-12));
    }

    const HPoint p = geodesic_ray(HPoint(), IdealPoint(0.0), kLn3);
    CHECK(p.x == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p.y == doctest::Approx(0.0).epsilon(1e-14));

    // isometric embedding of the half line
    for (int k = 0; k < 40; ++k) {
        const double t1 = rng.uniform(0.0, 10.0), t2 = rng.uniform(0.0, 10.0);
        const double d = dist(geodesic_ray(x, q, t1), geodesic_ray(x, q, t2));
        CHECK(std::abs(d - std::abs(t1 - t2)) <= 1e-10);
    }

    CHECK_THROWS_AS((void)geodesic_ray(x, q, -1.0), DomainError);
}

TEST_CASE("Laplacians of the three distance fields") {
    const HCircle circ(HPoint(), 0.8);
    const Horocycle horo{IdealPoint(0.0), 0.0};
    const Geodesic geo(IdealPoint(kPi), IdealPoint(0.0), IdealPoint(0.5 * kPi));

    oracles::Rng rng(41);
    int done = 0;
    while (done < 25) {
        const HPoint x = rng.disk_point();
        double s;
        try {
            s = dist_to_circle(x, circ);
        } catch (const InsideDomainError&) {
            continue;
        }
        if (s <= 0.1) continue;
        const double lap =
            laplacian_fd([&](const HPoint& p) { return dist_to_circle(p, circ); }, x, 1e-3);
        CHECK(std::abs(lap - 1.0 / std::tanh(circ.radius + s)) <= 1e-4);
        ++done;
    }

    done = 0;
    while (done < 25) {
        const HPoint x = rng.disk_point();
        double s;
        try {
            s = dist_to_horocycle(x, horo);
        } catch (const InsideDomainError&) {
            continue;
        }
        if (s <= 0.1) continue;
        const double lap =
            laplacian_fd([&](const HPoint& p) { return dist_to_horocycle(p, horo); }, x, 1e-3);
        CHECK(std::abs(lap - 1.0) <= 1e-4);
        ++done;
    }

    done = 0;
    while (done < 25) {
        const HPoint x = rng.disk_point();
        const double s = signed_dist_to_geodesic(x, geo);
        if (std::abs(s) <= 0.1) continue;
        const double lap = laplacian_fd(
            [&](const HPoint& p) { return signed_dist_to_geodesic(p, geo); }, x, 1e-3);
        CHECK(std::abs(lap - std::tanh(s)) <= 1e-4);
        ++done;
    }
}

TEST_CASE("type invariants") {
    CHECK_THROWS_AS(HPoint(1.0, 0.2), DomainError);
    CHECK_THROWS_AS(Geodesic(IdealPoint(0.1), IdealPoint(0.1), IdealPoint(1.0)), DomainError);
    CHECK_THROWS_AS(Geodesic(IdealPoint(0.1), IdealPoint(2.0), IdealPoint(0.1)), DomainError);
    CHECK_THROWS_AS(HCircle(HPoint(), -0.5), DomainError);
    CHECK(IdealPoint(-1.0).theta == doctest::Approx(2.0 * kPi - 1.0));
}
