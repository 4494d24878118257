#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cyltomo/circle.hpp"
#include "cyltomo/density.hpp"
#include "cyltomo/limit.hpp"
#include "cyltomo/oracles.hpp"
#include "cyltomo/plane.hpp"
#include "cyltomo/torus.hpp"
#include "property_support.hpp"

using namespace cyltomo;
using namespace cyltomo::testing_support;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
    double error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit;
    std::function<Outcome()> body;
};

const CylinderDensity& exf() {
    static const CylinderDensity f = make_uniform_phi_gaussian(1.0);
    return f;
}

const CylinderDensity& wrapped() {
    static const CylinderDensity f = make_wrapped_gaussian(1.0, 0.7, 0.0, 1.0, wrap_terms_for(0.7, 1e-10));
    return f;
}

Outcome within(double error, double tol, std::string detail = {}) { return {error, tol, error <= tol, std::move(detail)}; }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome strip_oracle() {
    CaseGen gen(kSeed);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        int m = gen.integer(1, 4) * (gen.integer(0, 1) ? 1 : -1);
        const double nu = gen.nu(0.25, 4.0);
        const double alpha = gen.uniform(0.0, kTwoPi);
        const auto [lo, hi] = strip_support(m, nu, alpha);
        const double X = gen.uniform(0.5 * (lo + hi) - 0.3 * (hi - lo), 0.5 * (lo + hi) + 0.3 * (hi - lo));
        const double v = strip_tomogram(exf(), X, {m, nu, alpha});
        worst = std::max(worst, std::abs(v - oracle_strip_gaussian(X, m, nu, alpha).value));
    }
    return within(worst, 1e-6, "100 tuples");
}

Outcome helix_constancy() {
    CaseGen gen(kSeed + 1);
    double worst = 0.0;
    for (int m : {1, -1, 2, -2, 3, -3}) {
        for (int i = 0; i < 50; ++i) {
            const double nu = gen.nu(0.25, 4.0);
            const double X = gen.uniform(-10.0, 10.0);
            worst = std::max(worst, std::abs(helix_tomogram(exf(), X, {m, nu}) - oracle_helix_gaussian(m).value));
        }
    }
    return within(worst, 1e-8, "6 modes x 50 samples");
}

Outcome zero_mode() {
    CaseGen gen(kSeed + 2);
    double worst = 0.0;
    double relation = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double nu = gen.nu(0.25, 4.0);
        const double X = gen.uniform(-3.0, 3.0) * std::abs(nu);
        const double alpha = gen.uniform(0.0, kTwoPi);
        const double s = strip_tomogram(exf(), X, {0, nu, alpha});
        const double h = helix_tomogram(exf(), X, {0, nu});
        const double o = oracle_m0_gaussian(X, nu).value;
        worst = std::max({worst, std::abs(s - o), std::abs(h - o)});
        relation = std::max(relation, std::abs(s - h));
    }
    return within(std::max(worst, relation), 1e-8, fmt("oracle %.2e strip-helix %.2e", worst, relation));
}

Outcome resummation() {
    CaseGen gen(kSeed + 3);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double nu = gen.nu(0.05, 4.0);
        const double X = gen.uniform(0.0, kTwoPi);
        const double sum = strip_to_helix_resum(exf(), X, 1, nu, 0.0, 8);
        worst = std::max(worst, std::abs(sum - helix_tomogram(exf(), X, {1, nu})));
    }
    return within(worst, 1e-8, "50 samples, |r| <= 8");
}

double roundtrip_error(const CylinderDensity& f, CircleVariant v) {
    QuadratureConfig cfg;
    cfg.line_rule = LineRule::Joseph;
    const DensityCircleSource src(f, v, 0.0, cfg);
    const Spectrum sp = v == CircleVariant::Strip ? circle_spectrum_strip(src) : circle_spectrum_helix(src);
    const auto rec = sp.reconstruct_grid(f.phi_axis(), f.j_axis());
    const auto vals = f.grid().values();
    double worst = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
        worst = std::max(worst, std::abs(rec[i] - vals[i]));
    }
    return worst;
}

Outcome roundtrips() {
    const double tol = 1e-3;
    double worst = 0.0;
    double slowest = 0.0;
    std::string detail;
    for (auto [f, name] : {std::pair{&exf(), "exf"}, {&wrapped(), "wrapped"}}) {
        for (auto [v, vname] : {std::pair{CircleVariant::Strip, "strip"}, {CircleVariant::Helix, "helix"}}) {
            const auto t0 = std::chrono::steady_clock::now();
            const double e = roundtrip_error(*f, v);
            const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            slowest = std::max(slowest, dt);
            worst = std::max(worst, e);
            detail += std::string(vname) + "/" + name + fmt(" %.2e (%.0fs) ", e, dt);
        }
    }
    Outcome o = within(worst, tol, detail);
    o.pass = o.pass && slowest < 600.0;
    return o;
}

Outcome invariants() {
    const QuadratureConfig cfg;
    const double mass_tol = 2.0 * cfg.mass_tol;
    CaseGen gen(kSeed + 4);
    double mass = 0.0;
    double neg = 0.0;
    double homog = 0.0;
    double gauge = 0.0;
    double period = 0.0;
    double helix = 0.0;
    double m0 = 0.0;
    const int cases = 200;
    for (int c = 0; c < cases; ++c) {
        const CylinderDensity f = gen.cylinder();
        const StripTomogramParams sp{gen.m(3), gen.nu(0.4, 2.0), gen.uniform(0.0, kTwoPi)};
        const auto [lo, hi] = strip_support(sp.m, sp.nu, sp.alpha);
        const SliceStats s = trapezoid_slice(lo, hi, 801, false, [&](double X) { return strip_tomogram(f, X, sp); });
        mass = std::max(mass, std::abs(s.integral - 1.0));
        neg = std::min(neg, s.min_value);

        int hm = gen.m(3);
        hm = hm == 0 ? 1 : hm;
        const double hnu = gen.nu(0.4, 2.0);
        const SliceStats h = trapezoid_slice(0.0, kTwoPi * std::abs(hm), 256, true,
                                             [&](double X) { return helix_tomogram(f, X, {hm, hnu}); });
        mass = std::max(mass, std::abs(h.integral - 1.0));
        neg = std::min(neg, h.min_value);
        const double hx = gen.uniform(-10.0, 10.0);
        helix = std::max(helix, std::abs(helix_tomogram(f, hx + kTwoPi * hm * gen.integer(-3, 3), {hm, hnu}) -
                                         helix_tomogram(f, hx, {hm, hnu})));

        const int m = gen.m(4);
        const double nu = gen.nu(0.25, 4.0);
        const double alpha = gen.uniform(0.0, kTwoPi);
        const double X = m * alpha + gen.uniform(-3.0, 3.0);
        const double ref = strip_tomogram(f, X, {m, nu, alpha});
        gauge = std::max(gauge, std::abs(ref - strip_tomogram(gauge_translate(f, alpha), X - m * alpha, {m, nu, 0.0})));
        const int k = gen.integer(-3, 3);
        period = std::max(period, std::abs(ref - strip_tomogram(f, X + kTwoPi * m * k, {m, nu, alpha + kTwoPi * k})));
        const double x0 = gen.uniform(-2.0, 2.0) * std::abs(nu);
        m0 = std::max(m0, std::abs(strip_tomogram(f, x0, {0, nu, gen.uniform(-10.0, 10.0)}) -
                                   strip_tomogram(f, x0, {0, nu, gen.uniform(-10.0, 10.0)})));

        const PlaneDensity g = gen.plane();
        const double angle = gen.uniform(0.0, kTwoPi);
        const double r = gen.uniform(0.3, 3.0);
        const PlaneTomogramParams pp{r * std::cos(angle), r * std::sin(angle)};
        const double w = 8.0 * (std::abs(pp.mu) + std::abs(pp.nu));
        const SliceStats ps = trapezoid_slice(-w, w, 801, false, [&](double Y) { return plane_tomogram(g, Y, pp); });
        mass = std::max(mass, std::abs(ps.integral - 1.0));
        neg = std::min(neg, ps.min_value);
        const double Y = gen.uniform(-2.0, 2.0) * r;
        const double base = plane_tomogram(g, Y, pp);
        for (double lambda : {0.5, -0.5, 2.0, -2.0}) {
            homog = std::max(homog, std::abs(plane_tomogram(g, lambda * Y, {lambda * pp.mu, lambda * pp.nu}) -
                                             base / std::abs(lambda)));
        }

        if (c % 20 == 0) {
            const TorusDensity t = TorusDensity::from_factors({f, gen.cylinder()});
            const TorusTomogramParams tp{{gen.m(2), gen.m(2)}, {gen.nu(1.0, 1.5), gen.nu(1.0, 1.5)},
                                         CircleVariant::Strip, {gen.uniform(0.0, kTwoPi), gen.uniform(0.0, kTwoPi)}};
            const auto r0 = strip_support(tp.m[0], tp.nu[0], tp.alpha[0]);
            const auto r1 = strip_support(tp.m[1], tp.nu[1], tp.alpha[1]);
            double tmin = 0.0;
            const SliceStats ts = trapezoid_slice(r0.first, r0.second, 81, false, [&](double X0) {
                return trapezoid_slice(r1.first, r1.second, 81, false, [&](double X1) {
                           const double Xs[2] = {X0, X1};
                           const double v = torus_tomogram(t, Xs, tp);
                           tmin = std::min(tmin, v);
                           return v;
                       }).integral;
            });
            mass = std::max(mass, std::abs(ts.integral - 1.0));
            neg = std::min(neg, tmin);
        }
    }
    const double exact = std::max({homog, gauge, period, helix, m0});
    Outcome o;
    o.error = mass;
    o.tolerance = mass_tol;
    o.pass = mass <= mass_tol && neg >= -1e-12 && homog <= 1e-12 && gauge <= 1e-10 && period <= 1e-10 &&
             helix <= 1e-12 && m0 <= 1e-10;
    o.detail = fmt("200 cases; min value %.1e, identities %.1e", neg, exact);
    return o;
}

Outcome classical_radon() {
    const PlaneDensity g = make_plane_gaussian();
    const RadonTable table = RadonTable::sample(g);
    double worst = 0.0;
    for (double q : {-1.0, 0.0, 1.0}) {
        for (double p : {-1.0, 0.0, 1.0}) {
            const double expect = std::exp(-0.5 * (q * q + p * p)) / kTwoPi;
            worst = std::max(worst, std::abs(radon_classical_inverse(table, q, p) - expect));
        }
    }
    return within(worst, 5e-2, "9 points, default regularization");
}

Outcome torus_pair() {
    DensityGridSpec coarse;
    coarse.phi_points = 32;
    coarse.j_points = 65;
    const CylinderDensity small = make_uniform_phi_gaussian(1.0, {}, coarse);
    const TorusDensity product = TorusDensity::from_factors({small, small});
    const TorusDensity full = materialize(product);
    CaseGen gen(kSeed + 5);
    double factor = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto variant = i % 2 ? CircleVariant::Helix : CircleVariant::Strip;
        const TorusTomogramParams p{{gen.m(3), gen.m(3)}, {gen.nu(0.3, 3.0), gen.nu(0.3, 3.0)}, variant,
                                    {gen.uniform(0.0, kTwoPi), gen.uniform(0.0, kTwoPi)}};
        const double X[2] = {gen.uniform(-6.0, 6.0), gen.uniform(-6.0, 6.0)};
        double expect = 1.0;
        for (int k = 0; k < 2; ++k) {
            expect *= variant == CircleVariant::Strip ? strip_tomogram(small, X[k], {p.m[k], p.nu[k], p.alpha[k]})
                                                      : helix_tomogram(small, X[k], {p.m[k], p.nu[k]}, {}, p.alpha[k]);
        }
        factor = std::max(factor, std::abs(torus_tomogram(full, X, p) - expect));
    }
    const TorusDensity pair = TorusDensity::from_factors({exf(), exf()});
    QuadratureConfig cfg = reduced_torus_config(2);
    cfg.line_rule = LineRule::Joseph;
    const double zero[2] = {0.0, 0.0};
    const double target = std::pow(kTwoPi, -3.0);
    double inverse = 0.0;
    for (auto v : {CircleVariant::Strip, CircleVariant::Helix}) {
        const DensityTorusSource src(pair, v, {}, cfg);
        inverse = std::max(inverse, std::abs(torus_inverse(src, zero, zero, cfg).value - target));
    }
    Outcome o;
    o.error = inverse;
    o.tolerance = 5e-3;
    o.pass = factor <= 1e-10 && inverse <= 5e-3;
    o.detail = fmt("factorization %.2e (tol 1e-10), inverse at origin %.2e", factor, inverse);
    return o;
}

Outcome limit_study() {
    const PlaneDensity g = make_plane_gaussian();
    std::vector<TomogramSample> samples;
    for (double X : {-3.0, -1.5, 0.0, 1.5, 3.0}) {
        for (double mu : {0.5, 1.0, 2.0}) {
            for (double nu : {0.5, 1.0, 2.0}) {
                samples.push_back({X, mu, nu});
            }
        }
    }
    const std::vector<double> radii{kTwoPi, 10 * kTwoPi, 100 * kTwoPi};
    const ConvergenceReport rep = convergence_report(g, radii, samples);
    bool decreasing = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        decreasing = decreasing && rep.rows[i].max_abs_error < rep.rows[i - 1].max_abs_error;
    }
    const double R = radii.back();
    const RadiusScaledDensity fR(wrap_plane_density(g, R), R);
    double fourier = 0.0;
    for (int i = 0; i < 10; ++i) {
        const int m = 30 * i;
        const double k = kTwoPi * m / R;
        for (double p : {0.0, -1.2, 0.8}) {
            const std::complex<double> c = fourier_coefficient(fR, m, p) * (R / kTwoPi);
            const double expect = std::exp(-0.5 * (k * k + p * p)) / (kTwoPi * std::sqrt(kTwoPi));
            fourier = std::max(fourier, std::abs(c - expect));
        }
    }
    const double last = rep.rows.back().max_abs_error;
    Outcome o;
    o.error = last;
    o.tolerance = 1e-4;
    o.pass = decreasing && last <= 1e-4 && fourier <= 1e-6;
    o.detail = fmt("rows %.2e %.2e %.2e", rep.rows[0].max_abs_error, rep.rows[1].max_abs_error, last) +
               std::string(decreasing ? ", decreasing" : ", NOT decreasing") + fmt(", fourier %.2e", fourier);
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "strip tomogram vs closed form", 60.0, strip_oracle},
        {2, "helix tomogram constancy", 30.0, helix_constancy},
        {3, "m = 0 slice and strip/helix identity", 60.0, zero_mode},
        {4, "strip to helix resummation", 60.0, resummation},
        {5, "circle round trips at M = 32", 2400.0, roundtrips},
        {6, "randomized invariant suite", 600.0, invariants},
        {7, "classical Radon inversion", 60.0, classical_radon},
        {8, "torus N = 2 factorization and inverse", 600.0, torus_pair},
        {9, "large-radius limit", 300.0, limit_study},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o = c.body();
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.pass = o.pass && dt < c.time_limit;
        failed += o.pass ? 0 : 1;
        std::printf("criterion %d %s: %s error=%.3e tol=%.1e time=%.1fs (limit %.0fs) %s\n", c.id,
                    o.pass ? "PASS" : "FAIL", c.name, o.error, o.tolerance, dt, c.time_limit, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
