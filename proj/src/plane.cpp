#include "cyltomo/plane.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cyltomo/errors.hpp"
#include "cyltomo/parallel.hpp"
#include "cyltomo/quadrature.hpp"

namespace cyltomo {

namespace {

using cplx = std::complex<double>;

std::vector<double> trapezoid_weights(std::size_t n, double h) {
    std::vector<double> w(n, h);
    if (n > 0) {
        w.front() = w.back() = 0.5 * h;
    }
    return w;
}

std::string ratio_message(const char* what, double ratio) {
    std::ostringstream os;
    os.precision(3);
    os << what << ": |G| / |G(0,0)| = " << ratio;
    return os.str();
}

}  // namespace

PlaneTomogramParams frame_to_mu_nu(const FrameParams& frame) {
    if (!(frame.s > 0.0)) {
        throw DomainError("frame_to_mu_nu: squeezing s must be positive");
    }
    return {frame.s * std::cos(frame.theta), std::sin(frame.theta) / frame.s};
}

double plane_tomogram(const PlaneDensity& f, double X, const PlaneTomogramParams& p, const QuadratureConfig& cfg) {
    if (p.mu == 0.0 && p.nu == 0.0) {
        throw DegenerateError("plane_tomogram: (mu, nu) = (0, 0) selects no line");
    }
    return integrate_delta_line(f.grid(), DeltaLine{X, p.mu, p.nu, std::nullopt}, line_settings(cfg));
}

double radon_line_integral(const PlaneDensity& f, double d, double theta, const QuadratureConfig& cfg) {
    // the line is {x : n . x = d} with unit normal n = (-sin, cos)
    return integrate_delta_line(f.grid(), DeltaLine{d, -std::sin(theta), std::cos(theta), std::nullopt},
                                line_settings(cfg));
}

RadonTable::RadonTable(GridAxis theta, GridAxis d, std::vector<double> values)
    : grid_(theta, d, std::move(values), 5) {
    if (!theta.periodic || std::abs(theta.period() - kTwoPi) > 1e-9) {
        throw ConfigError("RadonTable: theta axis must be periodic over [0, 2 pi)");
    }
    if (d.periodic) {
        throw ConfigError("RadonTable: d axis must not be periodic");
    }
}

RadonTable RadonTable::sample(const PlaneDensity& f, const QuadratureConfig& cfg, int d_points, double d_half_width,
                              int theta_points) {
    const GridAxis theta = make_periodic_axis(0.0, kTwoPi, theta_points);
    const GridAxis d = make_axis(-d_half_width, d_half_width, d_points);
    std::vector<double> values(static_cast<std::size_t>(theta_points) * d_points);
    parallel_for(static_cast<std::size_t>(theta_points), [&](std::size_t k) {
        const double th = theta.node(static_cast<long>(k));
        for (int i = 0; i < d_points; ++i) {
            values[k * d_points + i] = radon_line_integral(f, d.node(i), th, cfg);
        }
    });
    return RadonTable(theta, d, std::move(values));
}

RadonTable RadonTable::from_function(const std::function<double(double, double)>& fn, int d_points,
                                     double d_half_width, int theta_points) {
    const GridAxis theta = make_periodic_axis(0.0, kTwoPi, theta_points);
    const GridAxis d = make_axis(-d_half_width, d_half_width, d_points);
    std::vector<double> values(static_cast<std::size_t>(theta_points) * d_points);
    for (int k = 0; k < theta_points; ++k) {
        for (int i = 0; i < d_points; ++i) {
            values[static_cast<std::size_t>(k) * d_points + i] = fn(d.node(i), theta.node(k));
        }
    }
    return RadonTable(theta, d, std::move(values));
}

double tangent_circle_average(const RadonTable& F, double q, double p, double r) {
    const GridAxis& th = F.theta_axis();
    double s = 0.0;
    for (int k = 0; k < th.count; ++k) {
        const double t = th.node(k);
        s += F.at_theta_node(k, -q * std::sin(t) + p * std::cos(t) + r);
    }
    return s / th.count;
}

double radon_classical_inverse(const RadonTable& F, double q, double p, const QuadratureConfig& cfg) {
    const double eps = cfg.reg_epsilon;
    const double rmax = cfg.radial_max;
    const int n = cfg.radial_points;
    if (!(eps > 0.0)) {
        throw ConfigError("radon_classical_inverse: reg_epsilon must be positive");
    }
    if (!(rmax > eps) || n < 3) {
        throw ConfigError("radon_classical_inverse: r-grid [0, radial_max] must extend beyond reg_epsilon");
    }
    const double h = rmax / (n - 1);
    std::vector<double> fp(n);
    for (int i = 0; i < n; ++i) {
        fp[i] = tangent_circle_average(F, q, p, i * h);
    }
    std::vector<double> deriv(n);
    deriv[0] = (fp[1] - fp[0]) / h;
    deriv[n - 1] = (fp[n - 1] - fp[n - 2]) / h;
    for (int i = 1; i < n - 1; ++i) {
        deriv[i] = (fp[i + 1] - fp[i - 1]) / (2.0 * h);
    }
    // trapezoid of F'/r over [eps, rmax]; F' is linearly interpolated at eps
    const int i0 = static_cast<int>(std::floor(eps / h));
    const double frac = eps / h - i0;
    const double d_eps = (1.0 - frac) * deriv[i0] + frac * deriv[std::min(i0 + 1, n - 1)];
    double prev_r = eps;
    double prev_v = d_eps / eps;
    double sum = 0.0;
    for (int i = i0 + 1; i < n; ++i) {
        const double r = i * h;
        if (r <= eps) {
            continue;
        }
        const double v = deriv[i] / r;
        sum += 0.5 * (r - prev_r) * (prev_v + v);
        prev_r = r;
        prev_v = v;
    }
    return -sum / kPi;
}

void PlaneTomogramSource::slice(double mu, double nu, std::span<const double> x, std::span<double> out) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = (*this)(x[i], mu, nu);
    }
}

double DensityPlaneSource::operator()(double X, double mu, double nu) const {
    return plane_tomogram(f_, X, {mu, nu}, cfg_);
}

PlaneSpectrum PlaneSpectrum::build(const PlaneTomogramSource& src, const QuadratureConfig& cfg, PlaneInverseMode mode) {
    validate_config(cfg);
    PlaneSpectrum sp;
    sp.mode_ = mode;
    const int nx = cfg.x_points;
    const double xw = cfg.x_half_width;

    auto moment = [&](double mu, double nu, double rho, double freq) {
        const double hx = 2.0 * xw * rho / (nx - 1);
        std::vector<double> x(nx);
        for (int i = 0; i < nx; ++i) {
            x[i] = -xw * rho + i * hx;
        }
        std::vector<double> v(nx);
        src.slice(mu, nu, x, v);
        cplx s(0.0, 0.0);
        for (int i = 0; i < nx; ++i) {
            const double w = (i == 0 || i == nx - 1) ? 0.5 * hx : hx;
            s += w * v[i] * std::polar(1.0, freq * x[i]);
        }
        return s;
    };

    if (mode == PlaneInverseMode::Cartesian) {
        const int n = cfg.plane_freq_points;
        const double h = 2.0 * cfg.nu_half_width / (n - 1);
        sp.freq_.resize(n);
        for (int a = 0; a < n; ++a) {
            sp.freq_[a] = (a - 0.5 * (n - 1)) * h;
        }
        sp.freq_w_ = trapezoid_weights(n, h);
        sp.g_.assign(static_cast<std::size_t>(n) * n, cplx(0.0, 0.0));
        const bool odd = n % 2 == 1;
        const int center = n / 2;
        std::vector<std::size_t> work;
        for (std::size_t idx = 0; idx < sp.g_.size(); ++idx) {
            const std::size_t a = idx / n;
            const std::size_t b = idx % n;
            const std::size_t mirror = (n - 1 - a) * n + (n - 1 - b);
            if (!cfg.use_conjugate_symmetry || idx <= mirror) {
                work.push_back(idx);
            }
        }
        parallel_for(work.size(), [&](std::size_t w) {
            const std::size_t idx = work[w];
            const int a = static_cast<int>(idx / n);
            const int b = static_cast<int>(idx % n);
            if (odd && a == center && b == center) {
                // mass moment from a nondegenerate slice
                sp.g_[idx] = moment(h, 0.0, 1.0, 0.0);
                return;
            }
            const double mu = sp.freq_[a];
            const double nu = sp.freq_[b];
            sp.g_[idx] = moment(mu, nu, std::max(1.0, std::hypot(mu, nu)), 1.0);
        });
        if (cfg.use_conjugate_symmetry) {
            for (std::size_t idx : work) {
                const std::size_t a = idx / n;
                const std::size_t b = idx % n;
                sp.g_[(n - 1 - a) * n + (n - 1 - b)] = std::conj(sp.g_[idx]);
            }
        }
        const double g00 = odd ? std::abs(sp.g_[static_cast<std::size_t>(center) * n + center]) : 1.0;
        double edge = 0.0;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (a == 0 || b == 0 || a == n - 1 || b == n - 1) {
                    edge = std::max(edge, std::abs(sp.g_[static_cast<std::size_t>(a) * n + b]));
                }
            }
        }
        const double scale = g00 > 0.0 ? g00 : 1.0;
        if (edge > cfg.spectral_tail_tol * scale) {
            sp.warnings_.push_back(ratio_message("frequency box edge not resolved", edge / scale));
        }
        if (kPi / h < cfg.momentum_cutoff) {
            sp.warnings_.push_back("frequency step too coarse: pi / h is below the assumed support radius");
        }
        return sp;
    }

    const int nt = cfg.polar_angles;
    const int nr = cfg.polar_radial_points;
    const double rmax = cfg.nu_half_width;
    const double hr = rmax / (nr - 1);
    sp.eta_ = cfg.polar_taper;
    sp.theta_.resize(nt);
    for (int l = 0; l < nt; ++l) {
        sp.theta_[l] = kTwoPi * l / nt;
    }
    sp.freq_.resize(nr);
    sp.freq_w_ = trapezoid_weights(nr, hr);
    for (int k = 0; k < nr; ++k) {
        sp.freq_[k] = k * hr;
        sp.freq_w_[k] *= sp.freq_[k] * std::exp(-sp.eta_ * sp.freq_[k] * sp.freq_[k]);
    }
    sp.g_.assign(static_cast<std::size_t>(nt) * nr, cplx(0.0, 0.0));
    parallel_for(static_cast<std::size_t>(nt), [&](std::size_t l) {
        const double c = std::cos(sp.theta_[l]);
        const double s = std::sin(sp.theta_[l]);
        const double hx = 2.0 * xw / (nx - 1);
        std::vector<double> y(nx);
        for (int i = 0; i < nx; ++i) {
            y[i] = -xw + i * hx;
        }
        std::vector<double> v(nx);
        src.slice(c, s, y, v);
        for (int k = 0; k < nr; ++k) {
            cplx acc(0.0, 0.0);
            for (int i = 0; i < nx; ++i) {
                const double w = (i == 0 || i == nx - 1) ? 0.5 * hx : hx;
                acc += w * v[i] * std::polar(1.0, sp.freq_[k] * y[i]);
            }
            sp.g_[l * nr + k] = acc;
        }
    });
    double edge = 0.0;
    for (int l = 0; l < nt; ++l) {
        edge = std::max(edge, std::abs(sp.g_[static_cast<std::size_t>(l) * nr + nr - 1]));
    }
    const double g0 = std::abs(sp.g_[0]);
    const double scale = g0 > 0.0 ? g0 : 1.0;
    if (edge > cfg.spectral_tail_tol * scale) {
        sp.warnings_.push_back(ratio_message("polar radial cutoff not resolved", edge / scale));
    }
    return sp;
}

double PlaneSpectrum::reconstruct(double q, double p) const {
    double sum = 0.0;
    if (mode_ == PlaneInverseMode::Cartesian) {
        const std::size_t n = freq_.size();
        for (std::size_t a = 0; a < n; ++a) {
            cplx row(0.0, 0.0);
            for (std::size_t b = 0; b < n; ++b) {
                row += freq_w_[b] * g_[a * n + b] * std::polar(1.0, -freq_[b] * p);
            }
            sum += freq_w_[a] * (row * std::polar(1.0, -freq_[a] * q)).real();
        }
        return sum / (kTwoPi * kTwoPi);
    }
    const std::size_t nr = freq_.size();
    const double dtheta = kTwoPi / theta_.size();
    for (std::size_t l = 0; l < theta_.size(); ++l) {
        const double proj = q * std::cos(theta_[l]) + p * std::sin(theta_[l]);
        for (std::size_t k = 0; k < nr; ++k) {
            sum += dtheta * freq_w_[k] * (g_[l * nr + k] * std::polar(1.0, -freq_[k] * proj)).real();
        }
    }
    return sum / (kTwoPi * kTwoPi);
}

std::vector<double> PlaneSpectrum::reconstruct_grid(const GridAxis& q, const GridAxis& p) const {
    std::vector<double> out(static_cast<std::size_t>(q.count) * p.count);
    if (mode_ == PlaneInverseMode::Polar) {
        parallel_for(out.size(), [&](std::size_t i) {
            out[i] = reconstruct(q.node(static_cast<long>(i / p.count)), p.node(static_cast<long>(i % p.count)));
        });
        return out;
    }
    const std::size_t n = freq_.size();
    std::vector<cplx> h(n * p.count);
    parallel_for(static_cast<std::size_t>(p.count), [&](std::size_t j) {
        const double pj = p.node(static_cast<long>(j));
        for (std::size_t a = 0; a < n; ++a) {
            cplx s(0.0, 0.0);
            for (std::size_t b = 0; b < n; ++b) {
                s += freq_w_[b] * g_[a * n + b] * std::polar(1.0, -freq_[b] * pj);
            }
            h[a * p.count + j] = s;
        }
    });
    const double norm = 1.0 / (kTwoPi * kTwoPi);
    parallel_for(static_cast<std::size_t>(q.count), [&](std::size_t i) {
        const double qi = q.node(static_cast<long>(i));
        for (int j = 0; j < p.count; ++j) {
            double s = 0.0;
            for (std::size_t a = 0; a < n; ++a) {
                s += freq_w_[a] * (std::polar(1.0, -freq_[a] * qi) * h[a * p.count + j]).real();
            }
            out[i * p.count + j] = norm * s;
        }
    });
    return out;
}

InverseResult plane_inverse(const PlaneTomogramSource& src, double q, double p, const QuadratureConfig& cfg,
                            PlaneInverseMode mode) {
    const PlaneSpectrum sp = PlaneSpectrum::build(src, cfg, mode);
    return {sp.reconstruct(q, p), sp.warnings()};
}

}  // namespace cyltomo
