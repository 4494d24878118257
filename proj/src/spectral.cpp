#include "cyltomo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cyltomo/errors.hpp"
#include "cyltomo/parallel.hpp"

namespace cyltomo {

namespace {

using cplx = std::complex<double>;

constexpr std::size_t kMaxSpectrumSize = 50'000'000;

std::size_t ipow(std::size_t base, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) {
        r *= base;
    }
    return r;
}

std::string format_ratio(const char* what, double ratio) {
    std::ostringstream os;
    os.precision(3);
    os << what << ": |G| / |G(0,0)| = " << ratio;
    return os.str();
}

}  // namespace

void TomogramSampler::component_slice(int, int, double, std::span<const double>, std::span<double>) const {
    throw ConfigError("TomogramSampler: component slices need a separable sampler");
}

void nu_nodes(const QuadratureConfig& cfg, std::vector<double>& nu, std::vector<double>& w) {
    const int n = cfg.nu_points;
    const double h = 2.0 * cfg.nu_half_width / (n - 1);
    nu.resize(n);
    w.assign(n, h);
    for (int j = 0; j < n; ++j) {
        nu[j] = (j - 0.5 * (n - 1)) * h;
    }
    w.front() = w.back() = 0.5 * h;
}

SliceAxis slice_axis(const ComponentLayout& layout, int m, double nu, bool zero_mode, double nu_ref,
                     const QuadratureConfig& cfg) {
    SliceAxis s;
    const double jcut = cfg.momentum_cutoff;
    const int n = cfg.x_points;
    if (m == 0) {
        s.nu = zero_mode ? nu_ref : nu;
        s.freq = zero_mode ? 0.0 : 1.0;
        const double hj = 2.0 * jcut / (n - 1);
        const double scale = std::abs(s.nu) * hj;
        s.x.resize(n);
        s.w.assign(n, scale);
        for (int k = 0; k < n; ++k) {
            s.x[k] = s.nu * (-jcut + k * hj);
        }
        s.w.front() = s.w.back() = 0.5 * scale;
        return s;
    }
    s.nu = nu;
    const double am = std::abs(static_cast<double>(m));
    const double hx = kTwoPi * am / (n - 1);
    if (layout.variant == CircleVariant::Helix) {
        s.x.resize(n - 1);
        s.w.assign(n - 1, hx);
        for (int k = 0; k < n - 1; ++k) {
            s.x[k] = k * hx;
        }
        return s;
    }
    const double base = m * layout.alpha;
    const double end = m * (layout.alpha + kTwoPi);
    const double spread = std::abs(nu) * jcut;
    const double lo = std::min(base, end) - spread;
    const double hi = std::max(base, end) + spread;
    const long kmin = static_cast<long>(std::floor((lo - base) / hx - 0.5));
    const long kmax = static_cast<long>(std::ceil((hi - base) / hx - 0.5));
    s.x.reserve(static_cast<std::size_t>(kmax - kmin + 1));
    for (long k = kmin; k <= kmax; ++k) {
        s.x.push_back(base + (static_cast<double>(k) + 0.5) * hx);
    }
    s.w.assign(s.x.size(), hx);
    return s;
}

std::size_t Spectrum::flat_index(std::span<const int> m, std::span<const int> j) const {
    const std::size_t nm = static_cast<std::size_t>(2 * modes_ + 1);
    const std::size_t nn = nu_.size();
    std::size_t mi = 0;
    std::size_t ji = 0;
    for (int k = 0; k < dim_; ++k) {
        mi = mi * nm + static_cast<std::size_t>(m[k] + modes_);
        ji = ji * nn + static_cast<std::size_t>(j[k]);
    }
    return mi * ipow(nn, dim_) + ji;
}

Spectrum Spectrum::build(const TomogramSampler& sampler, const QuadratureConfig& cfg) {
    validate_config(cfg);
    Spectrum sp;
    sp.dim_ = sampler.dimension();
    if (sp.dim_ < 1 || sp.dim_ > 3) {
        throw ConfigError("Spectrum: dimension must be in [1, 3]");
    }
    sp.modes_ = cfg.mode_truncation;
    nu_nodes(cfg, sp.nu_, sp.nu_w_);

    const int dim = sp.dim_;
    const int nn = static_cast<int>(sp.nu_.size());
    const std::size_t nm = static_cast<std::size_t>(2 * sp.modes_ + 1);
    const std::size_t total_m = ipow(nm, dim);
    const std::size_t total_j = ipow(static_cast<std::size_t>(nn), dim);
    if (total_m > kMaxSpectrumSize / total_j) {
        throw ConfigError("Spectrum: (2M+1)^N * nu_points^N exceeds the desk-scale limit; reduce mode_truncation or nu_points");
    }
    const std::size_t total = total_m * total_j;
    sp.g_.assign(total, cplx(0.0, 0.0));

    const bool odd = nn % 2 == 1;
    const int center = nn / 2;
    const double nu_ref = odd ? sp.nu_[center + 1] : 0.0;

    std::vector<ComponentLayout> layouts(dim);
    for (int k = 0; k < dim; ++k) {
        layouts[k] = sampler.layout(k);
    }

    auto decode = [&](std::size_t idx, std::vector<int>& m, std::vector<int>& j) {
        std::size_t ji = idx % total_j;
        std::size_t mi = idx / total_j;
        for (int k = dim - 1; k >= 0; --k) {
            j[k] = static_cast<int>(ji % static_cast<std::size_t>(nn));
            ji /= static_cast<std::size_t>(nn);
            m[k] = static_cast<int>(mi % nm) - sp.modes_;
            mi /= nm;
        }
    };
    auto mirror = [&](const std::vector<int>& m, const std::vector<int>& j) {
        std::vector<int> mm(dim);
        std::vector<int> jm(dim);
        for (int k = 0; k < dim; ++k) {
            mm[k] = -m[k];
            jm[k] = nn - 1 - j[k];
        }
        return sp.flat_index(mm, jm);
    };

    if (sampler.separable()) {
        // G is the product of one-dimensional moment tables
        const std::size_t per = nm * static_cast<std::size_t>(nn);
        std::vector<std::vector<cplx>> tables(dim, std::vector<cplx>(per));
        parallel_for(per * static_cast<std::size_t>(dim), [&](std::size_t w) {
            const int k = static_cast<int>(w / per);
            const std::size_t r = w % per;
            const int m = static_cast<int>(r / nn) - sp.modes_;
            const int j = static_cast<int>(r % nn);
            const bool zero_mode = odd && m == 0 && j == center;
            const SliceAxis ax = slice_axis(layouts[k], m, sp.nu_[j], zero_mode, nu_ref, cfg);
            std::vector<double> values(ax.x.size());
            sampler.component_slice(k, m, ax.nu, ax.x, values);
            cplx s(0.0, 0.0);
            for (std::size_t b = 0; b < values.size(); ++b) {
                s += values[b] * (ax.w[b] * std::polar(1.0, ax.freq * ax.x[b]));
            }
            tables[k][r] = s;
        });
        std::vector<int> m(dim);
        std::vector<int> j(dim);
        for (std::size_t idx = 0; idx < total; ++idx) {
            decode(idx, m, j);
            cplx g = tables[0][static_cast<std::size_t>(m[0] + sp.modes_) * nn + j[0]];
            for (int k = 1; k < dim; ++k) {
                g *= tables[k][static_cast<std::size_t>(m[k] + sp.modes_) * nn + j[k]];
            }
            sp.g_[idx] = g;
        }
    } else {
        std::vector<std::size_t> work;
        work.reserve(cfg.use_conjugate_symmetry ? total / 2 + 1 : total);
        {
            std::vector<int> m(dim);
            std::vector<int> j(dim);
            for (std::size_t idx = 0; idx < total; ++idx) {
                if (cfg.use_conjugate_symmetry) {
                    decode(idx, m, j);
                    if (mirror(m, j) < idx) {
                        continue;
                    }
                }
                work.push_back(idx);
            }
        }

        parallel_for(work.size(), [&](std::size_t w) {
            const std::size_t idx = work[w];
            std::vector<int> m(dim);
            std::vector<int> j(dim);
            decode(idx, m, j);
            std::vector<double> nu_eff(dim);
            std::vector<std::vector<double>> xs(dim);
            std::vector<std::vector<cplx>> kernel(dim);
            std::size_t count = 1;
            for (int k = 0; k < dim; ++k) {
                const bool zero_mode = odd && m[k] == 0 && j[k] == center;
                SliceAxis ax = slice_axis(layouts[k], m[k], sp.nu_[j[k]], zero_mode, nu_ref, cfg);
                nu_eff[k] = ax.nu;
                kernel[k].resize(ax.x.size());
                for (std::size_t i = 0; i < ax.x.size(); ++i) {
                    kernel[k][i] = ax.w[i] * std::polar(1.0, ax.freq * ax.x[i]);
                }
                count *= ax.x.size();
                xs[k] = std::move(ax.x);
            }
            std::vector<double> values(count);
            sampler.slice(m, nu_eff, xs, values);

            // contract the last axis first
            std::vector<cplx> cur(values.begin(), values.end());
            for (int k = dim - 1; k >= 0; --k) {
                const std::size_t nk = kernel[k].size();
                const std::size_t outer = nk == 0 ? 0 : cur.size() / nk;
                std::vector<cplx> next(outer);
                for (std::size_t i = 0; i < outer; ++i) {
                    cplx s(0.0, 0.0);
                    const cplx* row = cur.data() + i * nk;
                    for (std::size_t b = 0; b < nk; ++b) {
                        s += row[b] * kernel[k][b];
                    }
                    next[i] = s;
                }
                cur.swap(next);
            }
            sp.g_[idx] = cur.empty() ? cplx(0.0, 0.0) : cur[0];
        });

        if (cfg.use_conjugate_symmetry) {
            std::vector<int> m(dim);
            std::vector<int> j(dim);
            for (std::size_t idx : work) {
                decode(idx, m, j);
                const std::size_t mi = mirror(m, j);
                if (mi != idx) {
                    sp.g_[mi] = std::conj(sp.g_[idx]);
                }
            }
        }
    }

    // accuracy diagnostics
    double g00 = 0.0;
    if (odd) {
        std::vector<int> m0(dim, 0);
        std::vector<int> j0(dim, center);
        g00 = std::abs(sp.g_[sp.flat_index(m0, j0)]);
    }
    double mode_edge = 0.0;
    double nu_edge = 0.0;
    {
        std::vector<int> m(dim);
        std::vector<int> j(dim);
        for (std::size_t idx = 0; idx < total; ++idx) {
            decode(idx, m, j);
            bool at_mode_edge = false;
            bool at_nu_edge = false;
            for (int k = 0; k < dim; ++k) {
                at_mode_edge = at_mode_edge || std::abs(m[k]) == sp.modes_;
                at_nu_edge = at_nu_edge || j[k] == 0 || j[k] == nn - 1;
            }
            const double a = std::abs(sp.g_[idx]);
            if (at_mode_edge) {
                mode_edge = std::max(mode_edge, a);
            }
            if (at_nu_edge) {
                nu_edge = std::max(nu_edge, a);
            }
        }
    }
    const double scale = g00 > 0.0 ? g00 : 1.0;
    if (mode_edge > cfg.spectral_tail_tol * scale) {
        sp.warnings_.push_back(format_ratio("mode truncation |m| = M not resolved", mode_edge / scale));
    }
    if (nu_edge > cfg.spectral_tail_tol * scale) {
        sp.warnings_.push_back(format_ratio("nu window edge not resolved", nu_edge / scale));
    }
    const double hnu = 2.0 * cfg.nu_half_width / (nn - 1);
    if (kPi / hnu < cfg.momentum_cutoff) {
        sp.warnings_.push_back("nu step too coarse: pi / h_nu is below the momentum cutoff (J aliasing)");
    }
    if (!odd) {
        sp.warnings_.push_back("even nu_points: no nu = 0 node, zero-frequency mass moment omitted");
    }
    return sp;
}

std::complex<double> Spectrum::coefficient(std::span<const int> m, std::span<const int> j) const {
    if (m.size() != static_cast<std::size_t>(dim_) || j.size() != m.size()) {
        throw ConfigError("Spectrum::coefficient: index count does not match dimension");
    }
    for (int k = 0; k < dim_; ++k) {
        if (std::abs(m[k]) > modes_ || j[k] < 0 || j[k] >= static_cast<int>(nu_.size())) {
            throw ConfigError("Spectrum::coefficient: index out of range");
        }
    }
    return g_[flat_index(m, j)];
}

double Spectrum::reconstruct(std::span<const double> phi, std::span<const double> j) const {
    if (phi.size() != static_cast<std::size_t>(dim_) || j.size() != phi.size()) {
        throw ConfigError("Spectrum::reconstruct: coordinate count does not match dimension");
    }
    const int nm = 2 * modes_ + 1;
    const int nn = static_cast<int>(nu_.size());
    std::vector<std::vector<cplx>> em(dim_, std::vector<cplx>(nm));
    std::vector<std::vector<cplx>> ej(dim_, std::vector<cplx>(nn));
    for (int k = 0; k < dim_; ++k) {
        for (int a = 0; a < nm; ++a) {
            em[k][a] = std::polar(1.0, -(a - modes_) * phi[k]);
        }
        for (int b = 0; b < nn; ++b) {
            ej[k][b] = nu_w_[b] * std::polar(1.0, -nu_[b] * j[k]);
        }
    }
    const std::size_t total_j = ipow(static_cast<std::size_t>(nn), dim_);
    const std::size_t total = g_.size();
    double sum = 0.0;
    std::vector<int> mi(dim_);
    std::vector<int> ji(dim_);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t jr = idx % total_j;
        std::size_t mr = idx / total_j;
        cplx factor(1.0, 0.0);
        for (int k = dim_ - 1; k >= 0; --k) {
            factor *= ej[k][jr % nn] * em[k][mr % nm];
            jr /= nn;
            mr /= nm;
        }
        sum += (g_[idx] * factor).real();
    }
    return sum / std::pow(kTwoPi, 2 * dim_);
}

InverseResult Spectrum::reconstruct_with_warnings(std::span<const double> phi, std::span<const double> j) const {
    return InverseResult{reconstruct(phi, j), warnings_};
}

std::vector<double> Spectrum::reconstruct_grid(const GridAxis& phi, const GridAxis& j) const {
    if (dim_ != 1) {
        throw ConfigError("Spectrum::reconstruct_grid needs N = 1");
    }
    const int nm = 2 * modes_ + 1;
    const int nn = static_cast<int>(nu_.size());
    // H(m, J) = sum_nu w G(m, nu) e^{-i nu J}
    std::vector<cplx> h(static_cast<std::size_t>(nm) * j.count);
    parallel_for(static_cast<std::size_t>(j.count), [&](std::size_t b) {
        const double jb = j.node(static_cast<long>(b));
        std::vector<cplx> e(nn);
        for (int q = 0; q < nn; ++q) {
            e[q] = nu_w_[q] * std::polar(1.0, -nu_[q] * jb);
        }
        for (int a = 0; a < nm; ++a) {
            cplx s(0.0, 0.0);
            const cplx* row = g_.data() + static_cast<std::size_t>(a) * nn;
            for (int q = 0; q < nn; ++q) {
                s += row[q] * e[q];
            }
            h[static_cast<std::size_t>(a) * j.count + b] = s;
        }
    });
    const double norm = 1.0 / (kTwoPi * kTwoPi);
    std::vector<double> out(static_cast<std::size_t>(phi.count) * j.count);
    parallel_for(static_cast<std::size_t>(phi.count), [&](std::size_t a) {
        const double pa = phi.node(static_cast<long>(a));
        std::vector<cplx> e(nm);
        for (int q = 0; q < nm; ++q) {
            e[q] = std::polar(1.0, -(q - modes_) * pa);
        }
        for (int b = 0; b < j.count; ++b) {
            double s = 0.0;
            for (int q = 0; q < nm; ++q) {
                s += (e[q] * h[static_cast<std::size_t>(q) * j.count + b]).real();
            }
            out[a * j.count + b] = norm * s;
        }
    });
    return out;
}

}  // namespace cyltomo
