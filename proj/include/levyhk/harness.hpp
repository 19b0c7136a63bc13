#ifndef LEVYHK_HARNESS_HPP
#define LEVYHK_HARNESS_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "levyhk/bound.hpp"
#include "levyhk/builtin.hpp"
#include "levyhk/density.hpp"
#include "levyhk/sampler.hpp"

namespace levyhk {

enum class BoundId { Rho, FExample1, FExample2, OnDiagonal, NuTail };

inline const char* bound_name(BoundId b) {
    switch (b) {
        case BoundId::Rho: return "rho";
        case BoundId::FExample1: return "f-example1";
        case BoundId::FExample2: return "f-example2";
        case BoundId::OnDiagonal: return "on-diagonal";
        case BoundId::NuTail: return "nu-tail";
    }
    return "?";
}

inline BoundId parse_bound_id(const std::string& s) {
    if (s == "rho") return BoundId::Rho;
    if (s == "f-example1") return BoundId::FExample1;
    if (s == "f-example2") return BoundId::FExample2;
    if (s == "on-diagonal") return BoundId::OnDiagonal;
    if (s == "nu-tail") return BoundId::NuTail;
    throw InvalidParameter("unknown bound id: " + s);
}

struct GridPoint {
    double t = nan;
    Vector x;
};

struct ComparabilityReport {
    std::string model_id;
    std::string bound_id;
    std::vector<double> t_grid;
    std::vector<double> x_radii;  // per-t defaults recorded from the first t
    CenteringMode center_mode = CenteringMode::HInverse;
    double ratio_min = inf, ratio_max = 0.0;
    GridPoint argmin, argmax;
    long points = 0;
    bool holds = false;
    bool mc_pass = true;
    int mc_points = 0;
    double mc_worst_sigma = 0.0;
    std::string note;
    std::vector<GridPoint> grid_points;   // scanned points (absolute x)
    std::vector<double> ratios;           // parallel to grid_points
};

struct HarnessOptions {
    int rays = 4;                 // x-rays for d > 1 (d = 1 always uses +/-)
    bool mc_cross_check = true;   // 10 random grid points vs Monte Carlo
    long mc_samples = 20000;
    std::uint64_t seed = 1;
    double mc_jump_cutoff = 0.05;
    InversionSettings inversion;
};

inline std::vector<double> default_t_grid(double lo = 0.01, double hi = 10.0,
                                          int per_decade = 5) {
    std::vector<double> t;
    const int n =
        static_cast<int>(std::round(std::log10(hi / lo) * per_decade)) + 1;
    for (int i = 0; i < n; ++i)
        t.push_back(lo * std::pow(10.0, static_cast<double>(i) / per_decade));
    return t;
}

inline std::vector<double> default_radii(double hinv, int n = 32,
                                         double lo_mult = 0.01,
                                         double hi_mult = 100.0) {
    std::vector<double> r;
    for (int i = 0; i < n; ++i)
        r.push_back(hinv * lo_mult *
                    std::pow(hi_mult / lo_mult, static_cast<double>(i) / (n - 1)));
    return r;
}

namespace detail {

// f of the Aronson-type two-parameter profile (alpha=1.5, beta=0.5).
inline double f_example1(double t, double r, int d) {
    const double alpha = 1.5, beta = 0.5;
    const double diag =
        std::min(std::pow(t, -d / alpha), std::pow(t, -d / beta));
    return diag * (t * std::pow(r, -(d + alpha)) + t * std::pow(r, -(d + beta)));
}

// f of the very-heavy-tail profile (alpha=1).
inline double f_example2(double t, double r, int d) {
    const double alpha = 1.0;
    const double diag = std::pow(t, -d / alpha);
    const double lg = std::log1p(std::pow(r, alpha / 2.0));
    if (lg <= 0.0) return diag;
    return std::min(diag, t / (sqr(lg) * std::pow(r, d)));
}

inline std::vector<Vector> x_rays(int dim, int rays) {
    if (dim == 1) return sphere_directions(1, 2);
    return sphere_directions(dim, std::max(2, rays));
}

}  // namespace detail

// Ratio extremes of p(t, x + center) / bound(t, x) over a (t, radius, ray)
// grid; verdicts are grid-certified only.
inline ComparabilityReport comparability_report(const LevyModel& model,
                                                std::vector<double> t_grid,
                                                std::vector<double> x_radii,
                                                BoundId bound_id,
                                                CenteringMode center_mode,
                                                const HarnessOptions& opt = {}) {
    Characteristics ch(model);
    const int d = model.dim;
    if (t_grid.empty()) t_grid = default_t_grid();
    ComparabilityReport rep;
    rep.model_id = model.name;
    rep.bound_id = bound_name(bound_id);
    rep.t_grid = t_grid;
    rep.center_mode = center_mode;
    const auto rays = detail::x_rays(d, opt.rays);

    for (double t : t_grid) {
        BoundFunctionContext ctx(ch, t, center_mode);
        DensityEngine eng(ch, t, opt.inversion);
        const Vector center = ctx.drift_center();
        const double hinv = ctx.h_inv_1t();
        std::vector<double> radii =
            x_radii.empty() ? default_radii(hinv) : x_radii;
        if (rep.x_radii.empty()) rep.x_radii = radii;

        auto record = [&](const Vector& x, double ratio) {
            rep.grid_points.push_back({t, x});
            rep.ratios.push_back(ratio);
            ++rep.points;
            if (ratio < rep.ratio_min) { rep.ratio_min = ratio; rep.argmin = {t, x}; }
            if (ratio > rep.ratio_max) { rep.ratio_max = ratio; rep.argmax = {t, x}; }
        };

        if (bound_id == BoundId::OnDiagonal) {
            const double p = eng.at(center);
            record(Vector(d, 0.0), p * std::pow(hinv, d));
            continue;
        }
        Vector x(d), y(d);
        for (double r : radii) {
            double bound = 0.0;
            switch (bound_id) {
                case BoundId::Rho: bound = ctx.eval_rho(r); break;
                case BoundId::FExample1: bound = detail::f_example1(t, r, d); break;
                case BoundId::FExample2: bound = detail::f_example2(t, r, d); break;
                case BoundId::NuTail:
                    bound = t * std::exp(model.profile.log_density(std::log(r)));
                    break;
                case BoundId::OnDiagonal: break;
            }
            if (!(bound > 0.0) || !std::isfinite(bound)) continue;  // outside support
            for (const auto& u : rays) {
                for (int j = 0; j < d; ++j) {
                    x[j] = r * u[j];
                    y[j] = x[j] + center[j];
                }
                record(x, eng.at(y) / bound);
            }
        }
    }
    rep.holds = rep.points > 0 && rep.ratio_min > 1e-12 &&
                std::isfinite(rep.ratio_max);
    rep.note = "grid-certified; not claimed beyond the scanned (t,x) grid";

    // Cross-oracle: random grid points re-checked against Monte Carlo mass in
    // a small box (4-sigma, with a 5% allowance for in-box density variation).
    if (opt.mc_cross_check && rep.points > 0) {
        rng::Stream pick(opt.seed, 0xC0FFEE);
        std::map<double, std::vector<Vector>> cache;
        Characteristics ch2(model);
        for (int k = 0; k < 10; ++k) {
            const auto& gp =
                rep.grid_points[static_cast<std::size_t>(pick.uniform() * rep.points)];
            const double t = gp.t;
            BoundFunctionContext ctx(ch2, t, center_mode);
            const Vector center = ctx.drift_center();
            const double w = 0.15 * ctx.h_inv_1t();
            DensityEngine eng(ch2, t, opt.inversion);
            Vector y(d);
            for (int j = 0; j < d; ++j) y[j] = gp.x[j] + center[j];
            const double m_hat = eng.at(y) * std::pow(2.0 * w, d);
            if (m_hat * static_cast<double>(opt.mc_samples) < 25.0) continue;  // far tail
            if (!cache.count(t)) {
                SamplerSettings st;
                st.n_samples = opt.mc_samples;
                st.seed = opt.seed + 17;
                st.jump_cutoff = opt.mc_jump_cutoff;
                cache[t] = Sampler(model, t, st).sample();
            }
            long hits = 0;
            for (const auto& s : cache[t]) {
                bool in = true;
                for (int j = 0; j < d; ++j)
                    if (std::abs(s[j] - y[j]) > w) { in = false; break; }
                if (in) ++hits;
            }
            const double obs = static_cast<double>(hits) / opt.mc_samples;
            const double sigma =
                std::sqrt(std::max(m_hat * (1.0 - m_hat) / opt.mc_samples, 1e-300));
            const double z = std::abs(obs - m_hat) / (sigma + 0.0125 * m_hat);
            rep.mc_worst_sigma = std::max(rep.mc_worst_sigma, z);
            ++rep.mc_points;
            if (z > 4.0) rep.mc_pass = false;
        }
    }
    return rep;
}

// Reproduction of the two builtin profile estimates against their f-shapes.
inline ComparabilityReport verify_example(const std::string& name,
                                          std::vector<double> t_grid = {},
                                          std::vector<double> x_radii = {},
                                          const HarnessOptions& opt = {}) {
    if (name == "example1") {
        const LevyModel m = LevyModel::isotropic(
            UnimodalProfile::stable_mixture(1.5, 0.5, 1), {}, {}, "example1");
        if (t_grid.empty()) t_grid = default_t_grid();
        if (x_radii.empty()) {
            for (int i = 0; i < 32; ++i)
                x_radii.push_back(0.05 * std::pow(400.0, i / 31.0));  // up to 20
        }
        return comparability_report(m, t_grid, x_radii, BoundId::FExample1,
                                    CenteringMode::PlainDrift, opt);
    }
    if (name == "example2") {
        const LevyModel m = LevyModel::isotropic(UnimodalProfile::log_heavy(1.0, 1),
                                                 {}, {}, "example2");
        if (t_grid.empty()) t_grid = {0.1, 0.2, 0.5};
        if (x_radii.empty()) {
            for (int i = 0; i < 32; ++i)
                x_radii.push_back(0.05 * std::pow(1000.0, i / 31.0));  // up to 50
        }
        return comparability_report(m, t_grid, x_radii, BoundId::FExample2,
                                    CenteringMode::HInverse, opt);
    }
    throw InvalidParameter("unknown example: " + name);
}

struct ChainLink {
    std::string id;
    Verdict verdict = Verdict::Inconclusive;
    double witness = nan;
    std::string note;
};

struct ChainReport {
    std::vector<ChainLink> links;
    bool all_hold = false;
    bool consistent_failure = false;  // (a) and (b) fail on the same window
    std::string window;
};

// Equivalence chain: (a) h <= c K on the window; (b) the heat-content
// integral bound on matching times; (c1)/(c7) sup-density two-sided bound;
// (c6) near-max ball. Windows are linked through t = 1/h(r).
inline ChainReport verify_equivalence_chain(const LevyModel& model,
                                            double T = inf,
                                            const HarnessOptions& opt = {}) {
    Characteristics ch(model);
    const int d = model.dim;
    ChainReport rep;
    double r_hi = 1e4, r_lo = 1e-4;
    if (std::isfinite(T) && T < 1e6) {
        r_hi = ch.invert_h(1.0 / T);
        r_lo = r_hi * 1e-6;
    }
    {
        std::ostringstream os;
        os << "r in [" << r_lo << "," << r_hi << "], t = 1/h(r)";
        rep.window = os.str();
    }

    // (a): witness = max h/K; fails if the ratio grows towards either end.
    std::vector<double> grid = detail::log_grid(r_lo, r_hi, 16), hk;
    for (double r : grid) hk.push_back(ch.h(r) / ch.K(r));
    {
        ChainLink a;
        a.id = "a:h<=cK";
        double worst = 0.0;
        std::string n1, n2;
        const Verdict right = detail::classify_trend(grid, hk, true, worst, n1);
        const Verdict left = detail::classify_trend(grid, hk, false, worst, n2);
        a.verdict = right == Verdict::Holds && left == Verdict::Holds
                        ? Verdict::Holds
                        : (right == Verdict::Fails || left == Verdict::Fails
                               ? Verdict::Fails
                               : Verdict::Inconclusive);
        a.witness = *std::max_element(hk.begin(), hk.end());
        a.note = right == Verdict::Holds ? n2 : n1;
        rep.links.push_back(a);
    }

    // Probe times linked to the window through t = 1/h(r).
    std::vector<double> probe_t;
    for (int i = 0; i < 7; ++i) {
        const double r = grid.front() *
                         std::pow(grid.back() / grid.front(), i / 6.0);
        probe_t.push_back(1.0 / ch.h(r));
    }

    // (b): witness_j = int e^{-t Re Psi} * [h^-1(1/t)]^d, bounded over probes.
    {
        ChainLink b;
        b.id = "b:heat-content";
        std::vector<double> tg, wit;
        for (double t : probe_t) {
            try {
                const double integral = exp_moment_integral(ch, t, 0);
                wit.push_back(integral * std::pow(ch.invert_h(1.0 / t), d));
                tg.push_back(t);
            } catch (const Error&) {
                b.note += "t=" + std::to_string(t) + " divergent; ";
            }
        }
        if (tg.size() >= 3) {
            double worst = 0.0;
            std::string n;
            b.verdict = detail::classify_trend(tg, wit, true, worst, n);
            b.witness = *std::max_element(wit.begin(), wit.end());
            b.note += n;
        } else {
            b.verdict = Verdict::Fails;
            b.note += "integral not summable on the window";
        }
        rep.links.push_back(b);
    }

    // (c): density-level links on a reduced probe set.
    std::vector<double> ct;
    for (double t : probe_t)
        if (t > 1e-3 && t < 1e3 && ct.size() < 3) ct.push_back(t);
    std::vector<double> sup_wit, sup_t;
    Vector last_argmax;
    double last_sup = 0.0, last_t = nan;
    std::string cfail;
    for (double t : ct) {
        try {
            DensityEngine eng(ch, t, opt.inversion);
            BoundFunctionContext ctx(ch, t);
            const auto s = eng.sup(ctx.drift_center());
            sup_wit.push_back(s.value * std::pow(ctx.h_inv_1t(), d));
            sup_t.push_back(t);
            last_argmax = s.argmax;
            last_sup = s.value;
            last_t = t;
        } catch (const Error& e) {
            cfail += std::string(e.what()) + "; ";
        }
    }
    {
        ChainLink c1, c7;
        c1.id = "c1:sup-upper";
        c7.id = "c7:sup-two-sided";
        if (sup_wit.size() >= 2) {
            double worst = 0.0;
            std::string n;
            c1.verdict = detail::classify_trend(sup_t, sup_wit, true, worst, n);
            c1.witness = *std::max_element(sup_wit.begin(), sup_wit.end());
            c1.note = n;
            c7.witness = *std::min_element(sup_wit.begin(), sup_wit.end());
            c7.verdict = c7.witness > 1e-6 ? c1.verdict : Verdict::Fails;
            c7.note = "min sup*[h^-1]^d = " + std::to_string(c7.witness);
        } else {
            c1.verdict = c7.verdict = Verdict::Fails;
            c1.note = c7.note = "density not evaluable: " + cfail;
        }
        rep.links.push_back(c1);
        rep.links.push_back(c7);
    }
    {
        ChainLink c6;
        c6.id = "c6:near-max-ball";
        if (!std::isnan(last_t)) {
            Characteristics ch2(model);
            DensityEngine eng(ch2, last_t, opt.inversion);
            const double hinv = ch2.invert_h(1.0 / last_t);
            double worst = inf;
            Vector y(d);
            for (const auto& u : detail::x_rays(d, opt.rays)) {
                for (int j = 0; j < d; ++j)
                    y[j] = last_argmax[j] + 0.25 * hinv * u[j];
                worst = std::min(worst, eng.at(y) / last_sup);
            }
            c6.witness = worst;
            c6.verdict = worst > 0.05 ? Verdict::Holds : Verdict::Fails;
            c6.note = "min p(argmax+y)/sup at |y| = h^-1(1/t)/4";
        } else {
            c6.verdict = Verdict::Fails;
            c6.note = "density not evaluable: " + cfail;
        }
        rep.links.push_back(c6);
    }

    rep.all_hold = true;
    for (const auto& l : rep.links)
        if (l.verdict != Verdict::Holds) rep.all_hold = false;
    rep.consistent_failure = rep.links[0].verdict == Verdict::Fails &&
                             rep.links[1].verdict == Verdict::Fails;
    return rep;
}

struct LemmaCheck {
    std::string id;
    bool pass = false;
    double measured = nan;
    std::string note;
};

struct LemmaSuiteReport {
    std::vector<LemmaCheck> checks;
    bool all_pass = false;
};

// Bundle of structural identities and lower bounds; per-check failures are
// collected, not fatal.
inline LemmaSuiteReport verify_lemma_suite(
    const LevyModel& model, const HarnessOptions& opt = {},
    std::optional<SymmetricMinorant> minorant = std::nullopt) {
    Characteristics ch(model);
    const int d = model.dim;
    const double cd_low = 8.0 * (1.0 + 2.0 * d);
    LemmaSuiteReport rep;
    auto push = [&](LemmaCheck c) { rep.checks.push_back(std::move(c)); };

    {  // sup Re Psi sandwiched by h(1/r).
        LemmaCheck c;
        c.id = "psi-h-sandwich";
        c.pass = true;
        double upper = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double r = 1e-3 * std::pow(1e6, i / 19.0);
            const double ps = ch.psi_star(r), hh = ch.h(1.0 / r);
            if (ps < hh / cd_low * (1.0 - 1e-8) || ps > 2.0 * hh * (1.0 + 1e-8))
                c.pass = false;
            upper = std::max(upper, ps / hh);
        }
        c.measured = upper;
        c.note = "max psi*(r)/h(1/r) over 20 radii";
        push(c);
    }
    {  // h(a) - h(b) = int_a^b 2K(r)/r dr.
        LemmaCheck c;
        c.id = "h-K-identity";
        c.pass = true;
        double worst = 0.0;
        for (auto [a, b] : std::vector<std::pair<double, double>>{
                 {0.1, 1.0}, {1.0, 10.0}, {0.5, 2.0}}) {
            auto f = [&](double v) { return 2.0 * ch.K(std::exp(v)); };
            const double integral = quad::integrate(f, std::log(a), std::log(b)).value;
            const double lhs = ch.h(a) - ch.h(b);
            const double err = std::abs(lhs - integral) / std::max(ch.h(a), 1e-300);
            worst = std::max(worst, err);
            if (err > 1e-8) c.pass = false;
        }
        c.measured = worst;
        c.note = "worst relative defect of the truncated-moment identity";
        push(c);
    }
    {  // 1/h^-1(u/2) <= psi*^-1(u) <= 1/h^-1(cd u).
        LemmaCheck c;
        c.id = "inverse-sandwich";
        c.pass = true;
        double worst = 0.0;
        for (double u : {0.1, 1.0, 10.0, 100.0}) {
            try {
                const double r = ch.invert_psi_star(u);
                const double lo = 1.0 / ch.invert_h(u / 2.0);
                const double hi = 1.0 / ch.invert_h(cd_low * u);
                if (r < lo * (1.0 - 1e-8) || r > hi * (1.0 + 1e-8)) c.pass = false;
                worst = std::max(worst, r / lo);
            } catch (const Error& e) {
                c.note += std::string(e.what()) + "; ";
            }
        }
        c.measured = worst;
        c.note += "max psi*^-1(u) * h^-1(u/2)";
        push(c);
    }
    {  // h^-1 is non-increasing and continuous on a grid.
        LemmaCheck c;
        c.id = "h-inverse-monotone";
        c.pass = true;
        double prev = inf, worst_jump = 0.0;
        for (int i = 0; i < 64; ++i) {
            const double u = 1e-2 * std::pow(1e5, i / 63.0);
            const double v = ch.invert_h(u);
            if (v > prev * (1.0 + 1e-9)) c.pass = false;
            if (std::isfinite(prev) && prev > 0.0)
                worst_jump = std::max(worst_jump, prev / v);
            prev = v;
        }
        c.measured = worst_jump;
        c.note = "max step ratio of h^-1 across a 64-point u-grid";
        push(c);
    }
    {  // int rho_t within the dimensional band; r0 in its bracket.
        LemmaCheck c, c2;
        c.id = "integral-rho-band";
        c2.id = "r0-bracket";
        c.pass = c2.pass = true;
        const double wd = sphere_surface(d);
        double worst = 0.0, r0_worst = 0.0;
        for (double t : {0.01, 0.1, 1.0, 10.0}) {
            try {
                BoundFunctionContext ctx(ch, t);
                const double integral = ctx.integrate_rho();
                worst = std::max(worst, integral);
                if (integral < wd / 2.0 * (1.0 - 1e-9) ||
                    integral > wd / 2.0 * (1.0 + 2.0 / d) * (1.0 + 1e-9))
                    c.pass = false;
                const double r0 = ctx.solve_r0();
                r0_worst = std::max(r0_worst, r0 / ctx.h_inv_1t());
                if (r0 < ctx.ch0().invert_h(3.0 / t) * (1.0 - 1e-10) ||
                    r0 > ctx.h_inv_1t() * (1.0 + 1e-10))
                    c2.pass = false;
            } catch (const Error& e) {
                c.pass = c2.pass = false;
                c.note += std::string(e.what()) + "; ";
            }
        }
        c.measured = worst;
        c.note += "max integral over the 4-point t set";
        c2.measured = r0_worst;
        c2.note = "max r0 / h^-1(1/t) over the 4-point t set";
        push(c);
        push(c2);
    }
    {  // rho_t(x+z) <= 2^{d+2} rho_t(x) for |z| <= h^-1(3/t) v |x|/2.
        LemmaCheck c;
        c.id = "small-shift";
        c.pass = true;
        double worst = 0.0;
        for (double t : {0.1, 1.0}) {
            BoundFunctionContext ctx(ch, t);
            const double zmax0 = ctx.ch0().invert_h(3.0 / t);
            for (int i = 0; i < 24; ++i) {
                const double r = ctx.h_inv_1t() * 1e-2 * std::pow(1e4, i / 23.0);
                const double zmax = std::max(zmax0, r / 2.0);
                // radial non-increase: the worst admissible shift points inward
                const double ratio =
                    ctx.eval_rho(std::max(0.0, r - zmax)) / ctx.eval_rho(r);
                worst = std::max(worst, ratio);
            }
        }
        c.measured = worst;
        // the truncated family attains the constant exactly, so leave room
        // for the quadrature tolerance carried by K.
        c.pass = worst <= std::pow(2.0, d + 2) * (1.0 + 1e-6);
        c.note = "sup rho(x+z)/rho(x) vs 2^{d+2}";
        push(c);
    }
    {  // rho <= phi <= c rho with a stable constant.
        LemmaCheck c;
        c.id = "phi-comparable";
        c.pass = true;
        double cmax = 0.0;
        try {
            for (double t : {0.1, 1.0}) {
                const ScalingEstimate est =
                    estimate_scaling(ch, ScalingRegime::LowerAtZero, 1e-4, 1e2);
                BoundFunctionContext ctx(ch, t, CenteringMode::HInverse, est);
                for (int i = 0; i < 32; ++i) {
                    const double r = ctx.h_inv_1t() * 1e-2 * std::pow(1e4, i / 31.0);
                    const double rho = ctx.eval_rho(r), phi = ctx.eval_phi(r);
                    if (rho > phi * (1.0 + 1e-9)) c.pass = false;
                    cmax = std::max(cmax, phi / rho);
                }
            }
            c.measured = cmax;
            if (!(cmax < 1e3)) c.pass = false;
        } catch (const Error& e) {
            c.pass = false;
            c.note = e.what();
        }
        c.note += " max phi/rho over the scanned window";
        push(c);
    }
    if (model.gauss_norm() > 0.0) {  // Gaussian-part lower bound.
        LemmaCheck c;
        c.id = "gauss-lower";
        double cmin = inf;
        try {
            for (double t : {0.1, 1.0}) {
                DensityEngine eng(ch, t, opt.inversion);
                const Vector br = ch.drift_br(std::sqrt(t));
                Vector x(d);
                for (int j = 0; j < d; ++j) x[j] = t * br[j];
                cmin = std::min(cmin, eng.at(x) * std::pow(t, d / 2.0));
            }
            c.measured = cmin;
            c.pass = cmin > 0.0;
        } catch (const Error& e) {
            c.pass = false;
            c.note = e.what();
        }
        c.note += " min p(t, t b_sqrt(t)) t^{d/2} over t in {0.1,1}";
        push(c);
    }
    if (model.gauss_norm() == 0.0 && !model.profile.is_zero()) {
        // Jump-type lower bound via a symmetric minorant; default is the
        // symmetrisation of the jump density (recorded, not canonical).
        LemmaCheck c;
        c.id = "jump-lower";
        try {
            LevyModel sym = model;
            sym.symmetric = true;
            sym.drift = Vector(d, 0.0);
            sym.name = model.name + "-symmetrized";
            if (minorant) {
                sym.profile = minorant->profile_s;
                sym.anisotropy = nullptr;
                c.note = "user minorant; ";
            } else if (model.anisotropy) {
                auto a = model.anisotropy;
                sym.anisotropy = [a](const Vector& x) {
                    Vector mx(x.size());
                    for (std::size_t i = 0; i < x.size(); ++i) mx[i] = -x[i];
                    return std::min(a(x), a(mx));
                };
                c.note = "symmetrized anisotropy minorant; ";
            } else {
                c.note = "model is its own symmetric minorant; ";
            }
            Characteristics chs(sym);
            double cmin = inf;
            for (double t : {0.1, 1.0}) {
                const double hs_inv = chs.invert_h(1.0 / t);
                DensityEngine eng(ch, t, opt.inversion);
                const Vector br = ch.drift_br(hs_inv);
                Vector y(d);
                for (int i = -2; i <= 2; ++i) {  // |x| <= theta hs^-1, theta = 1
                    for (int j = 0; j < d; ++j)
                        y[j] = t * br[j] + (j == 0 ? 0.5 * i * hs_inv : 0.0);
                    cmin = std::min(cmin, eng.at(y) * std::pow(hs_inv, d));
                }
            }
            c.measured = cmin;
            c.pass = cmin > 0.0;
        } catch (const Error& e) {
            c.pass = false;
            c.note += e.what();
        }
        c.note += " min p(t, x + t b) [hs^-1]^d on |x| <= hs^-1(1/t)";
        push(c);
    }
    {  // Gaussian-rank detector: A != 0 with det A = 0 is (C3)-incompatible.
        LemmaCheck c;
        c.id = "c3-gauss-detector";
        c.pass = true;
        const double an = model.gauss_norm();
        if (an == 0.0) {
            c.measured = 0.0;
            c.note = "A = 0: Gaussian route not applicable";
        } else {
            double minq = inf;
            for (const auto& u : sphere_directions(d, d == 1 ? 2 : 64))
                minq = std::min(minq, quad_form(model.A, u));
            c.measured = minq / an;
            c.note = minq <= 1e-10 * an
                         ? "(C3)-incompatible Gaussian part: singular A"
                         : "det A != 0: Gaussian route available";
        }
        push(c);
    }

    rep.all_pass = true;
    for (const auto& c : rep.checks)
        if (!c.pass) rep.all_pass = false;
    return rep;
}

}  // namespace levyhk

#endif
