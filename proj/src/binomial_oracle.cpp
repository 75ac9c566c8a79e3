#include "mfxpf/binomial_oracle.hpp"

#include "mfxpf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mfxpf {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// ln(p^Q + (1-p)^Q), factoring out the dominant term so large |Q| stays
// finite far beyond the naive overflow point.
double log_moment_sum(double p, double q_order)
{
    const double wa = q_order * std::log(p);
    const double wb = q_order * std::log1p(-p);
    const double hi = std::max(wa, wb);
    const double lo = std::min(wa, wb);
    return hi + std::log1p(std::exp(lo - hi));
}

} // namespace

BinomialOracleParams make_params(double p_x, double p_y)
{
    if (!(p_x > 0.0 && p_x < 1.0) || !(p_y > 0.0 && p_y < 1.0))
        throw ParameterError("cascade multipliers must be in (0, 1)");
    if (p_y == 0.5)
        throw ParameterError("p_y = 0.5 is singular: beta is undefined and the "
                             "y measure is uniform");
    BinomialOracleParams params;
    params.p_x = p_x;
    params.p_y = p_y;
    params.beta = (std::log(p_x) - std::log1p(-p_x)) / (std::log(p_y) - std::log1p(-p_y));
    params.gamma = params.beta * std::log1p(-p_y) - std::log1p(-p_x);
    return params;
}

double tau_single_analytic(double p, double q_order)
{
    return -log_moment_sum(p, q_order) / kLn2;
}

double tau_y_analytic(const BinomialOracleParams& params, double q_order)
{
    return tau_single_analytic(params.p_y, q_order);
}

double tau_xy_analytic(const BinomialOracleParams& params, double p, double q)
{
    return 0.5 * p * params.gamma / kLn2 +
           tau_y_analytic(params, params.combined_order(p, q));
}

double alpha_y_analytic(const BinomialOracleParams& params, double q_order)
{
    const double a = std::log(params.p_y);
    const double b = std::log1p(-params.p_y);
    const double wa = q_order * a;
    const double wb = q_order * b;
    const double hi = std::max(wa, wb);
    const double ea = std::exp(wa - hi);
    const double eb = std::exp(wb - hi);
    return -(ea * a + eb * b) / ((ea + eb) * kLn2);
}

std::pair<double, double> alpha_analytic(const BinomialOracleParams& params, double p,
                                         double q)
{
    const double alpha_y = alpha_y_analytic(params, params.combined_order(p, q));
    const double alpha_x = params.gamma / kLn2 + params.beta * alpha_y;
    return {alpha_x, alpha_y};
}

double f_analytic(const BinomialOracleParams& params, double q_order)
{
    return q_order * alpha_y_analytic(params, q_order) - tau_y_analytic(params, q_order);
}

double alpha_y_min(const BinomialOracleParams& params)
{
    return std::min(-std::log2(params.p_y), -std::log2(1.0 - params.p_y));
}

double alpha_y_max(const BinomialOracleParams& params)
{
    return std::max(-std::log2(params.p_y), -std::log2(1.0 - params.p_y));
}

double alpha_y_width(const BinomialOracleParams& params)
{
    return std::abs(std::log1p(-params.p_y) - std::log(params.p_y)) / kLn2;
}

double q_from_alpha_y(const BinomialOracleParams& params, double alpha_y)
{
    if (!(alpha_y > alpha_y_min(params) && alpha_y < alpha_y_max(params)))
        throw ParameterError("alpha_y must lie strictly inside the open interval "
                             "(alpha_y_min, alpha_y_max); the limits are attained "
                             "only asymptotically");
    const double a = std::log(params.p_y);
    const double b = std::log1p(-params.p_y);
    // alpha_y = -(a + R b) / ((1 + R) ln 2) with R = [(1-p_y)/p_y]^Q
    const double ratio = -(a + alpha_y * kLn2) / (b + alpha_y * kLn2);
    return std::log(ratio) / (b - a);
}

bool RelationReport::all_pass() const noexcept
{
    return std::all_of(checks.begin(), checks.end(),
                       [](const RelationCheck& c) { return c.pass; });
}

RelationReport relation_suite(const BinomialOracleParams& params, const MomentGrid& grid)
{
    RelationReport report;

    // tau and f averaging along the diagonal. Exact when p_x = p_y; for
    // distinct multipliers the shared-branch construction makes the joint
    // moment sum strictly smaller than the Cauchy-Schwarz bound, so a
    // finite gap remains. The check reports the measured gap either way.
    double tau_gap = 0.0, f_gap = 0.0;
    for (double q : grid.q_values) {
        const double tau_avg = 0.5 * (tau_single_analytic(params.p_x, q) +
                                      tau_single_analytic(params.p_y, q));
        tau_gap = std::max(tau_gap, std::abs(tau_xy_analytic(params, q, q) - tau_avg));

        const auto f_single = [](double p, double q_ord) {
            const double a = std::log(p);
            const double b = std::log1p(-p);
            const double hi = std::max(q_ord * a, q_ord * b);
            const double ea = std::exp(q_ord * a - hi);
            const double eb = std::exp(q_ord * b - hi);
            const double alpha = -(ea * a + eb * b) / ((ea + eb) * kLn2);
            return q_ord * alpha - tau_single_analytic(p, q_ord);
        };
        const double f_avg = 0.5 * (f_single(params.p_x, q) + f_single(params.p_y, q));
        f_gap = std::max(f_gap, std::abs(f_analytic(params, params.combined_order(q, q)) -
                                         f_avg));
    }
    report.checks.push_back({"tau diagonal averaging", tau_gap <= 1e-12, tau_gap});
    report.checks.push_back({"f diagonal averaging", f_gap <= 1e-12, f_gap});

    // strict monotonicity of alpha_y(Q)
    {
        bool mono = true;
        double worst = 0.0;
        double prev = alpha_y_analytic(params, grid.q_values.front());
        for (std::size_t i = 1; i < grid.nq(); ++i) {
            const double cur = alpha_y_analytic(params, grid.q_values[i]);
            if (!(cur < prev)) {
                mono = false;
                worst = std::max(worst, cur - prev);
            }
            prev = cur;
        }
        report.checks.push_back({"alpha_y strictly decreasing in Q", mono, worst});
    }

    // d alpha_x / dQ carries the sign of -beta
    {
        const double h = 0.5 * grid.spacing;
        bool ok = true;
        double worst = 0.0;
        for (double q : grid.q_values) {
            const double d = (params.gamma / kLn2 + params.beta * alpha_y_analytic(params, q + h)) -
                             (params.gamma / kLn2 + params.beta * alpha_y_analytic(params, q - h));
            const double expected_sign = params.beta > 0.0 ? -1.0 : 1.0;
            if (d * expected_sign < 0.0) {
                ok = false;
                worst = std::max(worst, std::abs(d));
            }
        }
        report.checks.push_back({"sign(d alpha_x/dQ) = -sign(beta)", ok, worst});
    }

    // f increases for Q < 0, decreases for Q > 0, peaking at f(0) = 1
    {
        bool ok = std::abs(f_analytic(params, 0.0) - 1.0) <= 1e-12;
        double worst = std::abs(f_analytic(params, 0.0) - 1.0);
        double prev = f_analytic(params, grid.q_values.front());
        for (std::size_t i = 1; i < grid.nq(); ++i) {
            const double q = grid.q_values[i];
            const double cur = f_analytic(params, q);
            const bool rising = q <= 0.0;
            if (rising ? !(cur > prev) : !(cur < prev)) {
                ok = false;
                worst = std::max(worst, std::abs(cur - prev));
            }
            prev = cur;
        }
        report.checks.push_back({"f unimodal with maximum 1 at Q = 0", ok, worst});
    }

    return report;
}

ExponentSurfaces oracle_surfaces(const BinomialOracleParams& params, const MomentGrid& grid)
{
    grid.validate();
    ExponentSurfaces out;
    out.grid = grid;
    out.tau.resize(grid.cells());
    out.alpha_x.resize(grid.cells());
    out.alpha_y.resize(grid.cells());
    out.f.resize(grid.cells());
    out.diagnostics.resize(grid.cells());
    for (std::size_t pi = 0; pi < grid.np(); ++pi) {
        const double p = grid.p_values[pi];
        for (std::size_t qi = 0; qi < grid.nq(); ++qi) {
            const double q = grid.q_values[qi];
            const std::size_t c = grid.index(pi, qi);
            out.tau[c] = tau_xy_analytic(params, p, q);
            const auto [ax, ay] = alpha_analytic(params, p, q);
            out.alpha_x[c] = ax;
            out.alpha_y[c] = ay;
            out.f[c] = f_analytic(params, params.combined_order(p, q));
        }
    }
    return out;
}

} // namespace mfxpf
