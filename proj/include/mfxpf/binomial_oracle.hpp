#pragma once

#include "mfxpf/grid.hpp"
#include "mfxpf/regression.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mfxpf {

/// Closed-form joint spectrum of a deterministic binomial cascade pair.
/// beta and gamma tie the two measures together cellwise:
/// m_x = e^(-gamma L) s^(gamma/ln 2) m_y^beta. All spectrum functions
/// reduce to one dimension through the combined order Q = beta p/2 + q/2.
struct BinomialOracleParams {
    double p_x = 0.0;
    double p_y = 0.0;
    double beta = 0.0;
    double gamma = 0.0;

    double combined_order(double p, double q) const noexcept {
        return 0.5 * beta * p + 0.5 * q;
    }
};

/// p_y = 0.5 is rejected: beta is undefined there and the y measure is
/// uniform (neither multifractal nor monofractal).
BinomialOracleParams make_params(double p_x, double p_y);

/// tau(Q) = -ln[p^Q + (1-p)^Q] / ln 2 for a single cascade with
/// multiplier p. Evaluated in log space, stable for |Q| far beyond 700.
double tau_single_analytic(double p, double q_order);

double tau_y_analytic(const BinomialOracleParams& params, double q_order);

/// tau_xy(p,q) = p gamma / (2 ln 2) + tau_y(Q).
double tau_xy_analytic(const BinomialOracleParams& params, double p, double q);

/// alpha_y at combined order Q, and alpha_x = gamma/ln 2 + beta alpha_y.
double alpha_y_analytic(const BinomialOracleParams& params, double q_order);
std::pair<double, double> alpha_analytic(const BinomialOracleParams& params, double p,
                                         double q);

/// Closed-form spectrum f(Q) = Q alpha_y(Q) - tau_y(Q); f(0) = 1,
/// f(Q) = f(-Q), f -> 0 as Q -> +/-inf.
double f_analytic(const BinomialOracleParams& params, double q_order);

double alpha_y_min(const BinomialOracleParams& params);
double alpha_y_max(const BinomialOracleParams& params);
double alpha_y_width(const BinomialOracleParams& params);

/// Invert alpha_y(Q). alpha_y must lie strictly inside
/// (alpha_y_min, alpha_y_max); the limits are attained only asymptotically.
double q_from_alpha_y(const BinomialOracleParams& params, double alpha_y);

/// Self-consistency checks of the closed forms over a moment grid.
struct RelationCheck {
    std::string name;
    bool pass = false;
    double max_err = 0.0;
};

struct RelationReport {
    std::vector<RelationCheck> checks;
    bool all_pass() const noexcept;
};

RelationReport relation_suite(const BinomialOracleParams& params, const MomentGrid& grid);

/// Analytic tau/alpha/f surfaces on a grid, in the same layout as the
/// estimated surfaces so the two can be diffed cell by cell or file level.
ExponentSurfaces oracle_surfaces(const BinomialOracleParams& params,
                                 const MomentGrid& grid);

} // namespace mfxpf
