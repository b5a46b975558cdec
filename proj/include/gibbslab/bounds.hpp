#pragma once

// The concentration bounds under empirical test, as displayed forms with
// named constants, plus the fitting machinery.  The constants are
// existential, so experiments fit them: an unconstrained least-squares fit of
// -log p_hat against the bound's exponent structure gives the functional-form
// R^2, and an envelope adjustment picks the smallest constant for which the
// bound dominates every empirical point.
//
//   plugin_tail        P(|^H_k/k - E| >= t)    <= 2 exp( -n^{1-a} t^2 / (16 D (log n)^2) )
//   plugin_variance    Var(^H_k/k)             <= 8 D (log n)^2 / n^{1-a}
//   conditional_tail   P(|^h_k - h| >= t+c/n^g) <= 2 exp( -G n^xi t^2 / (log n)^4 )
//   birkhoff_tail      P(|S_n f/n - int f| >= t) <= exp( -B n t^2 ),  B = 1/(4 D |f|_theta^2)
//   waiting_upper      P( (1/n) log W >= h + t ) <= C1 exp( -C2 n t^2 )
//   waiting_lower      P( (1/n) log W <= h - t ) <= C1 exp( -C2 n t )

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "gibbslab/errors.hpp"
#include "gibbslab/stats.hpp"

namespace gibbslab {

enum class BoundKind {
    plugin_tail,
    plugin_variance,
    conditional_tail,
    birkhoff_tail,
    waiting_upper,
    waiting_lower,
};

inline std::string bound_kind_name(BoundKind k) {
    switch (k) {
    case BoundKind::plugin_tail: return "plugin-tail";
    case BoundKind::plugin_variance: return "plugin-variance";
    case BoundKind::conditional_tail: return "conditional-tail";
    case BoundKind::birkhoff_tail: return "birkhoff-tail";
    case BoundKind::waiting_upper: return "waiting-upper";
    case BoundKind::waiting_lower: return "waiting-lower";
    }
    return "?";
}

inline BoundKind bound_kind_from_name(const std::string& name) {
    if (name == "plugin-tail") return BoundKind::plugin_tail;
    if (name == "plugin-variance") return BoundKind::plugin_variance;
    if (name == "conditional-tail") return BoundKind::conditional_tail;
    if (name == "birkhoff-tail") return BoundKind::birkhoff_tail;
    if (name == "waiting-upper") return BoundKind::waiting_upper;
    if (name == "waiting-lower") return BoundKind::waiting_lower;
    throw invalid_input("unknown bound kind '" + name + "'");
}

// Constants a bound may use; only the fields relevant to the kind are read.
struct BoundConstants {
    double D = 1.0;         // plugin_tail / plugin_variance / birkhoff_tail (via B)
    double alpha = 0.5;     // plugin_* schedule exponent
    double Gamma = 1.0;     // conditional_tail prefactor constant
    double xi = 0.0;        // conditional_tail fluctuation exponent
    double gamma = 0.0;     // conditional_tail bias exponent
    double c = 0.0;         // conditional_tail centering offset: event is >= t + c/n^gamma
    double B = 1.0;         // birkhoff_tail exponent constant
    double lipschitz = 1.0; // |f|_theta for birkhoff_tail's D <-> B conversion
    double C1 = 1.0, C2 = 1.0; // waiting_*
};

// The x in p <= pref * exp(-constant * x): the bound's exponent structure
// with the fitted constant divided out.
inline double bound_exponent_x(BoundKind kind, double n, double t, const BoundConstants& k) {
    double ln = std::log(n);
    switch (kind) {
    case BoundKind::plugin_tail:
        return std::pow(n, 1.0 - k.alpha) * t * t / (16.0 * ln * ln);
    case BoundKind::conditional_tail: {
        double eff = t - k.c / std::pow(n, k.gamma);
        if (eff < 0.0) eff = 0.0;
        return std::pow(n, k.xi) * eff * eff / (ln * ln * ln * ln);
    }
    case BoundKind::birkhoff_tail:
        return n * t * t;
    case BoundKind::waiting_upper:
        return n * t * t;
    case BoundKind::waiting_lower:
        return n * t;
    case BoundKind::plugin_variance:
        throw invalid_input("plugin-variance is not a tail bound");
    }
    throw invalid_input("unknown bound kind");
}

// Right-hand side of the named inequality, exactly as displayed.
inline double evaluate_bound(BoundKind kind, double n, double t, const BoundConstants& k) {
    if (!(n > 1.0)) throw invalid_input("evaluate_bound: need n > 1");
    switch (kind) {
    case BoundKind::plugin_tail:
        return 2.0 * std::exp(-bound_exponent_x(kind, n, t, k) / k.D);
    case BoundKind::plugin_variance: {
        double ln = std::log(n);
        return 8.0 * k.D * ln * ln / std::pow(n, 1.0 - k.alpha);
    }
    case BoundKind::conditional_tail:
        return 2.0 * std::exp(-k.Gamma * bound_exponent_x(kind, n, t, k));
    case BoundKind::birkhoff_tail:
        return std::exp(-k.B * bound_exponent_x(kind, n, t, k));
    case BoundKind::waiting_upper:
    case BoundKind::waiting_lower:
        return k.C1 * std::exp(-k.C2 * bound_exponent_x(kind, n, t, k));
    }
    throw invalid_input("unknown bound kind");
}

struct TailPoint {
    double n = 0.0;
    double t = 0.0;
    double p_hat = 0.0;
};

struct FittedBound {
    BoundKind kind = BoundKind::plugin_tail;
    BoundConstants constants;   // fixed inputs merged with the fitted ones
    double r_squared = 0.0;     // of the unconstrained least-squares fit
    std::size_t points_used = 0;
    // Envelope semantics: evaluate_bound(kind, n, t, constants) >= p_hat on
    // every fitted point.  Always true by construction; provenance "fitted".
};

// Fit the free constants of `kind` to empirical tail points.  `fixed`
// supplies the constants that are inputs rather than fit outputs (alpha; the
// conditional-tail exponents and offset; the Lipschitz seminorm).  Points
// with p_hat = 0 carry no log information and are skipped (any positive
// bound dominates them); at least 6 informative points are required.
inline FittedBound fit_constants(const std::vector<TailPoint>& points, BoundKind kind,
                                 const BoundConstants& fixed) {
    if (kind == BoundKind::plugin_variance)
        throw invalid_input("fit_constants: plugin-variance is fitted from variances, not tails");
    double pref = (kind == BoundKind::plugin_tail || kind == BoundKind::conditional_tail) ? 2.0 : 1.0;
    bool affine = (kind == BoundKind::waiting_upper || kind == BoundKind::waiting_lower);

    std::vector<double> xs, ys;
    for (const TailPoint& pt : points) {
        if (!(pt.p_hat >= 0.0 && pt.p_hat <= 1.0))
            throw invalid_input("fit_constants: p_hat outside [0,1]");
        if (pt.p_hat == 0.0) continue;
        double x = bound_exponent_x(kind, pt.n, pt.t, fixed);
        if (x <= 0.0) continue; // inside the offset region: bound is trivially pref
        xs.push_back(x);
        ys.push_back(-std::log(pt.p_hat / pref));
    }
    if (xs.size() < 6)
        throw fit_error("fit_constants: only " + std::to_string(xs.size()) +
                        " informative tail points (need >= 6); grid too degenerate to fit");

    FittedBound out;
    out.kind = kind;
    out.constants = fixed;
    out.points_used = xs.size();

    LinearFit ls = least_squares(xs, ys, affine);
    out.r_squared = ls.r_squared;

    if (affine) {
        if (!(ls.slope > 0.0))
            throw fit_error("fit_constants: tail does not decay in the bound's exponent variable");
        // Keep the fitted decay rate; push the prefactor up until the bound
        // clears every point: C1 = exp(-min_i (y_i - C2 x_i)).
        double m = ys[0] - ls.slope * xs[0];
        for (std::size_t i = 1; i < xs.size(); ++i) m = std::min(m, ys[i] - ls.slope * xs[i]);
        out.constants.C2 = ls.slope;
        out.constants.C1 = std::exp(-m);
    } else {
        // Zero-intercept kinds: the envelope slope is the largest s with
        // s x_i <= y_i for all i, i.e. min y_i / x_i.
        double s = ys[0] / xs[0];
        for (std::size_t i = 1; i < xs.size(); ++i) s = std::min(s, ys[i] / xs[i]);
        if (!(s > 0.0))
            throw fit_error("fit_constants: a tail point exceeds the bound prefactor; no envelope");
        switch (kind) {
        case BoundKind::plugin_tail:
            out.constants.D = 1.0 / s;
            break;
        case BoundKind::conditional_tail:
            out.constants.Gamma = s;
            // D implied through Gamma = (log|A|)^2 / (16 D) is left to the caller.
            break;
        case BoundKind::birkhoff_tail:
            out.constants.B = s;
            out.constants.D = 1.0 / (4.0 * s * fixed.lipschitz * fixed.lipschitz);
            break;
        default:
            break;
        }
    }
    return out;
}

// Smallest single constant D making the variance bound dominate each
// empirical variance, plus the spread of the per-n implied constants
// (max/min ratio): spread near 1 means the (log n)^2 / n^{1-alpha} shape
// matches the data across the grid.
struct VarianceFit {
    double D = 0.0;
    double ratio_spread = 0.0;
    std::vector<double> implied_D; // per grid point, variance / (8 (log n)^2 n^{alpha-1})
};

inline VarianceFit fit_variance_constant(const std::vector<double>& ns,
                                         const std::vector<double>& variances, double alpha) {
    if (ns.size() != variances.size() || ns.size() < 2)
        throw invalid_input("fit_variance_constant: need matching grids with >= 2 points");
    VarianceFit out;
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        double ln = std::log(ns[i]);
        double shape = 8.0 * ln * ln / std::pow(ns[i], 1.0 - alpha);
        double d = variances[i] / shape;
        if (!(d > 0.0)) throw invalid_input("fit_variance_constant: nonpositive variance");
        out.implied_D.push_back(d);
        if (i == 0) {
            lo = hi = d;
        } else {
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
    }
    out.D = hi;             // envelope: dominates every point
    out.ratio_spread = hi / lo;
    return out;
}

} // namespace gibbslab
