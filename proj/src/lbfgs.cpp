#include "poegp/lbfgs.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace poegp {

namespace {

struct LinePoint {
    double a = 0.0;   // step length
    double f = 0.0;   // phi(a)
    double df = 0.0;  // phi'(a) = grad(x + a d) . d
    Eigen::VectorXd x;
    Eigen::VectorXd grad;
};

// Minimizer of the cubic Hermite interpolant through two line points,
// safeguarded to the interior of the bracket.
double cubic_step(const LinePoint& p0, const LinePoint& p1) {
    const double lo = std::min(p0.a, p1.a);
    const double hi = std::max(p0.a, p1.a);
    const double width = hi - lo;
    double a = lo + 0.5 * width;
    const double d1 = p0.df + p1.df - 3.0 * (p0.f - p1.f) / (p0.a - p1.a);
    const double disc = d1 * d1 - p0.df * p1.df;
    if (disc >= 0.0) {
        double s = std::sqrt(disc);
        if (p1.a < p0.a) s = -s;
        const double denom = p1.df - p0.df + 2.0 * s;
        if (denom != 0.0) {
            const double cand = p1.a - (p1.a - p0.a) * (p1.df + s - d1) / denom;
            if (std::isfinite(cand)) a = cand;
        }
    }
    const double margin = 0.1 * width;
    if (!(a >= lo + margin && a <= hi - margin)) a = lo + 0.5 * width;
    return a;
}

class LineSearch {
public:
    LineSearch(const ObjectiveFn& fg, const Eigen::VectorXd& x0, const Eigen::VectorXd& d,
               double f0, double df0, const LbfgsOptions& opts)
        : fg_(fg), x0_(x0), d_(d), f0_(f0), df0_(df0), opts_(opts) {}

    LinePoint eval(double a) {
        LinePoint p;
        p.a = a;
        p.x = x0_ + a * d_;
        p.grad.resize(x0_.size());
        p.f = fg_(p.x, p.grad);
        p.df = std::isfinite(p.f) ? p.grad.dot(d_) : 0.0;
        ++evals_;
        return p;
    }

    bool armijo(const LinePoint& p) const {
        return std::isfinite(p.f) && p.f <= f0_ + opts_.wolfe_c1 * p.a * df0_;
    }
    bool curvature(const LinePoint& p) const {
        return std::abs(p.df) <= -opts_.wolfe_c2 * df0_;
    }

    // Strong-Wolfe search; returns true on success (Wolfe or at least a
    // sufficient-decrease point when the zoom budget runs out).
    bool run(double a_init, LinePoint& out) {
        LinePoint prev;
        prev.a = 0.0;
        prev.f = f0_;
        prev.df = df0_;
        double a = a_init;
        for (int i = 0; i < opts_.max_line_search; ++i) {
            LinePoint cur = eval(a);
            if (!armijo(cur) || (i > 0 && cur.f >= prev.f)) return zoom(prev, cur, out);
            if (curvature(cur)) {
                out = std::move(cur);
                return true;
            }
            if (cur.df >= 0.0) return zoom(cur, prev, out);
            prev = std::move(cur);
            a = std::min(2.5 * a, 1e10);
        }
        // Expanded all the way without bracketing; the last point decreases f.
        out = std::move(prev);
        return out.a > 0.0;
    }

private:
    bool zoom(LinePoint lo, LinePoint hi, LinePoint& out) {
        // Invariant: lo satisfies Armijo and has the lowest f seen.
        for (int i = 0; i < opts_.max_line_search && evals_ < 4 * opts_.max_line_search; ++i) {
            if (std::abs(hi.a - lo.a) < 1e-14 * std::max(1.0, std::abs(lo.a))) break;
            LinePoint cur = eval(cubic_step(lo, hi));
            if (!armijo(cur) || cur.f >= lo.f) {
                hi = std::move(cur);
                continue;
            }
            if (curvature(cur)) {
                out = std::move(cur);
                return true;
            }
            if (cur.df * (hi.a - lo.a) >= 0.0) hi = lo;
            lo = std::move(cur);
        }
        if (lo.a > 0.0 && armijo(lo)) {
            out = std::move(lo);  // decrease without curvature; still usable
            return true;
        }
        return false;
    }

    const ObjectiveFn& fg_;
    const Eigen::VectorXd& x0_;
    const Eigen::VectorXd& d_;
    double f0_, df0_;
    const LbfgsOptions& opts_;
    int evals_ = 0;
};

}  // namespace

LbfgsResult lbfgs_minimize(const ObjectiveFn& fg, const Eigen::VectorXd& x0,
                           const LbfgsOptions& opts) {
    LbfgsResult res;
    res.x = x0;
    res.grad.resize(x0.size());
    res.fx = fg(res.x, res.grad);
    res.trace.push_back(res.fx);
    if (!std::isfinite(res.fx)) {
        res.line_search_failed = true;
        return res;
    }
    if (res.grad.lpNorm<Eigen::Infinity>() <= opts.grad_tol) {
        res.converged = true;
        return res;
    }

    std::deque<Eigen::VectorXd> s_hist, y_hist;
    std::deque<double> rho_hist;

    for (int k = 0; k < opts.max_iters; ++k) {
        // Two-loop recursion for d = -H g.
        Eigen::VectorXd q = res.grad;
        const int m = static_cast<int>(s_hist.size());
        std::vector<double> alpha(m);
        for (int i = m - 1; i >= 0; --i) {
            alpha[i] = rho_hist[i] * s_hist[i].dot(q);
            q -= alpha[i] * y_hist[i];
        }
        if (m > 0) q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
        for (int i = 0; i < m; ++i) {
            const double beta = rho_hist[i] * y_hist[i].dot(q);
            q += (alpha[i] - beta) * s_hist[i];
        }
        Eigen::VectorXd d = -q;

        double dg = d.dot(res.grad);
        if (!(dg < 0.0)) {  // not a descent direction; fall back to steepest descent
            d = -res.grad;
            dg = -res.grad.squaredNorm();
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
        }
        const double a_init =
            s_hist.empty() ? std::min(1.0, 1.0 / std::max(1e-12, res.grad.norm())) : 1.0;

        LineSearch ls(fg, res.x, d, res.fx, dg, opts);
        LinePoint accepted;
        if (!ls.run(a_init, accepted)) {
            res.line_search_failed = true;
            break;
        }

        Eigen::VectorXd s = accepted.x - res.x;
        Eigen::VectorXd y = accepted.grad - res.grad;
        const double sy = s.dot(y);
        if (sy > 1e-10 * s.norm() * y.norm()) {
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(y));
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > opts.history) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }

        res.x = std::move(accepted.x);
        res.fx = accepted.f;
        res.grad = std::move(accepted.grad);
        res.iterations = k + 1;
        res.trace.push_back(res.fx);
        if (res.grad.lpNorm<Eigen::Infinity>() <= opts.grad_tol) {
            res.converged = true;
            break;
        }
    }
    return res;
}

}  // namespace poegp
