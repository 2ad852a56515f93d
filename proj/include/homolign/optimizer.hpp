#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "homolign/objective.hpp"
#include "homolign/weights.hpp"

namespace homolign {

// Euclidean projection onto {x >= 0, sum x <= 1}.  Clip first; if the
// clipped point still oversteps the simplex face, apply the sorted
// thresholding rule for the unit simplex.  A final deterministic fix-up
// removes any one-ulp overshoot so the constraints hold exactly (the
// reconstructed last weight 1 - sum must be non-negative).
inline std::vector<double> project_feasible(std::vector<double> x) {
    for (auto& v : x) v = std::max(v, 0.0);
    double s = std::accumulate(x.begin(), x.end(), 0.0);
    if (s > 1.0) {
        std::vector<double> u = x;
        std::sort(u.begin(), u.end(), std::greater<double>());
        double csum = 0.0, theta = 0.0;
        int rho = 0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            csum += u[j];
            double t = (csum - 1.0) / static_cast<double>(j + 1);
            if (u[j] - t > 0.0) {
                rho = static_cast<int>(j + 1);
                theta = t;
            }
        }
        (void)rho;
        for (auto& v : x) v = std::max(v - theta, 0.0);
        s = std::accumulate(x.begin(), x.end(), 0.0);
    }
    // exact-feasibility fix-up (at most a few ulps of adjustment)
    int guard = 0;
    while (s > 1.0 && guard++ < 8) {
        auto it = std::max_element(x.begin(), x.end());
        *it -= (s - 1.0);
        if (*it < 0.0) *it = 0.0;
        s = std::accumulate(x.begin(), x.end(), 0.0);
    }
    return x;
}

struct optimize_options {
    double tol = 1e-8;   // projected-gradient norm threshold
    int max_iter = 0;    // 0 = 10 * dim^2
};

struct optimize_result {
    weight_vector omega;  // all n entries, last reconstructed
    bool converged = false;
    int iterations = 0;
    double objective = 0.0;
    double grad_norm = 0.0;           // projected-gradient norm at exit
    std::vector<double> f_history;    // accepted f values, non-decreasing
};

// Maximize the quadratic objective over the feasible polytope with an
// active-set method on the full probability simplex (the free coordinates
// plus their slack 1 - sum).  Within the face spanned by the currently
// positive coordinates the objective is an unconstrained quadratic, so
// conjugate-gradient steps take their exact closed-form length; a step
// that would leave the face is clipped at the first blocking bound and the
// blocker is pinned at exact zero.  A pinned bound is released only when
// its multiplier promises ascent.  Along directions of non-negative
// curvature the step rides to the blocking bound, so convex pieces drive
// the iterate to a vertex instead of stalling.  The iterate sequence
// ascends monotonically; if the iteration cap is reached before the
// stationarity test passes, the best iterate is returned with
// converged=false.
inline optimize_result optimize_weights(const quadratic_objective& obj,
                                        const optimize_options& opts = {}) {
    int dim = obj.dim;
    int max_iter = opts.max_iter > 0 ? opts.max_iter : 10 * dim * dim;
    std::size_t n = static_cast<std::size_t>(dim) + 1;
    const double inf = std::numeric_limits<double>::infinity();

    // simplex coordinates: w[0..dim) are the free weights, w[dim] the slack
    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    std::vector<char> in_face(n, 1);  // coordinates currently allowed to move

    std::vector<double> x(w.begin(), w.end() - 1);
    double f = evaluate(obj, x);

    auto proj_grad_norm = [&](const std::vector<double>& xx,
                              const std::vector<double>& gg) {
        std::vector<double> y(xx);
        for (int i = 0; i < dim; ++i) y[i] += gg[i];
        y = project_feasible(y);
        double s = 0.0;
        for (int i = 0; i < dim; ++i) {
            double diff = y[i] - xx[i];
            s += diff * diff;
        }
        return std::sqrt(s);
    };

    // Stationarity at double precision: the largest gain a step from this
    // projected-gradient size can certify is below the representable
    // change in f, so no accepted step can move f.
    auto machine_stationary = [](double pg, double fv) {
        return 1e-4 * pg * pg <= 2.220446049250313e-16 * (1.0 + std::fabs(fv));
    };

    // v^T H v for the Hessian H = 2Q embedded in simplex coordinates (the
    // slack row and column are zero: the score ignores the slack)
    auto hess_curv = [&](const std::vector<double>& v) {
        double c = 0.0;
        for (int i = 0; i < dim; ++i) {
            double s = 0.0;
            for (int j = 0; j < dim; ++j)
                s += obj.Q[static_cast<std::size_t>(i) * dim + j] * v[j];
            c += 2.0 * s * v[i];
        }
        return c;
    };

    // distance to the first bound blocking a move along v from w
    auto hit_time = [&](const std::vector<double>& v) {
        double t = inf;
        for (std::size_t i = 0; i < n; ++i)
            if (in_face[i] && v[i] < 0.0) t = std::min(t, w[i] / (-v[i]));
        return t;
    };

    optimize_result out;
    out.f_history.push_back(f);

    std::vector<double> G(n, 0.0), r(n, 0.0), r_prev(n, 0.0), d(n, 0.0);
    bool have_dir = false;
    int it = 0;
    while (it < max_iter) {
        x.assign(w.begin(), w.end() - 1);
        std::vector<double> g = gradient(obj, x);
        double pg = proj_grad_norm(x, g);
        if (pg <= opts.tol) {
            out.converged = true;
            break;
        }
        for (int i = 0; i < dim; ++i) G[i] = g[i];
        G[n - 1] = 0.0;

        // residual: G projected on the tangent of the current face
        double mean = 0.0;
        int nf = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (in_face[i]) {
                mean += G[i];
                ++nf;
            }
        mean /= static_cast<double>(nf);  // nf >= 1: the weights sum to one
        double rn2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = in_face[i] ? G[i] - mean : 0.0;
            rn2 += r[i] * r[i];
        }

        // the face is exhausted once the residual meets the tolerance or
        // the best certifiable gain of a steepest exact step falls below
        // the representable change in f
        bool face_done = rn2 <= 0.25 * opts.tol * opts.tol;
        if (!face_done && rn2 > 0.0) {
            double curv_r = hess_curv(r);
            double t_sd = hit_time(r);
            if (curv_r < 0.0) t_sd = std::min(t_sd, rn2 / (-curv_r));
            double pred = t_sd * rn2 + 0.5 * t_sd * t_sd * curv_r;
            face_done = pred <= 4.440892098500626e-16 * (1.0 + std::fabs(f));
        }
        if (face_done) {
            // release the pinned bound with the largest multiplier, or
            // accept the point as a constrained maximum
            int best = -1;
            double best_mu = opts.tol;
            for (std::size_t i = 0; i < n; ++i) {
                if (in_face[i]) continue;
                double mu = G[i] - mean;
                if (mu > best_mu) {
                    best_mu = mu;
                    best = static_cast<int>(i);
                }
            }
            if (best < 0) {
                out.converged = true;
                break;
            }
            in_face[best] = 1;
            have_dir = false;
            ++it;
            continue;
        }

        // conjugate direction (Polak-Ribiere, restarted on face changes)
        if (have_dir) {
            double denom = 0.0, num = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                denom += r_prev[i] * r_prev[i];
                num += r[i] * (r[i] - r_prev[i]);
            }
            double beta = denom > 0.0 ? std::max(0.0, num / denom) : 0.0;
            for (std::size_t i = 0; i < n; ++i) d[i] = r[i] + beta * d[i];
        } else {
            d = r;
        }
        double rd = 0.0;
        for (std::size_t i = 0; i < n; ++i) rd += r[i] * d[i];
        if (rd <= 0.0) {
            d = r;
            rd = rn2;
        }

        // exact maximizing step along d, clipped at the first bound
        double curv = hess_curv(d);
        double t_hit = hit_time(d);
        double t = curv < 0.0 ? std::min(rd / (-curv), t_hit) : t_hit;
        if (!(t > 0.0)) {
            // a coordinate released at zero is pushed straight back: pin it
            for (std::size_t i = 0; i < n; ++i)
                if (in_face[i] && w[i] <= 0.0 && d[i] < 0.0) {
                    w[i] = 0.0;
                    in_face[i] = 0;
                }
            have_dir = false;
            ++it;
            continue;
        }

        bool hits = t == t_hit;
        std::vector<double> w_try(n);
        double f_try = f;
        bool accepted = false;
        for (int half = 0; half < 60; ++half) {
            w_try = w;
            bool moved = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (!in_face[i]) continue;
                double v = w[i] + t * d[i];
                // a full-length blocking step lands on the bound: pin it
                // at exact zero (rounding leaves at most ~1e-16 residue)
                if (hits && v < 1e-14) v = 0.0;
                if (v < 0.0) v = 0.0;
                if (v != w[i]) moved = true;
                w_try[i] = v;
            }
            if (!moved) break;
            x.assign(w_try.begin(), w_try.end() - 1);
            f_try = evaluate(obj, x);
            if (f_try >= f) {
                accepted = true;
                break;
            }
            t *= 0.5;
            hits = false;  // halved steps stay interior
        }
        if (!accepted) {
            // rounding blocks every ascent step along the best direction
            out.converged = pg <= opts.tol || machine_stationary(pg, f);
            ++it;
            break;
        }

        bool face_changed = false;
        for (std::size_t i = 0; i < n; ++i)
            if (in_face[i] && w_try[i] == 0.0) {
                in_face[i] = 0;
                face_changed = true;
            }
        w.swap(w_try);
        f = f_try;
        out.f_history.push_back(f);
        ++it;
        if (face_changed) {
            have_dir = false;
        } else {
            r_prev = r;
            have_dir = true;
        }
    }

    // tangent steps preserve the weight sum only to rounding; shave the
    // few-ulp drift so the returned point is exactly feasible
    x = project_feasible(std::vector<double>(w.begin(), w.end() - 1));
    std::vector<double> g = gradient(obj, x);
    out.iterations = it;
    out.objective = f;
    out.grad_norm = proj_grad_norm(x, g);
    out.omega = weight_vector::from_free(x);
    return out;
}

}  // namespace homolign
