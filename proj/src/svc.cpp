#include <cmath>
#include <cstddef>
#include <vector>

#include "fqgate/classifiers.hpp"
#include "fqgate/rng.hpp"
#include "scoring_internal.hpp"

namespace fqgate {

namespace {

double rbf(const FeatureVector& a, const FeatureVector& b, double gamma) {
    double d_sq = 0.0;
    for (std::size_t d = 0; d < FeatureVector::kDim; ++d) {
        const double diff = a.values[d] - b.values[d];
        d_sq += diff * diff;
    }
    return std::exp(-gamma * d_sq);
}

// 1 / (1 + e^t) without overflow.
double inverse_logit(double t) {
    if (t >= 0.0) {
        const double e = std::exp(-t);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(t));
}

// Sequential minimal optimization over the dual problem. The error cache
// covers every training point and is updated exactly on each step, so the
// stopping rule sees true KKT violations, not stale estimates.
struct Smo {
    static constexpr double kStepEps = 1e-5;
    static constexpr double kAlphaSnap = 1e-10;
    static constexpr long long kRecomputeEvery = 2000;

    const std::vector<FeatureVector>& x;
    const std::vector<int>& y;  // +1 / -1
    double c;
    double gamma;
    double tol;  // examine-time tolerance, slightly inside the reported one
    std::vector<double> alpha;
    std::vector<double> error;  // f(x_i) - y_i
    double bias = 0.0;
    long long steps = 0;
    Rng rng;

    Smo(const std::vector<FeatureVector>& x_, const std::vector<int>& y_, const SvcConfig& cfg,
        std::uint64_t seed)
        : x(x_),
          y(y_),
          c(cfg.c),
          gamma(cfg.gamma),
          tol(0.8 * cfg.tolerance),
          alpha(x_.size(), 0.0),
          error(x_.size()),
          rng(seed) {
        for (std::size_t i = 0; i < x.size(); ++i) error[i] = -static_cast<double>(y[i]);
    }

    std::size_t size() const { return x.size(); }
    double kernel(std::size_t i, std::size_t j) const { return rbf(x[i], x[j], gamma); }
    bool non_bound(std::size_t i) const { return alpha[i] > 0.0 && alpha[i] < c; }

    void recompute_errors() {
        std::vector<std::size_t> active;
        for (std::size_t j = 0; j < size(); ++j)
            if (alpha[j] > 0.0) active.push_back(j);
        for (std::size_t m = 0; m < size(); ++m) {
            double f = bias;
            for (std::size_t j : active) f += alpha[j] * y[j] * kernel(j, m);
            error[m] = f - y[m];
        }
    }

    bool take_step(std::size_t i1, std::size_t i2) {
        if (i1 == i2) return false;
        const double alph1 = alpha[i1], alph2 = alpha[i2];
        const double y1 = y[i1], y2 = y[i2];
        const double e1 = error[i1], e2 = error[i2];
        const double s = y1 * y2;

        double lo, hi;
        if (y[i1] != y[i2]) {
            lo = std::max(0.0, alph2 - alph1);
            hi = std::min(c, c + alph2 - alph1);
        } else {
            lo = std::max(0.0, alph1 + alph2 - c);
            hi = std::min(c, alph1 + alph2);
        }
        if (lo >= hi) return false;

        const double k11 = kernel(i1, i1), k12 = kernel(i1, i2), k22 = kernel(i2, i2);
        const double eta = k11 + k22 - 2.0 * k12;

        double a2;
        if (eta > 0.0) {
            a2 = alph2 + y2 * (e1 - e2) / eta;
            a2 = std::min(hi, std::max(lo, a2));
        } else {
            // Duplicate points make eta collapse; compare the objective at both ends.
            const double f1 = y1 * (e1 - bias) - alph1 * k11 - s * alph2 * k12;
            const double f2 = y2 * (e2 - bias) - s * alph1 * k12 - alph2 * k22;
            const double l1 = alph1 + s * (alph2 - lo);
            const double h1 = alph1 + s * (alph2 - hi);
            const double lo_obj =
                l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 + 0.5 * lo * lo * k22 + s * lo * l1 * k12;
            const double hi_obj =
                h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 + 0.5 * hi * hi * k22 + s * hi * h1 * k12;
            if (lo_obj < hi_obj - kStepEps) a2 = lo;
            else if (lo_obj > hi_obj + kStepEps) a2 = hi;
            else a2 = alph2;
        }
        if (std::abs(a2 - alph2) < kStepEps * (a2 + alph2 + kStepEps)) return false;

        double a1 = alph1 + s * (alph2 - a2);
        if (a1 < kAlphaSnap) a1 = 0.0;
        else if (a1 > c - kAlphaSnap) a1 = c;

        const double da1 = a1 - alph1, da2 = a2 - alph2;
        const double b1 = bias - e1 - y1 * da1 * k11 - y2 * da2 * k12;
        const double b2 = bias - e2 - y1 * da1 * k12 - y2 * da2 * k22;
        double b_new;
        if (a1 > 0.0 && a1 < c) b_new = b1;
        else if (a2 > 0.0 && a2 < c) b_new = b2;
        else b_new = 0.5 * (b1 + b2);
        const double db = b_new - bias;

        bias = b_new;
        alpha[i1] = a1;
        alpha[i2] = a2;
        for (std::size_t m = 0; m < size(); ++m)
            error[m] += y1 * da1 * kernel(i1, m) + y2 * da2 * kernel(i2, m) + db;

        ++steps;
        if (steps % kRecomputeEvery == 0) recompute_errors();  // shed fp drift
        return true;
    }

    bool examine(std::size_t i2) {
        const double y2 = y[i2], alph2 = alpha[i2], e2 = error[i2];
        const double r2 = e2 * y2;
        const bool violates = (r2 < -tol && alph2 < c) || (r2 > tol && alph2 > 0.0);
        if (!violates) return false;

        // Second choice: widest |E1 - E2| over non-bound points, lowest index on ties.
        std::size_t best = size();
        double best_gap = -1.0;
        std::size_t non_bound_count = 0;
        for (std::size_t i = 0; i < size(); ++i) {
            if (!non_bound(i)) continue;
            ++non_bound_count;
            const double gap = std::abs(error[i] - e2);
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (non_bound_count > 1 && take_step(best, i2)) return true;

        std::size_t start = rng.index(size());
        for (std::size_t t = 0; t < size(); ++t) {
            const std::size_t i1 = (start + t) % size();
            if (non_bound(i1) && take_step(i1, i2)) return true;
        }
        start = rng.index(size());
        for (std::size_t t = 0; t < size(); ++t) {
            const std::size_t i1 = (start + t) % size();
            if (take_step(i1, i2)) return true;
        }
        return false;
    }

    // Returns false when the examine budget ran out first.
    bool run(long long examine_cap) {
        bool examine_all = true;
        long long num_changed = 0;
        long long examines = 0;
        while (num_changed > 0 || examine_all) {
            num_changed = 0;
            for (std::size_t i = 0; i < size(); ++i) {
                if (!examine_all && !non_bound(i)) continue;
                if (examines >= examine_cap) return false;
                ++examines;
                if (examine(i)) ++num_changed;
            }
            if (examine_all) examine_all = false;
            else if (num_changed == 0) examine_all = true;
        }
        return true;
    }
};

// Sigmoid fit of P(High | f) on training decision values: Newton steps with
// backtracking on the smoothed-target cross-entropy (no held-out pass).
void fit_platt(const std::vector<double>& f, const std::vector<int>& y, double& slope,
               double& intercept) {
    const std::size_t n = f.size();
    double prior1 = 0.0;
    for (int label : y) prior1 += label;
    const double prior0 = static_cast<double>(n) - prior1;
    const double hi_target = (prior1 + 1.0) / (prior1 + 2.0);
    const double lo_target = 1.0 / (prior0 + 2.0);

    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = y[i] == 1 ? hi_target : lo_target;

    double a = 0.0;
    double b = std::log((prior0 + 1.0) / (prior1 + 1.0));

    auto objective = [&](double aa, double bb) {
        double val = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double z = f[i] * aa + bb;
            if (z >= 0.0) val += t[i] * z + std::log1p(std::exp(-z));
            else val += (t[i] - 1.0) * z + std::log1p(std::exp(z));
        }
        return val;
    };

    double fval = objective(a, b);
    constexpr int kMaxIter = 100;
    constexpr double kMinStep = 1e-10;
    constexpr double kSigma = 1e-12;
    constexpr double kEps = 1e-5;
    for (int it = 0; it < kMaxIter; ++it) {
        double h11 = kSigma, h22 = kSigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double z = f[i] * a + b;
            const double p = inverse_logit(z);  // P(High)
            const double q = 1.0 - p;
            const double d2 = p * q;
            h11 += f[i] * f[i] * d2;
            h22 += d2;
            h21 += f[i] * d2;
            const double d1 = t[i] - p;
            g1 += f[i] * d1;
            g2 += d1;
        }
        if (std::abs(g1) < kEps && std::abs(g2) < kEps) break;

        const double det = h11 * h22 - h21 * h21;
        const double da = -(h22 * g1 - h21 * g2) / det;
        const double db = -(-h21 * g1 + h11 * g2) / det;
        const double gd = g1 * da + g2 * db;
        double step = 1.0;
        while (step >= kMinStep) {
            const double na = a + step * da, nb = b + step * db;
            const double nf = objective(na, nb);
            if (nf < fval + 1e-4 * step * gd) {
                a = na;
                b = nb;
                fval = nf;
                break;
            }
            step *= 0.5;
        }
        if (step < kMinStep) break;
    }
    slope = a;
    intercept = b;
}

}  // namespace

double svc_decision_value(const SvcParams& p, const FeatureVector& fv) {
    double f = p.bias;
    for (std::size_t j = 0; j < p.support_vectors.size(); ++j)
        f += p.dual_coefficients[j] * rbf(p.support_vectors[j], fv, p.gamma);
    return f;
}

SvcTrainResult train_svc(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                         const SvcConfig& cfg, std::uint64_t seed) {
    const std::size_t n = x.size();
    std::vector<int> signs(n);
    for (std::size_t i = 0; i < n; ++i) signs[i] = y[i] == 1 ? 1 : -1;

    Smo smo(x, signs, cfg, seed);
    const long long cap = 10LL * static_cast<long long>(n) * static_cast<long long>(n);
    const bool converged = smo.run(cap);

    SvcTrainResult result;
    result.converged = converged;
    result.alphas = smo.alpha;
    result.y_signs = signs;
    result.params.gamma = cfg.gamma;
    result.params.bias = smo.bias;
    for (std::size_t i = 0; i < n; ++i) {
        if (smo.alpha[i] > 0.0) {
            result.params.support_vectors.push_back(x[i]);
            result.params.dual_coefficients.push_back(smo.alpha[i] * signs[i]);
        }
    }

    std::vector<double> decisions(n);
    for (std::size_t i = 0; i < n; ++i) decisions[i] = svc_decision_value(result.params, x[i]);
    fit_platt(decisions, y, result.params.platt_slope, result.params.platt_intercept);
    return result;
}

namespace detail {

double svc_score(const SvcParams& p, const FeatureVector& fv) {
    const double f = svc_decision_value(p, fv);
    return inverse_logit(p.platt_slope * f + p.platt_intercept);
}

}  // namespace detail

}  // namespace fqgate
