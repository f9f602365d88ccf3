#include "stress.hpp"

#include <cmath>

#include "rng.hpp"

namespace spx {

double stress_value(const Layout& l, const DistanceMatrix& dm) {
    const int n = l.size();
    double s = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dist = norm(l[i] - l[j]);
            const double r = dist - dm.dist(i, j);
            s += dm.weight(i, j) * r * r;
        }
    }
    return s;
}

// Displace the higher-index vertex of each exactly coincident pair by 1e-9 in
// a direction derived from the pair, so the gradient is defined everywhere
// and identical across runs.
static Layout resolve_coincidences(const Layout& l, int* jitter_count) {
    const int n = l.size();
    Layout out = l;
    for (int round = 0; round < 4; ++round) {
        bool any = false;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (out[i].x == out[j].x && out[i].y == out[j].y) {
                    const double angle =
                        double(mix64(uint64_t(i) * n + j, uint64_t(round)) >> 11) * 0x1.0p-53 *
                        2 * 3.14159265358979323846;
                    out[j].x += 1e-9 * std::cos(angle);
                    out[j].y += 1e-9 * std::sin(angle);
                    if (jitter_count) ++*jitter_count;
                    any = true;
                }
            }
        }
        if (!any) break;
    }
    return out;
}

Grad stress_gradient(const Layout& l, const DistanceMatrix& dm, int* jitter_count) {
    const int n = l.size();
    bool coincident = false;
    for (int i = 0; i < n && !coincident; ++i)
        for (int j = i + 1; j < n; ++j)
            if (l[i].x == l[j].x && l[i].y == l[j].y) {
                coincident = true;
                break;
            }
    Layout jittered;
    const Layout* base = &l;
    if (coincident) {
        jittered = resolve_coincidences(l, jitter_count);
        base = &jittered;
    }
    const Layout& c = *base;

    Grad grad(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Vec2 delta = c[i] - c[j];
            const double dist = norm(delta);
            const double coef = 2 * dm.weight(i, j) * (dist - dm.dist(i, j)) / dist;
            const Vec2 contrib = delta * coef;
            grad[i] += contrib;
            grad[j] -= contrib;
        }
    }
    return grad;
}

// Dense Cholesky of an SPD matrix, lower factor in place.
static void cholesky(std::vector<double>& a, int n) {
    for (int k = 0; k < n; ++k) {
        double pivot = a[size_t(k) * n + k];
        for (int j = 0; j < k; ++j) pivot -= a[size_t(k) * n + j] * a[size_t(k) * n + j];
        if (pivot <= 0)
            throw Error(ErrorCode::SingularSystem, "majorization system is not positive definite");
        const double lkk = std::sqrt(pivot);
        a[size_t(k) * n + k] = lkk;
        for (int i = k + 1; i < n; ++i) {
            double v = a[size_t(i) * n + k];
            for (int j = 0; j < k; ++j) v -= a[size_t(i) * n + j] * a[size_t(k) * n + j];
            a[size_t(i) * n + k] = v / lkk;
        }
    }
}

static void cholesky_solve(const std::vector<double>& chol, int n, std::vector<double>& rhs) {
    for (int i = 0; i < n; ++i) {
        double v = rhs[i];
        for (int j = 0; j < i; ++j) v -= chol[size_t(i) * n + j] * rhs[j];
        rhs[i] = v / chol[size_t(i) * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double v = rhs[i];
        for (int j = i + 1; j < n; ++j) v -= chol[size_t(j) * n + i] * rhs[j];
        rhs[i] = v / chol[size_t(i) * n + i];
    }
}

static void center(Layout& l) {
    Vec2 mean;
    for (const Point& p : l.pts) mean += p;
    mean = mean * (1.0 / l.size());
    for (Point& p : l.pts) p -= mean;
}

Layout stress_majorize(const Graph& g, const DistanceMatrix& dm, const Layout& init,
                       int max_iters, double tol, std::vector<double>* stress_trace) {
    if (init.size() != g.n)
        throw Error(ErrorCode::InvalidArgument, "layout size does not match the graph");
    const int n = g.n;
    Layout c = init;
    center(c);
    if (n == 1) {
        if (stress_trace) stress_trace->push_back(0);
        return c;
    }

    // Constant weighted Laplacian, made positive definite by adding 1/n to
    // every entry. Right-hand sides below have zero column sums, so solving
    // against the augmented matrix yields the centered solution of the
    // singular system.
    std::vector<double> m(size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        double diag = 0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double w = dm.weight(i, j);
            m[size_t(i) * n + j] = -w;
            diag += w;
        }
        m[size_t(i) * n + i] = diag;
    }
    const double shift = 1.0 / n;
    for (double& x : m) x += shift;
    cholesky(m, n);

    double prev = stress_value(c, dm);
    if (stress_trace) stress_trace->push_back(prev);
    std::vector<double> bx(n), by(n);
    for (int iter = 0; iter < max_iters; ++iter) {
        // majorizer coefficients: -w_ij * d_ij / ||C_i - C_j||, zero distance
        // contributing nothing
        std::fill(bx.begin(), bx.end(), 0.0);
        std::fill(by.begin(), by.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            double rowsum = 0;
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                const double dist = norm(c[i] - c[j]);
                if (dist == 0) continue;
                const double coef = dm.weight(i, j) * dm.dist(i, j) / dist;
                rowsum += coef;
                bx[i] -= coef * c[j].x;
                by[i] -= coef * c[j].y;
            }
            bx[i] += rowsum * c[i].x;
            by[i] += rowsum * c[i].y;
        }
        cholesky_solve(m, n, bx);
        cholesky_solve(m, n, by);
        for (int i = 0; i < n; ++i) {
            c[i].x = bx[i];
            c[i].y = by[i];
        }
        center(c);
        const double cur = stress_value(c, dm);
        if (stress_trace) stress_trace->push_back(cur);
        if (prev == 0 || (prev - cur) / prev < tol) {
            prev = cur;
            break;
        }
        prev = cur;
    }
    return c;
}

} // namespace spx
