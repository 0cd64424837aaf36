#pragma once

// Brute-force reference computations used only by the tests. They share no
// code with the library beyond the number types.

#include "tropirrat/arith.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using tropirrat::Int;
using tropirrat::IntVec;
using tropirrat::Rat;
using tropirrat::RatVec;

inline Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool primitive(const IntVec& v) {
    Int g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g == 1;
}

/// min over primitive l in [-B, B]^d of (max - min of l on points); points must
/// affinely span Z^d so that ambient and lattice coordinates agree.
inline Int brute_width(const std::vector<IntVec>& points, long B) {
    const std::size_t d = points.front().size();
    IntVec l(d, Int(-B));
    std::optional<Int> best;
    for (;;) {
        if (primitive(l)) {
            Int lo = dot(l, points[0]), hi = lo;
            for (const auto& p : points) {
                Int x = dot(l, p);
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
            if (!best || hi - lo < *best) best = hi - lo;
        }
        std::size_t k = 0;
        while (k < d && l[k] == B) l[k++] = -B;
        if (k == d) break;
        ++l[k];
    }
    return *best;
}

/// Solves G y = b over the rationals; nullopt when G is singular.
inline std::optional<RatVec> solve(std::vector<RatVec> G, RatVec b) {
    const std::size_t n = G.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && G[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(G[p], G[c]);
        std::swap(b[p], b[c]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || G[i][c] == 0) continue;
            Rat f = G[i][c] / G[c][c];
            for (std::size_t j = c; j < n; ++j) G[i][j] -= f * G[c][j];
            b[i] -= f * b[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= G[i][i];
    return b;
}

/// Exact squared distance from x to conv(vertices): the nearest point lies in
/// the relative interior of a simplex on some affinely independent vertex
/// subset, where it is the orthogonal projection of x onto that simplex's span.
/// Every such projection with non-negative barycentric coordinates is a point of
/// the polytope, so the minimum over all subsets is exact.
inline Rat nearest_sq_dist(const std::vector<IntVec>& vertices, const IntVec& x) {
    const std::size_t n = vertices.size(), d = x.size();
    std::optional<Rat> best;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) idx.push_back(i);
        if (idx.size() > d + 1) continue;
        const IntVec& v0 = vertices[idx[0]];
        const std::size_t k = idx.size() - 1;
        std::vector<IntVec> e;
        for (std::size_t i = 1; i <= k; ++i) {
            IntVec w(d);
            for (std::size_t j = 0; j < d; ++j) w[j] = vertices[idx[i]][j] - v0[j];
            e.push_back(w);
        }
        IntVec xv(d);
        for (std::size_t j = 0; j < d; ++j) xv[j] = x[j] - v0[j];
        RatVec lambda;
        if (k > 0) {
            std::vector<RatVec> G(k, RatVec(k));
            RatVec b(k);
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) G[i][j] = Rat(dot(e[i], e[j]));
                b[i] = Rat(dot(xv, e[i]));
            }
            auto sol = solve(G, b);
            if (!sol) continue;
            lambda = *sol;
        }
        Rat total = 0;
        bool inside = true;
        for (const auto& l : lambda) {
            if (l < 0) inside = false;
            total += l;
        }
        if (!inside || total > 1) continue;
        Rat dist = 0;
        for (std::size_t j = 0; j < d; ++j) {
            Rat p = v0[j];
            for (std::size_t i = 0; i < k; ++i) p += lambda[i] * e[i][j];
            dist += (x[j] - p) * (x[j] - p);
        }
        if (!best || dist < *best) best = dist;
    }
    return *best;
}

/// Upper bounds from the refined grid (1/k) Z^d intersected with the polytope,
/// given by its inward facet inequalities normal . y >= offset in ambient coordinates.
inline Rat grid_sq_dist(const std::vector<std::pair<IntVec, Int>>& facets, const std::vector<IntVec>& vertices,
                        const IntVec& x, long k) {
    const std::size_t d = x.size();
    IntVec lo = vertices[0], hi = vertices[0];
    for (const auto& v : vertices)
        for (std::size_t j = 0; j < d; ++j) {
            lo[j] = std::min(lo[j], v[j]);
            hi[j] = std::max(hi[j], v[j]);
        }
    IntVec g(d);
    for (std::size_t j = 0; j < d; ++j) g[j] = lo[j] * k;
    std::optional<Rat> best;
    for (;;) {
        bool in = true;
        for (const auto& [a, b] : facets)
            if (dot(a, g) < b * k) in = false;
        if (in) {
            Rat dist = 0;
            for (std::size_t j = 0; j < d; ++j) {
                Rat t = Rat(g[j], k) - Rat(x[j]);
                dist += t * t;
            }
            if (!best || dist < *best) best = dist;
        }
        std::size_t j = 0;
        while (j < d && g[j] == hi[j] * k) {
            g[j] = lo[j] * k;
            ++j;
        }
        if (j == d) break;
        ++g[j];
    }
    return *best;
}

/// 0, e_1, ..., e_d and up to `extra` random points of [-r, r]^d; the result
/// affinely spans Z^d.
inline std::vector<IntVec> random_points(std::mt19937& rng, std::size_t d, std::size_t extra, long r = 3) {
    std::vector<IntVec> pts{IntVec(d, Int(0))};
    for (std::size_t i = 0; i < d; ++i) {
        IntVec e(d, Int(0));
        e[i] = 1;
        pts.push_back(e);
    }
    std::uniform_int_distribution<long> coord(-r, r);
    for (std::size_t k = 0; k < extra; ++k) {
        IntVec p(d);
        for (auto& x : p) x = coord(rng);
        pts.push_back(p);
    }
    return pts;
}

/// A formal sum for the verdict oracle: index 0 is the point class.
struct Sum {
    std::vector<std::string> tags;  // "point", "known:..", "unknown:.."
    std::vector<Int> coeff;
};

struct Constraints {
    std::vector<std::pair<std::size_t, std::size_t>> distinct, equal;
    std::vector<std::size_t> not_point;
};

/// Tries every labelling of tags by classes {0 = point, 1, 2, ...}. Known tags
/// may not be labelled 0. Returns true when some labelling satisfying the
/// constraints sends the sum to target * [point]. `any_allowed` reports whether
/// any labelling satisfies the constraints at all.
inline bool reaches_target(const Sum& s, const Constraints& c, long target, bool* any_allowed = nullptr) {
    const std::size_t n = s.tags.size();
    std::vector<std::size_t> label(n, 0);
    bool allowed = false, reached = false;
    auto check = [&] {
        if (label[0] != 0) return;
        for (std::size_t i = 0; i < n; ++i)
            if (s.tags[i].rfind("known:", 0) == 0 && label[i] == 0) return;
        for (auto [a, b] : c.distinct)
            if (label[a] == label[b]) return;
        for (auto [a, b] : c.equal)
            if (label[a] != label[b]) return;
        for (auto a : c.not_point)
            if (label[a] == 0) return;
        allowed = true;
        std::map<std::size_t, Int> total;
        for (std::size_t i = 0; i < n; ++i) total[label[i]] += s.coeff[i];
        for (const auto& [l, t] : total)
            if ((l == 0 && t != target) || (l != 0 && t != 0)) return;
        if (!total.count(0) && target != 0) return;
        reached = true;
    };
    for (;;) {
        check();
        std::size_t k = 0;
        while (k < n && label[k] == n - 1) label[k++] = 0;
        if (k == n) break;
        ++label[k];
    }
    if (any_allowed) *any_allowed = allowed;
    return reached;
}

}  // namespace oracle
