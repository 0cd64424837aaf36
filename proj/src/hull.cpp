// Beneath-beyond convex hull over the integers.
//
// Facets keep every processed input point lying on their hyperplane, so
// non-simplicial facets come out merged and ridges can be found as
// intersections of point sets of affine rank r-2.

#include "tropirrat/polytope.hpp"

#include <algorithm>
#include <map>

namespace tropirrat::detail {

namespace {

using Bits = std::vector<std::uint64_t>;

struct Work {
    IntVec normal;
    Int offset;
    Bits bits;
    bool alive = true;
};

void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t(1) << (i % 64); }

std::vector<std::size_t> bit_list(const Bits& b) {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < b.size(); ++w) {
        std::uint64_t x = b[w];
        while (x) {
            int t = __builtin_ctzll(x);
            out.push_back(w * 64 + static_cast<std::size_t>(t));
            x &= x - 1;
        }
    }
    return out;
}

std::size_t popcount_and(const Bits& a, const Bits& b) {
    std::size_t c = 0;
    for (std::size_t w = 0; w < a.size(); ++w) c += static_cast<std::size_t>(__builtin_popcountll(a[w] & b[w]));
    return c;
}

std::size_t affine_rank_of(const std::vector<IntVec>& pts, const std::vector<std::size_t>& idx) {
    if (idx.size() <= 1) return 0;
    std::vector<IntVec> diffs;
    diffs.reserve(idx.size() - 1);
    for (std::size_t k = 1; k < idx.size(); ++k) diffs.push_back(sub(pts[idx[k]], pts[idx[0]]));
    return rank(diffs);
}

}  // namespace

HullResult convex_hull(const std::vector<IntVec>& pts) {
    const std::size_t N = pts.size();
    if (N == 0) throw Error("EmptyInput", "hull of no points");
    const std::size_t r = pts[0].size();
    if (r == 0) throw Error("BadParameter", "hull in dimension 0");
    HullResult res;

    if (r == 1) {
        std::size_t lo = 0, hi = 0;
        for (std::size_t i = 1; i < N; ++i) {
            if (pts[i][0] < pts[lo][0]) lo = i;
            if (pts[i][0] > pts[hi][0]) hi = i;
        }
        if (lo == hi) throw Error("BadParameter", "hull input is not full-dimensional");
        res.facets.push_back({make_ivec({1}), pts[lo][0], {lo}});
        res.facets.push_back({make_ivec({-1}), -pts[hi][0], {hi}});
        res.vertices = {std::min(lo, hi), std::max(lo, hi)};
        return res;
    }

    // initial simplex
    std::vector<std::size_t> simplex{0};
    std::vector<IntVec> diffs;
    for (std::size_t i = 1; i < N && simplex.size() < r + 1; ++i) {
        diffs.push_back(sub(pts[i], pts[0]));
        if (rank(diffs) == diffs.size()) {
            simplex.push_back(i);
        } else {
            diffs.pop_back();
        }
    }
    if (simplex.size() < r + 1) throw Error("BadParameter", "hull input is not full-dimensional");

    IntVec center(r, Int(0));
    for (auto i : simplex) center = add(center, pts[i]);
    const Int scale = static_cast<unsigned long>(r + 1);

    const std::size_t words = (N + 63) / 64;
    std::vector<Work> facets;

    auto hyperplane = [&](const std::vector<std::size_t>& on) {
        std::vector<IntVec> d;
        for (std::size_t k = 1; k < on.size(); ++k) d.push_back(sub(pts[on[k]], pts[on[0]]));
        auto ker = integer_kernel(IntMatrix::from_rows(d, r));
        if (ker.size() != 1) throw Error("BadParameter", "degenerate hull facet");
        Work w;
        w.normal = primitive_part(ker[0]);
        w.offset = dot(w.normal, pts[on[0]]);
        Int c = dot(w.normal, center);
        if (c < scale * w.offset) {
            for (auto& x : w.normal) x = -x;
            w.offset = -w.offset;
        }
        w.bits.assign(words, 0);
        for (auto i : on) set_bit(w.bits, i);
        return w;
    };

    for (std::size_t k = 0; k <= r; ++k) {
        std::vector<std::size_t> on;
        for (std::size_t j = 0; j <= r; ++j)
            if (j != k) on.push_back(simplex[j]);
        facets.push_back(hyperplane(on));
    }

    std::vector<bool> in_simplex(N, false);
    for (auto i : simplex) in_simplex[i] = true;

    for (std::size_t p = 0; p < N; ++p) {
        if (in_simplex[p]) continue;
        std::vector<int> side(facets.size(), 1);
        bool any_visible = false;
        for (std::size_t f = 0; f < facets.size(); ++f) {
            if (!facets[f].alive) continue;
            Int v = dot(facets[f].normal, pts[p]) - facets[f].offset;
            side[f] = sgn(v);
            if (side[f] == 0) set_bit(facets[f].bits, p);
            if (side[f] < 0) any_visible = true;
        }
        if (!any_visible) continue;

        std::map<std::pair<IntVec, Int>, Work> created;
        for (std::size_t f = 0; f < facets.size(); ++f) {
            if (!facets[f].alive || side[f] >= 0) continue;
            for (std::size_t g = 0; g < facets.size(); ++g) {
                if (!facets[g].alive || side[g] <= 0) continue;
                if (popcount_and(facets[f].bits, facets[g].bits) < r - 1) continue;
                Bits common(words);
                for (std::size_t w = 0; w < words; ++w) common[w] = facets[f].bits[w] & facets[g].bits[w];
                auto ridge = bit_list(common);
                if (affine_rank_of(pts, ridge) != r - 2) continue;
                ridge.push_back(p);
                Work w = hyperplane(ridge);
                auto key = std::make_pair(w.normal, w.offset);
                auto it = created.find(key);
                if (it == created.end()) {
                    created.emplace(std::move(key), std::move(w));
                } else {
                    for (std::size_t k = 0; k < words; ++k) it->second.bits[k] |= w.bits[k];
                }
            }
        }
        for (std::size_t f = 0; f < facets.size(); ++f)
            if (facets[f].alive && side[f] < 0) facets[f].alive = false;
        for (auto& [key, w] : created) {
            bool merged = false;
            for (auto& g : facets) {
                if (g.alive && g.normal == w.normal && g.offset == w.offset) {
                    for (std::size_t k = 0; k < words; ++k) g.bits[k] |= w.bits[k];
                    merged = true;
                    break;
                }
            }
            if (!merged) facets.push_back(std::move(w));
        }
        facets.erase(std::remove_if(facets.begin(), facets.end(), [](const Work& w) { return !w.alive; }),
                     facets.end());
    }

    // Recompute incidences from scratch and read off the extreme points.
    std::vector<std::vector<std::size_t>> point_facets(N);
    for (std::size_t f = 0; f < facets.size(); ++f) {
        HullFacet hf{facets[f].normal, facets[f].offset, {}};
        for (std::size_t i = 0; i < N; ++i) {
            Int v = dot(hf.normal, pts[i]) - hf.offset;
            if (v < 0) throw Error("BadParameter", "hull facet violated");
            if (v == 0) {
                hf.points.push_back(i);
                point_facets[i].push_back(f);
            }
        }
        res.facets.push_back(std::move(hf));
    }
    std::sort(res.facets.begin(), res.facets.end(), [](const HullFacet& a, const HullFacet& b) {
        return std::tie(a.normal, a.offset) < std::tie(b.normal, b.offset);
    });
    for (std::size_t i = 0; i < N; ++i) {
        if (point_facets[i].size() < r) continue;
        std::vector<IntVec> normals;
        for (auto f : point_facets[i]) normals.push_back(facets[f].normal);
        if (rank(normals) == r) res.vertices.push_back(i);
    }
    return res;
}

}  // namespace tropirrat::detail
