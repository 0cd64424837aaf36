#include "doctest.h"
#include "oracles.hpp"

#include "tropirrat/linalg.hpp"

#include <random>

using namespace tropirrat;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t m, std::size_t n, long r) {
    std::uniform_int_distribution<long> e(-r, r);
    IntMatrix M(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) M(i, j) = e(rng);
    return M;
}

// Laplace expansion, for small matrices only.
Int naive_det(const IntMatrix& M) {
    const std::size_t n = M.rows();
    if (n == 0) return 1;
    if (n == 1) return M(0, 0);
    Int s = 0;
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0, c = 0; k < n; ++k)
                if (k != j) minor(i - 1, c++) = M(i, k);
        Int t = M(0, j) * naive_det(minor);
        s += j % 2 == 0 ? t : Int(-t);
    }
    return s;
}

// gcd of all k x k minors.
Int minor_gcd(const IntMatrix& M, std::size_t k) {
    Int g = 0;
    const std::size_t m = M.rows(), n = M.cols();
    for (unsigned rm = 0; rm < (1u << m); ++rm) {
        if (static_cast<std::size_t>(__builtin_popcount(rm)) != k) continue;
        for (unsigned cm = 0; cm < (1u << n); ++cm) {
            if (static_cast<std::size_t>(__builtin_popcount(cm)) != k) continue;
            IntMatrix sub(k, k);
            for (std::size_t i = 0, a = 0; i < m; ++i) {
                if (!(rm >> i & 1)) continue;
                for (std::size_t j = 0, b = 0; j < n; ++j)
                    if (cm >> j & 1) sub(a, b++) = M(i, j);
                ++a;
            }
            g = gcd(g, naive_det(sub));
        }
    }
    return g;
}

void check_hermite(const IntMatrix& M, const HermiteResult& h) {
    CHECK(h.U * M == h.H);
    CHECK(abs_int(determinant(h.U)) == 1);
    std::size_t last = 0;
    bool seen = false;
    for (std::size_t i = 0; i < h.H.rows(); ++i) {
        std::size_t p = 0;
        while (p < h.H.cols() && h.H(i, p) == 0) ++p;
        if (p == h.H.cols()) {
            for (std::size_t k = i; k < h.H.rows(); ++k)
                for (std::size_t j = 0; j < h.H.cols(); ++j) CHECK(h.H(k, j) == 0);
            break;
        }
        if (seen) CHECK(p > last);
        seen = true;
        last = p;
        CHECK(h.H(i, p) > 0);
        for (std::size_t k = 0; k < i; ++k) {
            CHECK(h.H(k, p) >= 0);
            CHECK(h.H(k, p) < h.H(i, p));
        }
    }
}

}  // namespace

TEST_CASE("hermite form examples") {
    auto M = IntMatrix::from_rows({{2, 4}, {6, 8}});
    auto h = hermite_normal_form(M);
    CHECK(h.H == IntMatrix::from_rows({{2, 0}, {0, 4}}));
    check_hermite(M, h);

    auto I = IntMatrix::identity(3);
    auto hi = hermite_normal_form(I);
    CHECK(hi.H == I);
    CHECK(hi.U == I);

    IntMatrix Z(2, 2);
    auto hz = hermite_normal_form(Z);
    CHECK(hz.H == Z);
    CHECK(hz.U == IntMatrix::identity(2));
}

TEST_CASE("hermite form on random matrices") {
    std::mt19937 rng(1);
    for (int k = 0; k < 60; ++k) {
        auto M = random_matrix(rng, 1 + k % 4, 1 + (k / 4) % 4, 9);
        check_hermite(M, hermite_normal_form(M));
    }
}

TEST_CASE("smith form examples") {
    auto s = smith_normal_form(IntMatrix::from_rows({{4, 0}, {0, 6}}));
    CHECK(s.S == IntMatrix::from_rows({{2, 0}, {0, 12}}));
    auto si = smith_normal_form(IntMatrix::identity(3));
    CHECK(si.S == IntMatrix::identity(3));
    CHECK(si.U == IntMatrix::identity(3));
    CHECK(si.V == IntMatrix::identity(3));
    auto s2 = smith_normal_form(IntMatrix::from_rows({{2}}));
    CHECK(s2.S == IntMatrix::from_rows({{2}}));
}

TEST_CASE("smith form divisibility and minor gcds") {
    std::mt19937 rng(2);
    for (int k = 0; k < 40; ++k) {
        auto M = random_matrix(rng, 3, 3, 6);
        auto s = smith_normal_form(M);
        CHECK(s.U * M * s.V == s.S);
        CHECK(abs_int(determinant(s.U)) == 1);
        CHECK(abs_int(determinant(s.V)) == 1);
        Int prod = 1;
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j)
                if (i != j) CHECK(s.S(i, j) == 0);
            CHECK(s.S(i, i) >= 0);
            if (i + 1 < 3 && s.S(i, i) != 0) CHECK(s.S(i + 1, i + 1) % s.S(i, i) == 0);
            prod *= s.S(i, i);
            CHECK(prod == minor_gcd(M, i + 1));
        }
    }
}

TEST_CASE("smith form with divisible pivots terminates") {
    // rows of the 6-dimensional quartic simplex's difference lattice
    std::vector<IntVec> rows;
    for (std::size_t i = 1; i < 7; ++i) {
        IntVec r(7, Int(0));
        r[0] = -4;
        r[i] = 4;
        rows.push_back(r);
    }
    auto M = IntMatrix::from_rows(rows, 7);
    auto s = smith_normal_form(M);
    CHECK(s.U * M * s.V == s.S);
    for (std::size_t i = 0; i < 6; ++i) CHECK(s.S(i, i) == 4);
}

TEST_CASE("determinant and rank against expansion") {
    std::mt19937 rng(3);
    for (int k = 0; k < 40; ++k) {
        const std::size_t n = 1 + k % 4;
        auto M = random_matrix(rng, n, n, 5);
        CHECK(determinant(M) == naive_det(M));
        CHECK((rank(M) == n) == (naive_det(M) != 0));
    }
    CHECK(rank(IntMatrix::from_rows({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("solve_rational") {
    auto a = solve_rational(IntMatrix::from_rows({{1, 1}}), RatVec{Rat(2)});
    REQUIRE(a);
    CHECK(a->particular == RatVec{Rat(2), Rat(0)});
    REQUIRE(a->kernel_basis.size() == 1);
    CHECK(a->kernel_basis[0][0] == -a->kernel_basis[0][1]);

    CHECK_FALSE(solve_rational(IntMatrix::from_rows({{1}, {1}}), RatVec{Rat(0), Rat(1)}));

    auto c = solve_rational(IntMatrix::from_rows({{2, 0}, {0, 3}}), RatVec{Rat(1), Rat(1)});
    REQUIRE(c);
    CHECK(c->particular == RatVec{Rat(1, 2), Rat(1, 3)});
    CHECK(c->kernel_basis.empty());
    CHECK_THROWS_AS(solve_rational(IntMatrix::from_rows({{1, 1}}), RatVec{}), Error);
}

TEST_CASE("primitive_part") {
    CHECK(primitive_part(make_ivec({2, 4, 6})) == make_ivec({1, 2, 3}));
    CHECK(primitive_part(make_ivec({0, -3})) == make_ivec({0, -1}));
    CHECK(primitive_part(make_ivec({5, 7})) == make_ivec({5, 7}));
    try {
        primitive_part(make_ivec({0, 0}));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == "ZeroVector");
    }
    std::mt19937 rng(4);
    std::uniform_int_distribution<long> e(-20, 20), k(1, 9);
    for (int i = 0; i < 50; ++i) {
        IntVec v{Int(e(rng)), Int(e(rng)), Int(e(rng))};
        if (v == IntVec(3, Int(0))) continue;
        IntVec kv = v;
        const long s = k(rng);
        for (auto& x : kv) x *= s;
        CHECK(primitive_part(kv) == primitive_part(v));
    }
}

TEST_CASE("affine lattice basis") {
    auto a = affine_lattice_basis({make_ivec({0, 0}), make_ivec({2, 2})});
    CHECK(a.origin == make_ivec({0, 0}));
    REQUIRE(a.basis.size() == 1);
    CHECK(primitive_part(a.basis[0]) == a.basis[0]);
    CHECK((a.basis[0] == make_ivec({1, 1}) || a.basis[0] == make_ivec({-1, -1})));

    auto b = affine_lattice_basis({make_ivec({5, 5})});
    CHECK(b.origin == make_ivec({5, 5}));
    CHECK(b.basis.empty());

    auto c = affine_lattice_basis({make_ivec({0, 0}), make_ivec({1, 0}), make_ivec({0, 1})});
    CHECK(c.basis == std::vector<IntVec>{make_ivec({1, 0}), make_ivec({0, 1})});
}

TEST_CASE("affine lattice contains every difference") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> e(-6, 6);
    for (int k = 0; k < 60; ++k) {
        const std::size_t n = 2 + k % 3;
        std::vector<IntVec> pts;
        // points on a random sublattice-affine subspace
        IntVec o(n), u(n), w(n);
        for (std::size_t j = 0; j < n; ++j) {
            o[j] = e(rng);
            u[j] = e(rng);
            w[j] = e(rng);
        }
        std::uniform_int_distribution<long> c(-3, 3);
        for (int i = 0; i < 5; ++i) {
            IntVec p(n);
            const long s = c(rng), t = k % 2 ? c(rng) : 0;
            for (std::size_t j = 0; j < n; ++j) p[j] = o[j] + s * u[j] + t * w[j];
            pts.push_back(p);
        }
        auto lat = affine_lattice_basis(pts);
        CHECK(lat.dim() == affine_dimension(pts));
        CHECK(std::find(pts.begin(), pts.end(), lat.origin) != pts.end());
        for (const auto& p : pts) {
            auto c2 = lat.coords(p);
            REQUIRE(c2);
            CHECK(lat.point(*c2) == p);
        }
        // the basis spans a saturated lattice: its Smith invariants are all 1
        if (lat.dim() > 0) {
            auto s = smith_normal_form(IntMatrix::from_rows(lat.basis, n));
            for (std::size_t i = 0; i < lat.dim(); ++i) CHECK(s.S(i, i) == 1);
        }
    }
}
