#include "tropirrat/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace tropirrat {

std::string to_string(const IntVec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i].get_str();
    }
    os << ')';
    return os.str();
}

std::string to_string(const Rat& q) { return q.get_str(); }

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error("RaggedInput", "matrix row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<IntVec> rs;
    for (auto r : rows) rs.push_back(make_ivec(r));
    return from_rows(rs, rs.empty() ? 0 : rs.front().size());
}

IntVec IntMatrix::row(std::size_t i) const {
    return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<IntVec> IntMatrix::row_list() const {
    std::vector<IntVec> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntVec IntMatrix::apply(const IntVec& x) const {
    IntVec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Int s = 0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

namespace {

// rows (r, i) <- [[s, t], [u, v]] * rows (r, i)
void combine_rows(IntMatrix& m, std::size_t r, std::size_t i, const Int& s, const Int& t,
                  const Int& u, const Int& v) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Int a = m(r, j), b = m(i, j);
        m(r, j) = s * a + t * b;
        m(i, j) = u * a + v * b;
    }
}

void combine_cols(IntMatrix& m, std::size_t c, std::size_t j, const Int& s, const Int& t,
                  const Int& u, const Int& v) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int a = m(i, c), b = m(i, j);
        m(i, c) = s * a + t * b;
        m(i, j) = u * a + v * b;
    }
}

void gcdext(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    // plain elimination when a | b, so the pivot never moves needlessly
    if (a != 0 && b % a == 0) {
        g = a;
        s = 1;
        t = 0;
        return;
    }
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& M) {
    const std::size_t m = M.rows(), n = M.cols();
    IntMatrix H = M;
    IntMatrix U = IntMatrix::identity(m);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && H(p, c) == 0) ++p;
        if (p == m) continue;
        H.swap_rows(r, p);
        U.swap_rows(r, p);
        for (std::size_t i = r + 1; i < m; ++i) {
            if (H(i, c) == 0) continue;
            Int a = H(r, c), b = H(i, c), g, s, t;
            gcdext(a, b, g, s, t);
            Int u = -b / g, v = a / g;
            combine_rows(H, r, i, s, t, u, v);
            combine_rows(U, r, i, s, t, u, v);
        }
        if (H(r, c) < 0) {
            for (std::size_t j = 0; j < n; ++j) H(r, j) = -H(r, j);
            for (std::size_t j = 0; j < m; ++j) U(r, j) = -U(r, j);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(H(i, c), H(r, c));
            if (q == 0) continue;
            for (std::size_t j = 0; j < n; ++j) H(i, j) -= q * H(r, j);
            for (std::size_t j = 0; j < m; ++j) U(i, j) -= q * U(r, j);
        }
        ++r;
    }
    return {std::move(H), std::move(U)};
}

SmithResult smith_normal_form(const IntMatrix& M) {
    const std::size_t m = M.rows(), n = M.cols();
    IntMatrix S = M;
    IntMatrix U = IntMatrix::identity(m);
    IntMatrix V = IntMatrix::identity(n);
    const std::size_t k = std::min(m, n);
    for (std::size_t t = 0; t < k; ++t) {
        // smallest non-zero entry of the trailing block goes to (t, t)
        std::size_t bi = m, bj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (S(i, j) != 0 && (bi == m || abs_int(S(i, j)) < abs_int(S(bi, bj)))) {
                    bi = i;
                    bj = j;
                }
        if (bi == m) break;
        S.swap_rows(t, bi);
        U.swap_rows(t, bi);
        S.swap_cols(t, bj);
        V.swap_cols(t, bj);

        for (;;) {
            for (std::size_t i = t + 1; i < m; ++i) {
                if (S(i, t) == 0) continue;
                Int a = S(t, t), b = S(i, t), g, s, tt;
                gcdext(a, b, g, s, tt);
                Int u = -b / g, v = a / g;
                combine_rows(S, t, i, s, tt, u, v);
                combine_rows(U, t, i, s, tt, u, v);
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (S(t, j) == 0) continue;
                Int a = S(t, t), b = S(t, j), g, s, tt;
                gcdext(a, b, g, s, tt);
                Int u = -b / g, v = a / g;
                combine_cols(S, t, j, s, tt, u, v);
                combine_cols(V, t, j, s, tt, u, v);
            }
            bool column_clean = true;
            for (std::size_t i = t + 1; i < m; ++i)
                if (S(i, t) != 0) column_clean = false;
            if (!column_clean) continue;

            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (S(i, j) % S(t, t) != 0) {
                        for (std::size_t c = 0; c < n; ++c) S(t, c) += S(i, c);
                        for (std::size_t c = 0; c < m; ++c) U(t, c) += U(i, c);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (S(t, t) < 0) {
            for (std::size_t c = 0; c < n; ++c) S(t, c) = -S(t, c);
            for (std::size_t c = 0; c < m; ++c) U(t, c) = -U(t, c);
        }
    }
    return {std::move(S), std::move(U), std::move(V)};
}

std::optional<RationalSolution> solve_rational(const IntMatrix& A, const RatVec& b) {
    const std::size_t m = A.rows(), n = A.cols();
    if (b.size() != m) throw Error("DimMismatch", "right-hand side length differs from row count");
    std::vector<RatVec> aug(m, RatVec(n + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = A(i, j);
        aug[i][n] = b[i];
    }
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && aug[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(aug[p], aug[r]);
        Rat inv = 1 / aug[r][c];
        for (auto& x : aug[r]) x *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || aug[i][c] == 0) continue;
            Rat f = aug[i][c];
            for (std::size_t j = c; j <= n; ++j) aug[i][j] -= f * aug[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
        if (aug[i][n] != 0) return std::nullopt;

    RationalSolution sol;
    sol.particular.assign(n, Rat(0));
    for (std::size_t i = 0; i < r; ++i) sol.particular[pivot_cols[i]] = aug[i][n];

    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RatVec k(n, Rat(0));
        k[f] = 1;
        for (std::size_t i = 0; i < r; ++i) k[pivot_cols[i]] = -aug[i][f];
        sol.kernel_basis.push_back(std::move(k));
    }
    return sol;
}

namespace {

// In-place fraction-free elimination; returns rank and the sign of the row permutation.
std::size_t bareiss(IntMatrix& A, int* sign) {
    const std::size_t m = A.rows(), n = A.cols();
    Int prev = 1;
    std::size_t r = 0;
    int sg = 1;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && A(p, c) == 0) ++p;
        if (p == m) continue;
        if (p != r) {
            A.swap_rows(p, r);
            sg = -sg;
        }
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                A(i, j) = A(r, c) * A(i, j) - A(i, c) * A(r, j);
                mpz_divexact(A(i, j).get_mpz_t(), A(i, j).get_mpz_t(), prev.get_mpz_t());
            }
            A(i, c) = 0;
        }
        prev = A(r, c);
        ++r;
    }
    if (sign) *sign = sg;
    return r;
}

}  // namespace

Int determinant(const IntMatrix& M) {
    if (M.rows() != M.cols()) throw Error("DimMismatch", "determinant of a non-square matrix");
    const std::size_t n = M.rows();
    if (n == 0) return 1;
    IntMatrix A = M;
    int sign = 1;
    if (bareiss(A, &sign) < n) return 0;
    return sign * A(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& M) {
    IntMatrix A = M;
    return bareiss(A, nullptr);
}

std::size_t rank(const std::vector<IntVec>& rows) {
    if (rows.empty()) return 0;
    return rank(IntMatrix::from_rows(rows, rows.front().size()));
}

std::size_t affine_dimension(const std::vector<IntVec>& points) {
    if (points.size() <= 1) return 0;
    std::vector<IntVec> diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(sub(points[i], points[0]));
    return rank(diffs);
}

IntVec primitive_part(const IntVec& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    if (g == 0) throw Error("ZeroVector", "primitive part of the zero vector");
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

namespace {

std::vector<IntVec> hermite_rows(const std::vector<IntVec>& rows, std::size_t n) {
    if (rows.empty()) return {};
    auto H = hermite_normal_form(IntMatrix::from_rows(rows, n)).H;
    std::vector<IntVec> out;
    for (std::size_t i = 0; i < H.rows(); ++i) {
        IntVec r = H.row(i);
        if (std::any_of(r.begin(), r.end(), [](const Int& x) { return x != 0; }))
            out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

std::vector<IntVec> integer_kernel(const IntMatrix& A) {
    const std::size_t n = A.cols();
    if (A.rows() == 0) return IntMatrix::identity(n).row_list();
    auto hr = hermite_normal_form(A.transpose());
    std::vector<IntVec> ker;
    for (std::size_t i = 0; i < n; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < hr.H.cols(); ++j)
            if (hr.H(i, j) != 0) {
                zero = false;
                break;
            }
        if (zero) ker.push_back(hr.U.row(i));
    }
    return hermite_rows(ker, n);
}

std::vector<IntVec> saturated_basis(const std::vector<IntVec>& rows, std::size_t n) {
    if (rows.empty() || rank(rows) == 0) return {};
    auto ker = integer_kernel(IntMatrix::from_rows(rows, n));
    if (ker.empty()) return IntMatrix::identity(n).row_list();
    return integer_kernel(IntMatrix::from_rows(ker, n));
}

std::optional<IntVec> AffineLattice::coords(const IntVec& x) const {
    const std::size_t n = origin.size(), r = basis.size();
    if (x.size() != n) return std::nullopt;
    IntVec d = sub(x, origin);
    IntVec c(r);
    for (std::size_t k = 0; k < r; ++k) {
        Int s = 0;
        for (std::size_t j = 0; j < n; ++j) s += d[j] * left_inverse(j, k);
        c[k] = s;
    }
    if (point(c) != x) return std::nullopt;
    return c;
}

std::optional<RatVec> AffineLattice::rational_coords(const RatVec& x) const {
    const std::size_t n = origin.size(), r = basis.size();
    if (x.size() != n) return std::nullopt;
    RatVec c(r);
    for (std::size_t k = 0; k < r; ++k) {
        Rat s = 0;
        for (std::size_t j = 0; j < n; ++j) s += (x[j] - origin[j]) * left_inverse(j, k);
        c[k] = s;
    }
    for (std::size_t j = 0; j < n; ++j) {
        Rat s = origin[j];
        for (std::size_t k = 0; k < r; ++k) s += c[k] * basis[k][j];
        if (s != x[j]) return std::nullopt;
    }
    return c;
}

IntVec AffineLattice::point(const IntVec& c) const {
    IntVec x = origin;
    for (std::size_t k = 0; k < basis.size(); ++k)
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += c[k] * basis[k][j];
    return x;
}

IntVec AffineLattice::ambient_functional(const IntVec& l) const {
    return left_inverse.apply(l);
}

AffineLattice affine_lattice_basis(const std::vector<IntVec>& points) {
    if (points.empty()) throw Error("EmptyInput", "affine lattice of an empty point set");
    const std::size_t n = points.front().size();
    AffineLattice lat;
    lat.origin = *std::min_element(points.begin(), points.end());
    std::vector<IntVec> diffs;
    for (const auto& p : points) {
        if (p.size() != n) throw Error("RaggedInput", "points of different lengths");
        if (p != lat.origin) diffs.push_back(sub(p, lat.origin));
    }
    lat.basis = saturated_basis(diffs, n);
    const std::size_t r = lat.basis.size();
    lat.left_inverse = IntMatrix(n, r);
    if (r > 0) {
        // U B V = [I 0] for a saturated basis, so B * (V[:, :r] U) = I.
        auto snf = smith_normal_form(IntMatrix::from_rows(lat.basis, n));
        IntMatrix Vr(n, r);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < r; ++j) Vr(i, j) = snf.V(i, j);
        lat.left_inverse = Vr * snf.U;
    }
    return lat;
}

}  // namespace tropirrat
