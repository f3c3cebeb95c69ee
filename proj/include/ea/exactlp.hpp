#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "ea/errors.hpp"
#include "ea/rational.hpp"

namespace ea::lp {

using Row = std::vector<Rat>;

/// A x = b over nvars variables.
struct EqSystem {
    std::size_t nvars = 0;
    std::vector<Row> A;
    std::vector<Rat> b;
};

struct Reduced {
    std::size_t nvars = 0;
    std::vector<Row> rows;                // RREF rows
    std::vector<Rat> rhs;
    std::vector<std::size_t> pivot_col;   // per row
    std::vector<std::size_t> free_cols;
    bool inconsistent = false;
    std::size_t bad_row = 0;              // row that reduced to 0 = nonzero
    std::vector<Row> track;               // row i = track[i] . original rows (if tracked)
};

inline Reduced rref(const EqSystem& sys, bool tracked = false) {
    Reduced red;
    red.nvars = sys.nvars;
    const std::size_t m = sys.A.size();
    std::vector<Row> M = sys.A;
    std::vector<Rat> rhs = sys.b;
    std::vector<Row> T;
    if (tracked) {
        T.assign(m, Row(m, Rat(0)));
        for (std::size_t i = 0; i < m; ++i) T[i][i] = 1;
    }

    std::size_t row = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < sys.nvars && row < m; ++col) {
        std::size_t pr = row;
        while (pr < m && M[pr][col] == 0) ++pr;
        if (pr == m) continue;
        std::swap(M[pr], M[row]);
        std::swap(rhs[pr], rhs[row]);
        if (tracked) std::swap(T[pr], T[row]);
        Rat inv = Rat(1) / M[row][col];
        for (auto& v : M[row]) v *= inv;
        rhs[row] *= inv;
        if (tracked)
            for (auto& v : T[row]) v *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || M[i][col] == 0) continue;
            Rat f = M[i][col];
            for (std::size_t j = 0; j < sys.nvars; ++j) M[i][j] -= f * M[row][j];
            rhs[i] -= f * rhs[row];
            if (tracked)
                for (std::size_t j = 0; j < m; ++j) T[i][j] -= f * T[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    // rows past 'row' are all-zero coefficient rows; nonzero rhs = inconsistent
    for (std::size_t i = row; i < m; ++i)
        if (rhs[i] != 0) {
            red.inconsistent = true;
            red.bad_row = i;
            red.rows.assign(M.begin(), M.end());
            red.rhs = rhs;
            if (tracked) red.track = T;
            return red;
        }
    red.rows.assign(M.begin(), M.begin() + row);
    red.rhs.assign(rhs.begin(), rhs.begin() + row);
    red.pivot_col = pivots;
    if (tracked) red.track.assign(T.begin(), T.begin() + row);
    std::vector<bool> is_pivot(sys.nvars, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t c = 0; c < sys.nvars; ++c)
        if (!is_pivot[c]) red.free_cols.push_back(c);
    return red;
}

// ---------------------------------------------------------------------------
// phase-I simplex for { A x = b, 0 <= x <= 1 }

/// Multipliers proving infeasibility of { A x = b, 0 <= x <= 1 }:
/// sum_e y_e A_e - mu + nu = 0 with mu, nu >= 0 and y.b + sum(nu) < 0.
struct FarkasCertificate {
    std::vector<Rat> eq;     // per equality row (any sign)
    std::vector<Rat> lower;  // per variable, for x_i >= 0
    std::vector<Rat> upper;  // per variable, for x_i <= 1

    bool verify(const EqSystem& sys) const {
        if (eq.size() != sys.A.size() || lower.size() != sys.nvars ||
            upper.size() != sys.nvars)
            return false;
        for (auto& v : lower)
            if (v < 0) return false;
        for (auto& v : upper)
            if (v < 0) return false;
        for (std::size_t j = 0; j < sys.nvars; ++j) {
            Rat coef(0);
            for (std::size_t i = 0; i < sys.A.size(); ++i) coef += eq[i] * sys.A[i][j];
            coef -= lower[j];
            coef += upper[j];
            if (coef != 0) return false;
        }
        Rat val(0);
        for (std::size_t i = 0; i < sys.A.size(); ++i) val += eq[i] * sys.b[i];
        for (auto& v : upper) val += v;
        return val < 0;
    }
};

struct BoxSolve {
    bool feasible = false;
    std::vector<Rat> x;                         // when feasible
    std::optional<FarkasCertificate> certificate; // when not
};

/// Dense exact phase-I simplex with Bland's rule on the standard form
/// [A 0; I I](x,u) = (b, 1), x,u >= 0.
inline BoxSolve solve_box(const EqSystem& sys) {
    const std::size_t n = sys.nvars;
    const std::size_t me = sys.A.size();
    const std::size_t M = me + n;  // rows
    const std::size_t N = 2 * n;   // structural columns
    const std::size_t total = N + M + 1; // + artificials + rhs

    std::vector<Row> T(M, Row(total, Rat(0)));
    for (std::size_t i = 0; i < me; ++i) {
        for (std::size_t j = 0; j < n; ++j) T[i][j] = sys.A[i][j];
        T[i][total - 1] = sys.b[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        T[me + i][i] = 1;
        T[me + i][n + i] = 1;
        T[me + i][total - 1] = 1;
    }
    std::vector<int> rowsign(M, 1);
    for (std::size_t i = 0; i < M; ++i)
        if (T[i][total - 1] < 0) {
            rowsign[i] = -1;
            for (auto& v : T[i]) v = -v;
        }
    for (std::size_t i = 0; i < M; ++i) T[i][N + i] = 1;

    // cost row for minimize sum(artificials), kept in canonical form
    Row cost(total, Rat(0));
    for (std::size_t j = N; j < N + M; ++j) cost[j] = 1;
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = 0; j < total; ++j) cost[j] -= T[i][j];

    std::vector<std::size_t> basis(M);
    for (std::size_t i = 0; i < M; ++i) basis[i] = N + i;

    auto pivot = [&](std::size_t pr, std::size_t pc) {
        Rat inv = Rat(1) / T[pr][pc];
        for (auto& v : T[pr]) v *= inv;
        for (std::size_t i = 0; i < M; ++i) {
            if (i == pr || T[i][pc] == 0) continue;
            Rat f = T[i][pc];
            for (std::size_t j = 0; j < total; ++j) T[i][j] -= f * T[pr][j];
        }
        if (cost[pc] != 0) {
            Rat f = cost[pc];
            for (std::size_t j = 0; j < total; ++j) cost[j] -= f * T[pr][j];
        }
        basis[pr] = pc;
    };

    while (true) {
        // Bland: smallest-index column with negative reduced cost
        std::size_t enter = total;
        for (std::size_t j = 0; j < N + M; ++j)
            if (cost[j] < 0) { enter = j; break; }
        if (enter == total) break;
        std::size_t leave = M;
        for (std::size_t i = 0; i < M; ++i) {
            if (T[i][enter] <= 0) continue;
            if (leave == M) { leave = i; continue; }
            Rat cur = T[i][total - 1] / T[i][enter];
            Rat best = T[leave][total - 1] / T[leave][enter];
            if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
        }
        if (leave == M)
            throw std::logic_error("solve_box: phase-I objective unbounded (internal error)");
        pivot(leave, enter);
    }

    Rat objective = -cost[total - 1];
    BoxSolve out;
    if (objective > 0) {
        // duals: y_i = 1 - reduced cost of artificial i (phase-I costs are 1)
        std::vector<Rat> y(M);
        for (std::size_t i = 0; i < M; ++i) y[i] = (Rat(1) - cost[N + i]) * rowsign[i];
        FarkasCertificate cert;
        cert.eq.resize(me);
        for (std::size_t i = 0; i < me; ++i) cert.eq[i] = -y[i];
        cert.upper.resize(n);
        for (std::size_t i = 0; i < n; ++i) cert.upper[i] = -y[me + i];
        cert.lower.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            // mu_j = reduced cost of column x_j at optimality
            Rat rc(0);
            for (std::size_t i = 0; i < me; ++i) rc -= y[i] * sys.A[i][j];
            rc -= y[me + j];
            cert.lower[j] = rc;
        }
        if (!cert.verify(sys))
            throw std::logic_error("solve_box: Farkas certificate failed verification");
        out.certificate = std::move(cert);
        return out;
    }

    out.feasible = true;
    out.x.assign(n, Rat(0));
    for (std::size_t i = 0; i < M; ++i)
        if (basis[i] < n) out.x[basis[i]] = T[i][total - 1];
    return out;
}

// ---------------------------------------------------------------------------
// vertex enumeration for { x : A x = b, 0 <= x <= 1 } by double description
// on the free-variable parametrization

struct VertexEnum {
    bool feasible = false;
    std::vector<std::vector<Rat>> vertices; // full x vectors, canonically sorted
};

namespace detail {

struct HalfSpace {
    Row a;   // over free vars
    Rat c;   // a . t >= c
};

inline Rat eval(const HalfSpace& h, const Row& t) {
    Rat v = -h.c;
    for (std::size_t i = 0; i < t.size(); ++i) v += h.a[i] * t[i];
    return v; // >= 0 means satisfied
}

inline std::size_t rank_of(const std::vector<const HalfSpace*>& rows, std::size_t f) {
    std::vector<Row> m;
    m.reserve(rows.size());
    for (auto* h : rows) m.push_back(h->a);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < f && rank < m.size(); ++col) {
        std::size_t pr = rank;
        while (pr < m.size() && m[pr][col] == 0) ++pr;
        if (pr == m.size()) continue;
        std::swap(m[pr], m[rank]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][col] == 0) continue;
            Rat fac = m[i][col] / m[rank][col];
            for (std::size_t j = col; j < f; ++j) m[i][j] -= fac * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace detail

/// Cube-seeded double description with vertex-rank filtering. free_dim_cap
/// guards the 2^f seed.
inline VertexEnum enumerate_vertices(const EqSystem& sys, std::size_t free_dim_cap = 12) {
    VertexEnum out;
    Reduced red = rref(sys);
    if (red.inconsistent) return out;
    const std::size_t f = red.free_cols.size();
    if (f > free_dim_cap)
        throw BudgetError("enumerate_vertices: free dimension " + std::to_string(f) +
                          " exceeds cap " + std::to_string(free_dim_cap));

    // pivot variable expressions: x_p = rhs - sum coef * t
    // halfspaces over t: cube 0 <= t_j <= 1 and 0 <= x_p <= 1
    std::vector<detail::HalfSpace> hs;
    for (std::size_t j = 0; j < f; ++j) {
        detail::HalfSpace lo{Row(f, Rat(0)), Rat(0)};
        lo.a[j] = 1;
        hs.push_back(lo); // t_j >= 0
        detail::HalfSpace hi{Row(f, Rat(0)), Rat(-1)};
        hi.a[j] = -1;
        hs.push_back(hi); // -t_j >= -1
    }
    std::vector<std::pair<Row, Rat>> pivot_exprs; // (coeffs over t, rhs)
    for (std::size_t r = 0; r < red.rows.size(); ++r) {
        Row coef(f, Rat(0));
        for (std::size_t j = 0; j < f; ++j) coef[j] = red.rows[r][red.free_cols[j]];
        pivot_exprs.push_back({coef, red.rhs[r]});
        // x_p = rhs - coef.t ; x_p >= 0  ->  -coef.t >= -rhs
        detail::HalfSpace lo{Row(f, Rat(0)), -red.rhs[r]};
        for (std::size_t j = 0; j < f; ++j) lo.a[j] = -coef[j];
        // x_p <= 1  ->  coef.t >= rhs - 1
        detail::HalfSpace hi{coef, red.rhs[r] - 1};
        hs.push_back(lo);
        hs.push_back(hi);
    }

    // seed: cube corners
    std::vector<Row> verts;
    if (f == 0) {
        verts.push_back({});
    } else {
        for (std::uint64_t mask = 0; mask < (1ull << f); ++mask) {
            Row t(f);
            for (std::size_t j = 0; j < f; ++j) t[j] = ((mask >> j) & 1) ? Rat(1) : Rat(0);
            verts.push_back(std::move(t));
        }
    }

    const std::size_t cube_hs = 2 * f;
    for (std::size_t k = cube_hs; k < hs.size(); ++k) {
        const auto& h = hs[k];
        std::vector<Row> keep, plus, minus;
        std::vector<Rat> vplus, vminus;
        for (auto& v : verts) {
            Rat val = detail::eval(h, v);
            if (val >= 0) {
                if (val > 0) { plus.push_back(v); vplus.push_back(val); }
                keep.push_back(std::move(v));
            } else {
                minus.push_back(std::move(v));
                vminus.push_back(val);
            }
        }
        if (minus.empty()) { verts = std::move(keep); continue; }
        // crossings of segments between kept and cut points
        for (std::size_t i = 0; i < plus.size(); ++i)
            for (std::size_t j = 0; j < minus.size(); ++j) {
                Rat lam = vplus[i] / (vplus[i] - vminus[j]); // in (0,1)
                Row p(f);
                for (std::size_t d = 0; d < f; ++d)
                    p[d] = plus[i][d] + lam * (minus[j][d] - plus[i][d]);
                keep.push_back(std::move(p));
            }
        // filter: keep exact vertices (tight constraints span the space)
        std::vector<Row> filtered;
        for (auto& v : keep) {
            bool inside = true;
            std::vector<const detail::HalfSpace*> tight;
            for (std::size_t q = 0; q <= k; ++q) {
                Rat val = detail::eval(hs[q], v);
                if (val < 0) { inside = false; break; }
                if (val == 0) tight.push_back(&hs[q]);
            }
            if (!inside || detail::rank_of(tight, f) != f) continue;
            filtered.push_back(std::move(v));
        }
        std::sort(filtered.begin(), filtered.end());
        filtered.erase(std::unique(filtered.begin(), filtered.end()), filtered.end());
        verts = std::move(filtered);
        if (verts.empty()) return out;
    }

    // final filter for the cube-only case (f-dim cube corners are vertices)
    if (verts.empty()) return out;
    out.feasible = true;
    for (auto& t : verts) {
        std::vector<Rat> x(sys.nvars, Rat(0));
        for (std::size_t j = 0; j < f; ++j) x[red.free_cols[j]] = t[j];
        for (std::size_t r = 0; r < red.rows.size(); ++r) {
            Rat v = pivot_exprs[r].second;
            for (std::size_t j = 0; j < f; ++j) v -= pivot_exprs[r].first[j] * t[j];
            x[red.pivot_col[r]] = v;
        }
        out.vertices.push_back(std::move(x));
    }
    std::sort(out.vertices.begin(), out.vertices.end());
    out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()),
                       out.vertices.end());
    return out;
}

} // namespace ea::lp
