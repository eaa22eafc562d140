#include "pdcover/halfspace3d/lp.h"

#include "pdcover/geom/errors.h"

namespace pdc {

namespace {

struct Tableau {
    std::vector<std::vector<Scalar>> t;  // rows x (cols + 1), last column rhs
    std::vector<int> basis;
    int cols = 0;

    void pivot(int r, int c) {
        Scalar p = t[r][c];
        for (auto& v : t[r]) v /= p;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (static_cast<int>(i) == r || t[i][c] == 0) continue;
            Scalar f = t[i][c];
            for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
        }
        basis[r] = c;
    }

    /// Maximize obj over allowed columns; false when unbounded.
    bool run(const std::vector<Scalar>& obj, const std::vector<char>& allowed) {
        const int m = static_cast<int>(t.size());
        while (true) {
            int enter = -1;
            for (int j = 0; j < cols && enter < 0; ++j) {
                if (!allowed[j]) continue;
                Scalar r = obj[j];
                for (int i = 0; i < m; ++i) r -= obj[basis[i]] * t[i][j];
                if (r > 0) enter = j;
            }
            if (enter < 0) return true;
            int leave = -1;
            Scalar best;
            for (int i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                Scalar ratio = t[i][cols] / t[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    Scalar value_of(int col) const {
        for (std::size_t i = 0; i < t.size(); ++i)
            if (basis[i] == col) return t[i][cols];
        return 0;
    }
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<Scalar>>& a, const std::vector<Scalar>& b,
                  const std::vector<Scalar>& c) {
    const int m = static_cast<int>(a.size());
    const int d = static_cast<int>(c.size());
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != d) throw Error(ErrorKind::InvalidInput, "lp row size");
    // Columns: x+ (d), x- (d), slacks (m), artificials (m).
    const int art0 = 2 * d + m;
    Tableau tab;
    tab.cols = 2 * d + 2 * m;
    tab.t.assign(m, std::vector<Scalar>(tab.cols + 1, 0));
    tab.basis.assign(m, -1);
    bool need_phase1 = false;
    for (int i = 0; i < m; ++i) {
        const Scalar s = b[i] < 0 ? -1 : 1;
        for (int j = 0; j < d; ++j) {
            tab.t[i][j] = s * a[i][j];
            tab.t[i][d + j] = -s * a[i][j];
        }
        tab.t[i][2 * d + i] = s;
        tab.t[i][tab.cols] = s * b[i];
        if (b[i] < 0) {
            tab.t[i][art0 + i] = 1;
            tab.basis[i] = art0 + i;
            need_phase1 = true;
        } else {
            tab.basis[i] = 2 * d + i;
        }
    }
    std::vector<char> allowed(tab.cols, 1);
    if (need_phase1) {
        std::vector<Scalar> obj(tab.cols, 0);
        for (int i = 0; i < m; ++i) obj[art0 + i] = -1;
        tab.run(obj, allowed);
        Scalar infeas = 0;
        for (int i = 0; i < m; ++i) infeas += tab.value_of(art0 + i);
        if (infeas > 0) return LpResult{LpStatus::Infeasible, {}, 0};
        // Drive zero-level artificials out where possible.
        for (int i = 0; i < m; ++i) {
            if (tab.basis[i] < art0) continue;
            for (int j = 0; j < art0; ++j)
                if (tab.t[i][j] != 0) {
                    tab.pivot(i, j);
                    break;
                }
        }
    }
    for (int j = art0; j < tab.cols; ++j) allowed[j] = 0;
    std::vector<Scalar> obj(tab.cols, 0);
    for (int j = 0; j < d; ++j) {
        obj[j] = c[j];
        obj[d + j] = -c[j];
    }
    if (!tab.run(obj, allowed)) return LpResult{LpStatus::Unbounded, {}, 0};
    LpResult res;
    res.status = LpStatus::Optimal;
    res.x.assign(d, 0);
    for (int j = 0; j < d; ++j) res.x[j] = tab.value_of(j) - tab.value_of(d + j);
    for (int j = 0; j < d; ++j) res.value += c[j] * res.x[j];
    return res;
}

std::optional<std::vector<Scalar>> strictly_feasible(const std::vector<std::vector<Scalar>>& a,
                                                     const std::vector<Scalar>& b,
                                                     const std::vector<char>& strict, int dim) {
    // Maximize a margin t on the strict rows, capped at 1.
    std::vector<std::vector<Scalar>> rows;
    std::vector<Scalar> rhs;
    bool any_strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<Scalar> r = a[i];
        r.push_back(strict[i] ? Scalar(1) : Scalar(0));
        any_strict = any_strict || strict[i];
        rows.push_back(std::move(r));
        rhs.push_back(b[i]);
    }
    std::vector<Scalar> cap(dim + 1, 0);
    cap[dim] = 1;
    rows.push_back(cap);
    rhs.push_back(1);
    std::vector<Scalar> obj(dim + 1, 0);
    obj[dim] = 1;
    LpResult res = solve_lp(rows, rhs, obj);
    if (res.status != LpStatus::Optimal) return std::nullopt;
    if (any_strict && res.x[dim] <= 0) return std::nullopt;
    res.x.resize(dim);
    return res.x;
}

}  // namespace pdc
